from setuptools import setup, find_packages

# Package Metadata
NAME = 'MotivePeriods'
VERSION = '0.1.0'


def required_packages():
    PACKAGES = [
        'progressbar2>=3.0',
        'numpy>=1.16',
        'scipy>=1.4',
        'mpmath>=1.1',
    ]
    return PACKAGES


def testing_packages():
    return ['pytest>=4.6']


setup(
    name=NAME,
    version=VERSION,
    packages=find_packages(exclude=['tests*', 'samples*']),
    install_requires=required_packages(),
    extras_require={'test': testing_packages()},
    entry_points={
        'console_scripts': ['motive-periods=motive_periods.cli:main'],
    },
)
