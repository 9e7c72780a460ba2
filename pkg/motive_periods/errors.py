"""
Exceptions raised by the motive_periods package. The CLI maps InputError to
exit status 2 and every other MotivePeriodsError to exit status 3.
"""


class MotivePeriodsError(Exception):
    pass


class OrientationError(MotivePeriodsError):
    """ Degenerate or collinear lattice basis """
    pass


class SingularCurveError(MotivePeriodsError):
    """ The discriminant g2^3 - 27 g3^2 vanishes """
    pass


class NumericError(MotivePeriodsError):
    """ A numerical procedure failed to converge. Diagnostics are kept for the report """

    def __init__(self, message, diagnostics=None):
        super(NumericError, self).__init__(message)
        self.diagnostics = diagnostics or {}


class PoleError(MotivePeriodsError):
    """ Argument sits on a pole. component is the (j, i, k) triple when raised during matrix assembly """

    def __init__(self, message, component=None):
        super(PoleError, self).__init__(message)
        self.component = component


class SingularityError(PoleError):
    pass


class ContextError(MotivePeriodsError):
    """ q lies on the lattice, so Serre's function is undefined """
    pass


class PathError(MotivePeriodsError):
    pass


class InputError(MotivePeriodsError):
    """ Schema violation. field_path points at the offending field, e.g. curves[1].g2 """

    def __init__(self, message, field_path=None):
        if field_path:
            message = '{}: {}'.format(field_path, message)
        super(InputError, self).__init__(message)
        self.field_path = field_path
