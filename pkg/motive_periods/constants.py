"""
Default tolerances and numeric knobs shared across the motive_periods package.
Every value can be overridden per call, and the CLI exposes the two tolerances
that matter for verification as flags.
"""

# Agreement required of closed-form functional equations (periodicity, Legendre, ...)
TOL_ANALYTIC = 1e-9

# Agreement required between quadrature and closed forms
TOL_QUADRATURE = 1e-6

# Small loop integrals around a single pole
TOL_RESIDUE = 1e-8

# Arguments closer than this to a pole are rejected instead of extrapolated
POLE_TOL = 1e-8

# Removable-looking singularity of the third kind pullback, |wp(z) - wp(q)| below this
SINGULARITY_TOL = 1e-10

# |y| below this, relative to (1 + |x|)^1.5, marks a 2-torsion point for elliptic_log
TWO_TORSION_TOL = 1e-6

# Minimum distance between an integration path and any pole of its integrand
PATH_CLEARANCE = 1e-3

# Relative error allowed when (g2, g3) are recovered from a candidate period basis
ROUNDTRIP_TOL = 1e-10

# Relative defect of y^2 = 4x^3 - g2 x - g3 tolerated for a point handed to elliptic_log
CURVE_INPUT_TOL = 1e-6

# gamma omega_i must land this close (relative) to the lattice for a declared CM order
CM_LATTICE_TOL = 1e-8

# Declared abelian relations with a larger residual are flagged by validate_profile
PROFILE_RESIDUAL_TOL = 1e-6

# Lattice coordinates this close to an integer are snapped before flooring
SNAP_TOL = 1e-12

# Decimal digits carried by mpmath while summing theta and Eisenstein series
WORKING_DPS = 25

MAX_SERIES_TERMS = 2000
MAX_REDUCTION_STEPS = 200
NEWTON_STEPS = 8

# Default cycle base in lattice coordinates, base = 0.37 omega1 + 0.29 omega2
CYCLE_BASE = (0.37, 0.29)
CYCLE_BASE_RETRIES = 20

# Quadrature knobs handed to scipy.integrate.quad_vec
QUAD_EPSABS = 1e-11
QUAD_EPSREL = 1e-11
QUAD_LIMIT = 2000

SEED_ENV_VAR = 'MOTIVE_PERIODS_SEED'
DEFAULT_SEED = 42
