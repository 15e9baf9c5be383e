"""Shared numeric constants for the project."""

# Tail inversion: relative residual, bracket expansion, bisection steps
TOL_INV = 1e-10
BRACKET_START = 1.0
BRACKET_MAX_DOUBLINGS = 1000
MAX_BISECTION_STEPS = 200

# epsilon solvers bisect in log(eps)
TOL_EPS = 1e-6
EPS_FLOOR = 1e-300
UPPER_EPS_CAP = 0.5
LOWER_EPS_CAP = 1.0 / 256.0
SMALL_T_EPS_CAP = 1.0 / 16.0

# grid certificates
GRID_POINTS = 4096
GRID_U_MAX_MIN = 20.0
GRID_TAIL_LEVEL = 1e-12
AXIOM_ATOL = 1e-9
SMOOTH_SLACK = 1.0 + 1e-6
LOSS_GRID_U_MIN = -10.0
FD_STEP = 1e-5
SELF_BOUND_ATOL = 1e-12
PAIR_SAMPLES = 2000

# data
PROB_SUM_ATOL = 1e-12
NORM_ATOL = 1e-12
MARGIN_ATOL = 1e-14
BIG_T_MIN_N = 35
HARD_INSTANCE_MAX_GAMMA = 1.0 / 8.0

# optimizers and lemma checks
DESCENT_ATOL = 1e-12
LEMMA_ATOL = 1e-9
GRAD_CHECK_ATOL = 1e-10
ETA_REL_SLACK = 1e-12

# bounds
DEFAULT_K = 1e5

# experiments
DEFAULT_TRIALS = 2000
MIN_SLOPE_POINTS = 4
BOOTSTRAP_SAMPLES = 2000
CONFIDENCE = 0.95
SCHEMA_VERSION = 1
