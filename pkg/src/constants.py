import math

HALF_PI = math.pi / 2

# Probability bookkeeping: the simplex alpha+beta+gamma<pi has volume pi^3/6 and
# the slab gamma>=pi/2 (always failing) carries 1/8 of it.
SIMPLEX_VOLUME = math.pi ** 3 / 6
OBTUSE_MASS = 1 / 8
PROBABILITY_CEILING = 1 - OBTUSE_MASS
VOLUME_TO_PROBABILITY = 1 / SIMPLEX_VOLUME

# Bracket and initial guess for the root Gamma.
GAMMA_CRIT_BRACKET = (1.1, 1.2)
GAMMA_CRIT_GUESS = 1.15

# Relative padding applied to every Riemann-sum term.
RIEMANN_TERM_PAD = 1e-13

DEFAULT_OUTER_RESOLUTION = 2048
DEFAULT_INNER_RESOLUTION = 2048
DEFAULT_QUAD_NODES = 64
DEFAULT_SAMPLES = 1_000_000
DEFAULT_SEED = 42
DEFAULT_POINTS = 1000
DEFAULT_FRAME_COUNT = 2000
DEFAULT_VERIFY_SAMPLES = 10_000

MC_BATCH_PROPOSALS = 1 << 18

# Strength banding of the frames: 50 contour levels between 0 and 1.
BAND_COUNT = 50
CELL_INFEASIBLE = -2
CELL_NEGATIVE = -1
CELL_SATURATED = BAND_COUNT

BYTE_INFEASIBLE = 255
BYTE_NEGATIVE = 0
BYTE_BAND_BASE = 40
BYTE_BAND_STEP = 4
BYTE_SATURATED = 239

RASTER_ROW_BLOCK = 64

THREADS_ENV = "STI_THREADS"
JSON_SIGNIFICANT_DIGITS = 12
