# In src/padiclab/lib/constants.py

# --- p-adic Core Constants ---
MAX_PRIME_EXCLUSIVE = 2**64  # Deterministic Miller-Rabin witnesses below are exact up to here
MILLER_RABIN_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
LITERAL_ELLIPSIS = "..."  # Prefix of the canonical rendering (unknown higher digits)

# --- Frequency Constants ---
DEFAULT_REAL_TOLERANCE = 0.02  # Max spread of real frequencies over the tail window
DEFAULT_REAL_TAIL = 8  # Number of trailing checkpoints inspected in the real topology
DEFAULT_REAL_SCHEDULE_RATIO = 1.1  # Dense geometric schedule for the real topology
DEFAULT_PADIC_TAIL = 2  # Number of trailing checkpoints inspected p-adically
DEFAULT_TARGET_DIGITS = 8
DEFAULT_GEOMETRIC_SCALE = 1.0  # c in N_k = ceil(c * p^k)
BITS_MAGIC = b"PADB"  # Header of the packed .bits sequence format

# --- Realization Constants ---
DEFAULT_GROWTH_FACTOR = 1.0  # Window size multiplier, 1.0 = minimal windows
MAX_REALIZATION_DEPTH = 64

# --- Complexity Constants ---
MIN_PROFILE_POINTS = 5
DEFAULT_DEAD_ZONE_RATIO = 0.5  # Linear wins if lin_res < ratio * log_res, and vice versa
DEFAULT_FIT_CEILING = 0.2  # Normalized RMS residual above which a fit is considered poor
DEFAULT_SCHEDULE_BASE = 2.0
MIN_SEPARATION_DEPTH = 12  # Shallowest realization used by the separation experiment
COMPRESSOR_PROBE = bytes(range(256)) * 4 + b"padiclab-probe"

# --- Interference Constants ---
MIN_SCREEN_BINS = 8
NORMALIZATION_TOLERANCE = 1e-12
DEFAULT_SMOOTHING_WINDOW = 1
DEFAULT_CENTRAL_FRACTION = 0.5  # Share of central bins used by the visibility metric
DEFAULT_ALPHA = 0.01
MIN_DISPERSION_WINDOWS = 20
MAX_EXPONENTIAL_TIME = 1e300  # Exponential schedule times must stay finite in JSON output

# --- CLI Constants ---
EXIT_OK = 0
EXIT_FAILURE = 1  # Verification or statistical failure
EXIT_USAGE = 2
OUTPUT_DIR_ENV = "PADICLAB_OUTPUT_DIR"
CONFIG_PATH_ENV = "PADICLAB_CONFIG"
