"""Constants for diffrealize."""

# Base component constants
PROGRAM_NAME = "diffrealize"

# Parities
EVEN = 0
ODD = 1
PARITY_NAMES = {"even": EVEN, "odd": ODD}

# Algebra families accepted by the constructors and the job config
FAMILY_A = "A"
FAMILY_D = "D"
FAMILY_E = "E"
FAMILY_GL = "gl"
FAMILY_SL = "sl"
FAMILY_CUSTOM = "custom"
SIMPLY_LACED_FAMILIES = (FAMILY_A, FAMILY_D, FAMILY_E)

# Configuration and options
CONF_ALGEBRA = "algebra"
CONF_ALGEBRA_FILE = "algebra_file"
CONF_DECOMP = "decomposition"
CONF_MINUS = "minus"
CONF_H = "h"
CONF_MODULE = "module"
CONF_REPRESENTATION = "representation"
CONF_WEIGHTS = "weights"
CONF_REP_FILE = "representation_file"
CONF_ENGINE = "engine"
CONF_TRUNCATION = "truncation"
CONF_FORMAT = "format"
CONF_OUT = "out"
CONF_CACHE_DIR = "cache_dir"
CONF_VERIFY = "verify"
CONF_STATS = "stats"
CONF_WORKERS = "workers"
CONF_TIME_BUDGET = "time_budget"
CONF_LOG_LEVEL = "log_level"
CONF_DEBUG = "debug"

MODULE_COINDUCED = "coinduced"
MODULE_INDUCED = "induced"
REP_CHARACTER = "character"
REP_ADJOINT = "adjoint"
REP_CUSTOM = "custom"
ENGINE_GRAPH = "graph"
ENGINE_SERIES = "series"
ENGINE_BOTH = "both"
FORMAT_TEX = "tex"
FORMAT_STRUCTURED = "structured"
FORMAT_STATS = "stats-only"
DECOMP_TRIANGULAR = "triangular"

# Defaults
DEFAULT_TIME_BUDGET = 60  # seconds
DEFAULT_WORKERS = 1
DEFAULT_INDUCED_TRUNCATION = 6  # polynomial degree in P
DEFAULT_TRUNCATION_MARGIN = 1  # extra X-degree when checking the degree bound
DEFAULT_CACHE_DIR = ".diffrealize-cache"
DEFAULT_LOG_LEVEL = "WARNING"
CACHE_DIR_ENV = "DIFFREALIZE_CACHE_DIR"
CACHE_FORMAT_VERSION = 1
STRUCTURED_FORMAT_VERSION = 1
WEIGHT_SYMBOL = "lambda"

# Exit codes
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_TRUNCATION = 4
EXIT_VERIFY_FAILED = 5
EXIT_TIMEOUT = 6
EXIT_INTERNAL = 70

# Verification
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_TRUNCATED = "truncated"
STATUS_WARN = "warn"

# Longest path count, largest monomial count, largest degree over the
# degree-1 generators of the triangular decomposition; monomials are counted
# as the paths produce them, before like terms cancel
EXPECTED_STATISTICS: dict[tuple[str, int], tuple[int, int, int]] = {
    (FAMILY_E, 6): (73179, 1906, 12),
    (FAMILY_GL, 15): (3052080, 8192, 15),
}
