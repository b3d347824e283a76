"""
Engine-wide constants for the iQuantum verification engine.
"""

# Reduction engine
DEFAULT_DEGREE_BUDGET = 12      # max letters per one-sign word
DEGREE_BUDGET_ENV = "IQG_DEGREE_BUDGET"

# Modular fast path (Mersenne prime M61 = 2^61 - 1)
MODULAR_PRIME = (1 << 61) - 1
DEFAULT_MODULAR_TRIALS = 3
MAX_RESAMPLE_ATTEMPTS = 16
MODULAR_FIELD_CACHE_LIMIT = 4   # prime-field samples whose bases stay cached

# WeightBasis disk cache
CACHE_DIR_ENV = "IQG_CACHE_DIR"
DEFAULT_CACHE_DIR = ".iqg_cache"
CACHE_FORMAT_VERSION = 1
CACHE_WORD_ORDER = "deglex-desc"

# Logging
LOG_LEVEL_ENV = "IQG_LOG_LEVEL"
DEFAULT_LOG_LEVEL = "INFO"

# Suite parameter defaults (keyed by c = c_{i,tau i})
RECURSION_MAX_M = {0: 5, -1: 5, -2: 3}
SERRE_LUSZTIG_EXTRA_M = {0: 3, -1: 3, -2: 2}   # M(c) = 1 - c + extra
RANK1_MAX_NM = 3
HIGHER_SERRE_EXTRA_M = 3                       # m in (-c_ij, -c_ij + 3]
HIGHER_SERRE_MAX_N = 2
HIGHER_SERRE_FINDING_MAX_M = 4
ORACLE_MAX_DEGREE = 6                          # rank <= 2
ORACLE_MAX_DEGREE_HIGH_RANK = 4
ENGINE_RANDOM_PAIRS = 200
ENGINE_RANDOM_DEGREE = 3
ENGINE_KOSTANT_MAX_DEGREE = 6
DEFAULT_SEED = 20211

# Report statuses
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_NONZERO_AS_EXPECTED = "nonzero-as-expected"
STATUS_FINDING = "finding"

EXPECT_ZERO = "zero"
EXPECT_NONZERO = "nonzero"
EXPECT_FINDING = "finding"
