from collections import namedtuple

# Largest group the exact tier will stream element by element.
DEFAULT_ENUM_LIMIT = 10**6

# Matrix comparisons (unitarity, homomorphism, character equality).
DEFAULT_TOLERANCE = 1e-9

DEFAULT_SEED = 0

# Product-replacement draws made by a sampling-mode fallback.
SAMPLE_BUDGET = 2000

# Sources up to this order get exhaustive pair checks and element tables.
EXHAUSTIVE_REP_LIMIT = 10**4

# Pairs drawn when a representation is too large for the exhaustive check.
SAMPLED_PAIR_COUNT = 5000

MAX_INDUCED_INDEX = 64

MAX_FIELD_ORDER = 2**16

MAX_SUZUKI_Q = 2**13

# Factor bound for the regular-action semidirect product builder.
MAX_SEMIDIRECT_FACTOR = 10**4
MAX_SEMIDIRECT_DEGREE = 10**5

# Exhaustive homomorphism checks multiply all pairs while
# |source|^2 * dim^3 stays under this; past it every element is checked
# against every generator instead.
PAIR_CHECK_BUDGET = 2 * 10**9

# Kernel check of a matrix action is skipped past this many nonzero vectors.
MAX_KERNEL_VECTORS = 5000

SCHEMA_VERSION = "cellular-trichotomy/report-v1"

TOOL_VERSION = "1.0.0"


# Knobs for one classification run.
#
# family_witnesses: try the Suzuki / PSL2 family constructors before the
#   generic quotient witness.
# evaluate_all_criteria: evaluate criterion B even when A already fired.
ClassifyOptions = namedtuple(
    "ClassifyOptions",
    [
        "enum_limit",
        "tolerance",
        "seed",
        "sample_budget",
        "family_witnesses",
        "evaluate_all_criteria",
    ],
    defaults=[
        DEFAULT_ENUM_LIMIT,
        DEFAULT_TOLERANCE,
        DEFAULT_SEED,
        SAMPLE_BUDGET,
        True,
        False,
    ],
)
