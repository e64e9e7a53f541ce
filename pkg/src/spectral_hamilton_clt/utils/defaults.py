""" Library-wide default values

Single source of truth for the numerical tolerances and size limits shared by
the library and the command-line tools.
"""

# Spectral kernels
DEFAULT_TOL = 1e-10
MAX_ITERATIONS = 100_000

# Bit-set word budget per part
PART_SIZE_LIMIT = 64

# Exponential subset enumeration refuses larger parts unless overridden
TOUGHNESS_PART_LIMIT = 24

# One-sided slack when comparing a spectral radius against the threshold
THRESHOLD_SLACK = 1e-9

# Exhaustive enumeration of labeled balanced graphs (2^(n^2) of them)
ENUMERATION_LIMIT = 4

# Smallest part size the extremal construction is defined for
EXTREMAL_MIN_N = 5

# Part size from which the main theorem is asserted
THEOREM_MIN_N = 16
