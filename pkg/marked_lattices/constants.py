"""Constants and enums for the marked-lattices toolkit."""

from enum import Enum, IntEnum

# Numerical tolerances (relative unless noted)
DEFAULT_TOLERANCE = 1e-10  # default per-call tolerance for matrix identities
PSD_FLOOR = 1e-10  # eigenvalues below -PSD_FLOOR * ||M|| are rejected as not PSD
CLUSTER_GAP = 1e-8  # eigenvalue clustering gap, relative to ||M||
RANK_TOLERANCE = 1e-8  # eigenvalue threshold (relative to the largest) for rank decisions
SINGULAR_TOLERANCE = 1e-12  # smallest/largest singular value ratio below which a matrix is singular
CLASS_TOLERANCE = 1e-9  # entrywise tolerance when comparing trace-normalized Grams
SPLIT_TOLERANCE = 1e-9  # off-block tolerance for the splitting test
PROBE_TOLERANCE = 1e-9  # mirrored-probe consistency tolerance for floating probe tables

# Boundary limits
CAUCHY_WINDOW = 3
CAUCHY_RTOL = 1e-6
DEFAULT_POWER_SCHEDULE = [1.0, 10.0, 100.0, 1000.0, 10000.0]
DEFAULT_REGULARIZED_SCHEDULE = [10**k for k in range(1, 11)]

# Systole enumeration
SYSTOLE_MAX_DOUBLINGS = 16
SYSTOLE_TIE_RTOL = 1e-9

# Verification harness
DEFAULT_SEED = 0
DEFAULT_TRIALS = 100
DEFAULT_WORKERS = 1
FLOAT_FORMAT = ".17g"

# Octonion multiplication table: row is the left factor e_a, columns are e_1..e_7.
# "-1" is the real unit with a sign, "+eK" / "-eK" are imaginary units.
OCTONION_TABLE = (
    "-1  +e4 +e7 -e2 +e6 -e5 -e3",
    "-e4 -1  +e5 +e1 -e3 +e7 -e6",
    "-e7 -e5 -1  +e6 +e2 -e4 +e1",
    "+e2 -e1 -e6 -1  +e7 +e3 -e5",
    "-e6 +e3 -e2 -e7 -1  +e1 +e4",
    "+e5 -e7 +e4 -e3 -e1 -1  +e2",
    "+e3 +e6 -e1 +e5 -e4 -e2 -1 ",
)

# Quaternion units inside the octonions (i, j, k)
OCTONION_QUATERNION_UNITS = (1, 2, 4)


class Algebra(str, Enum):
    """The four normed division algebras."""
    R = "R"
    C = "C"
    H = "H"
    O = "O"  # noqa: E741

    @property
    def dim(self) -> int:
        """Real dimension of the algebra."""
        return {"R": 1, "C": 2, "H": 4, "O": 8}[self.value]

    @property
    def associative(self) -> bool:
        return self is not Algebra.O


class ExitCode(IntEnum):
    """Stable CLI exit codes."""
    OK = 0
    FAILURE = 1  # failed properties or an unexpected internal error
    DOMAIN = 2
    NO_CONVERGENCE = 3
    USAGE = 4


class Suite(str, Enum):
    """Property suites accepted by the verify command."""
    SCALARS = "scalars"
    MATK = "matk"
    LATTICES = "lattices"
    BRIDGE = "bridge"
    SYMPLECTIC = "symplectic"
    OCTO = "octo"
    STRATA = "strata"
    ALL = "all"


class FamilyKind(str, Enum):
    """Degeneration family encodings."""
    EXPLICIT = "explicit"
    DIAG_POWER = "diag-power"
    REGULARIZED = "regularized"


class ReductionPath(str, Enum):
    """How symplectic_reduce produced its answer."""
    DIAGONAL = "diagonal"
    INTEGRAL_BASIS = "integral-basis"


# Named orders
NAMED_ORDERS = ["Z", "Zi", "hurwitz", "Zo"]
STANDARD_FORM = "symplectic-standard"
