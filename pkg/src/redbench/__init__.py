"""redbench: executable reductions between finite combinatorial principles."""

from .bitsupport import (
    ApartExtraction,
    FiniteNatSet,
    SumMode,
    SumStream,
    extract_apart_from_fs,
    fs_enumerate,
    is_apart,
    lam,
    lam_minus,
    mu,
    support,
)
from .colorings import (
    HomogeneityResult,
    TupleColoring,
    UnaryColoring,
    classify_canonical_fs,
    classify_canonical_tuples,
    is_homogeneous,
    is_lambda_regressive,
    is_min_homogeneous,
    is_min_term_homogeneous,
)
from .constructions import InjectiveFunctionTable
from .reductions import (
    Instance,
    Principle,
    PRINCIPLES,
    Reduction,
    REGISTRY,
    Solution,
    VerificationReport,
    verify_reduction,
)
from .solvers import (
    SearchBudget,
    SearchConstraints,
    SolverOutcome,
    solve_ht,
    solve_lambda_reg_ht,
    solve_reg,
    solve_rt,
    solve_rt1,
)
from .wellorder import (
    DescendingSequence,
    DescentExtraction,
    ExponentStream,
    LinearOrder,
    OmegaTerm,
    compare_omega_terms,
    exponent_stream,
    extract_descending,
    find_decreaser,
    validate_descending,
)

__version__ = "0.1.0"
