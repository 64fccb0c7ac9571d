"""Infinite-product reproducing kernels over iterated maps.

Evaluates kernels of the form K(z,w) = prod_n k(R_n z, R_n w) with
certified truncation, realises the associated weighted composition
operators and their adjoints, and verifies the identities they satisfy
(positivity, recursion, root-sum relations, tree-basis expansion) on
worked model families for the disk, the right half-plane, and the basin
of the quartic map z -> z**4 - 2 z**2.
"""

from .errors import (
    BudgetError,
    DomainError,
    EscapeOverflowError,
    PoleError,
    ProdkernError,
    RankDeficiencyError,
)
from .iteration import (
    CONVERGED,
    ESCAPED,
    UNRESOLVED,
    IterationMap,
    OrbitReport,
    classify_orbit,
    iterate,
    monomial_map,
    preimages,
)
from .kernels import (
    FactorKernel,
    GramReport,
    KernelValue,
    ProductKernelModel,
    TruncationPolicy,
    eval_kernel,
    gram_matrix,
    kernel_matrix,
    tail_bound,
    verify_recursion,
)
from .operators import (
    CuntzRepresentation,
    KernelSection,
    PointFunction,
    SymbolFamily,
    apply_S,
    apply_S_star_preimage,
    apply_S_star_section,
    verify_orthogonality,
    verify_sum_identity,
    verify_symbol_sums,
)
from .words import Word, enumerate_words, eval_word, partial_expansion

__version__ = "0.1.0"
