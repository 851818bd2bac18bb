"""Quiddity search over finite commutative rings.

A tuple (a_1, ..., a_n) over a commutative unital ring is a quiddity when
the product of the elementary matrices [[a_i, -1], [1, 0]] (last entry
leftmost) is plus or minus the identity.  This package verifies, combines,
canonicalizes, enumerates and classifies such tuples, decides reducibility
with explicit witnesses, transfers classifications along ring isomorphisms,
and realizes mod-2 quiddities by polygon dissections.
"""

from .core import (
    DihedralOp,
    Mat2,
    QuiddityVerdict,
    RingTuple,
    assemble,
    canonical_form,
    continuant,
    dihedral_apply,
    dihedral_ops,
    equivalent,
    m_matrix,
    oplus,
    parse_tuple,
    split,
    verify,
)
from .enumeration import (
    ClassificationReport,
    LmaxResult,
    char_zero_witness,
    classify_irreducible,
    count_restricted,
    enumerate_quiddities,
    max_irreducible_size,
    unique_extension,
)
from .geometry import (
    CoverageResult,
    Decomposition,
    common_diagonal,
    decomposition_quiddity_mod2,
    enumerate_34_decompositions,
    enumerate_triangulations,
    quiddity_coverage,
    triangulation_quiddity,
)
from .morphisms import (
    ComponentPermutation,
    CrtIsomorphism,
    FrobeniusMap,
    Morphism,
    PowerSetBitmap,
    apply_morphism,
    crt_value_table,
    frobenius_closure_check,
    parse_morphism,
    transfer_classification,
)
from .reduction import (
    BoundedReduction,
    ReductionWitness,
    SimultaneousReduction,
    is_reducible,
    is_reducible_bounded,
    simultaneous_reducible,
)
from .rings import (
    BoundedIntRing,
    Element,
    GF4Ring,
    InfiniteRingError,
    ModRing,
    PowerSetRing,
    ProductRing,
    Ring,
    RingError,
    RingMismatchError,
    RingParseError,
    WindowOverflow,
    parse_ring_spec,
)

__all__ = [name for name in dir() if not name.startswith("_")]
