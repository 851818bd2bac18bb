import pytest

from quiddity import (
    BoundedIntRing,
    Decomposition,
    ModRing,
    RingTuple,
    assemble,
    common_diagonal,
    decomposition_quiddity_mod2,
    enumerate_34_decompositions,
    enumerate_quiddities,
    enumerate_triangulations,
    equivalent,
    is_reducible,
    m_matrix,
    parse_ring_spec,
    quiddity_coverage,
    triangulation_quiddity,
    verify,
)
from quiddity.geometry import GeometryError
from oracles import catalan, dissection_count


def test_triangulation_counts_follow_catalan():
    for n in range(3, 10):
        assert sum(1 for _ in enumerate_triangulations(n)) == catalan(n - 2)


def test_dissection_counts_match_interval_dp():
    # includes the spec'd spot values: 1 at n=3, 3 at n=4
    assert dissection_count(4) == 3
    for n in range(3, 10):
        assert sum(1 for _ in enumerate_34_decompositions(n)) == dissection_count(n)


def test_each_dissection_generated_once():
    for n in range(3, 9):
        seen = list(enumerate_34_decompositions(n))
        assert len(seen) == len(set(seen))


def test_triangle_quiddity():
    tri = next(enumerate_triangulations(3))
    for text in ["Z/5", "F4", "Z[10]"]:
        ring = parse_ring_spec(text)
        assert triangulation_quiddity(tri, ring).entries == (ring.one,) * 3


def test_fan_triangulation_quiddity():
    # joining every vertex to vertex 2 gives (1, n-2, 1, 2, ..., 2)
    for n in range(4, 9):
        fan = Decomposition.from_diagonals(n, [(2, j) for j in range(4, n + 1)])
        ring = BoundedIntRing(100)
        assert triangulation_quiddity(fan, ring).entries == tuple(
            [1, n - 2, 1] + [2] * (n - 3)
        )


@pytest.mark.parametrize("text", ["Z/5", "F4", "Z/2xZ/3", "Z[100]"])
def test_every_triangulation_quiddity_gives_minus_identity(text):
    ring = parse_ring_spec(text)
    for n in range(3, 8):
        for dec in enumerate_triangulations(n):
            assert m_matrix(triangulation_quiddity(dec, ring)).is_minus_identity()


def test_triangulations_are_dissections_and_parities_agree():
    ring2 = ModRing(2)
    for n in range(3, 8):
        tris = {t.diagonals for t in enumerate_triangulations(n)}
        alls = {d.diagonals for d in enumerate_34_decompositions(n)}
        assert tris <= alls
        for dec in enumerate_triangulations(n):
            counts = triangulation_quiddity(dec, BoundedIntRing(50)).entries
            assert decomposition_quiddity_mod2(dec).entries == tuple(
                c % 2 for c in counts
            )


def test_bare_square_counts_as_dissection():
    sq = Decomposition.from_diagonals(4, [])
    assert sq.cells == ((1, 2, 3, 4),)
    assert decomposition_quiddity_mod2(sq).entries == (0, 0, 0, 0)
    assert sq in list(enumerate_34_decompositions(4))


def test_split_square_parity():
    split_sq = Decomposition.from_diagonals(4, [(1, 3)])
    q = decomposition_quiddity_mod2(split_sq)
    assert equivalent(q, RingTuple(ModRing(2), (1, 0, 1, 0)))


def test_hexagon_family_from_figures():
    # three dissections of the hexagon, vertices 1..6 counterclockwise from
    # the top: two quads; a fan; a mixed triple sharing the (3,6) diagonal
    d1 = Decomposition.from_diagonals(6, [(3, 6)])
    d2 = Decomposition.from_diagonals(6, [(2, 6), (3, 6), (4, 6)])
    d3 = Decomposition.from_diagonals(6, [(1, 3), (3, 5), (3, 6)])
    q1 = decomposition_quiddity_mod2(d1)
    q2 = decomposition_quiddity_mod2(d2)
    q3 = decomposition_quiddity_mod2(d3)
    assert q1.entries == (0, 0, 0, 0, 0, 0)
    assert q2.entries == (1, 0, 0, 0, 1, 0)
    assert q3.entries == (0, 1, 0, 1, 0, 0)
    assert common_diagonal([d1, d2, d3])
    # the assembled solution over (Z/2)^3 is a quiddity and reducible
    prod = assemble([q1, q2, q3])
    assert prod.entries == (
        (0, 1, 0), (0, 0, 1), (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 0, 0),
    )
    assert verify(prod).is_quiddity
    assert is_reducible(prod) is not None


def test_octagon_pair_shares_no_diagonal_yet_reduces():
    # two all-quad dissections of the octagon with disjoint diagonal sets;
    # a common diagonal is sufficient for reducibility, never necessary
    o1 = Decomposition.from_diagonals(8, [(1, 6), (2, 5)])
    o2 = Decomposition.from_diagonals(8, [(3, 8), (4, 7)])
    assert decomposition_quiddity_mod2(o1).entries == (0,) * 8
    assert decomposition_quiddity_mod2(o2).entries == (0,) * 8
    assert not common_diagonal([o1, o2])
    prod = assemble([decomposition_quiddity_mod2(o1), decomposition_quiddity_mod2(o2)])
    assert is_reducible(prod) is not None


def test_common_diagonal_single():
    assert common_diagonal([Decomposition.from_diagonals(5, [(1, 3)])])
    assert not common_diagonal([Decomposition.from_diagonals(4, [])])
    with pytest.raises(GeometryError):
        common_diagonal([])
    with pytest.raises(GeometryError):
        common_diagonal(
            [
                Decomposition.from_diagonals(4, []),
                Decomposition.from_diagonals(5, [(1, 3)]),
            ]
        )


@pytest.mark.parametrize("n", range(3, 8))
def test_coverage_small(n):
    cov = quiddity_coverage(n)
    assert cov.matches
    assert not cov.missing and not cov.extra
    assert cov.solution_count == len(list(enumerate_quiddities(ModRing(2), n)))


def test_coverage_cap():
    with pytest.raises(GeometryError):
        quiddity_coverage(10)
    with pytest.raises(GeometryError):
        quiddity_coverage(12, cap=11)


def test_from_diagonals_validation():
    with pytest.raises(GeometryError):
        Decomposition.from_diagonals(6, [(1, 3), (2, 4)])  # crossing
    with pytest.raises(GeometryError):
        Decomposition.from_diagonals(5, [])  # pentagon cell
    with pytest.raises(GeometryError):
        Decomposition.from_diagonals(6, [(1, 2)])  # edge
    with pytest.raises(GeometryError):
        Decomposition.from_diagonals(6, [(0, 3)])  # out of range
    with pytest.raises(GeometryError):
        Decomposition.from_diagonals(2, [])


def test_from_diagonals_round_trip():
    for n in range(3, 8):
        for dec in enumerate_34_decompositions(n):
            rebuilt = Decomposition.from_diagonals(n, dec.diagonals)
            assert rebuilt == dec


def test_json_round_trip():
    dec = Decomposition.from_diagonals(6, [(2, 6), (3, 6)])
    data = dec.to_json()
    assert data == {"n": 6, "diagonals": [[2, 6], [3, 6]]}
    assert Decomposition.from_json(data) == dec


def test_triangulation_quiddity_rejects_quads():
    sq = Decomposition.from_diagonals(4, [])
    with pytest.raises(GeometryError):
        triangulation_quiddity(sq, ModRing(5))
