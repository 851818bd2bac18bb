"""Convex-polygon dissections into triangles and quadrilaterals.

Vertices are labeled 1..n counterclockwise.  A dissection is generated (or
reconstructed from its diagonal set) as a list of cells; the cell adjacent
to the edge (1, n) is chosen first and the gaps recurse, so each dissection
appears exactly once and no deduplication is needed.

The quiddity of a triangulation maps each vertex to its incident triangle
count (as a ring element); its matrix product is always minus the identity.
For a mixed (3|4) dissection the mod-2 quiddity records the parity of the
incident triangle count per vertex; quadrilaterals do not count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import RingTuple
from .enumeration import enumerate_quiddities
from .rings import ModRing, Ring


class GeometryError(ValueError):
    """Invalid polygon, diagonal set, or cell structure."""


@dataclass(frozen=True)
class Decomposition:
    """A non-crossing dissection: vertex count, diagonals, derived cells.

    Cells are tuples of vertex labels in increasing (counterclockwise)
    order; diagonals are sorted (i, j) pairs with i < j.
    """

    n: int
    diagonals: tuple
    cells: tuple

    @classmethod
    def from_cells(cls, n: int, cells: Sequence[Sequence[int]]) -> "Decomposition":
        cells_t = tuple(sorted(tuple(c) for c in cells))
        diags = set()
        for cell in cells_t:
            k = len(cell)
            for t in range(k):
                i, j = sorted((cell[t], cell[(t + 1) % k]))
                if not _is_edge(n, i, j):
                    diags.add((i, j))
        return cls(n, tuple(sorted(diags)), cells_t)

    @classmethod
    def from_diagonals(cls, n: int, diagonals: Iterable) -> "Decomposition":
        """Rebuild the cell structure of a diagonal set, validating that the
        diagonals are pairwise non-crossing and every cell has 3 or 4 sides."""
        if n < 3:
            raise GeometryError(f"polygon needs at least 3 vertices, got {n}")
        diags = set()
        for pair in diagonals:
            i, j = sorted(int(v) for v in pair)
            if not (1 <= i < j <= n):
                raise GeometryError(f"diagonal {(i, j)} outside vertex range 1..{n}")
            if _is_edge(n, i, j):
                raise GeometryError(f"{(i, j)} is a polygon edge, not a diagonal")
            diags.add((i, j))
        for (a, b), (c, d) in itertools.combinations(sorted(diags), 2):
            if a < c < b < d or c < a < d < b:
                raise GeometryError(f"diagonals {(a, b)} and {(c, d)} cross")

        cells = []

        def face(lo, hi):
            # only diagonals nested inside [lo, hi] can shield a vertex
            inner = [
                v
                for v in range(lo + 1, hi)
                if not any(
                    lo <= a and b <= hi and a < v < b and (a, b) != (lo, hi)
                    for (a, b) in diags
                )
            ]
            cell = [lo] + inner + [hi]
            if len(cell) not in (3, 4):
                raise GeometryError(
                    f"cell {tuple(cell)} has {len(cell)} sides; only 3 or 4 allowed"
                )
            cells.append(tuple(cell))
            for u, w in zip(cell, cell[1:]):
                if w > u + 1:
                    if (u, w) not in diags:
                        raise GeometryError(
                            f"gap {(u, w)} is not closed by a diagonal"
                        )
                    face(u, w)

        face(1, n)
        return cls(n, tuple(sorted(diags)), tuple(sorted(cells)))

    @property
    def is_triangulation(self) -> bool:
        return all(len(c) == 3 for c in self.cells)

    def triangle_counts(self) -> list[int]:
        """Incident triangle count per vertex, vertex 1 first."""
        counts = [0] * self.n
        for cell in self.cells:
            if len(cell) == 3:
                for v in cell:
                    counts[v - 1] += 1
        return counts

    def to_json(self) -> dict:
        return {"n": self.n, "diagonals": [list(d) for d in self.diagonals]}

    @classmethod
    def from_json(cls, obj: dict) -> "Decomposition":
        return cls.from_diagonals(int(obj["n"]), obj.get("diagonals", []))


def _is_edge(n: int, i: int, j: int) -> bool:
    return j == i + 1 or (i == 1 and j == n)


def _gen(labels: tuple, allow_quads: bool) -> Iterator[list]:
    """Cells of the region bounded by the chord (labels[0], labels[-1])."""
    if len(labels) == 2:
        yield []
        return
    first, last = labels[0], labels[-1]
    k = len(labels)
    for i in range(1, k - 1):
        cell = (first, labels[i], last)
        for left in _gen(labels[: i + 1], allow_quads):
            for right in _gen(labels[i:], allow_quads):
                yield [cell] + left + right
    if allow_quads:
        for i in range(1, k - 2):
            for j in range(i + 1, k - 1):
                cell = (first, labels[i], labels[j], last)
                for a in _gen(labels[: i + 1], allow_quads):
                    for b in _gen(labels[i : j + 1], allow_quads):
                        for c in _gen(labels[j:], allow_quads):
                            yield [cell] + a + b + c


def enumerate_triangulations(n: int) -> Iterator[Decomposition]:
    """All triangulations of the n-gon, exactly once (Catalan(n-2) total)."""
    if n < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {n}")
    labels = tuple(range(1, n + 1))
    for cells in _gen(labels, allow_quads=False):
        yield Decomposition.from_cells(n, cells)


def enumerate_34_decompositions(n: int) -> Iterator[Decomposition]:
    """All dissections of the n-gon into triangles and quadrilaterals,
    including the undissected square at n = 4."""
    if n < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {n}")
    labels = tuple(range(1, n + 1))
    for cells in _gen(labels, allow_quads=True):
        yield Decomposition.from_cells(n, cells)


def triangulation_quiddity(dec: Decomposition, ring: Ring) -> RingTuple:
    """Per-vertex incident triangle counts mapped into the ring, vertex 1
    first, counterclockwise.  Always satisfies M_n = -Id."""
    if not dec.is_triangulation:
        raise GeometryError("quiddity over an arbitrary ring needs a triangulation")
    return RingTuple(ring, [ring.from_int(c) for c in dec.triangle_counts()])


def decomposition_quiddity_mod2(dec: Decomposition) -> RingTuple:
    """Parity of the incident triangle count per vertex, over Z/2."""
    return RingTuple(ModRing(2), [c % 2 for c in dec.triangle_counts()])


@dataclass
class CoverageResult:
    """Two-way comparison of dissection quiddities against mod-2 solutions."""

    n: int
    matches: bool
    decomposition_count: int
    quiddity_count: int
    solution_count: int
    missing: list
    extra: list

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "matches": self.matches,
            "decompositions": self.decomposition_count,
            "distinct_quiddities": self.quiddity_count,
            "solutions": self.solution_count,
            "missing": [",".join(map(str, t)) for t in self.missing],
            "extra": [",".join(map(str, t)) for t in self.extra],
        }


def quiddity_coverage(n: int, cap: int = 9) -> CoverageResult:
    """Check set equality between the mod-2 quiddities of all (3|4)
    dissections of the n-gon and the mod-2 solutions of size n.

    The dissection count grows quickly; the cap guards accidental large runs.
    """
    if n > cap:
        raise GeometryError(f"size {n} above configured cap {cap}")
    dec_quiddities = set()
    count = 0
    for dec in enumerate_34_decompositions(n):
        count += 1
        dec_quiddities.add(decomposition_quiddity_mod2(dec).entries)
    solutions = {t.entries for t in enumerate_quiddities(ModRing(2), n)}
    missing = sorted(solutions - dec_quiddities)
    extra = sorted(dec_quiddities - solutions)
    return CoverageResult(
        n=n,
        matches=not missing and not extra,
        decomposition_count=count,
        quiddity_count=len(dec_quiddities),
        solution_count=len(solutions),
        missing=missing,
        extra=extra,
    )


def common_diagonal(decs: Sequence[Decomposition]) -> bool:
    """True when one diagonal occurs in every given dissection.

    A common diagonal certifies reducibility of the assembled product
    solution; the converse fails, since a reducible solution may also be
    represented by dissection families without a shared diagonal.
    """
    if not decs:
        raise GeometryError("no decompositions given")
    if any(d.n != decs[0].n for d in decs):
        raise GeometryError("decompositions must share the vertex count")
    common = set(decs[0].diagonals)
    for d in decs[1:]:
        common &= set(d.diagonals)
    return bool(common)
