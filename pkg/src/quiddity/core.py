"""Tuples over a ring, their 2x2 matrix products, and dihedral equivalence.

The n-tuple (a_1, ..., a_n) is mapped to the product

    M_n(a_1, ..., a_n) = E(a_n) ... E(a_1),    E(x) = [[x, -1], [1, 0]],

with the *last* entry contributing the leftmost factor.  A tuple is a
quiddity when M_n is plus or minus the identity; the entries of M_n are
(up to sign) continuants of the tuple.  Tuples are considered up to the
dihedral action (cyclic rotation and reversal), under which the quiddity
property and its sign are invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .rings import (
    Element,
    ProductRing,
    Ring,
    RingMismatchError,
    split_top_level,
)

Mat = tuple  # (a, b, c, d) payloads, row-major


def _mat_mul(ring: Ring, m: Mat, n: Mat) -> Mat:
    ma, mb, mc, md = m
    na, nb, nc, nd = n
    add, mul = ring.add, ring.mul
    return (
        add(mul(ma, na), mul(mb, nc)),
        add(mul(ma, nb), mul(mb, nd)),
        add(mul(mc, na), mul(md, nc)),
        add(mul(mc, nb), mul(md, nd)),
    )


def _mat_factor(ring: Ring, x) -> Mat:
    # E(x) = [[x, -1], [1, 0]]
    return (x, ring.minus_one, ring.one, ring.zero)


def _mat_identity(ring: Ring) -> Mat:
    return (ring.one, ring.zero, ring.zero, ring.one)


def _mat_neg(ring: Ring, m: Mat) -> Mat:
    return tuple(ring.neg(v) for v in m)


def _mat_inv_det1(m: Mat, ring: Ring) -> Mat:
    # adjugate; valid because every E(x) has determinant 1
    a, b, c, d = m
    return (d, ring.neg(b), ring.neg(c), a)


class Mat2:
    """A 2x2 matrix over a ring; entries held as payloads."""

    __slots__ = ("ring", "m")

    def __init__(self, ring: Ring, entries: Mat):
        self.ring = ring
        self.m = tuple(entries)

    @classmethod
    def identity(cls, ring: Ring) -> "Mat2":
        return cls(ring, _mat_identity(ring))

    @classmethod
    def factor(cls, ring: Ring, x) -> "Mat2":
        """The elementary factor E(x) = [[x, -1], [1, 0]]; x is a payload
        or Element."""
        p = x.payload if isinstance(x, Element) else x
        return cls(ring, _mat_factor(ring, p))

    def __mul__(self, other: "Mat2") -> "Mat2":
        if self.ring != other.ring:
            raise RingMismatchError("matrix product across different rings")
        return Mat2(self.ring, _mat_mul(self.ring, self.m, other.m))

    def __neg__(self) -> "Mat2":
        return Mat2(self.ring, _mat_neg(self.ring, self.m))

    def __eq__(self, other):
        if isinstance(other, Mat2):
            return self.ring == other.ring and self.m == other.m
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.m))

    def is_identity(self) -> bool:
        return self.m == _mat_identity(self.ring)

    def is_minus_identity(self) -> bool:
        return self.m == _mat_neg(self.ring, _mat_identity(self.ring))

    def entries(self):
        """Entries as Elements, row-major ((a, b), (c, d))."""
        a, b, c, d = self.m
        e = self.ring
        return ((Element(e, a), Element(e, b)), (Element(e, c), Element(e, d)))

    def __repr__(self):
        f = self.ring.format_element
        a, b, c, d = self.m
        return f"[[{f(a)}, {f(b)}], [{f(c)}, {f(d)}]]"


class RingTuple:
    """A non-empty tuple of ring elements with cyclic index convention.

    Entries are reduced payloads or Elements; plain ints are payloads, not
    integers to embed (use from_ints for the unital map from Z).
    """

    __slots__ = ("ring", "entries")

    def __init__(self, ring: Ring, entries: Iterable):
        payloads = []
        for v in entries:
            if isinstance(v, Element):
                if v.ring != ring:
                    raise RingMismatchError(f"entry of {v.ring} in tuple over {ring}")
                payloads.append(v.payload)
            else:
                payloads.append(v)
        if not payloads:
            raise ValueError("tuple must be non-empty")
        self.ring = ring
        self.entries = tuple(payloads)

    @classmethod
    def from_ints(cls, ring: Ring, values: Iterable[int]) -> "RingTuple":
        """Tuple of the images of the given integers under Z -> ring."""
        return cls(ring, [ring.from_int(v) for v in values])

    @classmethod
    def parse(cls, ring: Ring, text: str) -> "RingTuple":
        """Parse a comma-separated tuple literal, e.g. ``(1,0),(0,1)`` or
        ``0,X,0,X+1``."""
        parts = split_top_level(text)
        return cls(ring, [ring.parse_element(p) for p in parts])

    def literal(self) -> str:
        f = self.ring.format_element
        return ",".join(f(p) for p in self.entries)

    def elements(self) -> tuple:
        return tuple(Element(self.ring, p) for p in self.entries)

    def entry(self, i: int) -> Element:
        """1-based cyclic access: entry(n + k) == entry(k)."""
        return Element(self.ring, self.entries[(i - 1) % len(self.entries)])

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if isinstance(other, RingTuple):
            return self.ring == other.ring and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        return f"<{self.literal()} over {self.ring}>"


def parse_tuple(ring: Ring, text: str) -> RingTuple:
    return RingTuple.parse(ring, text)


@dataclass(frozen=True)
class QuiddityVerdict:
    """Outcome of verification: not a quiddity, or a quiddity with a sign.

    When the ring identifies Id and -Id (characteristic 2 everywhere) both
    signs hold; the canonical report is sign +1 with char2 set.
    """

    is_quiddity: bool
    sign: Optional[int] = None
    char2: bool = False

    def sign_text(self) -> Optional[str]:
        if not self.is_quiddity:
            return None
        base = "+1" if self.sign > 0 else "-1"
        return f"{base} (char-2 canonical)" if self.char2 else base


@dataclass(frozen=True)
class DihedralOp:
    """An element of the dihedral group acting on tuple positions.

    Application rotates left by ``rot`` and then reverses when ``reflected``.
    The 2n ops (rot in [0, n), reflected in {False, True}) enumerate the
    whole group for tuples of length n.
    """

    rot: int
    reflected: bool = False


def dihedral_ops(n: int) -> Iterator[DihedralOp]:
    """All 2n ops in scan order: rotation ascending, plain before reflected."""
    for rot in range(n):
        yield DihedralOp(rot, False)
        yield DihedralOp(rot, True)


def _apply_op(entries: tuple, op: DihedralOp) -> tuple:
    k = op.rot % len(entries)
    rotated = entries[k:] + entries[:k]
    return rotated[::-1] if op.reflected else rotated


def dihedral_apply(t: RingTuple, op: DihedralOp) -> RingTuple:
    """The tuple read off along the permuted positions."""
    return RingTuple(t.ring, _apply_op(t.entries, op))


def m_matrix(t: RingTuple) -> Mat2:
    """M_n of the tuple: elementary factors multiplied with a_n leftmost.

    The entries are continuants:  M_n = [[K_n(a_1..a_n), -K_{n-1}(a_2..a_n)],
    [K_{n-1}(a_1..a_{n-1}), -K_{n-2}(a_2..a_{n-1})]].
    """
    ring = t.ring
    m = _mat_identity(ring)
    for x in t.entries:
        m = _mat_mul(ring, _mat_factor(ring, x), m)
    return Mat2(ring, m)


def continuant(ring: Ring, values: Sequence) -> Element:
    """K_i by the three-term recurrence K_i = a_i K_{i-1} - K_{i-2},
    with K_{-1} = 0 and K_0 = 1.  The empty sequence gives 1; values are
    payloads or Elements."""
    prev, cur = ring.zero, ring.one
    for v in values:
        p = v.payload if isinstance(v, Element) else v
        prev, cur = cur, ring.sub(ring.mul(p, cur), prev)
    return Element(ring, cur)


def verify(t: RingTuple) -> QuiddityVerdict:
    """Decide whether M_n(t) is plus or minus the identity."""
    ring = t.ring
    m = m_matrix(t).m
    ident = _mat_identity(ring)
    neg_ident = _mat_neg(ring, ident)
    is_plus = m == ident
    is_minus = m == neg_ident
    if not (is_plus or is_minus):
        return QuiddityVerdict(False)
    if is_plus and is_minus:
        return QuiddityVerdict(True, +1, char2=True)
    return QuiddityVerdict(True, +1 if is_plus else -1)


def oplus(u: RingTuple, v: RingTuple) -> RingTuple:
    """The sum of two tuples:

        (a_1..a_n) (+) (b_1..b_m)
            = (a_1+b_m, a_2, ..., a_{n-1}, a_n+b_1, b_2, ..., b_{m-1})

    of length n+m-2.  (0,0) is a two-sided unit; the operation is neither
    commutative nor associative.  If both operands are quiddities with signs
    alpha and beta, the sum is a quiddity with sign -alpha*beta.
    """
    if u.ring != v.ring:
        raise RingMismatchError("sum of tuples over different rings")
    if len(u) < 2 or len(v) < 2:
        raise ValueError("sum requires both tuples to have length >= 2")
    ring = u.ring
    a, b = u.entries, v.entries
    merged = (
        (ring.add(a[0], b[-1]),)
        + a[1:-1]
        + (ring.add(a[-1], b[0]),)
        + b[1:-1]
    )
    return RingTuple(ring, merged)


def canonical_form(t: RingTuple) -> RingTuple:
    """Lexicographically least tuple among the 2n dihedral images.

    Payload order is the canonical element order, so Python comparison on
    payload tuples decides the minimum.  Ties between ops producing the same
    minimum resolve to the non-reflected, least-rotation op.
    """
    return RingTuple(t.ring, _canonical_entries(t.entries))


def _canonical_entries(entries: tuple) -> tuple:
    n = len(entries)
    doubled = entries + entries
    rev = entries[::-1]
    rev_doubled = rev + rev
    best = entries
    for k in range(n):
        cand = doubled[k : k + n]
        if cand < best:
            best = cand
    for k in range(n):
        cand = rev_doubled[k : k + n]
        if cand < best:
            best = cand
    return best


def equivalent(u: RingTuple, v: RingTuple) -> bool:
    """True when one tuple is a rotation of the other or of its reversal."""
    if u.ring != v.ring:
        raise RingMismatchError("equivalence across different rings")
    if len(u) != len(v):
        return False
    return _canonical_entries(u.entries) == _canonical_entries(v.entries)


def assemble(components: Sequence[RingTuple]) -> RingTuple:
    """Zip same-length tuples over rings A_1..A_k into one tuple over the
    product ring A_1 x ... x A_k."""
    if not components:
        raise ValueError("no components to assemble")
    n = len(components[0])
    if any(len(c) != n for c in components):
        raise ValueError("components must share one length")
    ring = ProductRing([c.ring for c in components])
    entries = [tuple(c.entries[i] for c in components) for i in range(n)]
    return RingTuple(ring, entries)


def split(t: RingTuple) -> list[RingTuple]:
    """Inverse of assemble: per-factor component tuples of a product tuple."""
    if not isinstance(t.ring, ProductRing):
        raise ValueError(f"{t.ring} is not a product ring")
    return [
        RingTuple(f, tuple(e[i] for e in t.entries))
        for i, f in enumerate(t.ring.factors)
    ]
