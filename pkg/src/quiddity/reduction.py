"""Reducibility of quiddities: splitting a tuple as c (+) b up to dihedral
motion, with b a shorter quiddity.

A quiddity t of size n >= 3 is reducible when some dihedral image t^sigma
equals c (+) b with b a quiddity of size l, 3 <= l <= n-1, and c a tuple of
size n+2-l.  In the (+) layout the middle of b is pinned to the last l-2
entries of t^sigma while b_1 and b_l are free, so for fixed (sigma, l) and
sign there is at most one candidate pair (b_1, b_l), read directly off the
matrix of the pinned window.  (0,0) is reducible by convention; size-3
quiddities are irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    DihedralOp,
    RingTuple,
    _apply_op,
    _mat_factor,
    _mat_mul,
    dihedral_ops,
    verify,
)
from .rings import (
    BoundedIntRing,
    InfiniteRingError,
    ProductRing,
    Ring,
    WindowOverflow,
)


@dataclass
class ReductionWitness:
    """A certified split: dihedral_apply(t, sigma) == c (+) b.

    b is a quiddity of size l; c has size n+2-l.  The conventional witness
    for (0,0) uses l = 2 with b = c = (0,0).
    """

    sigma: DihedralOp
    l: int
    b: RingTuple
    c: RingTuple
    conventional: bool = False

    def to_json(self) -> dict:
        fmt = self.b.ring.format_element
        out = {
            "sigma": {"rot": self.sigma.rot, "refl": self.sigma.reflected},
            "l": self.l,
            "b": [fmt(p) for p in self.b.entries],
            "c": [fmt(p) for p in self.c.entries],
        }
        if self.conventional:
            out["conventional"] = True
        return out


@dataclass
class BoundedReduction:
    """Result of a window-limited scan: evidence, not proof.

    witness is None when no split was found with the free entries confined
    to the window; overflow_skips counts candidate checks abandoned because
    ring arithmetic left the bounded-integer window.
    """

    witness: Optional[ReductionWitness]
    window: int
    overflow_skips: int = 0

    @property
    def no_witness_within_bound(self) -> bool:
        return self.witness is None


def _close_pair(ring: Ring, w, eps):
    """Solve M(b_l)^-1 * eps * M(b_1)^-1 == W for (b_1, b_l).

    W = eps * [[-1, b_1], [-b_l, b_1*b_l - 1]], so the pair is forced by the
    off-diagonal entries; returns None when the diagonal checks fail.
    """
    wa, wb, wc, wd = w
    if wa != ring.neg(eps):
        return None
    b1 = ring.mul(eps, wb)
    bl = ring.neg(ring.mul(eps, wc))
    if wd != ring.mul(eps, ring.sub(ring.mul(b1, bl), ring.one)):
        return None
    return b1, bl


def _signs(ring: Ring):
    one = ring.one
    minus = ring.minus_one
    if one == minus:
        return [one]
    return [one, minus]


def _scan(t: RingTuple, accept_pair):
    """Deterministic witness scan.

    Order: sigma by (rotation, then reflected), l ascending, candidate
    (b_1, b_l) pairs in element order.  accept_pair filters candidates (used
    by the bounded variant); returns the first witness or None.
    """
    ring = t.ring
    n = len(t)
    signs = _signs(ring)
    for op in dihedral_ops(n):
        img = _apply_op(t.entries, op)
        w = None
        for l in range(3, n):
            m = n + 2 - l
            front = img[m]  # window img[m:] grows at the front as l increases
            fm = _mat_factor(ring, front)
            w = fm if w is None else _mat_mul(ring, w, fm)
            candidates = []
            for eps in signs:
                pair = _close_pair(ring, w, eps)
                if pair is not None and accept_pair(pair) and pair not in candidates:
                    candidates.append(pair)
            if not candidates:
                continue
            b1, bl = min(candidates)
            b = RingTuple(ring, (b1,) + img[m:] + (bl,))
            c = RingTuple(
                ring,
                (ring.sub(img[0], bl),) + img[1 : m - 1] + (ring.sub(img[m - 1], b1),),
            )
            return ReductionWitness(op, l, b, c)
    return None


def _conventional_zero_witness(t: RingTuple) -> ReductionWitness:
    zero_pair = RingTuple(t.ring, (t.ring.zero, t.ring.zero))
    return ReductionWitness(DihedralOp(0, False), 2, zero_pair, zero_pair, conventional=True)


def _check_quiddity(t: RingTuple):
    if not verify(t).is_quiddity:
        raise ValueError(f"{t!r} is not a quiddity")


def is_reducible(t: RingTuple) -> Optional[ReductionWitness]:
    """First witness in scan order, or None when t is irreducible.

    Requires a quiddity over a finite ring.  Sizes 1 and 2 and the size-3
    case are fast paths: no size-1 quiddity exists, (0,0) carries the
    conventional witness, and size-3 quiddities are irreducible.
    """
    _check_quiddity(t)
    if not t.ring.finite:
        raise InfiniteRingError("use is_reducible_bounded over infinite rings")
    n = len(t)
    if n == 2:
        return _conventional_zero_witness(t)
    if n == 3:
        return None
    return _scan(t, lambda pair: True)


def _contains_bounded_int(ring: Ring) -> bool:
    if isinstance(ring, BoundedIntRing):
        return True
    if isinstance(ring, ProductRing):
        return any(isinstance(f, BoundedIntRing) for f in ring.factors)
    return False


def _within_window(ring: Ring, payload, window: int) -> bool:
    if isinstance(ring, BoundedIntRing):
        return abs(payload) <= window
    if isinstance(ring, ProductRing):
        return all(
            _within_window(f, p, window) for f, p in zip(ring.factors, payload)
        )
    return True


def is_reducible_bounded(t: RingTuple, window: int) -> BoundedReduction:
    """Witness scan with bounded-integer free entries confined to
    [-window, window].

    A None result is evidence within the declared window only.  Candidate
    checks that overflow the ring's own window are skipped and counted.
    """
    _check_quiddity(t)
    if not _contains_bounded_int(t.ring):
        raise ValueError(f"{t.ring} has no bounded-integer factor; use is_reducible")
    n = len(t)
    if n == 2:
        return BoundedReduction(_conventional_zero_witness(t), window)
    if n == 3:
        return BoundedReduction(None, window)

    ring = t.ring
    skips = 0

    def accept(pair):
        return _within_window(ring, pair[0], window) and _within_window(
            ring, pair[1], window
        )

    # replicate _scan but survive per-(sigma, l) window overflows
    signs = _signs(ring)
    for op in dihedral_ops(n):
        img = _apply_op(t.entries, op)
        w = None
        for l in range(3, n):
            m = n + 2 - l
            try:
                fm = _mat_factor(ring, img[m])
                w = fm if w is None else _mat_mul(ring, w, fm)
            except WindowOverflow:
                skips += n - l  # this and all longer windows for this sigma
                break
            candidates = []
            for eps in signs:
                try:
                    pair = _close_pair(ring, w, eps)
                except WindowOverflow:
                    skips += 1
                    continue
                if pair is not None and accept(pair) and pair not in candidates:
                    candidates.append(pair)
            if not candidates:
                continue
            b1, bl = min(candidates)
            try:
                b = RingTuple(ring, (b1,) + img[m:] + (bl,))
                c = RingTuple(
                    ring,
                    (ring.sub(img[0], bl),)
                    + img[1 : m - 1]
                    + (ring.sub(img[m - 1], b1),),
                )
            except WindowOverflow:
                skips += 1
                continue
            return BoundedReduction(ReductionWitness(op, l, b, c), window, skips)
    return BoundedReduction(None, window, skips)


@dataclass
class SimultaneousReduction:
    """Common split data for component tuples over possibly different rings."""

    sigma: DihedralOp
    l: int
    sign: int
    parts: list[RingTuple]

    def to_json(self) -> dict:
        return {
            "sigma": {"rot": self.sigma.rot, "refl": self.sigma.reflected},
            "l": self.l,
            "sign": self.sign,
            "parts": [[p.ring.format_element(e) for e in p.entries] for p in self.parts],
        }


def simultaneous_reducible(
    components: Sequence[RingTuple],
) -> Optional[SimultaneousReduction]:
    """Search for a common (sigma, l) and a global sign splitting every
    component at once.

    The global sign is one of the two integers +1/-1 mapped into each ring;
    rings of characteristic 2 accept either image.  Agrees with is_reducible
    on the assembled product tuple.
    """
    if not components:
        raise ValueError("no components given")
    n = len(components[0])
    if any(len(c) != n for c in components):
        raise ValueError("components must share one length")
    for c in components:
        _check_quiddity(c)
        if not c.ring.finite:
            raise InfiniteRingError(f"{c.ring} is infinite")
    if n == 2:
        zero_parts = [
            RingTuple(c.ring, (c.ring.zero, c.ring.zero)) for c in components
        ]
        return SimultaneousReduction(DihedralOp(0, False), 2, +1, zero_parts)
    if n == 3:
        return None

    rings = [c.ring for c in components]
    imgs_cache = {}
    for op in dihedral_ops(n):
        imgs = [_apply_op(c.entries, op) for c in components]
        ws = [None] * len(components)
        for l in range(3, n):
            m = n + 2 - l
            for i, ring in enumerate(rings):
                fm = _mat_factor(ring, imgs[i][m])
                ws[i] = fm if ws[i] is None else _mat_mul(ring, ws[i], fm)
            for sign in (+1, -1):
                parts = []
                for i, ring in enumerate(rings):
                    eps = ring.one if sign > 0 else ring.minus_one
                    pair = _close_pair(ring, ws[i], eps)
                    if pair is None:
                        parts = None
                        break
                    b1, bl = pair
                    parts.append(RingTuple(ring, (b1,) + imgs[i][m:] + (bl,)))
                if parts is not None:
                    return SimultaneousReduction(op, l, sign, parts)
    return None
