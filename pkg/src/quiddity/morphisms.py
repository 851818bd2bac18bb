"""Unital ring morphisms and transfer of quiddity classifications.

Entrywise images of quiddities under a unital morphism are quiddities, and
under an isomorphism irreducibility transfers in both directions, so a
classification over one ring can be re-canonicalized over an isomorphic one.
"""

from __future__ import annotations

import math
from typing import Optional

from .core import RingTuple, canonical_form
from .enumeration import ClassificationReport
from .rings import (
    BoundedIntRing,
    GF4Ring,
    ModRing,
    PowerSetRing,
    ProductRing,
    Ring,
    RingMismatchError,
)


class MorphismError(ValueError):
    """Invalid morphism construction or application."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_finite_field(ring: Ring) -> bool:
    return isinstance(ring, GF4Ring) or (
        isinstance(ring, ModRing) and _is_prime(ring.n)
    )


class Morphism:
    """A unital ring morphism applied payload-to-payload."""

    domain: Ring
    codomain: Ring
    is_isomorphism: bool = False

    def apply_payload(self, x):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{self.describe()}: {self.domain} -> {self.codomain}"


class CrtIsomorphism(Morphism):
    """Z/n x Z/m -> Z/nm for coprime n, m, solving the two congruences with
    the extended gcd."""

    is_isomorphism = True

    def __init__(self, n: int, m: int):
        if math.gcd(n, m) != 1:
            raise MorphismError(f"moduli {n} and {m} are not coprime")
        self.n, self.m = n, m
        self.domain = ProductRing([ModRing(n), ModRing(m)])
        self.codomain = ModRing(n * m)
        # coefficients: x = a * cm + b * cn (mod nm) hits x = a (n), x = b (m)
        self.cm = m * pow(m, -1, n)
        self.cn = n * pow(n, -1, m)

    def apply_payload(self, x):
        a, b = x
        return (a * self.cm + b * self.cn) % (self.n * self.m)

    def describe(self):
        return f"crt:{self.n},{self.m}"


class FrobeniusMap(Morphism):
    """x -> x^p on a ring of prime characteristic p; an automorphism on
    finite fields."""

    def __init__(self, ring: Ring):
        p = ring.characteristic()
        if not _is_prime(p):
            raise MorphismError(f"{ring} does not have prime characteristic")
        self.p = p
        self.domain = ring
        self.codomain = ring
        self.is_isomorphism = is_finite_field(ring)

    def apply_payload(self, x):
        out = self.domain.one
        for _ in range(self.p):
            out = self.domain.mul(out, x)
        return out

    def describe(self):
        return "frob"


class PowerSetBitmap(Morphism):
    """(Z/2)^k -> P(k): the i-th bit is the membership of the i-th ground
    element; inverse of the indicator-vector map."""

    is_isomorphism = True

    def __init__(self, k: int):
        self.k = k
        self.domain = ProductRing([ModRing(2)] * k)
        self.codomain = PowerSetRing(k)

    def apply_payload(self, x):
        mask = 0
        for i, bit in enumerate(x):
            mask |= bit << (self.k - 1 - i)
        return mask

    def describe(self):
        return f"pset:{self.k}"


class ModReductionMap(Morphism):
    """Bounded integers -> Z/N by residue; unital but never invertible."""

    is_isomorphism = False

    def __init__(self, domain: BoundedIntRing, n: int):
        if not isinstance(domain, BoundedIntRing):
            raise MorphismError("mod reduction needs a bounded-integer domain")
        self.domain = domain
        self.codomain = ModRing(n)

    def apply_payload(self, x):
        return x % self.codomain.n

    def describe(self):
        return f"mod:{self.codomain.n}"


class ComponentPermutation(Morphism):
    """Reorder the factors of a product ring; always an isomorphism."""

    is_isomorphism = True

    def __init__(self, domain: ProductRing, perm):
        if not isinstance(domain, ProductRing):
            raise MorphismError("component permutation needs a product domain")
        perm = tuple(perm)
        if sorted(perm) != list(range(len(domain.factors))):
            raise MorphismError(f"{perm} is not a permutation of the factors")
        self.perm = perm
        self.domain = domain
        self.codomain = ProductRing([domain.factors[i] for i in perm])

    def apply_payload(self, x):
        return tuple(x[i] for i in self.perm)

    def describe(self):
        return "perm:" + ",".join(map(str, self.perm))


def parse_morphism(text: str, ring: Optional[Ring] = None) -> Morphism:
    """Descriptors: ``crt:2,3``, ``frob``, ``pset:2``, ``mod:6``; the last
    two of frob/mod need the domain ring supplied."""
    t = text.strip()
    if t.startswith("crt:"):
        parts = t[4:].split(",")
        if len(parts) != 2:
            raise MorphismError(f"bad crt descriptor {text!r}")
        return CrtIsomorphism(int(parts[0]), int(parts[1]))
    if t == "frob":
        if ring is None:
            raise MorphismError("frob needs a ring")
        return FrobeniusMap(ring)
    if t.startswith("pset:"):
        return PowerSetBitmap(int(t[5:]))
    if t.startswith("mod:"):
        if ring is None:
            raise MorphismError("mod reduction needs a ring")
        return ModReductionMap(ring, int(t[4:]))
    raise MorphismError(f"unknown morphism descriptor {text!r}")


def apply_morphism(m: Morphism, t: RingTuple) -> RingTuple:
    """Entrywise image; the image of a quiddity is a quiddity."""
    if t.ring != m.domain:
        raise RingMismatchError(f"tuple over {t.ring} fed to morphism from {m.domain}")
    return RingTuple(m.codomain, tuple(m.apply_payload(p) for p in t.entries))


def crt_value_table(n: int, m: int) -> dict:
    """The full bijection (a mod n, b mod m) -> x mod nm."""
    phi = CrtIsomorphism(n, m)
    return {p: phi.apply_payload(p) for p in phi.domain.elements()}


def transfer_classification(m: Morphism, report: ClassificationReport) -> ClassificationReport:
    """Push a classification through an isomorphism, re-canonicalizing every
    class on the codomain.  Counts carry over unchanged."""
    if not m.is_isomorphism:
        raise MorphismError(f"{m.describe()} is not an isomorphism")
    if report.ring != m.domain:
        raise RingMismatchError(
            f"report over {report.ring} fed to morphism from {m.domain}"
        )
    sizes = {}
    for n, classes in report.sizes.items():
        mapped = [canonical_form(apply_morphism(m, t)) for t in classes]
        sizes[n] = sorted(mapped, key=lambda t: t.entries)
    return ClassificationReport(
        ring=m.codomain,
        max_size=report.max_size,
        sizes=sizes,
        counts=dict(report.counts),
        exhausted_to=report.exhausted_to,
        partial=report.partial,
        nodes=report.nodes,
        wall_secs=report.wall_secs,
    )


def frobenius_closure_check(ring: Ring, report: ClassificationReport) -> bool:
    """Over a finite field, test that the irreducible-class set is stable
    under the entrywise p-th power."""
    if not is_finite_field(ring):
        raise MorphismError(f"{ring} is not a finite field")
    if report.ring != ring:
        raise RingMismatchError("report ring does not match")
    frob = FrobeniusMap(ring)
    for n, classes in report.sizes.items():
        have = {t.entries for t in classes}
        image = {canonical_form(apply_morphism(frob, t)).entries for t in classes}
        if have != image:
            return False
    return True
