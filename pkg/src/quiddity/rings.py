"""Arithmetic over the finite commutative unital rings used by the search core.

Supported rings: integers mod N, the four-element field, direct products,
power-set rings (symmetric difference / intersection), and a bounded-integer
ring that stands in for Z in window-limited searches.

Ring objects work on raw *payloads* (ints, or nested tuples of ints for
products) so that hot loops avoid wrapper allocation; `Element` wraps a
payload for the public API.  Payloads of a given ring compare with Python's
native ordering exactly in the canonical element order:

  * mod N        : residue 0..N-1
  * F4           : 0, 1, X, X+1 (encoded 0..3, X-coefficient as the high bit)
  * bounded int  : signed value
  * products     : componentwise lexicographic
  * power sets   : membership bitmask, first ground element most significant
"""

from __future__ import annotations

import itertools
import math
import string
from functools import lru_cache
from typing import Sequence


class RingError(ValueError):
    """Base class for ring construction and arithmetic errors."""


class RingParseError(RingError):
    """Malformed ring descriptor or element literal."""


class RingMismatchError(RingError):
    """Operation mixing elements of different rings."""


class InfiniteRingError(RingError):
    """A finite-only operation was asked of an infinite ring."""


class WindowOverflow(ArithmeticError):
    """Bounded-integer arithmetic left the declared [-B, B] window."""


class Ring:
    """Base interface: payload-level ops plus formatting and enumeration."""

    finite = True

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def from_int(self, k: int):
        """Image of the integer k under the unique unital map from Z."""
        raise NotImplementedError

    def elements(self) -> list:
        """All payloads, exactly once, in canonical order."""
        raise NotImplementedError

    def characteristic(self) -> int:
        """Least n >= 1 with n*1 = 0, or 0 if no such n exists."""
        raise NotImplementedError

    def format_element(self, a) -> str:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def key(self) -> tuple:
        """Hashable identity of the ring (kind plus parameters)."""
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def minus_one(self):
        return self.neg(self.from_int(1))

    def element(self, value) -> "Element":
        """Wrap an integer (via from_int) or an existing payload-like value."""
        if isinstance(value, Element):
            if value.ring != self:
                raise RingMismatchError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            return Element(self, self.from_int(value))
        return Element(self, value)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.describe()


class ModRing(Ring):
    """Z/NZ for N >= 2; payloads are residues in [0, N)."""

    def __init__(self, n: int):
        if n < 2:
            raise RingError(f"modulus must be >= 2, got {n}")
        self.n = n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def from_int(self, k):
        return k % self.n

    def elements(self):
        return list(range(self.n))

    def characteristic(self):
        return self.n

    def format_element(self, a):
        return str(a)

    def parse_element(self, text):
        try:
            return int(text.strip()) % self.n
        except ValueError:
            raise RingParseError(f"bad residue literal {text!r} for {self}") from None

    def describe(self):
        return f"Z/{self.n}"

    def key(self):
        return ("mod", self.n)


_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
_GF4_NAMES = ("0", "1", "X", "X+1")


class GF4Ring(Ring):
    """The field with four elements, Z/2[X] mod X^2+X+1.

    Payload encoding: bit 0 is the constant term, bit 1 the X coefficient,
    so the canonical order is 0, 1, X, X+1.  Squaring swaps X and X+1.
    """

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return _GF4_MUL[a][b]

    def neg(self, a):
        return a

    def from_int(self, k):
        return k % 2

    def elements(self):
        return [0, 1, 2, 3]

    def characteristic(self):
        return 2

    def format_element(self, a):
        return _GF4_NAMES[a]

    def parse_element(self, text):
        t = text.strip().replace(" ", "")
        try:
            return _GF4_NAMES.index(t)
        except ValueError:
            raise RingParseError(f"bad F4 literal {text!r}; use 0|1|X|X+1") from None

    def describe(self):
        return "F4"

    def key(self):
        return ("gf4",)


class ProductRing(Ring):
    """Direct product with componentwise operations.

    Nested products are flattened on construction; payloads are flat tuples,
    one entry per factor.
    """

    def __init__(self, factors: Sequence[Ring]):
        flat: list[Ring] = []
        for f in factors:
            if isinstance(f, ProductRing):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if not flat:
            raise RingError("product of no rings")
        self.factors = tuple(flat)

    @property
    def finite(self):
        return all(f.finite for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def from_int(self, k):
        return tuple(f.from_int(k) for f in self.factors)

    def elements(self):
        if not self.finite:
            raise InfiniteRingError(f"{self} is infinite")
        return [tuple(p) for p in itertools.product(*(f.elements() for f in self.factors))]

    def characteristic(self):
        chars = [f.characteristic() for f in self.factors]
        if any(c == 0 for c in chars):
            return 0
        return math.lcm(*chars)

    def format_element(self, a):
        return "(" + ",".join(f.format_element(x) for f, x in zip(self.factors, a)) + ")"

    def parse_element(self, text):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise RingParseError(f"product element must be parenthesised: {text!r}")
        parts = split_top_level(t[1:-1])
        if len(parts) != len(self.factors):
            raise RingParseError(
                f"expected {len(self.factors)} components in {text!r}, got {len(parts)}"
            )
        return tuple(f.parse_element(p) for f, p in zip(self.factors, parts))

    def describe(self):
        return "x".join(f.describe() for f in self.factors)

    def key(self):
        return ("product", tuple(f.key() for f in self.factors))


class PowerSetRing(Ring):
    """Subsets of a k-element ground set under symmetric difference and
    intersection.

    Payloads are bitmasks with the first ground element in the most
    significant bit, which makes integer order agree with the lexicographic
    order on membership vectors.  Ground elements are named a, b, c, ...
    """

    def __init__(self, k: int):
        if k < 1:
            raise RingError(f"ground set size must be >= 1, got {k}")
        if k > 26:
            raise RingError("ground set larger than 26 is not supported")
        self.k = k
        self.full = (1 << k) - 1
        self.names = string.ascii_lowercase[:k]

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return a & b

    def neg(self, a):
        return a

    def from_int(self, k):
        return self.full if k % 2 else 0

    def elements(self):
        return list(range(1 << self.k))

    def characteristic(self):
        return 2

    def format_element(self, a):
        members = [self.names[i] for i in range(self.k) if (a >> (self.k - 1 - i)) & 1]
        return "{" + ",".join(members) + "}"

    def parse_element(self, text):
        t = text.strip()
        if not (t.startswith("{") and t.endswith("}")):
            raise RingParseError(f"subset literal must use braces: {text!r}")
        body = t[1:-1].strip()
        mask = 0
        if body:
            for name in body.split(","):
                name = name.strip()
                idx = self.names.find(name)
                if idx < 0 or len(name) != 1:
                    raise RingParseError(f"unknown ground element {name!r} in {text!r}")
                bit = 1 << (self.k - 1 - idx)
                if mask & bit:
                    raise RingParseError(f"repeated ground element {name!r} in {text!r}")
                mask |= bit
        return mask

    def describe(self):
        return f"P({self.k})"

    def key(self):
        return ("powerset", self.k)


class BoundedIntRing(Ring):
    """Z restricted to the window [-B, B].

    Any operation whose exact integer result leaves the window raises
    WindowOverflow; there is never silent wraparound, so window-limited
    searches stay sound as evidence about Z.
    """

    finite = False

    def __init__(self, bound: int):
        if bound < 1:
            raise RingError(f"window bound must be >= 1, got {bound}")
        self.bound = bound

    def _check(self, v):
        if abs(v) > self.bound:
            raise WindowOverflow(f"value {v} outside [-{self.bound}, {self.bound}]")
        return v

    def add(self, a, b):
        return self._check(a + b)

    def mul(self, a, b):
        return self._check(a * b)

    def neg(self, a):
        return -a

    def from_int(self, k):
        return self._check(k)

    def elements(self):
        raise InfiniteRingError(f"{self} models Z and cannot be enumerated")

    def characteristic(self):
        return 0

    def format_element(self, a):
        return str(a)

    def parse_element(self, text):
        try:
            return self._check(int(text.strip()))
        except ValueError:
            raise RingParseError(f"bad integer literal {text!r} for {self}") from None

    def describe(self):
        return f"Z[{self.bound}]"

    def key(self):
        return ("boundedint", self.bound)


class Element:
    """A ring element: a payload tagged with its ring.

    Supports +, -, * and unary minus against elements of the same ring or
    plain ints (mapped through from_int).
    """

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise RingMismatchError(f"mixing {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return Element(self.ring, self.ring.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring.add(self.payload, o.payload))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring.sub(self.payload, o.payload))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring.mul(self.payload, o.payload))

    __rmul__ = __mul__

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.payload))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring == other.ring and self.payload == other.payload
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __repr__(self):
        return self.ring.format_element(self.payload)


def split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses or braces."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth < 0:
                raise RingParseError(f"unbalanced brackets in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise RingParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(current))
    if any(not p.strip() for p in parts):
        raise RingParseError(f"empty component in {text!r}")
    return [p.strip() for p in parts]


def parse_ring_spec(text: str) -> Ring:
    """Parse a ring descriptor.

    Grammar: ``Z/N`` (N >= 2), ``F4``, ``P(k)``, ``Z[B]``, products joined
    with ``x``, parentheses for grouping.  Nested products flatten, e.g.
    ``(Z/2xZ/3)xZ/5`` and ``Z/2xZ/3xZ/5`` denote the same ring.
    """
    tokens = _tokenize(text)
    ring, pos = _parse_product(tokens, 0)
    if pos != len(tokens):
        raise RingParseError(f"trailing input in ring descriptor {text!r}")
    return ring


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    t = text.strip()
    if not t:
        raise RingParseError("empty ring descriptor")
    while i < len(t):
        ch = t[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            tokens.append(ch)
            i += 1
        elif ch == "x":
            tokens.append("x")
            i += 1
        elif t.startswith("Z/", i):
            j = i + 2
            while j < len(t) and t[j].isdigit():
                j += 1
            if j == i + 2:
                raise RingParseError(f"missing modulus after Z/ in {text!r}")
            tokens.append(t[i:j])
            i = j
        elif t.startswith("Z[", i):
            j = t.find("]", i)
            if j < 0:
                raise RingParseError(f"missing ] in {text!r}")
            tokens.append(t[i : j + 1])
            i = j + 1
        elif t.startswith("F4", i):
            tokens.append("F4")
            i += 2
        elif t.startswith("P(", i):
            j = t.find(")", i)
            if j < 0:
                raise RingParseError(f"missing ) in {text!r}")
            tokens.append(t[i : j + 1])
            i = j + 1
        else:
            raise RingParseError(f"unexpected character {ch!r} in ring descriptor {text!r}")
    return tokens


def _parse_product(tokens: list[str], pos: int) -> tuple[Ring, int]:
    terms = []
    term, pos = _parse_term(tokens, pos)
    terms.append(term)
    while pos < len(tokens) and tokens[pos] == "x":
        term, pos = _parse_term(tokens, pos + 1)
        terms.append(term)
    if len(terms) == 1:
        return terms[0], pos
    return ProductRing(terms), pos


def _parse_term(tokens: list[str], pos: int) -> tuple[Ring, int]:
    if pos >= len(tokens):
        raise RingParseError("unexpected end of ring descriptor")
    tok = tokens[pos]
    if tok == "(":
        ring, pos = _parse_product(tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos] != ")":
            raise RingParseError("missing closing parenthesis in ring descriptor")
        return ring, pos + 1
    if tok == "F4":
        return GF4Ring(), pos + 1
    if tok.startswith("Z/"):
        return ModRing(int(tok[2:])), pos + 1
    if tok.startswith("Z["):
        try:
            bound = int(tok[2:-1])
        except ValueError:
            raise RingParseError(f"bad window bound in {tok!r}") from None
        return BoundedIntRing(bound), pos + 1
    if tok.startswith("P("):
        try:
            k = int(tok[2:-1])
        except ValueError:
            raise RingParseError(f"bad ground set size in {tok!r}") from None
        return PowerSetRing(k), pos + 1
    raise RingParseError(f"unexpected token {tok!r} in ring descriptor")


class OpTable:
    """Dense index-based operation tables for a finite ring.

    Index i refers to elements()[i]; canonical element order equals index
    order, so search code can work entirely on small ints.
    """

    __slots__ = (
        "ring",
        "payloads",
        "index",
        "add",
        "sub",
        "mul",
        "neg",
        "zero",
        "one",
        "minus_one",
    )

    def __init__(self, ring: Ring):
        payloads = ring.elements()
        index = {p: i for i, p in enumerate(payloads)}
        self.ring = ring
        self.payloads = payloads
        self.index = index
        self.add = [[index[ring.add(a, b)] for b in payloads] for a in payloads]
        self.sub = [[index[ring.sub(a, b)] for b in payloads] for a in payloads]
        self.mul = [[index[ring.mul(a, b)] for b in payloads] for a in payloads]
        self.neg = [index[ring.neg(a)] for a in payloads]
        self.zero = index[ring.zero]
        self.one = index[ring.one]
        self.minus_one = index[ring.minus_one]


@lru_cache(maxsize=None)
def _op_table_cached(ring: Ring) -> OpTable:
    return OpTable(ring)


def op_table(ring: Ring) -> OpTable:
    """Cached operation tables; raises InfiniteRingError for infinite rings."""
    if not ring.finite:
        raise InfiniteRingError(f"{ring} has no finite operation table")
    return _op_table_cached(ring)
