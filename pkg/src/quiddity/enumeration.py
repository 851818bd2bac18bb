"""Exhaustive quiddity search and classification of irreducibles.

The enumerator walks prefixes (a_1 .. a_{n-2}) depth-first, maintaining the
running matrix product, and solves for the closing pair (a_{n-1}, a_n) from
M_2(x, y) = eps * P^{-1}: since M_2(x, y) = [[yx-1, -y], [x, -1]], the pair
is read off the target matrix and two entries are checked, so each prefix
costs O(1) beyond its own product.  Solutions stream in prefix-lexicographic
order with the +1 closing candidate before the -1 one.

Classification canonicalizes every solution (dihedral minimum), then runs
the reduction-module witness scan once per class representative.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterator, Optional, Sequence

from .core import RingTuple, verify
from .reduction import is_reducible
from .rings import (
    BoundedIntRing,
    InfiniteRingError,
    OpTable,
    ProductRing,
    Ring,
    op_table,
    parse_ring_spec,
)


class BudgetExhausted(Exception):
    """Raised inside a search when the node or wall-clock budget runs out."""


class SearchBudget:
    """Node counter with optional node cap and monotonic deadline."""

    __slots__ = ("node_cap", "deadline", "nodes")

    def __init__(self, node_cap: Optional[int] = None, deadline: Optional[float] = None):
        self.node_cap = node_cap
        self.deadline = deadline
        self.nodes = 0

    def spend(self):
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise BudgetExhausted(f"node budget exceeded ({self.node_cap})")
        if (
            self.deadline is not None
            and (self.nodes & 2047) == 0
            and time.monotonic() > self.deadline
        ):
            raise BudgetExhausted("wall-clock budget exceeded")


def _scan_size(
    table: OpTable,
    n: int,
    handler,
    alphabet: Optional[Sequence[int]] = None,
    firsts: Optional[Sequence[int]] = None,
    budget: Optional[SearchBudget] = None,
):
    """Call handler(idx_tuple) for every size-n solution, in scan order.

    alphabet restricts entries (element indices); firsts restricts the first
    entry only (worker block partitioning).
    """
    ADD, MUL, NEG, SUB = table.add, table.mul, table.neg, table.sub
    one, zero, minus_one = table.one, table.zero, table.minus_one
    char2 = one == minus_one
    alpha = list(range(len(table.payloads))) if alphabet is None else sorted(alphabet)
    restricted = alphabet is not None
    alpha_set = set(alpha)
    spend = budget.spend if budget is not None else None

    if n == 1:
        ident = (one, zero, zero, one)
        neg_ident = (minus_one, zero, zero, minus_one)
        for x in alpha:
            if spend:
                spend()
            if (x, NEG[one], one, zero) in (ident, neg_ident):
                handler((x,))
        return

    prefix: list[int] = []

    def close(pa, pb, pc, pd):
        # eps = +1: target P^{-1} = (pd, -pb; -pc, pa)
        if pa == minus_one:
            x = NEG[pc]
            y = pb
            if pd == SUB[MUL[y][x]][one] and (
                not restricted or (x in alpha_set and y in alpha_set)
            ):
                handler(tuple(prefix) + (x, y))
        # eps = -1: target -P^{-1}; skipped when both signs coincide
        if not char2 and pa == one:
            x = pc
            y = NEG[pb]
            if NEG[pd] == SUB[MUL[y][x]][one] and (
                not restricted or (x in alpha_set and y in alpha_set)
            ):
                handler(tuple(prefix) + (x, y))

    depth_cap = n - 2

    # budget counts prefix pushes (tree edges), so block totals merge exactly
    def rec(depth, pa, pb, pc, pd):
        if depth == depth_cap:
            close(pa, pb, pc, pd)
            return
        base = alpha if (depth > 0 or firsts is None) else firsts
        for x in base:
            if spend:
                spend()
            prefix.append(x)
            # left-multiply by E(x) = [[x, -1], [1, 0]]
            rec(depth + 1, SUB[MUL[x][pa]][pc], SUB[MUL[x][pb]][pd], pa, pb)
            prefix.pop()

    rec(0, one, zero, zero, one)


def _enumerate_block_task(args):
    descriptor, n, firsts = args
    ring = parse_ring_spec(descriptor)
    table = op_table(ring)
    found: list[tuple] = []
    _scan_size(table, n, found.append, firsts=firsts)
    return found


def enumerate_quiddities(ring: Ring, n: int, workers: int = 1) -> Iterator[RingTuple]:
    """All quiddities of size n over a finite ring, each exactly once, in
    prefix-lexicographic order.  Worker blocks split on the first entry and
    concatenate in order, so the stream does not depend on the worker count.
    """
    if not ring.finite:
        raise InfiniteRingError(f"cannot enumerate over {ring}")
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    table = op_table(ring)
    found: list[tuple] = []
    if workers > 1 and n >= 3:
        tasks = [
            (ring.describe(), n, block) for block in _first_blocks(table, None, workers)
        ]
        with get_context("fork").Pool(workers) as pool:
            for block_found in pool.imap(_enumerate_block_task, tasks):
                found.extend(block_found)
    else:
        _scan_size(table, n, found.append)
    payloads = table.payloads
    for idx in found:
        yield RingTuple(ring, tuple(payloads[i] for i in idx))


def _canonical_idx(entries: tuple) -> tuple:
    n = len(entries)
    doubled = entries + entries
    rev = entries[::-1]
    rev_doubled = rev + rev
    best = entries
    for k in range(n):
        c = doubled[k : k + n]
        if c < best:
            best = c
    for k in range(n):
        c = rev_doubled[k : k + n]
        if c < best:
            best = c
    return best


def _collect_size(table, n, alphabet=None, firsts=None, budget=None):
    """Count solutions and gather the set of canonical index tuples."""
    count = 0
    canon: set[tuple] = set()

    def handler(idx):
        nonlocal count
        count += 1
        canon.add(_canonical_idx(idx))

    _scan_size(table, n, handler, alphabet=alphabet, firsts=firsts, budget=budget)
    return count, canon


def _block_task(args):
    descriptor, n, firsts, alphabet = args
    ring = parse_ring_spec(descriptor)
    table = op_table(ring)
    budget = SearchBudget()
    count, canon = _collect_size(
        table, n, alphabet=alphabet, firsts=firsts, budget=budget
    )
    return count, canon, budget.nodes


def _first_blocks(table, alphabet, workers):
    """Partition the first-entry choices into contiguous blocks."""
    alpha = list(range(len(table.payloads))) if alphabet is None else sorted(alphabet)
    per = max(1, len(alpha) // (2 * workers))
    return [alpha[i : i + per] for i in range(0, len(alpha), per)]


def _collect_size_parallel(ring, table, n, workers, alphabet=None, budget=None, pool=None):
    tasks = [
        (ring.describe(), n, block, alphabet)
        for block in _first_blocks(table, alphabet, workers)
    ]
    count = 0
    canon: set[tuple] = set()
    nodes = 0
    for bcount, bcanon, bnodes in pool.imap(_block_task, tasks):
        count += bcount
        canon |= bcanon
        nodes += bnodes
    if budget is not None:
        # caps are checked once per merged size; coarser than the sequential path
        budget.nodes += nodes
        if budget.node_cap is not None and budget.nodes > budget.node_cap:
            raise BudgetExhausted(f"node budget exceeded ({budget.node_cap})")
        if budget.deadline is not None and time.monotonic() > budget.deadline:
            raise BudgetExhausted("wall-clock budget exceeded")
    return count, canon


@dataclass
class ClassificationReport:
    """Canonical irreducible classes per size, plus raw solution counts."""

    ring: Ring
    max_size: int
    sizes: dict[int, list[RingTuple]]
    counts: dict[int, int]
    exhausted_to: int
    partial: bool
    nodes: int
    wall_secs: float

    def classes(self, n: int) -> list[RingTuple]:
        return self.sizes.get(n, [])

    def all_classes(self) -> list[RingTuple]:
        out = []
        for n in sorted(self.sizes):
            out.extend(self.sizes[n])
        return out

    def to_json(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "max_size": self.max_size,
            "sizes": {
                str(n): [t.literal() for t in self.sizes[n]]
                for n in sorted(self.sizes)
                if self.sizes[n]
            },
            "counts": {str(n): self.counts[n] for n in sorted(self.counts)},
            "exhausted_to": self.exhausted_to,
            "partial": self.partial,
            "budget": {"nodes": self.nodes},
        }

    def csv_rows(self) -> list[tuple]:
        rows = []
        for n in sorted(self.sizes):
            for t in self.sizes[n]:
                rows.append((n, t.literal()))
        return rows


def classify_irreducible(
    ring: Ring,
    max_size: int,
    *,
    budget_nodes: Optional[int] = None,
    budget_secs: Optional[float] = None,
    workers: int = 1,
) -> ClassificationReport:
    """Canonical irreducible classes for every size up to max_size.

    Budget exhaustion yields a partial report flagged as such, with
    exhausted_to the last fully searched size.  Output is independent of
    the worker count: blocks are merged and every class list sorted.
    """
    if not ring.finite:
        raise InfiniteRingError(f"cannot classify over {ring}")
    table = op_table(ring)
    deadline = time.monotonic() + budget_secs if budget_secs is not None else None
    budget = SearchBudget(budget_nodes, deadline)
    start = time.monotonic()
    payloads = table.payloads
    sizes: dict[int, list[RingTuple]] = {}
    counts: dict[int, int] = {}
    exhausted = 0
    partial = False
    pool_cm = (
        get_context("fork").Pool(workers) if workers > 1 else None
    )
    try:
        for n in range(1, max_size + 1):
            if pool_cm is not None and n >= 3:
                count, canon = _collect_size_parallel(
                    ring, table, n, workers, budget=budget, pool=pool_cm
                )
            else:
                count, canon = _collect_size(table, n, budget=budget)
            if n <= 2:
                # size 1 has no solutions; (0,0) is reducible by convention
                irr = []
            else:
                irr = [
                    t
                    for idx in sorted(canon)
                    for t in [RingTuple(ring, tuple(payloads[i] for i in idx))]
                    if is_reducible(t) is None
                ]
            counts[n] = count
            sizes[n] = irr
            exhausted = n
    except BudgetExhausted:
        partial = True
    finally:
        if pool_cm is not None:
            pool_cm.close()
            pool_cm.join()
    return ClassificationReport(
        ring=ring,
        max_size=max_size,
        sizes=sizes,
        counts=counts,
        exhausted_to=exhausted,
        partial=partial,
        nodes=budget.nodes,
        wall_secs=time.monotonic() - start,
    )


@dataclass
class LmaxResult:
    """Observed maximal irreducible size against the fully exhausted range."""

    ring: Ring
    cap: int
    observed: Optional[int]
    exhausted_to: int
    partial: bool
    classes_per_size: dict[int, int]
    nodes: int
    wall_secs: float

    def to_json(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "cap": self.cap,
            "observed_max": self.observed,
            "exhausted_to": self.exhausted_to,
            "partial": self.partial,
            "classes_per_size": {
                str(n): c for n, c in sorted(self.classes_per_size.items()) if c
            },
            "budget": {"nodes": self.nodes},
        }


def _irreducible_alphabet(table, n: int):
    """Entry restriction for irreducibility hunting: any quiddity of size
    >= 4 containing a unit 1/-1, or of size >= 5 containing 0, is reducible,
    so those entries can be dropped without losing a class."""
    if n <= 3:
        return None
    units = {table.one, table.minus_one}
    if n == 4:
        return [i for i in range(len(table.payloads)) if i not in units]
    return [
        i for i in range(len(table.payloads)) if i not in units and i != table.zero
    ]


def _count_irreducible_stream(ring, table, n, firsts=None, budget=None):
    """Streamed count of irreducible classes at size n.

    A class is counted at its canonical member, recognized intrinsically
    (the candidate equals its own dihedral minimum), so blocks partitioned
    by first entry need no merge deduplication and memory stays flat.
    """
    payloads = table.payloads
    alphabet = _irreducible_alphabet(table, n)
    hits = 0

    def handler(idx):
        nonlocal hits
        first = idx[0]
        for v in idx:
            if v < first:
                return
        if _canonical_idx(idx) != idx:
            return
        t = RingTuple(ring, tuple(payloads[i] for i in idx))
        if is_reducible(t) is None:
            hits += 1

    _scan_size(table, n, handler, alphabet=alphabet, firsts=firsts, budget=budget)
    return hits


def _lmax_block_task(args):
    descriptor, n, firsts = args
    ring = parse_ring_spec(descriptor)
    table = op_table(ring)
    budget = SearchBudget()
    hits = _count_irreducible_stream(ring, table, n, firsts=firsts, budget=budget)
    return hits, budget.nodes


def max_irreducible_size(
    ring: Ring,
    cap: int,
    *,
    budget_nodes: Optional[int] = None,
    budget_secs: Optional[float] = None,
    workers: int = 1,
) -> LmaxResult:
    """Largest size <= cap carrying an irreducible quiddity."""
    if not ring.finite:
        raise InfiniteRingError(f"cannot search over {ring}")
    table = op_table(ring)
    deadline = time.monotonic() + budget_secs if budget_secs is not None else None
    budget = SearchBudget(budget_nodes, deadline)
    start = time.monotonic()
    observed = None
    exhausted = 0
    partial = False
    per_size: dict[int, int] = {}
    pool_cm = get_context("fork").Pool(workers) if workers > 1 else None
    try:
        for n in range(1, cap + 1):
            if n <= 2:
                # no size-1 solutions; (0,0) is reducible by convention
                count, _ = _collect_size(table, n, budget=budget)
                hits = 0
            elif pool_cm is not None and n >= 5:
                alphabet = _irreducible_alphabet(table, n)
                tasks = [
                    (ring.describe(), n, block)
                    for block in _first_blocks(table, alphabet, workers)
                ]
                hits = 0
                nodes = 0
                for bhits, bnodes in pool_cm.imap(_lmax_block_task, tasks):
                    hits += bhits
                    nodes += bnodes
                budget.nodes += nodes
                if budget.node_cap is not None and budget.nodes > budget.node_cap:
                    raise BudgetExhausted(f"node budget exceeded ({budget.node_cap})")
                if budget.deadline is not None and time.monotonic() > budget.deadline:
                    raise BudgetExhausted("wall-clock budget exceeded")
            else:
                hits = _count_irreducible_stream(ring, table, n, budget=budget)
            per_size[n] = hits
            if hits:
                observed = n
            exhausted = n
    except BudgetExhausted:
        partial = True
    finally:
        if pool_cm is not None:
            pool_cm.close()
            pool_cm.join()
    return LmaxResult(
        ring=ring,
        cap=cap,
        observed=observed,
        exhausted_to=exhausted,
        partial=partial,
        classes_per_size=per_size,
        nodes=budget.nodes,
        wall_secs=time.monotonic() - start,
    )


_RESTRICTED_ALPHABETS = {
    "02": (0, 2),
    "pm1": (1, 3),
}


def _validate_restricted(ring: Ring, alphabet, n: int):
    if ring.key() != ("mod", 4):
        raise ValueError("restricted-alphabet counting is defined over Z/4 only")
    alpha = tuple(sorted(ring.from_int(a) for a in alphabet))
    if alpha == (0, 2):
        if n < 2 or n % 2:
            raise ValueError("alphabet {0,2} requires even size >= 2")
    elif alpha == (1, 3):
        if n < 3 or n % 3:
            raise ValueError("alphabet {1,-1} requires size divisible by 3")
    else:
        raise ValueError(f"unsupported alphabet {alphabet!r}; use {{0,2}} or {{1,-1}}")
    return alpha


def count_restricted(ring: Ring, alphabet, n: int, with_extensions: bool = False):
    """Number of size-n quiddities over Z/4 with entries confined to the
    alphabet; optionally the unique closing pair for every admissible word
    of length n-2."""
    alpha = _validate_restricted(ring, alphabet, n)
    count = 0
    for word in itertools.product(alpha, repeat=n):
        if verify(RingTuple(ring, word)).is_quiddity:
            count += 1
    if not with_extensions:
        return count
    extensions = {}
    for word in itertools.product(alpha, repeat=n - 2):
        extensions[word] = unique_extension(ring, alpha, word)
    return count, extensions


def unique_extension(ring: Ring, alphabet, word: Sequence[int]):
    """The one closing pair (x, y) in the alphabet making (x, word.., y) a
    quiddity.  Word lengths: even for {0,2}, length 1 mod 3 for {1,-1}."""
    alpha = _validate_restricted(ring, alphabet, len(word) + 2)
    w = tuple(ring.from_int(v) if isinstance(v, int) else v for v in word)
    if any(v not in alpha for v in w):
        raise ValueError(f"word {word!r} leaves the alphabet {alpha!r}")
    hits = [
        (x, y)
        for x in alpha
        for y in alpha
        if verify(RingTuple(ring, (x,) + w + (y,))).is_quiddity
    ]
    if len(hits) != 1:
        raise ValueError(f"expected exactly one closing pair for {word!r}, got {hits!r}")
    return hits[0]


def char_zero_witness(ring: Ring, n: int) -> RingTuple:
    """An irreducible quiddity of size n over a product with at least two
    characteristic-zero (bounded-integer) factors.

    The designated first such factor carries (1, n-2, 1, 2, ..., 2); every
    other factor the one-step rotation (2, 1, n-2, 1, 2, ..., 2).  Both are
    quiddities of sign -1, but no dihedral motion aligns their splits, which
    blocks any common reduction.  Size 3 falls back to the all-ones tuple.
    """
    if not isinstance(ring, ProductRing):
        raise ValueError(f"{ring} is not a product ring")
    bounded = [i for i, f in enumerate(ring.factors) if isinstance(f, BoundedIntRing)]
    if len(bounded) < 2:
        raise ValueError(f"{ring} needs at least two bounded-integer factors")
    if n < 3:
        raise ValueError(f"size must be >= 3, got {n}")
    for i in bounded:
        if ring.factors[i].bound < n:
            raise ValueError(
                f"factor {ring.factors[i]} window too small for size {n}"
            )
    if n == 3:
        return RingTuple.from_ints(ring, [1, 1, 1])
    lead = [1, n - 2, 1] + [2] * (n - 3)
    shifted = [2, 1, n - 2, 1] + [2] * (n - 4)
    i0 = bounded[0]
    entries = []
    for j in range(n):
        entries.append(
            tuple(
                f.from_int(lead[j] if i == i0 else shifted[j])
                for i, f in enumerate(ring.factors)
            )
        )
    return RingTuple(ring, entries)
