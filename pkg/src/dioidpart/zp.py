"""Additive combinatorics in Z_p and the 3-part d-partitions of Z_p.

Sets of residues are bitsets; bit ``x`` stands for the residue ``x``.  A
"half mask" over ``h = (p-1)/2`` bits encodes the symmetric set
``{±(i+1) : bit i set}``.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import BudgetExceeded, PreconditionError, TheoremViolation
from .groups import ElementSet, Partition, cyclic, iter_bits, lowest_bit
from .partitions import (
    DPartition,
    as_d_partition,
    is_d_partition,
    is_s_partition,
    restricted_growth_strings,
    _blocks_from_rgs,
)
from .schur import structure_constants

DEFAULT_SWEEP_BUDGET = 61
DEFAULT_GORDON_CAP = 11


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise PreconditionError(f"{p} is not prime")


def half_width(p: int) -> int:
    return (p - 1) // 2


# ---------------------------------------------------------------------------
# bit-level helpers


def sum_bits(p: int, a: int, b: int) -> int:
    if not a or not b:
        return 0
    full = (1 << p) - 1
    out = 0
    for x in iter_bits(a):
        out |= (b << x) | (b >> (p - x))
    return out & full


def neg_bits(p: int, a: int) -> int:
    out = a & 1
    for x in iter_bits(a >> 1):
        out |= 1 << (p - 1 - x)
    return out


def scale_bits(p: int, a: int, u: int) -> int:
    out = 0
    for x in iter_bits(a):
        out |= 1 << (u * x % p)
    return out


def symmetric_from_half(p: int, half: int) -> int:
    out = 0
    for i in iter_bits(half):
        out |= (1 << (i + 1)) | (1 << (p - 1 - i))
    return out


def transversal_from_half(p: int, choice: int) -> int:
    """Pick ``i`` (bit clear) or ``-i`` (bit set) for each ``i`` in ``1..h``."""
    out = 0
    for i in range(half_width(p)):
        out |= 1 << ((p - 1 - i) if choice >> i & 1 else (i + 1))
    return out


# ---------------------------------------------------------------------------
# additive sets


@dataclass(frozen=True)
class AdditiveSet:
    p: int
    members: int = 0

    def __post_init__(self):
        if self.members < 0 or self.members >> self.p:
            raise ValueError("residues fall outside 0..p-1")

    @classmethod
    def of(cls, p: int, items: Iterable[int]) -> AdditiveSet:
        mask = 0
        for x in items:
            mask |= 1 << (x % p)
        return cls(p, mask)

    @classmethod
    def interval(cls, p: int, lo: int, hi: int) -> AdditiveSet:
        """The cyclic interval ``[lo, hi]``."""
        return cls.of(p, range(lo, hi + 1) if lo <= hi else range(lo, hi + p + 1))

    def _check(self, other: AdditiveSet) -> None:
        if other.p != self.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: AdditiveSet) -> AdditiveSet:
        self._check(other)
        out = AdditiveSet(self.p, sum_bits(self.p, self.members, other.members))
        if self.members and other.members:
            bound = min(len(self) + len(other) - 1, self.p)
            if len(out) < bound:
                raise TheoremViolation(f"sumset of size {len(out)} below the bound {bound}")
        return out

    def __neg__(self) -> AdditiveSet:
        return AdditiveSet(self.p, neg_bits(self.p, self.members))

    def __or__(self, other: AdditiveSet) -> AdditiveSet:
        self._check(other)
        return AdditiveSet(self.p, self.members | other.members)

    def __and__(self, other: AdditiveSet) -> AdditiveSet:
        self._check(other)
        return AdditiveSet(self.p, self.members & other.members)

    def scale(self, u: int) -> AdditiveSet:
        return AdditiveSet(self.p, scale_bits(self.p, self.members, u))

    def complement(self) -> AdditiveSet:
        return AdditiveSet(self.p, ((1 << self.p) - 1) & ~self.members)

    @property
    def is_symmetric(self) -> bool:
        return neg_bits(self.p, self.members) == self.members

    def __len__(self) -> int:
        return self.members.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.members)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.p and bool(self.members >> x & 1)

    def to_list(self) -> list[int]:
        return list(iter_bits(self.members))

    def as_element_set(self) -> ElementSet:
        return ElementSet(self.p, self.members)

    def __repr__(self) -> str:
        return f"AdditiveSet({self.p}, {self.to_list()})"


def sumset(X: AdditiveSet, Y: AdditiveSet) -> AdditiveSet:
    return X + Y


class ApDescriptor(NamedTuple):
    start: int
    step: int
    length: int

    def members(self, p: int) -> AdditiveSet:
        return AdditiveSet.of(p, (self.start + j * self.step for j in range(self.length)))


def progression_steps(S: AdditiveSet) -> list[ApDescriptor]:
    """Every ``(start, step)`` description of ``S`` as a progression."""
    p, m = S.p, S.members
    n = len(S)
    if n == 0:
        return []
    out = []
    for step in range(1, p):
        for start in iter_bits(m):
            if n < p and m >> ((start - step) % p) & 1:
                continue
            x, ok = start, True
            for _ in range(n):
                if not m >> x & 1:
                    ok = False
                    break
                x = (x + step) % p
            if ok:
                out.append(ApDescriptor(start, step, n))
    return out


def detect_arithmetic_progression(S: AdditiveSet) -> ApDescriptor | None:
    """Lexicographically least ``(start, step)`` description, or None."""
    if not S.members:
        raise PreconditionError("progression test needs a non-empty set")
    found = progression_steps(S)
    return min(found) if found else None


def vosper_consistent(S: AdditiveSet, T: AdditiveSet) -> bool:
    """In the critical-pair regime, both sets must be progressions with a
    common step; outside it there is nothing to check."""
    p = S.p
    s, t = len(S), len(T)
    st = len(S + T)
    if s < 2 or t < 2 or st > p - 2 or st != s + t - 1:
        return True
    steps_s = {d.step for d in progression_steps(S)}
    steps_t = {d.step for d in progression_steps(T)}
    return bool(steps_s & steps_t)


# ---------------------------------------------------------------------------
# multiplicative subgroups and Π(A)


def multiplicative_subgroups(p: int) -> list[AdditiveSet]:
    """The subgroups of ``Z_p^*``, one per divisor of ``p - 1``, by size."""
    require_prime(p)
    out = []
    for d in range(1, p):
        if (p - 1) % d == 0:
            out.append(AdditiveSet.of(p, (x for x in range(1, p) if pow(x, d, p) == 1)))
    return out


def is_multiplicative_subgroup(A: AdditiveSet) -> bool:
    p = A.p
    if not A.members or A.members & 1 or not A.members >> 1 & 1:
        return False
    return all(a * b % p in A for a in A for b in A)


def pi_multiplicative(p: int, A: AdditiveSet) -> Partition:
    """``{0}`` together with the cosets ``A x`` of ``A`` in ``Z_p^*``."""
    require_prime(p)
    if A.p != p or not is_multiplicative_subgroup(A):
        raise PreconditionError(f"{A.to_list()} is not a multiplicative subgroup mod {p}")
    G = cyclic(p)
    remaining = ((1 << p) - 1) & ~1
    masks = [1]
    while remaining:
        coset = scale_bits(p, A.members, lowest_bit(remaining))
        masks.append(coset)
        remaining &= ~coset
    return Partition.from_masks(G, masks)


def quadratic_residues(p: int) -> AdditiveSet:
    return AdditiveSet.of(p, (x * x for x in range(1, p)))


def negation_criterion_holds(p: int) -> bool:
    """For every subgroup ``A``: ``A = -A`` iff ``-1`` in ``A`` iff ``|A|`` even;
    and the 3-part ``Π(A)`` has symmetric parts for ``p ≡ 1 (4)`` and
    swapped parts for ``p ≡ 3 (4)``."""
    for A in multiplicative_subgroups(p):
        sym = A.is_symmetric
        if not (sym == ((p - 1) in A) == (len(A) % 2 == 0 or p == 2)):
            return False
        if p > 3 and len(A) == half_width(p):
            P = pi_multiplicative(p, A)
            m1, m2 = P.masks[1], P.masks[2]
            if p % 4 == 1 and not (neg_bits(p, m1) == m1 and neg_bits(p, m2) == m2):
                return False
            if p % 4 == 3 and neg_bits(p, m1) != m2:
                return False
    return True


@dataclass
class GordonReport:
    p: int
    s_partitions: list[Partition]
    expected: list[Partition]
    candidates: int

    @property
    def match(self) -> bool:
        return [P.key() for P in self.s_partitions] == [P.key() for P in self.expected]

    @property
    def count(self) -> int:
        return len(self.s_partitions)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "count": self.count,
            "expected": len(self.expected),
            "match": self.match,
            "candidates": self.candidates,
            "s_partitions": [P.to_json() for P in self.s_partitions],
        }


def gordon_census(p: int, cap: int = DEFAULT_GORDON_CAP, pruned: bool = True) -> GordonReport:
    """Find every S-partition of ``Z_p`` by exhaustive search and compare
    with the partitions ``Π(A)``.

    Unpruned, all Bell(p) set partitions are tested.  Pruned, the search runs
    only over partitions with ``{0}`` as a part whose blocks are swapped by
    negation, since the S-partition test rejects everything else outright.
    """
    require_prime(p)
    if p > cap:
        raise BudgetExceeded(f"p={p} exceeds the set-partition cap {cap}")
    G = cyclic(p)
    found: dict[tuple[int, ...], Partition] = {}
    candidates = 0
    if pruned:
        units = [1 << x for x in range(1, p)]
        involution = [p - x - 1 for x in range(1, p)]  # unit index of -x
        for rgs in restricted_growth_strings(p - 1, involution):
            candidates += 1
            P = Partition.from_masks(G, [1] + _blocks_from_rgs(rgs, units))
            if is_s_partition(P):
                found[P.key()] = P
    else:
        units = [1 << x for x in range(p)]
        for rgs in restricted_growth_strings(p):
            candidates += 1
            P = Partition.from_masks(G, _blocks_from_rgs(rgs, units))
            if is_s_partition(P):
                found[P.key()] = P
    s_parts = [found[k] for k in sorted(found)]
    expected = sorted((pi_multiplicative(p, A) for A in multiplicative_subgroups(p)),
                      key=lambda P: P.key())
    return GordonReport(p, s_parts, expected, candidates)


# ---------------------------------------------------------------------------
# 3-part d-partitions


def _closed3(p: int, m1: int, m2: int) -> bool:
    for a, b in ((m1, m1), (m1, m2), (m2, m2)):
        s = sum_bits(p, a, b)
        x1, x2 = s & m1, s & m2
        if (x1 and x1 != m1) or (x2 and x2 != m2):
            return False
    return True


def _sweep_symmetric(p: int, lo: int, hi: int) -> list[tuple[int, int]]:
    full = (1 << p) - 1
    out = []
    for half in range(max(lo, 1), hi):
        m1 = symmetric_from_half(p, half)
        m2 = full & ~m1 & ~1
        if m2 and m1.bit_count() <= m2.bit_count() and _closed3(p, m1, m2):
            out.append((m1, m2))
    return out


def _sweep_transversal(p: int, lo: int, hi: int) -> list[tuple[int, int]]:
    full = (1 << p) - 1
    out = []
    for choice in range(lo, hi):
        # bit 0 clear keeps 1 in the first part; each pair {S, -S} once
        if choice & 1:
            continue
        m1 = transversal_from_half(p, choice)
        m2 = full & ~m1 & ~1
        if _closed3(p, m1, m2):
            out.append((m1, m2))
    return out


def _shard(args) -> list[tuple[int, int]]:
    kind, p, lo, hi = args
    return (_sweep_symmetric if kind == "sym" else _sweep_transversal)(p, lo, hi)


def _run_sweeps(p: int, workers: int) -> list[tuple[int, int]]:
    total = 1 << half_width(p)
    if workers <= 1 or total < 1 << 12:
        return _sweep_symmetric(p, 0, total) + _sweep_transversal(p, 0, total)
    chunk = max(1, total // (8 * workers))
    jobs = [(kind, p, lo, min(lo + chunk, total))
            for kind in ("sym", "trans") for lo in range(0, total, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_shard, jobs))
    return [pair for shard in results for pair in shard]


def enumerate_3part(p: int, budget: int = DEFAULT_SWEEP_BUDGET, workers: int = 1) -> list[DPartition]:
    """All 3-part d-partitions of ``Z_p``, sorted by part masks.

    The identity part of a 3-part d-partition of ``Z_p`` is ``{0}``, and
    negation either fixes both other parts or swaps them.  The sweep covers
    both shapes (symmetric first part from a half mask, or a transversal of
    the pairs ``{i, -i}``), filters by closure, then runs the full axiom
    check on every survivor.
    """
    require_prime(p)
    if p > budget:
        raise BudgetExceeded(f"p={p} exceeds the sweep budget {budget}")
    if p == 2:
        return []
    G = cyclic(p)
    found = {}
    for m1, m2 in _run_sweeps(p, workers):
        dp = as_d_partition(Partition.from_masks(G, [1, m1, m2]))
        found[dp.key()] = dp
    return [found[k] for k in sorted(found)]


def three_part_partitions_brute_force(p: int, cap: int = 13) -> list[DPartition]:
    """Every 3-block set partition of ``Z_p`` passing the generic axiom check.

    Shares nothing with :func:`enumerate_3part` beyond the axiom code, so it
    serves as its oracle.
    """
    require_prime(p)
    if p > cap:
        raise BudgetExceeded(f"p={p} exceeds the brute-force cap {cap}")
    G = cyclic(p)
    units = [1 << x for x in range(p)]
    out = []
    for rgs in restricted_growth_strings(p, exact_blocks=3):
        P = Partition.from_masks(G, _blocks_from_rgs(rgs, units))
        if is_d_partition(P):
            out.append(as_d_partition(P))
    return sorted(out, key=lambda d: d.key())


class Tag(str, enum.Enum):
    T1_singleton_p3 = "T1"
    T2_p5 = "T2"
    T3_sym_complete_sumfree = "T3"
    T4_sym_full_sumset = "T4"
    T5_antisym = "T5"


@dataclass(frozen=True)
class ThreePartClass:
    tag: Tag
    pi1: AdditiveSet
    pi2: AdditiveSet
    case: str  # "a1", "a2", "b" for p > 5, "" otherwise

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "pi1": self.pi1.to_list(), "pi2": self.pi2.to_list(),
                "case": self.case}


def ordered_parts(dp: DPartition) -> tuple[int, int]:
    """``(pi1, pi2)`` masks with ``|pi1| <= |pi2|``; ties keep canonical order."""
    p = dp.group.order
    if dp.group.family != "cyclic" or not is_prime(p) or len(dp) != 3:
        raise PreconditionError("expected a 3-part d-partition of Z_p")
    if dp.masks[dp.identity_part] != 1:
        raise PreconditionError("identity part must be {0}")
    a, b = (m for i, m in enumerate(dp.masks) if i != dp.identity_part)
    if b.bit_count() < a.bit_count():
        a, b = b, a
    return a, b


# Expected tensor entries d^k_{ij} for (i, j, k) over the labels 0, 1, 2.
_CASE_A_ONES = [(1, 1, 0), (1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 2, 0), (2, 2, 1), (2, 2, 2)]
_CASE_A_ZEROS = [(1, 2, 0)]
_CASE_B_ONES = [(1, 1, 1), (1, 1, 2), (1, 2, 0), (1, 2, 1), (1, 2, 2), (2, 2, 1), (2, 2, 2)]
_CASE_B_ZEROS = [(1, 1, 0), (2, 2, 0)]


def tensor_in_labels(dp: DPartition) -> list[list[list[int]]]:
    """Structure constants re-indexed so that 0, 1, 2 are ``{0}``, pi1, pi2."""
    a, b = ordered_parts(dp)
    sc = structure_constants(dp)
    label = [dp.identity_part, dp.masks.index(a), dp.masks.index(b)]
    return [[[sc.tensor[label[i]][label[j]][label[k]] for k in range(3)]
             for j in range(3)] for i in range(3)]


def tensor_pattern(dp: DPartition) -> str | None:
    """``"a"`` or ``"b"`` when the tensor matches exactly one of the two
    fixed patterns, else None."""
    t = tensor_in_labels(dp)

    def matches(ones, zeros):
        return all(t[i][j][k] == 1 for i, j, k in ones) and all(t[i][j][k] == 0 for i, j, k in zeros)

    hits = [name for name, ones, zeros in (("a", _CASE_A_ONES, _CASE_A_ZEROS),
                                           ("b", _CASE_B_ONES, _CASE_B_ZEROS))
            if matches(ones, zeros)]
    return hits[0] if len(hits) == 1 else None


def classify_3part(dp: DPartition) -> ThreePartClass:
    """Assign the unique type among T1..T5; a 3-part d-partition matching
    none or several raises :class:`TheoremViolation`."""
    p = dp.group.order
    a, b = ordered_parts(dp)
    full = (1 << p) - 1
    A, B = AdditiveSet(p, a), AdditiveSet(p, b)
    if p == 3:
        clauses = {Tag.T1_singleton_p3: a.bit_count() == b.bit_count() == 1}
        case = ""
    elif p == 5:
        clauses = {Tag.T2_p5: {a, b} == {0b10010, 0b01100}}
        case = ""
    else:
        aa = sum_bits(p, a, a)
        sym = neg_bits(p, a) == a
        anti = neg_bits(p, a) == b
        b_is_half_ap = b.bit_count() == half_width(p) and detect_arithmetic_progression(B) is not None
        clauses = {
            Tag.T3_sym_complete_sumfree: sym and aa == (1 | b),
            Tag.T4_sym_full_sumset: sym and aa == full and not b_is_half_ap,
            Tag.T5_antisym: anti and aa == (a | b),
        }
        case = "b" if anti else ("a1" if aa == (1 | b) else "a2")
    hits = [tag for tag, ok in clauses.items() if ok]
    if len(hits) != 1:
        raise TheoremViolation(f"{dp} matches {len(hits)} classification clauses")
    if p > 5:
        pattern = tensor_pattern(dp)
        if pattern is None or pattern != case[0]:
            raise TheoremViolation(f"{dp}: tensor pattern {pattern} disagrees with case {case}")
        d111 = tensor_in_labels(dp)[1][1][1]
        if case == "a1" and d111 != 0 or case == "a2" and d111 != 1:
            raise TheoremViolation(f"{dp}: d^1_11 inconsistent with case {case}")
    return ThreePartClass(hits[0], A, B, case)


# ---------------------------------------------------------------------------
# avoiding sets


def is_avoiding(S: AdditiveSet) -> bool:
    """Symmetric, with positive representatives ``i_1 < ... < i_r`` in
    ``1..(p-1)/2`` spaced at least two apart, and ``p - i_r >= i_r + 2``."""
    p, m = S.p, S.members
    if not m or m & 1 or len(S) > half_width(p) or not S.is_symmetric:
        return False
    reps = [x for x in iter_bits(m) if x <= half_width(p)]
    for lo, hi in zip(reps, reps[1:]):
        if hi < lo + 2:
            return False
    return p - reps[-1] >= reps[-1] + 2


def count_avoiding(p: int, s: int) -> int:
    h = half_width(p)
    if s <= 0 or s % 2 or s > h:
        raise PreconditionError(f"avoiding sets have positive even size at most {h}, got {s}")
    return math.comb(h - s // 2, s // 2)


def symmetric_subsets(p: int, max_size: int | None = None) -> Iterator[AdditiveSet]:
    """Non-empty symmetric subsets of ``Z_p^*`` of size at most ``max_size``."""
    limit = half_width(p) if max_size is None else max_size
    for half in range(1, 1 << half_width(p)):
        if 2 * half.bit_count() <= limit:
            yield AdditiveSet(p, symmetric_from_half(p, half))


def enumerate_avoiding(p: int, s: int | None = None) -> list[AdditiveSet]:
    return [S for S in symmetric_subsets(p) if (s is None or len(S) == s) and is_avoiding(S)]


@dataclass
class CharacterizationReport:
    p: int
    checked: int = 0
    counterexamples: list[list[int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def avoiding_characterization_check(p: int, budget: int = 31) -> CharacterizationReport:
    """For every non-empty symmetric ``S`` in ``Z_p^*`` with ``|S| <= (p-1)/2``:
    some unit multiple of ``S`` is avoiding exactly when ``S + S`` misses a
    residue."""
    require_prime(p)
    if p > budget:
        raise BudgetExceeded(f"p={p} exceeds the sweep budget {budget}")
    full = (1 << p) - 1
    report = CharacterizationReport(p)
    for S in symmetric_subsets(p):
        report.checked += 1
        avoiding_up_to_unit = any(is_avoiding(S.scale(u)) for u in range(1, p))
        not_full = sum_bits(p, S.members, S.members) != full
        if avoiding_up_to_unit != not_full:
            report.counterexamples.append(S.to_list())
    return report


def automorphism_normal_form(S: AdditiveSet) -> int:
    """Least bitset among the unit multiples of ``S``."""
    return min(scale_bits(S.p, S.members, u) for u in range(1, S.p))


# ---------------------------------------------------------------------------
# the three equations


def _budget(p: int, budget: int) -> None:
    require_prime(p)
    if p > budget:
        raise BudgetExceeded(f"p={p} exceeds the sweep budget {budget}")


def solve_eq1(p: int, budget: int = DEFAULT_SWEEP_BUDGET) -> list[AdditiveSet]:
    """Symmetric ``S`` in ``Z_p^*``, ``|S| <= (p-1)/2``, with ``S + S`` equal
    to the complement of ``S`` (sum-free and complete)."""
    _budget(p, budget)
    full = (1 << p) - 1
    out = []
    for S in symmetric_subsets(p):
        if sum_bits(p, S.members, S.members) == full & ~S.members:
            out.append(S)
    return sorted(out, key=lambda S: S.members)


def extremal_sum_free(p: int) -> AdditiveSet | None:
    """The largest symmetric complete sum-free set in its standard form:
    ``[k+1, 2k+1]`` for ``p = 3k+2``; ``{k} ∪ [k+2, 2k-1] ∪ {2k+1}`` for
    ``p = 3k+1`` with ``k >= 4``; None otherwise."""
    k, r = divmod(p, 3)
    if r == 2:
        return AdditiveSet.interval(p, k + 1, 2 * k + 1)
    if r == 1 and k >= 4:
        return AdditiveSet.of(p, [k, *range(k + 2, 2 * k), 2 * k + 1])
    return None


def solve_eq2(p: int, budget: int = DEFAULT_SWEEP_BUDGET) -> list[AdditiveSet]:
    """Symmetric ``S`` in ``Z_p^*``, ``|S| <= (p-1)/2``, with ``S + S = Z_p``,
    excluding those whose complement in ``Z_p^*`` is a progression of size
    ``(p-1)/2``."""
    _budget(p, budget)
    full = (1 << p) - 1
    out = []
    for S in symmetric_subsets(p):
        if sum_bits(p, S.members, S.members) != full:
            continue
        rest = AdditiveSet(p, full & ~S.members & ~1)
        if len(rest) == half_width(p) and detect_arithmetic_progression(rest) is not None:
            continue
        out.append(S)
    return sorted(out, key=lambda S: S.members)


def eq2_excluded(p: int) -> list[AdditiveSet]:
    """Symmetric ``S`` with ``S + S = Z_p`` dropped only by the progression rule."""
    full = (1 << p) - 1
    out = []
    for S in symmetric_subsets(p):
        rest = AdditiveSet(p, full & ~S.members & ~1)
        if (sum_bits(p, S.members, S.members) == full and len(rest) == half_width(p)
                and detect_arithmetic_progression(rest) is not None):
            out.append(S)
    return out


def eq2_partition_count(p: int, budget: int = DEFAULT_SWEEP_BUDGET) -> int:
    """Distinct partitions ``{{0}, S, rest}`` arising from :func:`solve_eq2`."""
    full = (1 << p) - 1
    keys = {frozenset((S.members, full & ~S.members & ~1)) for S in solve_eq2(p, budget)}
    return len(keys)


def eq3_formula(p: int) -> int:
    h = half_width(p)
    return 2 ** (h - 1) - h


class Eq3Result(NamedTuple):
    solutions: list[AdditiveSet]
    d_partition_count: int


def solve_eq3(p: int, budget: int = DEFAULT_SWEEP_BUDGET) -> Eq3Result:
    """Transversals ``S`` of the pairs ``{x, -x}`` with ``S + S = Z_p - {0}``.

    Each is also checked against the description "not a progression"; the
    d-partition count pairs ``S`` with ``-S``.
    """
    _budget(p, budget)
    nonzero = ((1 << p) - 1) & ~1
    out = []
    for choice in range(1 << half_width(p)):
        S = AdditiveSet(p, transversal_from_half(p, choice))
        solves = sum_bits(p, S.members, S.members) == nonzero
        if solves == (detect_arithmetic_progression(S) is not None):
            raise TheoremViolation(f"{S.to_list()}: sumset test and progression test disagree")
        if solves:
            out.append(S)
    out.sort(key=lambda S: S.members)
    if len(out) % 2:
        raise TheoremViolation("solutions do not pair up as S, -S")
    return Eq3Result(out, len(out) // 2)


# ---------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    p: int
    counts: dict[str, int]
    classes: list[ThreePartClass]
    checks: dict[str, bool]
    eq3_enumerated: int | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self, full: bool = False) -> dict:
        out: dict = {tag: n for tag, n in sorted(self.counts.items()) if n}
        if self.eq3_enumerated is not None:
            out["eq3_formula"] = eq3_formula(self.p)
            out["eq3_enumerated"] = self.eq3_enumerated
            out["match"] = self.eq3_enumerated == eq3_formula(self.p)
        out["checks"] = dict(sorted(self.checks.items()))
        if full:
            out["partitions"] = [c.to_json() for c in self.classes]
        return out


def classification_census(p: int, budget: int = DEFAULT_SWEEP_BUDGET, workers: int = 1) -> CensusReport:
    parts = enumerate_3part(p, budget, workers)
    classes = [classify_3part(dp) for dp in parts]
    counts = {t.value: 0 for t in Tag}
    for c in classes:
        counts[c.tag.value] += 1
    checks: dict[str, bool] = {}
    eq3_count = None
    if p > 5:
        checks["T3_equals_eq1"] = counts["T3"] == len(solve_eq1(p, budget))
        checks["T4_equals_eq2"] = counts["T4"] == eq2_partition_count(p, budget)
        eq3_count = solve_eq3(p, budget).d_partition_count
        checks["T5_equals_eq3"] = counts["T5"] == eq3_count
        checks["eq3_formula"] = eq3_count == eq3_formula(p)
        checks["tensor_patterns"] = all(tensor_pattern(dp) is not None for dp in parts)
    type3 = [dp for dp, c in zip(parts, classes) if c.tag is Tag.T3_sym_complete_sumfree]
    if p >= 11:
        checks["type3_exists"] = bool(type3)
    checks["type3_not_s_partition"] = not any(is_s_partition(dp.base) for dp in type3)
    if p <= 7:
        checks["all_s_partitions"] = all(is_s_partition(dp.base) for dp in parts)
    for A in multiplicative_subgroups(p):
        P = pi_multiplicative(p, A)
        if len(P) != 3:
            continue
        tag = classify_3part(as_d_partition(P)).tag
        want = {3: Tag.T1_singleton_p3, 5: Tag.T2_p5}.get(
            p, Tag.T4_sym_full_sumset if p % 4 == 1 else Tag.T5_antisym)
        checks["s_partition_type"] = tag is want
    return CensusReport(p, counts, classes, checks, eq3_count)
