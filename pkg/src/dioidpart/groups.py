"""Finite groups as Cayley tables, bitset element sets, and the set algebra
(products, inverses, cosets, quotients, automorphisms) built on top of them.

Elements are always the integers ``0..order-1``.  Subsets of a group are
stored as Python ints used as bitsets, wrapped in :class:`ElementSet` at the
public boundary.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import GroupError, NotASubgroup, NotNormal, PartitionError

DEFAULT_ORDER_CAP = 64
MAX_SYMMETRIC_DEGREE = 6


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# ---------------------------------------------------------------------------
# element sets


@dataclass(frozen=True)
class ElementSet:
    """An immutable subset of ``{0, ..., universe_order - 1}``."""

    universe_order: int
    members: int = 0

    def __post_init__(self):
        if self.universe_order < 1:
            raise ValueError("universe_order must be positive")
        if self.members < 0 or self.members >> self.universe_order:
            raise ValueError("members fall outside the universe")

    @classmethod
    def of(cls, universe_order: int, items: Iterable[int] = ()) -> ElementSet:
        mask = 0
        for i in items:
            if not 0 <= i < universe_order:
                raise ValueError(f"element {i} outside 0..{universe_order - 1}")
            mask |= 1 << i
        return cls(universe_order, mask)

    @classmethod
    def full(cls, universe_order: int) -> ElementSet:
        return cls(universe_order, (1 << universe_order) - 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.members)

    def __len__(self) -> int:
        return self.members.bit_count()

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.universe_order and bool(self.members >> x & 1)

    def _same_universe(self, other: ElementSet) -> None:
        if other.universe_order != self.universe_order:
            raise ValueError(
                f"universe mismatch: {self.universe_order} vs {other.universe_order}"
            )

    def __or__(self, other: ElementSet) -> ElementSet:
        self._same_universe(other)
        return ElementSet(self.universe_order, self.members | other.members)

    def __and__(self, other: ElementSet) -> ElementSet:
        self._same_universe(other)
        return ElementSet(self.universe_order, self.members & other.members)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._same_universe(other)
        return ElementSet(self.universe_order, self.members & ~other.members)

    def issubset(self, other: ElementSet) -> bool:
        self._same_universe(other)
        return not self.members & ~other.members

    def isdisjoint(self, other: ElementSet) -> bool:
        self._same_universe(other)
        return not self.members & other.members

    def min(self) -> int:
        if not self.members:
            raise ValueError("min() of an empty set")
        return lowest_bit(self.members)

    def to_list(self) -> list[int]:
        return list(iter_bits(self.members))

    def __repr__(self) -> str:
        return f"ElementSet({self.universe_order}, {self.to_list()})"


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group given by its multiplication table.

    ``mul[x][y]`` is the index of ``x*y``.  ``family``/``degree`` record how the
    group was built (``"cyclic"``, ``"dihedral"``, ``"symmetric"`` or
    ``"cayley"``) and drive serialization and the cyclic fast path.
    """

    order: int
    mul: tuple[tuple[int, ...], ...] = field(repr=False)
    identity: int
    inv: tuple[int, ...] = field(repr=False)
    family: str = "cayley"
    degree: int | None = None
    label: str | None = None

    @property
    def family_tag(self) -> str:
        if self.label:
            return self.label
        if self.degree is None:
            return self.family
        return f"{self.family} {self.degree}"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.identity == other.identity and self.mul == other.mul

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self.mul)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def is_cyclic_residues(self) -> bool:
        return self.family == "cyclic"

    @property
    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[x][y] == m[y][x] for x in range(self.order) for y in range(x))

    def elements(self) -> range:
        return range(self.order)

    def full(self) -> ElementSet:
        return ElementSet(self.order, self.full_mask)

    def set(self, items: Iterable[int]) -> ElementSet:
        return ElementSet.of(self.order, items)

    # -- bitset kernels --------------------------------------------------

    @cached_property
    def _left_chunks(self) -> list[list[list[int]]]:
        # chunks[x][c][v] = x * (set whose bits are v placed at 8c..8c+7)
        n = self.order
        nchunks = (n + 7) // 8
        out = []
        for x in range(n):
            row = self.mul[x]
            per_chunk = []
            for c in range(nchunks):
                table = [0] * 256
                for v in range(1, 256):
                    low = v & -v
                    y = 8 * c + low.bit_length() - 1
                    table[v] = table[v ^ low] | ((1 << row[y]) if y < n else 0)
                per_chunk.append(table)
            out.append(per_chunk)
        return out

    def product_bits(self, a: int, b: int) -> int:
        """Setwise product of two bitsets: ``{x*y | x in a, y in b}``."""
        if not a or not b:
            return 0
        n = self.order
        if self.family == "cyclic":
            out = 0
            for x in iter_bits(a):
                out |= (b << x) | (b >> (n - x))
            return out & self.full_mask
        if n > DEFAULT_ORDER_CAP:
            out = 0
            for x in iter_bits(a):
                row = self.mul[x]
                for y in iter_bits(b):
                    out |= 1 << row[y]
            return out
        chunks = self._left_chunks
        pieces = []
        c = 0
        while b:
            v = b & 255
            if v:
                pieces.append((c, v))
            b >>= 8
            c += 1
        out = 0
        for x in iter_bits(a):
            cx = chunks[x]
            for c, v in pieces:
                out |= cx[c][v]
        return out

    def inverse_bits(self, a: int) -> int:
        inv = self.inv
        out = 0
        for x in iter_bits(a):
            out |= 1 << inv[x]
        return out

    def conjugate(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power_closure(self, gens: int) -> int:
        """Bitset of the subgroup generated by the bitset ``gens``."""
        sub = gens | (1 << self.identity)
        while True:
            nxt = sub | self.product_bits(sub, sub)
            if nxt == sub:
                return sub
            sub = nxt

    def descriptor(self) -> dict:
        if self.family in ("cyclic", "dihedral", "symmetric"):
            return {"type": self.family, "n": self.degree}
        return {"type": "cayley", "table": [list(r) for r in self.mul]}


def _inverse_table(mul, identity: int) -> tuple[int, ...]:
    n = len(mul)
    inv = [-1] * n
    for x in range(n):
        for y in range(n):
            if mul[x][y] == identity and mul[y][x] == identity:
                inv[x] = y
                break
    return tuple(inv)


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    """Z_n with element ``k`` the residue ``k`` and addition mod ``n``."""
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return FiniteGroup(n, mul, 0, inv, family="cyclic", degree=n)


@lru_cache(maxsize=None)
def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order ``2n``.

    Index ``f*n + k`` stands for ``s^f r^k``.
    """
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")

    def mult(a, b):
        f1, k1 = divmod(a, n)
        f2, k2 = divmod(b, n)
        if f2 == 0:
            return f1 * n + (k1 + k2) % n
        return (f1 ^ 1) * n + (k2 - k1) % n

    size = 2 * n
    mul = tuple(tuple(mult(a, b) for b in range(size)) for a in range(size))
    return FiniteGroup(size, mul, 0, _inverse_table(mul, 0), family="dihedral", degree=n)


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    """S_n on ``range(n)``; elements ranked lexicographically as permutation
    words, so index 0 is the identity.  ``mul[a][b]`` is ``a o b`` (apply ``b``
    first)."""
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise GroupError(f"symmetric group degree must be in 1..{MAX_SYMMETRIC_DEGREE}")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(
        tuple(index[tuple(pa[pb[i]] for i in range(n))] for pb in perms) for pa in perms
    )
    return FiniteGroup(len(perms), mul, 0, _inverse_table(mul, 0), family="symmetric", degree=n)


def symmetric_element(n: int, word: Sequence[int]) -> int:
    """Index of the permutation ``word`` (``i -> word[i]``) in ``symmetric(n)``."""
    perms = sorted(itertools.permutations(range(n)))
    return perms.index(tuple(word))


def from_table(table: Sequence[Sequence[int]], *, cap: int = DEFAULT_ORDER_CAP,
               label: str | None = None) -> FiniteGroup:
    """Validate an explicit Cayley table and wrap it as a group."""
    n = len(table)
    if n == 0:
        raise GroupError("empty multiplication table")
    if n > cap:
        raise GroupError(f"table of order {n} exceeds the order cap {cap}")
    rows = []
    for r, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"row {r} has length {len(row)}, expected {n}")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise GroupError(f"row {r} contains invalid entry {v!r}")
        rows.append(tuple(row))
    mul = tuple(rows)
    identity = next(
        (e for e in range(n)
         if all(mul[e][x] == x and mul[x][e] == x for x in range(n))),
        None,
    )
    if identity is None:
        raise GroupError("table has no two-sided identity element")
    inv = _inverse_table(mul, identity)
    for x, y in enumerate(inv):
        if y < 0:
            raise GroupError(f"element {x} has no inverse")
    for a in range(n):
        ma = mul[a]
        for b in range(n):
            ab = ma[b]
            mab, mb = mul[ab], mul[b]
            for c in range(n):
                if mab[c] != ma[mb[c]]:
                    raise GroupError(f"table is not associative at ({a}, {b}, {c})")
    return FiniteGroup(n, mul, identity, inv, family="cayley", label=label)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """``g x h`` with pair ``(a, b)`` at index ``a*|h| + b``."""
    m = h.order
    n = g.order * m
    mul = tuple(
        tuple(g.mul[x // m][y // m] * m + h.mul[x % m][y % m] for y in range(n))
        for x in range(n)
    )
    identity = g.identity * m + h.identity
    inv = tuple(g.inv[x // m] * m + h.inv[x % m] for x in range(n))
    return FiniteGroup(n, mul, identity, inv, family="cayley",
                       label=f"{g.family_tag} x {h.family_tag}")


def build_group(desc: dict, *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from a JSON-style descriptor.

    >>> build_group({"type": "cyclic", "n": 6}).inv[2]
    4
    """
    if not isinstance(desc, dict) or "type" not in desc:
        raise GroupError(f"group descriptor must be an object with a 'type': {desc!r}")
    kind = desc["type"]
    if kind == "cayley":
        if "table" not in desc:
            raise GroupError("cayley descriptor needs a 'table'")
        return from_table(desc["table"], cap=cap)
    builders = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
    if kind not in builders:
        raise GroupError(f"unknown group type {kind!r}")
    n = desc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise GroupError(f"{kind} descriptor needs an integer 'n'")
    return builders[kind](n)


# ---------------------------------------------------------------------------
# set algebra


def _check_universe(G: FiniteGroup, *sets: ElementSet) -> None:
    for X in sets:
        if X.universe_order != G.order:
            raise ValueError(
                f"universe mismatch: set over {X.universe_order} elements, group of order {G.order}"
            )


def setwise_product(G: FiniteGroup, X: ElementSet, Y: ElementSet) -> ElementSet:
    _check_universe(G, X, Y)
    return ElementSet(G.order, G.product_bits(X.members, Y.members))


def set_inverse(G: FiniteGroup, X: ElementSet) -> ElementSet:
    _check_universe(G, X)
    return ElementSet(G.order, G.inverse_bits(X.members))


def is_subgroup(G: FiniteGroup, A: ElementSet) -> bool:
    """Explicit check: contains the identity, closed under inverse and product."""
    _check_universe(G, A)
    m = A.members
    if not m >> G.identity & 1:
        return False
    if G.inverse_bits(m) != m:
        return False
    return G.product_bits(m, m) == m


def require_subgroup(G: FiniteGroup, A: ElementSet, name: str = "A") -> None:
    if not is_subgroup(G, A):
        raise NotASubgroup(f"{name} = {A.to_list()} is not a subgroup of {G.family_tag}")


def is_normal(G: FiniteGroup, N: ElementSet) -> bool:
    if not is_subgroup(G, N):
        return False
    m = N.members
    for g in range(G.order):
        for x in iter_bits(m):
            if not m >> G.conjugate(g, x) & 1:
                return False
    return True


def subgroups(G: FiniteGroup) -> list[ElementSet]:
    """All subgroups, sorted by (size, bitset)."""
    cyclic_subs = {G.power_closure(1 << x) for x in range(G.order)}
    found = set(cyclic_subs)
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic_subs:
                if C & ~H:
                    J = G.power_closure(H | C)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return [ElementSet(G.order, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


def double_coset_bits(G: FiniteGroup, a: int, x: int) -> int:
    return G.product_bits(G.product_bits(a, 1 << x), a)


def conjugacy_class_bits(G: FiniteGroup, x: int) -> int:
    return bits_of(G.conjugate(g, x) for g in range(G.order))


# ---------------------------------------------------------------------------
# raw partitions


@dataclass(frozen=True)
class Partition:
    """A set partition of a group, canonically ordered.

    The part containing the identity comes first, the rest follow by minimum
    element.  Build through :meth:`from_masks` or
    :func:`dioidpart.partitions.validate_partition`.
    """

    group: FiniteGroup
    parts: tuple[ElementSet, ...]

    @classmethod
    def from_masks(cls, G: FiniteGroup, masks: Iterable[int]) -> Partition:
        """Canonicalize trusted masks (disjoint, non-empty, covering)."""
        e = G.identity
        ordered = sorted(masks, key=lambda m: (not m >> e & 1, lowest_bit(m)))
        return cls(G, tuple(ElementSet(G.order, m) for m in ordered))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(p.members for p in self.parts)

    @cached_property
    def part_of(self) -> tuple[int, ...]:
        lookup = [0] * self.group.order
        for i, m in enumerate(self.masks):
            for x in iter_bits(m):
                lookup[x] = i
        return tuple(lookup)

    @cached_property
    def index_of_mask(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.masks)}

    def __len__(self) -> int:
        return len(self.parts)

    def key(self) -> tuple[int, ...]:
        return self.masks

    def to_json(self) -> list[list[int]]:
        return [p.to_list() for p in self.parts]

    def __repr__(self) -> str:
        return f"Partition({self.group.family_tag}, {self.to_json()})"


def partition_from_blocks(G: FiniteGroup, blocks: Iterable[Iterable[int]]) -> Partition:
    masks = [bits_of(b) for b in blocks]
    total = 0
    for m in masks:
        if not m or total & m:
            raise PartitionError("blocks are empty or overlapping")
        total |= m
    if total != G.full_mask:
        raise PartitionError("blocks do not cover the group")
    return Partition.from_masks(G, masks)


def singleton_partition(G: FiniteGroup) -> Partition:
    return Partition.from_masks(G, (1 << x for x in range(G.order)))


def whole_partition(G: FiniteGroup) -> Partition:
    return Partition.from_masks(G, [G.full_mask])


def double_coset_partition(G: FiniteGroup, A: ElementSet) -> Partition:
    """``{AxA | x in G}``; the singleton partition when ``A`` is trivial."""
    require_subgroup(G, A)
    a = A.members
    remaining = G.full_mask
    masks = []
    while remaining:
        d = double_coset_bits(G, a, lowest_bit(remaining))
        masks.append(d)
        remaining &= ~d
    return Partition.from_masks(G, masks)


def conjugacy_partition(G: FiniteGroup) -> Partition:
    remaining = G.full_mask
    masks = []
    while remaining:
        c = conjugacy_class_bits(G, lowest_bit(remaining))
        masks.append(c)
        remaining &= ~c
    return Partition.from_masks(G, masks)


# ---------------------------------------------------------------------------
# subgroup views and quotients


@dataclass(frozen=True, eq=False)
class SubgroupView:
    """A subgroup re-indexed as a standalone group.

    Standalone element ``i`` is ``embed[i]`` in the parent, with ``embed``
    increasing.
    """

    parent: FiniteGroup
    subset: ElementSet
    group: FiniteGroup
    embed: tuple[int, ...]

    @cached_property
    def _position(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.embed)}

    def lift_bits(self, mask: int) -> int:
        return bits_of(self.embed[i] for i in iter_bits(mask))

    def restrict_bits(self, mask: int) -> int:
        if mask & ~self.subset.members:
            raise ValueError("set is not contained in the subgroup")
        pos = self._position
        return bits_of(pos[x] for x in iter_bits(mask))

    def lift(self, X: ElementSet) -> ElementSet:
        return ElementSet(self.parent.order, self.lift_bits(X.members))

    def restrict(self, X: ElementSet) -> ElementSet:
        return ElementSet(self.group.order, self.restrict_bits(X.members))


def subgroup_view(G: FiniteGroup, A: ElementSet) -> SubgroupView:
    require_subgroup(G, A)
    embed = tuple(iter_bits(A.members))
    pos = {x: i for i, x in enumerate(embed)}
    mul = tuple(tuple(pos[G.mul[x][y]] for y in embed) for x in embed)
    inv = tuple(pos[G.inv[x]] for x in embed)
    identity = pos[G.identity]
    k = len(embed)
    if G.family == "cyclic" and mul == cyclic(k).mul:
        sub = cyclic(k)
    else:
        sub = FiniteGroup(k, mul, identity, inv, family="cayley",
                          label=f"subgroup of {G.family_tag}")
    return SubgroupView(G, A, sub, embed)


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Canonical projection ``source -> source/normal_subgroup``.

    Cosets are indexed in order of their minimal representative.
    """

    source: FiniteGroup
    target: FiniteGroup
    proj: tuple[int, ...]
    normal_subgroup: ElementSet

    def image(self, X: ElementSet) -> ElementSet:
        _check_universe(self.source, X)
        return ElementSet(self.target.order, bits_of(self.proj[x] for x in X))

    def preimage(self, Xbar: ElementSet) -> ElementSet:
        _check_universe(self.target, Xbar)
        m = Xbar.members
        return ElementSet(self.source.order,
                          bits_of(x for x, t in enumerate(self.proj) if m >> t & 1))


def quotient_group(G: FiniteGroup, N: ElementSet) -> QuotientMap:
    require_subgroup(G, N, "N")
    if not is_normal(G, N):
        raise NotNormal(f"N = {N.to_list()} is not normal in {G.family_tag}")
    remaining = G.full_mask
    cosets = []
    while remaining:
        c = G.product_bits(1 << lowest_bit(remaining), N.members)
        cosets.append(c)
        remaining &= ~c
    proj = [0] * G.order
    reps = []
    for t, c in enumerate(cosets):
        reps.append(lowest_bit(c))
        for x in iter_bits(c):
            proj[x] = t
    k = len(cosets)
    mul = tuple(tuple(proj[G.mul[reps[a]][reps[b]]] for b in range(k)) for a in range(k))
    identity = proj[G.identity]
    if G.family == "cyclic" and mul == cyclic(k).mul:
        target = cyclic(k)
    else:
        target = FiniteGroup(k, mul, identity, _inverse_table(mul, identity),
                             family="cayley", label=f"quotient of {G.family_tag}")
    return QuotientMap(G, target, tuple(proj), N)


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class Automorphism:
    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def image_bits(self, mask: int) -> int:
        perm = self.perm
        return bits_of(perm[x] for x in iter_bits(mask))

    def image(self, X: ElementSet) -> ElementSet:
        return ElementSet(X.universe_order, self.image_bits(X.members))

    def compose(self, other: Automorphism) -> Automorphism:
        """``self o other``."""
        return Automorphism(tuple(self.perm[y] for y in other.perm))

    def inverse(self) -> Automorphism:
        out = [0] * len(self.perm)
        for x, y in enumerate(self.perm):
            out[y] = x
        return Automorphism(tuple(out))

    def is_automorphism_of(self, G: FiniteGroup) -> bool:
        perm = self.perm
        if len(perm) != G.order or sorted(perm) != list(range(G.order)):
            return False
        if perm[G.identity] != G.identity:
            return False
        mul = G.mul
        return all(
            perm[mul[x][y]] == mul[perm[x]][perm[y]]
            for x in range(G.order) for y in range(G.order)
        )


def multiplication_automorphism(n: int, a: int) -> Automorphism:
    if gcd(a, n) != 1:
        raise GroupError(f"{a} is not a unit modulo {n}")
    return Automorphism(tuple(a * x % n for x in range(n)))


def units_automorphisms(n: int) -> list[Automorphism]:
    """``x -> a*x mod n`` for every unit ``a``, in increasing ``a``."""
    if n < 1:
        raise GroupError("n must be positive")
    if n == 1:
        return [Automorphism((0,))]
    return [multiplication_automorphism(n, a) for a in range(1, n) if gcd(a, n) == 1]


def inner_automorphism(G: FiniteGroup, g: int) -> Automorphism:
    """``x -> g^-1 x g``."""
    return Automorphism(tuple(G.conjugate(G.inv[g], x) for x in range(G.order)))
