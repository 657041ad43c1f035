"""Partition validation, the d-partition axiom suite, the S-partition
counting test and exhaustive enumeration of d-partitions of small groups."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    AxiomError,
    BudgetExceeded,
    NotSPartition,
    PartitionError,
    PreconditionError,
    TheoremViolation,
)
from .groups import (
    ElementSet,
    FiniteGroup,
    Partition,
    double_coset_bits,
    is_subgroup,
    iter_bits,
    lowest_bit,
    subgroups,
)

DEFAULT_ENUMERATION_CAP = 12


def validate_partition(G: FiniteGroup, raw_parts: Iterable[ElementSet]) -> Partition:
    """Check that ``raw_parts`` partition ``G`` and return it canonically ordered."""
    seen = 0
    masks = []
    for idx, part in enumerate(raw_parts):
        if part.universe_order != G.order:
            raise PartitionError(
                f"part {idx} lives over {part.universe_order} elements, group has order {G.order}"
            )
        if not part.members:
            raise PartitionError(f"part {idx} is empty")
        clash = seen & part.members
        if clash:
            raise PartitionError(f"parts overlap at element {lowest_bit(clash)}")
        seen |= part.members
        masks.append(part.members)
    missing = G.full_mask & ~seen
    if missing:
        listed = ",".join(str(x) for x in iter_bits(missing))
        raise PartitionError(f"elements {listed} are not covered")
    return Partition.from_masks(G, masks)


def partition_from_lists(G: FiniteGroup, parts: Sequence[Sequence[int]]) -> Partition:
    return validate_partition(G, [ElementSet.of(G.order, p) for p in parts])


# ---------------------------------------------------------------------------
# the three axioms


class ClosureCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int, int] | None  # (i, j, straddled part k)


class InverseCheck(NamedTuple):
    ok: bool
    pairing: tuple[int, ...] | None
    witness: int | None  # first part whose inverse is not a part


def _straddled(prod: int, masks: Sequence[int], part_of: Sequence[int]) -> int | None:
    """First part meeting ``prod`` without being contained in it."""
    rest = prod
    while rest:
        k = part_of[lowest_bit(rest)]
        m = masks[k]
        if m & ~prod:
            return k
        rest &= ~m
    return None


def check_closure(P: Partition) -> ClosureCheck:
    G = P.group
    masks, part_of = P.masks, P.part_of
    for i, mi in enumerate(masks):
        for j, mj in enumerate(masks):
            k = _straddled(G.product_bits(mi, mj), masks, part_of)
            if k is not None:
                return ClosureCheck(False, (i, j, k))
    return ClosureCheck(True, None)


def closure_holds(G: FiniteGroup, masks: Sequence[int], part_of: Sequence[int]) -> bool:
    """Mask-level closure test used inside sweeps."""
    for mi in masks:
        for mj in masks:
            if _straddled(G.product_bits(mi, mj), masks, part_of) is not None:
                return False
    return True


def find_identity_part(P: Partition) -> int | None:
    G = P.group
    masks = P.masks
    for e, me in enumerate(masks):
        if all(G.product_bits(me, m) == m and G.product_bits(m, me) == m for m in masks):
            part = P.parts[e]
            if G.identity not in part or not is_subgroup(G, part):
                raise TheoremViolation(
                    f"identity part {part.to_list()} is not a subgroup containing the identity"
                )
            return e
    return None


def check_inverse_property(P: Partition) -> InverseCheck:
    G = P.group
    lookup = P.index_of_mask
    pairing = []
    for i, m in enumerate(P.masks):
        j = lookup.get(G.inverse_bits(m))
        if j is None:
            return InverseCheck(False, None, i)
        pairing.append(j)
    return InverseCheck(True, tuple(pairing), None)


@dataclass(frozen=True)
class AxiomReport:
    closure_ok: bool
    closure_witness: tuple[int, int, int] | None
    identity_part: int | None
    inverse_ok: bool
    inverse_witness: int | None

    @property
    def ok(self) -> bool:
        return self.closure_ok and self.identity_part is not None and self.inverse_ok

    def describe(self) -> str:
        if self.ok:
            return "all d-partition axioms hold"
        problems = []
        if not self.closure_ok:
            i, j, k = self.closure_witness
            problems.append(
                f"closure fails: product of parts {i} and {j} straddles part {k}"
            )
        if self.identity_part is None:
            problems.append("no identity part")
        if not self.inverse_ok:
            problems.append(f"inverse property fails: inverse of part {self.inverse_witness} is not a part")
        return "; ".join(problems)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "closure_ok": self.closure_ok,
            "closure_witness": list(self.closure_witness) if self.closure_witness else None,
            "identity_part": self.identity_part,
            "inverse_ok": self.inverse_ok,
            "inverse_witness": self.inverse_witness,
        }


def axiom_report(P: Partition) -> AxiomReport:
    closure = check_closure(P)
    inverse = check_inverse_property(P)
    return AxiomReport(
        closure_ok=closure.ok,
        closure_witness=closure.witness,
        identity_part=find_identity_part(P),
        inverse_ok=inverse.ok,
        inverse_witness=inverse.witness,
    )


@dataclass(frozen=True)
class DPartition:
    """A partition that has passed every d-partition axiom."""

    base: Partition
    identity_part: int
    inverse_pairing: tuple[int, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.base.group

    @property
    def parts(self) -> tuple[ElementSet, ...]:
        return self.base.parts

    @property
    def masks(self) -> tuple[int, ...]:
        return self.base.masks

    @property
    def identity(self) -> ElementSet:
        return self.base.parts[self.identity_part]

    @property
    def is_1d(self) -> bool:
        return len(self.identity) == 1

    def __len__(self) -> int:
        return len(self.base.parts)

    def key(self) -> tuple[int, ...]:
        return self.base.masks

    def to_json(self) -> dict:
        return {
            "parts": self.base.to_json(),
            "identity_part": self.identity_part,
            "pairing": list(self.inverse_pairing),
        }

    def __repr__(self) -> str:
        return f"DPartition({self.group.family_tag}, {self.base.to_json()})"


def as_d_partition(P: Partition) -> DPartition:
    report = axiom_report(P)
    if not report.ok:
        raise AxiomError(report)
    dp = DPartition(P, report.identity_part, check_inverse_property(P).pairing)
    _assert_identity_structure(dp)
    return dp


def _assert_identity_structure(dp: DPartition) -> None:
    G = dp.group
    e = dp.masks[dp.identity_part]
    for m in dp.masks:
        if G.product_bits(G.product_bits(e, m), e) != m:
            raise TheoremViolation("a part is not a union of double cosets of the identity part")
    pairing = dp.inverse_pairing
    if pairing[dp.identity_part] != dp.identity_part or any(
        pairing[pairing[i]] != i for i in range(len(pairing))
    ):
        raise TheoremViolation("inverse pairing is not an involution fixing the identity part")


def is_d_partition(P: Partition) -> bool:
    return axiom_report(P).ok


def d_partition_from_lists(G: FiniteGroup, parts: Sequence[Sequence[int]]) -> DPartition:
    return as_d_partition(partition_from_lists(G, parts))


def check_intersection_property(P: Partition) -> bool:
    """For every part ``pi`` inside ``pi1 pi2`` and every ``x`` in ``pi1``,
    ``y`` in ``pi2``: both ``x pi2`` and ``pi1 y`` meet ``pi``.

    Only meaningful for partitions with closure and an identity part.
    """
    if not check_closure(P).ok or find_identity_part(P) is None:
        raise PreconditionError("intersection property needs closure and an identity part")
    G = P.group
    masks = P.masks
    for mi in masks:
        for mj in masks:
            prod = G.product_bits(mi, mj)
            inside = [m for m in masks if not m & ~prod]
            for x in iter_bits(mi):
                row = G.product_bits(1 << x, mj)
                if any(not row & m for m in inside):
                    return False
            for y in iter_bits(mj):
                col = G.product_bits(mi, 1 << y)
                if any(not col & m for m in inside):
                    return False
    return True


# ---------------------------------------------------------------------------
# S-partitions


def s_partition_constants(P: Partition) -> list[list[list[int]]]:
    """The integer tensor ``s[i][j][k]``: number of pairs ``(x, y)`` in
    ``pi_i x pi_j`` with ``xy = z``, which must not depend on ``z`` in ``pi_k``.

    Raises :class:`NotSPartition` with a witness ``(i, j, k, z1, z2)`` when it
    does, and :class:`PreconditionError` when ``{1}`` is not a part or the
    partition is not closed under inversion.
    """
    G = P.group
    if (1 << G.identity) not in P.index_of_mask:
        raise PreconditionError("the identity singleton must be a part")
    if not check_inverse_property(P).ok:
        raise PreconditionError("parts must be closed under inversion")
    h = len(P.parts)
    part_of = P.part_of
    n = G.order
    # counts[i][j][z]
    counts = [[[0] * n for _ in range(h)] for _ in range(h)]
    mul = G.mul
    for x in range(n):
        row = mul[x]
        cx = counts[part_of[x]]
        for y in range(n):
            cx[part_of[y]][row[y]] += 1
    s = [[[0] * h for _ in range(h)] for _ in range(h)]
    for i in range(h):
        for j in range(h):
            cij = counts[i][j]
            for k, m in enumerate(P.masks):
                first = lowest_bit(m)
                value = cij[first]
                for z in iter_bits(m):
                    if cij[z] != value:
                        raise NotSPartition((i, j, k, first, z))
                s[i][j][k] = value
    return s


def is_s_partition(P: Partition) -> bool:
    try:
        s_partition_constants(P)
    except (NotSPartition, PreconditionError):
        return False
    return True


# ---------------------------------------------------------------------------
# enumeration


def restricted_growth_strings(
    n: int,
    involution: Sequence[int] | None = None,
    max_blocks: int | None = None,
    exact_blocks: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """All set partitions of ``range(n)`` as restricted growth strings.

    With ``involution`` only partitions mapped onto themselves blockwise by
    the involution are produced; this is enforced while the string grows by
    tracking, for each block, the block its image must land in.
    """
    if exact_blocks is not None:
        max_blocks = exact_blocks if max_blocks is None else min(max_blocks, exact_blocks)
    if max_blocks is None:
        max_blocks = n
    rgs = [0] * n
    partner: list[int | None] = []

    def place(u: int, b: int) -> list | None:
        """Check the involution constraint for putting ``u`` in block ``b``;
        return the list of partner assignments made, or None if impossible."""
        if involution is None:
            return []
        v = involution[u]
        if v > u:
            return []
        c = b if v == u else rgs[v]
        made = []
        pb, pc = partner[b], partner[c]
        if pb is not None and pb != c:
            return None
        if pc is not None and pc != b:
            return None
        if pb is None:
            partner[b] = c
            made.append(b)
        if partner[c] is None:
            partner[c] = b
            made.append(c)
        return made

    def rec(u: int, blocks: int) -> Iterator[tuple[int, ...]]:
        if u == n:
            if exact_blocks is None or blocks == exact_blocks:
                yield tuple(rgs)
            return
        if exact_blocks is not None and blocks + (n - u) < exact_blocks:
            return
        top = min(blocks + 1, max_blocks)
        for b in range(top):
            if b == blocks:
                partner.append(None)
            rgs[u] = b
            made = place(u, b)
            if made is not None:
                yield from rec(u + 1, max(blocks, b + 1))
                for c in made:
                    partner[c] = None
            if b == blocks:
                partner.pop()

    if n == 0:
        if not exact_blocks:
            yield ()
        return
    yield from rec(0, 0)


def _blocks_from_rgs(rgs: Sequence[int], unit_masks: Sequence[int]) -> list[int]:
    blocks: list[int] = []
    for u, b in enumerate(rgs):
        if b == len(blocks):
            blocks.append(0)
        blocks[b] |= unit_masks[u]
    return blocks


def iter_partitions(G: FiniteGroup) -> Iterator[Partition]:
    """Every set partition of ``G`` (Bell(|G|) of them), unpruned."""
    units = [1 << x for x in range(G.order)]
    for rgs in restricted_growth_strings(G.order):
        yield Partition.from_masks(G, _blocks_from_rgs(rgs, units))


def enumerate_d_partitions(
    G: FiniteGroup,
    cap: int = DEFAULT_ENUMERATION_CAP,
    include_whole: bool = True,
    parts: int | None = None,
) -> list[DPartition]:
    """Every d-partition of ``G``, sorted by part masks.

    The sweep runs once per subgroup ``H`` (the candidate identity part) over
    set partitions of the remaining ``H``-double cosets, keeping only those
    whose blocks are swapped by inversion.  Each survivor goes through the
    full axiom check.  ``parts`` restricts to a given number of parts.
    """
    if G.order > cap:
        raise BudgetExceeded(f"group order {G.order} exceeds the enumeration cap {cap}")
    found: dict[tuple[int, ...], DPartition] = {}
    for H in subgroups(G):
        h = H.members
        if h == G.full_mask:
            if include_whole and parts in (None, 1):
                P = Partition.from_masks(G, [h])
                found[P.key()] = as_d_partition(P)
            continue
        remaining = G.full_mask & ~h
        units = []
        while remaining:
            d = double_coset_bits(G, h, lowest_bit(remaining))
            units.append(d)
            remaining &= ~d
        index = {m: i for i, m in enumerate(units)}
        involution = [index[G.inverse_bits(m)] for m in units]
        exact = None if parts is None else parts - 1
        if exact is not None and exact < 1:
            continue
        for rgs in restricted_growth_strings(len(units), involution, exact_blocks=exact):
            masks = [h] + _blocks_from_rgs(rgs, units)
            P = Partition.from_masks(G, masks)
            if not closure_holds(G, P.masks, P.part_of):
                continue
            if find_identity_part(P) is None:
                continue
            found[P.key()] = as_d_partition(P)
    return [found[k] for k in sorted(found)]


def small_part_forcing(dp: DPartition) -> str | None:
    """Forced shape of a d-partition of ``Z_p`` with identity part ``{0}``.

    A singleton non-identity part forces the singleton partition (returned as
    ``"Π({1})"``); otherwise a part of size two forces the partition into
    ``{0}`` and the pairs ``{x, -x}`` (``"Π({−1,1})"``).  A mismatch raises
    :class:`TheoremViolation`.
    """
    G = dp.group
    p = G.order
    if G.family != "cyclic":
        raise PreconditionError("small_part_forcing expects a cyclic group of prime order")
    if dp.masks[dp.identity_part] != 1:
        raise PreconditionError("identity part must be {0}")
    others = [m for i, m in enumerate(dp.masks) if i != dp.identity_part]
    sizes = [m.bit_count() for m in others]
    if 1 in sizes:
        if any(s != 1 for s in sizes):
            raise TheoremViolation(f"singleton part present but partition is not singleton: {dp}")
        return "Π({1})"
    if 2 in sizes:
        expected = {(1 << x) | (1 << (p - x)) for x in range(1, (p - 1) // 2 + 1)}
        if set(others) != expected:
            raise TheoremViolation(f"part of size 2 present but partition is not Π({{−1,1}}): {dp}")
        return "Π({−1,1})"
    return None


def partition_json(P: Partition | DPartition) -> str:
    base = P.base if isinstance(P, DPartition) else P
    return json.dumps(base.to_json())
