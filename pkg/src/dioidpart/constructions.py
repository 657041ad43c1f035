"""Constructions producing new d-partitions from old ones: refining or
coarsening at a subgroup, orbit coarsening under automorphisms, lifting from
a quotient and the supplement construction.

Every result is pushed back through :func:`as_d_partition`; nothing here
trusts the mathematics that says the output must be valid.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import AxiomError, NotNormal, PartitionError, PreconditionError, TheoremViolation
from .groups import (
    Automorphism,
    ElementSet,
    FiniteGroup,
    QuotientMap,
    SubgroupView,
    bits_of,
    conjugacy_partition,
    cyclic,
    double_coset_partition,
    is_normal,
    iter_bits,
    lowest_bit,
    multiplication_automorphism,
    require_subgroup,
    subgroup_view,
)
from .partitions import DPartition, as_d_partition, validate_partition
from .schur import preserves_structure, structure_constants


def _verified(G: FiniteGroup, masks: Sequence[int], what: str) -> DPartition:
    try:
        P = validate_partition(G, [ElementSet(G.order, m) for m in masks])
        return as_d_partition(P)
    except (PartitionError, AxiomError) as exc:
        raise TheoremViolation(f"{what} produced an invalid d-partition: {exc}") from exc


# ---------------------------------------------------------------------------
# splitting at a subgroup


@dataclass(frozen=True)
class SubgroupSplit:
    """Indices of parts with ``pi A = A pi = A`` (below), with
    ``pi A = A pi = pi`` other than ``A`` itself (above), and the rest."""

    subgroup: ElementSet
    below: tuple[int, ...]
    above: tuple[int, ...]
    residual: tuple[int, ...]

    def below_covers_subgroup(self, dp: DPartition) -> bool:
        covered = 0
        for i in self.below:
            covered |= dp.masks[i]
        return covered == self.subgroup.members


def split_at_subgroup(dp: DPartition, A: ElementSet) -> SubgroupSplit:
    G = dp.group
    require_subgroup(G, A)
    a = A.members
    below, above, residual = [], [], []
    for i, m in enumerate(dp.masks):
        left, right = G.product_bits(m, a), G.product_bits(a, m)
        if left == right == a:
            below.append(i)
        elif left == right == m and m != a:
            above.append(i)
        else:
            residual.append(i)
    if set(below) & set(above):
        raise TheoremViolation("a part is both below and above the subgroup")
    return SubgroupSplit(A, tuple(below), tuple(above), tuple(residual))


def coarsen_identity_candidate(dp: DPartition, A: ElementSet) -> list[int]:
    """The parts above ``A`` together with ``A``, whether or not they form a
    d-partition."""
    split = split_at_subgroup(dp, A)
    return [A.members] + [dp.masks[i] for i in split.above]


def coarsen_identity(dp: DPartition, A: ElementSet) -> DPartition:
    """Replace everything below ``A`` by ``A`` itself.

    Valid exactly when no part is left in the residual of the split and the
    identity part lies inside ``A``.
    """
    split = split_at_subgroup(dp, A)
    if split.residual:
        raise PreconditionError(
            f"cannot coarsen at {A.to_list()}: parts {[dp.parts[i].to_list() for i in split.residual]} are neither "
            "inside the subgroup nor unions of its cosets"
        )
    if dp.identity_part in split.above:
        # the identity part is then a union of A-cosets containing A itself,
        # so A and that part would overlap
        raise PreconditionError(
            f"cannot coarsen at {A.to_list()}: the identity part strictly contains it"
        )
    result = _verified(dp.group, coarsen_identity_candidate(dp, A), "coarsen_identity")
    if result.masks[result.identity_part] != A.members:
        raise TheoremViolation("coarsened partition does not have the subgroup as identity part")
    return result


def refine_identity(outer: DPartition, inner: DPartition | None = None,
                    view: SubgroupView | None = None) -> DPartition:
    """Split the identity part ``A`` of ``outer`` using a d-partition of ``A``.

    ``inner`` lives on ``view.group`` (the identity part re-indexed as a
    standalone group).  When omitted, the conjugacy classes of ``A`` are used,
    which yields a partition whose identity part is trivial.
    """
    G = outer.group
    A = outer.identity
    if view is None:
        view = subgroup_view(G, A)
    elif view.parent != G or view.subset != A:
        raise PreconditionError("subgroup view does not match the identity part of the outer partition")
    if inner is None:
        inner = as_d_partition(conjugacy_partition(view.group))
    elif inner.group != view.group:
        raise PreconditionError("inner partition must live on the identity part viewed as a group")
    masks = [view.lift_bits(m) for m in inner.masks]
    masks += [m for i, m in enumerate(outer.masks) if i != outer.identity_part]
    result = _verified(G, masks, "refine_identity")
    expected = view.lift_bits(inner.masks[inner.identity_part])
    if result.masks[result.identity_part] != expected:
        raise TheoremViolation("refined partition has the wrong identity part")
    return result


def below_as_partition_of_subgroup(dp: DPartition, A: ElementSet) -> tuple[DPartition, SubgroupView]:
    """The parts below ``A`` as a d-partition of ``A`` viewed as a group."""
    split = split_at_subgroup(dp, A)
    if not split.below_covers_subgroup(dp):
        raise PreconditionError(f"parts inside {A.to_list()} do not cover it")
    view = subgroup_view(dp.group, A)
    inner = _verified(view.group, [view.restrict_bits(dp.masks[i]) for i in split.below],
                      "restriction to the subgroup")
    if view.lift_bits(inner.masks[inner.identity_part]) != dp.masks[dp.identity_part]:
        raise TheoremViolation("restricted partition has the wrong identity part")
    return inner, view


def double_coset_coarsen(dp: DPartition, A: ElementSet) -> tuple[DPartition, DPartition]:
    """Return the parts inside ``A`` as a d-partition of ``A``, and the
    partition of ``G`` into ``A`` and the sets ``A pi A`` for the other parts."""
    inner, _ = below_as_partition_of_subgroup(dp, A)
    G = dp.group
    a = A.members
    split = split_at_subgroup(dp, A)
    below = set(split.below)
    masks = {a}
    for i, m in enumerate(dp.masks):
        if i not in below:
            masks.add(G.product_bits(G.product_bits(a, m), a))
    outer = _verified(G, sorted(masks), "double_coset_coarsen")
    if outer.masks[outer.identity_part] != a:
        raise TheoremViolation("coarsened partition does not have A as identity part")
    return inner, outer


def complement_square(G: FiniteGroup, A: ElementSet) -> ElementSet:
    """``(G - A)(G - A)``: equal to ``A`` for index two, else all of ``G``."""
    c = G.full_mask & ~A.members
    return ElementSet(G.order, G.product_bits(c, c))


def complement_coarsen(dp: DPartition, A: ElementSet) -> DPartition:
    """Keep the parts inside the proper subgroup ``A`` and merge everything
    else into ``G - A``."""
    G = dp.group
    if A.members == G.full_mask:
        raise PreconditionError("complement coarsening needs a proper subgroup")
    split = split_at_subgroup(dp, A)
    if not split.below_covers_subgroup(dp):
        raise PreconditionError(f"parts inside {A.to_list()} do not cover it")
    masks = [dp.masks[i] for i in split.below] + [G.full_mask & ~A.members]
    result = _verified(G, masks, "complement_coarsen")
    if result.masks[result.identity_part] != dp.masks[dp.identity_part]:
        raise TheoremViolation("complement coarsening changed the identity part")
    index = G.order // len(A)
    square = complement_square(G, A).members
    if (square == A.members) != (index == 2) or (index != 2 and square != G.full_mask):
        raise TheoremViolation("square of the complement does not match the index rule")
    return result


# ---------------------------------------------------------------------------
# automorphism orbits


@dataclass(frozen=True)
class GroupAction:
    """A finite group of automorphisms of ``on``, given explicitly."""

    acting: tuple[Automorphism, ...]
    on: FiniteGroup

    def __post_init__(self):
        perms = {a.perm for a in self.acting}
        ident = tuple(range(self.on.order))
        if ident not in perms:
            raise PreconditionError("action must contain the identity automorphism")
        for a in self.acting:
            if not a.is_automorphism_of(self.on):
                raise PreconditionError(f"{a.perm} is not an automorphism")
            if a.inverse().perm not in perms:
                raise PreconditionError("action is not closed under inverses")
            for b in self.acting:
                if a.compose(b).perm not in perms:
                    raise PreconditionError("action is not closed under composition")

    @classmethod
    def generated_by(cls, G: FiniteGroup, gens: Sequence[Automorphism]) -> GroupAction:
        ident = Automorphism(tuple(range(G.order)))
        seen = {ident.perm: ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = g.compose(a)
                    if b.perm not in seen:
                        seen[b.perm] = b
                        nxt.append(b)
            frontier = nxt
        return cls(tuple(seen[k] for k in sorted(seen)), G)

    def orbit_bits(self, x: int) -> int:
        return bits_of(a(x) for a in self.acting)


def multiplicative_action(n: int, units: Sequence[int]) -> GroupAction:
    """Multiplication by the given residues acting on ``Z_n``."""
    return GroupAction(tuple(multiplication_automorphism(n, u) for u in sorted(set(units))), cyclic(n))


def orbit_coarsen(dp: DPartition, act: GroupAction) -> DPartition:
    G = dp.group
    if act.on != G:
        raise PreconditionError("action is on a different group")
    lookup = dp.base.index_of_mask
    for a in act.acting:
        for m in dp.masks:
            if a.image_bits(m) not in lookup:
                raise PreconditionError(
                    f"automorphism {a.perm} does not map part {list(iter_bits(m))} onto a part"
                )
    masks = set()
    for m in dp.masks:
        u = 0
        for a in act.acting:
            u |= a.image_bits(m)
        masks.add(u)
    result = _verified(G, sorted(masks), "orbit_coarsen")
    if result.masks[result.identity_part] != dp.masks[dp.identity_part]:
        raise TheoremViolation("orbit coarsening changed the identity part")
    return result


# ---------------------------------------------------------------------------
# quotients


def lift_from_quotient(qm: QuotientMap, dp_bar: DPartition) -> DPartition:
    if dp_bar.group != qm.target:
        raise PreconditionError("partition does not live on the quotient group")
    masks = [qm.preimage(part).members for part in dp_bar.parts]
    return _verified(qm.source, masks, "lift_from_quotient")


def project_partition(qm: QuotientMap, dp: DPartition) -> list[ElementSet]:
    return [qm.image(part) for part in dp.parts]


# ---------------------------------------------------------------------------
# supplement construction


@dataclass(frozen=True)
class SupplementResult:
    view: SubgroupView  # N as a standalone group
    on_normal: DPartition  # over view.group
    on_group: DPartition  # double cosets of A in G
    f: tuple[int, ...]  # part index in on_group -> part index in on_normal


def conjugation_orbit_bits(G: FiniteGroup, A: ElementSet, x: int) -> int:
    return bits_of(G.conjugate(G.inv[a], x) for a in A)


def supplement_partition(G: FiniteGroup, N: ElementSet, A: ElementSet) -> SupplementResult:
    """For ``N`` normal and ``AN = G``: the partition of ``N`` into the sets
    ``(A ∩ N) O_A(n)``, the double cosets of ``A`` in ``G``, and the
    bijection between them.  The bijection is checked to preserve the
    structure constants."""
    require_subgroup(G, N, "N")
    require_subgroup(G, A)
    if not is_normal(G, N):
        raise NotNormal(f"N = {N.to_list()} is not normal")
    if G.product_bits(A.members, N.members) != G.full_mask:
        raise PreconditionError("A and N do not generate the whole group as AN")
    an = A.members & N.members
    view = subgroup_view(G, N)

    remaining = N.members
    n_masks = []
    while remaining:
        n = lowest_bit(remaining)
        part = G.product_bits(an, conjugation_orbit_bits(G, A, n))
        n_masks.append(part)
        remaining &= ~part
    on_normal = _verified(view.group, [view.restrict_bits(m) for m in n_masks],
                          "supplement partition of N")
    if view.lift_bits(on_normal.masks[on_normal.identity_part]) != an:
        raise TheoremViolation("identity part of the N-partition is not A ∩ N")

    on_group = as_d_partition(double_coset_partition(G, A))
    lookup = on_normal.base.index_of_mask
    f = []
    for m in on_group.masks:
        y = lowest_bit(m)
        n = next(x for x in iter_bits(N.members) if G.mul[y][G.inv[x]] in A)
        image = G.product_bits(an, conjugation_orbit_bits(G, A, n))
        if m & N.members != image:
            raise TheoremViolation(f"double coset of {y} meets N in the wrong set")
        f.append(lookup[view.restrict_bits(image)])
    f = tuple(f)
    if not preserves_structure(f, structure_constants(on_group), structure_constants(on_normal)):
        raise TheoremViolation("supplement bijection does not preserve structure constants")
    return SupplementResult(view, on_normal, on_group, f)
