"""Command-line front end.

Exit codes: 0 success, 1 domain-level failure (axioms fail, a construction's
hypotheses do not hold, a budget is exceeded), 2 usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .constructions import (
    GroupAction,
    below_as_partition_of_subgroup,
    coarsen_identity,
    complement_coarsen,
    double_coset_coarsen,
    lift_from_quotient,
    orbit_coarsen,
    refine_identity,
    supplement_partition,
)
from .errors import (
    AxiomError,
    BudgetExceeded,
    DioidPartitionError,
    GroupError,
    PartitionError,
    PreconditionError,
)
from .groups import (
    ElementSet,
    FiniteGroup,
    Partition,
    build_group,
    conjugacy_partition,
    multiplication_automorphism,
    quotient_group,
    singleton_partition,
    subgroup_view,
    whole_partition,
)
from .partitions import (
    DPartition,
    as_d_partition,
    axiom_report,
    enumerate_d_partitions,
    partition_from_lists,
)
from .schur import are_isomorphic, dfield_search, structure_constants
from .zp import classification_census, gordon_census, is_prime

SCHEMA = "1"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    group_cap: int = 12
    sweep_budget: int = 61
    bell_cap: int = 11
    workers: int = 1
    seed: int = 20240229
    output: str = "table"

    def __post_init__(self):
        for name in ("group_cap", "sweep_budget", "bell_cap", "workers"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")


# ---------------------------------------------------------------------------
# parsing helpers


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from exc


def _group(text: str | None, what: str = "--group") -> FiniteGroup:
    if text is None:
        raise UsageError(f"{what} is required")
    try:
        return build_group(_load_json(text, what))
    except GroupError as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _element_set(G: FiniteGroup, value, what: str) -> ElementSet:
    if isinstance(value, str):
        value = _load_json(value, what)
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise UsageError(f"{what} must be a JSON array of element indices")
    try:
        return ElementSet.of(G.order, value)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _partition(G: FiniteGroup, value, what: str = "--partition") -> Partition:
    if value is None:
        raise UsageError(f"{what} is required")
    named = {"singleton": singleton_partition, "whole": whole_partition,
             "conjugacy": conjugacy_partition}
    if isinstance(value, str) and value in named:
        return named[value](G)
    if isinstance(value, str):
        value = _load_json(value, what)
    if not isinstance(value, list) or not all(
        isinstance(p, list) and all(isinstance(x, int) for x in p) for p in value
    ):
        raise UsageError(f"{what} must be an array of arrays of element indices")
    try:
        return partition_from_lists(G, value)
    except (PartitionError, ValueError) as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _d_partition(G: FiniteGroup, value, what: str = "--partition") -> DPartition:
    return as_d_partition(_partition(G, value, what))


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args, cfg: RunConfig) -> tuple[int, dict]:
    G = _group(args.group)
    P = _partition(G, args.partition)
    report = axiom_report(P)
    out = {"group": G.descriptor(), "partition": P.to_json(), "report": report.to_json()}
    if report.ok:
        out["structure_constants"] = structure_constants(as_d_partition(P)).to_json()
    return (0 if report.ok else 1), out


CONSTRUCTIONS = (
    "coarsen-identity",
    "refine-identity",
    "double-coset-coarsen",
    "complement-coarsen",
    "orbit-coarsen",
    "lift-quotient",
    "supplement",
)


def cmd_construct(args, cfg: RunConfig) -> tuple[int, dict]:
    spec = {}
    if args.spec:
        spec = _load_json(args.spec, "--spec")
        if not isinstance(spec, dict):
            raise UsageError("--spec must be a JSON object")
    name = spec.get("construction", args.construction)
    if name not in CONSTRUCTIONS:
        raise UsageError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
    group_text = json.dumps(spec["group"]) if "group" in spec else args.group
    G = _group(group_text)
    partition = spec.get("partition", args.partition)
    subgroup = spec.get("subgroup", args.subgroup)
    normal = spec.get("normal", args.normal)
    units = spec.get("units", args.units)
    inner = spec.get("inner", args.inner)

    def need(value, flag):
        if value is None:
            raise UsageError(f"{name} needs {flag}")
        return value

    out: dict = {"construction": name, "group": G.descriptor()}
    if name == "coarsen-identity":
        result = coarsen_identity(_d_partition(G, need(partition, "--partition")),
                                  _element_set(G, need(subgroup, "--subgroup"), "--subgroup"))
    elif name == "refine-identity":
        outer = _d_partition(G, need(partition, "--partition"))
        view = subgroup_view(G, outer.identity)
        inner_dp = None if inner is None else _d_partition(view.group, inner, "--inner")
        result = refine_identity(outer, inner_dp, view)
    elif name == "double-coset-coarsen":
        dp = _d_partition(G, need(partition, "--partition"))
        A = _element_set(G, need(subgroup, "--subgroup"), "--subgroup")
        inner_dp, result = double_coset_coarsen(dp, A)
        _, view = below_as_partition_of_subgroup(dp, A)
        out["on_subgroup"] = [view.lift(p).to_list() for p in inner_dp.parts]
    elif name == "complement-coarsen":
        result = complement_coarsen(_d_partition(G, need(partition, "--partition")),
                                    _element_set(G, need(subgroup, "--subgroup"), "--subgroup"))
    elif name == "orbit-coarsen":
        dp = _d_partition(G, need(partition, "--partition"))
        act = _action(G, need(units, "--units"))
        result = orbit_coarsen(dp, act)
    elif name == "lift-quotient":
        N = _element_set(G, need(normal, "--normal"), "--normal")
        qm = quotient_group(G, N)
        bar = _d_partition(qm.target, need(partition, "--partition"))
        result = lift_from_quotient(qm, bar)
    else:
        N = _element_set(G, need(normal, "--normal"), "--normal")
        A = _element_set(G, need(subgroup, "--subgroup"), "--subgroup")
        sup = supplement_partition(G, N, A)
        out["on_normal"] = [sup.view.lift(p).to_list() for p in sup.on_normal.parts]
        out["bijection"] = list(sup.f)
        result = sup.on_group
    out["result"] = result.to_json()
    out["report"] = axiom_report(result.base).to_json()
    return 0, out


def _action(G: FiniteGroup, units) -> GroupAction:
    if isinstance(units, str):
        units = _load_json(units, "--units")
    if not isinstance(units, list) or not all(isinstance(u, int) for u in units):
        raise UsageError("--units must be a JSON array of integers")
    if G.family != "cyclic":
        raise UsageError("--units applies to cyclic groups only")
    try:
        auts = [multiplication_automorphism(G.order, u) for u in units]
    except GroupError as exc:
        raise PreconditionError(str(exc)) from exc
    return GroupAction(tuple(auts), G)


def cmd_enumerate(args, cfg: RunConfig) -> tuple[int, dict]:
    G = _group(args.group)
    found = enumerate_d_partitions(G, cap=cfg.group_cap, include_whole=not args.exclude_whole,
                                   parts=args.parts)
    return 0, {
        "group": G.descriptor(),
        "include_whole": not args.exclude_whole,
        "count": len(found),
        "partitions": [dp.base.to_json() for dp in found],
    }


def cmd_census(args, cfg: RunConfig) -> tuple[int, dict]:
    p = _prime(args.p)
    report = classification_census(p, budget=cfg.sweep_budget, workers=cfg.workers)
    out = {"p": p, **report.to_json(full=args.full)}
    return (0 if report.ok else 1), out


def cmd_gordon(args, cfg: RunConfig) -> tuple[int, dict]:
    p = _prime(args.p)
    report = gordon_census(p, cap=cfg.bell_cap, pruned=not args.no_prune)
    return (0 if report.match else 1), report.to_json()


def cmd_dfield(args, cfg: RunConfig) -> tuple[int, dict]:
    tables = dfield_search(args.n, idempotent_only=args.idempotent)
    return 0, {"n": args.n, "idempotent_only": args.idempotent, "count": len(tables),
               "tables": [t.to_json() for t in tables]}


def cmd_iso(args, cfg: RunConfig) -> tuple[int, dict]:
    G1 = _group(args.group)
    G2 = _group(args.group2 or args.group, "--group2")
    dp1 = _d_partition(G1, args.partition)
    dp2 = _d_partition(G2, args.partition2, "--partition2")
    f = are_isomorphic(dp1, dp2)
    return (0 if f is not None else 1), {"isomorphic": f is not None,
                                         "bijection": list(f) if f else None}


def _prime(p) -> int:
    if p is None:
        raise UsageError("--p is required")
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return p


# ---------------------------------------------------------------------------
# plumbing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dioidpart", description="d-partitions of finite groups")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cap", type=int, default=None, help="enumeration cap or sweep budget")
    common.add_argument("--seed", type=int, default=20240229)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="check the d-partition axioms")
    v.add_argument("--group")
    v.add_argument("--partition")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", parents=[common], help="build a d-partition")
    c.add_argument("construction", nargs="?", choices=CONSTRUCTIONS)
    c.add_argument("--spec", help="JSON object carrying all arguments")
    c.add_argument("--group")
    c.add_argument("--partition")
    c.add_argument("--subgroup")
    c.add_argument("--normal")
    c.add_argument("--units")
    c.add_argument("--inner", help="partition of the identity part, as a standalone group")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("enumerate", parents=[common], help="all d-partitions of a small group")
    e.add_argument("--group")
    e.add_argument("--parts", type=int)
    e.add_argument("--exclude-whole", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    ce = sub.add_parser("census", parents=[common], help="classify 3-part d-partitions of Z_p")
    ce.add_argument("--p", type=int)
    ce.add_argument("--full", action="store_true", help="include every partition")
    ce.set_defaults(func=cmd_census)

    g = sub.add_parser("gordon", parents=[common], help="exhaustive S-partition census of Z_p")
    g.add_argument("--p", type=int)
    g.add_argument("--no-prune", action="store_true")
    g.set_defaults(func=cmd_gordon)

    d = sub.add_parser("dfield", parents=[common], help="search small d-fields")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--idempotent", action="store_true")
    d.set_defaults(func=cmd_dfield)

    i = sub.add_parser("iso", parents=[common], help="isomorphism of two d-partitions")
    i.add_argument("--group")
    i.add_argument("--partition")
    i.add_argument("--group2")
    i.add_argument("--partition2")
    i.set_defaults(func=cmd_iso)
    return parser


def _config(args) -> RunConfig:
    cap = args.cap
    kwargs = {"workers": args.workers, "seed": args.seed,
              "output": "json" if args.json else "table"}
    if cap is not None:
        kwargs.update(group_cap=cap, sweep_budget=cap, bell_cap=cap)
    return RunConfig(**kwargs)


def _render(out: dict) -> str:
    lines = []
    for key, value in out.items():
        if key == "schema":
            continue
        lines.append(f"{key}: {json.dumps(value, sort_keys=True) if not isinstance(value, str) else value}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        code, out = args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AxiomError as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc), "report": exc.report.to_json()}))
        return 1
    except (PreconditionError, BudgetExceeded, GroupError, DioidPartitionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = {"schema": SCHEMA, **out}
    print(json.dumps(out, sort_keys=False) if cfg.output == "json" else _render(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
