"""Command-line front end.

Slices on the command line are written as generator lists in the group's
element indexing: `T=g0,g1;S=g0` (bare integers also accepted, `*` means
the whole group, an empty list means the trivial subgroup).  Rationals
print as `num/den` in lowest terms with a positive denominator.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bisetops
from .constants import (
    classical_deflation_constant,
    deflation_constant,
    is_b_group,
    is_t_slice_of,
    supplement_moebius_sum,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupError,
    Subgroup,
    all_subgroups,
    group_from_spec,
    subgroup_as_group,
)
from .ideals import (
    FAMILIES,
    GroupUniverse,
    bounded_closure,
    check_conditions,
    family_by_id,
    ideal_dimension,
    minimal_groups,
)
from .ring import (
    element_to_json,
    fraction_str,
    mark_matrix_csv,
    morphism_to_ring,
    slice_classes,
    table_to_json,
)
from .verify import run_all


def _parse_generators(text: str, group) -> tuple[int, ...]:
    text = text.strip()
    if text == "*":
        return tuple(range(group.order))
    if not text:
        return (group.identity,)
    out = []
    for token in text.split(","):
        token = token.strip()
        if token.startswith("g"):
            token = token[1:]
        try:
            idx = int(token)
        except ValueError:
            raise GroupError(f"bad generator token {token!r}") from None
        if not 0 <= idx < group.order:
            raise GroupError(f"generator index {idx} out of range")
        out.append(idx)
    return tuple(out)


def parse_slice(text: str, group) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Parse `T=g0,g1;S=g0` into (T members, S members)."""
    parts = dict()
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, val = chunk.partition("=")
        key = key.strip().upper()
        if key not in ("T", "S"):
            raise GroupError(f"slice component must be T or S, got {key!r}")
        parts[key] = val
    if "S" not in parts:
        raise GroupError("slice needs an S= component")
    from .groups import close_under_product

    t_gens = _parse_generators(parts.get("T", "*"), group)
    s_gens = _parse_generators(parts["S"], group)
    t_members = close_under_product(group, t_gens)
    s_members = close_under_product(group, s_gens)
    if not set(s_members) <= set(t_members):
        raise GroupError("slice bottom is not contained in the top")
    return t_members, s_members


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_group(args) -> int:
    g = group_from_spec(args.spec, order_cap=args.order_cap)
    lat = all_subgroups(g)
    table = slice_classes(g)
    info = {
        "label": g.label,
        "order": g.order,
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "center_order": len(g.center_members()),
        "subgroups": len(lat.subgroups),
        "subgroup_classes": len(lat.class_reps),
        "slice_classes": table.size,
    }
    if args.format == "json":
        _print_json(info)
    else:
        for key, value in info.items():
            print(f"{key}: {value}")
    return 0


def _cmd_marks(args) -> int:
    g = group_from_spec(args.spec, order_cap=args.order_cap)
    table = slice_classes(g)
    if args.format == "json":
        payload = table_to_json(table)
        payload["marks"] = table.mark_matrix()
        _print_json(payload)
    else:
        sys.stdout.write(mark_matrix_csv(table))
    return 0


def _cmd_idempotents(args) -> int:
    g = group_from_spec(args.spec, order_cap=args.order_cap)
    table = slice_classes(g)
    payload = {
        table.label(c): element_to_json(table.idempotent(c))
        for c in range(table.size)
    }
    _print_json(payload)
    return 0


def _cmd_mul(args) -> int:
    g = group_from_spec(args.spec, order_cap=args.order_cap)
    table = slice_classes(g)
    ta, sa = parse_slice(args.slice_a, g)
    tb, sb = parse_slice(args.slice_b, g)
    a = table.basis_element(table.class_index(ta, sa))
    b = table.basis_element(table.class_index(tb, sb))
    product = a * b
    if args.debug_oracle:
        import sliceburnside.gsets as gsets

        (ca,) = a.coeffs
        (cb,) = b.coeffs
        oracle = morphism_to_ring(
            gsets.morphism_product(table.projection(ca), table.projection(cb)),
            table,
        )
        if oracle != product:
            print("oracle disagreement", file=sys.stderr)
            return 1
    if args.format == "json":
        _print_json(element_to_json(product))
    else:
        for cls in sorted(product.coeffs):
            print(f"{table.label(cls)}: {fraction_str(product.coeffs[cls])}")
    return 0


def _cmd_mconst(args) -> int:
    g = group_from_spec(args.spec, order_cap=args.order_cap)
    s_members = _closure_of(args.s_gens, g)
    n_members = _closure_of(args.n_gens, g)
    m = deflation_constant(g, s_members, n_members)
    circ = supplement_moebius_sum(g, s_members, n_members)
    emb = subgroup_as_group(Subgroup.from_members(g, s_members))
    back = {y: i for i, y in enumerate(emb.images)}
    s_cap_n = tuple(sorted(back[x] for x in s_members if x in set(n_members)))
    classical = classical_deflation_constant(emb.source, s_cap_n)
    payload = {
        "m": fraction_str(m),
        "m_supplement": f"{circ}/1",
        "m_classical_on_S": fraction_str(classical),
    }
    if args.format == "json":
        _print_json(payload)
    else:
        print(f"({payload['m']}, {payload['m_supplement']}, {payload['m_classical_on_S']})")
    return 0


def _closure_of(text: str, group) -> tuple[int, ...]:
    from .groups import close_under_product

    return close_under_product(group, _parse_generators(text, group))


def _cmd_tslices(args) -> int:
    g = group_from_spec(args.spec, order_cap=args.order_cap)
    table = slice_classes(g)
    found = []
    for cls in range(table.size):
        big, small = table.rep_subgroups(cls)
        if is_t_slice_of(g, big.members, small.members):
            found.append(table.label(cls))
    if args.format == "json":
        _print_json(found)
    else:
        for label in found:
            print(label)
    return 0


def _cmd_bgroups(args) -> int:
    universe = GroupUniverse(args.prime, args.max_order)
    found = [g.label for g in universe.groups if is_b_group(g)]
    if args.format == "json":
        _print_json(found)
    else:
        for label in found:
            print(label)
    return 0


def _cmd_ideal_dim(args) -> int:
    g = group_from_spec(args.spec, order_cap=args.order_cap)
    from .constants import is_p_group

    ok, _ = is_p_group(g)
    if not ok and args.family.startswith("J"):
        print("warning: ideal families are stated for p-groups", file=sys.stderr)
    print(ideal_dimension(g, family_by_id(args.family)))
    return 0


def _cmd_minimal_groups(args) -> int:
    universe = GroupUniverse(args.prime, args.bound)
    mins = minimal_groups(family_by_id(args.family), universe)
    labels = [g.label for g in mins]
    if args.format == "json":
        _print_json(labels)
    else:
        for label in labels:
            print(label)
    return 0


def _cmd_closure(args) -> int:
    spec, _, slice_text = args.seed.partition(":T=")
    if slice_text:
        slice_text = "T=" + slice_text
    else:
        spec, _, s_part = args.seed.rpartition(":")
        slice_text = s_part if "=" in s_part else f"S={s_part}"
        if not spec:
            raise GroupError("seed must look like <spec>:T=...;S=...")
    group = group_from_spec(spec, order_cap=args.order_cap)
    t_members, s_members = parse_slice(slice_text, group)
    if len(t_members) != group.order:
        emb = subgroup_as_group(Subgroup.from_members(group, t_members))
        back = {y: i for i, y in enumerate(emb.images)}
        group = emb.source
        s_members = tuple(sorted(back[x] for x in s_members))
    universe = GroupUniverse(args.prime, args.bound)
    members = bounded_closure(universe, group, s_members)
    payload = sorted(universe.describe_class(gi, cls) for gi, cls in members)
    if args.format == "json":
        _print_json(
            {
                "universe_bounded": True,
                "lower_bound_of_ideal_trace": True,
                "members": payload,
            }
        )
    else:
        for line in payload:
            print(line)
    return 0


def _cmd_check_family(args) -> int:
    universe = GroupUniverse(args.prime, args.bound)
    report = check_conditions(family_by_id(args.family), universe)
    if args.format == "json":
        _print_json(report.to_json())
    else:
        state = "PASS" if report.passed else "FAIL"
        print(f"{state}: family {report.family_id} over p={report.prime}, bound {report.bound}")
        print(f"slices checked: {report.slices_checked}")
        for kind in ("preimage", "deflation", "product", "iso"):
            for witness in getattr(report, f"{kind}_violations"):
                print(f"  {kind} violation: {witness}")
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    results = run_all(deep=args.deep)
    for result in results:
        print(result.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sliceburnside",
        description="Exact slice Burnside ring computations for small finite groups.",
    )
    parser.add_argument(
        "--format", choices=("text", "json", "csv"), default="text",
        help="output format (default text)",
    )
    parser.add_argument(
        "--order-cap", type=int, default=DEFAULT_ORDER_CAP,
        help="largest group order constructors may produce",
    )
    parser.add_argument(
        "--debug-oracle", action="store_true",
        help="cross-check every elementary operation against the G-set oracle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="order, subgroup and slice-class summary")
    p.add_argument("spec")
    p.set_defaults(fn=_cmd_group)

    p = sub.add_parser("marks", help="mark matrix as CSV (or JSON)")
    p.add_argument("spec")
    p.set_defaults(fn=_cmd_marks)

    p = sub.add_parser("idempotents", help="primitive idempotents as JSON")
    p.add_argument("spec")
    p.set_defaults(fn=_cmd_idempotents)

    p = sub.add_parser("mul", help="product of two basis slices")
    p.add_argument("spec")
    p.add_argument("slice_a", help='e.g. "T=g0,g1;S=g0"')
    p.add_argument("slice_b")
    p.set_defaults(fn=_cmd_mul)

    p = sub.add_parser("mconst", help="deflation constants of (G, S) mod N")
    p.add_argument("spec")
    p.add_argument("s_gens", help='generators of S, e.g. "g0,g1"')
    p.add_argument("n_gens", help="generators of the normal subgroup N")
    p.set_defaults(fn=_cmd_mconst)

    p = sub.add_parser("tslices", help="slice classes of the group that are T-slices")
    p.add_argument("spec")
    p.set_defaults(fn=_cmd_tslices)

    p = sub.add_parser("bgroups", help="B-groups among small p-groups")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(fn=_cmd_bgroups)

    p = sub.add_parser("ideal-dim", help="dimension of a family's ideal at a group")
    p.add_argument("spec")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.set_defaults(fn=_cmd_ideal_dim)

    p = sub.add_parser("minimal-groups", help="minimal groups of a family's ideal")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=_cmd_minimal_groups)

    p = sub.add_parser("closure", help="bounded closure of a generated ideal")
    p.add_argument("--seed", required=True, help='e.g. "elab:3^3:T=*;S=g0,g3"')
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=_cmd_closure)

    p = sub.add_parser("check-family", help="closure conditions over a universe")
    p.add_argument("--family", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=_cmd_check_family)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--deep", action="store_true",
                   help="force the oracle comparison inside every operation")
    p.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.debug_oracle:
        bisetops.set_oracle_checking(True)
    try:
        return args.fn(args)
    except GroupError as exc:
        print(f"error in {args.command}: {exc}", file=sys.stderr)
        return 2
    finally:
        if args.debug_oracle:
            bisetops.set_oracle_checking(False)


if __name__ == "__main__":
    raise SystemExit(main())
