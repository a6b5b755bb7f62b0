"""Command-line interface.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
JSON output is canonical (sorted keys, fixed indentation) so identical
invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from ghostnum.bounds import classify, ghost_bounds
from ghostnum.catalog import build, default_cap, parse_spec
from ghostnum.errors import BudgetExceeded, GhostNumError
from ghostnum.groups import prime_power, structural_subgroups
from ghostnum.jennings import t_index
from ghostnum.radical import nilpotency_index_radical
from ghostnum.stmod import ghost_chain_search
from ghostnum.verify import CHECK_NAMES, verify_theorems

SCHEMA_VERSION = "1"
CAP_WARNING = 512


def dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def make_report(command: dict, items: list, summary: dict | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "items": items,
        "summary": summary or {},
    }


def _cap(args, p: int) -> int:
    if args.cap_order is None:
        return default_cap(p)
    if args.cap_order > CAP_WARNING:
        print(f"warning: --cap-order {args.cap_order} is above {CAP_WARNING}; expect long runtimes",
              file=sys.stderr)
    return args.cap_order


def cmd_info(args) -> tuple[dict, int]:
    spec = parse_spec(args.spec)
    G = build(spec)
    st = structural_subgroups(G)
    item = {
        "spec": str(spec),
        "order": G.order,
        "p": G.p,
        "n": G.n,
        "exponent": st.exponent,
        "subgroup_orders": {
            "center": st.center.order,
            "derived": st.derived.order,
            "frattini": st.frattini.order,
            "omega1_center": st.omega1_center.order,
        },
        "flags": classify(G).to_dict(),
    }
    return make_report({"name": "info", "spec": args.spec}, [item]), 0


def cmd_tindex(args) -> tuple[dict, int]:
    spec = parse_spec(args.spec)
    G = build(spec)
    item: dict = {"spec": str(spec), "order": G.order}
    if args.oracle in ("jennings", "both"):
        item["t_jennings"] = t_index(G)
    if args.oracle in ("radical", "both"):
        item["t_radical"] = nilpotency_index_radical(G, _cap(args, G.p))
    code = 0
    if args.oracle == "both":
        item["agree"] = item["t_jennings"] == item["t_radical"]
        code = 0 if item["agree"] else 1
    summary = {"pass": int(code == 0), "fail": int(code != 0), "skip": 0}
    return make_report({"name": "tindex", "spec": args.spec, "oracle": args.oracle}, [item], summary), code


def cmd_bounds(args) -> tuple[dict, int]:
    spec = parse_spec(args.spec)
    G = build(spec)
    R = ghost_bounds(G, str(spec), radical=args.radical, cap=_cap(args, G.p))
    code = 0
    if R.t_radical is not None and R.t_radical != R.t_jennings:
        code = 1
    return make_report({"name": "bounds", "spec": args.spec, "radical": args.radical}, [R.to_dict()]), code


def cmd_verify(args) -> tuple[dict, int]:
    report = verify_theorems(args.p, args.max_n, cap=_cap(args, args.p), jobs=args.jobs, radical=args.radical)
    payload = make_report(
        {"name": "verify", "p": args.p, "max_n": args.max_n, "radical": args.radical},
        [g.to_dict() for g in report.groups],
        report.counts(),
    )
    payload["sweep_checks"] = [c.to_dict() for c in report.sweep_checks]
    return payload, 0 if report.ok else 1


def cmd_ghost_chain(args) -> tuple[dict, int]:
    pp = prime_power(args.m)
    if pp is None:
        raise GhostNumError(f"--m {args.m} is not a prime power")
    target = args.m // 2
    command = {"name": "ghost-chain", "m": args.m, "L": args.L, "budget": args.budget,
               "certify_exact": args.certify_exact}
    try:
        cert = ghost_chain_search(args.m, args.L, args.budget, node_budget=args.node_budget)
    except BudgetExceeded as exc:
        item = {
            "found": False,
            "exhaustive": getattr(exc, "exhaustive", False),
            "message": str(exc),
            "certified_bound": 1,
            "target": target,
        }
        code = 1 if args.certify_exact and target != 1 else 0
        return make_report(command, [item], {"pass": int(code == 0), "fail": int(code != 0), "skip": 0}), code
    item = {"found": True, "target": target, **cert.to_dict()}
    code = 1 if args.certify_exact and cert.certified_bound != target else 0
    return make_report(command, [item], {"pass": int(code == 0), "fail": int(code != 0), "skip": 0}), code


def verify_csv(payload: dict) -> str:
    buf = io.StringIO()
    checks = sorted(CHECK_NAMES)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["spec", "order", "t", "ghost_lower", "ghost_upper", "ghost_exact", *checks])
    for item in payload["items"]:
        b = item["bounds"]
        status = {c["check"]: c["status"] for c in item["checks"]}
        writer.writerow([item["spec"], b["order"], b["t_jennings"], b["ghost_lower"], b["ghost_upper"],
                         "" if b["ghost_exact"] is None else b["ghost_exact"],
                         *(status.get(c, "") for c in checks)])
    return buf.getvalue()


def verify_markdown(payload: dict) -> str:
    s = payload["summary"]
    lines = [
        f"# Verification p = {payload['command']['p']}, n <= {payload['command']['max_n']}",
        "",
        f"pass {s['pass']}, fail {s['fail']}, skip {s['skip']}",
        "",
        "| group | order | t | ghost number | failed checks |",
        "|---|---|---|---|---|",
    ]
    for item in payload["items"]:
        b = item["bounds"]
        ghost = str(b["ghost_exact"]) if b["ghost_exact"] is not None else f"[{b['ghost_lower']}, {b['ghost_upper']}]"
        failed = ",".join(c["check"] for c in item["checks"] if c["status"] == "fail") or "-"
        lines.append(f"| {item['spec']} | {b['order']} | {b['t_jennings']} | {ghost} | {failed} |")
    for c in payload.get("sweep_checks", []):
        lines.append("")
        lines.append(f"check {c['check']} ({c['status']}): {c['detail']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghostnum", description=__doc__.splitlines()[0])
    parser.add_argument("--cap-order", type=int, default=None,
                        help="override the default group-order cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="order, structural subgroups and classification")
    p.add_argument("spec")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("tindex", help="nilpotency index of the radical")
    p.add_argument("spec")
    p.add_argument("--oracle", choices=["jennings", "radical", "both"], default="jennings")
    p.set_defaults(func=cmd_tindex)

    p = sub.add_parser("bounds", help="ghost-number interval with provenance")
    p.add_argument("spec")
    p.add_argument("--radical", action="store_true", help="also run the radical oracle")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="check every inequality over the catalog")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--radical", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ghost-chain", help="certify a ghost-number lower bound for a cyclic group")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--budget", type=int, default=1, help="max Jordan blocks per module")
    p.add_argument("--node-budget", type=int, default=5000)
    p.add_argument("--certify-exact", action="store_true")
    p.set_defaults(func=cmd_ghost_chain)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except (GhostNumError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        sys.stdout.write(verify_csv(payload))
    elif fmt == "md":
        sys.stdout.write(verify_markdown(payload))
    else:
        sys.stdout.write(dump_json(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
