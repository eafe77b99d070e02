"""Batch front end.

Exit codes: 0 success, 1 a verification reported failure, 2 usage or input
error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import cayley, cyclic, freegrp, partition
from .errors import (
    AmbientMismatch,
    CapExceeded,
    GroundSubgroupError,
    InvalidPartition,
    OrderCapExceeded,
)
from .groupcore import (
    DEFAULT_ORDER_CAP,
    Mode,
    Word,
    format_word,
    make_cyclic,
    make_from_table,
    parse_word_list,
)
from .partition import PartitionVector

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunSpec:
    command: str
    params: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)
    fmt: str = "json"
    figures: str | None = None

    def argv(self) -> list[str]:
        """Canonical command line reproducing this run."""
        out = [self.command]
        action = None
        for key, value in self.params.items():
            if key == "action":
                action = value
                continue
            if value is None or value is False:
                continue
            flag = "--" + key.replace("_", "-")
            if value is True:
                out.append(flag)
            else:
                out += [flag, str(value)]
        for key, value in self.caps.items():
            out += ["--" + key.replace("_", "-"), str(value)]
        out += ["--format", self.fmt]
        if self.figures:
            out += ["--figures", self.figures]
        if action:
            out.append(action["name"])
            for key, value in action.items():
                if key != "name" and value is not None:
                    out += ["--" + key.replace("_", "-"), str(value)]
        return out


# ---------------------------------------------------------------------------
# argument parsing


def _partition(text: str) -> PartitionVector:
    try:
        return PartitionVector.parse(text)
    except GroundSubgroupError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "tsv"], default="json")
    common.add_argument("--figures", metavar="DIR", help="write figures into DIR")
    common.add_argument("--order-cap", type=_positive)
    common.add_argument("--state-cap", type=_positive)
    common.add_argument("--subset-cap", type=_positive)

    def set_inputs(p, required=True):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--set", dest="set_text", metavar="ELEMS")
        g.add_argument("--set-file", metavar="PATH")

    parser = argparse.ArgumentParser(prog="groundsub", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cyclic", parents=[common], help="ground subgroups of Z_n")
    p.add_argument("--n", type=_positive, required=True)
    set_inputs(p)
    p.add_argument("--k", type=_partition, required=True)

    p = sub.add_parser("zline", parents=[common], help="subgroups pZ of the integers")
    set_inputs(p)
    p.add_argument("--k", type=_partition)
    p.add_argument("--pmax", type=_positive, default=50)
    p.add_argument("--prop4", type=int, metavar="Q", help="check the nearest-neighbour obstruction")

    p = sub.add_parser("finite", parents=[common], help="ground subgroups of a Cayley-table group")
    p.add_argument("--table", required=True, metavar="PATH")
    set_inputs(p)
    p.add_argument("--k", type=_partition, required=True)

    p = sub.add_parser("sweep", parents=[common], help="ground sets for every partition vector")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_positive)
    g.add_argument("--table", metavar="PATH")
    set_inputs(p)

    p = sub.add_parser("free", parents=[common], help="separating subgroups of free groups")
    p.add_argument("--gens", type=_positive)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="free")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--set", dest="set_text", metavar="WORDS")
    g.add_argument("--set-file", metavar="PATH")
    g.add_argument("--avoid", metavar="WORDS")
    p.add_argument("--construct", choices=["HA", "Hx"], default="HA")
    p.add_argument("--bounds", action="store_true")

    p = sub.add_parser("tree", parents=[common], help="Potts-like model on a Cayley tree")
    p.add_argument("--k", type=int, required=True, help="tree order (>= 2)")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--R", type=_positive)
    p.add_argument("--q", type=_positive)
    p.add_argument("--J", type=Fraction)
    actions = p.add_subparsers(dest="action", required=True)
    actions.add_parser("verify")
    a = actions.add_parser("ground-subgroup")
    a.add_argument("--method", choices=["stabilizer", "kernel"], default="stabilizer")
    a.add_argument("--degree", type=_positive)
    return parser


def _read_set_text(ns) -> str:
    if getattr(ns, "set_file", None):
        with open(ns.set_file) as fh:
            return ",".join(line.strip() for line in fh if line.strip())
    return ns.set_text


def parse_args(argv: list[str]) -> RunSpec:
    ns = _build_parser().parse_args(argv)
    caps = {k: getattr(ns, k) for k in ("order_cap", "state_cap", "subset_cap")
            if getattr(ns, k) is not None}
    spec = RunSpec(ns.command, caps=caps, fmt=ns.format, figures=ns.figures)
    cmd, params = ns.command, spec.params
    if cmd == "cyclic":
        params.update(n=ns.n, set=_canonical_ints(_read_set_text(ns)), k=str(ns.k))
    elif cmd == "zline":
        params.update(set=_canonical_ints(_read_set_text(ns)),
                      k=None if ns.k is None else str(ns.k), pmax=ns.pmax, prop4=ns.prop4)
        if ns.k is None and ns.prop4 is None:
            _usage("zline needs --k and/or --prop4")
    elif cmd == "finite":
        params.update(table=ns.table, set=_canonical_ints(_read_set_text(ns)), k=str(ns.k))
    elif cmd == "sweep":
        params.update(n=ns.n, table=ns.table, set=_canonical_ints(_read_set_text(ns)))
    elif cmd == "free":
        mode = Mode(ns.mode)
        text = ns.avoid if ns.avoid is not None else _read_set_text(ns)
        try:
            words = parse_word_list(text, mode)
        except GroundSubgroupError as exc:
            _usage(str(exc))
        canon = ",".join(format_word(w) for w in words)
        params.update(gens=ns.gens, mode=ns.mode)
        if ns.avoid is not None:
            params["avoid"] = canon
        else:
            params.update(set=canon, construct=ns.construct, bounds=ns.bounds)
    elif cmd == "tree":
        params.update(k=ns.k, r=ns.r, R=ns.R, q=ns.q, J=None if ns.J is None else str(ns.J))
        if ns.action == "verify":
            missing = [f for f in ("R", "q", "J") if getattr(ns, f) is None]
            if missing:
                _usage("tree verify needs " + ", ".join("--" + f for f in missing))
            if ns.J == 0:
                _usage("--J must be nonzero")
            params["action"] = {"name": "verify"}
        else:
            params["action"] = {"name": "ground-subgroup", "method": ns.method,
                                "degree": ns.degree}
    return spec


class _Usage(Exception):
    pass


def _usage(message: str):
    raise _Usage(message)


def _canonical_ints(text: str) -> str:
    try:
        return ",".join(str(x) for x in _int_list(text))
    except argparse.ArgumentTypeError as exc:
        _usage(str(exc))


# ---------------------------------------------------------------------------
# commands


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def _subgroup_entry(H) -> dict:
    return {"index": H.index(), "order": H.order, "elements": H.describe()}


def _load_table(path: str):
    with open(path) as fh:
        rows = [[int(x) for x in line.replace(",", " ").split()]
                for line in fh if line.strip() and not line.lstrip().startswith("#")]
    return make_from_table(rows, name=path)


def _group(params):
    if params.get("table"):
        return _load_table(params["table"])
    return make_cyclic(params["n"])


def _cmd_cyclic(spec: RunSpec, report: dict) -> int:
    p = spec.params
    A, k = _ints(p["set"]), PartitionVector.parse(p["k"])
    if any(not 0 <= a < p["n"] for a in A):
        raise AmbientMismatch(f"set elements must lie in 0..{p['n'] - 1}")
    res = cyclic.cyclic_report(p["n"], A, k)
    report["m"], report["norm"] = k.m, k.norm
    report["candidates"] = res["candidates"]
    report["ground"] = [_subgroup_entry(H) for H in res["ground"]]
    report["r0"] = res["r0"]
    return EXIT_OK


def _cmd_finite(spec: RunSpec, report: dict) -> int:
    p = spec.params
    G = _load_table(p["table"])
    A, k = _ints(p["set"]), PartitionVector.parse(p["k"])
    subs = partition.enumerate_subgroups(G)
    ground = partition.ground_set(G, A, k, subgroups=subs)
    report["order"] = G.order
    report["subgroup_count"] = len(subs)
    report["ground"] = [_subgroup_entry(H) for H in ground]
    report["r0"] = min((H.index() for H in ground), default=None)
    return EXIT_OK


def _cmd_sweep(spec: RunSpec, report: dict) -> int:
    G = _group(spec.params)
    A = _ints(spec.params["set"])
    blocks = []
    for k, ground in partition.ground_sweep(G, A):
        blocks.append({
            "k": str(k),
            "ground": [_subgroup_entry(H) for H in ground],
            "r0": min((H.index() for H in ground), default=None),
            "status": "nonempty" if ground else "empty",
        })
    report["order"] = G.order
    report["subgroups"] = [_subgroup_entry(H) for H in partition.enumerate_subgroups(G)]
    report["blocks"] = blocks
    if spec.figures:
        from .plotting import plot_sweep
        report["figures"] = [plot_sweep(blocks, spec.figures)]
    return EXIT_OK


def _cmd_zline(spec: RunSpec, report: dict) -> int:
    p = spec.params
    A = _ints(p["set"])
    code = EXIT_OK
    figures = []
    if p["k"] is not None:
        k = PartitionVector.parse(p["k"])
        moduli = cyclic.ground_moduli(A, k, p["pmax"])
        report["ground_moduli"] = moduli
        report["r0_upper"] = min(moduli, default=None)
        if spec.figures:
            from .plotting import plot_moduli
            figures.append(plot_moduli(A, p["k"], moduli, p["pmax"], spec.figures))
    if p["prop4"] is not None:
        cap = spec.caps.get("subset_cap", cyclic.DEFAULT_SUBSET_CAP)
        res = cyclic.prop4_verify(A, p["prop4"], cap)
        report["prop4"] = {
            "q": res.q,
            "passed": res.passed,
            "vacuous": res.vacuous,
            "partitions": [str(k) for k in res.partitions],
            "max_modulus": res.max_modulus,
            "checks": res.checks,
            "counterexample": None if res.counterexample is None
            else {"k": str(res.counterexample[0]), "p": res.counterexample[1]},
        }
        if not res.passed:
            code = EXIT_FAILED
    if figures:
        report["figures"] = figures
    return code


def _cmd_free(spec: RunSpec, report: dict) -> int:
    p = spec.params
    mode = Mode(p["mode"])
    cap = spec.caps.get("order_cap", DEFAULT_ORDER_CAP)
    code = EXIT_OK
    if p.get("avoid") is not None:
        B = parse_word_list(p["avoid"], mode)
        H = freegrp.avoid_set(B, p["gens"])
        ident = H.coset_id(Word.identity(mode))
        avoided = all(H.coset_id(b) != ident for b in B)
        report["degree"] = H.rep.degree
        report["index"] = _index_or_cap(H, cap)
        report["avoids"] = avoided
        return EXIT_OK if avoided else EXIT_FAILED
    A = parse_word_list(p["set"], mode)
    if p["construct"] == "Hx":
        if len(A) != 1:
            raise InvalidPartition("--construct Hx takes exactly one word")
        H = freegrp.build_Hx(A[0], p["gens"])
        bounds = freegrp.index_bounds(A[0])
        report["word"] = format_word(A[0])
        report["degree"] = H.rep.degree
        report["moves_1_to"] = H.coset_id(A[0])(1)
    else:
        c = freegrp.build_HA(A, p["gens"])
        H, bounds = c.handle, c.bounds
        report["star"] = [format_word(z) for z in c.star]
        report["degree"] = c.degree
        prof = partition.coset_profile(H, A)
        report["profile"] = sorted(prof.counts.values())
        report["ones_ground"] = freegrp.verify_ones_ground(H, A)
        if not report["ones_ground"]:
            code = EXIT_FAILED
    index = _index_or_cap(H, cap)
    report["index"] = index
    if p["bounds"] or p["construct"] == "Hx":
        report["bounds"] = [str(bounds[0]), str(bounds[1])]
        if index != "cap exceeded":
            report["within_bounds"] = {"lower": bounds[0] <= int(index),
                                       "upper": int(index) <= bounds[1]}
        if spec.figures:
            from .plotting import plot_index_bounds
            idx = None if index == "cap exceeded" else int(index)
            report["figures"] = [plot_index_bounds(bounds[0], bounds[1], idx, spec.figures)]
    return code


def _index_or_cap(H, cap):
    try:
        return str(H.index(cap))
    except OrderCapExceeded:
        return "cap exceeded"


def _cmd_tree(spec: RunSpec, report: dict) -> int:
    p = spec.params
    ctx = cayley.TreeContext(p["k"])
    action = p["action"]
    order_cap = spec.caps.get("order_cap", DEFAULT_ORDER_CAP)
    report["K"] = cayley.ball_size(p["k"], p["r"])
    if action["name"] == "ground-subgroup":
        members = cayley.ball(ctx, ctx.identity(), p["r"]).members
        if action["method"] == "stabilizer":
            d = action["degree"] or report["K"]
            H = cayley.stabilizer_ground_search(ctx, p["r"], d)
            if H is None:
                report["found"] = False
                return EXIT_FAILED
            report["found"] = True
            report["index"] = str(H.index())
        else:
            H = cayley.build_ball_ground_subgroup(ctx, p["r"]).handle
            report["degree"] = H.rep.degree
            report["index"] = _index_or_cap(H, order_cap)
        report["subgroup"] = H.describe()
        report["coset_ids"] = {format_word(w): str(H.coset_id(w)) for w in members}
        report["ones_ground"] = freegrp.verify_ones_ground(H, members)
        return EXIT_OK if report["ones_ground"] else EXIT_FAILED
    res = cayley.verify_theorem3(
        ctx, p["r"], p["R"], p["q"], Fraction(p["J"]),
        state_cap=spec.caps.get("state_cap", cayley.DEFAULT_STATE_CAP),
        order_cap=order_cap)
    report.update({
        "min_energy": str(res.min_energy),
        "minimizer_count": res.minimizer_count,
        "constructed_count": res.constructed_count,
        "formula_count": None if res.formula_count is None else str(res.formula_count),
        "pass": res.passed,
        "method": res.method,
        "subgroup": res.subgroup,
        "index": None if res.index is None else str(res.index),
        "notes": res.notes,
        "counterexample": None if res.counterexample is None else list(res.counterexample),
    })
    if spec.figures:
        from .plotting import plot_energy_histogram
        report["figures"] = [plot_energy_histogram(res.energy_histogram, res.min_energy,
                                                   spec.figures)]
    return EXIT_OK if res.passed else EXIT_FAILED


COMMANDS = {
    "cyclic": _cmd_cyclic,
    "zline": _cmd_zline,
    "finite": _cmd_finite,
    "sweep": _cmd_sweep,
    "free": _cmd_free,
    "tree": _cmd_tree,
}


# ---------------------------------------------------------------------------
# output


def _scalar(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return " ".join(f"{k}={_scalar(v)}" for k, v in value.items())
    if isinstance(value, list):
        sep = "|" if any(isinstance(v, (dict, list)) for v in value) else ","
        return sep.join(_scalar(v) for v in value)
    return str(value)


def to_tsv(report: dict) -> str:
    lines = []
    tables = []
    for key, value in report.items():
        if key == "command":
            lines.append(f"command\t{shlex.join(value)}")
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            tables.append((key, value))
        elif isinstance(value, dict):
            for sub, v in value.items():
                lines.append(f"{key}.{sub}\t{_scalar(v)}")
        else:
            lines.append(f"{key}\t{_scalar(value)}")
    for key, rows in tables:
        cols = list(rows[0])
        lines += ["", f"# {key}", "\t".join(cols)]
        for row in rows:
            lines.append("\t".join(_scalar(row.get(c)) for c in cols))
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "tsv":
        return to_tsv(report)
    return json.dumps(report, indent=2) + "\n"


def run(spec: RunSpec) -> tuple[int, str]:
    """Execute a parsed run; returns the exit code and the report text."""
    report: dict = {"command": spec.argv()}
    code = COMMANDS[spec.command](spec, report)
    return code, render(report, spec.fmt)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        spec = parse_args(argv)
        code, text = run(spec)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    except _Usage as exc:
        print(f"groundsub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return EXIT_CAP
    except GroundSubgroupError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
