"""Command-line front end: ``biserial <command> ...``.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

from . import circular
from .errors import BiserialError, NonMonomialRelations, QuiverParseError
from .formats import (
    dumps,
    load_quiver,
    load_rep,
    parse_assignment_arg,
    parse_int_list,
    print_quiver,
    rep_to_json,
    summands_to_json,
)
from .krull_schmidt import decompose
from .linalg import QQ
from .quiver import (
    DimVector,
    Weight,
    check_complete_gentle,
    check_gentle,
    check_special_biserial,
    complete_gentle_closure,
    effective_cycles,
)
from .repvar import ComponentDescriptor, components, dim_component, presentation, sample_generic
from .stability import BAND_FAMILY, check_stability, moduli_structure
from .strings_bands import identify

DEFAULT_SEED = 20240611


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Report:
    text: str
    data: object

    def render(self, fmt: str) -> str:
        return dumps(self.data) if fmt == "json" else self.text


def _yes(v) -> str:
    return "yes" if v else "no"


def _dim_text(d: DimVector) -> str:
    return "(" + ",".join(f"{v}:{x}" for v, x in d.entries.items()) + ")"


def _load(args):
    return load_quiver(args.quiver)


def _dim_arg(args, qf) -> DimVector:
    if args.dim:
        return DimVector(parse_assignment_arg(args.dim))
    if qf.dim is None:
        raise UsageError("no dimension vector: pass --dim or add a 'dim' line to the quiver file")
    return qf.dim


def _theta_arg(args, qf) -> Weight:
    if args.theta:
        return Weight(parse_assignment_arg(args.theta))
    if qf.theta is None:
        raise UsageError("no weight: pass --theta or add a 'theta' line to the quiver file")
    return qf.theta


def _zero_arg(args) -> tuple[str, ...]:
    return tuple(x for x in (args.zero or "").replace(",", " ").split() if x)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> Report:
    bq = _load(args).bq
    try:
        sb = check_special_biserial(bq)
    except NonMonomialRelations:
        text = "special biserial: not decided (non-monomial relations); gentle: no; complete gentle: no"
        return Report(text, {"special_biserial": None, "gentle": False, "complete_gentle": False})
    g = check_gentle(bq)
    cg = check_complete_gentle(bq)
    lines = [f"special biserial: {_yes(sb)}; gentle: {_yes(g)}; complete gentle: {_yes(cg)}"]
    for label, v in (("special biserial", sb), ("gentle", g), ("complete gentle", cg)):
        if not v:
            lines.append(f"  {label}: {v}")
    data = {
        "quiver": bq.name,
        "kind": bq.kind,
        "special_biserial": bool(sb),
        "gentle": bool(g),
        "complete_gentle": bool(cg),
        "failures": {k: str(v) for k, v in (("special_biserial", sb), ("gentle", g), ("complete_gentle", cg)) if not v},
    }
    return Report("\n".join(lines), data)


def cmd_complete(args) -> Report:
    qf = _load(args)
    big = complete_gentle_closure(qf.bq)
    added = [a for a in big.arrows if a not in qf.bq.arrows]
    text = print_quiver(big).rstrip("\n")
    return Report(text, {"quiver": text + "\n", "added_arrows": added})


def cmd_cycles(args) -> Report:
    pres = presentation(_load(args).bq, _zero_arg(args))
    cycles = effective_cycles(pres.completion)
    lines = [" ".join(c) for c in cycles]
    return Report("\n".join(lines), {"cycles": [list(c) for c in cycles], "zero": sorted(pres.zero)})


def cmd_components(args) -> Report:
    qf = _load(args)
    d = _dim_arg(args, qf)
    comps = components(qf.bq, d, _zero_arg(args))
    lines = [f"{c}  dim {dim_component(c)}" for c in comps]
    data = [{"ranks": dict(c.ranks), "dimension": dim_component(c)} for c in comps]
    return Report("\n".join(lines), {"dim": d.entries, "components": data})


def cmd_dim(args) -> Report:
    n, r = parse_int_list(args.n), parse_int_list(args.r)
    value = circular.dim_comp(n, r)
    return Report(str(value), {"n": list(n), "r": list(r), "dim": value})


def cmd_count_points(args) -> Report:
    n, r = parse_int_list(args.n), parse_int_list(args.r)
    qs = parse_int_list(args.q)
    counts = {q: circular.count_points(n, r, q, budget=args.budget) for q in qs}
    lines = [f"q={q}: {c}" for q, c in counts.items()]
    return Report("\n".join(lines), {"n": list(n), "r": list(r), "counts": {str(q): c for q, c in counts.items()}})


def cmd_degenerate(args) -> Report:
    n, r, rt = parse_int_list(args.n), parse_int_list(args.r), parse_int_list(args.to)
    at1 = circular.degeneration_path(n, r, rt, 1)
    at0 = circular.degeneration_path(n, r, rt, 0)
    lines = []
    mats = {}
    for a in at1.bq.arrows:
        m1, m0 = at1.mats[a], at0.mats[a]
        rows = [
            ["lam" if m1[i, j] != m0[i, j] else QQ.to_str(m1[i, j]) for j in range(m1.cols)]
            for i in range(m1.rows)
        ]
        mats[a] = rows
        lines.append(f"{a} = [" + ", ".join("[" + ", ".join(row) + "]" for row in rows) + "]")
    seq1 = tuple(at1.rank_sequence()[a] for a in at1.bq.arrows)
    seq0 = tuple(at0.rank_sequence()[a] for a in at0.bq.arrows)
    lines.append(f"rank sequence at lam != 0: {seq1}")
    lines.append(f"rank sequence at lam = 0: {seq0}")
    return Report("\n".join(lines), {"matrices": mats, "ranks_generic": list(seq1), "ranks_special": list(seq0)})


def _component_from_ranks(bq, d: DimVector, ranks: dict[str, int], zero) -> ComponentDescriptor:
    pres = presentation(bq, zero)
    full = {a: 0 for a in pres.completion.arrows}
    unknown = set(ranks) - set(full)
    if unknown:
        raise UsageError(f"unknown arrows in --rank: {sorted(unknown)}")
    full.update(ranks)
    return ComponentDescriptor(pres, d, tuple(full.items()))


def cmd_decompose(args) -> Report:
    qf = _load(args)
    if args.module:
        m = load_rep(qf.bq, args.module)
        if m.field is not QQ:
            raise UsageError("decompose needs a module over Q")
    else:
        if not args.rank:
            raise UsageError("pass --module or --rank")
        d = _dim_arg(args, qf)
        c = _component_from_ranks(qf.bq, d, parse_assignment_arg(args.rank), _zero_arg(args))
        m = sample_generic(c, args.seed)
    summands = decompose(m, args.seed)
    labels = [identify(s.rep, seed=args.seed).text() for s in summands]
    lines = []
    for s, lab in zip(summands, labels):
        extra = f" (splits into {s.degree} over an algebraic closure)" if s.degree > 1 else ""
        lines.append(f"{s.multiplicity} x {lab}  dim={_dim_text(s.rep.dim)}{extra}")
    data = summands_to_json(summands, labels)
    data["input"] = rep_to_json(m)
    return Report("\n".join(lines), data)


def cmd_stability(args) -> Report:
    qf = _load(args)
    m = load_rep(qf.bq, args.module)
    theta = _theta_arg(args, qf)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        v = check_stability(m, theta, parse_int_list(args.primes), args.subspace_budget)
    text = v.status
    if v.witness is not None:
        text += f" (witness {_dim_text(v.witness)})"
    lines = [text] + [f"  warning: {w}" for w in v.warnings]
    data = {
        "status": v.status,
        "witness": None if v.witness is None else v.witness.entries,
        "primes": list(v.primes),
        "per_prime": {str(p): s for p, s in v.per_prime},
        "warnings": list(v.warnings),
    }
    return Report("\n".join(lines), data)


def cmd_moduli(args) -> Report:
    qf = _load(args)
    d = _dim_arg(args, qf)
    theta = _theta_arg(args, qf)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        results = moduli_structure(qf.bq, d, theta, args.seed, _zero_arg(args), parse_int_list(args.primes))
    lines, data = [], []
    for c, ms, dec in results:
        tail = f"  (dim {ms.dimension})" if ms.computed else ""
        lines.append(f"{c}  ->  {ms.text()}{tail}")
        factors = []
        if dec is not None:
            for note in dec.notes:
                lines.append(f"    {note}")
            for f in dec.factors:
                if f.kind == BAND_FAMILY:
                    tag = f"[band family, contributes P^{f.multiplicity}]"
                else:
                    tag = "[orbit closure dropped]"
                lines.append(f"    {f.multiplicity} x {f.label} dim={_dim_text(f.dim)} {tag}")
                factors.append({"kind": f.kind, "label": f.label, "dim": f.dim.entries, "multiplicity": f.multiplicity})
        data.append({
            "ranks": dict(c.ranks),
            "moduli": ms.text(),
            "exponents": list(ms.exponents),
            "dimension": ms.dimension if ms.computed else None,
            "factors": factors,
        })
    return Report("\n".join(lines), {"dim": d.entries, "theta": theta.entries, "components": data})


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="biserial", description="Representation varieties and moduli of gentle algebras.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def quiver_cmd(name, func, help_text):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("quiver", help="quiver file")
        s.set_defaults(func=func)
        return s

    quiver_cmd("validate", cmd_validate, "check the special biserial / gentle axioms")
    quiver_cmd("complete", cmd_complete, "print a complete gentle completion")
    s = quiver_cmd("cycles", cmd_cycles, "effective oriented cycles of the completion")
    s.add_argument("--zero", help="zero arrows when the input is already complete gentle")
    s = quiver_cmd("components", cmd_components, "irreducible components of rep(A, d)")
    s.add_argument("--dim")
    s.add_argument("--zero")
    s = quiver_cmd("decompose", cmd_decompose, "Krull-Schmidt decomposition of a module or generic point")
    s.add_argument("--dim")
    s.add_argument("--rank", help="arrow=rank list of the component (missing arrows are 0)")
    s.add_argument("--module", help="representation JSON")
    s.add_argument("--zero")
    s = quiver_cmd("stability", cmd_stability, "King stability of a module")
    s.add_argument("--module", required=True)
    s.add_argument("--theta")
    s.add_argument("--primes", default="2,3,5")
    s.add_argument("--subspace-budget", type=int, default=2_000_000)
    s = quiver_cmd("moduli", cmd_moduli, "moduli structure of each component")
    s.add_argument("--dim")
    s.add_argument("--theta")
    s.add_argument("--zero")
    s.add_argument("--primes", default="2,3,5")

    s = sub.add_parser("dim", parents=[common], help="dimension of Comp(n, r)")
    s.add_argument("--n", required=True)
    s.add_argument("--r", required=True)
    s.set_defaults(func=cmd_dim)
    s = sub.add_parser("count-points", parents=[common], help="points of Comp(n, r) over F_q")
    s.add_argument("--n", required=True)
    s.add_argument("--r", required=True)
    s.add_argument("--q", default="2,3,5")
    s.add_argument("--budget", type=int, default=circular.DEFAULT_COUNT_BUDGET)
    s.set_defaults(func=cmd_count_points)
    s = sub.add_parser("degenerate", parents=[common], help="degeneration witness between rank sequences")
    s.add_argument("--n", required=True)
    s.add_argument("--r", required=True)
    s.add_argument("--to", required=True)
    s.set_defaults(func=cmd_degenerate)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """``(exit code, stdout, stderr)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = args.func(args)
    except UsageError as e:
        return 2, "", f"usage error: {e}\n"
    except QuiverParseError as e:
        return 2, "", f"error: {e}\n"
    except (OSError, ValueError) as e:
        return 2, "", f"usage error: {e}\n"
    except BiserialError as e:
        return 1, "", f"error: {e}\n"
    return 0, report.render(args.format) + "\n", ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
