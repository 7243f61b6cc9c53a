"""Command-line interface: ``fockcb <command> [flags]``.

Exit status is 0 on success, 2 for bad input (including violated
preconditions such as a partition that is not k-empty) and 1 when a
verification reports failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import __version__
from .abacus import AbacusError, beta_set, core_and_weight, n_rk, remove_runner, ux
from .blocks import BlockId, ScopesError, d_set, enumerate_block, scopes_reduce
from .canonical import CanonicalEngine, sort_by_dominance
from .laurent import LaurentPoly
from .mullineux import (
    MullineuxError,
    check_mull_characterization,
    mullineux,
    mullineux_conjugate,
    strip_rim,
    welk_oracle,
)
from .partitions import Partition, format_partition, is_e_regular, parse_partition
from .verify import SUITES
from .wedge import bar_standard

SCHEMA = 1
ORACLE_CHECK_LIMIT = 120  # largest block size for which `mull --check` also runs the top-degree oracle


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _poly_json(p: LaurentPoly) -> dict:
    return {"text": str(p), "terms": p.to_json()}


def _check_e(e: int) -> None:
    if e < 2:
        raise UsageError(f"e must be at least 2 (got {e})")


def _check_k(e: int, k: int) -> None:
    if not 0 <= k < e:
        raise UsageError(f"k must lie in 0..{e - 1} (got {k})")


# -- commands --------------------------------------------------------------------


def cmd_decomp(a):
    _check_e(a.e)
    val = CanonicalEngine(a.e).q_decomp(a.la, a.mu, interval=True)
    data = {"e": a.e, "lambda": format_partition(a.la), "mu": format_partition(a.mu),
            "value": _poly_json(val), "at_q_equals_1": val.at_one()}
    return data, str(val)


def cmd_bar(a):
    _check_e(a.e)
    col = bar_standard(a.mu, a.e, a.r)
    rows = sorted(col.items(), key=lambda t: t[0], reverse=True)
    data = {"e": a.e, "mu": format_partition(a.mu), "r": a.r if a.r is not None else sum(a.mu) + a.e,
            "coefficients": [{"lambda": format_partition(la), "value": _poly_json(c)} for la, c in rows]}
    text = "\n".join(f"{format_partition(la)}\t{c}" for la, c in rows)
    return data, text


def cmd_block(a):
    _check_e(a.e)
    blk = BlockId(a.e, a.core, a.weight)
    if not a.matrix:
        members = sort_by_dominance(enumerate_block(blk), a.e, blk.size + a.e)
        data = {"e": a.e, "core": format_partition(blk.core), "weight": a.weight,
                "members": [format_partition(la) for la in members]}
        return data, "\n".join(data["members"])
    mat = CanonicalEngine(a.e).decomposition_matrix(blk.core, a.weight)
    labels = [format_partition(la) for la in mat.members]
    data = {"e": a.e, "core": format_partition(blk.core), "weight": a.weight, "labels": labels,
            "entries": [[str(x) for x in row] for row in mat.entries]}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + labels)
    for lab, row in zip(labels, data["entries"]):
        w.writerow([lab] + row)
    return data, buf.getvalue().rstrip("\n")


def cmd_mull(a):
    _check_e(a.e)
    if not is_e_regular(a.mu, a.e):
        raise UsageError(f"{format_partition(a.mu)} is not {a.e}-regular")
    img = mullineux_conjugate(a.mu, a.e) if a.conjugate else mullineux(a.mu, a.e)
    data = {"e": a.e, "mu": format_partition(a.mu), "conjugate": a.conjugate, "image": format_partition(img)}
    lines = [format_partition(img)]
    if a.mu:
        s = strip_rim(a.mu, a.e, a.r)
        data["rim"] = {"r": s.r, "pairs": [list(p) for p in s.pairs], "length": s.rim_length,
                       "result": format_partition(s.result)}
    if a.check:
        mc = mullineux_conjugate(a.mu, a.e)
        ok = check_mull_characterization(a.mu, mc, a.e)
        data["characterization"] = ok
        lines.append(f"characterization: {'ok' if ok else 'FAILED'}")
        size = len(enumerate_block(BlockId(a.e, *core_and_weight(a.mu, a.e))))
        if size <= ORACLE_CHECK_LIMIT:
            other = welk_oracle(a.mu, a.e, engine=CanonicalEngine(a.e))
            data["top_degree_oracle"] = format_partition(other)
            data["oracle_agrees"] = other == mc
            ok = ok and other == mc
            lines.append(f"top-degree oracle: {format_partition(other)} ({'agrees' if other == mc else 'DISAGREES'})")
        data["ok"] = ok
    return data, "\n".join(lines)


def cmd_remove_runner(a):
    _check_e(a.e)
    _check_k(a.e, a.k)
    out = remove_runner(a.la, a.e, a.k)
    if a.r is not None and remove_runner(a.la, a.e, a.k, a.r) != out:
        raise RuntimeError("runner removal depends on r; this is a bug")
    data = {"e": a.e, "k": a.k, "lambda": format_partition(a.la), "result": format_partition(out)}
    return data, format_partition(out)


def cmd_ux(a):
    _check_e(a.e)
    _check_k(a.e, a.k)
    r = a.r if a.r is not None else len(a.la)
    val = ux(a.la, a.e, a.k, r)
    data = {"e": a.e, "k": a.k, "lambda": format_partition(a.la), "r": r, "U": val,
            "n_rk": n_rk(a.la, a.e, a.k, r)}
    return data, str(val)


def cmd_core(a):
    _check_e(a.e)
    core, w = core_and_weight(a.la, a.e)
    B = beta_set(a.la, a.r)
    data = {"e": a.e, "lambda": format_partition(a.la), "core": format_partition(core), "weight": w,
            "beta_set": B.to_json()}
    return data, f"core {format_partition(core)}\nweight {w}\nbeta {' '.join(map(str, B.entries))}"


def cmd_dset(a):
    _check_e(a.e)
    res = d_set(a.e, a.weight, a.max_core_size, a.max_classes)
    values = sorted(res.values, key=lambda p: p.sort_key())
    data = {"e": a.e, "weight": a.weight, "max_core_size": a.max_core_size, "strategy": res.strategy,
            "representatives": [format_partition(b.core) for b in res.representatives],
            "values": [_poly_json(v) for v in values]}
    return data, "\n".join(str(v) for v in values)


def cmd_scopes(a):
    _check_e(a.e)
    tr = scopes_reduce(BlockId(a.e, a.core, a.weight), trace=True)
    steps = [{"k": mv.k, "removed": mv.a, "core": format_partition(b.core)} for mv, b in tr.steps]
    data = {"e": a.e, "weight": a.weight, "start": format_partition(a.core),
            "result": format_partition(tr.result.core), "steps": steps, "strategy": tr.strategy}
    lines = [format_partition(a.core)] + [f"-{s['k']} ({s['removed']} nodes) -> {s['core']}" for s in steps]
    return data, "\n".join(lines)


def cmd_verify(a):
    fn = SUITES[a.suite]
    kwargs = {"threads": a.threads, "sample": a.sample, "seed": a.seed}
    if a.suite == "mullineux":
        kwargs.update(e_range=tuple(a.e_range or (2, 3, 4)), size_max=a.size_max)
    elif a.suite == "descent":
        kwargs.update(core_size_max=a.core_size_max if a.core_size_max is not None else 3)
    else:
        if a.e_range:
            kwargs["e_range"] = tuple(a.e_range)
        if a.weight_max is not None:
            kwargs["weight_max"] = a.weight_max
        if a.core_size_max is not None:
            kwargs["core_size_max"] = a.core_size_max
    rep = fn(**kwargs)
    text = "\n".join([rep.summary()] + rep.failures)
    return rep.to_json(), text


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--r", type=int, default=None,
                        help="bead count for abacus displays (results do not depend on it)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(
        prog="fockcb",
        description="q-decomposition numbers, runner removal and the Mullineux map. "
                    "Partitions are written 4,2,1 with 0 for the empty partition.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("decomp", parents=[common], help="one q-decomposition number d_{lambda,mu}(q)")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--lambda", dest="la", type=_partition, required=True)
    s.add_argument("--mu", type=_partition, required=True)
    s.set_defaults(func=cmd_decomp)

    s = sub.add_parser("bar", parents=[common], help="bar involution of a standard basis vector")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--mu", type=_partition, required=True)
    s.set_defaults(func=cmd_bar)

    s = sub.add_parser("block", parents=[common], help="block members or decomposition matrix")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--core", type=_partition, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--matrix", action="store_true", help="print the matrix as CSV (or JSON with --json)")
    s.set_defaults(func=cmd_block)

    s = sub.add_parser("mull", parents=[common], help="Mullineux image")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--mu", type=_partition, required=True)
    s.add_argument("--conjugate", action="store_true", help="print m(mu)' instead of m(mu)")
    s.add_argument("--check", action="store_true", help="cross-check against the rim-strip and top-degree oracles")
    s.set_defaults(func=cmd_mull)

    s = sub.add_parser("remove-runner", parents=[common], help="delete the packed runner of a k-empty display")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--lambda", dest="la", type=_partition, required=True)
    s.set_defaults(func=cmd_remove_runner)

    s = sub.add_parser("ux", parents=[common], help="the U_k statistic of a k-empty partition")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--lambda", dest="la", type=_partition, required=True)
    s.set_defaults(func=cmd_ux)

    s = sub.add_parser("core", parents=[common], help="e-core, e-weight and beta-set")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--lambda", dest="la", type=_partition, required=True)
    s.set_defaults(func=cmd_core)

    s = sub.add_parser("dset", parents=[common], help="distinct q-decomposition numbers of a fixed weight")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--max-core-size", type=int, required=True)
    s.add_argument("--max-classes", type=int, default=None)
    s.set_defaults(func=cmd_dset)

    s = sub.add_parser("scopes", parents=[common], help="reduce a block along inverse Scopes moves")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--core", type=_partition, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.set_defaults(func=cmd_scopes)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--e-range", type=_int_list, default=None, help="e.g. 3,4,5")
    s.add_argument("--weight-max", type=int, default=None)
    s.add_argument("--core-size-max", type=int, default=None)
    s.add_argument("--size-max", type=int, default=20, help="partition size bound for the mullineux suite")
    s.add_argument("--threads", type=int, default=None, help="worker processes (default: FOCKCB_THREADS or 1)")
    s.add_argument("--sample", type=int, default=None,
                   help="randomized smoke mode: check only this many blocks (or sizes), chosen with --seed")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        data, text = args.func(args)
    except (UsageError, AbacusError, MullineuxError, ScopesError, ValueError) as exc:
        print(f"fockcb {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        payload = {"schema": SCHEMA, "command": args.command, **data}
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    if args.command == "verify" and not data["passed"]:
        return 1
    if args.command == "mull" and data.get("ok") is False:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
