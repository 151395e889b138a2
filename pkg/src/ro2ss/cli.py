"""Command line: ``ro2ss homotopy | pages | verify``.

Exit codes: 0 success, 1 a verification failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import charts
from .algebra import Degree, direct_sum
from .erring import max_filtration
from .maps import CHECKS, SCHEMA_VERSION, STANDARD_SHIFTS, Window, ER, E
from .pages import BlockIndex
from .sseq import engine, last_page

log = logging.getLogger("ro2ss")

RANGE_FLAGS = ("--range", "--en-range", "--m-range", "--p-range", "--shift")
VERIFY_CHOICES = ("exactness", "duality", "boundary", "main", "periodicity", "einfty-match", "all")


class UsageError(Exception):
    pass


def parse_range(text: str, flag: str) -> range:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"{flag}: expected LO:HI, got {text!r}") from None
    if hi < lo:
        raise UsageError(f"{flag}: empty range {text!r}")
    return range(lo, hi + 1)


def parse_shift(text: str, flag: str = "--shift") -> Degree:
    try:
        return Degree.parse(text)
    except ValueError:
        raise UsageError(f"{flag}: expected m+pa (e.g. 0-1a), got {text!r}") from None


def _glue_negative_values(argv):
    # "--range -16:32" would otherwise be read as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in RANGE_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def threads() -> int:
    raw = os.environ.get("RO2SS_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError(f"RO2SS_THREADS: not an integer: {raw!r}") from None
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def _write(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- homotopy ----------------------------------------------------------------


def _auto_ens(n: int, theory: str, js, V: Degree) -> range:
    # for n = 1 each degree is finite and en is pinned by the filtration
    lo, hi = None, None
    for j in js:
        if theory == "e":
            cands = [(j - V.total()) // 2]
        else:
            m, p = j - V.m, -V.p
            cands = [(m + p + i) // 2 for i in range(max_filtration(1) + 1)]
        lo = min(cands + ([lo] if lo is not None else []))
        hi = max(cands + ([hi] if hi is not None else []))
    return range(lo, hi + 1)


def homotopy_rows(n: int, theory: str, V: Degree, js, ens):
    rows = []
    for j in js:
        parts = []
        for en in ens:
            slot = ER(V, j) if theory == "er" else E(V, j)
            parts.append(slot.group(n, en))
        rows.append((j, direct_sum(parts)))
    return rows


def cmd_homotopy(args) -> int:
    n = args.n
    V = parse_shift(args.shift)
    js = parse_range(args.range, "--range")
    if args.en_range == "auto":
        ens = _auto_ens(n, args.theory, js, V) if n == 1 else range(-8, 9)
    else:
        ens = parse_range(args.en_range, "--en-range")
    header = {"theory": "ER" if args.theory == "er" else "E", "n": n, "shift": str(V),
              "range": f"{js.start}:{js.stop - 1}", "en_range": f"{ens.start}:{ens.stop - 1}"}
    rows = homotopy_rows(n, args.theory, V, js, ens)
    fmt = args.format
    if fmt == "json":
        text = charts.homotopy_json(rows, header)
    elif fmt == "text":
        text = charts.homotopy_text(rows, header)
    elif fmt == "tsv":
        text = charts.homotopy_tsv(rows, header)
    else:
        raise UsageError(f"--format: {fmt} is not available for homotopy")
    _write(text, args.output)
    return 0


# -- pages -------------------------------------------------------------------


def cmd_pages(args) -> int:
    n, r = args.n, args.page
    if r < 2:
        raise UsageError("--page: pages start at 2")
    ms = parse_range(args.m_range, "--m-range")
    ps = parse_range(args.p_range, "--p-range")
    ens = parse_range(args.en_range, "--en-range")
    fmax = args.max_filtration if args.max_filtration is not None else last_page(n)
    if fmax < 0:
        raise UsageError("--max-filtration: must be >= 0")
    ss = engine(n)
    before = ss.cache_size()
    window = [BlockIndex(Degree(m, p), en, i) for m in ms for p in ps for en in ens for i in range(fmax + 1)]
    page = ss.page(r, window)
    aux = max(0, ss.cache_size() - before - len(window))
    # the window is widened implicitly: page turns pull in their d_r neighbours
    print(f"# window widened by {aux} auxiliary blocks for the d_r neighbours", file=sys.stderr)
    header = {"n": n, "page": r, "m_range": args.m_range, "p_range": args.p_range,
              "en_range": args.en_range, "max_filtration": fmax}
    fmt = args.format
    text = {"tsv": charts.pages_tsv, "json": charts.pages_json, "svg": charts.pages_svg,
            "text": charts.pages_text}[fmt](page, header)
    _write(text, args.output)
    return 0


# -- verify ------------------------------------------------------------------


def _run_check(task):
    name, n, js, shifts, ens, sign = task
    window = Window.make(js, shifts, ens)
    if name == "boundary":
        return CHECKS[name](n, window, sign=sign)
    return CHECKS[name](n, window)


def verify_tasks(which: str, n: int, js, shifts, ens, sign: int):
    if which == "all":
        names = [c for c in VERIFY_CHOICES if c != "all"]
    elif which == "exactness":
        # the LES spot im(a) = ker(iota), plus the composite (1 - sigma) o iota = 0
        # that exactness through the boundary map forces
        names = ["exactness", "boundary"]
    else:
        names = [which]
    return [(name, n, tuple(js), tuple(shifts), tuple(ens), sign) for name in names]


def cmd_verify(args) -> int:
    n = args.n
    js = parse_range(args.range, "--range")
    ens = parse_range(args.en_range, "--en-range")
    shifts = [parse_shift(s) for s in args.shift] if args.shift else list(STANDARD_SHIFTS)
    sign = -1 if args.sigma_sign == "-" else 1
    tasks = verify_tasks(args.which, n, js, shifts, ens, sign)
    workers = min(threads(), len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_check, tasks))
    else:
        reports = [_run_check(t) for t in tasks]
    for r in reports:
        log.info("%s: %d blocks checked", r.check, len(r.blocks))
    passed = all(r.passed for r in reports)
    if args.format == "json":
        if len(reports) == 1:
            doc = reports[0].as_dict()
        else:
            doc = {"schema_version": SCHEMA_VERSION, "check": args.which, "n": n, "passed": passed,
                   "reports": [r.as_dict() for r in reports]}
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        lines = []
        for r in reports:
            lines.append(r.summary())
            lines.extend(f"  {note}" for note in r.notes)
            for b in r.failures()[:20]:
                lines.append(f"  j={b.j} V={b.shift} en={b.en}: {b.witness}")
        lines.append("PASS" if passed else "FAIL")
        text = "\n".join(lines) + "\n"
    _write(text, args.output)
    return 0 if passed else 1


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ro2ss", description=(
        "RO(Z/2)-graded Borel spectral sequence for the real Johnson-Wilson theories ER(n)."))
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("homotopy", help="tabulate pi_j(ER(n)_V) or pi_j(E(n)_V)")
    h.add_argument("--n", type=int, required=True, choices=range(1, 5), metavar="N")
    h.add_argument("--theory", choices=("er", "e"), default="er")
    h.add_argument("--shift", default="0", help="V as m+pa, e.g. 0-1a")
    h.add_argument("--range", default="0:7", help="j range LO:HI")
    h.add_argument("--en-range", default="auto", help="v_n-exponent range LO:HI (default: all for n=1, -8:8 otherwise)")
    h.add_argument("--format", choices=("tsv", "json", "text"), default="tsv")
    h.add_argument("--output")
    h.set_defaults(func=cmd_homotopy)

    g = sub.add_parser("pages", help="E_r page of the spectral sequence")
    g.add_argument("--n", type=int, required=True, choices=range(1, 5), metavar="N")
    g.add_argument("--page", "-r", type=int, default=2)
    g.add_argument("--m-range", default="-8:8")
    g.add_argument("--p-range", default="0:0")
    g.add_argument("--en-range", default="-4:4")
    g.add_argument("--max-filtration", type=int)
    g.add_argument("--format", choices=("tsv", "json", "svg", "text"), default="tsv")
    g.add_argument("--output")
    g.set_defaults(func=cmd_pages)

    v = sub.add_parser("verify", help="run the verification checks")
    v.add_argument("which", choices=VERIFY_CHOICES)
    v.add_argument("--n", type=int, required=True, choices=range(1, 5), metavar="N")
    v.add_argument("--range", default="-24:24")
    v.add_argument("--en-range", default="-8:8")
    v.add_argument("--shift", action="append", help="V as m+pa; repeatable (default: 0, -a, +a)")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--output")
    v.add_argument("--sigma-sign", choices=("+", "-"), default="-", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="# %(asctime)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
