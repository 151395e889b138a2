"""Tables and static charts: TSV rows, JSON, and SVG 1.1 dot charts.

Nothing here carries a timestamp, so output is byte-identical for a fixed
configuration.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from .algebra import FGGroup
from .sseq import Differential, PageBasis, engine

SCHEMA_VERSION = 1


def torsion_field(g: FGGroup) -> str:
    return ",".join(str(2 ** k) for k in g.torsion)


def homotopy_tsv(rows, header: dict) -> str:
    """``rows`` is a list of ``(j, group)``."""
    out = [f"# schema_version={SCHEMA_VERSION}"]
    out += [f"# {k}={v}" for k, v in header.items()]
    out.append("j\trank\ttorsion\tgroup\tgenerators")
    for j, g in rows:
        gens = "; ".join(g.generators)
        out.append(f"{j}\t{g.rank}\t{torsion_field(g)}\t{g.describe()}\t{gens}")
    return "\n".join(out) + "\n"


def homotopy_json(rows, header: dict) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        **header,
        "rows": [{"j": j, "rank": g.rank, "torsion": [2 ** k for k in g.torsion],
                  "group": g.describe(), "generators": list(g.generators)} for j, g in rows],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def homotopy_text(rows, header: dict) -> str:
    out = [f"# {k}={v}" for k, v in header.items()]
    for j, g in rows:
        gens = ", ".join(g.generators)
        out.append(f"{j:>5}  {g.describe():<24} {gens}")
    return "\n".join(out) + "\n"


def _page_rows(page: PageBasis):
    for b in sorted(page.blocks, key=lambda b: b.key()):
        blk = page.blocks[b]
        if blk.is_zero():
            continue
        yield b, blk.group


def pages_tsv(page: PageBasis, header: dict) -> str:
    out = [f"# schema_version={SCHEMA_VERSION}"]
    out += [f"# {k}={v}" for k, v in header.items()]
    out.append("m\tp\ten\tfiltration\trank\ttorsion\tmonomials")
    for b, g in _page_rows(page):
        out.append(f"{b.degree.m}\t{b.degree.p}\t{b.en}\t{b.filtration}\t{g.rank}\t"
                   f"{torsion_field(g)}\t{'; '.join(g.generators)}")
    return "\n".join(out) + "\n"


def pages_json(page: PageBasis, header: dict) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        **header,
        "blocks": [{"m": b.degree.m, "p": b.degree.p, "en": b.en, "filtration": b.filtration,
                    "rank": g.rank, "torsion": [2 ** k for k in g.torsion],
                    "monomials": list(g.generators)} for b, g in _page_rows(page)],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def pages_text(page: PageBasis, header: dict) -> str:
    out = [f"# {k}={v}" for k, v in header.items()]
    for b, g in _page_rows(page):
        out.append(f"({b.degree.m},{b.degree.p}) en={b.en} i={b.filtration}: {g.describe()}  "
                   f"{', '.join(g.generators)}")
    return "\n".join(out) + "\n"


# -- svg ---------------------------------------------------------------------

CELL = 22
MARGIN = 40
PANEL_GAP = 30


def pages_svg(page: PageBasis, header: dict) -> str:
    """One panel per p-line; x = total degree m + p, y = filtration.

    Classes are dots (squares for Z_(2), circles for Z/2); d_r on page r is
    drawn as arrows of bidegree (-1, +r).
    """
    rows = list(_page_rows(page))
    ps = sorted({b.degree.p for b in page.blocks})
    xs = [b.degree.m + b.degree.p for b in page.blocks] or [0]
    fs = [b.filtration for b in page.blocks] or [0]
    xmin, xmax = min(xs), max(xs)
    fmax = max(fs)
    pw = (xmax - xmin + 2) * CELL
    ph = (fmax + 2) * CELL
    width = pw + 2 * MARGIN
    height = len(ps) * (ph + PANEL_GAP) + 2 * MARGIN
    title = escape(" ".join(f"{k}={v}" for k, v in header.items()))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<defs><marker id="head" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#953735"/></marker></defs>',
        f'<title>{title}</title>',
        '<style>text { font-family: monospace; font-size: 10px; }</style>',
    ]
    by_block = {b: g for b, g in rows}
    d = Differential.on_page(page.n, page.r)
    for panel, p in enumerate(ps):
        top = MARGIN + panel * (ph + PANEL_GAP)

        def pos(x, f):
            return MARGIN + (x - xmin + 1) * CELL, top + ph - (f + 1) * CELL

        out.append(f'<g id="p{p}">')
        out.append(f'<rect x="{MARGIN}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#cccccc"/>')
        out.append(f'<text x="{MARGIN}" y="{top - 4}">p = {p}</text>')
        for x in range(xmin, xmax + 1):
            if x % 4 == 0:
                cx, _ = pos(x, 0)
                out.append(f'<text x="{cx - 3}" y="{top + ph + 12}">{x}</text>')
        counts = {}
        for b, g in rows:
            if b.degree.p != p:
                continue
            x = b.degree.m + b.degree.p
            for gi, label in enumerate(g.generators):
                k = counts.get((x, b.filtration), 0)
                counts[(x, b.filtration)] = k + 1
                cx, cy = pos(x, b.filtration)
                cx += 5 * k
                tip = escape(f"({b.degree.m},{b.degree.p}) en={b.en}: {label}")
                if g.orders[gi] is None:
                    out.append(f'<rect x="{cx - 4}" y="{cy - 4}" width="8" height="8" fill="#376092">'
                               f'<title>{tip}</title></rect>')
                else:
                    out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="#222222"><title>{tip}</title></circle>')
        if d is not None:
            ss = engine(page.n)
            for b, g in rows:
                if b.degree.p != p:
                    continue
                tb = d.target_block(page.n, b)
                if tb not in by_block:
                    continue
                if not ss.d_nonzero(page.r, b):
                    continue
                x0, y0 = pos(b.degree.m + b.degree.p, b.filtration)
                x1, y1 = pos(tb.degree.m + tb.degree.p, tb.filtration)
                out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#953735" '
                           f'stroke-width="1" marker-end="url(#head)"/>')
        out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
