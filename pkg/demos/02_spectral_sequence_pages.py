"""Walk the Borel spectral sequence for n = 1 page by page and draw it.

Run:  python demos/02_spectral_sequence_pages.py [out.svg]
"""

import sys

from ro2ss import charts
from ro2ss.algebra import Degree
from ro2ss.pages import BlockIndex, monomial
from ro2ss.sseq import apply_differential, engine, last_page

n = 1
ss = engine(n)

# the differential is determined by its value on sigma^-2
for t in (-1, -2, 1, 2):
    M = monomial(n, t=t)
    out = apply_differential(n, 3, M)
    print(f"d3({M.label():<6}) =", out[0][1].label() if out else 0)

# sigma^2 supports a d3, so only 2 sigma^2 survives to E4
b = BlockIndex(Degree(-2, 2), 0, 0)
for r in (2, 3, 4):
    print(f"E{r} at (-2, 2): {ss.block(b, r).group.describe():<6} {ss.block(b, r).group.generators}")

# the class a^4 v1^2 sigma^2 is hit, a^2 is not
for deg, en, i in [((0, 0), 2, 4), ((0, -2), 0, 2)]:
    b = BlockIndex(Degree(*deg), en, i)
    print(f"{ss.block(b, 2).group.generators} on E2 -> {ss.block(b, last_page(n)).group.generators} on E_inf")

# a page as a chart: one panel per p, arrows for d3
window = [BlockIndex(Degree(m, p), en, i)
          for m in range(-8, 9) for p in (-2, 0, 2) for en in range(-4, 5) for i in range(5)]
page = ss.page(3, window)
svg = charts.pages_svg(page, {"n": n, "page": 3})
path = sys.argv[1] if len(sys.argv) > 1 else "e3_height1.svg"
with open(path, "w") as fh:
    fh.write(svg)
print("wrote", path, f"({svg.count('<line')} d3 arrows)")
