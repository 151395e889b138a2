"""The fibration Sigma^17 ER(2) -> ER(2) -> E(2) at height 2.

Run:  python demos/03_height_two_fibration.py
"""

from ro2ss.algebra import ALPHA, Degree, kernel_generators
from ro2ss.erring import distinguished, er_group, lam, period_length
from ro2ss.maps import ER, Window, check_main_theorem, map_matrix

n = 2
L = lam(n)
y = distinguished(n, "y")
x = distinguished(n, "x")
print(f"lambda({n}) = {L}, period = {period_length(n)}")
print(f"y({n}) = {y.element.label()} in degree {y.degree}")
print(f"x({n}) = {x.element.label()} in degree {x.degree}")
print("x(2) block:", er_group(n, x.degree, x.element.monomial.en).describe())

# the torsion that only exists away from height 1
for j in (3, 6):
    print(f"pi_{j} ER(2), en={j // 3}:", er_group(n, Degree(j, 0), j // 3).generators)

# exactness at ER: the image of x is the kernel of iota
j, en = 20, 4
sh = 2 ** n - 1
mx = map_matrix("mult_x", n, ER(0, j - L), en - sh)
io = map_matrix("iota", n, ER(0, j), en)
print()
print(f"pi_{j}(ER(2)), en={en}:", io.source.describe(), list(io.source.generators))
print("  image of x:", [[int(c) for c in col] for col in mx.columns()])
print("  kernel of iota:", [[int(c) for c in col] for col in kernel_generators(io)])

# y is invertible, so mult_y is an isomorphism of blocks
my = map_matrix("mult_y", n, ER(ALPHA, 3), 0)
print("mult_y", my.source.describe(), "->", my.target.describe())

rep = check_main_theorem(n, Window.make(range(10, 30)))
print()
print(rep.summary())
print(rep.notes[0])
