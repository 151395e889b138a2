"""ER(1) is 2-local KO: read Bott periodicity off the closed-form ring.

Run:  python demos/01_ko_from_er1.py
"""

from ro2ss.algebra import Degree, direct_sum
from ro2ss.erring import distinguished, er_block_basis, er_group, er_product
from ro2ss.ehomotopy import e_group
from ro2ss.pages import BlockIndex, monomial
from ro2ss.erring import ERBasisElement

# pi_j of ER(1) in integer degrees. Each degree is a finite sum over the
# v_1-exponent, so summing a generous en-range gives the whole group.
print("j   pi_j ER(1)      generators")
for j in range(-2, 10):
    g = direct_sum(er_group(1, Degree(j, 0), en) for en in range(-10, 12))
    print(f"{j:<3} {g.describe():<15} {', '.join(g.generators)}")

# the four classes that generate KO_* in this presentation
eta = ERBasisElement.of(monomial(1, i=1, en=1))          # a v1
alpha = ERBasisElement.of(monomial(1, en=2, t=-1))       # 2 v1^2 sigma^-2
beta = ERBasisElement.of(monomial(1, en=4, t=-2))        # v1^4 sigma^-4
print()
print("eta   =", eta.label(), "in degree", eta.degree)
print("alpha =", alpha.label(), "in degree", alpha.degree)
print("beta  =", beta.label(), "in degree", beta.degree)

# the familiar relations
c, g = er_product(1, (1, alpha), (1, alpha))
print("alpha^2 =", f"{c}·{g.label()}", "(so alpha^2 = 4 beta)")
eta2 = er_product(1, (1, eta), (1, eta))
print("eta^2   =", eta2[1].label())
print("eta^3   =", er_product(1, eta2, (1, eta)), "(zero)")

# x(1) is eta, and the fibration Sigma ER(1) -> ER(1) -> E(1) is the
# classical Sigma KO -> KO -> KU
print()
print("x(1) =", distinguished(1, "x").element.label())
print("pi_j E(1):", [e_group(1, j, j // 2).describe() if j % 2 == 0 else "0" for j in range(0, 6)])

# blocks as the engine sees them
b = BlockIndex(Degree(3, 1), 3)
print()
print("pi_3(ER(1)_{-alpha}) block:", [g.label() for g in er_block_basis(1, b)])
