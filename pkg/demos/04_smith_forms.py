"""Smith normal form over the 2-local integers, and what it buys.

Run:  python demos/04_smith_forms.py
"""

from fractions import Fraction

from ro2ss.algebra import FGGroup, IntMatrix, matmul, smith_normal_form, subgroup_equal, subquotient

# odd numbers are units, so only powers of 2 survive on the diagonal
for M in ([[3, 0], [0, 4]], [[6, 4], [2, 8]], [[1, 1], [1, 1]], [[12, 18], [30, 42]]):
    U, D, V = smith_normal_form(M)
    print(M, "->", [int(D[i][i]) for i in range(2)])
    assert matmul(matmul(U, [[Fraction(x) for x in r] for r in M], 2), V, 2) == D

# homology ker(B)/im(A)
Z = FGGroup.free(["g"])
four = IntMatrix(((Fraction(4),),), Z, Z)
to_z2 = IntMatrix(((Fraction(1),),), Z, FGGroup(["h"], [2]))
print("ker(Z -> Z/2) / 4Z =", subquotient(four, to_z2, Z))

# subgroups compared exactly, including inside torsion groups
Z4 = FGGroup(["t"], [4])
print("<2> == <6> in Z/4:", subgroup_equal([[2]], [[6]], Z4))
print("<2> == <1> in Z/4:", subgroup_equal([[2]], [[1]], Z4))
print("<(2,0)> == <(-2,0)> in Z^2:", subgroup_equal([[2, 0]], [[-2, 0]], FGGroup.free("xy")))
