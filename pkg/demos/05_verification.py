"""Run every check on a small window, then break the sign convention.

Run:  python demos/05_verification.py
"""

from ro2ss.maps import CHECKS, STANDARD_SHIFTS, Window, check_boundary_formula

window = Window.make(range(-8, 9), STANDARD_SHIFTS, range(-6, 7))
for n in (1, 2):
    for name, check in CHECKS.items():
        print(check(n, window).summary())

# with sigma(v_k) = +v_k the boundary can no longer be 1 - sigma
bad = check_boundary_formula(1, window, sign=1)
print()
print(bad.summary())
for b in bad.failures()[:4]:
    print(f"  j={b.j} V={b.shift} en={b.en}: {b.witness}")
