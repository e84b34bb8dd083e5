"""Watch a fiber fill up and empty out as one coefficient moves.

f = -2 z1^2 - 2 z1 z2^2 + 1.5i / (z1 z2) + c over the origin fiber.
Around c = -1.2 the torus carries a handful of transversal solutions;
by c = -4.9 they are gone.  Somewhere in between the last pair meets,
turns critical, and vanishes.  A bisection pins the transition down to
a hair's width.
"""

from amoebas import classify, fiber_solutions, parse_poly

W = (0.0, 0.0)


def poly(c):
    return parse_poly(f"-2*z1^2 - 2*z1*z2^2 + 1.5i*z1^-1*z2^-1 - {abs(c)!r}", 2)


print("sweep of c, origin fiber:")
for c in (-1.2, -2.0, -3.0, -4.0, -4.5, -4.58, -4.9):
    sols = fiber_solutions(poly(c), W)
    tag = classify(poly(c), W).tag
    crit = sum(1 for s in sols if s.critical)
    print(f"  c = {c:+.2f}: {len(sols):2d} solutions ({crit} critical)  {tag}")

lo, hi = -4.9, -1.2
while hi - lo >= 1e-9:
    mid = 0.5 * (lo + hi)
    if fiber_solutions(poly(mid), W):
        hi = mid
    else:
        lo = mid
print(f"\nlast solutions die between c = {lo:.9f} and c = {hi:.9f}")

sols = fiber_solutions(poly(hi), W)
print(f"just above the transition ({hi:.9f}):")
for s in sols:
    print(
        f"  phi = ({s.phi[0]:.6f}, {s.phi[1]:.6f})"
        f"  multiplicity {s.multiplicity}  critical: {s.critical}"
    )
