"""Point membership three ways: dominant term, fiber solve, full classify.

The cubic family z1^3 + z2^3 + c z1 z2 + 1 changes shape as c moves: at
c = 1.3 a complement island sits at the origin of log space, with order
vector (1, 1); push c to 1 and the island degenerates to a single
extended-boundary point.
"""

from amoebas import classify, lopsided, order, parse_poly


def look(f, w):
    alpha = lopsided(f, w)
    pc = classify(f, w)
    line = f"  w = ({w[0]:+.3f}, {w[1]:+.3f})  ->  {pc.tag}"
    if alpha is not None:
        line += f"  [term {alpha} dominates, no root finding needed]"
    if pc.tag == "Complement":
        line += f"  order {order(f, w)}"
    if pc.solutions:
        crit = sum(1 for s in pc.solutions if s.critical)
        line += f"  ({len(pc.solutions)} fiber solutions, {crit} critical)"
    print(line)


for c in (1.3, 1.0):
    f = parse_poly(f"z1^3 + z2^3 + {c}*z1*z2 + 1", 2)
    print(f"c = {c}:")
    look(f, (0.0, 0.0))
    look(f, (0.5, 0.5))
    look(f, (3.0, 0.0))
    look(f, (-3.0, -3.0))
    print()

# walking the w1 axis toward the amoeba: far out the z1^3 term dominates
# and the certificate is exact mathematics with no root finding; once the
# certificate goes silent the fiber solver takes over and still answers
f = parse_poly("z1^3 + z2^3 + 1.3*z1*z2 + 1", 2)
for t in (4.0, 1.0, 0.5, 0.3, 0.15):
    w = (t, 0.0)
    print(f"w = ({t}, 0): lopsided = {lopsided(f, w)}, classify = {classify(f, w).tag}")
