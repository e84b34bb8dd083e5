"""Membership, classification, order, and lopsidedness via the fiber torus.

A log-point w belongs to the amoeba of f exactly when f has a zero on the
fiber torus {|z_j| = e^{w_j}}.  Restricting f to that torus gives a
finite intersection problem in two torus variables, solved here by pairing
the restriction g with its conjugate-reciprocal mirror g* (they agree on
the torus), eliminating one variable with a Sylvester resultant, and
keeping the unit-modulus part of the root set.  Criticality of each
solution under the logarithmic Gauss map then separates interior points
from contour and boundary points.
"""

from __future__ import annotations

import cmath
import math
import warnings

import numpy as np

from .errors import DegenerateFiber, IdenticallyZero, InconsistentOrder
from .laurent import LaurentPoly, fiber_restrict, log_gauss_numerator, monomial_clear
from .numeric import UniPoly, roots, sylvester_resultant

FIBER_TAGS = ("Complement", "Interior", "ContourInterior", "Boundary", "Degenerate")

# angular gap (mod pi) above which two Gauss directions count as distinct
DIRECTION_TOL = 1e-4


class BothGaussComponentsZero(UserWarning):
    """Both logarithmic-Gauss numerators vanished at the queried point."""


class FiberSolution:
    """One intersection point of the variety with a fiber torus.

    ``phi`` lies in [0, 2pi)^2 and parametrizes z = e^{w + i phi};
    ``multiplicity`` is the cluster multiplicity seen by the resultant;
    ``critical`` is True when the point maps to real projective space
    under the logarithmic Gauss map (score below tolerance) or when the
    multiplicity already certifies a tangency.
    """

    __slots__ = ("phi", "multiplicity", "critical", "score")

    def __init__(self, phi, multiplicity, critical, score):
        self.phi = (float(phi[0]), float(phi[1]))
        self.multiplicity = int(multiplicity)
        self.critical = bool(critical)
        self.score = float(score)

    def __repr__(self):
        flag = "critical" if self.critical else "regular"
        return (
            f"FiberSolution(phi=({self.phi[0]:.9f}, {self.phi[1]:.9f}), "
            f"mult={self.multiplicity}, {flag}, score={self.score:.3e})"
        )


class PointClass:
    """Classification of a log-point against the amoeba and its contour."""

    __slots__ = ("tag", "solutions", "caveat")

    def __init__(self, tag, solutions=(), caveat=False):
        if tag not in FIBER_TAGS:
            raise ValueError(f"unknown tag {tag!r}")
        self.tag = tag
        self.solutions = tuple(solutions)
        self.caveat = bool(caveat)

    def __repr__(self):
        extra = ", caveat" if self.caveat else ""
        return f"PointClass({self.tag}, {len(self.solutions)} solutions{extra})"


# --------------------------------------------------------------------------
# dense helpers on cleared torus polynomials
# --------------------------------------------------------------------------

def _dense(g):
    """Cleared 2-variable LaurentPoly -> dense array b[i, j] ~ t1^i t2^j."""
    d1 = g.degree_span(0)[1]
    d2 = g.degree_span(1)[1]
    b = np.zeros((d1 + 1, d2 + 1), dtype=complex)
    for (a1, a2), c in g.terms.items():
        b[a1, a2] = c
    return b


def _eval_gauss(gb, t1, t2):
    """Value and both Gauss numerators t_j dg/dt_j of a dense bivariate poly."""
    p1 = t1 ** np.arange(gb.shape[0])
    p2 = t2 ** np.arange(gb.shape[1])
    rows = gb @ p2
    val = p1 @ rows
    gam1 = (np.arange(gb.shape[0]) * p1) @ rows
    cols = p1 @ gb
    gam2 = cols @ (np.arange(gb.shape[1]) * p2)
    return val, gam1, gam2


def _polish_phi(gb, phi, steps=10, scale=None):
    """Newton steps on (Re g, Im g)(phi) staying exactly on the torus."""
    if scale is None:
        scale = float(np.sum(np.abs(gb)))
    p1, p2 = phi
    val = None
    for _ in range(steps):
        t1, t2 = cmath.exp(1j * p1), cmath.exp(1j * p2)
        val, g1, g2 = _eval_gauss(gb, t1, t2)
        if abs(val) < 1e-15 * scale:
            break
        # d/dphi_j g(e^{i phi}) = i gamma_j
        j11, j12 = -g1.imag, -g2.imag
        j21, j22 = g1.real, g2.real
        r1, r2 = val.real, val.imag
        # damped 2x2 least squares, tolerant of the singular tangential case
        a11 = j11 * j11 + j21 * j21
        a12 = j11 * j12 + j21 * j22
        a22 = j12 * j12 + j22 * j22
        lam = 1e-12 * (a11 + a22) + 1e-300
        b1 = j11 * r1 + j21 * r2
        b2 = j12 * r1 + j22 * r2
        dd = (a11 + lam) * (a22 + lam) - a12 * a12
        d1 = (b1 * (a22 + lam) - b2 * a12) / dd
        d2 = (b2 * (a11 + lam) - b1 * a12) / dd
        step = math.hypot(d1, d2)
        if step > 0.3:
            d1, d2 = 0.3 * d1 / step, 0.3 * d2 / step
        p1, p2 = p1 - d1, p2 - d2
    t1, t2 = cmath.exp(1j * p1), cmath.exp(1j * p2)
    val, g1, g2 = _eval_gauss(gb, t1, t2)
    return (_wrap(p1), _wrap(p2)), val, g1, g2


def _wrap(p):
    """Reduce an angle to [0, 2pi); values a rounding error below 2pi go to 0."""
    tau = 2.0 * math.pi
    p %= tau
    if p >= tau * (1.0 - 1e-12):
        return 0.0
    return p


def _score(g1, g2):
    """Criticality score: |Im(g1 conj g2)| relative to |g1 g2|."""
    num = abs((g1 * g2.conjugate()).imag)
    den = max(abs(g1 * g2), 1e-300)
    return num / den


def _direction(g1, g2):
    """Gauss direction of a critical point as an angle mod pi."""
    c = g1 if abs(g1) >= abs(g2) else g2
    u = (g1 / c).real
    v = (g2 / c).real
    return math.atan2(v, u) % math.pi


# --------------------------------------------------------------------------
# the fiber solver
# --------------------------------------------------------------------------

def _univariate_fiber(g, axis, unit_tol):
    """Handle restrictions that involve only one torus variable."""
    d = g.degree_span(axis)[1]
    coeffs = np.zeros(d + 1, dtype=complex)
    for alpha, c in g.terms.items():
        coeffs[alpha[axis]] += c
    for cl in roots(UniPoly(coeffs)):
        if abs(abs(cl.center) - 1.0) < unit_tol:
            raise DegenerateFiber(
                "restriction is univariate with a unit root: the fiber meets "
                "the variety in full circles"
            )
    return []


def _merge_near_unit(clusters, radius=3e-3):
    """Coalesce resultant root clusters scattered by a multiple root.

    A root of multiplicity m recovered from coefficients with relative
    noise eps scatters into m simple roots on a ring of radius eps^(1/m),
    which outgrows the tight clustering radius already for m >= 3.  Near
    the unit circle, where a scattered multiplet would otherwise be
    filtered away or double counted, clusters get merged back together;
    the multiplicity-weighted mean of a noise ring reproduces the true
    root to second order.
    """
    items = []
    out = []
    for cl in clusters:
        if abs(abs(cl.center) - 1.0) <= 0.05:
            items.append([cl.center, cl.multiplicity])
        else:
            out.append((cl.center, cl.multiplicity))
    changed = True
    while changed:
        changed = False
        merged = []
        for c, m in items:
            for slot in merged:
                if abs(c - slot[0]) <= radius * max(1.0, abs(slot[0])):
                    tot = slot[1] + m
                    slot[0] = (slot[0] * slot[1] + c * m) / tot
                    slot[1] = tot
                    changed = True
                    break
            else:
                merged.append([c, m])
        items = merged
    return [(c, m) for c, m in items] + out


def _solve_fiber(f, w, unit_tol=1e-6, critical_tol=1e-6):
    """Core solver; returns (solutions, gauss_pairs) sorted by phi."""
    if f.nvars != 2:
        raise ValueError("fiber solving is implemented for two variables")
    if not f.terms:
        raise DegenerateFiber("zero polynomial vanishes on every fiber")
    if len(f.terms) == 1:
        raise ValueError("monomials have empty varieties in the torus")
    g, _ = fiber_restrict(f, w)
    g, _ = monomial_clear(g)
    d1 = g.degree_span(0)[1]
    d2 = g.degree_span(1)[1]
    if d1 == 0 and d2 == 0:
        # restriction collapsed to a nonzero constant
        return [], []
    if d2 == 0:
        return _univariate_fiber(g, 0, unit_tol), []
    if d1 == 0:
        return _univariate_fiber(g, 1, unit_tol), []

    gb = _dense(g)
    gsb = np.conj(gb)[::-1, ::-1]
    mods = np.abs(gb)
    coeff_sum = float(mods.sum())
    # lopsided shortcut: one coefficient outweighing the rest rules out
    # torus zeros outright, no resultant needed
    if 2.0 * float(mods.max()) > coeff_sum * (1.0 + 1e-9):
        return [], []
    try:
        res = sylvester_resultant(gb, gsb)
    except IdenticallyZero as exc:
        raise DegenerateFiber("fiber shares a component with the variety") from exc

    # The unit-circle filter is only a pre-filter: the band is kept wide
    # enough that multiple-root scatter cannot push a true solution out,
    # and the polished residual on the torus makes the actual decision.
    band = max(0.02, unit_tol)
    tau = 2.0 * math.pi
    clusters = _merge_near_unit(roots(res))
    cands = []  # (phi, score, g1, g2, cluster_id)
    for ci, (t1, _) in enumerate(clusters):
        if not (abs(abs(t1) - 1.0) <= band):  # also drops non-finite centers
            continue
        # back-substitute: univariate slice in t2
        slice_c = (t1 ** np.arange(gb.shape[0])) @ gb
        if np.max(np.abs(slice_c)) < 1e-13 * coeff_sum:
            raise DegenerateFiber("slice of the restriction vanished identically")
        for c2 in roots(UniPoly(slice_c)):
            if not (abs(abs(c2.center) - 1.0) <= band):
                continue
            phi0 = (cmath.phase(t1) % tau, cmath.phase(c2.center) % tau)
            phi, val, g1, g2 = _polish_phi(gb, phi0, scale=coeff_sum)
            if not (abs(val) <= 1e-7 * coeff_sum):
                continue
            cands.append((phi, _score(g1, g2), g1, g2, ci))

    # group candidates that polished to the same torus point
    groups = []  # [phi, score, g1, g2, {cluster_id}]
    for item in sorted(cands, key=lambda it: (it[0], it[1])):
        phi, score, g1, g2, ci = item
        for grp in groups:
            da = min(abs(phi[0] - grp[0][0]), tau - abs(phi[0] - grp[0][0]))
            db = min(abs(phi[1] - grp[0][1]), tau - abs(phi[1] - grp[0][1]))
            if math.hypot(da, db) < 1e-5:
                if score < grp[1]:
                    grp[0], grp[1], grp[2], grp[3] = phi, score, g1, g2
                grp[4].add(ci)
                break
        else:
            groups.append([phi, score, g1, g2, {ci}])

    # Local intersection multiplicity: a resultant cluster of size m that
    # feeds k distinct torus points certifies multiplicity m/k on each of
    # them (a simple tangency projects to a double root, two transversal
    # points over one t1 to a pair of simple roots, and so on).
    fed = {}
    for gi, grp in enumerate(groups):
        for ci in grp[4]:
            fed.setdefault(ci, set()).add(gi)
    mults = []
    for grp in groups:
        m = 1
        for ci in grp[4]:
            m = max(m, round(clusters[ci][1] / len(fed[ci])))
        mults.append(max(1, m))

    sols = []
    gauss = []
    for i in sorted(range(len(groups)), key=lambda k: groups[k][0]):
        phi, score, g1, g2, _ = groups[i]
        critical = mults[i] >= 2 or score < critical_tol
        sols.append(FiberSolution(phi, mults[i], critical, score))
        gauss.append((g1, g2))
    return sols, gauss


def fiber_solutions(f, w, unit_tol=1e-6, critical_tol=1e-6):
    """All intersections of V(f) with the fiber torus over w (n = 2).

    Parameters
    ----------
    f : LaurentPoly
        Two variables, at least two terms.
    w : pair of float
    unit_tol : float
        Lower bound for the ||t| - 1| pre-filter band on resultant roots
        (the band never shrinks below 0.02, which covers the scatter of
        multiple roots); every surviving candidate is Newton-polished on
        the torus and must then pass |g| <= 1e-7 x (coefficient sum),
        which is what actually decides membership.
    critical_tol : float
        Tolerance on the Gauss criticality score.

    Returns
    -------
    list of FiberSolution
        Sorted lexicographically by phi.  Empty exactly when w lies in the
        amoeba complement (up to the stated tolerances).

    Raises
    ------
    DegenerateFiber
        If the intersection is not a finite point set.
    """
    sols, _ = _solve_fiber(f, w, unit_tol=unit_tol, critical_tol=critical_tol)
    return sols


def is_critical(f, z, tol=1e-6):
    """Test whether z maps into real projective space under the Gauss map.

    Returns
    -------
    (bool, float)
        The flag and the score |Im(gamma1 conj gamma2)| / max(|gamma1 gamma2|, floor)
        with gamma_j = z_j df/dz_j(z).  When both numerators vanish the
        Gauss image is undefined; a ``BothGaussComponentsZero`` warning is
        emitted and the point is reported critical with score 0.
    """
    if f.nvars != 2:
        raise ValueError("criticality test is implemented for two variables")
    num0 = log_gauss_numerator(f, 0)
    num1 = log_gauss_numerator(f, 1)
    g1 = num0(z)
    g2 = num1(z)

    def abs_eval(p):
        zz = [abs(complex(v)) for v in z]
        return math.fsum(
            abs(b) * math.prod(v**a for v, a in zip(zz, alpha))
            for alpha, b in p.terms.items()
        )

    floor1 = 1e-13 * abs_eval(num0)
    floor2 = 1e-13 * abs_eval(num1)
    if abs(g1) < floor1 and abs(g2) < floor2:
        warnings.warn(
            "both Gauss numerators vanish at this point",
            BothGaussComponentsZero,
            stacklevel=2,
        )
        return True, 0.0
    score = _score(g1, g2)
    return score < tol, score


def classify(f, w, critical_tol=1e-6, unit_tol=1e-6):
    """Classify w against the amoeba of f (n = 2).

    Returns a PointClass with tag

    - ``Complement``        no fiber solution;
    - ``Interior``          solutions exist, none critical;
    - ``ContourInterior``   some but not all solutions critical;
    - ``Boundary``          every solution critical.  The caveat flag is set
      when two critical solutions carry different Gauss directions: then w
      sits where contour branches cross and the boundary certificate rests
      on the non-singularity assumption;
    - ``Degenerate``        the fiber intersection is not finite.
    """
    try:
        sols, gauss = _solve_fiber(f, w, unit_tol=unit_tol, critical_tol=critical_tol)
    except DegenerateFiber:
        return PointClass("Degenerate")
    if not sols:
        return PointClass("Complement")
    criticals = [i for i, s in enumerate(sols) if s.critical]
    if len(criticals) == len(sols):
        dirs = [_direction(*gauss[i]) for i in criticals]
        spread = 0.0
        for a in dirs[1:]:
            gap = abs(a - dirs[0]) % math.pi
            spread = max(spread, min(gap, math.pi - gap))
        return PointClass("Boundary", sols, caveat=spread > DIRECTION_TOL)
    if criticals:
        return PointClass("ContourInterior", sols)
    return PointClass("Interior", sols)


# --------------------------------------------------------------------------
# order of a complement component
# --------------------------------------------------------------------------

_ORDER_SEED = 20260815


def order(f, w, samples=3):
    """Order vector of the complement component containing w.

    The j-th entry is the winding number of the slice u -> f(z) with
    z_j = u and the other coordinates frozen on their circles, i.e. the
    number of zeros inside |u| < e^{w_j} minus the pole order at the
    origin.  Each entry is recomputed at ``samples`` angle draws (fixed
    seed, so the result is deterministic) and must agree.

    Raises
    ------
    InconsistentOrder
        If the draws disagree; w is too close to the amoeba for the slice
        count to be stable.
    """
    n = f.nvars
    w = [float(v) for v in w]
    items = sorted(f.terms.items())
    rng = np.random.default_rng(_ORDER_SEED)
    out = []
    for j in range(n):
        seen = set()
        for _ in range(samples):
            theta = rng.uniform(0.0, 2.0 * math.pi, size=n)
            # log-scale normalization shared by every slice coefficient
            logs = []
            for alpha, b in items:
                m = math.log(abs(b)) + math.fsum(
                    alpha[k] * w[k] for k in range(n) if k != j
                )
                logs.append(m)
            cap = max(logs)
            slice_terms = {}
            for (alpha, b), m in zip(items, logs):
                phase = b / abs(b)
                rot = cmath.exp(1j * math.fsum(alpha[k] * theta[k] for k in range(n) if k != j))
                c = phase * rot * math.exp(m - cap)
                slice_terms[alpha[j]] = slice_terms.get(alpha[j], 0j) + c
            m_min = min(slice_terms)
            m_max = max(slice_terms)
            coeffs = np.zeros(m_max - m_min + 1, dtype=complex)
            for mm, c in slice_terms.items():
                coeffs[mm - m_min] = c
            radius = math.exp(w[j])
            count = 0
            for cl in roots(UniPoly(coeffs)):
                if abs(cl.center) < radius:
                    count += cl.multiplicity
            seen.add(m_min + count)
        if len(seen) != 1:
            raise InconsistentOrder(
                f"winding count for variable {j+1} varies across angles: {sorted(seen)}"
            )
        out.append(seen.pop())
    return tuple(out)


def lopsided(f, w):
    """Dominant-term certificate for complement membership.

    Returns the exponent alpha whose term modulus strictly exceeds the sum
    of all the others on the fiber over w, or None when no term dominates.
    A returned alpha proves that w is in the complement and that its
    component has order alpha.
    """
    if not f.terms:
        return None
    w = [float(v) for v in w]
    items = sorted(f.terms.items())
    logs = [
        math.log(abs(b)) + math.fsum(a * v for a, v in zip(alpha, w))
        for alpha, b in items
    ]
    cap = max(logs)
    vals = [math.exp(m - cap) for m in logs]
    total = math.fsum(vals)
    best = max(range(len(vals)), key=lambda i: vals[i])
    if vals[best] > total - vals[best]:
        return items[best][0]
    return None
