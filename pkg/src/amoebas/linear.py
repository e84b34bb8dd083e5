"""Closed-form machinery for linear polynomials.

For f = 1 + sum_j b_j z_j the amoeba is described exactly by the term
moduli r_j = |b_j| e^{w_j}: the point w lies outside the amoeba exactly
when one term strictly dominates the sum of all the others, on the
boundary when equality holds for some term, and inside otherwise.  On
top of that exact membership test sits the amoeba-basis construction:
a full-rank system of n linear polynomials with common zero v is
replaced by n+1 linear polynomials whose amoebas intersect exactly in
the single point Log|v|.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import AxiomFailure, NotLinear, ZeroCoordinate
from .laurent import LaurentPoly, evaluate
from .numeric import solve_linear

_EQUALITY_TOL = 1e-9


class LinearSystem:
    """A full-rank system f_j = 1 + sum_k a[j, k] z_k, j = 1 .. n.

    The coefficient matrix is validated eagerly: construction fails with
    SingularMatrix when a pivot of the LU factorization drops below the
    singularity threshold, because then the common zero is not a single
    point and the basis construction below has no witness to work with.
    """

    __slots__ = ("a", "_v")

    def __init__(self, a):
        a = np.asarray(a, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("need a square coefficient matrix")
        if a.shape[0] < 2:
            raise ValueError("the basis construction needs at least two variables")
        self.a = a
        self._v = tuple(
            complex(z) for z in solve_linear(a, -np.ones(a.shape[0], dtype=complex))
        )

    @property
    def n(self):
        return self.a.shape[0]

    def solution(self):
        """The unique v with 1 + sum_k a[j, k] v_k = 0 for every j."""
        return self._v

    def polys(self):
        """The system rows as LaurentPoly objects."""
        out = []
        n = self.n
        for j in range(n):
            terms = {(0,) * n: 1.0 + 0j}
            for k in range(n):
                if self.a[j, k] != 0:
                    alpha = tuple(1 if i == k else 0 for i in range(n))
                    terms[alpha] = complex(self.a[j, k])
            out.append(LaurentPoly(n, terms))
        return out

    def __repr__(self):
        return f"LinearSystem(n={self.n})"


class AmoebaBasis:
    """n+1 linear polynomials whose amoebas meet exactly in Log|witness|."""

    __slots__ = ("polys", "witness")

    def __init__(self, polys, witness):
        self.polys = tuple(polys)
        self.witness = tuple(complex(z) for z in witness)

    @property
    def log_point(self):
        return tuple(math.log(abs(v)) for v in self.witness)

    def __repr__(self):
        return f"AmoebaBasis({len(self.polys)} polynomials, n={len(self.witness)})"


class BasisReport:
    """Outcome of verify_basis: per-axiom evidence."""

    __slots__ = ("samples", "escapes", "minimality_witnesses", "rank")

    def __init__(self, samples, escapes, minimality_witnesses, rank):
        self.samples = int(samples)
        self.escapes = int(escapes)
        self.minimality_witnesses = dict(minimality_witnesses)
        self.rank = int(rank)

    def __repr__(self):
        return (
            f"BasisReport(samples={self.samples}, escapes={self.escapes}, "
            f"minimality={len(self.minimality_witnesses)}, rank={self.rank})"
        )


# --------------------------------------------------------------------------
# exact membership for linear polynomials
# --------------------------------------------------------------------------

def _linear_parts(f):
    """Coefficient vector b of f = c0 (1 + sum b_j z_j), or NotLinear."""
    n = f.nvars
    const = None
    b = [0j] * n
    for alpha, c in f.terms.items():
        s = sum(alpha)
        if any(a < 0 for a in alpha) or s > 1:
            raise NotLinear("expected a constant plus degree-one terms")
        if s == 0:
            const = c
        else:
            b[alpha.index(1)] = c
    if const is None or const == 0:
        raise NotLinear("the constant term must be present and nonzero")
    return [bj / const for bj in b]


def linear_classify(f, w):
    """Exact membership of w against the amoeba of a linear polynomial.

    With r_j = |b_j| e^{w_j} and r_0 = 1 for the constant term, the tag is

    - ``Complement`` when some r_j strictly exceeds the sum of the others
      (returned with the order vector: e_j, or the zero vector when the
      constant dominates),
    - ``Boundary`` when some r_j equals the sum of the others within
      1e-9 of the normalized scale,
    - ``Interior`` otherwise.

    Lopsidedness is complete here, so no fiber computation is involved.

    Returns
    -------
    (tag, order)
        order is a tuple for Complement and None otherwise.
    """
    b = _linear_parts(f)
    n = f.nvars
    w = [float(v) for v in w]
    logr = [
        math.log(abs(bj)) + wj if bj != 0 else -math.inf
        for bj, wj in zip(b, w)
    ]
    cap = max(0.0, max(logr))
    # index 0 is the constant term, indices 1..n the variables
    vals = [math.exp(-cap)] + [math.exp(lr - cap) for lr in logr]
    total = math.fsum(vals)
    for j, vj in enumerate(vals):
        rest = total - vj
        if vj > rest + _EQUALITY_TOL:
            order = tuple(1 if k == j - 1 else 0 for k in range(n))
            return "Complement", order
    for vj in vals:
        if abs(vj - (total - vj)) <= _EQUALITY_TOL:
            return "Boundary", None
    return "Interior", None


# --------------------------------------------------------------------------
# the basis construction
# --------------------------------------------------------------------------

def _term_moduli(g, w):
    """List of (index, |coef| e^{w_j}) with index 0 for the constant."""
    vals = [0.0] * (g.nvars + 1)
    for alpha, c in g.terms.items():
        if sum(alpha) == 0:
            vals[0] = abs(c)
        else:
            j = alpha.index(1)
            vals[j + 1] = abs(c) * math.exp(w[j])
    return vals


def amoeba_basis(sys):
    """Basis of n+1 linear polynomials from a full-rank linear system.

    Solves the system for its zero v, then emits

        g_0 = 1 + (1/||v||_1) sum_k (-e^{-i arg v_k}) z_k
        g_j = 1 + sum_{k != j} e^{-i arg v_k} z_k
                - ((1 + ||v||_1 - |v_j|) / v_j) z_j

    Every g_j vanishes at v, and at w* = Log|v| the term moduli of g_j
    satisfy the boundary equality with dominant index j (index 0 meaning
    the constant term).  Both facts are re-checked numerically before the
    basis is returned.

    Raises
    ------
    ZeroCoordinate
        If some v_k vanishes; the phase factors are undefined then.
    AxiomFailure
        If a residual or equality check fails (indicates conditioning
        trouble, not a wrong construction).
    """
    if not isinstance(sys, LinearSystem):
        sys = LinearSystem(sys)
    v = sys.solution()
    n = sys.n
    vmax = max(abs(vk) for vk in v)
    if min(abs(vk) for vk in v) <= 1e-12 * vmax:
        raise ZeroCoordinate(
            "the system solution has a zero coordinate; the construction "
            "needs a solution in the open torus"
        )
    norm1 = math.fsum(abs(vk) for vk in v)
    phase = []
    for vk in v:
        ph = cmath.exp(-1j * cmath.phase(vk))
        # drop the roundoff crumbs the phase picks up for (almost) real
        # or purely imaginary coordinates
        re = 0.0 if abs(ph.real) <= 1e-14 else ph.real
        im = 0.0 if abs(ph.imag) <= 1e-14 else ph.imag
        phase.append(complex(re, im))

    def unit(k):
        return tuple(1 if i == k else 0 for i in range(n))

    polys = []
    terms = {(0,) * n: 1.0 + 0j}
    for k in range(n):
        terms[unit(k)] = -phase[k] / norm1
    polys.append(LaurentPoly(n, terms))
    for j in range(n):
        terms = {(0,) * n: 1.0 + 0j}
        for k in range(n):
            if k == j:
                terms[unit(k)] = -(1.0 + norm1 - abs(v[j])) / v[j]
            else:
                terms[unit(k)] = phase[k]
        polys.append(LaurentPoly(n, terms))

    w_star = [math.log(abs(vk)) for vk in v]
    for j, g in enumerate(polys):
        scale = math.fsum(_term_moduli(g, w_star))
        if abs(evaluate(g, v)) > 1e-9 * scale:
            raise AxiomFailure(
                f"basis polynomial {j} does not vanish at the witness",
                axiom=1,
                witness=v,
            )
        vals = _term_moduli(g, w_star)
        resid = abs(vals[j] - (math.fsum(vals) - vals[j]))
        if resid > 1e-9 * max(1.0, vals[j]):
            raise AxiomFailure(
                f"basis polynomial {j} misses its boundary equality at Log|v|",
                axiom=1,
                witness=tuple(w_star),
            )
    return AmoebaBasis(polys, v)


# --------------------------------------------------------------------------
# verification of the basis axioms
# --------------------------------------------------------------------------

_VERIFY_SEED = 8675309


def _dominance_gaps(g, w):
    """Per-index values r_j - (sum of the rest); positive means Complement."""
    vals = _term_moduli(g, w)
    total = math.fsum(vals)
    return [vj - (total - vj) for vj in vals]


def _minimality_witness(basis, i, pool):
    """A point inside every amoeba except the i-th, or None."""
    others = [g for k, g in enumerate(basis.polys) if k != i]
    g_i = basis.polys[i]
    for w in pool:
        if linear_classify(g_i, w)[0] != "Complement":
            continue
        if all(linear_classify(g, w)[0] != "Complement" for g in others):
            return tuple(w)
    # deterministic fallback: walk from Log|v| along the direction that
    # increases the i-th dominance gap and decreases all the others
    n = len(basis.witness)
    w_star = list(basis.log_point)
    rows = []
    target = []
    for k, g in enumerate(basis.polys):
        vals = _term_moduli(g, w_star)
        # gradient of gap_k wrt w: +r_j on the dominant slot, -r_j elsewhere
        dom = k if k < len(vals) else 0
        grad = []
        for j in range(1, n + 1):
            sign = 1.0 if j == dom else -1.0
            grad.append(sign * vals[j])
        rows.append(grad)
        target.append(1.0 if k == i else -1.0)
    sol, *_ = np.linalg.lstsq(np.asarray(rows), np.asarray(target), rcond=None)
    norm = float(np.linalg.norm(sol))
    if norm == 0.0:
        return None
    d = sol / norm
    for eps in (1e-3, 1e-2, 1e-1, 0.3, 1.0):
        w = tuple(w_star[j] + eps * float(d[j]) for j in range(n))
        if linear_classify(g_i, w)[0] == "Complement" and all(
            linear_classify(g, w)[0] != "Complement"
            for k, g in enumerate(basis.polys)
            if k != i
        ):
            return w
    return None


def verify_basis(basis, samples=10000, box=2.0):
    """Check the three amoeba-basis axioms by sampling and linear algebra.

    Axiom 1 (intersection): Log|v| lies in every member amoeba, and each
    of ``samples`` random points drawn uniformly from a box of half-side
    ``box`` around Log|v| is certified outside some member (so the
    intersection of the member amoebas is the single point Log|v|).
    Residuals g_j(v) = 0 are re-checked first, since a perturbed member
    breaks the intersection long before sampling can see it.

    Axiom 2 (minimality): for every i a witness point is produced that
    lies in all member amoebas except the i-th.

    Axiom 3 (generation): the affine coefficient rows (1, b_j1, .., b_jn)
    span a rank-n space, which for linear ideals means the members
    generate the same ideal as the original system.

    Returns a BasisReport on success and raises AxiomFailure otherwise.
    The sample stream is seeded, so the verdict is deterministic.
    """
    n = len(basis.witness)
    w_star = basis.log_point
    v = basis.witness

    for j, g in enumerate(basis.polys):
        scale = math.fsum(_term_moduli(g, list(w_star)))
        if abs(evaluate(g, v)) > 1e-9 * scale:
            raise AxiomFailure(
                f"axiom 1: member {j} does not vanish at the witness",
                axiom=1,
                witness=v,
            )
        if linear_classify(g, w_star)[0] == "Complement":
            raise AxiomFailure(
                f"axiom 1: Log|v| escapes member {j}",
                axiom=1,
                witness=w_star,
            )

    rng = np.random.default_rng(_VERIFY_SEED)
    draws = rng.uniform(-box, box, size=(int(samples), n))
    escapes = 0
    pool = []
    for row in draws:
        w = tuple(w_star[j] + float(row[j]) for j in range(n))
        pool.append(w)
        if any(linear_classify(g, w)[0] == "Complement" for g in basis.polys):
            escapes += 1
        elif max(abs(float(row[j])) for j in range(n)) > 1e-9:
            raise AxiomFailure(
                "axiom 1: a sampled point off Log|v| lies in every member amoeba",
                axiom=1,
                witness=w,
            )

    witnesses = {}
    for i in range(len(basis.polys)):
        w = _minimality_witness(basis, i, pool)
        if w is None:
            raise AxiomFailure(
                f"axiom 2: no point found in the intersection without member {i}",
                axiom=2,
                witness=None,
            )
        witnesses[i] = w

    rows = np.zeros((len(basis.polys), n + 1), dtype=complex)
    for j, g in enumerate(basis.polys):
        for alpha, c in g.terms.items():
            if sum(alpha) == 0:
                rows[j, 0] = c
            else:
                rows[j, 1 + alpha.index(1)] = c
    sing = np.linalg.svd(rows, compute_uv=False)
    rank = int(np.sum(sing > 1e-9 * sing[0]))
    if rank != n:
        raise AxiomFailure(
            f"axiom 3: coefficient rank {rank} != {n}",
            axiom=3,
            witness=None,
        )
    return BasisReport(samples, escapes, witnesses, rank)
