"""Tracing the amoeba contour by sweeping the logarithmic Gauss direction.

Critical points of the Log map on V(f) are exactly the points whose
logarithmic Gauss image is real.  Sweeping that real direction by an
angle theta turns the critical set into a family of zero-dimensional
systems

    f = 0,    sin(theta) z2 df/dz2 - cos(theta) z1 df/dz1 = 0,

each solved by Sylvester elimination of z2 and back-substitution.  The
log-images of the solutions sample the contour curve; pushing them
through the fiber classifier afterwards separates the actual amoeba
boundary from the inner contour arcs.
"""

from __future__ import annotations

import cmath
import math
import warnings

import numpy as np

from .errors import DegenerateSlice, IdenticallyZero
from .fiber import classify
from .laurent import log_gauss_numerator, monomial_clear
from .numeric import UniPoly, roots, sylvester_resultant

# moduli below this cutoff are elimination artifacts, not torus points
TORUS_CUTOFF = 1e-9

# accepted witnesses satisfy both |g| and |h| below this times the term sum
RESIDUAL_REL = 1e-7


class SkippedSlices(UserWarning):
    """Some sweep angles produced degenerate slices and were left out."""


class ContourPoint:
    """One traced sample of the contour.

    ``w`` is the log-image, ``s_param`` the sweep angle theta in [0, pi)
    encoding the projective Gauss direction (cos theta : sin theta), and
    ``source_z`` a witness on the variety: |f(source_z)| and the Gauss
    combination at source_z both vanish to 1e-7 relative accuracy, and
    w = Log|source_z|.
    """

    __slots__ = ("w", "s_param", "source_z")

    def __init__(self, w, s_param, source_z):
        self.w = (float(w[0]), float(w[1]))
        self.s_param = float(s_param)
        self.source_z = (complex(source_z[0]), complex(source_z[1]))

    def __repr__(self):
        return (
            f"ContourPoint(w=({self.w[0]:.9f}, {self.w[1]:.9f}), "
            f"theta={self.s_param:.9f})"
        )


def _dense(g):
    """Cleared 2-variable LaurentPoly to a dense array b[i, j] ~ z1^i z2^j."""
    d1 = g.degree_span(0)[1]
    d2 = g.degree_span(1)[1]
    b = np.zeros((d1 + 1, d2 + 1), dtype=complex)
    for (a1, a2), c in g.terms.items():
        b[a1, a2] = c
    return b


def _eval_bi(b, z1, z2):
    """Value and both Gauss numerators z_j dp/dz_j of a dense bivariate poly."""
    p1 = z1 ** np.arange(b.shape[0])
    p2 = z2 ** np.arange(b.shape[1])
    rows = b @ p2
    val = p1 @ rows
    gam1 = (np.arange(b.shape[0]) * p1) @ rows
    gam2 = (p1 @ b) @ (np.arange(b.shape[1]) * p2)
    return complex(val), complex(gam1), complex(gam2)


def _abs_at(b, z1, z2):
    """Term-modulus sums for the value and both Gauss numerators."""
    ab = np.abs(b)
    p1 = abs(z1) ** np.arange(b.shape[0])
    p2 = abs(z2) ** np.arange(b.shape[1])
    rows = ab @ p2
    sval = float(p1 @ rows)
    sg1 = float((np.arange(b.shape[0]) * p1) @ rows)
    sg2 = float((p1 @ ab) @ (np.arange(b.shape[1]) * p2))
    return sval, sg1, sg2


def _polish_pair(gb, hb, z1, z2, steps=6):
    """Newton iterations on the holomorphic pair (g, h), damped per coordinate."""
    for _ in range(steps):
        g, gg1, gg2 = _eval_bi(gb, z1, z2)
        h, hg1, hg2 = _eval_bi(hb, z1, z2)
        sg = _abs_at(gb, z1, z2)[0]
        sh = _abs_at(hb, z1, z2)[0]
        if abs(g) <= 1e-14 * sg and abs(h) <= 1e-14 * sh:
            break
        a11, a12 = gg1 / z1, gg2 / z2
        a21, a22 = hg1 / z1, hg2 / z2
        dd = a11 * a22 - a12 * a21
        if abs(dd) <= 1e-14 * (abs(a11 * a22) + abs(a12 * a21) + 1e-300):
            break
        d1 = (g * a22 - h * a12) / dd
        d2 = (h * a11 - g * a21) / dd
        ratio = max(abs(d1) / (0.5 * abs(z1)), abs(d2) / (0.5 * abs(z2)))
        if ratio > 1.0:
            d1 /= ratio
            d2 /= ratio
        z1, z2 = z1 - d1, z2 - d2
        if abs(z1) < 1e-300 or abs(z2) < 1e-300:
            break
    return z1, z2


def _vertical_guard(gb, t1, slice_c):
    """Detect a slice where g(t1, .) vanished identically (a line in V)."""
    bound = (abs(t1) ** np.arange(gb.shape[0])) @ np.abs(gb)
    cap = float(np.max(bound))
    if float(np.max(np.abs(slice_c))) < 1e-12 * cap:
        raise DegenerateSlice(
            "the variety contains a coordinate line through a slice root"
        )


def _direct_candidates(gb, hb):
    """Candidate pairs when the Gauss combination lost its z2 dependence."""
    pairs = []
    for cl in roots(UniPoly(hb[:, 0])):
        t1 = cl.center
        if abs(t1) < TORUS_CUTOFF:
            continue
        slice_c = (t1 ** np.arange(gb.shape[0])) @ gb
        if gb.shape[1] == 1:
            # f lost z2 as well; a shared root would carry a full line
            _vertical_guard(gb, t1, slice_c)
            continue
        _vertical_guard(gb, t1, slice_c)
        for c2 in roots(UniPoly(slice_c)):
            if abs(c2.center) >= TORUS_CUTOFF:
                pairs.append((t1, c2.center))
    return pairs


def _resultant_candidates(gb, hb, theta):
    """Candidate pairs from Sylvester elimination of z2."""
    try:
        res = sylvester_resultant(gb, hb)
    except IdenticallyZero as exc:
        raise DegenerateSlice(
            f"slice at theta={theta:.6f} shares a component with the variety"
        ) from exc
    pairs = []
    for cl in roots(res):
        t1 = cl.center
        if abs(t1) < TORUS_CUTOFF:
            continue
        slice_c = (t1 ** np.arange(gb.shape[0])) @ gb
        _vertical_guard(gb, t1, slice_c)
        for c2 in roots(UniPoly(slice_c)):
            t2 = c2.center
            if abs(t2) < TORUS_CUTOFF:
                continue
            hval = _eval_bi(hb, t1, t2)[0]
            if abs(hval) <= 1e-4 * _abs_at(hb, t1, t2)[0]:
                pairs.append((t1, t2))
    return pairs


def contour_slice(f, theta):
    """Solve one Gauss-direction slice of the contour.

    Parameters
    ----------
    f : LaurentPoly
        Two variables, at least two terms.
    theta : float
        Sweep angle.  The slice system is f = 0 together with
        sin(theta) z2 d2f - cos(theta) z1 d1f = 0.

    Returns
    -------
    list of ContourPoint
        One entry per solution of the slice system in (C*)^2, sorted by
        (w, phases).  Coordinates with modulus below 1e-9 count as
        elimination artifacts and are dropped.

    Raises
    ------
    DegenerateSlice
        When the slice system is not zero-dimensional at this angle.
    """
    if f.nvars != 2:
        raise ValueError("contour tracing is implemented for two variables")
    if len(f.terms) < 2:
        raise ValueError("monomials have empty varieties in the torus")
    theta = float(theta)
    st, ct = math.sin(theta), math.cos(theta)
    # snap axis directions: cos(pi/2) is 6.1e-17 in floats, which would hide
    # an identically vanishing Gauss combination behind a phantom tiny term
    if abs(st) < 1e-15:
        st = 0.0
    if abs(ct) < 1e-15:
        ct = 0.0
    comb = st * log_gauss_numerator(f, 1) - ct * log_gauss_numerator(f, 0)
    if not comb.terms:
        raise DegenerateSlice(
            f"Gauss combination vanishes identically at theta={theta:.6f}"
        )
    g, _ = monomial_clear(f)
    h, _ = monomial_clear(comb)
    gb = _dense(g)
    hb = _dense(h)

    if hb.shape[1] == 1:
        pairs = _direct_candidates(gb, hb)
    elif gb.shape[1] == 1:
        # f is free of z2 but the combination is not; cannot happen for a
        # cleared f because then z2 df/dz2 vanishes identically
        raise DegenerateSlice("variety is a union of coordinate lines")
    else:
        pairs = _resultant_candidates(gb, hb, theta)

    kept = []  # entries [z1, z2, residual]
    for t1, t2 in pairs:
        z1, z2 = _polish_pair(gb, hb, t1, t2)
        if min(abs(z1), abs(z2)) < TORUS_CUTOFF:
            continue
        gval, gg1, gg2 = _eval_bi(gb, z1, z2)
        hval = _eval_bi(hb, z1, z2)[0]
        sg, sgg1, sgg2 = _abs_at(gb, z1, z2)
        sh = _abs_at(hb, z1, z2)[0]
        if not (abs(gval) <= RESIDUAL_REL * sg and abs(hval) <= RESIDUAL_REL * sh):
            continue  # also rejects non-finite values from runaway candidates
        # witnesses must be critical: real Gauss image or a singular point
        if abs(gg1) >= 1e-13 * sgg1 or abs(gg2) >= 1e-13 * sgg2:
            score = abs((gg1 * gg2.conjugate()).imag) / max(abs(gg1 * gg2), 1e-300)
            if score >= 1e-6:
                continue
        resid = abs(gval) / max(sg, 1e-300) + abs(hval) / max(sh, 1e-300)
        for item in kept:
            if (
                abs(z1 - item[0]) <= 1e-7 * (1.0 + abs(item[0]))
                and abs(z2 - item[1]) <= 1e-7 * (1.0 + abs(item[1]))
            ):
                if resid < item[2]:
                    item[0], item[1], item[2] = z1, z2, resid
                break
        else:
            kept.append([z1, z2, resid])

    s_param = theta % math.pi
    points = [
        ContourPoint((math.log(abs(z1)), math.log(abs(z2))), s_param, (z1, z2))
        for z1, z2, _ in kept
    ]
    points.sort(
        key=lambda p: (p.w, cmath.phase(p.source_z[0]), cmath.phase(p.source_z[1]))
    )
    return points


def trace_contour(f, n_slices):
    """Sweep the Gauss direction over [0, pi) and pool the slices.

    Angles are theta_k = pi k / n_slices for k = 0 .. n_slices - 1.
    Degenerate slices are skipped and reported once through a
    SkippedSlices warning.  The pooled cloud is deduplicated on the pair
    (w rounded to a 1e-9 grid, s_param), so the same log-point is kept
    once per fold direction, and returned sorted by (w, s_param).
    """
    n_slices = int(n_slices)
    if n_slices < 1:
        raise ValueError("need at least one slice")
    points = []
    skipped = []
    for k in range(n_slices):
        theta = math.pi * k / n_slices
        try:
            points.extend(contour_slice(f, theta))
        except DegenerateSlice as exc:
            skipped.append((theta, str(exc)))
    if skipped:
        warnings.warn(
            f"skipped {len(skipped)} of {n_slices} slices; first at "
            f"theta={skipped[0][0]:.6f}: {skipped[0][1]}",
            SkippedSlices,
            stacklevel=2,
        )
    seen = {}
    for p in points:
        key = (round(p.w[0] * 1e9), round(p.w[1] * 1e9), round(p.s_param * 1e12))
        if key not in seen:
            seen[key] = p
    return sorted(seen.values(), key=lambda p: (p.w, p.s_param))


def classify_contour(f, points, critical_tol=1e-6):
    """Split traced contour points into boundary and inner contour.

    Each point's log-image goes through the fiber classifier.  Boundary
    tags, with or without the caveat flag, land under ``"boundary"``;
    degenerate fibers under ``"degenerate"``; everything else under
    ``"inner"``.

    Returns
    -------
    dict
        Keys ``"boundary"``, ``"inner"``, ``"degenerate"``; values are
        lists of (ContourPoint, PointClass) pairs in input order.
    """
    out = {"boundary": [], "inner": [], "degenerate": []}
    for p in points:
        pc = classify(f, p.w, critical_tol=critical_tol)
        if pc.tag == "Boundary":
            out["boundary"].append((p, pc))
        elif pc.tag == "Degenerate":
            out["degenerate"].append((p, pc))
        else:
            out["inner"].append((p, pc))
    return out
