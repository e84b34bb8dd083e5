"""Sparse complex Laurent polynomials and their amoeba-facing transforms.

A Laurent polynomial f(z) = sum_alpha b_alpha z^alpha in n variables is
stored as a dictionary from integer exponent vectors to complex
coefficients.  The module keeps the algebra deliberately small: evaluate,
differentiate, build the logarithmic-Gauss numerators z_j df/dz_j, split
into real and imaginary parts over R[x, y], restrict to the fiber torus
over a log-point w, and take the Newton polytope.

>>> f = LaurentPoly(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
>>> evaluate(f, (1.0, 1.0))
(3+0j)
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NegativeExponent, Overflow, ZeroCoordinate

# exponents are kept in int32 territory; degrees past this are rejected
MAX_DEGREE = 10**6

# relative threshold below which coefficients are dropped after arithmetic
PRUNE_REL = 1e-14


class LaurentPoly:
    """Sparse Laurent polynomial in ``nvars`` complex variables.

    Parameters
    ----------
    nvars : int
        Number of variables (z1 .. z{nvars}).
    terms : dict
        Maps exponent tuples of length ``nvars`` (entries may be negative)
        to complex coefficients.  Exact zeros are dropped.

    Instances are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean = {}
        for alpha, b in terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars:
                raise ValueError(f"exponent {alpha} has wrong arity for nvars={nvars}")
            if any(abs(a) > MAX_DEGREE for a in alpha):
                raise Overflow(f"exponent {alpha} outside +-{MAX_DEGREE}")
            b = complex(b)
            if b != 0:
                clean[alpha] = b
        self.nvars = nvars
        self.terms = clean

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __repr__(self):
        items = ", ".join(f"{a}: {b}" for a, b in sorted(self.terms.items()))
        return f"LaurentPoly({self.nvars}, {{{items}}})"

    def __call__(self, z):
        return evaluate(self, z)

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations (used mainly by the expression parser) -------------

    def _prune(self, terms):
        if not terms:
            return {}
        cap = max(abs(b) for b in terms.values())
        return {a: b for a, b in terms.items() if abs(b) >= PRUNE_REL * cap}

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for a, b in other.terms.items():
            c = out.get(a, 0j) + b
            if c == 0:
                out.pop(a, None)
            else:
                out[a] = c
        return LaurentPoly(self.nvars, self._prune(out))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return LaurentPoly(self.nvars, {a: -b for a, b in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for a1, b1 in self.terms.items():
            for a2, b2 in other.terms.items():
                a = tuple(x + y for x, y in zip(a1, a2))
                c = out.get(a, 0j) + b1 * b2
                if c == 0:
                    out.pop(a, None)
                else:
                    out[a] = c
        return LaurentPoly(self.nvars, self._prune(out))

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            if len(self.terms) != 1:
                raise NegativeExponent("negative powers only apply to monomials")
            (alpha, b), = self.terms.items()
            return LaurentPoly(self.nvars, {tuple(k * a for a in alpha): b**k})
        out = LaurentPoly(self.nvars, {(0,) * self.nvars: 1.0})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        return LaurentPoly(self.nvars, {(0,) * self.nvars: complex(other)})

    # -- convenience -------------------------------------------------------

    @property
    def support(self):
        """Sorted tuple of exponent vectors with nonzero coefficient."""
        return tuple(sorted(self.terms))

    def degree_span(self, j):
        """(min, max) exponent of variable j over the support; (0, 0) if absent."""
        if not self.terms:
            return (0, 0)
        exps = [a[j] for a in self.terms]
        return (min(exps), max(exps))


class RealPoly:
    """Real polynomial in 2n variables (x1..xn, y1..yn), sparse like LaurentPoly."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        self.nvars = nvars
        self.terms = {tuple(int(a) for a in e): float(c) for e, c in terms.items() if c != 0.0}

    def __eq__(self, other):
        return (
            isinstance(other, RealPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __repr__(self):
        items = ", ".join(f"{a}: {b}" for a, b in sorted(self.terms.items()))
        return f"RealPoly({self.nvars}, {{{items}}})"

    def evaluate(self, xy):
        """Evaluate at a real point (x1..xn, y1..yn) with compensated summation."""
        xy = [float(v) for v in xy]
        if len(xy) != self.nvars:
            raise ValueError("point has wrong arity")
        s = 0.0
        comp = 0.0
        for expo in sorted(self.terms):
            term = self.terms[expo]
            for v, a in zip(xy, expo):
                term *= v**a
            y = term - comp
            t = s + y
            comp = (t - s) - y
            s = t
        return s


class RealPolyPair:
    """Real and imaginary parts of f(x + iy) as real polynomials."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    def __iter__(self):
        return iter((self.re, self.im))

    def __repr__(self):
        return f"RealPolyPair(re={self.re!r}, im={self.im!r})"


class NewtonPolytope:
    """Convex hull of the support lattice points.

    ``vertices`` are in counterclockwise order starting from the
    lexicographically smallest vertex; ``normalized_volume`` is twice the
    Euclidean area for n = 2 (the lattice length for n = 1), and 0 when the
    hull is lower dimensional.
    """

    __slots__ = ("vertices", "normalized_volume")

    def __init__(self, vertices, normalized_volume):
        self.vertices = tuple(tuple(v) for v in vertices)
        self.normalized_volume = int(normalized_volume)

    def __eq__(self, other):
        return (
            isinstance(other, NewtonPolytope)
            and self.vertices == other.vertices
            and self.normalized_volume == other.normalized_volume
        )

    def __repr__(self):
        return f"NewtonPolytope({self.vertices}, vol={self.normalized_volume})"


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def evaluate(f, z):
    """Evaluate f at a complex point.

    Parameters
    ----------
    f : LaurentPoly
    z : sequence of complex, length f.nvars
        Coordinates must be nonzero wherever a negative exponent occurs.

    Returns
    -------
    complex
        sum_alpha b_alpha z^alpha, accumulated with compensated (Kahan)
        summation over the support in sorted order, so the result is
        deterministic for a fixed input.

    Raises
    ------
    ZeroCoordinate
        If some z_j == 0 meets a negative exponent alpha_j.
    """
    z = [complex(v) for v in z]
    if len(z) != f.nvars:
        raise ValueError("point has wrong arity")
    zero_at = [v == 0 for v in z]
    s = 0j
    comp = 0j
    for alpha in sorted(f.terms):
        term = f.terms[alpha]
        for v, a, vz in zip(z, alpha, zero_at):
            if vz:
                if a < 0:
                    raise ZeroCoordinate(f"z_j = 0 with exponent {a}")
                if a > 0:
                    term = 0j
                    break
            else:
                term *= v**a
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s


def partial(f, j):
    """Partial derivative df/dz_j as a LaurentPoly (may have negative exponents)."""
    if not 0 <= j < f.nvars:
        raise ValueError(f"variable index {j} out of range")
    out = {}
    for alpha, b in f.terms.items():
        if alpha[j] == 0:
            continue
        shifted = list(alpha)
        shifted[j] -= 1
        out[tuple(shifted)] = b * alpha[j]
    return LaurentPoly(f.nvars, out)


def log_gauss_numerator(f, j):
    """z_j * df/dz_j, the j-th numerator of the logarithmic Gauss map.

    The support stays inside the support of f (each term b alpha z^alpha
    maps to b*alpha_j z^alpha), which is why this form is preferred over
    the bare derivative for Laurent input.
    """
    if not 0 <= j < f.nvars:
        raise ValueError(f"variable index {j} out of range")
    out = {}
    for alpha, b in f.terms.items():
        if alpha[j] != 0:
            out[alpha] = b * alpha[j]
    return LaurentPoly(f.nvars, out)


def realify(f):
    """Split f(x + iy) into real and imaginary parts over R[x1..xn, y1..yn].

    Parameters
    ----------
    f : LaurentPoly
        Must have nonnegative exponents; clear denominators first.

    Returns
    -------
    RealPolyPair
        Polynomials (f_re, f_im) in 2n real variables, ordered
        (x1..xn, y1..yn), with f(x + iy) = f_re(x, y) + i f_im(x, y).

    Raises
    ------
    NegativeExponent
        If any exponent of f is negative.
    """
    n = f.nvars
    total = {}
    for alpha, b in sorted(f.terms.items()):
        if any(a < 0 for a in alpha):
            raise NegativeExponent("realify needs a polynomial; clear denominators first")
        acc = {(0,) * (2 * n): complex(b)}
        for j, a in enumerate(alpha):
            if a == 0:
                continue
            parts = [(a - k, k, math.comb(a, k) * 1j**k) for k in range(a + 1)]
            nxt = {}
            for expo, c in acc.items():
                for xk, yk, bc in parts:
                    e = list(expo)
                    e[j] += xk
                    e[n + j] += yk
                    e = tuple(e)
                    v = nxt.get(e, 0j) + c * bc
                    nxt[e] = v
            acc = nxt
        for expo, c in acc.items():
            total[expo] = total.get(expo, 0j) + c
    re = {e: c.real for e, c in total.items() if c.real != 0.0}
    im = {e: c.imag for e, c in total.items() if c.imag != 0.0}
    return RealPolyPair(RealPoly(2 * n, re), RealPoly(2 * n, im))


def fiber_restrict(f, w):
    """Restrict f to the fiber torus over the log-point w.

    Substituting z = e^{w + i phi} turns f into the torus function
    sum_alpha b_alpha e^{<alpha, w>} e^{i<alpha, phi>}; the returned
    polynomial carries those coefficients in the torus variables t = e^{i phi}.
    To dodge overflow the coefficients are normalized so the largest modulus
    is exactly 1, and the discarded factor is reported in log space.

    Parameters
    ----------
    f : LaurentPoly
    w : sequence of float, length f.nvars

    Returns
    -------
    (LaurentPoly, float)
        The normalized restriction g and log_scale, with
        b_alpha e^{<alpha, w>} = g_alpha * e^{log_scale}.
        Coefficients with modulus below 1e-14 after normalization are dropped.

    Raises
    ------
    Overflow
        If w is non-finite or some <alpha, w> is not representable.
    """
    w = [float(v) for v in w]
    if len(w) != f.nvars:
        raise ValueError("w has wrong arity")
    if not all(math.isfinite(v) for v in w):
        raise Overflow("w must be finite")
    if not f.terms:
        return LaurentPoly(f.nvars, {}), 0.0
    logs = {}
    for alpha, b in f.terms.items():
        m = math.log(abs(b)) + math.fsum(a * v for a, v in zip(alpha, w))
        if not math.isfinite(m):
            raise Overflow(f"<alpha, w> overflows for alpha={alpha}")
        logs[alpha] = m
    cap = max(logs.values())
    out = {}
    for alpha, b in f.terms.items():
        mag = math.exp(logs[alpha] - cap)
        if mag >= PRUNE_REL:
            out[alpha] = (b / abs(b)) * mag
    return LaurentPoly(f.nvars, out), cap


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polytope(f):
    """Newton polytope of the support (n = 1 or n = 2).

    Returns
    -------
    NewtonPolytope
        Vertices counterclockwise from the lexicographically smallest; the
        normalized volume is 2 x area for n = 2 and the lattice length for
        n = 1.  Degenerate hulls (points, segments) get volume 0 for n = 2.
    """
    if not f.terms:
        raise ValueError("empty polynomial has no Newton polytope")
    if f.nvars == 1:
        lo, hi = f.degree_span(0)
        verts = [(lo,)] if lo == hi else [(lo,), (hi,)]
        return NewtonPolytope(verts, hi - lo)
    if f.nvars != 2:
        raise ValueError("newton_polytope is implemented for n <= 2")
    pts = sorted(set(f.terms))
    if len(pts) == 1:
        return NewtonPolytope(pts, 0)
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        return NewtonPolytope(verts[:2], 0)
    area2 = 0
    for (x1, y1), (x2, y2) in zip(verts, verts[1:] + verts[:1]):
        area2 += x1 * y2 - x2 * y1
    return NewtonPolytope(verts, abs(area2))


def monomial_clear(f):
    """Shift f by a monomial so all exponents are nonnegative with a zero minimum.

    Returns the shifted polynomial and the shift vector beta with
    f_shifted = z^beta * f.  The variety in the algebraic torus is unchanged.
    """
    if not f.terms:
        return f, (0,) * f.nvars
    beta = tuple(-min(a[j] for a in f.terms) for j in range(f.nvars))
    if all(b == 0 for b in beta):
        return f, beta
    out = {tuple(a + s for a, s in zip(alpha, beta)): c for alpha, c in f.terms.items()}
    return LaurentPoly(f.nvars, out), beta
