"""Polynomial KP tau-functions from finite Grassmannian data: CKP symmetry, Sato series, Hirota residue,
Fay addition formula, and the parametric hyperdeterminantal families."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Sequence

from gmpy2 import mpq

from .grassmann import PluckerVector, Subspace, affine_columns, from_affine, plucker, plucker_from_coords
from .hyperdet import cayley222
from .kernel import Matrix, Rat, SymPoly, as_matrix, det, fmt, matmul, poly_eval, rat
from .symfunc import complete_polys, complete_values, restrict_odd, schur, tilde


class PreconditionError(ValueError):
    pass


class VanishingTauError(ZeroDivisionError):
    pass


class TauPoly:
    """tau(t) = sum_lambda pi_lambda s_lambda(t).

    Holds whichever of (frame, plucker, poly) it was built from; the polynomial is
    derived lazily. Evaluation prefers det(H(t) W) for a frame, then the Schur sum.
    """

    def __init__(self, *, plucker_vector: PluckerVector | None = None, frame: Subspace | None = None,
                 poly: SymPoly | None = None, m: int | None = None):
        if plucker_vector is None and poly is None:
            raise ValueError("need Plücker data or a polynomial")
        self.plucker = plucker_vector
        self.frame = frame
        self.n = plucker_vector.n if plucker_vector is not None else None
        if poly is not None:
            self.m = poly.m if m is None else m
            self._poly = poly.widen(self.m) if poly.m != self.m else poly
        else:
            self.m = max(self.n * self.n, 1) if m is None else m
            self._poly = None
            need = max((sum(l) for l, c in plucker_vector.coords.items() if c), default=0)
            if self.m < need:
                raise ValueError(f"need at least {need} variables")

    @cached_property
    def poly(self) -> SymPoly:
        if self._poly is not None:
            return self._poly
        acc = SymPoly.constant(0, self.m)
        for lam, c in self.plucker.coords.items():
            if c:
                acc = acc + schur(lam, self.m) * c
        return acc

    @cached_property
    def times(self) -> int:
        """How many leading times the value depends on."""
        if self.plucker is not None:
            return max(2 * self.n - 1, 1)
        return self.m

    @cached_property
    def degree(self) -> int:
        if self.plucker is not None:
            return max((sum(l) for l, c in self.plucker.coords.items() if c), default=0)
        return self.poly.weighted_degree()

    def __call__(self, t: Sequence) -> Rat:
        return evaluate(self, t)

    def to_json(self) -> dict:
        if self.plucker is None:
            return {"m": self.m, "poly": self.poly.to_json()}
        return {
            "n": self.n,
            "m": self.m,
            "plucker": [{"lambda": list(l), "c": fmt(c)} for l, c in self.plucker.coords.items() if c],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TauPoly":
        if "plucker" in data:
            pv = plucker_from_coords(int(data["n"]), {tuple(t["lambda"]): t["c"] for t in data["plucker"]})
            return cls(plucker_vector=pv, m=data.get("m"))
        return cls(poly=SymPoly.from_json(data["poly"]))


def tau_from_plucker(pv: PluckerVector, m: int | None = None) -> TauPoly:
    return TauPoly(plucker_vector=pv, m=m)


def tau_from_subspace(w: Subspace, m: int | None = None) -> TauPoly:
    return TauPoly(plucker_vector=plucker(w), frame=w, m=m)


def tau_from_symmetric(a, m: int | None = None) -> TauPoly:
    return tau_from_subspace(from_affine(a), m)


def tau_from_affine(a, m: int | None = None) -> TauPoly:
    """Big-cell tau for any square A; symmetric A gives the CKP case."""
    return tau_from_subspace(affine_columns(as_matrix(a)), m)


def tau_from_poly(p: SymPoly) -> TauPoly:
    return TauPoly(poly=p)


def _pad(t: Sequence, m: int) -> list:
    t = [rat(v) for v in t[:m]]
    return t + [mpq(0)] * (m - len(t))


def evaluate(tau: TauPoly, t: Sequence) -> Rat:
    t = _pad(t, tau.times)
    if tau.frame is not None:
        n = tau.n
        hs = complete_values(t, 2 * n - 1)
        # H[j][p] = h_{p+j}, j = 1..N, p = -N..N-1; Cauchy-Binet gives sum_S s_S pi_S
        h = [[hs[p + j] if p + j >= 0 else mpq(0) for p in range(-n, n)] for j in range(1, n + 1)]
        return det(matmul(h, tau.frame.w))
    if tau.plucker is not None:
        n = tau.n
        hs = complete_values(t, 2 * n - 1)
        total = mpq(0)
        for lam, c in tau.plucker.coords.items():
            if c:
                total += c * _schur_from_h(lam, hs)
        return total
    return poly_eval(tau.poly, t)


def _schur_from_h(lam: tuple, hs: list) -> Rat:
    k = len(lam)
    if not k:
        return mpq(1)
    m = [[hs[lam[i] - i + j] if 0 <= lam[i] - i + j < len(hs) else mpq(0) for j in range(k)] for i in range(k)]
    return det(m)


def shifted(t: Sequence, m: int, plus: Sequence = (), minus: Sequence = ()) -> list:
    """t + sum [x] - sum [y], truncated to t_1..t_m; [x] shifts t_k by x^k / k."""
    out = _pad(t, m)
    for x in plus:
        x = rat(x)
        p = mpq(1)
        for k in range(1, m + 1):
            p *= x
            out[k - 1] += p / k
    for y in minus:
        y = rat(y)
        p = mpq(1)
        for k in range(1, m + 1):
            p *= y
            out[k - 1] -= p / k
    return out


# --- CKP symmetry -----------------------------------------------------------

def ckp_residual(tau: TauPoly) -> SymPoly:
    """tau(t) - tau(t~) with t~ = (t_1, -t_2, t_3, -t_4, ...)."""
    return tau.poly - tilde(tau.poly)


def even_flow_residuals(tau: TauPoly) -> dict:
    """d tau / d t_{2j} restricted to vanishing even times, for every even 2j <= m."""
    return {2 * j: restrict_odd(tau.poly.diff(2 * j)) for j in range(1, tau.m // 2 + 1)}


# --- Sato series ------------------------------------------------------------

def _truncate(p: SymPoly, d: int) -> SymPoly:
    return SymPoly._raw(p.m, {e: c for e, c in p.terms.items() if sum((i + 1) * k for i, k in enumerate(e)) <= d})


def _apply_h_of_derivatives(k: int, p: SymPoly, sign: int) -> SymPoly:
    """h_k evaluated at t_j -> sign * (1/j) d/dt_j, applied to p."""
    hk = complete_polys(max(k, 1))[k]
    acc = SymPoly.constant(0, p.m)
    for e, c in hk.terms.items():
        q = p
        coef = c
        for j, power in enumerate(e, start=1):
            for _ in range(power):
                if j > p.m:
                    q = SymPoly.constant(0, p.m)
                    break
                q = q.diff(j)
                coef *= mpq(sign, j)
        acc = acc + q * coef
    return acc


def sato_numerators(tau: TauPoly, order: int) -> list:
    """Coefficients of z^-i, i = 0..order, in tau(t - [1/z])."""
    return [_apply_h_of_derivatives(i, tau.poly, -1) for i in range(order + 1)]


def baker_series(tau: TauPoly, order: int, truncation: int = 12) -> list:
    """a_0..a_order with tau(t - [1/z]) / tau(t) = sum a_i z^-i, each a truncated power series in t."""
    if order < 1:
        raise ValueError("order must be at least 1")
    c0 = tau.poly.coefficient((0,) * tau.m)
    if not c0:
        raise VanishingTauError("tau has zero constant term; the Sato series is undefined")
    u = tau.poly / c0 - 1
    inv = SymPoly.constant(1, tau.m)
    term = SymPoly.constant(1, tau.m)
    for _ in range(truncation):
        term = _truncate(term * -u, truncation)
        if not term:
            break
        inv = inv + term
    inv = inv / c0
    return [_truncate(n * inv, truncation) for n in sato_numerators(tau, order)]


# --- Hirota bilinear residue -------------------------------------------------

def _interpolate(xs: Sequence, ys: Sequence) -> list:
    """Monomial coefficients of the interpolating polynomial (Newton form, then expanded)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [mpq(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [mpq(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
        for k in range(n):
            new[k] -= xs[i] * poly[k]
        new[0] += coef[i]
        poly = new
    return poly


def shift_series(tau: TauPoly, t: Sequence, sign: int) -> list:
    """Coefficients c_i with tau(t + sign [w]) = sum c_i w^i, exactly, by interpolation in w."""
    d = tau.degree
    xs = [mpq(i) for i in range(d + 1)]
    ys = []
    for w in xs:
        pt = shifted(t, tau.times, plus=[w]) if sign > 0 else shifted(t, tau.times, minus=[w])
        ys.append(evaluate(tau, pt))
    return _interpolate(xs, ys)


def hirota_residual(tau: TauPoly, t: Sequence, dt: Sequence, truncation: int | None = None) -> Rat:
    """Coefficient of z^-1 in exp(-xi(z, dt)) tau(t - [1/z]) tau(t + dt + [1/z]), xi(z, dt) = sum dt_k z^k.

    Both tau factors are polynomials in 1/z, so only finitely many powers of the
    exponential contribute; `truncation` caps that count and must cover them.
    """
    t = [rat(v) for v in t]
    dt = [rat(v) for v in dt]
    lower = shift_series(tau, t, -1)
    width = max(len(t), len(dt))
    upper = shift_series(tau, [a + b for a, b in zip(_pad(t, width), _pad(dt, width))], 1)
    need = len(lower) + len(upper) - 3
    if truncation is not None and truncation < need:
        raise PreconditionError(f"truncation {truncation} below the {need} exponential terms required")
    ex = complete_values([-v for v in dt], max(need, 0))
    total = mpq(0)
    for i, a in enumerate(lower):
        if not a:
            continue
        for j, b in enumerate(upper):
            k = i + j - 1
            if k >= 0 and b:
                total += ex[k] * a * b
    return total


# --- Fay addition formula ----------------------------------------------------

def _tau_at(tau: TauPoly, t, plus=(), minus=()) -> Rat:
    return evaluate(tau, shifted(t, tau.times, plus, minus))


def fay_residual(tau: TauPoly, t: Sequence, x: Sequence, y: Sequence) -> Rat:
    """LHS minus RHS of the k x k determinantal addition formula, k = len(x) = len(y)."""
    x = [rat(v) for v in x]
    y = [rat(v) for v in y]
    k = len(x)
    if len(y) != k or not 1 <= k <= 3:
        raise PreconditionError("need 1 <= k <= 3 and equally many x and y")
    if any(a == b for a in x for b in y):
        raise PreconditionError("x_i - y_j must be nonzero")
    t0 = _tau_at(tau, t)
    if not t0:
        raise VanishingTauError("tau(t) = 0 at the sample point")
    num = mpq(1)
    for i, j in combinations(range(k), 2):
        num *= (x[i] - x[j]) * (y[j] - y[i])
    den = mpq(1)
    for a in x:
        for b in y:
            den *= a - b
    lhs = _tau_at(tau, t, x, y) / t0 * num / den
    m = [[_tau_at(tau, t, [x[i]], [y[j]]) / ((x[i] - y[j]) * t0) for j in range(k)] for i in range(k)]
    return lhs - det(m)


# --- parametric hyperdeterminantal families -----------------------------------

class ShiftSpec(NamedTuple):
    x: tuple
    n: tuple

    def to_json(self) -> dict:
        return {"x": [fmt(v) for v in self.x], "n": list(self.n)}


def shift_spec(x: Sequence, n: Sequence | None = None) -> ShiftSpec:
    x = tuple(rat(v) for v in x)
    n = tuple(int(v) for v in (n if n is not None else [0] * len(x)))
    if len(n) != len(x):
        raise PreconditionError("x and n must have the same length")
    for a in x:
        for b in x:
            if a + b == 0:
                raise PreconditionError("x_i + x_j must be nonzero for all i, j")
    return ShiftSpec(x, n)


def _check_odd_point(t: Sequence):
    if any(rat(v) for v in t[1::2]):
        raise PreconditionError("t' must have vanishing even times")


def a_matrix(tau: TauPoly, t: Sequence, x: Sequence) -> Matrix:
    """A_ij = tau(t + [x_i] - [-x_j]) / ((x_i + x_j) tau(t))."""
    _check_odd_point(t)
    spec = shift_spec(x)
    t0 = _tau_at(tau, t)
    if not t0:
        raise VanishingTauError("tau(t') = 0")
    return [[_tau_at(tau, t, [a], [-b]) / ((a + b) * t0) for b in spec.x] for a in spec.x]


class LatticeTau:
    """Memoized tau^n = tau(t' + sum n_a ([x_a] - [-x_a]))."""

    def __init__(self, tau: TauPoly, t: Sequence, x: Sequence):
        _check_odd_point(t)
        self.tau = tau
        self.x = shift_spec(x).x
        self.base = _pad(t, tau.times)
        # [x] - [-x] moves only odd times, by 2 x^k / k
        self.steps = [[2 * a ** k / k if k % 2 else mpq(0) for k in range(1, tau.times + 1)] for a in self.x]
        self.cache: dict = {}

    def __call__(self, n: Sequence[int]) -> Rat:
        key = tuple(n)
        v = self.cache.get(key)
        if v is None:
            pt = list(self.base)
            for na, step in zip(key, self.steps):
                if na:
                    for k in range(len(pt)):
                        pt[k] += na * step[k]
            v = evaluate(self.tau, pt)
            self.cache[key] = v
        return v


def family_cube(lattice: LatticeTau, n: Sequence[int], triple: Sequence[int]) -> dict:
    """The eight sigma quantities at lattice point n for a triple of 1-based parameter indices, as a minor cube."""
    n = tuple(n)
    idx = [i - 1 for i in triple]
    if len(set(idx)) != 3 or any(not 0 <= i < len(lattice.x) for i in idx):
        raise PreconditionError(f"bad triple {tuple(triple)}")
    xs = [lattice.x[i] for i in idx]

    def bump(*pos):
        v = list(n)
        for p in pos:
            v[idx[p]] += 1
        return lattice(v)

    cube = {(): bump()}
    for p in range(3):
        cube[(p + 1,)] = bump(p) / (2 * xs[p])
    for p, q in combinations(range(3), 2):
        a, b = xs[p], xs[q]
        cube[(p + 1, q + 1)] = (a - b) ** 2 / (4 * a * b * (a + b) ** 2) * bump(p, q)
    num = mpq(1)
    for p, q in combinations(range(3), 2):
        num *= (xs[p] - xs[q]) ** 2
    den = mpq(1)
    for a in xs:
        for b in xs:
            den *= a + b
    cube[(1, 2, 3)] = num / den * bump(0, 1, 2)
    return cube


def family_residual(tau: TauPoly, t: Sequence, spec: ShiftSpec, triple: Sequence[int],
                    lattice: LatticeTau | None = None) -> Rat:
    lattice = lattice or LatticeTau(tau, t, spec.x)
    return cayley222(family_cube(lattice, spec.n, triple))


def principal_minor_cube(a: Matrix, triple: Sequence[int]) -> dict:
    """Principal minors of A on subsets of a triple of 1-based indices, as a minor cube."""
    out = {(): mpq(1)}
    for r in (1, 2, 3):
        for s in combinations((1, 2, 3), r):
            rows = [triple[i - 1] - 1 for i in s]
            out[s] = det([[a[i][j] for j in rows] for i in rows])
    return out
