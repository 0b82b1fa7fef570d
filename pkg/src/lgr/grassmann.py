"""Finite Grassmannian elements, Plücker coordinates, Lagrangian tests and the reduction to Gr(3,6)."""

from __future__ import annotations

from itertools import combinations
from typing import Mapping, NamedTuple, Sequence

from gmpy2 import mpq

from . import extalg
from .combinat import (
    MarkedIndex,
    from_positions,
    partitions_in_box,
    particle_positions,
    transpose,
)
from .extalg import ExtVector, sort_sign
from .kernel import Matrix, Rat, as_matrix, det, fmt, is_symmetric, rank, rat, shape


class NotSymmetricError(ValueError):
    pass


class NotLagrangianError(ValueError):
    pass


class Subspace(NamedTuple):
    """N-dimensional subspace of H_N: a 2N x N matrix whose row r is the e_{r-N} coordinate."""

    n: int
    w: Matrix

    def row(self, index: int) -> list:
        return self.w[index + self.n]

    def to_json(self) -> dict:
        return {"n": self.n, "w": [[fmt(x) for x in r] for r in self.w]}


class PluckerVector(NamedTuple):
    """Coefficients pi_lambda of |lambda> = e_{l_1} ^ ... ^ e_{l_N} over the N x N box."""

    n: int
    coords: dict

    def __getitem__(self, lam) -> Rat:
        return self.coords.get(tuple(lam), mpq(0))

    def to_json(self) -> dict:
        return {"n": self.n, "coords": [{"lambda": list(l), "c": fmt(c)} for l, c in self.coords.items()]}


def subspace(w, n: int | None = None) -> Subspace:
    m = as_matrix(w)
    r, c = shape(m)
    n = c if n is None else n
    if r != 2 * n or c != n:
        raise ValueError(f"expected a {2 * n}x{n} matrix, got {r}x{c}")
    return Subspace(n, m)


def affine_columns(a: Matrix) -> Subspace:
    """Columns e_{-i} + sum_j A_ij (-1)^(j-1) e_{j-1}, without any symmetry check."""
    n = len(a)
    w = [[mpq(0)] * n for _ in range(2 * n)]
    for i in range(1, n + 1):
        w[-i + n][i - 1] = mpq(1)
        for j in range(1, n + 1):
            w[j - 1 + n][i - 1] = a[i - 1][j - 1] * (-1) ** (j - 1)
    return Subspace(n, w)


def from_affine(a) -> Subspace:
    a = as_matrix(a)
    if not is_symmetric(a):
        raise NotSymmetricError("affine coordinate matrix must be symmetric")
    return affine_columns(a)


def plucker(w: Subspace) -> PluckerVector:
    """pi_lambda = det of the rows of W at e_{l_1}, ..., e_{l_N} (decreasing positions)."""
    if rank(w.w) < w.n:
        raise ValueError("subspace matrix is rank deficient")
    coords = {}
    for lam in partitions_in_box(w.n):
        rows = [w.row(p) for p in particle_positions(lam, w.n)]
        coords[lam] = det(rows)
    return PluckerVector(w.n, coords)


def plucker_from_coords(n: int, values: Mapping) -> PluckerVector:
    box = set(partitions_in_box(n))
    coords = {lam: mpq(0) for lam in partitions_in_box(n)}
    for lam, c in values.items():
        lam = tuple(lam)
        if lam not in box:
            raise ValueError(f"{lam} is not in the {n}x{n} box")
        coords[lam] = rat(c)
    return PluckerVector(n, coords)


def to_ext(pv: PluckerVector) -> ExtVector:
    return ExtVector(pv.n, {particle_positions(lam, pv.n): c for lam, c in pv.coords.items() if c})


def from_ext(phi: ExtVector) -> PluckerVector:
    if phi.degrees() - {phi.n}:
        raise ValueError("only degree-N vectors have Plücker coordinates")
    coords = {lam: mpq(0) for lam in partitions_in_box(phi.n)}
    for key, c in phi.terms.items():
        dec = tuple(reversed(key))
        s, _ = sort_sign(dec)
        coords[from_positions(dec)] = s * c
    return PluckerVector(phi.n, coords)


def decomposable(w: Subspace) -> ExtVector:
    """W_1 ^ ... ^ W_N as an exterior vector."""
    cols = []
    for c in range(w.n):
        cols.append(ExtVector(w.n, {(r - w.n,): w.w[r][c] for r in range(2 * w.n)}))
    return extalg.wedge_all(cols, w.n)


def _inc_coord(pv: PluckerVector, idx: Sequence[int]) -> Rat:
    # coefficient of e_{idx[0]} ^ ... in the order given
    s, key = sort_sign(idx)
    if not s:
        return mpq(0)
    dec = tuple(reversed(key))
    s2, _ = sort_sign(dec)
    return s * s2 * pv[from_positions(dec)]


class Residual(NamedTuple):
    relation: str
    residual: Rat

    def to_json(self) -> dict:
        return {"relation": self.relation, "residual": fmt(self.residual)}


def plucker_residuals(pv: PluckerVector, mode: str = "full") -> list:
    """One residual per (I, J) relation (full) or per three-term instance (short)."""
    n = pv.n
    idx = list(range(-n, n))
    out = []
    if mode == "full":
        for I in combinations(idx, n - 1):
            for J in combinations(idx, n + 1):
                total = mpq(0)
                for m, jm in enumerate(J):
                    a = _inc_coord(pv, I + (jm,))
                    if a:
                        total += (-1) ** m * a * _inc_coord(pv, J[:m] + J[m + 1:])
                out.append(Residual(f"I={list(I)};J={list(J)}", total))
    elif mode == "short":
        for common in combinations(idx, n - 2):
            rest = [x for x in idx if x not in common]
            for five in combinations(rest, 4):
                for i in five:
                    j1, j2, j3 = [x for x in five if x != i]
                    c = common
                    total = (
                        _inc_coord(pv, c + (i, j1)) * _inc_coord(pv, c + (j2, j3))
                        + _inc_coord(pv, c + (i, j3)) * _inc_coord(pv, c + (j1, j2))
                        + _inc_coord(pv, c + (i, j2)) * _inc_coord(pv, c + (j3, j1))
                    )
                    out.append(Residual(f"I'={list(c)};i={i};J={[j1, j2, j3]}", total))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return out


def symplectic_pairing(u: Sequence, v: Sequence, n: int) -> Rat:
    """omega(u, v) with omega(e_i, e_j) = (-1)^i delta_{i,-j-1}; vectors are row-indexed from e_-N."""
    total = mpq(0)
    for i in range(-n, n):
        j = -i - 1
        total += (-1) ** (i % 2) * u[i + n] * v[j + n]
    return total


def is_lagrangian(w: Subspace) -> bool:
    cols = list(zip(*w.w))
    return all(symplectic_pairing(cols[a], cols[b], w.n) == 0 for a in range(w.n) for b in range(a + 1, w.n))


def linear_relation_residuals(pv: PluckerVector) -> list:
    """Coefficient of e_alpha in omega^dag applied to sum pi_lambda |lambda>, for every |alpha| = N-2.

    The pair (e_{-i}, e_{i-1}) is restored to alpha for each i with -i and i-1 both
    absent; the sign is (-1)^(i-1) times (-1)^(number of alpha indices strictly between -i and i-1).
    """
    n = pv.n
    out = []
    if n < 2:
        return out
    for alpha in combinations(range(-n, n), n - 2):
        aset = set(alpha)
        total = mpq(0)
        for i in range(1, n + 1):
            if -i in aset or i - 1 in aset:
                continue
            between = sum(1 for x in alpha if -i < x < i - 1)
            dec = tuple(sorted(aset | {-i, i - 1}, reverse=True))
            total += (-1) ** ((i - 1 + between) % 2) * pv[from_positions(dec)]
        out.append(Residual(f"alpha={list(alpha)}", total))
    return out


def two_term_residuals(pv: PluckerVector) -> list:
    out = []
    for lam in partitions_in_box(pv.n):
        lt = transpose(lam)
        if lam < lt:
            continue
        if lam != lt:
            out.append(Residual(f"{list(lam)}-{list(lt)}", pv[lam] - pv[lt]))
    return out


def lagrangian_linear_residuals(pv: PluckerVector) -> list:
    return linear_relation_residuals(pv) + two_term_residuals(pv)


def subset_key(J: Sequence[int]) -> str:
    return "".join(str(j) for j in J)


def symmetric_label(J: Sequence[int], n: int) -> tuple:
    """The symmetric partition lambda(J, J)."""
    from .combinat import IJLabel, from_ij_label

    return from_ij_label(IJLabel(tuple(J), tuple(J), n))


def lagrange_map(w: Subspace) -> dict:
    """L_J = pi_{lambda(J,J)} for all increasing J in 1..N, keyed by tuple J."""
    if not is_lagrangian(w):
        raise NotLagrangianError("Lagrange map needs a Lagrangian subspace")
    pv = plucker(w)
    return lagrange_coefficients(pv)


def lagrange_coefficients(pv: PluckerVector) -> dict:
    n = pv.n
    return {J: pv[symmetric_label(J, n)] for k in range(n + 1) for J in combinations(range(1, n + 1), k)}


def normalized(values: Mapping) -> dict:
    """Divide by the first nonzero value (projective normal form)."""
    lead = next((v for v in values.values() if v), None)
    if lead is None:
        return dict(values)
    return {k: v / lead for k, v in values.items()}


def projectively_equal(a: Mapping, b: Mapping) -> bool:
    return a.keys() == b.keys() and normalized(a) == normalized(b)


def z2_orbit(w: Subspace, eps: Sequence[int]) -> Subspace:
    """Apply diag(eps_i) on each 2-plane span(e_{-i}, e_{i-1})."""
    if len(eps) != w.n or any(e not in (1, -1) for e in eps):
        raise ValueError("eps must be a vector of N signs")
    rows = [list(r) for r in w.w]
    for i in range(1, w.n + 1):
        for p in (-i, i - 1):
            rows[p + w.n] = [eps[i - 1] * x for x in rows[p + w.n]]
    return Subspace(w.n, rows)


def f_vector(label: int, starred: bool, n: int) -> ExtVector:
    """f_i = e_{-i}; f*_i = (-1)^(i-1) e_{i-1}."""
    if starred:
        return ExtVector.basis(n, label - 1) * (-1) ** ((label - 1) % 2)
    return ExtVector.basis(n, -label)


def reduce36(phi: ExtVector, marked: MarkedIndex) -> ExtVector:
    """Contract with f_(A,I), project away the (B,I) directions, relabel onto H_3."""
    n = phi.n
    if n < 3:
        raise ValueError("reduction needs N >= 3")
    I, starred = tuple(marked.I), tuple(marked.starred)
    if len(I) != n - 3 or len(starred) != len(I) or list(I) != sorted(set(I)) or any(not 1 <= i <= n for i in I):
        raise ValueError(f"malformed marked index {marked}")
    dual = extalg.wedge_all((f_vector(i, s, n) for i, s in zip(I, starred)), n)
    contracted = extalg.contract(phi, dual)
    return _project_relabel(contracted, marked)


def project_complement(phi: ExtVector, marked: MarkedIndex) -> ExtVector:
    """Drop every term involving a (B,I) direction (the partners of f_(A,I))."""
    forbidden = {(i - 1) if not s else -i for i, s in zip(marked.I, marked.starred)}
    return ExtVector._raw(phi.n, {k: c for k, c in phi.terms.items() if not forbidden & set(k)})


def _project_relabel(phi: ExtVector, marked: MarkedIndex) -> ExtVector:
    n = phi.n
    keep = [i for i in range(1, n + 1) if i not in marked.I]
    out = {}
    for key, c in project_complement(phi, marked).terms.items():
        new = []
        sign = 1
        for x in key:
            if x < 0:
                new.append(-(keep.index(-x) + 1))
            else:
                src = x + 1
                r = keep.index(src) + 1
                new.append(r - 1)
                sign *= (-1) ** ((src - r) % 2)
        out[tuple(new)] = sign * c
    return ExtVector(3, out)


def reduction_status(phi: ExtVector, marked: MarkedIndex) -> tuple[str, list]:
    """("pass" | "fail" | "inconclusive", nonzero residuals) for one reduction."""
    red = reduce36(phi, marked)
    if not red:
        return "inconclusive", []
    pv = from_ext(red)
    bad = [r for r in plucker_residuals(pv, "full") if r.residual]
    iso = extalg.omega_contract(red)
    bad += [Residual(f"isotropy{list(k)}", c) for k, c in sorted(iso.terms.items())]
    return ("fail" if bad else "pass"), bad
