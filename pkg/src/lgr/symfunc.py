"""Schur polynomials in the normalized power sums t_k = p_k / k, Murnaghan-Nakayama operators, Miwa shifts."""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from gmpy2 import mpq

from .combinat import border_strip_add, border_strip_remove, partition, transpose
from .kernel import Rat, SymPoly, det, rat

SchurCombo = dict  # Partition -> Rat


@lru_cache(maxsize=None)
def complete_polys(m: int) -> tuple:
    """h_0..h_m as polynomials in t_1..t_m, from k h_k = sum_i i t_i h_{k-i}."""
    hs = [SymPoly.constant(1, m)]
    for k in range(1, m + 1):
        acc = SymPoly.constant(0, m)
        for i in range(1, k + 1):
            acc = acc + SymPoly.var(i, m) * hs[k - i] * i
        hs.append(acc / k)
    return tuple(hs)


@lru_cache(maxsize=None)
def elementary_polys(m: int) -> tuple:
    """e_k = h_k evaluated at t_i -> (-1)^(i+1) t_i."""
    flip = [1 if i % 2 else -1 for i in range(1, m + 1)]
    return tuple(h.scale_vars(flip) for h in complete_polys(m))


def _poly_det(entries: list, m: int) -> SymPoly:
    # Laplace expansion along rows, memoized on the set of used columns.
    n = len(entries)
    memo: dict = {}

    def expand(row: int, used: int) -> SymPoly:
        if row == n:
            return SymPoly.constant(1, m)
        key = used
        if key in memo:
            return memo[key]
        acc = SymPoly.constant(0, m)
        sign = 1
        for col in range(n):
            if used >> col & 1:
                continue
            e = entries[row][col]
            if e:
                acc = acc + sign * e * expand(row + 1, used | 1 << col)
            sign = -sign
        memo[key] = acc
        return acc

    return expand(0, 0)


def _jt_matrix(lam: Sequence[int], seq: Sequence, zero) -> list:
    n = len(lam)
    return [[seq[lam[i] - i + j] if 0 <= lam[i] - i + j < len(seq) else zero for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def _schur_cached(lam: tuple, m: int) -> SymPoly:
    lt = transpose(lam)
    zero = SymPoly.constant(0, m)
    if len(lam) <= len(lt):
        return _poly_det(_jt_matrix(lam, complete_polys(m), zero), m)
    return _poly_det(_jt_matrix(lt, elementary_polys(m), zero), m)


def schur(lam: Sequence[int], m: int | None = None) -> SymPoly:
    """s_lambda(t) by Jacobi-Trudi (with h), or its dual form (with e) when lambda is taller than wide."""
    lam = partition(lam)
    m = sum(lam) if m is None else m
    if m < sum(lam):
        raise ValueError(f"need at least {sum(lam)} variables for {list(lam)}")
    if m == 0:
        return SymPoly.constant(1, 0)
    return _schur_cached(lam, m)


def schur_jacobi_trudi(lam: Sequence[int], m: int) -> SymPoly:
    """Plain h-based Jacobi-Trudi determinant (no dual shortcut)."""
    lam = partition(lam)
    return _poly_det(_jt_matrix(lam, complete_polys(m), SymPoly.constant(0, m)), m)


def combo_to_poly(c: Mapping, m: int) -> SymPoly:
    acc = SymPoly.constant(0, m)
    for lam, coef in c.items():
        if coef:
            acc = acc + schur(lam, m) * coef
    return acc


def _clean(c: dict) -> SchurCombo:
    return {k: v for k, v in sorted(c.items()) if v}


def mn_apply(r: int, c: Mapping) -> SchurCombo:
    """M_r: add r-border strips with sign (-1)^(height+1); matches multiplication by p_r = r t_r."""
    if r < 1:
        raise ValueError("r must be positive")
    out: dict = {}
    for lam, coef in c.items():
        for mu, h in border_strip_add(partition(lam), r):
            out[mu] = out.get(mu, 0) + (-1) ** (h + 1) * rat(coef)
    return _clean(out)


def mn_dual(r: int, c: Mapping) -> SchurCombo:
    """M*_r: remove r-border strips with sign (-1)^(height+1); matches d/dt_r."""
    if r < 1:
        raise ValueError("r must be positive")
    out: dict = {}
    for lam, coef in c.items():
        for mu, h in border_strip_remove(partition(lam), r):
            out[mu] = out.get(mu, 0) + (-1) ** (h + 1) * rat(coef)
    return _clean(out)


def restrict_odd(p: SymPoly) -> SymPoly:
    """Set t_2 = t_4 = ... = 0."""
    return SymPoly._raw(p.m, {e: c for e, c in p.terms.items() if not any(e[1::2])})


def tilde(p: SymPoly) -> SymPoly:
    """p(t_1, -t_2, t_3, -t_4, ...)."""
    return p.scale_vars([1 if i % 2 else -1 for i in range(1, p.m + 1)])


def miwa_offsets(x, m: int, sign: int = 1) -> list:
    """Offsets of the shift t_j -> t_j + sign x^j / j."""
    x = rat(x)
    return [sign * x ** j / j for j in range(1, m + 1)]


def miwa_pm_offsets(x, m: int) -> list:
    """Offsets of [x] - [-x]: 2 x^j / j on odd j, nothing on even j."""
    x = rat(x)
    return [2 * x ** j / j if j % 2 else mpq(0) for j in range(1, m + 1)]


def miwa_shift(p: SymPoly, x, sign: int = 1) -> SymPoly:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return p.shift(miwa_offsets(x, p.m, sign))


def miwa_pm_shift(p: SymPoly, x) -> SymPoly:
    return p.shift(miwa_pm_offsets(x, p.m))


def complete_values(t: Sequence, k: int) -> list:
    """Numeric h_0..h_k at the point t (missing t_i count as 0)."""
    t = [rat(v) for v in t]
    hs = [mpq(1)]
    for n in range(1, k + 1):
        acc = mpq(0)
        for i in range(1, min(n, len(t)) + 1):
            if t[i - 1]:
                acc += i * t[i - 1] * hs[n - i]
        hs.append(acc / n)
    return hs


def schur_value(lam: Sequence[int], t: Sequence) -> Rat:
    """s_lambda evaluated numerically via Jacobi-Trudi."""
    lam = partition(lam)
    if not lam:
        return mpq(1)
    hs = complete_values(t, lam[0] + len(lam))
    return det(_jt_matrix(lam, hs, mpq(0)))
