"""Exact rational scalars, dense rational matrices and sparse polynomials in t_1..t_M."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq, mpz

Rat = type(mpq())
Matrix = list  # list of rows, each a list of Rat


def rat(x) -> Rat:
    """Coerce int, str ("p/q"), Fraction or mpq to an exact rational."""
    if isinstance(x, Rat):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpz":
        return mpq(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        return mpq(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fmt(q) -> str:
    """Serialize a rational as "p/q", or "p" when it is an integer."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    out = [[rat(x) for x in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> Matrix:
    return [[mpq(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[mpq(0)] * c for _ in range(r)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != len(b):
        raise ValueError("dimension mismatch in product")
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), mpq(0)) for col in bt] for row in a]


def is_symmetric(m: Matrix) -> bool:
    n, c = shape(m)
    return n == c and all(m[i][j] == m[j][i] for i in range(n) for j in range(i))


def det(m: Matrix) -> Rat:
    """Determinant by fraction-free Bareiss elimination.

    Each row is first scaled to integers; the integer Bareiss recurrence then
    divides exactly at every step, and the row scalings are undone at the end.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return mpq(1)
    scale = mpz(1)
    a = []
    for row in m:
        d = lcm(*(int(rat(x).denominator) for x in row))
        scale *= d
        a.append([mpz(rat(x).numerator) * (d // rat(x).denominator) for x in row])
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return mpq(0)
        pivot = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pivot * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = mpz(0)
        prev = pivot
    return mpq(sign * a[n - 1][n - 1], scale)


def submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[m[r][c] for c in cols] for r in rows]


def minor(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Rat:
    """Determinant of the submatrix on the given (0-based, increasing) rows and columns."""
    if len(rows) != len(cols):
        raise ValueError("minor needs equally many rows and columns")
    nr, nc = shape(m)
    for idx, bound in ((rows, nr), (cols, nc)):
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("minor indices must be strictly increasing")
        if idx and (idx[0] < 0 or idx[-1] >= bound):
            raise IndexError("minor index out of range")
    return det(submatrix(m, rows, cols))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination."""
    work = [[rat(x) for x in r] for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rk], work[piv] = work[piv], work[rk]
        p = work[rk]
        inv = 1 / p[c]
        for i in range(rk + 1, len(work)):
            f = work[i][c]
            if f:
                f *= inv
                row = work[i]
                for j in range(c, ncols):
                    row[j] -= f * p[j]
        rk += 1
        if rk == len(work):
            break
    return rk


class SymPoly:
    """Sparse polynomial in t_1..t_m with exact rational coefficients.

    Terms map dense exponent tuples (length m) to nonzero coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[tuple, object] | None = None):
        self.m = m
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != m or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {m} variables")
            c = rat(c)
            if c:
                clean[exp] = clean.get(exp, mpq(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, m: int, terms: dict) -> "SymPoly":
        p = cls.__new__(cls)
        p.m = m
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c, m: int) -> "SymPoly":
        c = rat(c)
        return cls._raw(m, {(0,) * m: c} if c else {})

    @classmethod
    def var(cls, k: int, m: int) -> "SymPoly":
        """The variable t_k (1-based)."""
        if not 1 <= k <= m:
            raise ValueError(f"t_{k} is outside t_1..t_{m}")
        exp = [0] * m
        exp[k - 1] = 1
        return cls._raw(m, {tuple(exp): mpq(1)})

    def widen(self, m: int) -> "SymPoly":
        if m < self.m:
            if any(any(e[m:]) for e in self.terms):
                raise ValueError("cannot drop variables that occur")
            return SymPoly._raw(m, {e[:m]: c for e, c in self.terms.items()})
        pad = (0,) * (m - self.m)
        return SymPoly._raw(m, {e + pad: c for e, c in self.terms.items()})

    def _coerce(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            if other.m != self.m:
                raise ValueError("polynomials over different variable counts")
            return other
        return SymPoly.constant(other, self.m)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SymPoly._raw(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly._raw(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SymPoly):
            c = rat(other)
            if not c:
                return SymPoly._raw(self.m, {})
            return SymPoly._raw(self.m, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SymPoly._raw(self.m, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / rat(c))

    def __pow__(self, k: int):
        result = SymPoly.constant(1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SymPoly):
            return self.m == other.m and self.terms == other.terms
        return self == SymPoly.constant(other, self.m)

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"t{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{fmt(c)}*{mono}" if mono else fmt(c))
        return " + ".join(parts)

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set[int]:
        return {sum((i + 1) * k for i, k in enumerate(e)) for e in self.terms}

    def weighted_degree(self) -> int:
        return max(self.weights(), default=0)

    def coefficient(self, exp: Sequence[int]) -> Rat:
        return self.terms.get(tuple(exp), mpq(0))

    def diff(self, r: int) -> "SymPoly":
        """Partial derivative with respect to t_r."""
        out = {}
        i = r - 1
        for e, c in self.terms.items():
            if i < self.m and e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return SymPoly._raw(self.m, out)

    def scale_vars(self, factors: Sequence) -> "SymPoly":
        """Substitute t_k -> factors[k-1] * t_k."""
        fs = [rat(f) for f in factors]
        out = {}
        for e, c in self.terms.items():
            v = c
            for f, k in zip(fs, e):
                if k:
                    v *= f ** k
            if v:
                out[e] = v
        return SymPoly._raw(self.m, out)

    def shift(self, offsets: Sequence) -> "SymPoly":
        """Substitute t_k -> t_k + offsets[k-1]."""
        result = SymPoly.constant(0, self.m)
        lin = [SymPoly.var(k + 1, self.m) + rat(o) for k, o in enumerate(offsets)]
        cache: dict = {}
        for e, c in self.terms.items():
            term = SymPoly.constant(c, self.m)
            for k, p in enumerate(e):
                if p:
                    key = (k, p)
                    if key not in cache:
                        cache[key] = lin[k] ** p
                    term = term * cache[key]
            result = result + term
        return result

    def __call__(self, point: Sequence) -> Rat:
        return poly_eval(self, point)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "terms": [{"exp": list(e), "c": fmt(c)} for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymPoly":
        return cls(int(data["m"]), {tuple(t["exp"]): rat(t["c"]) for t in data["terms"]})


def poly_eval(p: SymPoly, point: Sequence) -> Rat:
    """Exact evaluation at a rational point of length m."""
    if len(point) != p.m:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.m} variables")
    pt = [rat(x) for x in point]
    powers: dict = {}
    total = mpq(0)
    for e, c in p.terms.items():
        v = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in powers:
                    powers[key] = pt[i] ** k
                v *= powers[key]
        total += v
    return total


def random_rat(rng, bound: int = 9, nonzero: bool = False) -> Rat:
    """p/q with |p| <= bound and 1 <= q <= bound, from a random.Random instance."""
    while True:
        p = rng.randint(-bound, bound)
        if p or not nonzero:
            return mpq(p, rng.randint(1, bound))


def random_matrix(rng, rows: int, cols: int, bound: int = 9, symmetric: bool = False) -> Matrix:
    if symmetric:
        if rows != cols:
            raise ValueError("a symmetric matrix must be square")
        m = zeros(rows, rows)
        for i in range(rows):
            for j in range(i, rows):
                m[i][j] = m[j][i] = random_rat(rng, bound)
        return m
    return [[random_rat(rng, bound) for _ in range(cols)] for _ in range(rows)]
