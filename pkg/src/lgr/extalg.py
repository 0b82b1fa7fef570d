"""The exterior algebra of H_N = span(e_-N .. e_{N-1}) with its symplectic ladder operators."""

from __future__ import annotations

from itertools import combinations, product
from math import factorial
from typing import Iterable, Mapping, NamedTuple, Sequence

from gmpy2 import mpq

from .combinat import admissible_tableaux, is_standard
from .kernel import Rat, fmt, rat


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple]:
    """Sign of the permutation sorting idx increasingly, and the sorted tuple (sign 0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


class ExtVector:
    """Sparse element of the exterior algebra; keys are increasing index tuples."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, object] | None = None):
        self.n = n
        out: dict = {}
        for idx, c in (terms or {}).items():
            if any(not -n <= i < n for i in idx):
                raise ValueError(f"index outside -{n}..{n - 1}: {idx}")
            s, key = sort_sign(idx)
            if not s:
                continue
            out[key] = out.get(key, 0) + s * rat(c)
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "ExtVector":
        v = cls.__new__(cls)
        v.n = n
        v.terms = terms
        return v

    @classmethod
    def scalar(cls, c, n: int) -> "ExtVector":
        c = rat(c)
        return cls._raw(n, {(): c} if c else {})

    @classmethod
    def basis(cls, n: int, *idx: int) -> "ExtVector":
        """e_{idx[0]} ^ e_{idx[1]} ^ ... in the order given."""
        return cls(n, {tuple(idx): 1})

    def _check(self, other: "ExtVector"):
        if not isinstance(other, ExtVector) or other.n != self.n:
            raise ValueError("exterior vectors over different spaces")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ExtVector._raw(self.n, out)

    def __neg__(self):
        return ExtVector._raw(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = rat(c)
        if not c:
            return ExtVector._raw(self.n, {})
        return ExtVector._raw(self.n, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ExtVector) and self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{fmt(c)}*e{list(k)}" for k, c in sorted(self.terms.items()))

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def coefficient(self, idx: Sequence[int]) -> Rat:
        """Coefficient of e_{idx[0]} ^ ... in the order given."""
        s, key = sort_sign(idx)
        return s * self.terms.get(key, mpq(0)) if s else mpq(0)

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"idx": list(k), "c": fmt(c)} for k, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "ExtVector":
        return cls(int(data["n"]), {tuple(t["idx"]): rat(t["c"]) for t in data["terms"]})


def _insert(a: int, key: tuple) -> tuple[int, tuple]:
    """e_a ^ e_key, with key increasing."""
    if a in key:
        return 0, ()
    below = sum(1 for x in key if x < a)
    return (-1) ** below, key[:below] + (a,) + key[below:]


def _remove(a: int, key: tuple) -> tuple[int, tuple]:
    """Interior product i_{e_a} applied to e_key."""
    if a not in key:
        return 0, ()
    p = key.index(a)
    return (-1) ** p, key[:p] + key[p + 1:]


def wedge(u: ExtVector, v: ExtVector) -> ExtVector:
    u._check(v)
    out: dict = {}
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            s, key = sort_sign(k1 + k2)
            if s:
                out[key] = out.get(key, 0) + s * c1 * c2
    return ExtVector._raw(u.n, {k: c for k, c in out.items() if c})


def wedge_all(vectors: Iterable[ExtVector], n: int) -> ExtVector:
    acc = ExtVector.scalar(1, n)
    for v in vectors:
        acc = wedge(acc, v)
    return acc


def psi(a: int, phi: ExtVector) -> ExtVector:
    """Exterior multiplication by e_a from the left."""
    out: dict = {}
    for k, c in phi.terms.items():
        s, key = _insert(a, k)
        if s:
            out[key] = s * c
    return ExtVector._raw(phi.n, out)


def psi_dag(a: int, phi: ExtVector) -> ExtVector:
    """Interior product with the dual of e_a (e-basis taken orthonormal)."""
    out: dict = {}
    for k, c in phi.terms.items():
        s, key = _remove(a, k)
        if s:
            out[key] = s * c
    return ExtVector._raw(phi.n, out)


def contract(phi: ExtVector, dual: ExtVector) -> ExtVector:
    """Interior product i_dual(phi), with i_{u ^ v} = i_v o i_u.

    The e-basis (hence the f-basis, which differs only by signs) is treated
    as orthonormal, so i_{f_1}(f_1 ^ f_2) = f_2.
    """
    phi._check(dual)
    out: dict = {}
    for dkey, dc in dual.terms.items():
        for k, c in phi.terms.items():
            s, key = 1, k
            for a in dkey:
                t, key = _remove(a, key)
                s *= t
                if not s:
                    break
            if s:
                out[key] = out.get(key, 0) + s * c * dc
    return ExtVector._raw(phi.n, {k: c for k, c in out.items() if c})


def x_element(i: int, n: int) -> ExtVector:
    """X_i = (-1)^i e_i ^ e_{-i-1}; note X_i = X_{-i-1}."""
    return ExtVector.basis(n, i, -i - 1) * (-1) ** (i % 2)


def omega(n: int) -> ExtVector:
    """The symplectic form sum_{i=1..N} (-1)^i e_{-i} ^ e_{i-1}."""
    return ExtVector(n, {(-i, i - 1): (-1) ** i for i in range(1, n + 1)})


def omega_wedge(phi: ExtVector) -> ExtVector:
    return wedge(omega(phi.n), phi)


def omega_contract(phi: ExtVector) -> ExtVector:
    return contract(phi, omega(phi.n))


def omega_wedge_fermionic(phi: ExtVector) -> ExtVector:
    """-sum_{i=0}^{N-1} (-1)^i psi_{-i-1} psi_i."""
    acc = ExtVector(phi.n)
    for i in range(phi.n):
        acc = acc + psi(-i - 1, psi(i, phi)) * (-(-1) ** i)
    return acc


def omega_contract_fermionic(phi: ExtVector) -> ExtVector:
    """sum_{i=0}^{N-1} (-1)^i psi^dag_{-i-1} psi^dag_i."""
    acc = ExtVector(phi.n)
    for i in range(phi.n):
        acc = acc + psi_dag(-i - 1, psi_dag(i, phi)) * (-1) ** i
    return acc


class BasisElement(NamedTuple):
    n: int
    j: int
    tableau: tuple  # standard tableau (rows) of admissible shape filled by 1..|Kbar|
    K: tuple  # increasing indices in -N..N-1 containing no pair {i, -i-1}


def complement_pairs(K: Sequence[int], n: int) -> tuple:
    """Kbar: the negative representatives -a of pairs {-a, a-1} untouched by K, as (-1, -2, ...)."""
    ks = set(K)
    return tuple(-a for a in range(1, n + 1) if -a not in ks and a - 1 not in ks)


def is_isotropic_set(K: Sequence[int]) -> bool:
    ks = set(K)
    return len(ks) == len(K) and not any(-k - 1 in ks for k in ks)


def two_box_rows(tableau) -> int:
    return sum(1 for row in tableau if len(row) == 2)


def check_basis_element(b: BasisElement):
    n, j, T, K = b
    if any(not -n <= k < n for k in K) or list(K) != sorted(K) or not is_isotropic_set(K):
        raise ValueError(f"K={K} is not an isotropic index set for N={n}")
    m = len(complement_pairs(K, n))
    if sum(len(r) for r in T) != m or not is_standard(T) or any(len(r) > 2 for r in T):
        raise ValueError(f"tableau {T} is not an admissible standard tableau of weight {m}")
    l = two_box_rows(T)
    if not 0 <= j <= m - 2 * l:
        raise ValueError(f"omega power {j} outside 0..{m - 2 * l}")


def phi_basis_element(b: BasisElement) -> ExtVector:
    """(1/j!) omega_Kbar^j V_T(X_Kbar) ^ e_K."""
    check_basis_element(b)
    n, j, T, K = b
    kbar = complement_pairs(K, n)
    xs = [x_element(k, n) for k in kbar]
    acc = ExtVector.scalar(1, n)
    for row in T:
        if len(row) == 2:
            acc = wedge(acc, xs[row[0] - 1] - xs[row[1] - 1])
    if j:
        om = ExtVector(n)
        for x in xs:
            om = om + x
        for _ in range(j):
            acc = wedge(om, acc)
        acc = acc * mpq(1, factorial(j))
    e_k = ExtVector.basis(n, *reversed(K))
    return wedge(acc, e_k)


def isotropic_sets(n: int) -> list:
    out = []
    for choice in product((None, "neg", "pos"), repeat=n):
        K = [(-a if c == "neg" else a - 1) for a, c in zip(range(1, n + 1), choice) if c]
        out.append(tuple(sorted(K)))
    return sorted(out, key=lambda k: (len(k), k))


def basis_labels(n: int, k: int, j: int) -> list:
    """Labels (j, T, K) of the basis of the submodule P^k_{k-2j} of Lambda^k."""
    if j < 0 or 2 * j > k or k > n + j:
        raise ValueError(f"no submodule P^{k}_{k - 2 * j} for N={n}")
    out = []
    for K in isotropic_sets(n):
        rest = k - 2 * j - len(K)
        if rest < 0 or rest % 2:
            continue
        l = rest // 2
        m = n - len(K)
        if 2 * l > m or j > m - 2 * l:
            continue
        for T in admissible_tableaux(m, l):
            out.append(BasisElement(n, j, T, K))
    return out


def basis_P(n: int, k: int, j: int) -> list:
    return [phi_basis_element(b) for b in basis_labels(n, k, j)]


def degree_keys(n: int, k: int) -> list:
    return list(combinations(range(-n, n), k))


def coordinates(v: ExtVector, keys: Sequence[tuple]) -> list:
    return [v.terms.get(key, mpq(0)) for key in keys]


def ladder_residuals(b: BasisElement) -> tuple[ExtVector, ExtVector]:
    """omega_wedge and omega_contract on phi_{j,T,K}, minus their predicted multiples of phi_{j+-1,T,K}."""
    phi = phi_basis_element(b)
    top = len(complement_pairs(b.K, b.n)) - 2 * two_box_rows(b.tableau)
    up = phi_basis_element(b._replace(j=b.j + 1)) * (b.j + 1) if b.j < top else ExtVector(b.n)
    down = phi_basis_element(b._replace(j=b.j - 1)) * (top - b.j + 1) if b.j > 0 else ExtVector(b.n)
    return omega_wedge(phi) - up, omega_contract(phi) - down


def submodule_dimensions(n: int) -> dict:
    """{(k, j): number of basis labels of P^k_{k-2j}} over every admissible pair."""
    out = {}
    for k in range(2 * n + 1):
        for j in range(k // 2 + 1):
            if k <= n + j:
                out[(k, j)] = len(basis_labels(n, k, j))
    return out
