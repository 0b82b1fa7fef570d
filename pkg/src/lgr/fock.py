"""Charged free-fermion Fock space on partitions: Clifford generators, currents, omega operators, Chevalley generators.

A state |lambda; n> is the semi-infinite wedge e_{l_1} ^ e_{l_2} ^ ... with
l_i = lambda_i - i + n. Every infinite operator sum below is evaluated over the
finitely many indices where a term can be nonzero; the bounds are derived from
the "sea" of occupied sites below n - len(lambda).
"""

from __future__ import annotations

from typing import Mapping, NamedTuple

from gmpy2 import mpq

from .combinat import from_positions, partition, transpose
from .kernel import Rat, SymPoly, fmt, rat
from .symfunc import schur


class FockState(NamedTuple):
    lam: tuple
    n: int

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "n": self.n}


class FockVector:
    """Finite rational combination of basis states |lambda; n>."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        out: dict = {}
        for key, c in (terms or {}).items():
            lam, n = key
            st = FockState(partition(lam), int(n))
            out[st] = out.get(st, 0) + rat(c)
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> "FockVector":
        v = cls.__new__(cls)
        v.terms = terms
        return v

    @classmethod
    def state(cls, lam=(), n: int = 0, c=1) -> "FockVector":
        return cls({(tuple(lam), n): c})

    def __add__(self, other: "FockVector"):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return FockVector._raw(out)

    def __neg__(self):
        return FockVector._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = rat(c)
        if not c:
            return FockVector._raw({})
        return FockVector._raw({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{fmt(c)}|{list(k.lam)};{k.n}>" for k, c in sorted(self.terms.items()))

    def charges(self) -> set:
        return {k.n for k in self.terms}

    def coefficient(self, lam, n: int = 0) -> Rat:
        return self.terms.get(FockState(tuple(lam), n), mpq(0))

    def to_json(self) -> dict:
        return {"terms": [dict(k.to_json(), c=fmt(c)) for k, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "FockVector":
        return cls({(tuple(t["lambda"]), int(t["n"])): rat(t["c"]) for t in data["terms"]})


def _positions(st: FockState, depth: int) -> list:
    """The first `depth` particle positions (depth >= len(lambda))."""
    lam = st.lam + (0,) * (depth - len(st.lam))
    return [lam[k] - k - 1 + st.n for k in range(depth)]


def _sea_top(st: FockState) -> int:
    # every site <= this is occupied
    return st.n - len(st.lam) - 1


def _apply_basis(op, v: FockVector) -> FockVector:
    out: dict = {}
    for st, c in v.terms.items():
        for st2, s in op(st):
            out[st2] = out.get(st2, 0) + s * c
    return FockVector._raw({k: x for k, x in out.items() if x})


def _psi_state(i: int, st: FockState):
    if i <= _sea_top(st):
        return []
    pos = _positions(st, len(st.lam) + 1)
    if i in pos:
        return []
    above = sum(1 for p in pos if p > i)
    new = sorted(pos + [i], reverse=True)
    return [(FockState(from_positions(new, st.n + 1), st.n + 1), (-1) ** above)]


def _psi_dag_state(i: int, st: FockState):
    if i <= _sea_top(st):
        depth = st.n - i + 1
    else:
        depth = len(st.lam) + 1
    pos = _positions(st, max(depth, len(st.lam) + 1))
    if i not in pos:
        return []
    above = sum(1 for p in pos if p > i)
    new = [p for p in pos if p != i]
    return [(FockState(from_positions(new, st.n - 1), st.n - 1), (-1) ** above)]


def psi(i: int, v: FockVector) -> FockVector:
    """psi_i = e_i ^ (sign from the occupied sites above i; zero if i is occupied)."""
    return _apply_basis(lambda st: _psi_state(i, st), v)


def psi_dag(i: int, v: FockVector) -> FockVector:
    """psi^dag_i removes e_i with the same sign rule; zero if i is empty."""
    return _apply_basis(lambda st: _psi_dag_state(i, st), v)


def bilinear(i: int, j: int, v: FockVector) -> FockVector:
    """psi_i psi^dag_j."""
    return psi(i, psi_dag(j, v))


def current(r: int, v: FockVector) -> FockVector:
    """J_r = sum_j psi_j psi^dag_{j+r}.

    A term is nonzero only if j+r is occupied and j is empty, so j lies between
    the sea top minus |r| and the highest particle plus |r|.
    """
    if r == 0:
        raise ValueError("J_0 is not used")
    out = FockVector()
    for st, c in v.terms.items():
        single = FockVector._raw({st: c})
        lo = _sea_top(st) - abs(r)
        hi = (st.lam[0] - 1 + st.n if st.lam else st.n - 1) + abs(r)
        for j in range(lo, hi + 1):
            out = out + bilinear(j, j + r, single)
    return out


def omega_hat(v: FockVector) -> FockVector:
    """-sum_{i>=0} (-1)^i psi_{-i-1} psi_i; needs -i-1 above the sea, so i < len(lambda) - n."""
    out = FockVector()
    for st, c in v.terms.items():
        single = FockVector._raw({st: c})
        for i in range(0, max(0, -_sea_top(st)) + 1):
            out = out + psi(-i - 1, psi(i, single)) * (-((-1) ** i))
    return out


def omega_hat_dag(v: FockVector) -> FockVector:
    """sum_{i>=0} (-1)^i psi^dag_{-i-1} psi^dag_i; needs i occupied, so i <= highest particle."""
    out = FockVector()
    for st, c in v.terms.items():
        single = FockVector._raw({st: c})
        top = st.lam[0] - 1 + st.n if st.lam else st.n - 1
        for i in range(0, max(top, -1) + 1):
            out = out + psi_dag(-i - 1, psi_dag(i, single)) * (-1) ** i
    return out


def chevalley(kind: str, j: int, v: FockVector) -> FockVector:
    """E_j, F_j, H_j of the C_infinity Chevalley basis, as fermion bilinears."""
    if j < 0:
        raise ValueError("Chevalley index must be nonnegative")
    if kind == "E":
        pairs = [(-1, 0, 1)] if j == 0 else [(j - 1, j, 1), (-j - 1, -j, 1)]
    elif kind == "F":
        pairs = [(0, -1, 1)] if j == 0 else [(j, j - 1, 1), (-j, -j - 1, 1)]
    elif kind == "H":
        if j == 0:
            pairs = [(-1, -1, 1), (0, 0, -1)]
        else:
            pairs = [(j - 1, j - 1, 1), (j, j, -1), (-j - 1, -j - 1, 1), (-j, -j, -1)]
    else:
        raise ValueError(f"unknown Chevalley generator {kind!r}")
    out = FockVector()
    for a, b, s in pairs:
        out = out + bilinear(a, b, v) * s
    return out


def vacuum(n: int = 0) -> FockVector:
    return FockVector.state((), n)


def hw_vector(j: int) -> FockVector:
    """omega_hat^j applied to the charge -2j vacuum."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    v = vacuum(-2 * j)
    for _ in range(j):
        v = omega_hat(v)
    return v


def _require_charge_zero(v: FockVector):
    if v.charges() - {0}:
        raise ValueError("expected a charge-zero vector")


def pi_S(v: FockVector) -> FockVector:
    """Average each |lambda> with |lambda^T>."""
    _require_charge_zero(v)
    out: dict = {}
    half = mpq(1, 2)
    for st, c in v.terms.items():
        for lam in (st.lam, transpose(st.lam)):
            k = FockState(lam, 0)
            out[k] = out.get(k, 0) + half * c
    return FockVector._raw({k: x for k, x in out.items() if x})


def ckp_null_residuals(v: FockVector, bound: int = 8) -> dict:
    """omega_hat v, omega_hat^dag v, and the symmetric part of J_{2j} v for 2j <= bound.

    The last family is the coefficient form of d tau / d t_{2j} = 0 at vanishing even
    times: its pairing with every transpose-symmetric state must vanish.
    """
    _require_charge_zero(v)
    out = {"omega": omega_hat(v), "omega_dag": omega_hat_dag(v)}
    for k in range(2, bound + 1, 2):
        out[f"J{k}"] = pi_S(current(k, v))
    return out


def from_plucker(coords: Mapping) -> FockVector:
    return FockVector({(tuple(lam), 0): c for lam, c in coords.items()})


def bosonize(v: FockVector, m: int) -> SymPoly:
    """sum_lambda c_lambda s_lambda(t_1..t_m) for a charge-zero vector."""
    _require_charge_zero(v)
    acc = SymPoly.constant(0, m)
    for st, c in v.terms.items():
        acc = acc + schur(st.lam, m) * c
    return acc
