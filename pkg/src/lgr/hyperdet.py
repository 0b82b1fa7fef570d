"""Cayley 2x2x2 hyperdeterminant, core relations on principal minors, Gr(3,6) coordinates and identities."""

from __future__ import annotations

from itertools import combinations
from typing import Mapping, NamedTuple, Sequence

from gmpy2 import mpq

from .extalg import ExtVector
from .kernel import Rat, fmt, rat

CUBE_KEYS = ((), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3))


def cube(values: Mapping) -> dict:
    """Normalize a minor cube; keys may be tuples or strings like "", "1", "12"."""
    out = {}
    for k, v in values.items():
        key = tuple(int(ch) for ch in k) if isinstance(k, str) else tuple(sorted(k))
        out[key] = rat(v)
    if set(out) != set(CUBE_KEYS):
        raise ValueError("a minor cube needs exactly the 8 subsets of {1,2,3}")
    return out


def _complement(s: tuple) -> tuple:
    return tuple(i for i in (1, 2, 3) if i not in s)


def cayley222(c: Mapping) -> Rat:
    """Sum of squared pair products, minus twice their pairwise products, plus 4 times the two quartic terms."""
    c = cube(c)
    pairs = [c[s] * c[_complement(s)] for s in CUBE_KEYS if 1 in s]
    total = sum((p * p for p in pairs), mpq(0))
    total -= 2 * sum((p * q for p, q in combinations(pairs, 2)), mpq(0))
    total += 4 * (c[()] * c[(1, 2)] * c[(1, 3)] * c[(2, 3)] + c[(1,)] * c[(2,)] * c[(3,)] * c[(1, 2, 3)])
    return total


def minor_cube(coeffs: Mapping, base: Sequence[int], triple: Sequence[int]) -> dict:
    """{S: L_{base + triple_S}} for the 8 subsets S of the triple."""
    out = {}
    for s in CUBE_KEYS:
        key = tuple(sorted(set(base) | {triple[i - 1] for i in s}))
        out[s] = coeffs[key]
    return out


def core_residual(coeffs: Mapping, base: Sequence[int], triple: Sequence[int]) -> Rat:
    base, triple = tuple(base), tuple(triple)
    if len(set(triple)) != 3 or set(base) & set(triple) or len(set(base)) != len(base):
        raise ValueError("the base set and the triple must be disjoint and distinct")
    return cayley222(minor_cube(coeffs, base, triple))


def core_instances(n: int) -> list:
    """Every (base set, increasing triple) with disjoint entries from 1..N."""
    out = []
    for triple in combinations(range(1, n + 1), 3):
        rest = [i for i in range(1, n + 1) if i not in triple]
        for k in range(len(rest) + 1):
            for base in combinations(rest, k):
                out.append((base, triple))
    return out


# f-basis labels: 1,2,3 are f_i = e_{-i}; 4,5,6 stand for f*_1,f*_2,f*_3 = (-1)^(i-1) e_{i-1}.
_F_INDEX = {1: (-1, 1), 2: (-2, 1), 3: (-3, 1), 4: (0, 1), 5: (1, -1), 6: (2, 1)}
_NAMES = {"1": 1, "2": 2, "3": 3, "1*": 4, "2*": 5, "3*": 6}


def f_coordinate(phi: ExtVector, *labels: str) -> Rat:
    """Coefficient of f_a ^ f_b ^ f_c (in the order given) in phi, with labels like "1", "2*"."""
    idx, sign = [], 1
    for lab in labels:
        e, s = _F_INDEX[_NAMES[lab]]
        idx.append(e)
        sign *= s
    return sign * phi.coefficient(idx)


class Gr36Coords(NamedTuple):
    S0: Rat
    S1: Rat
    S2: Rat
    S3: Rat
    S0s: Rat
    S1s: Rat
    S2s: Rat
    S3s: Rat
    T1: Rat
    T2: Rat
    T3: Rat
    T1s: Rat
    T2s: Rat
    T3s: Rat

    def to_json(self) -> dict:
        return {k.replace("s", "*"): fmt(v) for k, v in self._asdict().items()}


def gr36_coords(phi: ExtVector) -> tuple[Gr36Coords, dict]:
    """The 8 S and 6 T coordinates, plus a consistency residual for each T pair."""
    if phi.n != 3 or phi.degrees() - {3}:
        raise ValueError("expected a 3-vector on the six-dimensional space")
    p = lambda *ls: f_coordinate(phi, *ls)  # noqa: E731
    S = [p("1", "2", "3"), p("2", "3", "1*"), -p("1", "3", "2*"), p("1", "2", "3*")]
    Ss = [p("1*", "2*", "3*"), p("1", "2*", "3*"), -p("2", "1*", "3*"), p("3", "1*", "2*")]
    T_pairs = {
        "T1": (p("1", "2", "2*"), -p("1", "3", "3*")),
        "T2": (p("2", "3", "3*"), p("1", "2", "1*")),
        "T3": (p("2", "3", "2*"), -p("1", "3", "1*")),
        "T1*": (p("2", "1*", "2*"), -p("3", "1*", "3*")),
        "T2*": (p("3", "2*", "3*"), p("1", "1*", "2*")),
        "T3*": (-p("1", "1*", "3*"), p("2", "2*", "3*")),
    }
    g = Gr36Coords(*S, *Ss, *(T_pairs[k][0] for k in ("T1", "T2", "T3", "T1*", "T2*", "T3*")))
    consistency = {k: a - b for k, (a, b) in T_pairs.items()}
    return g, consistency


def s_cube(g: Gr36Coords) -> dict:
    """S coordinates arranged as a minor cube: S_i at {i}, S_i* at the complement of {i}."""
    return {
        (): g.S0, (1,): g.S1, (2,): g.S2, (3,): g.S3,
        (2, 3): g.S1s, (1, 3): g.S2s, (1, 2): g.S3s, (1, 2, 3): g.S0s,
    }


def identity_chain_residuals(g: Gr36Coords) -> dict:
    """LHS minus RHS of the short, long, hexahedron and hyperdeterminantal relations."""
    S0, S1, S2, S3, S0s, S1s, S2s, S3s, T1, T2, T3, T1s, T2s, T3s = g
    prod_t = T1 * T2 * T3 - S1 * S2 * S3
    prod_ts = T1s * T2s * T3s - S1s * S2s * S3s
    r = {
        "short1": T1 * T1 - (-S0 * S1s + S2 * S3),
        "short1*": T1s * T1s - (-S0s * S1 + S2s * S3s),
        "short2": T2 * T2 - (-S0 * S2s + S1 * S3),
        "short2*": T2s * T2s - (-S0s * S2 + S1s * S3s),
        "short3": T3 * T3 - (-S0 * S3s + S1 * S2),
        "short3*": T3s * T3s - (-S0s * S3 + S1s * S2s),
        "long1": 2 * T1 * T1s - (S0 * S0s + S1 * S1s - S2 * S2s - S3 * S3s),
        "long2": 2 * T2 * T2s - (S0 * S0s - S1 * S1s + S2 * S2s - S3 * S3s),
        "long3": 2 * T3 * T3s - (S0 * S0s - S1 * S1s - S2 * S2s + S3 * S3s),
        "hexahedron1": S0 * (T1 * T1s - S1 * S1s) - prod_t,
        "hexahedron2": S0 * (T2 * T2s - S2 * S2s) - prod_t,
        "hexahedron3": S0 * (T3 * T3s - S3 * S3s) - prod_t,
        "hexahedron1*": S0s * (T1 * T1s - S1 * S1s) - prod_ts,
        "hexahedron2*": S0s * (T2 * T2s - S2 * S2s) - prod_ts,
        "hexahedron3*": S0s * (T3 * T3s - S3 * S3s) - prod_ts,
        "hyperdet": cayley222(s_cube(g)),
    }
    return r
