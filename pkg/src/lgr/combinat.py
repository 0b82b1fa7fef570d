"""Partitions and their labellings, admissible tableaux, border strips, marked index sets."""

from __future__ import annotations

from itertools import combinations, product
from typing import NamedTuple, Sequence

Partition = tuple  # weakly decreasing positive ints; () is the empty partition


class Frobenius(NamedTuple):
    a: tuple
    b: tuple


class IJLabel(NamedTuple):
    I: tuple
    J: tuple
    n: int


class MarkedIndex(NamedTuple):
    """I has N-3 elements; starred[k] says whether I[k] is taken as f*_{I[k]} rather than f_{I[k]}."""

    I: tuple
    starred: tuple

    def complement(self) -> "MarkedIndex":
        return MarkedIndex(self.I, tuple(not s for s in self.starred))


def partition(parts: Sequence[int]) -> Partition:
    """Validate and canonicalize (drop trailing zeros)."""
    p = tuple(int(x) for x in parts)
    while p and p[-1] == 0:
        p = p[:-1]
    if any(x < 0 for x in p) or any(x < y for x, y in zip(p, p[1:])):
        raise ValueError(f"{list(parts)} is not a partition")
    return p


def weight(lam: Partition) -> int:
    return sum(lam)


def transpose(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def fits_box(lam: Partition, n: int) -> bool:
    return len(lam) <= n and (not lam or lam[0] <= n)


def frobenius(lam: Partition) -> Frobenius:
    lt = transpose(lam)
    r = sum(1 for i, x in enumerate(lam) if x > i)
    return Frobenius(tuple(lam[i] - i - 1 for i in range(r)), tuple(lt[i] - i - 1 for i in range(r)))


def from_frobenius(f: Frobenius) -> Partition:
    a, b = tuple(f.a), tuple(f.b)
    if len(a) != len(b):
        raise ValueError("Frobenius arms and legs differ in length")
    for seq in (a, b):
        if any(x < 0 for x in seq) or any(x <= y for x, y in zip(seq, seq[1:])):
            raise ValueError("Frobenius indices must be strictly decreasing and nonnegative")
    r = len(a)
    rows = [a[i] + i + 1 for i in range(r)]
    # rows below the diagonal block: row k (k >= r) has #{i : b_i + i >= k} boxes
    k = r
    while True:
        length = sum(1 for i in range(r) if b[i] + i >= k)
        if not length:
            break
        rows.append(length)
        k += 1
    return partition(rows)


def particle_positions(lam: Partition, n: int, charge: int = 0) -> tuple:
    """l_j = lam_j - j + charge for j = 1..n (strictly decreasing)."""
    if len(lam) > n:
        raise ValueError(f"{lam} has more than {n} rows")
    if charge == 0 and not fits_box(lam, n):
        raise ValueError(f"{lam} does not fit the {n}x{n} box")
    padded = tuple(lam) + (0,) * (n - len(lam))
    return tuple(padded[j] - j - 1 + charge for j in range(n))


def from_positions(pos: Sequence[int], charge: int = 0) -> Partition:
    """Inverse of particle_positions for a strictly decreasing sequence."""
    pos = tuple(pos)
    if any(x <= y for x, y in zip(pos, pos[1:])):
        raise ValueError("positions must be strictly decreasing")
    lam = tuple(p + j + 1 - charge for j, p in enumerate(pos))
    if any(x < 0 for x in lam):
        raise ValueError("positions below the charge vacuum")
    return partition(lam)


def ij_label(lam: Partition, n: int) -> IJLabel:
    if not fits_box(lam, n):
        raise ValueError(f"{lam} does not fit the {n}x{n} box")
    a, b = frobenius(lam)
    return IJLabel(tuple(x + 1 for x in reversed(a)), tuple(x + 1 for x in reversed(b)), n)


def from_ij_label(label: IJLabel) -> Partition:
    I, J, n = tuple(label.I), tuple(label.J), label.n
    if len(I) != len(J):
        raise ValueError("I and J differ in size")
    for s in (I, J):
        if any(x >= y for x, y in zip(s, s[1:])) or any(not 1 <= x <= n for x in s):
            raise ValueError("I and J must be increasing subsets of 1..N")
    return from_frobenius(Frobenius(tuple(x - 1 for x in reversed(I)), tuple(x - 1 for x in reversed(J))))


def partitions_of(w: int, max_part: int | None = None) -> list:
    """All partitions of w, in reverse lexicographic order."""
    if max_part is None:
        max_part = w
    if w == 0:
        return [()]
    out = []
    for first in range(min(w, max_part), 0, -1):
        out.extend((first,) + rest for rest in partitions_of(w - first, first))
    return out


def partitions_up_to(w: int) -> list:
    return [lam for k in range(w + 1) for lam in partitions_of(k)]


def partitions_in_box(n: int) -> list:
    """All C(2n, n) partitions inside the n x n box, ordered by weight then reverse lex."""
    if n < 0:
        raise ValueError("box size must be nonnegative")
    return [lam for lam in partitions_up_to(n * n) if fits_box(lam, n)]


def symmetric_partitions_in_box(n: int) -> list:
    return [lam for lam in partitions_in_box(n) if lam == transpose(lam)]


def admissible_tableaux(m: int, l: int) -> list:
    """Standard tableaux of shape (2^l, 1^(m-2l)), as tuples of rows."""
    if l < 0 or 2 * l > m:
        raise ValueError(f"no admissible shape with m={m}, l={l}")
    shape = (2,) * l + (1,) * (m - 2 * l)
    return [t for t in _standard_fillings(shape) if is_standard(t)]


def _standard_fillings(shape: Partition) -> list:
    # Place m, m-1, ... successively in removable corners.
    m = sum(shape)
    if m == 0:
        return [tuple()]
    out = []
    for i, row in enumerate(shape):
        if i + 1 < len(shape) and shape[i + 1] == row:
            continue
        smaller = partition(shape[:i] + (row - 1,) + shape[i + 1:])
        for t in _standard_fillings(smaller):
            rows = [list(r) for r in t]
            if i < len(rows):
                rows[i].append(m)
            else:
                rows.append([m])
            out.append(tuple(tuple(r) for r in rows))
    return sorted(out)


def is_standard(t) -> bool:
    entries = sorted(x for row in t for x in row)
    if entries != list(range(1, len(entries) + 1)):
        return False
    for i, row in enumerate(t):
        if any(x >= y for x, y in zip(row, row[1:])):
            return False
        if i and (len(row) > len(t[i - 1]) or any(row[j] <= t[i - 1][j] for j in range(len(row)))):
            return False
    return True


def _strip_moves(lam: Partition, r: int, add: bool) -> list:
    # On the Maya diagram an r-border strip is a particle hopping r sites;
    # the height is one plus the particles jumped over.
    n = len(lam) + r
    padded = tuple(lam) + (0,) * r
    pos = tuple(padded[j] - j - 1 for j in range(n))
    occupied = set(pos)
    out = []
    step = r if add else -r
    for p in pos:
        q = p + step
        if q in occupied or q < -n:
            continue
        lo, hi = min(p, q), max(p, q)
        jumped = sum(1 for x in pos if lo < x < hi)
        new = sorted((occupied - {p}) | {q}, reverse=True)
        out.append((from_positions(new), jumped + 1))
    return sorted(out)


def border_strip_add(lam: Partition, r: int) -> list:
    """All (mu, height) with mu/lam a border strip of size r."""
    if r < 1:
        raise ValueError("strip size must be positive")
    return _strip_moves(tuple(lam), r, add=True)


def border_strip_remove(lam: Partition, r: int) -> list:
    """All (mu, height) with lam/mu a border strip of size r."""
    if r < 1:
        raise ValueError("strip size must be positive")
    return _strip_moves(tuple(lam), r, add=False)


def marked_indices(n: int) -> list:
    """All 2^(n-3) C(n,3) marked index sets, lexicographic in (I, marks)."""
    if n < 3:
        raise ValueError("marked index sets need N >= 3")
    out = []
    for I in combinations(range(1, n + 1), n - 3):
        for marks in product((False, True), repeat=n - 3):
            out.append(MarkedIndex(I, marks))
    return out
