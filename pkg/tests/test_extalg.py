from math import comb

import pytest

from lgr.extalg import (
    BasisElement, ExtVector, basis_labels, basis_P, check_basis_element, contract, coordinates,
    degree_keys, ladder_residuals, omega, omega_contract, omega_contract_fermionic, omega_wedge,
    omega_wedge_fermionic, phi_basis_element, psi, psi_dag, submodule_dimensions, wedge,
)
from lgr.kernel import random_rat, rank
from oracles import sympy_rank


def e(n, *idx):
    return ExtVector.basis(n, *idx)


def random_ext(rng, n, degree=None, terms=5):

    out = ExtVector(n)
    for _ in range(terms):
        k = degree if degree is not None else rng.randint(0, 2 * n)
        idx = tuple(sorted(rng.sample(range(-n, n), k)))
        out = out + ExtVector(n, {idx: random_rat(rng)})
    return out


def test_wedge_examples():
    assert wedge(e(2, -1), e(2, 0)) == ExtVector(2, {(-1, 0): 1})
    assert wedge(e(2, 0), e(2, -1)) == -wedge(e(2, -1), e(2, 0))
    assert not wedge(e(2, 1), e(2, 1))
    with pytest.raises(ValueError):
        wedge(e(2, 0), e(3, 0))


def test_wedge_associative_and_graded(rng):
    for _ in range(20):
        a, b, c = (random_ext(rng, 3) for _ in range(3))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    for _ in range(20):
        p, q = rng.randint(0, 3), rng.randint(0, 3)
        a, b = random_ext(rng, 3, p), random_ext(rng, 3, q)
        assert wedge(a, b) == wedge(b, a) * (-1) ** (p * q)


def test_contract_examples():
    n = 3
    f1, f2, f3 = e(n, -1), e(n, -2), e(n, -3)
    assert contract(wedge(f1, f2), f1) == f2
    assert not contract(f1, f2)
    assert contract(wedge(wedge(f1, f2), f3), wedge(f1, f2)) == f3


def test_contract_composes_single_contractions(rng):
    for _ in range(20):
        phi = random_ext(rng, 3, 4)
        a, b = rng.sample(range(-3, 3), 2)
        assert contract(phi, wedge(e(3, a), e(3, b))) == contract(contract(phi, e(3, a)), e(3, b))


def test_clifford_relations(rng):
    n = 3
    for _ in range(10):
        phi = random_ext(rng, n)
        for i in range(-n, n):
            for j in range(-n, n):
                assert psi(i, psi(j, phi)) == -psi(j, psi(i, phi))
                assert psi_dag(i, psi_dag(j, phi)) == -psi_dag(j, psi_dag(i, phi))
                anti = psi(i, psi_dag(j, phi)) + psi_dag(j, psi(i, phi))
                assert anti == (phi if i == j else ExtVector(n))


def test_omega_examples():
    for n in (1, 2, 3):
        assert omega_wedge(ExtVector.scalar(1, n)) == omega(n)
        assert omega_contract(omega(n)) == ExtVector.scalar(n, n)
        assert not omega_contract(e(n, -1))
    assert omega(2) == ExtVector(2, {(-1, 0): -1, (-2, 1): 1})


def test_fermionic_forms_agree(rng):
    for n in (1, 2, 3):
        for _ in range(10):
            phi = random_ext(rng, n)
            assert omega_wedge(phi) == omega_wedge_fermionic(phi)
            assert omega_contract(phi) == omega_contract_fermionic(phi)


def test_basis_element_examples():
    b = BasisElement(1, 1, ((1,),), ())
    assert phi_basis_element(b) == -wedge(e(1, -1), e(1, 0))
    assert phi_basis_element(BasisElement(2, 0, ((1, 2),), ())) == -wedge(e(2, -2), e(2, 1)) - wedge(e(2, -1), e(2, 0))
    assert phi_basis_element(BasisElement(2, 0, (), (-2, -1))) == -wedge(e(2, -2), e(2, -1))
    assert phi_basis_element(BasisElement(1, 0, ((1,),), ())) == ExtVector.scalar(1, 1)
    with pytest.raises(ValueError):
        check_basis_element(BasisElement(2, 0, (), (-1, 0)))


def test_kernel_elements_are_primitive():
    assert not omega_contract(phi_basis_element(BasisElement(2, 0, ((1, 2),), ())))


def test_dimension_examples():
    d1 = submodule_dimensions(1)
    assert (d1[(0, 0)], d1[(1, 0)], d1[(2, 1)]) == (1, 2, 1)
    d2 = submodule_dimensions(2)
    assert (d2[(2, 0)], d2[(2, 1)]) == (5, 1)
    assert submodule_dimensions(3)[(3, 0)] == comb(6, 3) - comb(6, 1) == 14
    with pytest.raises(ValueError):
        basis_labels(2, 4, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimension_formula_and_full_rank(n):
    dims = submodule_dimensions(n)
    for k in range(2 * n + 1):
        js = [j for (kk, j) in dims if kk == k]
        assert sum(dims[(k, j)] for j in js) == comb(2 * n, k)
        for j in js:
            r = k - 2 * j
            assert dims[(k, j)] == comb(2 * n, r) - (comb(2 * n, r - 2) if r >= 2 else 0)
        if n <= 3:
            keys = degree_keys(n, k)
            vectors = [v for j in js for v in basis_P(n, k, j)]
            assert rank([coordinates(v, keys) for v in vectors]) == comb(2 * n, k)


def test_rank_cross_check_with_sympy():
    keys = degree_keys(2, 2)
    rows = [coordinates(v, keys) for j in (0, 1) for v in basis_P(2, 2, j)]
    assert sympy_rank(rows) == 6


def test_primitive_part_is_kernel_of_contraction():
    # P^k_k = ker(omega_contract) on Lambda^k, compared by rank

    n = 3
    for k in range(n + 1):
        keys = degree_keys(n, k)
        low = degree_keys(n, k - 2) if k >= 2 else []
        images = [coordinates(omega_contract(ExtVector(n, {key: 1})), low) for key in keys] if low else []
        kernel_dim = len(keys) - (rank(images) if images else 0)
        assert kernel_dim == len(basis_labels(n, k, 0))
        for v in basis_P(n, k, 0):
            assert not omega_contract(v)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ladder_identities(n):
    for k in range(2 * n + 1):
        for j in range(k // 2 + 1):
            if k > n + j:
                continue
            for b in basis_labels(n, k, j):
                up, down = ladder_residuals(b)
                assert not up and not down
