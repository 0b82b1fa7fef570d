from itertools import combinations

import pytest

from lgr import extalg
from lgr.combinat import ij_label, marked_indices, partitions_in_box, transpose, MarkedIndex
from lgr.extalg import ExtVector, omega_contract
from lgr.grassmann import (
    NotLagrangianError, NotSymmetricError, affine_columns, decomposable, from_affine, from_ext,
    is_lagrangian, lagrange_map, linear_relation_residuals,
    lagrangian_linear_residuals, plucker, plucker_from_coords, plucker_residuals, project_complement,
    projectively_equal, reduce36, reduction_status, subspace, to_ext, two_term_residuals, z2_orbit,
    f_vector,
)
from lgr.kernel import as_matrix, identity, minor, random_matrix, random_rat, zeros
from oracles import leibniz_det

TRI = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]


def test_from_affine_examples():
    w = from_affine(zeros(2, 2))
    pv = plucker(w)
    assert pv[()] == 1 and all(not c for lam, c in pv.coords.items() if lam)
    pv = plucker(from_affine(identity(2)))
    assert [pv[l] for l in [(), (1,), (2, 1), (2, 2), (2,), (1, 1)]] == [1, 1, 1, 1, 0, 0]
    pv = plucker(from_affine(identity(3)))
    assert all(pv[lam] == 1 for lam in partitions_in_box(3) if lam == transpose(lam))
    with pytest.raises(NotSymmetricError):
        from_affine(as_matrix([[1, 2], [3, 4]]))


def test_plucker_matches_leibniz_minors(rng):
    from lgr.combinat import particle_positions

    for n in (2, 3):
        w = subspace(random_matrix(rng, 2 * n, n), n)
        pv = plucker(w)
        for lam in partitions_in_box(n):
            rows = [w.w[p + n] for p in particle_positions(lam, n)]
            assert pv[lam] == leibniz_det(rows)


def test_plucker_scaling_and_rank():
    w = from_affine(as_matrix(TRI))
    scaled = subspace([[x * (c + 2) for c, x in enumerate(row)] for row in w.w])
    assert projectively_equal(plucker(w).coords, plucker(scaled).coords)
    with pytest.raises(ValueError):
        plucker(subspace([[1, 2], [2, 4], [0, 0], [0, 0]]))


def test_plucker_residuals(rng):
    for n in (2, 3):
        pv = plucker(subspace(random_matrix(rng, 2 * n, n), n))
        assert not any(r.residual for r in plucker_residuals(pv, "full"))
        assert not any(r.residual for r in plucker_residuals(pv, "short"))
    bad = plucker_from_coords(2, {(): 1, (2, 2): 1})
    assert any(r.residual for r in plucker_residuals(bad, "full"))
    assert any(r.residual for r in plucker_residuals(bad, "short"))
    assert len(plucker_residuals(bad)) == 16


def test_to_ext_matches_wedge_of_columns(rng):
    for n in (2, 3):
        w = subspace(random_matrix(rng, 2 * n, n), n)
        assert to_ext(plucker(w)) == decomposable(w)
        assert from_ext(decomposable(w)) == plucker(w)


def test_is_lagrangian_examples(rng):
    assert is_lagrangian(from_affine(random_matrix(rng, 3, 3, symmetric=True)))
    assert not is_lagrangian(affine_columns(as_matrix([[1, 2], [3, 4]])))
    assert is_lagrangian(from_affine(zeros(3, 3)))


def test_lagrangian_linear_examples():
    pv = plucker_from_coords(2, {(2,): 1})
    assert any(r.residual == 1 for r in two_term_residuals(pv))
    assert len(two_term_residuals(plucker_from_coords(3, {(): 1}))) == 6
    assert len(two_term_residuals(plucker_from_coords(4, {(): 1}))) == 27


def test_linear_residuals_are_contraction_coefficients(rng):
    # independent route: omega_contract of the exterior vector, read off at e_alpha in decreasing order
    for n in (2, 3, 4):
        pv = plucker_from_coords(n, {l: random_rat(rng) for l in partitions_in_box(n)})
        oc = omega_contract(to_ext(pv))
        for r, alpha in zip(linear_relation_residuals(pv), combinations(range(-n, n), n - 2)):
            assert r.residual == oc.coefficient(tuple(reversed(alpha)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetric_matrices_give_lagrangian_coordinates(rng, n):
    for _ in range(3):
        a = random_matrix(rng, n, n, symmetric=True)
        pv = plucker(from_affine(a))
        if n <= 3:
            assert not any(r.residual for r in plucker_residuals(pv))
        assert not any(r.residual for r in lagrangian_linear_residuals(pv))
        assert all(pv[l] == pv[transpose(l)] for l in partitions_in_box(n))


def test_giambelli_sign_rule(rng):
    # pi_{lambda(I,J)} = (-1)^(sum I + sum J) * det(A[rows J, cols I]); also for non-symmetric A
    for n in (2, 3, 4):
        for sym in (True, False):
            a = random_matrix(rng, n, n, symmetric=sym)
            pv = plucker(affine_columns(a))
            for lam in partitions_in_box(n):
                lab = ij_label(lam, n)
                rows = [j - 1 for j in lab.J]
                cols = [i - 1 for i in lab.I]
                assert pv[lam] == (-1) ** (sum(lab.I) + sum(lab.J)) * minor(a, rows, cols)


def test_lagrange_map_examples():
    assert set(lagrange_map(from_affine(identity(3))).values()) == {1}
    L = lagrange_map(from_affine(as_matrix(TRI)))
    assert list(L.values()) == [1, 2, 2, 2, 3, 4, 3, 4]
    ones = as_matrix([[1] * 3] * 3)
    assert list(lagrange_map(from_affine(ones)).values()) == [1, 1, 1, 1, 0, 0, 0, 0]
    with pytest.raises(NotLagrangianError):
        lagrange_map(affine_columns(as_matrix([[1, 2], [3, 4]])))


def test_lagrange_map_is_principal_minors(rng):
    for n in (2, 3, 4):
        a = random_matrix(rng, n, n, symmetric=True)
        L = lagrange_map(from_affine(a))
        for J, v in L.items():
            sub = [[a[i - 1][j - 1] for j in J] for i in J]
            assert v == leibniz_det(sub)


def test_z2_orbit(rng):
    w = from_affine(random_matrix(rng, 3, 3, symmetric=True))
    assert z2_orbit(w, (1, 1, 1)) == w
    flipped = z2_orbit(w, (-1, -1, -1))
    assert projectively_equal(plucker(w).coords, plucker(flipped).coords)
    L = lagrange_map(w)
    for eps in [(1, -1, 1), (-1, 1, 1), (-1, -1, 1), (1, 1, -1)]:
        assert projectively_equal(lagrange_map(z2_orbit(w, eps)), L)
    with pytest.raises(ValueError):
        z2_orbit(w, (1, 2, 1))


def test_reduce36_examples(rng):
    w = from_affine(random_matrix(rng, 3, 3, symmetric=True))
    phi = decomposable(w)
    assert reduce36(phi, MarkedIndex((), ())) == phi
    w4 = from_affine(random_matrix(rng, 4, 4, symmetric=True))
    phi4 = decomposable(w4)
    for mk in marked_indices(4):
        assert reduction_status(phi4, mk)[0] == "pass"
    with pytest.raises(ValueError):
        reduce36(phi4, MarkedIndex((1, 2), (False, False)))


def test_contraction_and_projection_commute(rng):
    n = 4
    phi = ExtVector(n)
    for _ in range(12):
        idx = tuple(sorted(rng.sample(range(-n, n), n)))
        phi = phi + ExtVector(n, {idx: random_rat(rng)})
    for mk in marked_indices(n):
        dual = extalg.wedge_all((f_vector(i, s, n) for i, s in zip(mk.I, mk.starred)), n)
        a = project_complement(extalg.contract(phi, dual), mk)
        b = extalg.contract(project_complement(phi, mk), dual)
        assert a == b


def test_non_lagrangian_reductions_fail(rng):
    for _ in range(3):
        w = subspace(random_matrix(rng, 8, 4), 4)
        phi = decomposable(w)
        assert any(reduction_status(phi, mk)[0] == "fail" for mk in marked_indices(4))
