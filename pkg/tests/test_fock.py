import pytest
from gmpy2 import mpq

from lgr.combinat import partitions_of, partitions_up_to, transpose
from lgr.fock import (
    FockState, FockVector, bilinear, bosonize, chevalley, ckp_null_residuals, current, from_plucker,
    hw_vector, omega_hat, omega_hat_dag, pi_S, psi, psi_dag, vacuum,
)
from lgr.grassmann import from_affine, plucker
from lgr.kernel import SymPoly, random_matrix
from lgr.symfunc import mn_apply, mn_dual, schur
from oracles import wedge_sign_apply

KINDS = ("E", "F", "H")


def positions(st, depth):
    lam = st.lam + (0,) * (depth - len(st.lam))
    return [lam[k] - k - 1 + st.n for k in range(depth)]


def oracle_apply(op, i, st, depth=12):
    # finite wedge of the top `depth` sites; the tail is untouched for |i| well inside it
    sign, new = wedge_sign_apply(positions(st, depth), op, i)
    if not sign:
        return FockVector()
    n = st.n + (1 if op == "psi" else -1)
    lam = tuple(p + k + 1 - n for k, p in enumerate(new))
    lam = tuple(x for x in lam if x)
    return FockVector.state(lam, n, sign)


def some_states():
    return [FockState(lam, n) for n in (-2, 0, 1) for lam in partitions_up_to(4)]


def test_examples():
    assert psi(0, vacuum()) == vacuum(1)
    assert psi(1, vacuum()) == FockVector.state((1,), 1)
    assert psi_dag(-1, vacuum()) == FockVector.state((), -1)
    assert not psi(-1, vacuum()) and not psi_dag(0, vacuum())
    assert current(-1, vacuum()) == FockVector.state((1,))
    assert not current(1, vacuum())
    assert omega_hat(vacuum(-2)) == FockVector.state((1, 1)) - FockVector.state((2,))
    assert hw_vector(0) == vacuum()
    assert bosonize(hw_vector(1), 2) == SymPoly.var(2, 2) * -2
    with pytest.raises(ValueError):
        current(0, vacuum())
    with pytest.raises(ValueError):
        chevalley("X", 0, vacuum())


@pytest.mark.parametrize("op", ["psi", "dag"])
def test_single_fermions_match_finite_wedges(op):
    apply = psi if op == "psi" else psi_dag
    for st in some_states():
        for i in range(-5, 6):
            assert apply(i, FockVector({st: 1})) == oracle_apply(op, i, st)


def test_anticommutators():
    for st in some_states():
        v = FockVector({st: 1})
        for i in range(-4, 5):
            for j in range(-4, 5):
                assert not psi(i, psi(j, v)) + psi(j, psi(i, v))
                assert not psi_dag(i, psi_dag(j, v)) + psi_dag(j, psi_dag(i, v))
                anti = psi(i, psi_dag(j, v)) + psi_dag(j, psi(i, v))
                assert anti == (v if i == j else FockVector())


@pytest.mark.parametrize("w", range(0, 7))
def test_currents_are_murnaghan_nakayama(w):
    for lam in partitions_of(w):
        v = FockVector.state(lam)
        for r in range(1, 7):
            assert current(-r, v) == from_plucker(mn_apply(r, {lam: 1}))
            assert current(r, v) == from_plucker(mn_dual(r, {lam: 1}))


def test_bosonized_currents():
    m = 8
    for lam in partitions_up_to(4):
        v = FockVector.state(lam)
        for r in (1, 2, 3):
            assert bosonize(current(-r, v), m) == schur(lam, m) * SymPoly.var(r, m) * r
            assert bosonize(current(r, v), m) == schur(lam, m).diff(r)


def test_bilinear_is_composition():
    for st in some_states()[:10]:
        v = FockVector({st: 1})
        assert bilinear(1, -2, v) == psi(1, psi_dag(-2, v))


@pytest.mark.parametrize("j", range(0, 4))
def test_highest_weight_vectors(j):
    v = hw_vector(j)
    assert v.charges() == {0}
    for m in range(0, 8):
        assert not chevalley("E", m, v)
        h = chevalley("H", m, v)
        # eigenvalue 1 exactly at m = 2j
        assert h == (v if m == 2 * j else FockVector())
        if m != 2 * j:
            assert not chevalley("F", m, v)


def test_omega_commutes_with_chevalley():
    for st in [FockState(lam, 0) for lam in partitions_up_to(4)]:
        v = FockVector({st: 1})
        for kind in KINDS:
            for m in range(0, 4):
                lhs = omega_hat(chevalley(kind, m, v))
                rhs = chevalley(kind, m, omega_hat(v))
                assert lhs == rhs


def test_symmetric_plucker_vectors_are_ckp_null(rng):
    for n in (1, 2, 3):
        a = random_matrix(rng, n, n, symmetric=True)
        v = from_plucker(plucker(from_affine(a)).coords)
        residuals = ckp_null_residuals(v, bound=6)
        assert not any(residuals.values())


def test_non_symmetric_plucker_vectors_are_not_null(rng):
    from lgr.grassmann import affine_columns
    from lgr.kernel import as_matrix

    v = from_plucker(plucker(affine_columns(as_matrix([[1, 2], [3, 4]]))).coords)
    assert any(ckp_null_residuals(v).values())


def test_projection_order_matters():
    # for A = I2 the symmetric part of J_2 v vanishes, while J_2 of the symmetric part does not
    v = from_plucker(plucker(from_affine([[1, 0], [0, 1]])).coords)
    assert not pi_S(current(2, v))
    assert current(2, pi_S(v))


def test_pi_s():
    v = FockVector.state((2,))
    assert pi_S(v) == (FockVector.state((2,)) + FockVector.state((1, 1))) * mpq(1, 2)
    for lam in partitions_up_to(5):
        u = FockVector.state(lam)
        assert pi_S(pi_S(u)) == pi_S(u)
        assert pi_S(u) == pi_S(FockVector.state(transpose(lam)))
    with pytest.raises(ValueError):
        pi_S(vacuum(1))
    with pytest.raises(ValueError):
        bosonize(vacuum(-1), 2)


def test_omega_dag_examples():
    assert not omega_hat_dag(vacuum())
    v = omega_hat(vacuum(-2))
    assert omega_hat_dag(v)


def test_json_round_trip():
    v = hw_vector(2)
    assert FockVector.from_json(v.to_json()) == v
