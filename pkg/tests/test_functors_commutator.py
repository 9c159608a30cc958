import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tubeserre.commutator import (
    Periodicity,
    closed_form_commutator,
    commutator,
    commutator_power,
    commutator_tuple,
    extract_central,
    is_center_linear,
    kappa,
)
from tubeserre.functors import AdmissibleFunctor, ScalarNatTrans, compose_functors, functor_apply
from tubeserre.serre import CentralElement, SerreStructure
from tubeserre.tube import (
    ExtCocycle,
    TubeContext,
    TubeError,
    compose,
    cycle_endo,
    identity,
    indecomposable,
    random_morphism,
    random_object,
    zero_object,
)


def _functor(ctx, rng, center_linear=False):
    z = [int(v) for v in rng.integers(1, ctx.p, size=ctx.n)]
    if center_linear:
        prod = int(np.prod(z[:-1])) % ctx.p
        z[-1] = ctx.field.inv(prod)
    return AdmissibleFunctor(ctx, int(rng.integers(0, ctx.n)), tuple(z))


def _iso_from(F, rng):
    """A random scalar iso theta: F -> F' together with F'."""
    ctx, n, p = F.ctx, F.ctx.n, F.ctx.p
    c = [int(v) for v in rng.integers(1, p, size=n)]
    # naturality c_{i+1} zeta_i = c_i zeta'_i
    z = tuple(c[(i + 1) % n] * F.scalings[i] * ctx.field.inv(c[i]) % p for i in range(n))
    Fp = AdmissibleFunctor(ctx, F.rotation, z)
    return ScalarNatTrans(F, Fp, tuple(c)).validate(), Fp


def test_functor_apply_examples(T25, S0, S1, M02):
    ident = AdmissibleFunctor.identity(T25)
    X = random_object(T25, 3)
    assert functor_apply(ident, X) == X
    assert functor_apply(AdmissibleFunctor.serre(T25), S0) == S1
    (g,) = [ExtCocycle(S0, S1, [np.array([[1]]), np.zeros((0, 0), np.int64)])]
    assert functor_apply(AdmissibleFunctor.scaling(T25, 2), g).comps[0].tolist() == [[2]]


def test_compose_examples(T25, M02):
    F = _functor(T25, np.random.default_rng(0))
    ident = AdmissibleFunctor.identity(T25)
    S = AdmissibleFunctor.serre(T25)
    assert compose_functors(F, ident) == F == compose_functors(ident, F)
    assert compose_functors(S, S).is_identity()
    F1, F2 = AdmissibleFunctor(T25, 0, (2, 3)), AdmissibleFunctor(T25, 1, (1, 4))
    assert compose_functors(F1, F2)(M02) == F1(F2(M02))


def test_invalid_functor(T25):
    with pytest.raises(TubeError):
        AdmissibleFunctor(T25, 0, (1, 0))
    with pytest.raises(TubeError):
        AdmissibleFunctor(T25, 0, (1, 1, 1))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 5), (2, 5), (3, 7)]), st.integers(0, 10**6))
def test_composition_is_functorial(np_, seed):
    ctx = TubeContext(*np_)
    rng = np.random.default_rng(seed)
    F1, F2 = _functor(ctx, rng), _functor(ctx, rng)
    F = compose_functors(F1, F2)
    X, Y = random_object(ctx, rng, max_dim=3), random_object(ctx, rng, max_dim=3)
    f = random_morphism(X, Y, rng)
    assert F(X) == F1(F2(X))
    assert F(f) == F1(F2(f))
    g = random_morphism(Y, X, rng)
    assert F1(compose(f, g)) == compose(F1(f), F1(g))
    assert F1(identity(X)) == identity(F1(X))


def test_scalar_nat_trans_naturality(T25):
    F = AdmissibleFunctor(T25, 0, (2, 3))
    G = AdmissibleFunctor.identity(T25)
    assert not ScalarNatTrans(F, G, (1, 1)).is_natural()
    assert ScalarNatTrans(F, G, (1, 3)).is_natural()  # c1*2 = c0, c0*3 = c1
    with pytest.raises(TubeError):
        ScalarNatTrans(F, AdmissibleFunctor.serre(T25), (1, 1)).validate()


def test_commutator_examples(T25, M02):
    S = AdmissibleFunctor.serre(T25)
    for s in range(5):
        X = random_object(T25, s)
        h = commutator(S, X)
        assert h == identity(h.source)
        assert commutator(AdmissibleFunctor.identity(T25), X) == identity(S(X))
    F = AdmissibleFunctor.scaling(T25, 2)
    h = commutator(F, M02)
    assert h == identity(h.source).scale(3)
    assert closed_form_commutator(F) == (3, 3)
    Z = zero_object(T25)
    assert commutator(F, Z).is_zero()


def test_commutator_power_examples(T25):
    F = AdmissibleFunctor.scaling(T25, 2)
    X = random_object(T25, 5)
    assert commutator_power(F, 1, X) == commutator(F, X)
    for d in (1, 2, 3):
        inv = pow(2, -d, 5)
        h = commutator_power(F, d, X)
        assert h == identity(h.source).scale(inv)
    with pytest.raises(ValueError):
        commutator_power(F, 0, X)


def test_commutator_power_of_serre_is_identity(T25):
    S = AdmissibleFunctor.serre(T25)
    X = random_object(T25, 6)
    for d in (1, 2, 3):
        h = commutator_power(S, d, X)
        assert h == identity(h.source)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 5), (2, 5), (3, 7), (2, 7)]), st.integers(0, 10**6))
def test_commutator_matches_closed_form(np_, seed):
    ctx = TubeContext(*np_)
    rng = np.random.default_rng(seed)
    F = _functor(ctx, rng)
    X = random_object(ctx, rng, max_dim=3)
    assert commutator(F, X) == ScalarNatTrans(
        compose_functors(F, AdmissibleFunctor.serre(ctx)),
        compose_functors(AdmissibleFunctor.serre(ctx), F),
        closed_form_commutator(F),
    ).at(X)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 5), (3, 7)]), st.integers(0, 10**6))
def test_commutator_laws(np_, seed):
    ctx = TubeContext(*np_)
    S = AdmissibleFunctor.serre(ctx)
    rng = np.random.default_rng(seed)
    F1, F2 = _functor(ctx, rng), _functor(ctx, rng)
    X, Y = random_object(ctx, rng, max_dim=3), random_object(ctx, rng, max_dim=3)
    # naturality
    f = random_morphism(X, Y, rng)
    assert compose(S(F1(f)), commutator(F1, X)) == compose(commutator(F1, Y), F1(S(f)))
    # composition
    F = compose_functors(F1, F2)
    assert commutator(F, X) == compose(commutator(F1, F2(X)), F1(commutator(F2, X)))
    # conjugation along theta: F1 -> F'
    theta, Fp = _iso_from(F1, rng)
    assert compose(commutator(Fp, X), theta.at(S(X))) == compose(S(theta.at(X)), commutator(F1, X))
    # d-th versions
    for d in (2, 3):
        Sd = S.power(d)
        lhs = commutator_power(F, d, X)
        rhs = compose(commutator_power(F1, d, F2(X)), F1(commutator_power(F2, d, X)))
        assert lhs == rhs
        assert compose(commutator_power(Fp, d, X), theta.at(Sd(X))) == compose(Sd(theta.at(X)), commutator_power(F1, d, X))


def test_commutator_tuple_is_a_scalar_transformation(T25):
    F = AdmissibleFunctor(T25, 1, (2, 4))
    sigma = commutator_tuple(F)
    assert sigma.coeffs == closed_form_commutator(F)


def test_extract_central_examples(T25):
    S = AdmissibleFunctor.serre(T25)
    two = lambda X: identity(S(X)).scale(2)
    lam, lam2 = extract_central(two, S)
    assert lam == lam2 == CentralElement(5, (2,))
    lam, lam2 = extract_central(lambda X: cycle_endo(S(X)), S)
    assert lam == lam2 == CentralElement.t(5)
    F = AdmissibleFunctor.scaling(T25, 2)
    lam, lam2 = extract_central(lambda X: cycle_endo(F(X)), F)
    assert lam == CentralElement.t(5)
    assert lam2 == CentralElement(5, (0, 4))


def test_is_center_linear(T25):
    assert is_center_linear(AdmissibleFunctor.identity(T25))
    assert is_center_linear(AdmissibleFunctor.scaling(T25, -1))
    assert not is_center_linear(AdmissibleFunctor.scaling(T25, 2))
    F, M = AdmissibleFunctor.scaling(T25, 2), indecomposable(T25, 0, 4)
    assert cycle_endo(F(M)) == F(cycle_endo(M)).scale(4)


def test_kappa_examples(T25):
    one = CentralElement(5)
    S = AdmissibleFunctor.serre(T25)
    assert kappa(AdmissibleFunctor.identity(T25)) == one
    for j in range(1, 4):
        assert kappa(S.power(j)) == one
    assert kappa(AdmissibleFunctor.scaling(T25, -1)) == one
    with pytest.raises(TubeError):
        kappa(AdmissibleFunctor.scaling(T25, 2))


def test_kappa_multiplicative_and_eta_independent(T25):
    rng = np.random.default_rng(2)
    serre = SerreStructure.standard(T25)
    for _ in range(3):
        F1, F2 = _functor(T25, rng, True), _functor(T25, rng, True)
        assert kappa(compose_functors(F1, F2)) == kappa(F1) * kappa(F2)
        lam = CentralElement(5, (int(rng.integers(1, 5)), int(rng.integers(0, 5))))
        eta = Periodicity(serre, central=lam)
        assert kappa(F1, eta) == kappa(F1)


def test_periodicity_is_compatible(T25):
    serre = SerreStructure.standard(T25)
    probes = [random_object(T25, s) for s in range(5)]
    assert Periodicity(serre).is_compatible(probes)
    assert Periodicity(serre, central=CentralElement(5, (2, 3))).is_compatible(probes)
    with pytest.raises(TubeError):
        Periodicity(serre, d=1)
