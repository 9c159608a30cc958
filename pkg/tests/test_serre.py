import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tubeserre.functors import AdmissibleFunctor, ScalarNatTrans
from tubeserre.serre import CentralElement, SerreStructure, central_eval, pairing_matrix, retwist, serre_apply, trace
from tubeserre.tube import (
    ExtCocycle,
    TubeContext,
    TubeError,
    coboundary,
    compose,
    ext_space,
    hom_basis,
    hom_dim,
    identity,
    indecomposable,
    pullback,
    pushout,
    random_morphism,
    random_object,
)


@pytest.fixture
def S(T25):
    return SerreStructure.standard(T25)


def test_shift_moves_support(S, S0, S1):
    assert serre_apply(S, S0) == S1
    assert serre_apply(S, identity(S0)) == identity(S1)


def test_shift_is_periodic(T25, S):
    X = random_object(T25, 4)
    Y = X
    for _ in range(T25.n):
        Y = S(Y)
    assert Y == X
    ctx = TubeContext(3, 7)
    S3 = SerreStructure.standard(ctx)
    X = random_object(ctx, 2)
    assert S3(S3(S3(X))) == X


def test_shift_is_functorial(T25, S):
    X, Y, Z = (random_object(T25, s) for s in (1, 2, 3))
    f, g = random_morphism(X, Y, 4), random_morphism(Y, Z, 5)
    assert S(compose(g, f)) == compose(S(g), S(f))


def test_trace_examples(S, S0):
    xi = ExtCocycle(S0, S(S0), [np.array([[3]]), np.zeros((0, 0), dtype=np.int64)])
    assert trace(S, S0, xi) == 3
    assert trace(S, S0, ExtCocycle.zero(S0, S(S0))) == 0


def test_trace_rejects_wrong_target(S, S0):
    with pytest.raises(TubeError):
        S.trace(S0, ExtCocycle.zero(S0, S0))


def test_trace_vanishes_on_coboundaries(T25, S):
    rng = np.random.default_rng(0)
    for _ in range(100):
        X = random_object(T25, rng, max_dim=3)
        SX = S(X)
        f = [rng.integers(0, 5, size=(SX.dims[i], X.dims[i])) for i in range(2)]
        assert S.trace(X, coboundary(X, SX, f)) == 0


def test_pairing_examples(S, S0, S1):
    assert pairing_matrix(S, S0, S1).tolist() == [[1]]
    assert pairing_matrix(S, S0, S0).shape == (0, 0)


def test_pairing_is_bilinear(T25, S):
    X, Y = random_object(T25, 21, max_dim=3), random_object(T25, 22, max_dim=3)
    space = ext_space(X, Y)
    homs = hom_basis(Y, S(X))
    for xi in space.basis():
        for f in homs:
            assert S.pairing(xi.scale(3), f) == (3 * S.pairing(xi, f)) % 5
            assert S.pairing(xi, f + f) == (2 * S.pairing(xi, f)) % 5


def test_retwist(T25, S):
    X = random_object(T25, 5, max_dim=3)
    space = ext_space(X, S(X))
    ident = retwist(S, ScalarNatTrans.identity(S.functor))
    scaled = retwist(S, ScalarNatTrans(S.functor, S.functor, (3, 3)))
    for xi in space.basis():
        assert ident.trace(X, xi) == S.trace(X, xi)
        assert scaled.trace(X, xi) == (3 * S.trace(X, xi)) % 5
    with pytest.raises(TubeError):
        retwist(S, ScalarNatTrans(S.functor, S.functor, (0, 1)))


def test_retwist_through_other_functor(T25, S):
    # S' = S composed with a scaling; theta: S' -> S must be natural
    Sp = AdmissibleFunctor(T25, 1, (2, 3))
    theta = ScalarNatTrans(Sp, S.functor, (1, 3))
    assert theta.is_natural()
    T = retwist(S, theta)
    for s in range(10):
        X = random_object(T25, s, max_dim=3)
        P = T.pairing_matrix(X, X)
        assert T25.field.rank(P) == P.shape[0] == P.shape[1]


def test_central_eval(T25, S0):
    X = random_object(T25, 8)
    assert central_eval(CentralElement(5), X) == identity(X)
    assert central_eval(CentralElement.t(5), S0).is_zero()
    rng = np.random.default_rng(1)
    lam = CentralElement(5, (2, 1, 3))
    assert central_eval(lam, X).is_iso()
    assert not central_eval(CentralElement(5, (0, 1)), indecomposable(T25, 0, 3)).is_iso()
    for _ in range(100):
        A, B = random_object(T25, rng), random_object(T25, rng)
        f = random_morphism(A, B, rng)
        assert compose(f, lam(A)) == compose(lam(B), f)


def test_central_inverse(T25):
    lam = CentralElement(5, (2, 1, 3))
    X = indecomposable(T25, 1, 5)
    inv = lam.inverse(4)
    assert compose(inv(X), lam(X)) == identity(X)


def test_central_commutes_with_serre(T25, S):
    lam = CentralElement(5, (3, 4, 1))
    for s in range(10):
        X = random_object(T25, s)
        assert S(lam(X)) == lam(S(X))


CTXS = [(1, 3), (2, 5), (3, 5), (2, 7)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CTXS), st.integers(0, 10**6))
def test_duality_dimensions_and_rank(np_, seed):
    ctx = TubeContext(*np_)
    S = SerreStructure.standard(ctx)
    rng = np.random.default_rng(seed)
    X, Y = random_object(ctx, rng, max_dim=3), random_object(ctx, rng, max_dim=3)
    assert ext_space(X, Y).dim == hom_dim(Y, S(X))
    P = S.pairing_matrix(X, Y)
    assert ctx.field.rank(P) == P.shape[0]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CTXS), st.integers(0, 10**6))
def test_trace_naturality(np_, seed):
    """Tr_{X'}([xi'].f') = Tr_X(S(f').[xi'])."""
    ctx = TubeContext(*np_)
    S = SerreStructure.standard(ctx)
    rng = np.random.default_rng(seed)
    X, Xp = random_object(ctx, rng, max_dim=3), random_object(ctx, rng, max_dim=3)
    space = ext_space(X, S(Xp))
    if space.dim == 0:
        return
    xi = space.cocycle(rng.integers(0, ctx.p, size=space.dim))
    f = random_morphism(Xp, X, rng)
    assert S.trace(Xp, pullback(xi, f)) == S.trace(X, pushout(S(f), xi))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CTXS), st.integers(0, 10**6))
def test_traces_separate_morphisms(np_, seed):
    ctx = TubeContext(*np_)
    S = SerreStructure.standard(ctx)
    rng = np.random.default_rng(seed)
    X, Y = random_object(ctx, rng, max_dim=3), random_object(ctx, rng, max_dim=3)
    f, g = random_morphism(Y, S(X), rng), random_morphism(Y, S(X), rng)
    same = all(S.pairing(xi, f) == S.pairing(xi, g) for xi in ext_space(X, Y).basis())
    assert same == (f == g)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CTXS), st.integers(0, 10**6))
def test_trace_is_shift_invariant(np_, seed):
    ctx = TubeContext(*np_)
    S = SerreStructure.standard(ctx)
    rng = np.random.default_rng(seed)
    X = random_object(ctx, rng, max_dim=3)
    space = ext_space(X, S(X))
    if space.dim == 0:
        return
    xi = space.cocycle(rng.integers(0, ctx.p, size=space.dim))
    assert S.trace(X, xi) == S.trace(S(X), S(xi))
