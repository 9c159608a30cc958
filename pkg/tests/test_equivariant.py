import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tubeserre.actions import FiniteGroup, GroupAction, rotation_action, scaling_action, twisted_action, unit
from tubeserre.equivariant import (
    EquivariantError,
    EquivariantMorphism,
    EquivariantObject,
    SetupError,
    check_prop_a,
    check_prop_b,
    check_prop_c,
    check_setup_a,
    eq_direct_sum,
    ext_action_matrix,
    ext_baer,
    ext_g_action,
    ext_invariants,
    gamma_hom,
    hom_eq,
    hom_eq_direct,
    induction,
    plain_shift,
    prop_a_delta,
    psi_pairing,
    random_eq_morphism,
    random_equivariant,
    rho_twist,
    serre_G,
    serre_G_extension,
    trace_G,
    validate_eq_object,
)
from tubeserre.functors import AdmissibleFunctor
from tubeserre.serre import SerreStructure
from tubeserre.tube import TubeContext, TubeMorphism, ext_space, hom_basis, identity, indecomposable, zero_object


def _actions(ctx):
    out = [rotation_action(ctx), twisted_action(ctx, 2)]
    if ctx.p % 2 == 1:
        out.append(scaling_action(ctx, -1))
    return out


def _trivial(ctx, c=1):
    G = FiniteGroup.cyclic(1)
    return GroupAction(G, [AdmissibleFunctor.identity(ctx)], {(0, 0): (c,) * ctx.n})


def test_induction_validates(T25, S0):
    a = rotation_action(T25)
    Xh = induction(a, S0)
    assert validate_eq_object(a, Xh).ok
    assert Xh.base.dims == (1, 1)
    # swap-type structure: alpha_g moves the S0 summand into the S1 slot
    assert all(c.tolist() == [[1]] for c in Xh.alpha[1].comps)


def test_induction_doubles_dims(T25):
    a = scaling_action(T25, -1)
    X = indecomposable(T25, 1, 3)
    Xh = induction(a, X)
    assert Xh.base.dims == tuple(2 * d for d in X.dims)
    assert validate_eq_object(a, Xh).ok


def test_corruption_fails_at_g_g(T25, S0):
    a = scaling_action(T25, -1)
    Xh = induction(a, S0)
    bad = list(Xh.alpha)
    bad[1] = bad[1].scale(2)
    rep = validate_eq_object(a, EquivariantObject(a, Xh.base, bad))
    assert not rep.ok and rep.details["first_violation"] == [1, 1]


def test_zero_object(T25):
    a = rotation_action(T25)
    Z = zero_object(T25)
    Zh = EquivariantObject(a, Z, [identity(Z), identity(Z)])
    assert validate_eq_object(a, Zh).ok


def test_trivial_group(T25):
    a = _trivial(T25, 3)
    X = indecomposable(T25, 0, 3)
    Xh = induction(a, X)
    assert Xh.base == X
    assert Xh.alpha[0] == unit(a).inverse().at(X)
    assert validate_eq_object(a, Xh).ok
    assert len(hom_eq(Xh, Xh)) == len(hom_basis(X, X))
    assert ext_invariants(Xh, Xh).shape[1] == ext_space(X, X).dim == ext_baer(Xh, Xh).dim


def test_invalid_structures_rejected(T25, S0):
    a = rotation_action(T25)
    with pytest.raises(EquivariantError):
        EquivariantObject(a, S0, [identity(S0)])
    Xh = induction(a, S0)
    with pytest.raises(EquivariantError):
        EquivariantMorphism(Xh, Xh, TubeMorphism(Xh.base, Xh.base, [np.eye(1, dtype=np.int64), 2 * np.eye(1, dtype=np.int64)]))


def test_hom_eq_two_ways(T25, S0):
    a = rotation_action(T25)
    Xh = induction(a, S0)
    assert len(hom_eq(Xh, Xh)) == len(hom_eq_direct(Xh, Xh)) >= 1
    for action in _actions(T25):
        for s in range(4):
            Xh, Yh = random_equivariant(action, s, max_dim=3), random_equivariant(action, s + 100, max_dim=3)
            basis = hom_eq(Xh, Yh)
            assert len(basis) == len(hom_eq_direct(Xh, Yh))
            for f in basis:
                EquivariantMorphism(Xh, Yh, f)
            assert EquivariantMorphism(Xh, Xh, identity(Xh.base))


def test_hom_eq_rejects_bad_order():
    ctx = TubeContext(2, 2)
    a = rotation_action(ctx)
    Xh = induction(a, indecomposable(ctx, 0, 1))
    with pytest.raises(Exception, match="not invertible"):
        hom_eq(Xh, Xh)


def test_ext_action_swaps_blocks(T25, S0):
    a = rotation_action(T25)
    Xh = induction(a, S0)
    M = ext_action_matrix(Xh, Xh, 1) % 5
    assert M.shape == (2, 2)
    assert M[0, 0] == M[1, 1] == 0 and M[0, 1] and M[1, 0]
    assert np.array_equal(ext_action_matrix(Xh, Xh, 0) % 5, np.eye(2, dtype=np.int64))


def test_ext_action_is_a_linear_action(T25):
    for a in _actions(T25):
        Xh, Yh = random_equivariant(a, 1, max_dim=3), random_equivariant(a, 2, max_dim=3)
        E = ext_space(Xh.base, Yh.base)
        if E.dim == 0:
            continue
        rng = np.random.default_rng(0)
        x, y = rng.integers(0, 5, size=E.dim), rng.integers(0, 5, size=E.dim)
        G = a.group
        for g in G.elements:
            assert np.array_equal(ext_g_action(Xh, Yh, g, (x + y) % 5), (ext_g_action(Xh, Yh, g, x) + ext_g_action(Xh, Yh, g, y)) % 5)
            for h in G.elements:
                assert np.array_equal(ext_g_action(Xh, Yh, G.mul(g, h), x), ext_g_action(Xh, Yh, g, ext_g_action(Xh, Yh, h, x)))


def test_ext_baer_split_class(T25, S0):
    a = rotation_action(T25)
    Xh = induction(a, S0)
    space = ext_baer(Xh, Xh)
    zero = np.zeros(space.layout.size, dtype=np.int64)
    assert space.contains(zero) and not space.classify(zero).any()
    for j in range(space.dim):
        Eh, incl, proj = space.realize(space.vector(np.eye(space.dim, dtype=np.int64)[j]))
        assert validate_eq_object(a, Eh).ok


def test_rho_twist(T25):
    a = scaling_action(T25, -1)
    for s in range(20):
        Xh = random_equivariant(a, s, max_dim=3)
        Yh = rho_twist([1, -1], Xh)
        assert validate_eq_object(a, Yh).ok
        assert rho_twist([1, -1], Yh) == Xh
        assert rho_twist([1, 1], Xh) == Xh
    with pytest.raises(EquivariantError):
        rho_twist([1, 2], Xh)


def test_serre_G_examples(T25, S0):
    a = rotation_action(T25)
    Xh = induction(a, S0)
    assert validate_eq_object(a, serre_G(a, Xh)).ok
    b = scaling_action(T25, -1)
    S = SerreStructure.standard(T25)
    for s in range(5):
        Xh = random_equivariant(b, s, max_dim=3)
        SXh = serre_G(b, Xh)
        assert validate_eq_object(b, SXh).ok
        assert SXh.alpha[1] == S(Xh.alpha[1]).scale(-1)
    t = _trivial(T25, 2)
    Xh = induction(t, S0)
    SXh = serre_G(t, Xh)
    assert SXh.base == S(S0) and SXh.alpha[0] == S(Xh.alpha[0])


def test_trace_G(T25, S0):
    for a in _actions(T25):
        Xh = random_equivariant(a, 3, max_dim=3)
        space = ext_baer(Xh, serre_G(a, Xh))
        S = SerreStructure.standard(T25)
        assert trace_G(a, Xh, np.zeros(space.dim, dtype=np.int64), coords=True) == 0
        for j in range(space.dim):
            v = space.vector(np.eye(space.dim, dtype=np.int64)[j])
            assert trace_G(a, Xh, v) == S.trace(Xh.base, space.underlying(v))
        for w in space.W.T:
            assert trace_G(a, Xh, w) == 0


def test_psi_empty_and_full(T25, S0, M02):
    a = rotation_action(T25)
    Xh = induction(a, S0)
    P = psi_pairing(a, Xh, Xh)
    assert P.shape[0] == P.shape[1] and T25.field.rank(P) == P.shape[0]
    b = scaling_action(T25, -1)
    Xh = induction(b, M02)
    P = psi_pairing(b, Xh, Xh)
    assert P.shape[0] == P.shape[1] and T25.field.rank(P) == P.shape[0]
    Z = zero_object(T25)
    Zh = EquivariantObject(a, Z, [identity(Z), identity(Z)])
    assert psi_pairing(a, Zh, Zh).shape == (0, 0)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 5), (1, 5), (3, 7), (2, 7)]), st.integers(0, 10**6), st.integers(0, 2))
def test_duality_on_equivariant_objects(np_, seed, which):
    ctx = TubeContext(*np_)
    acts = _actions(ctx)
    a = acts[which % len(acts)]
    rng = np.random.default_rng(seed)
    Xh = random_equivariant(a, rng, max_dim=3, summands=2)
    Yh = random_equivariant(a, rng, max_dim=3, summands=2)
    inv = ext_invariants(Xh, Yh).shape[1]
    baer = ext_baer(Xh, Yh)
    assert len(hom_eq(Yh, serre_G(a, Xh))) == inv == baer.dim
    P = psi_pairing(a, Xh, Yh)
    assert P.shape == (inv, inv) and ctx.field.rank(P) == inv
    # the forgetful image is invariant
    E = ext_space(Xh.base, Yh.base)
    for j in range(baer.dim):
        c = E.classify(baer.underlying(baer.vector(np.eye(baer.dim, dtype=np.int64)[j])))
        for g in a.group.elements:
            assert np.array_equal(ext_g_action(Xh, Yh, g, c), c)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(2, 5), (3, 7)]), st.integers(0, 10**6))
def test_equivariant_trace_is_perfect(np_, seed):
    ctx = TubeContext(*np_)
    rng = np.random.default_rng(seed)
    for a in _actions(ctx):
        Xh = random_equivariant(a, rng, max_dim=3)
        space = ext_baer(Xh, serre_G(a, Xh))
        if space.dim == 0:
            continue
        v = space.vector(rng.integers(0, ctx.p, size=space.dim))
        target, w = serre_G_extension(space, v)
        assert target.contains(w)
        assert trace_G(a, Xh, v) == trace_G(a, serre_G(a, Xh), w)


def test_prop_a(T25, S0):
    a = rotation_action(T25)
    assert check_setup_a(a, 1).ok
    Xh = induction(a, S0)
    delta = prop_a_delta(a, Xh)
    assert delta.morphism.is_iso()
    Yh = random_equivariant(a, 4, max_dim=3)
    fs = [random_eq_morphism(Xh, Yh, s) for s in range(3)]
    assert check_prop_a(a, Xh, fs).ok
    ctx = TubeContext(3, 5)
    c = rotation_action(ctx)
    Xh = induction(c, indecomposable(ctx, 0, 2))
    assert check_prop_a(c, Xh).ok
    with pytest.raises(SetupError):
        prop_a_delta(scaling_action(T25, -1), induction(scaling_action(T25, -1), S0))


def test_prop_b(T25, S0):
    for a in (rotation_action(T25), scaling_action(T25, -1), twisted_action(T25, 3)):
        Xh = random_equivariant(a, 5, max_dim=3)
        Yh = random_equivariant(a, 6, max_dim=3)
        fs = [random_eq_morphism(Xh, Yh, s) for s in range(2)]
        rep = check_prop_b(a, Xh, fs)
        assert rep.ok, rep.failures
        assert rep.details["kappa"] == [[1]] * a.group.order
    with pytest.raises(SetupError):
        check_prop_b(scaling_action(T25, 2), induction(scaling_action(T25, 2), S0))


def test_gamma(T25):
    assert gamma_hom(scaling_action(T25, -1)) == [1, 4]
    assert gamma_hom(rotation_action(T25)) == [1, 1]
    assert gamma_hom(_trivial(T25)) == [1]
    with pytest.raises(SetupError):
        gamma_hom(scaling_action(T25, 2))


def test_prop_c(T25, S0):
    b = scaling_action(T25, -1)
    Xh = induction(b, S0)
    fs = [random_eq_morphism(Xh, Xh, s) for s in range(3)]
    rep = check_prop_c(b, Xh, fs)
    assert rep.ok and rep.details["gamma"] == [1, 4]
    assert check_prop_c(rotation_action(T25), induction(rotation_action(T25), S0)).ok
    t = _trivial(T25)
    Xh = induction(t, S0)
    assert serre_G(t, Xh) == plain_shift(t, Xh)


def test_eq_direct_sum(T25, S0, S1):
    a = rotation_action(T25)
    Zh = eq_direct_sum(induction(a, S0), induction(a, S1))
    assert validate_eq_object(a, Zh).ok
    assert Zh.base.dims == (2, 2)
