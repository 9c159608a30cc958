"""Named verification suites.  Each returns a list of check reports.

Randomness: every sample is drawn from ``numpy.random.default_rng`` (PCG64)
seeded with the integer list ``[seed, suite_id, sample_index, ...]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

import numpy as np

from .actions import (
    ActionError,
    GroupAction,
    compatible_periodicity,
    epsilon_power,
    induced_cyclic,
    rotation_action,
    scaling_action,
    twisted_action,
    unit,
    validate_action,
)
from .commutator import (
    Periodicity,
    closed_form_commutator,
    commutator,
    commutator_power,
    commutator_tuple,
    is_center_linear,
    kappa,
    probe_set,
)
from .equivariant import (
    check_prop_a,
    check_prop_b,
    check_prop_c,
    check_setup_a,
    check_setup_b,
    check_setup_c,
    ext_baer,
    ext_invariants,
    find_setup_a_element,
    gamma_hom,
    hom_eq,
    induction,
    psi_pairing,
    random_eq_morphism,
    random_equivariant,
    serre_G,
)
from .functors import AdmissibleFunctor, ScalarNatTrans, compose_functors
from .orbit import OrbitCategory
from .report import Report
from .serre import CentralElement, SerreStructure
from .tube import (
    TubeContext,
    TubeObject,
    ext_space,
    hom_dim,
    identity,
    indecomposable,
    random_morphism,
    random_object,
    simple,
)

SUITES = ("duality", "perfect", "commutator", "kappa", "cocycle", "theorem1", "prop-a", "prop-b", "prop-c", "orbit", "oracle")
PRNG = "numpy.random.default_rng (PCG64) seeded with [seed, suite, sample, ...]"


@dataclass(frozen=True)
class SuiteConfig:
    n: int = 2
    p: int = 5
    seed: int = 1
    samples: int = 25
    max_dim: int = 4
    action: Optional[str] = None
    action_data: Optional[GroupAction] = field(default=None, compare=False)

    @property
    def ctx(self) -> TubeContext:
        return TubeContext(self.n, self.p)

    def rng(self, suite: str, *more) -> np.random.Generator:
        return np.random.default_rng([self.seed, SUITES.index(suite), *more])

    def echo(self) -> dict:
        return {"n": self.n, "p": self.p, "seed": self.seed, "samples": self.samples, "max_dim": self.max_dim, "action": self.action}


# -- fixtures --------------------------------------------------------------------


_BUILTIN = re.compile(r"^\s*(rotation|scaling|twisted)\s*(?:\(\s*([-+]?\w*)\s*\))?\s*$")


def builtin_action(name: str, ctx: TubeContext) -> GroupAction:
    """rotation(n) | scaling(zeta) | twisted(c)."""
    m = _BUILTIN.match(name)
    if not m:
        raise ActionError(f"unknown action {name!r}; expected rotation(n), scaling(zeta) or twisted(c)")
    kind, arg = m.group(1), m.group(2)
    if kind == "rotation":
        if arg not in (None, "", "n") and arg != str(ctx.n):
            raise ActionError(f"rotation({arg}) needs n = {arg}, context has n = {ctx.n}")
        return rotation_action(ctx)
    if not arg:
        raise ActionError(f"{kind} needs an argument")
    try:
        value = int(arg) % ctx.p
    except ValueError:
        raise ActionError(f"{kind}({arg}): argument must be an integer") from None
    if value == 0:
        raise ActionError(f"{kind}({arg}) is zero in GF({ctx.p})")
    if kind == "scaling":
        return scaling_action(ctx, value)
    return twisted_action(ctx, value)


def _configured_actions(cfg: SuiteConfig, defaults: list[str]) -> list[GroupAction]:
    ctx = cfg.ctx
    if cfg.action_data is not None:
        return [cfg.action_data]
    if cfg.action is not None:
        return [builtin_action(cfg.action, ctx)]
    out = []
    for name in defaults:
        try:
            out.append(builtin_action(name, ctx))
        except ActionError:
            continue
    return out


def _sample_object(cfg: SuiteConfig, rng, max_length: Optional[int] = None) -> TubeObject:
    L = max_length or max(2, min(4, cfg.max_dim * cfg.n))
    return random_object(cfg.ctx, rng, max_summands=2, max_length=L, max_dim=cfg.max_dim)


def _random_functor(ctx: TubeContext, rng, center_linear: bool = False) -> AdmissibleFunctor:
    z = [int(rng.integers(1, ctx.p)) for _ in range(ctx.n)]
    if center_linear:
        prod = 1
        for v in z[:-1]:
            prod = prod * v % ctx.p
        z[-1] = ctx.field.inv(prod)
    return AdmissibleFunctor(ctx, int(rng.integers(0, ctx.n)), tuple(z))


def _random_iso_to(F: AdmissibleFunctor, rng) -> ScalarNatTrans:
    """A random scalar-tuple isomorphism F -> F' (F' determined by the tuple)."""
    ctx, n, p = F.ctx, F.ctx.n, F.ctx.p
    c = [int(rng.integers(1, p)) for _ in range(n)]
    z2 = tuple(c[(i + 1) % n] * F.scalings[i] * ctx.field.inv(c[i]) % p for i in range(n))
    return ScalarNatTrans(F, AdmissibleFunctor(ctx, F.rotation, z2), tuple(c)).validate()


def _eq_fixtures(a: GroupAction, cfg: SuiteConfig, rng, count: int):
    ctx = a.ctx
    fixed = [induction(a, simple(ctx, 0)), induction(a, indecomposable(ctx, 0, 2))]
    out = list(fixed)
    while len(out) < count:
        out.append(random_equivariant(a, rng, max_length=2, max_dim=cfg.max_dim))
    return out[:count]


def _counterexample(rep: Report, **data):
    rep.details.setdefault("counterexample", data)


def _dims(X: TubeObject) -> list[int]:
    return list(X.dims)


# -- suites --------------------------------------------------------------------


def suite_duality(cfg: SuiteConfig) -> list[Report]:
    ctx = cfg.ctx
    serre = SerreStructure.standard(ctx)
    dims_rep = Report("duality/ext-hom-dimensions")
    rank_rep = Report("duality/pairing-full-rank")
    records = []
    for k in range(cfg.samples):
        rng = cfg.rng("duality", k)
        X, Y = _sample_object(cfg, rng), _sample_object(cfg, rng)
        e, h = ext_space(X, Y).dim, hom_dim(Y, serre(X))
        records.append([e, h])
        if not dims_rep.require(e == h, f"sample {k}: dim Ext = {e}, dim Hom(Y, SX) = {h}"):
            _counterexample(dims_rep, sample=k, X=_dims(X), Y=_dims(Y))
        M = serre.pairing_matrix(X, Y)
        r = ctx.field.rank(M) if M.size else 0
        if not rank_rep.require(M.shape[0] == M.shape[1] == r, f"sample {k}: pairing {M.shape} has rank {r}"):
            _counterexample(rank_rep, sample=k, X=_dims(X), Y=_dims(Y))
    dims_rep.details.update(samples=cfg.samples, dims=records)
    rank_rep.details.update(samples=cfg.samples)
    return [dims_rep, rank_rep]


def suite_perfect(cfg: SuiteConfig) -> list[Report]:
    ctx = cfg.ctx
    serre = SerreStructure.standard(ctx)
    S = serre.functor
    tr = Report("perfect/trace-shift-invariance")
    sig = Report("perfect/commutator-of-S-is-identity")
    classes = 0
    for k in range(cfg.samples):
        X = _sample_object(cfg, cfg.rng("perfect", k))
        for xi in ext_space(X, serre(X)).basis():
            classes += 1
            if not tr.require(serre.trace(X, xi) == serre.trace(serre(X), S(xi)), f"sample {k}: traces differ"):
                _counterexample(tr, sample=k, X=_dims(X))
        s = commutator(S, X, serre)
        if not sig.require(s == identity(s.source), f"sample {k}: sigma_S is not the identity"):
            _counterexample(sig, sample=k, X=_dims(X))
    tr.details.update(samples=cfg.samples, classes=classes)
    sig.details.update(samples=cfg.samples)
    return [tr, sig]


def suite_commutator(cfg: SuiteConfig) -> list[Report]:
    ctx, p = cfg.ctx, cfg.p
    field_ = ctx.field
    serre = SerreStructure.standard(ctx)
    S = serre.functor
    objs = [_sample_object(cfg, cfg.rng("commutator", 0, k)) for k in range(cfg.samples)]

    closed = Report("commutator/scaling-closed-form")
    zetas = [z for z in range(2, p)]
    for z in zetas:
        F = AdmissibleFunctor.scaling(ctx, z)
        zi = field_.inv(z)
        for k, X in enumerate(objs):
            s = commutator(F, X, serre)
            if not closed.require(s == identity(s.source).scale(zi), f"zeta={z}, sample {k}"):
                _counterexample(closed, zeta=z, sample=k, X=_dims(X))
    closed.details.update(zetas=zetas, expected={str(z): field_.inv(z) for z in zetas})

    fit = Report("commutator/tuple-fit-matches-closed-form")
    for k in range(min(cfg.samples, 10)):
        F = _random_functor(ctx, cfg.rng("commutator", 1, k))
        got = commutator_tuple(F, serre).coeffs
        want = closed_form_commutator(F)
        if not fit.require(got == want, f"{F}: fitted {list(got)}, closed form {list(want)}"):
            _counterexample(fit, functor=[F.rotation, list(F.scalings)])

    comp = Report("commutator/composition-law")
    conj = Report("commutator/conjugation-law")
    power = Report("commutator/power-laws")
    for k in range(cfg.samples):
        rng = cfg.rng("commutator", 2, k)
        F1, F2 = _random_functor(ctx, rng), _random_functor(ctx, rng)
        X = objs[k % len(objs)]
        F12 = compose_functors(F1, F2)
        for d in (1, 2, 3):
            lhs = commutator_power(F12, d, X, serre)
            rhs = commutator_power(F1, d, F2(X), serre) @ F1(commutator_power(F2, d, X, serre))
            rep = comp if d == 1 else power
            if not rep.require(lhs == rhs, f"pair {k}, d={d}: composition law fails"):
                _counterexample(rep, pair=k, d=d)
        theta = _random_iso_to(F1, rng)
        F1b = theta.target
        Sd = S
        for d in (1, 2, 3):
            lhs = commutator_power(F1b, d, X, serre) @ theta.at(Sd(X))
            rhs = Sd(theta.at(X)) @ commutator_power(F1, d, X, serre)
            rep = conj if d == 1 else power
            if not rep.require(lhs == rhs, f"pair {k}, d={d}: conjugation law fails"):
                _counterexample(rep, pair=k, d=d)
            Sd = compose_functors(S, Sd)
    for z in zetas:
        F = AdmissibleFunctor.scaling(ctx, z)
        for d in (1, 2, 3):
            for X in objs[:5]:
                s = commutator_power(F, d, X, serre)
                power.require(s == identity(s.source).scale(pow(field_.inv(z), d, p)), f"zeta={z}, d={d}: not zeta^-d Id")
                t = commutator_power(S, d, X, serre)
                power.require(t == identity(t.source), f"d={d}: sigma_S^d is not the identity")
    for rep in (comp, conj, power):
        rep.details["pairs"] = cfg.samples

    nat = Report("commutator/naturality")
    checked = 0
    for k in range(2 * cfg.samples):
        rng = cfg.rng("commutator", 3, k)
        F = _random_functor(ctx, rng)
        X, Y = objs[k % len(objs)], objs[(3 * k + 1) % len(objs)]
        f = random_morphism(X, Y, rng)
        checked += 1
        lhs = serre(F(f)) @ commutator(F, X, serre)
        rhs = commutator(F, Y, serre) @ F(serre(f))
        if not nat.require(lhs == rhs, f"morphism {k}: naturality square fails"):
            _counterexample(nat, morphism=k)
    nat.details["morphisms"] = checked
    return [closed, fit, comp, conj, power, nat]


def suite_kappa(cfg: SuiteConfig) -> list[Report]:
    ctx = cfg.ctx
    serre = SerreStructure.standard(ctx)
    probes = probe_set(ctx)
    eta = Periodicity(serre)
    mult = Report("kappa/multiplicativity")
    cache: dict = {}

    def kap(F, e=eta):
        key = (F, id(e))
        if key not in cache:
            cache[key] = kappa(F, e, probes)
        return cache[key]

    pairs = min(cfg.samples, 10)
    for k in range(pairs):
        rng = cfg.rng("kappa", 0, k)
        F1, F2 = _random_functor(ctx, rng, True), _random_functor(ctx, rng, True)
        lhs = kap(compose_functors(F1, F2))
        rhs = kap(F1) * kap(F2)
        if not mult.require(lhs.coeffs == rhs.coeffs, f"pair {k}: kappa(F1F2) = {lhs.coeffs}, product {rhs.coeffs}"):
            _counterexample(mult, pair=k)
    mult.details["pairs"] = pairs

    inv = Report("kappa/periodicity-independence")
    compat = Report("kappa/periodicity-compatibility")
    Fs = [_random_functor(ctx, cfg.rng("kappa", 1, j), True) for j in range(2)]
    for k in range(10):
        rng = cfg.rng("kappa", 2, k)
        coeffs = [int(rng.integers(1, ctx.p))] + [int(rng.integers(0, ctx.p)) for _ in range(3)]
        lam = CentralElement(ctx.p, tuple(coeffs))
        eta2 = Periodicity(serre, central=lam)
        compat.require(eta2.is_compatible(probes), f"unit {k}: eta S != S eta")
        for F in Fs:
            a, b = kap(F), kappa(F, eta2, probes)
            if not inv.require(a == b, f"unit {k}: kappa changed from {a.coeffs} to {b.coeffs}"):
                _counterexample(inv, unit=list(lam.coeffs), functor=[F.rotation, list(F.scalings)])
    compat.require(eta.is_compatible(probes), "default eta is not compatible")
    inv.details["units"] = 10

    values = Report("kappa/fixture-values")
    S = serre.functor
    found = {}
    for j in range(1, ctx.n + 1):
        v = kap(S.power(j))
        found[f"S^{j}"] = list(v.coeffs)
        values.require(v.coeffs == (1,), f"kappa(S^{j}) = {v.coeffs}")
    minus = AdmissibleFunctor.scaling(ctx, -1)
    if is_center_linear(minus, probes):
        v = kap(minus)
        found["scaling(-1)"] = list(v.coeffs)
        values.require(v.coeffs == (1,), f"kappa(scaling(-1)) = {v.coeffs}")
    values.details["kappa"] = found
    return [mult, inv, compat, values]


def suite_cocycle(cfg: SuiteConfig) -> list[Report]:
    ctx, p = cfg.ctx, cfg.p
    S = AdmissibleFunctor.serre(ctx)
    actions: list[tuple[str, GroupAction]] = []
    valid = Report("cocycle/fixtures-valid")
    fixtures = [("induced(S, id, n)", lambda: induced_cyclic(S, None, ctx.n))]
    if p > 2:
        fixtures.append(("induced(scaling(-1), id, 2)", lambda: induced_cyclic(AdmissibleFunctor.scaling(ctx, -1), None, 2)))
    if p > 3:
        from .actions import multiplicative_order

        d2 = multiplicative_order(2, p)
        if d2 <= 12:
            fixtures.append((f"induced(scaling(2), id, {d2})", lambda: induced_cyclic(AdmissibleFunctor.scaling(ctx, 2), None, d2)))
    if p > 2:
        fixtures.append(("twisted(2)", lambda: twisted_action(ctx, 2)))
    if cfg.action is not None or cfg.action_data is not None:
        fixtures += [(cfg.action or "file", lambda: _configured_actions(cfg, [])[0])]
    for name, make in fixtures:
        try:
            a = make()
        except ActionError as exc:
            valid.fail(f"{name}: {exc}")
            continue
        rep = validate_action(a)
        if not valid.require(rep.ok, f"{name}: {'; '.join(rep.failures)}"):
            _counterexample(valid, action=name, triple=rep.details.get("first_violation"))
        actions.append((name, a))
    valid.details["actions"] = [name for name, _ in fixtures]

    corrupt = Report("cocycle/corrupted-action-rejected")
    if p > 2:
        base = scaling_action(ctx, -1)
        bad = base.with_epsilon({(1, 0): base.eps(1, 0).scale(2)})
        rep = validate_action(bad)
        corrupt.require(not rep.ok, "corrupted action passed validation")
        corrupt.details["named_violation"] = rep.details.get("first_violation")
        corrupt.details["message"] = rep.failures[0] if rep.failures else None
    else:
        corrupt.details["skipped"] = "GF(2) has no nontrivial scalar to corrupt with"

    ident = Report("cocycle/unit-and-power-identities")
    for name, a in actions:
        if not validate_action(a).ok:
            continue
        u = unit(a)
        for g in a.group.elements:
            ident.require(a.eps(g, a.e).coeffs == u.whisker_left(a.F(g)).coeffs, f"{name}: eps[g,e] != F_g u at g={g}")
            ident.require(a.eps(a.e, g).coeffs == u.whisker_right(a.F(g)).coeffs, f"{name}: eps[e,g] != u F_g at g={g}")
            for d in range(1, 5):
                ident.require(
                    epsilon_power(a, g, d).coeffs == epsilon_power(a, g, d, "right").coeffs,
                    f"{name}: power recursions differ at g={g}, d={d}",
                )
            ident.require(epsilon_power(a, g, 2).coeffs == a.eps(g, g).coeffs, f"{name}: eps_g^2 != eps[g,g]")
            try:
                compatible_periodicity(a, g)
            except ActionError as exc:
                ident.fail(f"{name}: {exc}")
    return [valid, corrupt, ident]


def _setup_outcome(cfg: SuiteConfig, rep: Report, setup: Report):
    """A default fixture outside the hypotheses is skipped; a requested action fails."""
    if cfg.action is None and cfg.action_data is None:
        rep.details["skipped"] = "; ".join(setup.failures)
    else:
        rep.merge(setup)


def _require_order(a: GroupAction):
    a.require_invertible_order()


def suite_theorem1(cfg: SuiteConfig) -> list[Report]:
    out = []
    for a in _configured_actions(cfg, ["rotation(n)", "scaling(-1)"]):
        _require_order(a)
        ctx = a.ctx
        rep = Report(f"theorem1/{a.name}")
        objs = [induction(a, simple(ctx, 0)), induction(a, indecomposable(ctx, 0, 2))]
        rng = cfg.rng("theorem1", len(out))
        extra = max(0, min(cfg.samples, 8) - len(objs))
        objs += [random_equivariant(a, rng, max_length=2, max_dim=cfg.max_dim) for _ in range(extra)]
        table = []
        for i, Xh in enumerate(objs):
            for j, Yh in enumerate(objs):
                if (i >= 2 or j >= 2) and i != j and (i + j) % 3:
                    continue
                h = len(hom_eq(Yh, serre_G(a, Xh)))
                e = ext_invariants(Xh, Yh).shape[1]
                b = ext_baer(Xh, Yh).dim
                M = psi_pairing(a, Xh, Yh)
                r = ctx.field.rank(M) if M.size else 0
                table.append({"pair": [i, j], "hom_eq": h, "ext_invariants": e, "ext_baer": b, "psi_rank": r})
                if not rep.require(h == e == b and M.shape == (h, e) and r == h, f"pair ({i},{j}): hom {h}, inv {e}, baer {b}, rank {r}"):
                    _counterexample(rep, pair=[i, j])
        rep.details.update(action=a.name, pairs=table)
        out.append(rep)
    return out


def suite_prop_a(cfg: SuiteConfig) -> list[Report]:
    out = []
    for a in _configured_actions(cfg, ["rotation(n)"]):
        _require_order(a)
        rep = Report(f"prop-a/{a.name}")
        g = find_setup_a_element(a)
        if g is None:
            rep.fail("no element satisfies the trivial-Serre setup")
            out.append(rep)
            continue
        setup = check_setup_a(a, g)
        rep.merge(setup)
        rng = cfg.rng("prop-a", len(out))
        objs = _eq_fixtures(a, cfg, rng, 10)
        squares = 0
        for k, Xh in enumerate(objs):
            Yh = objs[(k + 1) % len(objs)]
            fs = [random_eq_morphism(Xh, Yh, rng) for _ in range(2)]
            squares += len(fs)
            r = check_prop_a(a, Xh, fs, g)
            if not rep.require(r.ok, f"object {k}: {'; '.join(r.failures)}"):
                _counterexample(rep, object=k, dims=_dims(Xh.base))
        rep.details.update(action=a.name, g=g, objects=len(objs), naturality_squares=squares)
        out.append(rep)
    return out


def suite_prop_b(cfg: SuiteConfig) -> list[Report]:
    out = []
    for a in _configured_actions(cfg, ["rotation(n)", "scaling(-1)"]):
        _require_order(a)
        rep = Report(f"prop-b/{a.name}")
        setup = check_setup_b(a)
        if not setup.ok:
            _setup_outcome(cfg, rep, setup)
            out.append(rep)
            continue
        rng = cfg.rng("prop-b", len(out))
        objs = _eq_fixtures(a, cfg, rng, 10)
        kap = None
        for k, Xh in enumerate(objs):
            Yh = objs[(k + 1) % len(objs)]
            fs = [random_eq_morphism(Xh, Yh, rng) for _ in range(2)]
            r = check_prop_b(a, Xh, fs)
            kap = r.details["kappa"]
            if not rep.require(r.ok, f"object {k}: {'; '.join(r.failures)}"):
                _counterexample(rep, object=k, dims=_dims(Xh.base))
        rep.details.update(action=a.name, objects=len(objs), kappa=kap, d=cfg.n)
        out.append(rep)
    return out


def suite_prop_c(cfg: SuiteConfig) -> list[Report]:
    out = []
    for a in _configured_actions(cfg, ["scaling(-1)"]):
        _require_order(a)
        rep = Report(f"prop-c/{a.name}")
        setup = check_setup_c(a)
        if not setup.ok:
            _setup_outcome(cfg, rep, setup)
            out.append(rep)
            continue
        gamma = gamma_hom(a)
        rng = cfg.rng("prop-c", len(out))
        objs = _eq_fixtures(a, cfg, rng, 10)
        mors = 0
        for k, Xh in enumerate(objs):
            Yh = objs[(k + 1) % len(objs)]
            fs = [random_eq_morphism(Xh, Yh, rng) for _ in range(2)]
            mors += len(fs)
            r = check_prop_c(a, Xh, fs)
            if not rep.require(r.ok, f"object {k}: {'; '.join(r.failures)}"):
                _counterexample(rep, object=k, dims=_dims(Xh.base))
        rep.details.update(action=a.name, gamma={str(g): v for g, v in enumerate(gamma)}, objects=len(objs), morphisms=mors)
        out.append(rep)
    return out


def suite_orbit(cfg: SuiteConfig) -> list[Report]:
    ctx = cfg.ctx
    S = AdmissibleFunctor.serre(ctx)
    C = OrbitCategory(S, None, ctx.n)
    assoc = Report("orbit/associativity")
    unital = Report("orbit/unitality")
    functor = Report("orbit/functor-to-equivariant")
    triples = 4 * cfg.samples
    for k in range(triples):
        rng = cfg.rng("orbit", k)
        X, Y, Z, W = [_sample_object(cfg, rng, max_length=3) for _ in range(4)]
        f, g, h = C.random(X, Y, rng), C.random(Y, Z, rng), C.random(Z, W, rng)
        if not assoc.require((h @ g) @ f == h @ (g @ f), f"triple {k}"):
            _counterexample(assoc, triple=k)
        unital.require(C.identity(Y) @ f == f and f @ C.identity(X) == f, f"triple {k}")
        if k < cfg.samples // 2:
            lhs = C.to_equivariant(g @ f).morphism
            rhs = C.to_equivariant(g).morphism @ C.to_equivariant(f).morphism
            functor.require(lhs == rhs, f"triple {k}: composition not preserved")
    assoc.details.update(triples=triples, d=ctx.n)
    unital.details["triples"] = triples
    return [assoc, unital, functor]


# -- brute-force oracle --------------------------------------------------------------


def small_objects(ctx: TubeContext, max_total: int) -> list[TubeObject]:
    """Every object of total dimension <= max_total (all arrow matrices)."""
    n, p = ctx.n, ctx.p
    out = []
    for dims in product(range(max_total + 1), repeat=n):
        if sum(dims) > max_total:
            continue
        shapes = [(dims[(i + 1) % n], dims[i]) for i in range(n)]
        size = sum(r * c for r, c in shapes)
        for entries in product(range(p), repeat=size):
            maps, pos = [], 0
            for r, c in shapes:
                maps.append(np.array(entries[pos:pos + r * c], dtype=np.int64).reshape(r, c))
                pos += r * c
            X = TubeObject(ctx, dims, maps, validate=False)
            if X.non_nilpotent_vertex() is None:
                out.append(X)
    return out


def baer_class_count(X: TubeObject, Y: TubeObject) -> int:
    """Extensions 0 -> Y -> E -> X -> 0 on E = Y + X, up to base changes fixing Y and X.

    Enumerates every arrow family for which the canonical inclusion and
    projection are morphisms (and E is nilpotent), then counts orbits of
    the unipotent base changes [[1, u], [0, 1]] by brute force.
    """
    ctx, n, p = X.ctx, X.ctx.n, X.ctx.p
    c_shapes = [(Y.dims[(i + 1) % n], X.dims[i]) for i in range(n)]
    u_shapes = [(Y.dims[i], X.dims[i]) for i in range(n)]
    c_size = sum(r * c for r, c in c_shapes)
    u_size = sum(r * c for r, c in u_shapes)

    def unflat(vec, shapes):
        out, pos = [], 0
        for r, c in shapes:
            out.append(np.array(vec[pos:pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        return out

    def middle(cs):
        maps = []
        for i in range(n):
            j = (i + 1) % n
            top = np.concatenate([Y.maps[i], cs[i]], axis=1)
            bot = np.concatenate([np.zeros((X.dims[j], Y.dims[i]), dtype=np.int64), X.maps[i]], axis=1)
            maps.append(np.concatenate([top, bot], axis=0))
        return maps

    E_dims = [Y.dims[i] + X.dims[i] for i in range(n)]
    cs_all = []
    for entries in product(range(p), repeat=c_size):
        cs = unflat(entries, c_shapes)
        E = TubeObject(ctx, E_dims, middle(cs), validate=False)
        if E.non_nilpotent_vertex() is not None:
            raise AssertionError("an extension of nilpotent representations is nilpotent")
        cs_all.append(np.array(entries, dtype=np.int64))
    # base change by phi = [[1, u], [0, 1]]: new arrows phi_{i+1} e_i phi_i^{-1}
    shifts = set()
    for entries in product(range(p), repeat=u_size):
        us = unflat(entries, u_shapes)
        moved = []
        for i in range(n):
            j = (i + 1) % n
            moved.append(((us[j] @ X.maps[i]) - (Y.maps[i] @ us[i])).reshape(-1))
        shifts.add(tuple(np.concatenate(moved) % p) if moved else ())
    D = np.array(sorted(shifts), dtype=np.int64).reshape(len(shifts), c_size)
    seen: set = set()
    classes = 0
    for c in cs_all:
        key = tuple(c)
        if key in seen:
            continue
        classes += 1
        for row in (c[None, :] + D) % p:
            seen.add(tuple(row))
    return classes


def suite_oracle(cfg: SuiteConfig) -> list[Report]:
    rep = Report("oracle/ext-vs-baer-enumeration")
    counted = 0
    for n in sorted({1, 2, min(cfg.n, 3)}):
        ctx = TubeContext(n, 3)
        objs = small_objects(ctx, 2)
        for X, Y in product(objs, repeat=2):
            want = 3 ** ext_space(X, Y).dim
            got = baer_class_count(X, Y)
            counted += 1
            if not rep.require(got == want, f"n={n}: {got} classes vs 3^dim = {want}"):
                _counterexample(rep, n=n, X=_dims(X), Y=_dims(Y))
    rep.details.update(pairs=counted, p=3, max_total_dim=2)

    eq = Report("oracle/baer-vs-invariants")
    records = []
    for a in _configured_actions(cfg, ["rotation(n)", "scaling(-1)", "twisted(2)"]):
        _require_order(a)
        rng = cfg.rng("oracle", len(records))
        for k in range(10):
            Xh = random_equivariant(a, rng, max_length=2, max_dim=cfg.max_dim)
            Yh = random_equivariant(a, rng, max_length=2, max_dim=cfg.max_dim)
            B = ext_baer(Xh, Yh)
            inv = ext_invariants(Xh, Yh)
            ok = B.dim == inv.shape[1]
            # the forgetful image is invariant and lands onto the invariants
            F = B.forget_matrix
            if F.size:
                ok &= ctx_rank(a, F) == B.dim and ctx_rank(a, np.concatenate([F, inv], axis=1)) == inv.shape[1]
            records.append([a.name, B.dim, int(inv.shape[1])])
            if not eq.require(ok, f"{a.name} pair {k}: baer {B.dim}, invariants {inv.shape[1]}"):
                _counterexample(eq, action=a.name, pair=k)
    eq.details["pairs"] = records
    return [rep, eq]


def ctx_rank(a: GroupAction, M) -> int:
    return a.ctx.field.rank(M) if np.asarray(M).size else 0


RUNNERS: dict[str, Callable[[SuiteConfig], list[Report]]] = {
    "duality": suite_duality,
    "perfect": suite_perfect,
    "commutator": suite_commutator,
    "kappa": suite_kappa,
    "cocycle": suite_cocycle,
    "theorem1": suite_theorem1,
    "prop-a": suite_prop_a,
    "prop-b": suite_prop_b,
    "prop-c": suite_prop_c,
    "orbit": suite_orbit,
    "oracle": suite_oracle,
}


def run_suite(name: str, cfg: SuiteConfig) -> list[Report]:
    names = SUITES if name == "all" else (name,)
    out = []
    for s in names:
        if s not in RUNNERS:
            raise KeyError(f"unknown suite {s!r}")
        out.extend(RUNNERS[s](cfg))
    return sorted(out, key=lambda r: r.name)
