"""Commutator isomorphisms sigma_F: FS -> SF and the induced homomorphism kappa.

sigma_F is computed object by object from the trace condition

    Tr_X(xi) = Tr_{FX}((sigma_F)_X . F(xi))   for all xi in Ext^1(X, SX),

a square linear system in Hom(FSX, SFX) whose uniqueness is the
nondegeneracy of the Serre pairing.  Nothing about the admissible family is
assumed by the solver; recognising its output as a scalar tuple is a
separate fitting step.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .functors import AdmissibleFunctor, ScalarNatTrans, compose_functors, fit_scalar_tuple
from .serre import CentralElement, SerreStructure
from .tube import (
    TubeContext,
    TubeError,
    TubeMorphism,
    TubeObject,
    cycle_endo,
    ext_space,
    hom_basis,
    identity,
    indecomposable,
    pushout,
    random_object,
)


class DualityBroken(RuntimeError):
    """The commutator system is singular; the Serre pairing is degenerate."""


class NotCentralPolynomial(ValueError):
    """No polynomial in the cycle operator reproduces the given transformation."""


class ComputedNatTrans:
    """Natural transformation given object by object, with a value-keyed memo."""

    def __init__(self, source: AdmissibleFunctor, target: AdmissibleFunctor, fn: Callable[[TubeObject], TubeMorphism], name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        self._fn = fn
        self._memo: dict = {}

    def __repr__(self):
        return f"ComputedNatTrans({self.name or '?'}: {self.source} -> {self.target})"

    def at(self, X: TubeObject) -> TubeMorphism:
        out = self._memo.get(X)
        if out is None:
            out = self._fn(X)
            self._memo[X] = out
        return out

    __call__ = at


def probe_set(ctx: TubeContext, seed: int = 0, extra: int = 5) -> list[TubeObject]:
    """Indecomposables M(i, l), l <= 2n, plus seeded random objects."""
    probes = [indecomposable(ctx, i, l) for i in range(ctx.n) for l in range(1, 2 * ctx.n + 1)]
    probes += [random_object(ctx, [seed, k], max_summands=2, max_length=2 * ctx.n) for k in range(extra)]
    return probes


def _default_serre(ctx: TubeContext, serre: Optional[SerreStructure]) -> SerreStructure:
    return SerreStructure.standard(ctx) if serre is None else serre


def commutator(F: AdmissibleFunctor, X: TubeObject, serre: Optional[SerreStructure] = None) -> TubeMorphism:
    """(sigma_F)_X: F S X -> S F X, solved from the trace condition."""
    return _commutator(F, X, _default_serre(X.ctx, serre))


@lru_cache(maxsize=8192)
def _commutator(F: AdmissibleFunctor, X: TubeObject, serre: SerreStructure) -> TubeMorphism:
    FSX = F(serre(X))
    SFX = serre(F(X))
    FX = F(X)
    classes = ext_space(X, serre(X)).basis()
    homs = hom_basis(FSX, SFX)
    M = np.zeros((len(classes), len(homs)), dtype=np.int64)
    rhs = np.zeros(len(classes), dtype=np.int64)
    for b, xi in enumerate(classes):
        Fxi = F(xi)
        rhs[b] = serre.trace(X, xi)
        for k, h in enumerate(homs):
            M[b, k] = serre.trace(FX, pushout(h, Fxi))
    field = X.ctx.field
    if len(classes) != len(homs) or field.rank(M) != len(homs):
        raise DualityBroken(
            f"commutator system for {F} at {X} is {M.shape} of rank {field.rank(M)}"
        )
    a = field.solve_affine(M, rhs)
    out = TubeMorphism(FSX, SFX, [0 * c for c in identity(FSX).comps], validate=False)
    for coeff, h in zip(a, homs):
        if coeff:
            out = out + h.scale(int(coeff))
    return out


def commutator_nat(F: AdmissibleFunctor, serre: SerreStructure) -> ComputedNatTrans:
    S = serre.functor
    return ComputedNatTrans(
        compose_functors(F, S), compose_functors(S, F), lambda X: commutator(F, X, serre), name=f"sigma[{F}]"
    )


def commutator_power(F: AdmissibleFunctor, d: int, X: TubeObject, serre: Optional[SerreStructure] = None) -> TubeMorphism:
    """(sigma_F^d)_X: F S^d X -> S^d F X with sigma^{d+1} = S sigma^d o sigma S^d."""
    if d < 1:
        raise ValueError("d must be at least 1")
    serre = _default_serre(X.ctx, serre)
    out = commutator(F, X, serre)
    SkX = X
    for _ in range(1, d):
        SkX = serre(SkX)
        out = serre(out) @ commutator(F, SkX, serre)
    return out


def commutator_tuple(F: AdmissibleFunctor, serre: Optional[SerreStructure] = None, probes: Optional[Sequence[TubeObject]] = None) -> ScalarNatTrans:
    """Solver output on the probe set, recognised as a scalar tuple FS -> SF.

    Raises ``NotCentralPolynomial`` if the outputs are not a common scalar tuple.
    """
    serre = _default_serre(F.ctx, serre)
    probes = probe_set(F.ctx) if probes is None else probes
    outs = [commutator(F, X, serre) for X in probes]
    c = fit_scalar_tuple(outs, F.ctx)
    if c is None:
        raise NotCentralPolynomial(f"commutator of {F} is not a scalar tuple on the probe set")
    S = serre.functor
    return ScalarNatTrans(compose_functors(F, S), compose_functors(S, F), c).validate()


def closed_form_commutator(F: AdmissibleFunctor) -> tuple[int, ...]:
    """For the standard shift structure, sigma_F has tuple c_i = zeta_{i-1}^{-1}."""
    field, n = F.ctx.field, F.ctx.n
    return tuple(field.inv(F.scalings[(i - 1) % n]) for i in range(n))


# -- center --------------------------------------------------------------------


def _vec(f: TubeMorphism) -> np.ndarray:
    return f.vector()


def _power(t: TubeMorphism, k: int) -> TubeMorphism:
    out = identity(t.source)
    for _ in range(k):
        out = t @ out
    return out


def _fit_polynomial(targets, bases, p, degree):
    """Solve sum_k c_k bases[X][k] = targets[X] over all probes."""
    field = targets[0].ctx.field if targets else None
    cols = []
    for k in range(degree + 1):
        cols.append(np.concatenate([_vec(b[k]) for b in bases]) if bases else np.zeros(0, np.int64))
    A = np.stack(cols, axis=1) % p
    rhs = np.concatenate([_vec(t) for t in targets]) % p
    return field.solve_affine(A, rhs)


def extract_central(
    tau: Callable[[TubeObject], TubeMorphism],
    F: AdmissibleFunctor,
    probes: Optional[Sequence[TubeObject]] = None,
    degree: Optional[int] = None,
) -> tuple[CentralElement, CentralElement]:
    """Central elements (lam, lam') with tau = lam F = F lam' on the probes."""
    ctx, p = F.ctx, F.ctx.p
    probes = probe_set(ctx) if probes is None else list(probes)
    if degree is None:
        degree = max(X.total_dim for X in probes)
    targets = [tau(X) for X in probes]
    left, right = [], []
    for X in probes:
        FX = F(X)
        tF = cycle_endo(FX)
        Ft = F(cycle_endo(X))
        left.append([_power(tF, k) for k in range(degree + 1)])
        right.append([_power(Ft, k) for k in range(degree + 1)])
    lam = _fit_polynomial(targets, left, p, degree)
    lam2 = _fit_polynomial(targets, right, p, degree)
    if lam is None or lam2 is None:
        raise NotCentralPolynomial(f"transformation of {F} is not central-polynomial on the probe set")
    return CentralElement(p, tuple(lam)), CentralElement(p, tuple(lam2))


def is_center_linear(F: AdmissibleFunctor, probes: Optional[Sequence[TubeObject]] = None) -> bool:
    """F(t_X) = t_{FX} for all X, i.e. the product of the scalings is 1.

    The product criterion is cross-checked against the probe set.
    """
    by_product = F.scaling_product() == 1
    probes = probe_set(F.ctx) if probes is None else probes
    by_probes = all(F(cycle_endo(X)) == cycle_endo(F(X)) for X in probes)
    if by_product != by_probes:
        raise RuntimeError(f"center-linearity criteria disagree for {F}")
    return by_product


class Periodicity:
    """eta: S^d -> Id, as lam o (scalar tuple S^d -> Id)."""

    def __init__(self, serre: SerreStructure, d: Optional[int] = None, central: Optional[CentralElement] = None, base: Optional[ScalarNatTrans] = None):
        ctx = serre.ctx
        self.serre = serre
        self.d = ctx.n if d is None else d
        Sd = serre.power(self.d)
        if Sd.rotation != 0:
            raise TubeError(f"S^{self.d} is not isomorphic to the identity")
        self.central = CentralElement(ctx.p) if central is None else central
        if not self.central.is_invertible():
            raise TubeError("periodicity needs an invertible central element")
        if base is None:
            base = _solve_tuple(Sd, AdmissibleFunctor.identity(ctx))
        self.base = base.retarget(Sd, AdmissibleFunctor.identity(ctx)).validate()

    def at(self, X: TubeObject) -> TubeMorphism:
        return self.central.at(X) @ self.base.at(X)

    __call__ = at

    def inverse_at(self, X: TubeObject, degree: int) -> TubeMorphism:
        return self.base.inverse().at(X) @ self.central.inverse(degree).at(X)

    def is_compatible(self, probes: Sequence[TubeObject]) -> bool:
        """eta S = S eta on the probes."""
        S = self.serre
        return all(self.at(S(X)) == S(self.at(X)) for X in probes)


def _solve_tuple(F: AdmissibleFunctor, G: AdmissibleFunctor) -> ScalarNatTrans:
    """A natural isomorphism F -> G with first entry 1 (same rotation required)."""
    ctx, n, field = F.ctx, F.ctx.n, F.ctx.field
    if F.rotation != G.rotation:
        raise TubeError(f"{F} and {G} have different rotations")
    c = [1]
    for i in range(n - 1):
        # c_{i+1} zeta_i = c_i zeta'_i
        c.append(c[i] * G.scalings[i] * field.inv(F.scalings[i]) % ctx.p)
    theta = ScalarNatTrans(F, G, tuple(c))
    if not theta.is_natural():
        raise TubeError(f"{F} and {G} are not isomorphic through a scalar tuple")
    return theta


def kappa_transformation(F: AdmissibleFunctor, eta: Periodicity) -> Callable[[TubeObject], TubeMorphism]:
    """X -> (eta F o sigma_F^d o F eta^{-1})_X : FX -> FX."""
    serre = eta.serre

    def t_F(X: TubeObject) -> TubeMorphism:
        degree = F(X).total_dim + X.total_dim
        return eta.at(F(X)) @ commutator_power(F, eta.d, X, serre) @ F(eta.inverse_at(X, degree))

    return t_F


def kappa(F: AdmissibleFunctor, eta: Optional[Periodicity] = None, probes: Optional[Sequence[TubeObject]] = None) -> CentralElement:
    """The central unit kappa(F) with t_F = kappa(F) F."""
    if eta is None:
        eta = Periodicity(SerreStructure.standard(F.ctx))
    probes = probe_set(F.ctx) if probes is None else probes
    if not is_center_linear(F, probes):
        raise TubeError(f"kappa is only defined for center-linear functors; {F} is not")
    lam, lam2 = extract_central(kappa_transformation(F, eta), F, probes)
    if lam != lam2:
        raise RuntimeError(f"left and right central parts differ for center-linear {F}: {lam} vs {lam2}")
    if not lam.is_invertible():
        raise RuntimeError(f"kappa({F}) = {lam} is not invertible")
    return lam
