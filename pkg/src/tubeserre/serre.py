"""Serre structure on the tube.

The Serre functor is the index shift ``(SX)_i = X_{i-1}``.  A cocycle of
Ext^1(X, SX) has components ``g_i: X_i -> (SX)_{i+1} = X_i`` and the trace is
``sum_i tr(g_i)``; it vanishes on coboundaries because the two halves of
``sum_i tr(f_{i+1} x_i - x_{i-1} f_i)`` telescope.

A retwisted structure carries an isomorphism ``theta: S' -> S`` and uses
``Tr'_X(xi) = Tr_X(theta_X . xi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .functors import AdmissibleFunctor, ScalarNatTrans, functor_apply
from .tube import (
    ExtCocycle,
    TubeContext,
    TubeError,
    TubeMorphism,
    TubeObject,
    cycle_endo,
    ext_space,
    hom_basis,
    identity,
    pushout,
)


@dataclass(frozen=True)
class SerreStructure:
    """Serre functor plus the trace convention.

    ``theta`` maps the current Serre functor to the shift functor; the
    standard structure has ``theta`` the identity.
    """

    ctx: TubeContext
    functor: AdmissibleFunctor
    theta: ScalarNatTrans = dc_field(repr=False, default=None)

    def __post_init__(self):
        if self.theta is None:
            object.__setattr__(self, "theta", ScalarNatTrans.identity(self.functor))
        shift = AdmissibleFunctor.serre(self.ctx)
        if self.theta.source != self.functor or self.theta.target != shift:
            raise TubeError("trace twist must map the Serre functor to the index shift")
        if not self.theta.is_iso():
            raise TubeError("trace twist is not a natural isomorphism")

    @classmethod
    def standard(cls, ctx: TubeContext) -> "SerreStructure":
        return cls(ctx, AdmissibleFunctor.serre(ctx))

    @property
    def tag(self) -> str:
        if self.theta.is_identity():
            return "shift-trace"
        return "retwisted-trace" + str(list(self.theta.coeffs))

    def __call__(self, data):
        return functor_apply(self.functor, data)

    def power(self, d: int) -> AdmissibleFunctor:
        return self.functor.power(d)

    def trace(self, X: TubeObject, xi: ExtCocycle) -> int:
        """Tr_X on a cocycle over (X, SX)."""
        if xi.source != X or xi.target != self(X):
            raise TubeError("trace expects a cocycle in Ext^1(X, SX)")
        F, n = X.ctx.field, X.ctx.n
        c = self.theta.coeffs
        return sum(c[(i + 1) % n] * F.trace(xi.comps[i]) for i in range(n)) % X.ctx.p

    def pairing(self, xi: ExtCocycle, f: TubeMorphism) -> int:
        """<xi, f> = Tr_X(f . xi) for xi in Ext(X, Y), f: Y -> SX."""
        return self.trace(xi.source, pushout(f, xi))

    def pairing_matrix(self, X: TubeObject, Y: TubeObject) -> np.ndarray:
        """Rows: class basis of Ext^1(X, Y); columns: basis of Hom(Y, SX)."""
        classes = ext_space(X, Y).basis()
        homs = hom_basis(Y, self(X))
        M = np.zeros((len(classes), len(homs)), dtype=np.int64)
        for a, xi in enumerate(classes):
            for b, f in enumerate(homs):
                M[a, b] = self.pairing(xi, f)
        return M


def serre_apply(serre: SerreStructure, data):
    return serre(data)


def trace(serre: SerreStructure, X: TubeObject, xi: ExtCocycle) -> int:
    return serre.trace(X, xi)


def pairing_matrix(serre: SerreStructure, X: TubeObject, Y: TubeObject) -> np.ndarray:
    return serre.pairing_matrix(X, Y)


def retwist(serre: SerreStructure, theta: ScalarNatTrans) -> SerreStructure:
    """Serre structure with functor ``S'`` from ``theta: S' -> S``."""
    if theta.target != serre.functor:
        raise TubeError("retwist: theta must land in the current Serre functor")
    if not theta.is_iso():
        raise TubeError("retwist: theta is not a natural isomorphism")
    return SerreStructure(serre.ctx, theta.source, theta.then(serre.theta))


@dataclass(frozen=True)
class CentralElement:
    """c_0 + c_1 t + ... + c_N t^N in the cycle operator t."""

    p: int
    coeffs: tuple[int, ...] = (1,)

    def __post_init__(self):
        c = [int(a) % self.p for a in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @classmethod
    def scalar(cls, p: int, c) -> "CentralElement":
        return cls(p, (c,))

    @classmethod
    def t(cls, p: int) -> "CentralElement":
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_scalar(self) -> bool:
        return self.degree == 0

    def is_invertible(self) -> bool:
        return self.coeffs[0] != 0

    def __mul__(self, other: "CentralElement") -> "CentralElement":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % self.p
        return CentralElement(self.p, tuple(out))

    def truncate(self, degree: int) -> "CentralElement":
        return CentralElement(self.p, self.coeffs[: degree + 1])

    def inverse(self, degree: int) -> "CentralElement":
        """Power-series inverse, exact on objects where t^(degree+1) = 0."""
        if not self.is_invertible():
            raise ZeroDivisionError("central element with zero constant term")
        p = self.p
        c = list(self.coeffs) + [0] * max(0, degree + 1 - len(self.coeffs))
        inv0 = pow(c[0], p - 2, p)
        out = [inv0]
        for k in range(1, degree + 1):
            s = sum(c[j] * out[k - j] for j in range(1, k + 1)) % p
            out.append((-s * inv0) % p)
        return CentralElement(p, tuple(out))

    def at(self, X: TubeObject) -> TubeMorphism:
        return central_eval(self, X)

    def __call__(self, X: TubeObject) -> TubeMorphism:
        return central_eval(self, X)


def central_eval(lam: CentralElement, X: TubeObject) -> TubeMorphism:
    """c_0 Id_X + c_1 t_X + ... as a morphism X -> X."""
    if lam.p != X.ctx.p:
        raise TubeError("central element over a different field")
    t = cycle_endo(X)
    out = identity(X).scale(lam.coeffs[0])
    power = identity(X)
    for c in lam.coeffs[1:]:
        power = t @ power
        if power.is_zero():
            break
        if c:
            out = out + power.scale(c)
    return out
