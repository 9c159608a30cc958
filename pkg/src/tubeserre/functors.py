"""Admissible autoequivalences of the tube and scalar natural transformations.

An admissible functor ``F = (r, zeta)`` rotates vertex indices by ``r`` and
rescales arrows:

    (FX)_i = X_{i+r},   (Fx)_i = zeta_i x_{i+r},   (Ff)_i = f_{i+r}.

A natural transformation between two admissible functors with the same
rotation is stored as a tuple ``c`` with ``theta_{X,i} = c_i Id``.  Such a tuple
is natural for every morphism as soon as it is natural for the arrows, which
is the finite condition ``c_{i+1} zeta_i = c_i zeta'_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .tube import ExtCocycle, TubeContext, TubeError, TubeMorphism, TubeObject


@dataclass(frozen=True)
class AdmissibleFunctor:
    ctx: TubeContext
    rotation: int
    scalings: tuple[int, ...]

    def __post_init__(self):
        n, p = self.ctx.n, self.ctx.p
        object.__setattr__(self, "rotation", int(self.rotation) % n)
        scal = tuple(int(z) % p for z in self.scalings)
        if len(scal) != n:
            raise TubeError(f"expected {n} scalings, got {len(scal)}")
        if any(z == 0 for z in scal):
            raise TubeError("scalings must be nonzero")
        object.__setattr__(self, "scalings", scal)

    @classmethod
    def identity(cls, ctx: TubeContext) -> "AdmissibleFunctor":
        return cls(ctx, 0, (1,) * ctx.n)

    @classmethod
    def serre(cls, ctx: TubeContext) -> "AdmissibleFunctor":
        return cls(ctx, -1, (1,) * ctx.n)

    @classmethod
    def scaling(cls, ctx: TubeContext, zeta) -> "AdmissibleFunctor":
        if np.ndim(zeta) == 0:
            zeta = (zeta,) * ctx.n
        return cls(ctx, 0, tuple(zeta))

    def __str__(self):
        return f"F(r={self.rotation}, zeta={list(self.scalings)})"

    def is_identity(self) -> bool:
        return self.rotation == 0 and all(z == 1 for z in self.scalings)

    def scaling_product(self) -> int:
        out = 1
        for z in self.scalings:
            out = out * z % self.ctx.p
        return out

    def __mul__(self, other: "AdmissibleFunctor") -> "AdmissibleFunctor":
        return compose_functors(self, other)

    def power(self, d: int) -> "AdmissibleFunctor":
        out = AdmissibleFunctor.identity(self.ctx)
        for _ in range(d):
            out = compose_functors(self, out)
        return out

    def __call__(self, data):
        return functor_apply(self, data)


def compose_functors(F1: AdmissibleFunctor, F2: AdmissibleFunctor) -> AdmissibleFunctor:
    """F1 o F2 = (r1 + r2, (zeta_i * zeta'_{i+r1})_i)."""
    if F1.ctx != F2.ctx:
        raise TubeError("functors over different contexts")
    n, p = F1.ctx.n, F1.ctx.p
    scal = tuple(F1.scalings[i] * F2.scalings[(i + F1.rotation) % n] % p for i in range(n))
    return AdmissibleFunctor(F1.ctx, F1.rotation + F2.rotation, scal)


def _rotate(seq, r, n):
    return [seq[(i + r) % n] for i in range(n)]


def apply_to_object(F: AdmissibleFunctor, X: TubeObject) -> TubeObject:
    n, r = X.ctx.n, F.rotation
    maps = [F.scalings[i] * X.maps[(i + r) % n] for i in range(n)]
    return TubeObject(X.ctx, _rotate(X.dims, r, n), maps, validate=False)


def apply_to_morphism(F: AdmissibleFunctor, f: TubeMorphism) -> TubeMorphism:
    n, r = f.ctx.n, F.rotation
    return TubeMorphism(apply_to_object(F, f.source), apply_to_object(F, f.target), _rotate(f.comps, r, n), validate=False)


def apply_to_cocycle(F: AdmissibleFunctor, xi: ExtCocycle) -> ExtCocycle:
    """(F g)_i = zeta_i g_{i+r}."""
    n, r = xi.ctx.n, F.rotation
    comps = [F.scalings[i] * xi.comps[(i + r) % n] for i in range(n)]
    return ExtCocycle(apply_to_object(F, xi.source), apply_to_object(F, xi.target), comps)


def apply_vertexwise(F: AdmissibleFunctor, comps: Sequence[np.ndarray]) -> list[np.ndarray]:
    """F on a family of vertex maps that need not be a morphism."""
    return _rotate(list(comps), F.rotation, F.ctx.n)


def functor_apply(F: AdmissibleFunctor, data: Union[TubeObject, TubeMorphism, ExtCocycle]):
    if isinstance(data, TubeObject):
        return apply_to_object(F, data)
    if isinstance(data, TubeMorphism):
        return apply_to_morphism(F, data)
    if isinstance(data, ExtCocycle):
        return apply_to_cocycle(F, data)
    raise TypeError(f"cannot apply a functor to {type(data).__name__}")


class NotNatural(TubeError):
    pass


@dataclass(frozen=True)
class ScalarNatTrans:
    """theta: F -> F' with theta_{X,i} = c_i Id_{X_{i+r}}."""

    source: AdmissibleFunctor
    target: AdmissibleFunctor
    coeffs: tuple[int, ...]

    def __post_init__(self):
        ctx = self.source.ctx
        if self.target.ctx != ctx:
            raise TubeError("natural transformation between functors over different contexts")
        object.__setattr__(self, "coeffs", tuple(int(c) % ctx.p for c in self.coeffs))
        if len(self.coeffs) != ctx.n:
            raise TubeError(f"expected {ctx.n} scalars, got {len(self.coeffs)}")

    @property
    def ctx(self) -> TubeContext:
        return self.source.ctx

    def naturality_failure(self):
        """First arrow index where naturality fails, or ``None``."""
        if self.source.rotation != self.target.rotation:
            return "rotation"
        n, p = self.ctx.n, self.ctx.p
        c, z, z2 = self.coeffs, self.source.scalings, self.target.scalings
        for i in range(n):
            if c[(i + 1) % n] * z[i] % p != c[i] * z2[i] % p:
                return i
        return None

    def is_natural(self) -> bool:
        return self.naturality_failure() is None

    def is_iso(self) -> bool:
        return self.is_natural() and all(c != 0 for c in self.coeffs)

    def validate(self) -> "ScalarNatTrans":
        bad = self.naturality_failure()
        if bad is not None:
            raise NotNatural(f"tuple {list(self.coeffs)} is not natural {self.source} -> {self.target} (at {bad})")
        return self

    @classmethod
    def identity(cls, F: AdmissibleFunctor) -> "ScalarNatTrans":
        return cls(F, F, (1,) * F.ctx.n)

    def is_identity(self) -> bool:
        return self.source == self.target and all(c == 1 for c in self.coeffs)

    def at(self, X: TubeObject) -> TubeMorphism:
        src, tgt = self.source(X), self.target(X)
        return TubeMorphism(src, tgt, [c * np.eye(d, dtype=np.int64) for c, d in zip(self.coeffs, src.dims)], validate=False)

    def then(self, other: "ScalarNatTrans") -> "ScalarNatTrans":
        """Vertical composite ``other o self``."""
        if self.target != other.source:
            raise TubeError("vertical composition of non-composable transformations")
        p = self.ctx.p
        return ScalarNatTrans(self.source, other.target, tuple(a * b % p for a, b in zip(self.coeffs, other.coeffs)))

    def __matmul__(self, other: "ScalarNatTrans") -> "ScalarNatTrans":
        return other.then(self)

    def inverse(self) -> "ScalarNatTrans":
        F = self.ctx.field
        return ScalarNatTrans(self.target, self.source, tuple(F.inv(c) for c in self.coeffs))

    def scale(self, c) -> "ScalarNatTrans":
        p = self.ctx.p
        return ScalarNatTrans(self.source, self.target, tuple(a * int(c) % p for a in self.coeffs))

    def whisker_right(self, G: AdmissibleFunctor) -> "ScalarNatTrans":
        """theta G: FG -> F'G, same tuple."""
        return ScalarNatTrans(compose_functors(self.source, G), compose_functors(self.target, G), self.coeffs)

    def whisker_left(self, G: AdmissibleFunctor) -> "ScalarNatTrans":
        """G theta: GF -> GF', tuple shifted by G's rotation."""
        n = self.ctx.n
        return ScalarNatTrans(
            compose_functors(G, self.source),
            compose_functors(G, self.target),
            tuple(self.coeffs[(i + G.rotation) % n] for i in range(n)),
        )

    def retarget(self, source: AdmissibleFunctor, target: AdmissibleFunctor) -> "ScalarNatTrans":
        if source != self.source or target != self.target:
            raise TubeError(f"expected {source} -> {target}, have {self.source} -> {self.target}")
        return self


def fit_scalar_tuple(morphisms: Sequence[TubeMorphism], ctx: TubeContext):
    """Recognise a family of morphisms as ``c_i Id`` at every vertex.

    Returns the tuple, or ``None`` if some component is not a scalar matrix or
    the scalars disagree between objects.  Vertices never supported get 0.
    """
    n = ctx.n
    found: list = [None] * n
    for f in morphisms:
        for i, c in enumerate(f.comps):
            if c.shape[0] == 0:
                continue
            if c.shape[0] != c.shape[1]:
                return None
            s = int(c[0, 0])
            if not np.array_equal(c, s * np.eye(c.shape[0], dtype=np.int64)):
                return None
            if found[i] is None:
                found[i] = s
            elif found[i] != s:
                return None
    return tuple(0 if s is None else s for s in found)
