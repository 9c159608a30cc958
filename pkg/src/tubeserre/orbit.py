"""Orbit category A/F of a functor with a compatible periodicity F^d -> Id.

Morphisms X -> Y are tuples (f_0, ..., f_{d-1}) with f_i: X -> F^i Y, and

    h_i = sum_{[j+l] = i} eps[g^j, g^l]_Z o F^j(g_l) o f_j

where eps comes from the cyclic action induced by (F, theta).
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .actions import GroupAction, induced_cyclic
from .equivariant import EquivariantMorphism, induction
from .functors import AdmissibleFunctor, ScalarNatTrans
from .tube import TubeError, TubeMorphism, TubeObject, hom_basis, identity, random_morphism, zero_morphism


class OrbitCategory:
    def __init__(self, F: AdmissibleFunctor, theta: Optional[ScalarNatTrans], d: int):
        self.F = F
        self.d = d
        self.action: GroupAction = induced_cyclic(F, theta, d)

    def __repr__(self):
        return f"OrbitCategory({self.F}, d={self.d})"

    def target_of(self, Y: TubeObject, i: int) -> TubeObject:
        return self.action.F(i)(Y)

    def hom(self, X: TubeObject, Y: TubeObject) -> list["OrbitMorphism"]:
        out = []
        for i in range(self.d):
            for f in hom_basis(X, self.target_of(Y, i)):
                comps = [zero_morphism(X, self.target_of(Y, j)) for j in range(self.d)]
                comps[i] = f
                out.append(OrbitMorphism(self, X, Y, comps))
        return out

    def identity(self, X: TubeObject) -> "OrbitMorphism":
        comps = [identity(X)] + [zero_morphism(X, self.target_of(X, j)) for j in range(1, self.d)]
        return OrbitMorphism(self, X, X, comps)

    def random(self, X: TubeObject, Y: TubeObject, seed) -> "OrbitMorphism":
        rng = np.random.default_rng(seed)
        return OrbitMorphism(self, X, Y, [random_morphism(X, self.target_of(Y, i), rng) for i in range(self.d)])

    def compose(self, f: "OrbitMorphism", g: "OrbitMorphism") -> "OrbitMorphism":
        """g after f."""
        if f.target != g.source:
            raise TubeError("orbit morphisms are not composable")
        a, d = self.action, self.d
        X, Z = f.source, g.target
        h = [zero_morphism(X, self.target_of(Z, i)) for i in range(d)]
        for j in range(d):
            for l in range(d):
                i = (j + l) % d
                h[i] = h[i] + a.eps(j, l).at(Z) @ a.F(j)(g.comps[l]) @ f.comps[j]
        return OrbitMorphism(self, X, Z, h)

    def to_equivariant(self, f: "OrbitMorphism") -> EquivariantMorphism:
        """Ind X -> Ind Y with block (m, k) = sum_{[k+i] = m} eps[k, i] F^k(f_i)."""
        a, d, n = self.action, self.d, f.ctx.n
        IX, IY = induction(a, f.source), induction(a, f.target)
        Xs = [a.F(k)(f.source) for k in range(d)]
        Ys = [a.F(k)(f.target) for k in range(d)]
        comps = []
        for v in range(n):
            xo = np.cumsum([0] + [P.dims[v] for P in Xs])
            yo = np.cumsum([0] + [P.dims[v] for P in Ys])
            m = np.zeros((IY.base.dims[v], IX.base.dims[v]), dtype=np.int64)
            for k in range(d):
                for i in range(d):
                    blk = (a.eps(k, i).at(f.target) @ a.F(k)(f.comps[i])).comps[v]
                    mm = (k + i) % d
                    m[yo[mm]:yo[mm + 1], xo[k]:xo[k + 1]] += blk
            comps.append(m)
        return EquivariantMorphism(IX, IY, TubeMorphism(IX.base, IY.base, comps))


class OrbitMorphism:
    __slots__ = ("category", "source", "target", "comps")

    def __init__(self, category: OrbitCategory, source: TubeObject, target: TubeObject, comps: Sequence[TubeMorphism]):
        if len(comps) != category.d:
            raise TubeError(f"expected {category.d} components, got {len(comps)}")
        for i, c in enumerate(comps):
            if c.source != source or c.target != category.target_of(target, i):
                raise TubeError(f"component {i} must map X to F^{i} Y")
        self.category = category
        self.source = source
        self.target = target
        self.comps = tuple(comps)

    @property
    def ctx(self):
        return self.source.ctx

    def __repr__(self):
        return f"OrbitMorphism({self.source.dims} -> {self.target.dims}, d={len(self.comps)})"

    def __eq__(self, other):
        return isinstance(other, OrbitMorphism) and self.source == other.source and self.target == other.target and self.comps == other.comps

    def __hash__(self):
        return hash((self.source, self.target, self.comps))

    def __add__(self, other: "OrbitMorphism") -> "OrbitMorphism":
        return OrbitMorphism(self.category, self.source, self.target, [a + b for a, b in zip(self.comps, other.comps)])

    def scale(self, c) -> "OrbitMorphism":
        return OrbitMorphism(self.category, self.source, self.target, [a.scale(c) for a in self.comps])

    def __matmul__(self, other: "OrbitMorphism") -> "OrbitMorphism":
        """self after other."""
        return self.category.compose(other, self)


def orbit_hom(X: TubeObject, Y: TubeObject, F: AdmissibleFunctor, theta: Optional[ScalarNatTrans], d: int) -> list[OrbitMorphism]:
    return OrbitCategory(F, theta, d).hom(X, Y)


def orbit_compose(f: OrbitMorphism, g: OrbitMorphism) -> OrbitMorphism:
    """(g_i) after (f_i)."""
    return f.category.compose(f, g)
