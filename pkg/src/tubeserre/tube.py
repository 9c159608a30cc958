"""Nilpotent representations of the cyclic quiver Z_n over GF(p).

An object assigns a space of dimension ``dims[i]`` to each vertex ``i`` and a
matrix ``maps[i]`` of shape ``dims[i+1] x dims[i]`` to the arrow ``i -> i+1``.
Extension classes are computed from the cocycle complex

    cocycles  = (+)_i Hom(X_i, Y_{i+1})
    delta(f)_i = f_{i+1} x_i - y_i f_i

so an extension 0 -> Y -> E -> X -> 0 is realised on ``E_i = Y_i (+) X_i``
with arrow matrices ``[[y_i, g_i], [0, x_i]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .gfmat import GF, field


class TubeError(ValueError):
    """Invalid tube data (bad shapes, non-nilpotent maps, non-morphisms)."""


@dataclass(frozen=True)
class TubeContext:
    """The tube T(n, p): rank ``n`` cyclic quiver over GF(p)."""

    n: int
    p: int = 5

    def __post_init__(self):
        if self.n < 1:
            raise TubeError(f"rank must be at least 1, got {self.n}")
        field(self.p)

    @property
    def field(self) -> GF:
        return field(self.p)

    def v(self, i: int) -> int:
        return i % self.n

    def __str__(self):
        return f"T({self.n},{self.p})"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.flags.writeable = False
    return a


class TubeObject:
    """A nilpotent representation of the cyclic quiver."""

    def __init__(self, ctx: TubeContext, dims: Sequence[int], maps: Sequence, validate: bool = True):
        n, p = ctx.n, ctx.p
        dims = tuple(int(d) for d in dims)
        if len(dims) != n:
            raise TubeError(f"expected {n} dimensions, got {len(dims)}")
        if any(d < 0 for d in dims):
            raise TubeError(f"negative dimension in {dims}")
        if len(maps) != n:
            raise TubeError(f"expected {n} arrow maps, got {len(maps)}")
        frozen = []
        for i, m in enumerate(maps):
            shape = (dims[(i + 1) % n], dims[i])
            m = np.array(m, dtype=np.int64)
            if m.size == 0:
                m = np.zeros(shape, dtype=np.int64)
            if m.shape != shape:
                raise TubeError(f"arrow {i}: expected shape {shape}, got {m.shape}")
            frozen.append(_frozen(m % p))
        self.ctx = ctx
        self.dims = dims
        self.maps = tuple(frozen)
        self._key = (ctx, dims, tuple(m.tobytes() for m in self.maps))
        if validate:
            bad = self.non_nilpotent_vertex()
            if bad is not None:
                raise TubeError(f"cycle composite at vertex {bad} is not nilpotent")

    def __eq__(self, other):
        return isinstance(other, TubeObject) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"TubeObject({self.ctx}, dims={self.dims})"

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def cycle_matrix(self, i: int) -> np.ndarray:
        """Composite of all n arrows starting (and ending) at vertex ``i``."""
        F, n = self.ctx.field, self.ctx.n
        i %= n
        out = F.eye(self.dims[i])
        for k in range(n):
            out = F.matmul(self.maps[(i + k) % n], out)
        return out

    def non_nilpotent_vertex(self):
        F = self.ctx.field
        for i in range(self.ctx.n):
            d = self.dims[i]
            if d == 0:
                continue
            c = self.cycle_matrix(i)
            power = F.eye(d)
            for _ in range(d):
                power = F.matmul(c, power)
            if power.any():
                return i
        return None


def _check_same_ctx(*objs):
    ctx = objs[0].ctx
    for o in objs[1:]:
        if o.ctx != ctx:
            raise TubeError(f"context mismatch: {ctx} vs {o.ctx}")
    return ctx


class TubeMorphism:
    """A vertex-wise family of matrices intertwining the arrow maps."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: TubeObject, target: TubeObject, comps: Sequence, validate: bool = True):
        ctx = _check_same_ctx(source, target)
        frozen = []
        for i, c in enumerate(comps):
            shape = (target.dims[i], source.dims[i])
            c = np.array(c, dtype=np.int64)
            if c.size == 0:
                c = np.zeros(shape, dtype=np.int64)
            if c.shape != shape:
                raise TubeError(f"component {i}: expected shape {shape}, got {c.shape}")
            frozen.append(_frozen(c % ctx.p))
        if len(frozen) != ctx.n:
            raise TubeError(f"expected {ctx.n} components, got {len(frozen)}")
        self.source = source
        self.target = target
        self.comps = tuple(frozen)
        if validate:
            bad = self.non_intertwining_vertex()
            if bad is not None:
                raise TubeError(f"not a morphism: intertwining fails at arrow {bad}")

    @property
    def ctx(self) -> TubeContext:
        return self.source.ctx

    def non_intertwining_vertex(self):
        F, n = self.ctx.field, self.ctx.n
        x, y, f = self.source.maps, self.target.maps, self.comps
        for i in range(n):
            j = (i + 1) % n
            if not np.array_equal(F.matmul(y[i], f[i]), F.matmul(f[j], x[i])):
                return i
        return None

    def __repr__(self):
        return f"TubeMorphism({self.source.dims} -> {self.target.dims})"

    def __eq__(self, other):
        return (
            isinstance(other, TubeMorphism)
            and self.source == other.source
            and self.target == other.target
            and all(np.array_equal(a, b) for a, b in zip(self.comps, other.comps))
        )

    def __hash__(self):
        return hash((self.source, self.target, tuple(c.tobytes() for c in self.comps)))

    def __matmul__(self, other: "TubeMorphism") -> "TubeMorphism":
        return compose(self, other)

    def __add__(self, other: "TubeMorphism") -> "TubeMorphism":
        if self.source != other.source or self.target != other.target:
            raise TubeError("cannot add morphisms with different endpoints")
        return TubeMorphism(self.source, self.target, [a + b for a, b in zip(self.comps, other.comps)], validate=False)

    def __sub__(self, other: "TubeMorphism") -> "TubeMorphism":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "TubeMorphism":
        return TubeMorphism(self.source, self.target, [int(c) * a for a in self.comps], validate=False)

    def vector(self) -> np.ndarray:
        return np.concatenate([c.reshape(-1) for c in self.comps]) if self.comps else np.zeros(0, np.int64)

    def is_zero(self) -> bool:
        return not any(c.any() for c in self.comps)

    def is_iso(self) -> bool:
        F = self.ctx.field
        return self.source.dims == self.target.dims and all(F.is_invertible(c) for c in self.comps)

    def inverse(self) -> "TubeMorphism":
        if not self.is_iso():
            raise TubeError("morphism is not an isomorphism")
        F = self.ctx.field
        return TubeMorphism(self.target, self.source, [F.inverse(c) for c in self.comps], validate=False)


def identity(X: TubeObject) -> TubeMorphism:
    return TubeMorphism(X, X, [np.eye(d, dtype=np.int64) for d in X.dims], validate=False)


def zero_morphism(X: TubeObject, Y: TubeObject) -> TubeMorphism:
    return TubeMorphism(X, Y, [np.zeros((b, a), dtype=np.int64) for a, b in zip(X.dims, Y.dims)], validate=False)


def compose(f: TubeMorphism, g: TubeMorphism) -> TubeMorphism:
    """``f o g`` (apply ``g`` first)."""
    if g.target != f.source:
        raise TubeError(f"cannot compose: {g} then {f}")
    F = f.ctx.field
    return TubeMorphism(g.source, f.target, [F.matmul(a, b) for a, b in zip(f.comps, g.comps)], validate=False)


def morphism_from_vector(X: TubeObject, Y: TubeObject, vec, validate: bool = False) -> TubeMorphism:
    comps, pos = [], 0
    for a, b in zip(X.dims, Y.dims):
        comps.append(np.asarray(vec[pos:pos + a * b], dtype=np.int64).reshape(b, a))
        pos += a * b
    return TubeMorphism(X, Y, comps, validate=validate)


# -- constructions -----------------------------------------------------------


def indecomposable(ctx: TubeContext, i: int, length: int) -> TubeObject:
    """M(i, l): basis v_1..v_l, v_j at vertex i+j-1, arrows v_j -> v_{j+1}."""
    if length < 1:
        raise TubeError("length must be at least 1")
    n = ctx.n
    where = [(i + j) % n for j in range(length)]
    dims = [where.count(v) for v in range(n)]
    # local index of basis vector j inside its vertex space
    local, seen = [], [0] * n
    for v in where:
        local.append(seen[v])
        seen[v] += 1
    maps = [np.zeros((dims[(v + 1) % n], dims[v]), dtype=np.int64) for v in range(n)]
    for j in range(length - 1):
        v = where[j]
        maps[v][local[j + 1], local[j]] = 1
    return TubeObject(ctx, dims, maps)


def simple(ctx: TubeContext, i: int) -> TubeObject:
    return indecomposable(ctx, i, 1)


def zero_object(ctx: TubeContext) -> TubeObject:
    return TubeObject(ctx, [0] * ctx.n, [np.zeros((0, 0), dtype=np.int64)] * ctx.n)


def _block_diag(blocks, rows, cols):
    out = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
    r = c = 0
    for b, nr, nc in zip(blocks, rows, cols):
        out[r:r + nr, c:c + nc] = b
        r += nr
        c += nc
    return out


def direct_sum(*objs: TubeObject):
    """Direct sum with canonical injections and projections.

    Returns ``(Z, injections, projections)``.
    """
    ctx = _check_same_ctx(*objs)
    n = ctx.n
    dims = [sum(o.dims[i] for o in objs) for i in range(n)]
    maps = []
    for i in range(n):
        j = (i + 1) % n
        maps.append(_block_diag([o.maps[i] for o in objs], [o.dims[j] for o in objs], [o.dims[i] for o in objs]))
    Z = TubeObject(ctx, dims, maps, validate=False)
    injections, projections = [], []
    offsets = [0] * n
    for o in objs:
        inj, proj = [], []
        for i in range(n):
            e = np.zeros((dims[i], o.dims[i]), dtype=np.int64)
            e[offsets[i]:offsets[i] + o.dims[i], :] = np.eye(o.dims[i], dtype=np.int64)
            inj.append(e)
            proj.append(e.T.copy())
            offsets[i] += o.dims[i]
        injections.append(TubeMorphism(o, Z, inj, validate=False))
        projections.append(TubeMorphism(Z, o, proj, validate=False))
    return Z, injections, projections


def conjugate(X: TubeObject, changes: Sequence[np.ndarray]) -> tuple[TubeObject, TubeMorphism]:
    """Transport X along vertex-wise invertible matrices ``changes``.

    Returns the new object ``X'`` and the isomorphism ``X -> X'``.
    """
    ctx, F, n = X.ctx, X.ctx.field, X.ctx.n
    inv = [F.inverse(c) for c in changes]
    maps = [F.matmul(changes[(i + 1) % n], X.maps[i], inv[i]) for i in range(n)]
    Y = TubeObject(ctx, X.dims, maps, validate=False)
    return Y, TubeMorphism(X, Y, changes, validate=False)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_object(ctx: TubeContext, seed, max_summands: int = 2, max_length: int = 4, max_dim=None) -> TubeObject:
    """Seeded random sum of indecomposables, conjugated by a random base change.

    With ``max_dim`` set, draws are repeated until every vertex space has
    dimension at most ``max_dim``.
    """
    rng = _rng(seed)
    F = ctx.field
    while True:
        k = int(rng.integers(1, max_summands + 1))
        parts = [
            indecomposable(ctx, int(rng.integers(0, ctx.n)), int(rng.integers(1, max_length + 1)))
            for _ in range(k)
        ]
        X = direct_sum(*parts)[0]
        if max_dim is None or max(X.dims) <= max_dim:
            break
    changes = [F.random_invertible(rng, d) for d in X.dims]
    return conjugate(X, changes)[0]


# -- Hom and Ext --------------------------------------------------------------


def _vertex_layout(X: TubeObject, Y: TubeObject, shift: int):
    """Offsets of blocks Hom(X_i, Y_{i+shift}) in a flattened vector."""
    n = X.ctx.n
    offsets, pos = [], 0
    for i in range(n):
        offsets.append(pos)
        pos += Y.dims[(i + shift) % n] * X.dims[i]
    return offsets, pos


def coboundary_matrix(X: TubeObject, Y: TubeObject) -> np.ndarray:
    """Matrix of f -> delta(f), from vertex-wise maps to cocycles."""
    ctx = _check_same_ctx(X, Y)
    n, p = ctx.n, ctx.p
    src_off, src_dim = _vertex_layout(X, Y, 0)
    dst_off, dst_dim = _vertex_layout(X, Y, 1)
    D = np.zeros((dst_dim, src_dim), dtype=np.int64)
    for i in range(n):
        j = (i + 1) % n
        r0 = dst_off[i]
        rows = Y.dims[j] * X.dims[i]
        # + f_{i+1} x_i
        c0 = src_off[j]
        D[r0:r0 + rows, c0:c0 + Y.dims[j] * X.dims[j]] += np.kron(np.eye(Y.dims[j], dtype=np.int64), X.maps[i].T)
        # - y_i f_i
        c0 = src_off[i]
        D[r0:r0 + rows, c0:c0 + Y.dims[i] * X.dims[i]] -= np.kron(Y.maps[i], np.eye(X.dims[i], dtype=np.int64))
    return D % p


@lru_cache(maxsize=8192)
def _hom_kernel(X: TubeObject, Y: TubeObject) -> np.ndarray:
    return X.ctx.field.kernel_basis(coboundary_matrix(X, Y))


def hom_basis(X: TubeObject, Y: TubeObject) -> list[TubeMorphism]:
    """Basis of Hom(X, Y): the kernel of the coboundary map."""
    K = _hom_kernel(X, Y)
    return [morphism_from_vector(X, Y, K[:, j]) for j in range(K.shape[1])]


def hom_dim(X: TubeObject, Y: TubeObject) -> int:
    return _hom_kernel(X, Y).shape[1]


def random_morphism(X: TubeObject, Y: TubeObject, seed) -> TubeMorphism:
    rng = _rng(seed)
    K = _hom_kernel(X, Y)
    coeffs = rng.integers(0, X.ctx.p, size=K.shape[1])
    return morphism_from_vector(X, Y, (K @ coeffs) % X.ctx.p)


def cycle_endo(X: TubeObject) -> TubeMorphism:
    """The cycle operator t_X: at vertex i, the composite of all n arrows."""
    return TubeMorphism(X, X, [X.cycle_matrix(i) for i in range(X.ctx.n)], validate=False)


class ExtCocycle:
    """Cocycle components g_i: X_i -> Y_{i+1} representing a class in Ext^1(X, Y)."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: TubeObject, target: TubeObject, comps: Sequence):
        ctx = _check_same_ctx(source, target)
        n = ctx.n
        frozen = []
        for i, c in enumerate(comps):
            shape = (target.dims[(i + 1) % n], source.dims[i])
            c = np.array(c, dtype=np.int64)
            if c.size == 0:
                c = np.zeros(shape, dtype=np.int64)
            if c.shape != shape:
                raise TubeError(f"cocycle component {i}: expected shape {shape}, got {c.shape}")
            frozen.append(_frozen(c % ctx.p))
        if len(frozen) != n:
            raise TubeError(f"expected {n} cocycle components, got {len(frozen)}")
        self.source = source
        self.target = target
        self.comps = tuple(frozen)

    @property
    def ctx(self) -> TubeContext:
        return self.source.ctx

    def __repr__(self):
        return f"ExtCocycle({self.source.dims} -> {self.target.dims})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtCocycle)
            and self.source == other.source
            and self.target == other.target
            and all(np.array_equal(a, b) for a, b in zip(self.comps, other.comps))
        )

    def vector(self) -> np.ndarray:
        if not self.comps:
            return np.zeros(0, np.int64)
        return np.concatenate([c.reshape(-1) for c in self.comps])

    @classmethod
    def from_vector(cls, X: TubeObject, Y: TubeObject, vec) -> "ExtCocycle":
        n = X.ctx.n
        comps, pos = [], 0
        for i in range(n):
            r, c = Y.dims[(i + 1) % n], X.dims[i]
            comps.append(np.asarray(vec[pos:pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        return cls(X, Y, comps)

    @classmethod
    def zero(cls, X: TubeObject, Y: TubeObject) -> "ExtCocycle":
        return cls.from_vector(X, Y, np.zeros(_vertex_layout(X, Y, 1)[1], dtype=np.int64))

    def __add__(self, other):
        return ExtCocycle(self.source, self.target, [a + b for a, b in zip(self.comps, other.comps)])

    def scale(self, c) -> "ExtCocycle":
        return ExtCocycle(self.source, self.target, [int(c) * a for a in self.comps])


def coboundary(X: TubeObject, Y: TubeObject, f: Sequence[np.ndarray]) -> ExtCocycle:
    """delta(f) for an arbitrary vertex-wise family f_i: X_i -> Y_i."""
    F, n = X.ctx.field, X.ctx.n
    comps = [
        F.matmul(f[(i + 1) % n], X.maps[i]) - F.matmul(Y.maps[i], f[i])
        for i in range(n)
    ]
    return ExtCocycle(X, Y, comps)


class ExtClassSpace:
    """Ext^1(X, Y) as cocycles modulo coboundaries."""

    def __init__(self, X: TubeObject, Y: TubeObject):
        F = X.ctx.field
        self.source = X
        self.target = Y
        self.coboundaries = coboundary_matrix(X, Y)
        self.ambient_dim = self.coboundaries.shape[0]
        reps, proj = F.quotient_basis(F.eye(self.ambient_dim), self.coboundaries)
        self.reps = reps
        self.proj = proj
        for a in (self.reps, self.proj):
            a.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    def __repr__(self):
        return f"ExtClassSpace({self.source.dims} -> {self.target.dims}, dim={self.dim})"

    def classify(self, xi: ExtCocycle) -> np.ndarray:
        """Coordinates of the class of ``xi`` over the representative basis."""
        if xi.source != self.source or xi.target != self.target:
            raise TubeError("cocycle does not live over this Ext space")
        return (self.proj @ xi.vector()) % self.source.ctx.p

    def cocycle(self, coords) -> ExtCocycle:
        coords = np.asarray(coords, dtype=np.int64)
        return ExtCocycle.from_vector(self.source, self.target, (self.reps @ coords) % self.source.ctx.p)

    def basis(self) -> list[ExtCocycle]:
        return [ExtCocycle.from_vector(self.source, self.target, self.reps[:, j]) for j in range(self.dim)]

    def is_coboundary(self, xi: ExtCocycle) -> bool:
        return not self.classify(xi).any()


@lru_cache(maxsize=8192)
def ext_space(X: TubeObject, Y: TubeObject) -> ExtClassSpace:
    _check_same_ctx(X, Y)
    return ExtClassSpace(X, Y)


def realize_extension(xi: ExtCocycle):
    """Middle term of the extension with cocycle ``xi``.

    Returns ``(E, incl, proj)`` with ``incl: Y -> E`` and ``proj: E -> X``.
    """
    X, Y = xi.source, xi.target
    ctx, n = X.ctx, X.ctx.n
    dims = [Y.dims[i] + X.dims[i] for i in range(n)]
    maps = []
    for i in range(n):
        j = (i + 1) % n
        m = np.zeros((dims[j], dims[i]), dtype=np.int64)
        m[:Y.dims[j], :Y.dims[i]] = Y.maps[i]
        m[:Y.dims[j], Y.dims[i]:] = xi.comps[i]
        m[Y.dims[j]:, Y.dims[i]:] = X.maps[i]
        maps.append(m)
    E = TubeObject(ctx, dims, maps)
    incl = TubeMorphism(Y, E, [np.eye(dims[i], Y.dims[i], dtype=np.int64) for i in range(n)])
    proj = TubeMorphism(E, X, [np.eye(X.dims[i], dims[i], k=Y.dims[i], dtype=np.int64) for i in range(n)])
    return E, incl, proj


def pullback(xi: ExtCocycle, f: TubeMorphism) -> ExtCocycle:
    """xi.f for f: X' -> X, on representatives: g_i o f_i."""
    if f.target != xi.source:
        raise TubeError("pullback: morphism target is not the cocycle source")
    F = xi.ctx.field
    return ExtCocycle(f.source, xi.target, [F.matmul(g, a) for g, a in zip(xi.comps, f.comps)])


def pushout(h: TubeMorphism, xi: ExtCocycle) -> ExtCocycle:
    """h.xi for h: Y -> Y', on representatives: h_{i+1} o g_i."""
    if h.source != xi.target:
        raise TubeError("pushout: morphism source is not the cocycle target")
    F, n = xi.ctx.field, xi.ctx.n
    return ExtCocycle(xi.source, h.target, [F.matmul(h.comps[(i + 1) % n], xi.comps[i]) for i in range(n)])


def pullback_class(coords, X: TubeObject, Y: TubeObject, f: TubeMorphism) -> np.ndarray:
    """Class-level pullback: coordinates in Ext(X, Y) to coordinates in Ext(X', Y)."""
    xi = ext_space(X, Y).cocycle(coords)
    return ext_space(f.source, Y).classify(pullback(xi, f))


def pushout_class(h: TubeMorphism, coords, X: TubeObject, Y: TubeObject) -> np.ndarray:
    xi = ext_space(X, Y).cocycle(coords)
    return ext_space(X, h.target).classify(pushout(h, xi))
