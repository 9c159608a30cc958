"""The equivariantization A^G of a group action on the tube.

An equivariant object is ``(X, alpha)`` with isomorphisms ``alpha_g: X -> F_g X``
satisfying ``alpha_gh = eps[g,h]_X o F_g(alpha_h) o alpha_g``.  Hom spaces are
invariants of ``g.f = beta_g^{-1} o F_g(f) o alpha_g``.  Ext^1 is available three
ways: the G-action on classes of Ext^1(X, Y), its invariants, and a direct
computation of upper-triangular equivariant structures on ``Y + X`` modulo
base changes (``ext_baer``), which does not rely on the invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .actions import ActionError, GroupAction, unit
from .commutator import Periodicity, commutator, commutator_tuple, is_center_linear, kappa
from .functors import compose_functors
from .report import Report
from .serre import CentralElement, SerreStructure
from .tube import (
    ExtCocycle,
    TubeError,
    TubeMorphism,
    TubeObject,
    conjugate,
    direct_sum,
    ext_space,
    hom_basis,
    pushout,
    pullback,
    random_object,
    realize_extension,
)


class EquivariantError(TubeError):
    pass


class SetupError(ActionError):
    """A proposition was requested outside its hypotheses."""


class EquivariantObject:
    """(X, alpha) with ``alpha[g]: X -> F_g X``."""

    __slots__ = ("action", "base", "alpha")

    def __init__(self, action: GroupAction, base: TubeObject, alpha: Union[Sequence[TubeMorphism], Mapping[int, TubeMorphism]], validate: bool = False):
        if isinstance(alpha, Mapping):
            alpha = [alpha[g] for g in action.group.elements]
        alpha = tuple(alpha)
        if len(alpha) != action.group.order:
            raise EquivariantError(f"need {action.group.order} structure maps, got {len(alpha)}")
        for g, a in enumerate(alpha):
            if a.source != base or a.target != action.F(g)(base):
                raise EquivariantError(f"alpha[{g}] must map X to F_{g} X")
        self.action = action
        self.base = base
        self.alpha = alpha
        if validate:
            rep = validate_eq_object(action, self)
            if not rep.ok:
                raise EquivariantError("; ".join(rep.failures))

    def __repr__(self):
        return f"EquivariantObject(dims={self.base.dims}, |G|={len(self.alpha)})"

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantObject)
            and self.action == other.action
            and self.base == other.base
            and self.alpha == other.alpha
        )

    def __hash__(self):
        return hash((self.base, self.alpha))

    @property
    def ctx(self):
        return self.base.ctx


def validate_eq_object(a: GroupAction, Xh: EquivariantObject) -> Report:
    """Invertibility, the equivariance relation for every pair, and alpha_e = u^{-1}."""
    rep = Report("validate_eq_object", details={"dims": list(Xh.base.dims)})
    X = Xh.base
    for g, al in enumerate(Xh.alpha):
        bad = al.non_intertwining_vertex()
        if bad is not None:
            rep.fail(f"alpha[{g}] is not a morphism (arrow {bad})", first_violation=[g])
        elif not al.is_iso():
            rep.fail(f"alpha[{g}] is not invertible", first_violation=[g])
    if not rep.ok:
        return rep
    G = a.group
    for g, h in product(G.elements, repeat=2):
        rhs = a.eps(g, h).at(X) @ a.F(g)(Xh.alpha[h]) @ Xh.alpha[g]
        if rhs != Xh.alpha[G.mul(g, h)]:
            rep.fail(f"equivariance relation fails for (g,h)=({g},{h})", first_violation=[g, h])
            return rep
    if Xh.alpha[a.e] != unit(a).inverse().at(X):
        rep.fail("alpha_e differs from the inverse unit")
    return rep


@dataclass(frozen=True)
class EquivariantMorphism:
    source: EquivariantObject
    target: EquivariantObject
    morphism: TubeMorphism

    def __post_init__(self):
        if not is_equivariant(self.morphism, self.source, self.target):
            raise EquivariantError("morphism does not commute with the equivariant structures")

    def __matmul__(self, other: "EquivariantMorphism") -> "EquivariantMorphism":
        return EquivariantMorphism(other.source, self.target, self.morphism @ other.morphism)


def is_equivariant(f: TubeMorphism, Xh: EquivariantObject, Yh: EquivariantObject) -> bool:
    if f.source != Xh.base or f.target != Yh.base:
        return False
    a = Xh.action
    return all(Yh.alpha[g] @ f == a.F(g)(f) @ Xh.alpha[g] for g in a.group.elements)


# -- constructions ------------------------------------------------------------------


def induction(a: GroupAction, X: TubeObject) -> EquivariantObject:
    """Ind X = sum_k F_k X; alpha_g sends summand k = gh to summand h by eps[g,h]^{-1}."""
    G, n, field = a.group, a.ctx.n, a.ctx.field
    parts = [a.F(k)(X) for k in G.elements]
    Z = direct_sum(*parts)[0]
    offsets = [np.cumsum([0] + [P.dims[i] for P in parts]) for i in range(n)]
    alpha = []
    for g in G.elements:
        FgZ = a.F(g)(Z)
        r = a.F(g).rotation
        comps = []
        for i in range(n):
            m = np.zeros((FgZ.dims[i], Z.dims[i]), dtype=np.int64)
            tgt_off = offsets[(i + r) % n]
            for h in G.elements:
                k = G.mul(g, h)
                d = parts[k].dims[i]
                c = field.inv(a.eps(g, h).coeffs[i])
                m[tgt_off[h]:tgt_off[h] + d, offsets[i][k]:offsets[i][k] + d] = c * np.eye(d, dtype=np.int64)
            comps.append(m)
        alpha.append(TubeMorphism(Z, FgZ, comps, validate=False))
    return EquivariantObject(a, Z, alpha)


def eq_direct_sum(*objs: EquivariantObject) -> EquivariantObject:
    a = objs[0].action
    Z = direct_sum(*[o.base for o in objs])[0]
    n = a.ctx.n
    alpha = []
    for g in a.group.elements:
        FgZ = a.F(g)(Z)
        comps = []
        for i in range(n):
            blocks = [o.alpha[g].comps[i] for o in objs]
            m = np.zeros((FgZ.dims[i], Z.dims[i]), dtype=np.int64)
            r = c = 0
            for b in blocks:
                m[r:r + b.shape[0], c:c + b.shape[1]] = b
                r += b.shape[0]
                c += b.shape[1]
            comps.append(m)
        alpha.append(TubeMorphism(Z, FgZ, comps, validate=False))
    return EquivariantObject(a, Z, alpha)


def transport(Xh: EquivariantObject, changes: Sequence[np.ndarray]) -> tuple[EquivariantObject, EquivariantMorphism]:
    """Move the structure along a vertex-wise base change phi: alpha'_g = F_g(phi) alpha_g phi^{-1}."""
    a = Xh.action
    Y, phi = conjugate(Xh.base, changes)
    inv = phi.inverse()
    alpha = [a.F(g)(phi) @ Xh.alpha[g] @ inv for g in a.group.elements]
    Yh = EquivariantObject(a, Y, alpha)
    return Yh, EquivariantMorphism(Xh, Yh, phi)


def random_equivariant(a: GroupAction, seed, max_length: int = 3, max_dim: Optional[int] = None, summands: int = 1) -> EquivariantObject:
    """Induced objects from random bases, summed and transported by a random base change."""
    rng = np.random.default_rng(seed)
    parts = [
        induction(a, random_object(a.ctx, rng, max_summands=1, max_length=max_length))
        for _ in range(int(rng.integers(1, summands + 1)))
    ]
    Xh = parts[0] if len(parts) == 1 else eq_direct_sum(*parts)
    if max_dim is not None and max(Xh.base.dims) > max_dim:
        return random_equivariant(a, rng, max_length=max_length, max_dim=max_dim, summands=summands)
    changes = [a.ctx.field.random_invertible(rng, d) for d in Xh.base.dims]
    return transport(Xh, changes)[0]


def rho_twist(rho, Xh: EquivariantObject) -> EquivariantObject:
    """(rho (x) alpha)_g = rho(g^{-1}) . alpha_g for a character rho into central units."""
    a = Xh.action
    G, p = a.group, a.ctx.p
    vals = [rho[g] for g in G.elements]
    vals = [v if isinstance(v, CentralElement) else CentralElement.scalar(p, v) for v in vals]
    for g, h in product(G.elements, repeat=2):
        if (vals[g] * vals[h]).coeffs != vals[G.mul(g, h)].coeffs:
            raise EquivariantError(f"rho is not multiplicative at ({g},{h})")
    X = Xh.base
    alpha = [Xh.alpha[g] @ vals[G.inv(g)].at(X) for g in G.elements]
    return EquivariantObject(a, X, alpha)


# -- Hom --------------------------------------------------------------------------


def _left_inverse(field, K: np.ndarray):
    """Rows and matrix with coords = inv @ v[rows] for v in the span of K's columns."""
    if K.shape[1] == 0:
        return [], np.zeros((0, 0), dtype=np.int64)
    _, rows = field.rref(K.T)
    rows = list(rows)
    return rows, field.inverse(K[rows, :])


@lru_cache(maxsize=4096)
def _hom_frame(X: TubeObject, Y: TubeObject):
    basis = hom_basis(X, Y)
    m = sum(a * b for a, b in zip(X.dims, Y.dims))
    K = np.stack([f.vector() for f in basis], axis=1) if basis else np.zeros((m, 0), dtype=np.int64)
    rows, inv = _left_inverse(X.ctx.field, K)
    return basis, K, rows, inv


def g_dot_morphism(Xh: EquivariantObject, Yh: EquivariantObject, g: int, f: TubeMorphism) -> TubeMorphism:
    """g.f = beta_g^{-1} o F_g(f) o alpha_g."""
    a = Xh.action
    return Yh.alpha[g].inverse() @ a.F(g)(f) @ Xh.alpha[g]


def hom_action_matrix(Xh: EquivariantObject, Yh: EquivariantObject, g: int) -> np.ndarray:
    basis, K, rows, inv = _hom_frame(Xh.base, Yh.base)
    p = Xh.ctx.p
    cols = [(inv @ g_dot_morphism(Xh, Yh, g, f).vector()[rows]) % p for f in basis]
    return np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64)


def averaging(mats: Sequence[np.ndarray], order: int, field) -> np.ndarray:
    total = sum(mats) % field.p
    return (field.inv(order) * total) % field.p


def hom_eq(Xh: EquivariantObject, Yh: EquivariantObject) -> list[TubeMorphism]:
    """Basis of Hom_{A^G}: the image of the averaging projector on Hom(X, Y)."""
    a = Xh.action
    a.require_invertible_order()
    field = a.ctx.field
    basis, K, _, _ = _hom_frame(Xh.base, Yh.base)
    if not basis:
        return []
    P = averaging([hom_action_matrix(Xh, Yh, g) for g in a.group.elements], a.group.order, field)
    C = field.column_basis(P)
    out = []
    for j in range(C.shape[1]):
        f = TubeMorphism(Xh.base, Yh.base, _unflatten((K @ C[:, j]) % field.p, Xh.base.dims, Yh.base.dims), validate=False)
        out.append(f)
    return out


def _unflatten(vec, src_dims, tgt_dims):
    comps, pos = [], 0
    for s, t in zip(src_dims, tgt_dims):
        comps.append(np.asarray(vec[pos:pos + s * t]).reshape(t, s))
        pos += s * t
    return comps


class _Blocks:
    """Offsets of named matrix blocks inside a flat row-major vector."""

    def __init__(self):
        self.where: dict = {}
        self.size = 0

    def add(self, key, rows: int, cols: int):
        self.where[key] = (self.size, rows, cols)
        self.size += rows * cols

    def get(self, vec, key) -> np.ndarray:
        o, r, c = self.where[key]
        return np.asarray(vec[o:o + r * c]).reshape(r, c)

    def put(self, vec, key, m):
        o, r, c = self.where[key]
        vec[o:o + r * c] = np.asarray(m).reshape(-1)


def _term(M, eqs: _Blocks, unknowns: _Blocks, eq_key, var_key, A, B):
    """Add the term ``A . var . B`` to equation ``eq``."""
    o1, r1, c1 = eqs.where[eq_key]
    o2, r2, c2 = unknowns.where[var_key]
    if r1 * c1 == 0 or r2 * c2 == 0:
        return
    M[o1:o1 + r1 * c1, o2:o2 + r2 * c2] += np.kron(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64).T)


def hom_eq_direct(Xh: EquivariantObject, Yh: EquivariantObject) -> list[TubeMorphism]:
    """Hom_{A^G} by solving the intertwining and equivariance equations together."""
    a = Xh.action
    X, Y, n, field = Xh.base, Yh.base, a.ctx.n, a.ctx.field
    unknowns, eqs = _Blocks(), _Blocks()
    for i in range(n):
        unknowns.add(("f", i), Y.dims[i], X.dims[i])
    for i in range(n):
        eqs.add(("hom", i), Y.dims[(i + 1) % n], X.dims[i])
    for g in a.group.elements:
        r = a.F(g).rotation
        for i in range(n):
            eqs.add(("eq", g, i), Y.dims[(i + r) % n], X.dims[i])
    M = np.zeros((eqs.size, unknowns.size), dtype=np.int64)
    for i in range(n):
        j = (i + 1) % n
        _term(M, eqs, unknowns, ("hom", i), ("f", j), np.eye(Y.dims[j]), X.maps[i])
        _term(M, eqs, unknowns, ("hom", i), ("f", i), -Y.maps[i], np.eye(X.dims[i]))
    for g in a.group.elements:
        r = a.F(g).rotation
        for i in range(n):
            # beta_{g,i} f_i - f_{i+r} alpha_{g,i}
            _term(M, eqs, unknowns, ("eq", g, i), ("f", i), Yh.alpha[g].comps[i], np.eye(X.dims[i]))
            _term(M, eqs, unknowns, ("eq", g, i), ("f", (i + r) % n), -np.eye(Y.dims[(i + r) % n]), Xh.alpha[g].comps[i])
    Kb = field.kernel_basis(M % field.p)
    return [
        TubeMorphism(X, Y, [unknowns.get(Kb[:, j], ("f", i)) for i in range(n)], validate=False)
        for j in range(Kb.shape[1])
    ]


# -- Ext ----------------------------------------------------------------------------


def g_dot_cocycle(Xh: EquivariantObject, Yh: EquivariantObject, g: int, xi: ExtCocycle) -> ExtCocycle:
    """beta_g^{-1} . F_g(xi) . alpha_g on representatives."""
    a = Xh.action
    return pushout(Yh.alpha[g].inverse(), pullback(a.F(g)(xi), Xh.alpha[g]))


def ext_action_matrix(Xh: EquivariantObject, Yh: EquivariantObject, g: int) -> np.ndarray:
    E = ext_space(Xh.base, Yh.base)
    cols = [E.classify(g_dot_cocycle(Xh, Yh, g, xi)) for xi in E.basis()]
    return np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64)


def ext_g_action(Xh: EquivariantObject, Yh: EquivariantObject, g: int, xi) -> np.ndarray:
    """Class of g.xi; ``xi`` is a cocycle or class coordinates."""
    E = ext_space(Xh.base, Yh.base)
    if isinstance(xi, ExtCocycle):
        return E.classify(g_dot_cocycle(Xh, Yh, g, xi))
    return E.classify(g_dot_cocycle(Xh, Yh, g, E.cocycle(xi)))


def ext_invariants(Xh: EquivariantObject, Yh: EquivariantObject) -> np.ndarray:
    """Columns: class coordinates of a basis of Ext^1(X, Y)^G."""
    a = Xh.action
    a.require_invertible_order()
    field = a.ctx.field
    dim = ext_space(Xh.base, Yh.base).dim
    if dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    P = averaging([ext_action_matrix(Xh, Yh, g) for g in a.group.elements], a.group.order, field)
    return field.column_basis(P)


class EqExtSpace:
    """Ext^1 in A^G as V / W.

    V holds pairs (c, (s_g)) making ``gamma_g = [[beta_g, s_g], [0, alpha_g]]``
    an equivariant structure on the extension ``Y + X`` with cocycle ``c``;
    W is spanned by base changes ``[[1, u], [0, 1]]``.
    """

    def __init__(self, Xh: EquivariantObject, Yh: EquivariantObject):
        a = Xh.action
        if Yh.action != a:
            raise EquivariantError("objects over different actions")
        self.source, self.target, self.action = Xh, Yh, a
        X, Y, n, G = Xh.base, Yh.base, a.ctx.n, a.group
        field = a.ctx.field
        rot = [a.F(g).rotation for g in G.elements]
        unknowns = _Blocks()
        for i in range(n):
            unknowns.add(("c", i), Y.dims[(i + 1) % n], X.dims[i])
        for g in G.elements:
            for i in range(n):
                unknowns.add(("s", g, i), Y.dims[(i + rot[g]) % n], X.dims[i])
        eqs = _Blocks()
        for g in G.elements:
            for i in range(n):
                eqs.add(("m", g, i), Y.dims[(i + rot[g] + 1) % n], X.dims[i])
        for g, h in product(G.elements, repeat=2):
            for i in range(n):
                eqs.add(("r", g, h, i), Y.dims[(i + rot[G.mul(g, h)]) % n], X.dims[i])
        R = np.zeros((eqs.size, unknowns.size), dtype=np.int64)
        for g in G.elements:
            r, zeta = rot[g], a.F(g).scalings
            FgY = a.F(g)(Y)
            al, be = Xh.alpha[g].comps, Yh.alpha[g].comps
            for i in range(n):
                j = (i + 1) % n
                eq = ("m", g, i)
                # (F_g Y)_i s_{g,i} + (F_g c)_i alpha_{g,i} - beta_{g,i+1} c_i - s_{g,i+1} x_i
                _term(R, eqs, unknowns, eq, ("s", g, i), FgY.maps[i], np.eye(X.dims[i]))
                _term(R, eqs, unknowns, eq, ("c", (i + r) % n), zeta[i] * np.eye(FgY.dims[j]), al[i])
                _term(R, eqs, unknowns, eq, ("c", i), -be[j], np.eye(X.dims[i]))
                _term(R, eqs, unknowns, eq, ("s", g, j), -np.eye(FgY.dims[j]), X.maps[i])
        for g, h in product(G.elements, repeat=2):
            gh, r = G.mul(g, h), rot[g]
            eps = a.eps(g, h).coeffs
            al = Xh.alpha[g].comps
            for i in range(n):
                k = (i + r) % n
                eq = ("r", g, h, i)
                # s_{gh,i} - eps_i (beta_{h,i+r} s_{g,i} + s_{h,i+r} alpha_{g,i})
                _term(R, eqs, unknowns, eq, ("s", gh, i), np.eye(Y.dims[(i + rot[gh]) % n]), np.eye(X.dims[i]))
                _term(R, eqs, unknowns, eq, ("s", g, i), -eps[i] * Yh.alpha[h].comps[k], np.eye(X.dims[i]))
                _term(R, eqs, unknowns, eq, ("s", h, k), -eps[i] * np.eye(Y.dims[(k + rot[h]) % n]), al[i])
        R %= field.p
        # W: u -> (delta(u), F_g(u) alpha_g - beta_g u)
        us = _Blocks()
        for i in range(n):
            us.add(("u", i), Y.dims[i], X.dims[i])
        Wm = np.zeros((unknowns.size, us.size), dtype=np.int64)
        for i in range(n):
            j = (i + 1) % n
            _term(Wm, unknowns, us, ("c", i), ("u", j), np.eye(Y.dims[j]), X.maps[i])
            _term(Wm, unknowns, us, ("c", i), ("u", i), -Y.maps[i], np.eye(X.dims[i]))
        for g in G.elements:
            r = rot[g]
            for i in range(n):
                k = (i + r) % n
                _term(Wm, unknowns, us, ("s", g, i), ("u", k), np.eye(Y.dims[k]), Xh.alpha[g].comps[i])
                _term(Wm, unknowns, us, ("s", g, i), ("u", i), -Yh.alpha[g].comps[i], np.eye(X.dims[i]))
        Wm %= field.p
        if ((R @ Wm) % field.p).any():
            raise RuntimeError("base-change directions do not solve the equivariance equations")
        self.equations = R
        self.layout = unknowns
        self.V = field.kernel_basis(R)
        self.W = Wm
        self.reps, self.proj = field.quotient_basis(self.V, Wm)
        E = ext_space(X, Y)
        self.c_size = sum(Y.dims[(i + 1) % n] * X.dims[i] for i in range(n))
        self.forget_matrix = (E.proj @ self.reps[: self.c_size, :]) % field.p

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    def __repr__(self):
        return f"EqExtSpace(dim={self.dim}, V={self.V.shape[1]}, ambient={self.layout.size})"

    def contains(self, vec) -> bool:
        return not ((self.equations @ np.asarray(vec, dtype=np.int64)) % self.action.ctx.p).any()

    def vector(self, coords) -> np.ndarray:
        return (self.reps @ np.asarray(coords, dtype=np.int64)) % self.action.ctx.p

    def classify(self, vec) -> np.ndarray:
        if not self.contains(vec):
            raise EquivariantError("vector is not an equivariant cocycle")
        return (self.proj @ np.asarray(vec, dtype=np.int64)) % self.action.ctx.p

    def underlying(self, vec) -> ExtCocycle:
        return ExtCocycle.from_vector(self.source.base, self.target.base, np.asarray(vec)[: self.c_size])

    def s_part(self, vec, g: int) -> list[np.ndarray]:
        return [self.layout.get(vec, ("s", g, i)) for i in range(self.action.ctx.n)]

    def pack(self, c: ExtCocycle, s: Mapping[int, Sequence[np.ndarray]]) -> np.ndarray:
        vec = np.zeros(self.layout.size, dtype=np.int64)
        vec[: self.c_size] = c.vector()
        for g in self.action.group.elements:
            for i in range(self.action.ctx.n):
                self.layout.put(vec, ("s", g, i), s[g][i])
        return vec % self.action.ctx.p

    def realize(self, vec) -> tuple[EquivariantObject, TubeMorphism, TubeMorphism]:
        """Middle term with gamma_g = [[beta_g, s_g], [0, alpha_g]], plus inclusion and projection."""
        a, n = self.action, self.action.ctx.n
        Y = self.target.base
        E, incl, proj = realize_extension(self.underlying(vec))
        gammas = []
        for g in a.group.elements:
            FgE = a.F(g)(E)
            s = self.s_part(vec, g)
            comps = []
            for i in range(n):
                top = np.concatenate([self.target.alpha[g].comps[i], s[i]], axis=1)
                bottom = np.concatenate(
                    [np.zeros((self.source.alpha[g].comps[i].shape[0], Y.dims[i]), dtype=np.int64), self.source.alpha[g].comps[i]],
                    axis=1,
                )
                comps.append(np.concatenate([top, bottom], axis=0))
            gammas.append(TubeMorphism(E, FgE, comps, validate=False))
        return EquivariantObject(a, E, gammas), incl, proj


def ext_baer(Xh: EquivariantObject, Yh: EquivariantObject) -> EqExtSpace:
    return _ext_baer(Xh, Yh)


@lru_cache(maxsize=512)
def _ext_baer(Xh: EquivariantObject, Yh: EquivariantObject) -> EqExtSpace:
    return EqExtSpace(Xh, Yh)


# -- Serre functor on A^G ------------------------------------------------------------


def _serre(a: GroupAction, serre: Optional[SerreStructure]) -> SerreStructure:
    return SerreStructure.standard(a.ctx) if serre is None else serre


def serre_G(a: GroupAction, Xh: EquivariantObject, serre: Optional[SerreStructure] = None) -> EquivariantObject:
    """(SX, alpha~) with alpha~_g = (sigma_g)_X^{-1} o S(alpha_g)."""
    serre = _serre(a, serre)
    X = Xh.base
    alpha = [commutator(a.F(g), X, serre).inverse() @ serre(Xh.alpha[g]) for g in a.group.elements]
    return EquivariantObject(a, serre(X), alpha)


def serre_G_power(a: GroupAction, Xh: EquivariantObject, d: int, serre: Optional[SerreStructure] = None) -> EquivariantObject:
    out = Xh
    for _ in range(d):
        out = serre_G(a, out, serre)
    return out


def serre_G_extension(space: EqExtSpace, vec, serre: Optional[SerreStructure] = None) -> tuple[EqExtSpace, np.ndarray]:
    """Apply S^G to an equivariant extension; returns the target space and vector."""
    a = space.action
    serre = _serre(a, serre)
    Eh, _, _ = space.realize(vec)
    SEh = serre_G(a, Eh, serre)
    SX, SY = serre_G(a, space.source, serre), serre_G(a, space.target, serre)
    target = ext_baer(SX, SY)
    n = a.ctx.n
    s = {}
    for g in a.group.elements:
        blocks = []
        for i in range(n):
            m = SEh.alpha[g].comps[i]
            ry, cy = SY.alpha[g].comps[i].shape
            if m[ry:, :cy].any() or not np.array_equal(m[:ry, :cy], SY.alpha[g].comps[i]) or not np.array_equal(m[ry:, cy:], SX.alpha[g].comps[i]):
                raise EquivariantError("S^G of an extension is not upper triangular over the shifted ends")
            blocks.append(m[:ry, cy:])
        s[g] = blocks
    out = target.pack(serre(space.underlying(vec)), s)
    return target, out


def trace_G(a: GroupAction, Xh: EquivariantObject, xi, serre: Optional[SerreStructure] = None, coords: bool = False) -> int:
    """Tr of an equivariant class in Ext(Xh, S^G Xh): the base trace of its underlying cocycle.

    ``xi`` is a vector of the ``ext_baer`` presentation, or class coordinates
    when ``coords`` is set.
    """
    serre = _serre(a, serre)
    space = ext_baer(Xh, serre_G(a, Xh, serre))
    xi = np.asarray(xi, dtype=np.int64)
    if coords:
        xi = space.vector(xi)
    if xi.shape[0] != space.layout.size:
        raise EquivariantError("class does not live in Ext(X, S^G X)")
    return serre.trace(Xh.base, space.underlying(xi))


def psi_pairing(a: GroupAction, Xh: EquivariantObject, Yh: EquivariantObject, serre: Optional[SerreStructure] = None) -> np.ndarray:
    """Rows: hom_eq(Yh, S^G Xh); columns: ext_invariants(Xh, Yh); entry Tr_X(f . xi)."""
    serre = _serre(a, serre)
    homs = hom_eq(Yh, serre_G(a, Xh, serre))
    inv = ext_invariants(Xh, Yh)
    E = ext_space(Xh.base, Yh.base)
    classes = [E.cocycle(inv[:, j]) for j in range(inv.shape[1])]
    M = np.zeros((len(homs), len(classes)), dtype=np.int64)
    for r, f in enumerate(homs):
        for c, xi in enumerate(classes):
            M[r, c] = serre.trace(Xh.base, pushout(f, xi))
    return M


def plain_shift(a: GroupAction, Xh: EquivariantObject, serre: Optional[SerreStructure] = None) -> EquivariantObject:
    """(SX, S(alpha)), defined when every F_g commutes with S on the nose."""
    serre = _serre(a, serre)
    S = serre.functor
    for g in a.group.elements:
        if compose_functors(a.F(g), S) != compose_functors(S, a.F(g)):
            raise SetupError(f"F_{g} does not commute with S strictly")
    return EquivariantObject(a, serre(Xh.base), [serre(al) for al in Xh.alpha])


# -- propositions ------------------------------------------------------------------


def check_setup_a(a: GroupAction, g: int, serre: Optional[SerreStructure] = None, probes=None) -> Report:
    """g central, F_g = S and eps[g,h]^{-1} o eps[h,g] = sigma_h for all h."""
    serre = _serre(a, serre)
    rep = Report("setup_a", details={"g": g})
    rep.require(a.group.is_central(g), f"{g} is not central")
    rep.require(a.F(g) == serre.functor, f"F_{g} is not the Serre functor")
    if not rep.ok:
        return rep
    for h in a.group.elements:
        lhs = a.eps(h, g).then(a.eps(g, h).inverse())
        sigma = commutator_tuple(a.F(h), serre, probes)
        if lhs.source != sigma.source or lhs.target != sigma.target or lhs.coeffs != sigma.coeffs:
            rep.fail(f"eps[{g},{h}]^-1 o eps[{h},{g}] differs from sigma_{h}", first_violation=[h])
    return rep


def find_setup_a_element(a: GroupAction, serre: Optional[SerreStructure] = None) -> Optional[int]:
    serre = _serre(a, serre)
    for g in a.group.elements:
        if a.F(g) == serre.functor and a.group.is_central(g) and check_setup_a(a, g, serre).ok:
            return g
    return None


def prop_a_delta(a: GroupAction, Xh: EquivariantObject, g: Optional[int] = None, serre: Optional[SerreStructure] = None) -> EquivariantMorphism:
    """delta = alpha_g: Xh -> S^G Xh for the designated element of the setup."""
    serre = _serre(a, serre)
    if g is None:
        g = find_setup_a_element(a, serre)
        if g is None:
            raise SetupError("no group element satisfies the trivial-Serre setup")
    else:
        rep = check_setup_a(a, g, serre)
        if not rep.ok:
            raise SetupError("; ".join(rep.failures))
    delta = Xh.alpha[g]
    if not delta.is_iso():
        raise EquivariantError("alpha_g is not an isomorphism")
    return EquivariantMorphism(Xh, serre_G(a, Xh, serre), delta)


def check_prop_a(a: GroupAction, Xh: EquivariantObject, morphisms: Sequence[EquivariantMorphism] = (), g: Optional[int] = None, serre=None) -> Report:
    rep = Report("prop_a", details={"dims": list(Xh.base.dims)})
    try:
        delta = prop_a_delta(a, Xh, g, serre)
    except (SetupError, EquivariantError) as exc:
        return rep.fail(str(exc))
    rep.require(delta.morphism.is_iso(), "delta is not an isomorphism")
    for k, f in enumerate(morphisms):
        dY = prop_a_delta(a, f.target, g, serre)
        S = _serre(a, serre)
        rep.require(S(f.morphism) @ delta.morphism == dY.morphism @ f.morphism, f"naturality square {k} does not commute")
    rep.details["naturality_checked"] = len(morphisms)
    return rep


def check_setup_b(a: GroupAction, probes=None) -> Report:
    rep = Report("setup_b")
    for g in a.group.elements:
        rep.require(is_center_linear(a.F(g), probes), f"F_{g} is not center-linear", first_violation=[g])
    return rep


def kappa_character(a: GroupAction, eta: Optional[Periodicity] = None, probes=None) -> list[CentralElement]:
    cache: dict = {}
    out = []
    for g in a.group.elements:
        F = a.F(g)
        if F not in cache:
            cache[F] = kappa(F, eta, probes)
        out.append(cache[F])
    return out


def check_prop_b(a: GroupAction, Xh: EquivariantObject, morphisms: Sequence[EquivariantMorphism] = (), eta: Optional[Periodicity] = None, probes=None) -> Report:
    """eta_X is an equivariant iso (S^G)^d Xh -> kappa (x) Xh, natural in Xh."""
    setup = check_setup_b(a, probes)
    if not setup.ok:
        raise SetupError("; ".join(setup.failures))
    eta = Periodicity(SerreStructure.standard(a.ctx)) if eta is None else eta
    serre = eta.serre
    kap = kappa_character(a, eta, probes)
    rep = Report("prop_b", details={"d": eta.d, "kappa": [list(k.coeffs) for k in kap], "dims": list(Xh.base.dims)})
    top = serre_G_power(a, Xh, eta.d, serre)
    target = rho_twist(kap, Xh)
    e = eta.at(Xh.base)
    rep.require(e.source == top.base and e.target == target.base, "eta_X has the wrong endpoints")
    rep.require(e.is_iso(), "eta_X is not an isomorphism")
    rep.require(is_equivariant(e, top, target), "eta_X is not equivariant")
    Sd = serre.power(eta.d)
    for k, f in enumerate(morphisms):
        rep.require(eta.at(f.target.base) @ Sd(f.morphism) == f.morphism @ e, f"naturality square {k} does not commute")
    rep.details["naturality_checked"] = len(morphisms)
    return rep


def check_setup_c(a: GroupAction, serre: Optional[SerreStructure] = None, probes=None) -> Report:
    serre = _serre(a, serre)
    S = serre.functor
    rep = Report("setup_c")
    for g in a.group.elements:
        F = a.F(g)
        rep.require(compose_functors(F, S) == compose_functors(S, F), f"F_{g} S != S F_{g}")
        rep.require(is_center_linear(F, probes), f"F_{g} is not center-linear")
    for (g, h), eps in sorted(a.epsilon.items()):
        rep.require(eps.whisker_left(S).coeffs == eps.whisker_right(S).coeffs, f"S eps[{g},{h}] != eps[{g},{h}] S")
    return rep


def gamma_hom(a: GroupAction, serre: Optional[SerreStructure] = None, probes=None) -> list[int]:
    """gamma(g) with sigma_g = gamma(g) Id, checked to be a character."""
    serre = _serre(a, serre)
    setup = check_setup_c(a, serre, probes)
    if not setup.ok:
        raise SetupError("; ".join(setup.failures))
    G, p = a.group, a.ctx.p
    gamma = []
    for g in G.elements:
        c = commutator_tuple(a.F(g), serre, probes).coeffs
        if len(set(c)) != 1:
            raise SetupError(f"sigma_{g} = {list(c)} is not a scalar multiple of the identity")
        gamma.append(c[0])
    for g, h in product(G.elements, repeat=2):
        if gamma[G.mul(g, h)] != gamma[g] * gamma[h] % p:
            raise SetupError(f"gamma is not multiplicative at ({g},{h})")
    return gamma


def check_prop_c(a: GroupAction, Xh: EquivariantObject, morphisms: Sequence[EquivariantMorphism] = (), serre=None, probes=None) -> Report:
    """S^G = (gamma (x) -) o S literally, on objects and morphisms."""
    serre = _serre(a, serre)
    gamma = gamma_hom(a, serre, probes)
    rep = Report("prop_c", details={"gamma": gamma, "dims": list(Xh.base.dims)})
    lhs = serre_G(a, Xh, serre)
    rhs = rho_twist(gamma, plain_shift(a, Xh, serre))
    rep.require(lhs.base == rhs.base, "bases differ")
    for g in a.group.elements:
        rep.require(lhs.alpha[g] == rhs.alpha[g], f"structure maps differ at g={g}", first_violation=[g])
    for k, f in enumerate(morphisms):
        Sf = serre(f.morphism)
        src_l, tgt_l = serre_G(a, f.source, serre), serre_G(a, f.target, serre)
        src_r = rho_twist(gamma, plain_shift(a, f.source, serre))
        tgt_r = rho_twist(gamma, plain_shift(a, f.target, serre))
        rep.require(is_equivariant(Sf, src_l, tgt_l) and is_equivariant(Sf, src_r, tgt_r), f"morphism {k} is not carried alike")
    rep.details["morphisms_checked"] = len(morphisms)
    return rep


def random_eq_morphism(Xh: EquivariantObject, Yh: EquivariantObject, seed) -> EquivariantMorphism:
    """Seeded random combination of a basis of Hom_{A^G}(Xh, Yh)."""
    rng = np.random.default_rng(seed)
    basis = hom_eq(Xh, Yh)
    p = Xh.ctx.p
    f = TubeMorphism(Xh.base, Yh.base, [np.zeros((b, a_), dtype=np.int64) for a_, b in zip(Xh.base.dims, Yh.base.dims)], validate=False)
    for h in basis:
        f = f + h.scale(int(rng.integers(0, p)))
    return EquivariantMorphism(Xh, Yh, f)
