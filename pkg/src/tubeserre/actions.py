"""Finite group actions on the tube by admissible functors.

An action is a family ``F_g`` of admissible functors with scalar-tuple
isomorphisms ``eps[g, h]: F_g F_h -> F_gh``.  The 2-cocycle condition

    eps[gh, l] o eps[g, h] F_l = eps[g, hl] o F_g eps[h, l]

becomes, per vertex ``i``,

    eps[gh, l]_i * eps[g, h]_i = eps[g, hl]_i * eps[h, l]_{i + r_g}.
"""

from __future__ import annotations

from itertools import product
from math import gcd
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .functors import AdmissibleFunctor, ScalarNatTrans, compose_functors
from .report import Report
from .tube import TubeContext, TubeError

MAX_GROUP_ORDER = 12


class ActionError(TubeError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table on ``0..m-1``."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = ""):
        t = np.array(table, dtype=np.int64)
        m = t.shape[0]
        if t.shape != (m, m) or m == 0:
            raise ActionError("multiplication table must be a non-empty square")
        if m > MAX_GROUP_ORDER:
            raise ActionError(f"group order {m} exceeds {MAX_GROUP_ORDER}")
        if t.min() < 0 or t.max() >= m:
            raise ActionError("table entries out of range")
        self.table = t
        self.order = m
        self.name = name or f"G{m}"
        ids = [e for e in range(m) if all(t[e, g] == g and t[g, e] == g for g in range(m))]
        if not ids:
            raise ActionError("table has no identity element")
        self.identity = ids[0]
        inverses = []
        for g in range(m):
            inv = [h for h in range(m) if t[g, h] == self.identity and t[h, g] == self.identity]
            if not inv:
                raise ActionError(f"element {g} has no inverse")
            inverses.append(inv[0])
        self.inverses = tuple(inverses)
        for g, h, l in product(range(m), repeat=3):
            if t[t[g, h], l] != t[g, t[h, l]]:
                raise ActionError(f"table is not associative at ({g},{h},{l})")

    @classmethod
    def cyclic(cls, m: int) -> "FiniteGroup":
        return cls([[(i + j) % m for j in range(m)] for i in range(m)], name=f"C{m}")

    def __repr__(self):
        return f"FiniteGroup({self.name})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def power(self, g: int, d: int) -> int:
        out = self.identity
        for _ in range(d):
            out = self.mul(out, g)
        return out

    def element_order(self, g: int) -> int:
        d, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            d += 1
        return d

    def is_central(self, g: int) -> bool:
        return all(self.mul(g, h) == self.mul(h, g) for h in self.elements)


Scalars = Union[Sequence[int], ScalarNatTrans]


class GroupAction:
    """Data {F_g, eps[g, h]}; call ``validate_action`` to check the axioms."""

    def __init__(
        self,
        group: FiniteGroup,
        functors: Sequence[AdmissibleFunctor],
        epsilon: Optional[Mapping[tuple[int, int], Scalars]] = None,
        name: str = "",
    ):
        if len(functors) != group.order:
            raise ActionError(f"need {group.order} functors, got {len(functors)}")
        self.group = group
        self.functors = tuple(functors)
        self.ctx: TubeContext = functors[0].ctx
        self.name = name or "action"
        eps = {}
        for g, h in product(group.elements, repeat=2):
            src = compose_functors(self.functors[g], self.functors[h])
            tgt = self.functors[group.mul(g, h)]
            if src.rotation != tgt.rotation:
                raise ActionError(f"F_{g} F_{h} and F_{group.mul(g, h)} have different rotations")
            value = None if epsilon is None else epsilon.get((g, h))
            if value is None:
                value = (1,) * self.ctx.n
            if isinstance(value, ScalarNatTrans):
                value = value.coeffs
            eps[g, h] = ScalarNatTrans(src, tgt, tuple(value))
        self.epsilon = eps

    def __repr__(self):
        return f"GroupAction({self.name}, {self.group.name} on {self.ctx})"

    def _key(self):
        return (self.group, self.functors, tuple(sorted((k, v.coeffs) for k, v in self.epsilon.items())))

    def __eq__(self, other):
        return isinstance(other, GroupAction) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def F(self, g: int) -> AdmissibleFunctor:
        return self.functors[g]

    def eps(self, g: int, h: int) -> ScalarNatTrans:
        return self.epsilon[g, h]

    @property
    def e(self) -> int:
        return self.group.identity

    def is_strict(self) -> bool:
        return all(
            self.eps(g, h).coeffs == (1,) * self.ctx.n and self.eps(g, h).source == self.eps(g, h).target
            for g, h in self.epsilon
        )

    def order_invertible(self) -> bool:
        return gcd(self.group.order, self.ctx.p) == 1

    def require_invertible_order(self):
        if not self.order_invertible():
            raise ActionError(f"|G| = {self.group.order} is not invertible in GF({self.ctx.p})")

    def with_epsilon(self, epsilon: Mapping[tuple[int, int], Scalars], name: str = "") -> "GroupAction":
        merged = {k: v.coeffs for k, v in self.epsilon.items()}
        for k, v in epsilon.items():
            merged[k] = v.coeffs if isinstance(v, ScalarNatTrans) else tuple(v)
        return GroupAction(self.group, self.functors, merged, name=name or self.name)


def unit(a: GroupAction) -> ScalarNatTrans:
    """u: F_e -> Id with eps[e, e] = F_e u."""
    e, n = a.e, a.ctx.n
    Fe = a.F(e)
    c = a.eps(e, e).coeffs
    # (F_e u)_i = u_{i + r_e}
    u = ScalarNatTrans(Fe, AdmissibleFunctor.identity(a.ctx), tuple(c[(i - Fe.rotation) % n] for i in range(n)))
    return u


def cocycle_violation(a: GroupAction, g: int, h: int, l: int) -> bool:
    G, p, n = a.group, a.ctx.p, a.ctx.n
    gh, hl = G.mul(g, h), G.mul(h, l)
    r = a.F(g).rotation
    e1, e2, e3, e4 = a.eps(gh, l).coeffs, a.eps(g, h).coeffs, a.eps(g, hl).coeffs, a.eps(h, l).coeffs
    return any(e1[i] * e2[i] % p != e3[i] * e4[(i + r) % n] % p for i in range(n))


def validate_action(a: GroupAction) -> Report:
    """Check each eps is a natural isomorphism, the 2-cocycle condition and the unit identities."""
    rep = Report("validate_action", details={"group": a.group.name, "order": a.group.order})
    for (g, h), eps in sorted(a.epsilon.items()):
        if not eps.is_natural():
            rep.fail(f"eps[{g},{h}] is not natural", first_violation=[g, h])
        elif not eps.is_iso():
            rep.fail(f"eps[{g},{h}] is not invertible", first_violation=[g, h])
    if not rep.ok:
        return rep
    for g, h, l in product(a.group.elements, repeat=3):
        if cocycle_violation(a, g, h, l):
            rep.fail(f"2-cocycle condition fails at (g,h,l)=({g},{h},{l})", first_violation=[g, h, l])
            return rep
    u = unit(a)
    if not u.is_iso():
        rep.fail("unit is not a natural isomorphism")
        return rep
    e = a.e
    for g in a.group.elements:
        if a.eps(g, e).coeffs != u.whisker_left(a.F(g)).coeffs:
            rep.fail(f"eps[{g},e] != F_{g} u", first_violation=[g, e])
        if a.eps(e, g).coeffs != u.whisker_right(a.F(g)).coeffs:
            rep.fail(f"eps[e,{g}] != u F_{g}", first_violation=[e, g])
    return rep


def epsilon_power(a: GroupAction, g: int, d: int, form: str = "left") -> ScalarNatTrans:
    """eps_g^d: F_g^d -> F_{g^d}.

    ``form="left"`` uses eps_g^d = eps[g^{d-1}, g] o eps_g^{d-1} F_g;
    ``form="right"`` uses eps_g^d = eps[g, g^{d-1}] o F_g eps_g^{d-1}.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    Fg = a.F(g)
    out = ScalarNatTrans.identity(Fg)
    for k in range(2, d + 1):
        gk1 = a.group.power(g, k - 1)
        if form == "left":
            out = out.whisker_right(Fg).then(a.eps(gk1, g))
        elif form == "right":
            out = out.whisker_left(Fg).then(a.eps(g, gk1))
        else:
            raise ValueError(f"unknown form {form!r}")
    return out


def compatible_periodicity(a: GroupAction, g: int, d: Optional[int] = None) -> ScalarNatTrans:
    """theta = u o eps_g^d: F_g^d -> Id, checked to satisfy theta F_g = F_g theta."""
    d = a.group.element_order(g) if d is None else d
    if a.group.power(g, d) != a.e:
        raise ActionError(f"g^{d} != e for g = {g}")
    theta = epsilon_power(a, g, d).then(unit(a))
    if not is_compatible(theta, a.F(g)):
        raise ActionError(f"periodicity isomorphism of F_{g} is not compatible; the action is broken")
    return theta


def is_compatible(theta: ScalarNatTrans, F: AdmissibleFunctor) -> bool:
    """theta F = F theta for theta: F^d -> Id."""
    return theta.whisker_right(F).coeffs == theta.whisker_left(F).coeffs


def induced_cyclic(F: AdmissibleFunctor, theta: Optional[ScalarNatTrans], d: int, name: str = "") -> GroupAction:
    """The C_d action with F_{g^i} = F^i and eps given by theta on overflow."""
    ctx = F.ctx
    Id = AdmissibleFunctor.identity(ctx)
    Fd = F.power(d)
    if theta is None:
        theta = ScalarNatTrans(Fd, Id, (1,) * ctx.n)
    theta = theta.retarget(Fd, Id)
    if not theta.is_iso():
        raise ActionError("theta is not a natural isomorphism F^d -> Id")
    if not is_compatible(theta, F):
        raise ActionError("theta is not compatible: theta F != F theta")
    G = FiniteGroup.cyclic(d)
    functors = [F.power(i) for i in range(d)]
    eps = {}
    for i, j in product(range(d), repeat=2):
        if i + j >= d:
            eps[i, j] = theta.whisker_left(F.power(i + j - d)).coeffs
    return GroupAction(G, functors, eps, name=name or f"induced({F}, d={d})")


def is_group_cocycle(G: FiniteGroup, c: Callable[[int, int], int], p: int) -> Optional[tuple[int, int, int]]:
    """First triple violating c(gh,l)c(g,h) = c(g,hl)c(h,l), or ``None``."""
    for g, h, l in product(G.elements, repeat=3):
        if c(G.mul(g, h), l) * c(g, h) % p != c(g, G.mul(h, l)) * c(h, l) % p:
            return (g, h, l)
    return None


def twist_action(a: GroupAction, c: Union[Mapping[tuple[int, int], int], Callable[[int, int], int]], name: str = "") -> GroupAction:
    """eps'[g, h] = c(g, h) eps[g, h] for a GF(p)^x-valued group 2-cocycle c."""
    p = a.ctx.p
    if not callable(c):
        table = dict(c)
        c = lambda g, h: table.get((g, h), 1)  # noqa: E731
    for g, h in product(a.group.elements, repeat=2):
        if c(g, h) % p == 0:
            raise ActionError(f"cocycle value at ({g},{h}) is zero")
    bad = is_group_cocycle(a.group, c, p)
    if bad is not None:
        raise ActionError(f"not a group 2-cocycle: fails at {bad}")
    eps = {k: v.scale(c(*k)) for k, v in a.epsilon.items()}
    return GroupAction(a.group, a.functors, eps, name=name or f"{a.name}~twisted")


def carry_cocycle(m: int, value: int) -> Callable[[int, int], int]:
    """On C_m: value when i + j overflows m, else 1."""
    return lambda i, j: value if i + j >= m else 1


def coboundary_cocycle(G: FiniteGroup, b: Sequence[int], p: int) -> Callable[[int, int], int]:
    """c(g, h) = b(g) b(h) b(gh)^{-1}."""
    return lambda g, h: b[g] * b[h] * pow(int(b[G.mul(g, h)]), p - 2, p) % p


# -- builtin fixtures -------------------------------------------------------------


def rotation_action(ctx: TubeContext, theta_scalar: int = 1) -> GroupAction:
    """C_n acting through powers of the Serre shift (induced by S, theta = c Id)."""
    S = AdmissibleFunctor.serre(ctx)
    theta = ScalarNatTrans(S.power(ctx.n), AdmissibleFunctor.identity(ctx), (theta_scalar,) * ctx.n)
    return induced_cyclic(S, theta, ctx.n, name=f"rotation({ctx.n})" if theta_scalar == 1 else f"rotation({ctx.n},theta={theta_scalar})")


def multiplicative_order(z: int, p: int) -> int:
    z %= p
    if z == 0:
        raise ActionError("zero has no multiplicative order")
    d, x = 1, z
    while x != 1:
        x = x * z % p
        d += 1
    return d


def scaling_action(ctx: TubeContext, zeta: int) -> GroupAction:
    """C_d acting by powers of the uniform arrow scaling by zeta, d = ord(zeta)."""
    d = multiplicative_order(zeta, ctx.p)
    F = AdmissibleFunctor.scaling(ctx, zeta)
    return induced_cyclic(F, None, d, name=f"scaling({zeta % ctx.p})")


def twisted_action(ctx: TubeContext, value: int) -> GroupAction:
    """The rotation action twisted by the carry cocycle with the given value."""
    base = rotation_action(ctx)
    return twist_action(base, carry_cocycle(ctx.n, value), name=f"twisted({value % ctx.p})")
