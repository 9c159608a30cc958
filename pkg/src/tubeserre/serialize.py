"""JSON literals for objects, morphisms, functors, actions and equivariant objects.

Objects: ``{"n", "p", "dims", "maps"}`` with each map a row-major flat list
(nested rows are accepted on load).  Morphisms: ``{"source", "target",
"comps"}``.  Functors: ``{"rotation", "scalings"}``.  Scalar transformations:
``{"tuple": [...]}``.  Actions: ``{"group": {"cyclic": m} | {"table": ...},
"functors": {g: functor}, "epsilon": {"strict": true} | {"g,h": [...]}}``.
Equivariant objects: ``{"base": object, "alpha": {g: comps}}``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .actions import FiniteGroup, GroupAction, validate_action
from .equivariant import EquivariantObject, validate_eq_object
from .functors import AdmissibleFunctor, ScalarNatTrans
from .tube import TubeContext, TubeError, TubeMorphism, TubeObject


class LoadError(ValueError):
    """Malformed or invalid input; the message names the offending position."""


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise LoadError(f"{path}: {exc.strerror}") from None
    return parse_json(text, str(path))


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise LoadError(f"{where}: expected an object")
    if key not in d:
        raise LoadError(f"{where}: missing key {key!r}")
    return d[key]


def _ints(x, where: str) -> list[int]:
    arr = np.asarray(x)
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise LoadError(f"{where}: expected integers")
    return arr.astype(np.int64).reshape(-1).tolist()


# -- objects and morphisms -----------------------------------------------------------


def object_to_json(X: TubeObject) -> dict:
    return {
        "n": X.ctx.n,
        "p": X.ctx.p,
        "dims": list(X.dims),
        "maps": [m.reshape(-1).tolist() for m in X.maps],
    }


def object_from_json(d: dict, ctx: Optional[TubeContext] = None, where: str = "object") -> TubeObject:
    n, p = _need(d, "n", where), _need(d, "p", where)
    try:
        here = TubeContext(int(n), int(p))
    except (TubeError, ValueError) as exc:
        raise LoadError(f"{where}: {exc}") from None
    if ctx is not None and here != ctx:
        raise LoadError(f"{where}: context {here} differs from {ctx}")
    dims = _ints(_need(d, "dims", where), f"{where}.dims")
    maps = _need(d, "maps", where)
    if len(dims) != here.n or not isinstance(maps, list) or len(maps) != here.n:
        raise LoadError(f"{where}: need {here.n} dims and {here.n} maps")
    mats = []
    for i, m in enumerate(maps):
        r, c = dims[(i + 1) % here.n], dims[i]
        flat = _ints(m, f"{where}.maps[{i}]")
        if len(flat) != r * c:
            raise LoadError(f"{where}.maps[{i}]: expected {r}x{c} = {r * c} entries, got {len(flat)}")
        mats.append(np.array(flat, dtype=np.int64).reshape(r, c))
    try:
        return TubeObject(here, dims, mats)
    except TubeError as exc:
        raise LoadError(f"{where}: {exc}") from None


def _comps_from_json(comps, src: TubeObject, tgt: TubeObject, where: str, shift: int = 0) -> list[np.ndarray]:
    n = src.ctx.n
    if not isinstance(comps, list) or len(comps) != n:
        raise LoadError(f"{where}: need {n} components")
    out = []
    for i, m in enumerate(comps):
        r, c = tgt.dims[(i + shift) % n], src.dims[i]
        flat = _ints(m, f"{where}[{i}]")
        if len(flat) != r * c:
            raise LoadError(f"{where}[{i}]: expected {r}x{c} = {r * c} entries, got {len(flat)}")
        out.append(np.array(flat, dtype=np.int64).reshape(r, c))
    return out


def morphism_to_json(f: TubeMorphism) -> dict:
    return {
        "source": object_to_json(f.source),
        "target": object_to_json(f.target),
        "comps": [c.reshape(-1).tolist() for c in f.comps],
    }


def morphism_from_json(d: dict, ctx: Optional[TubeContext] = None, where: str = "morphism") -> TubeMorphism:
    X = object_from_json(_need(d, "source", where), ctx, f"{where}.source")
    Y = object_from_json(_need(d, "target", where), X.ctx, f"{where}.target")
    comps = _comps_from_json(_need(d, "comps", where), X, Y, f"{where}.comps")
    try:
        return TubeMorphism(X, Y, comps)
    except TubeError as exc:
        raise LoadError(f"{where}: {exc}") from None


# -- functors and actions ----------------------------------------------------------


def functor_to_json(F: AdmissibleFunctor) -> dict:
    return {"rotation": F.rotation, "scalings": list(F.scalings)}


def functor_from_json(d: dict, ctx: TubeContext, where: str = "functor") -> AdmissibleFunctor:
    r = _need(d, "rotation", where)
    z = _ints(_need(d, "scalings", where), f"{where}.scalings")
    try:
        return AdmissibleFunctor(ctx, int(r), tuple(z))
    except TubeError as exc:
        raise LoadError(f"{where}: {exc}") from None


def nat_to_json(theta: ScalarNatTrans) -> dict:
    return {"tuple": list(theta.coeffs)}


def nat_from_json(d: dict, source: AdmissibleFunctor, target: AdmissibleFunctor, where: str = "transformation") -> ScalarNatTrans:
    c = _ints(_need(d, "tuple", where), f"{where}.tuple")
    try:
        return ScalarNatTrans(source, target, tuple(c))
    except TubeError as exc:
        raise LoadError(f"{where}: {exc}") from None


_PAIR = re.compile(r"^\(?\s*(\d+)\s*,\s*(\d+)\s*\)?$")


def action_to_json(a: GroupAction) -> dict:
    G = a.group
    if G == FiniteGroup.cyclic(G.order):
        group = {"cyclic": G.order}
    else:
        group = {"table": G.table.tolist()}
    out = {
        "n": a.ctx.n,
        "p": a.ctx.p,
        "group": group,
        "functors": {str(g): functor_to_json(a.F(g)) for g in G.elements},
    }
    if a.is_strict():
        out["epsilon"] = {"strict": True}
    else:
        out["epsilon"] = {f"{g},{h}": list(e.coeffs) for (g, h), e in sorted(a.epsilon.items())}
    return out


def action_from_json(d: dict, ctx: Optional[TubeContext] = None, where: str = "action", validate: bool = True) -> GroupAction:
    if ctx is None or ("n" in d and "p" in d):
        try:
            here = TubeContext(int(_need(d, "n", where)), int(_need(d, "p", where)))
        except (TubeError, ValueError) as exc:
            raise LoadError(f"{where}: {exc}") from None
        if ctx is not None and here != ctx:
            raise LoadError(f"{where}: context {here} differs from {ctx}")
        ctx = here
    g = _need(d, "group", where)
    try:
        if isinstance(g, dict) and "cyclic" in g:
            G = FiniteGroup.cyclic(int(g["cyclic"]))
        elif isinstance(g, dict) and "table" in g:
            G = FiniteGroup(g["table"])
        else:
            raise LoadError(f"{where}.group: expected {{'cyclic': m}} or {{'table': [...]}}")
    except TubeError as exc:
        raise LoadError(f"{where}.group: {exc}") from None
    fs = _need(d, "functors", where)
    if not isinstance(fs, dict):
        raise LoadError(f"{where}.functors: expected an object keyed by group element")
    functors = []
    for h in G.elements:
        if str(h) not in fs:
            raise LoadError(f"{where}.functors: missing element {h}")
        functors.append(functor_from_json(fs[str(h)], ctx, f"{where}.functors[{h}]"))
    eps_data = _need(d, "epsilon", where)
    if not isinstance(eps_data, dict):
        raise LoadError(f"{where}.epsilon: expected an object")
    eps = {}
    if not eps_data.get("strict", False):
        for key, val in eps_data.items():
            if key == "strict":
                continue
            m = _PAIR.match(key)
            if not m:
                raise LoadError(f"{where}.epsilon: bad key {key!r}, expected 'g,h'")
            pair = (int(m.group(1)), int(m.group(2)))
            if pair[0] >= G.order or pair[1] >= G.order:
                raise LoadError(f"{where}.epsilon[{key}]: element out of range")
            c = _ints(val["tuple"] if isinstance(val, dict) else val, f"{where}.epsilon[{key}]")
            if len(c) != ctx.n:
                raise LoadError(f"{where}.epsilon[{key}]: expected {ctx.n} scalars")
            eps[pair] = tuple(c)
    try:
        a = GroupAction(G, functors, eps, name=d.get("name", "file"))
    except TubeError as exc:
        raise LoadError(f"{where}: {exc}") from None
    if validate:
        rep = validate_action(a)
        if not rep.ok:
            bad = rep.details.get("first_violation")
            raise LoadError(f"{where}.epsilon: {rep.failures[0]}" + (f" (at {tuple(bad)})" if bad else ""))
    return a


# -- equivariant objects ----------------------------------------------------------


def eq_object_to_json(Xh: EquivariantObject) -> dict:
    return {
        "base": object_to_json(Xh.base),
        "alpha": {str(g): [c.reshape(-1).tolist() for c in al.comps] for g, al in enumerate(Xh.alpha)},
    }


def eq_object_from_json(d: dict, a: GroupAction, where: str = "equivariant", validate: bool = True) -> EquivariantObject:
    X = object_from_json(_need(d, "base", where), a.ctx, f"{where}.base")
    al = _need(d, "alpha", where)
    if not isinstance(al, dict):
        raise LoadError(f"{where}.alpha: expected an object keyed by group element")
    alpha = []
    for g in a.group.elements:
        if str(g) not in al:
            raise LoadError(f"{where}.alpha: missing element {g}")
        FgX = a.F(g)(X)
        comps = _comps_from_json(al[str(g)], X, FgX, f"{where}.alpha[{g}]")
        alpha.append(TubeMorphism(X, FgX, comps, validate=False))
    Xh = EquivariantObject(a, X, alpha)
    if validate:
        rep = validate_eq_object(a, Xh)
        if not rep.ok:
            raise LoadError(f"{where}: {rep.failures[0]}")
    return Xh
