import json

import pytest

from tubeserre.actions import rotation_action, scaling_action, twisted_action
from tubeserre.equivariant import random_equivariant
from tubeserre.functors import AdmissibleFunctor, ScalarNatTrans
from tubeserre.serialize import (
    LoadError,
    action_from_json,
    action_to_json,
    eq_object_from_json,
    eq_object_to_json,
    functor_from_json,
    functor_to_json,
    morphism_from_json,
    morphism_to_json,
    nat_from_json,
    nat_to_json,
    object_from_json,
    object_to_json,
    parse_json,
    read_json,
)
from tubeserre.tube import random_morphism, random_object


def _through_text(d):
    return json.loads(json.dumps(d))


def test_object_and_morphism_roundtrip(T25):
    for s in range(10):
        X, Y = random_object(T25, s), random_object(T25, s + 50)
        assert object_from_json(_through_text(object_to_json(X))) == X
        f = random_morphism(X, Y, s)
        assert morphism_from_json(_through_text(morphism_to_json(f))) == f


def test_nested_rows_accepted(T25):
    d = {"n": 2, "p": 5, "dims": [1, 1], "maps": [[[1]], [[0]]]}
    assert object_from_json(d).dims == (1, 1)


def test_functor_and_transformation_roundtrip(T25):
    F = AdmissibleFunctor(T25, 1, (2, 3))
    assert functor_from_json(_through_text(functor_to_json(F)), T25) == F
    theta = ScalarNatTrans(F, F, (4, 4))
    assert nat_from_json(nat_to_json(theta), F, F) == theta


def test_action_roundtrip(T25):
    for a in (rotation_action(T25), scaling_action(T25, 2), twisted_action(T25, 3)):
        b = action_from_json(_through_text(action_to_json(a)))
        assert b == a


def test_eq_object_roundtrip(T25):
    a = twisted_action(T25, 2)
    for s in range(5):
        Xh = random_equivariant(a, s, max_dim=3)
        assert eq_object_from_json(_through_text(eq_object_to_json(Xh)), a) == Xh


def test_non_nilpotent_names_vertex():
    d = {"n": 2, "p": 5, "dims": [1, 1], "maps": [[1], [1]]}
    with pytest.raises(LoadError, match="vertex"):
        object_from_json(d)


def test_wrong_entry_count():
    d = {"n": 2, "p": 5, "dims": [1, 1], "maps": [[1, 2], [0]]}
    with pytest.raises(LoadError, match=r"maps\[0\]"):
        object_from_json(d)


def test_bad_epsilon_names_pair(T25):
    d = action_to_json(scaling_action(T25, -1))
    d["epsilon"] = {"0,1": [2, 2]}
    with pytest.raises(LoadError, match=r"\(0, 0, 1\)|\(0, 1"):
        action_from_json(d)
    d["epsilon"] = {"x": [1, 1]}
    with pytest.raises(LoadError, match="bad key"):
        action_from_json(d)


def test_parse_errors_have_positions(tmp_path):
    with pytest.raises(LoadError, match=r"<input>:2:\d+"):
        parse_json('{"n": 2,\n "p": }')
    path = tmp_path / "broken.json"
    path.write_text("[1, 2,,]")
    with pytest.raises(LoadError, match=r"broken\.json:1:\d+"):
        read_json(path)
    with pytest.raises(LoadError):
        read_json(tmp_path / "missing.json")
