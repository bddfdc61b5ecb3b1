import json

import pytest

from fincatlab import cyclic_group, op, ordinal, product
from fincatlab.duskin import delooping, walking_two_iso
from fincatlab.errors import MalformedWitness
from fincatlab.groth import cart_groth
from fincatlab.serialize import dumps, from_json, loads, to_json
from fincatlab.sset import MarkedSSet, horn, nerve
from fincatlab.verify import generators as gen


def same(a, b):
    return dumps(a) == dumps(b)


@pytest.mark.parametrize("C", [ordinal(2), cyclic_group(3), product(ordinal(1), ordinal(1))])
def test_category_round_trip(C):
    assert same(loads(dumps(C)), C)


def test_functor_diagram_fibration_round_trip():
    r = gen.rng_for(0, "serialize")
    F = gen.random_functor(r, gen.random_category(r, 3), gen.random_category(r, 3))
    assert same(loads(dumps(F)), F)
    D = gen.random_diagram(r, op(ordinal(1)), 2)
    assert same(loads(dumps(D)), D)
    q = cart_groth(D)
    assert same(loads(dumps(q)), q)


def test_simplicial_round_trip_keeps_marking():
    X = horn(3, 1, 3)
    assert same(loads(dumps(X)), X)
    N = nerve(cyclic_group(2), 2)
    M = MarkedSSet(N, N.cells(1))
    back = loads(dumps(M))
    assert isinstance(back, MarkedSSet)
    assert len(back.marked) == len(N.cells(1))


def test_two_category_and_oplax_round_trip():
    for B in (delooping(2), walking_two_iso()):
        assert same(loads(dumps(B)), B)
    F = gen.random_cocycle_oplax(gen.rng_for(0, "oplax-json"))
    assert loads(dumps(F)).eta == F.eta


def test_tuple_ids_survive_json():
    C = ordinal(1)
    d = json.loads(json.dumps(to_json(C)))
    assert from_json(d).morphisms == C.morphisms


@pytest.mark.parametrize("bad", ["{", "{}", '{"kind": "category"}', '{"kind": "sset", "dim": 1, "cells": [], "d": [], "s": []}'])
def test_malformed_records(bad):
    with pytest.raises(MalformedWitness):
        loads(bad)
