import json
import random

import pytest

from redbench import constructions as cons
from redbench import serialization as ser
from redbench.bitsupport import FiniteNatSet, SumMode
from redbench.colorings import TupleColoring, UnaryColoring
from redbench.errors import SchemaError
from redbench.reductions import Instance, Solution

from helpers import chain_alpha


def roundtrip_instance(instance):
    doc = ser.instance_file(instance)
    text = ser.canonical_dumps(doc)
    loaded = ser.instance_from_file(json.loads(text))
    again = ser.canonical_dumps(ser.instance_file(loaded))
    assert again == text
    return loaded


def test_table_coloring_roundtrip_bit_exact():
    c = UnaryColoring.from_table([0, 1, 0, 1, 2, 0], range_bound=3)
    loaded = roundtrip_instance(Instance("unary_coloring", c))
    assert [loaded.payload(n) for n in range(6)] == [0, 1, 0, 1, 2, 0]
    assert loaded.payload.range_bound == 3


def test_builtin_coloring_roundtrips():
    instances = [
        Instance("unary_coloring", cons.constant_coloring(2, 64)),
        Instance("unary_coloring", cons.mod_coloring(3, 64)),
        Instance("unary_coloring", cons.lam_coloring(64)),
        Instance("unary_coloring", cons.pair_lam_mu_coloring(64)),
        Instance(
            "unary_coloring",
            cons.range_coloring(cons.InjectiveFunctionTable((5, 6, 7, 1, 2)), 1 << 12),
        ),
        Instance(
            "unary_coloring",
            cons.clip_to_lambda_regressive(cons.mod_coloring(4, 128)),
        ),
        Instance("unary_coloring", cons.guard_rt1(cons.mod_coloring(2, 128), 2)),
        Instance(
            "unary_coloring", cons.mu_recoloring(cons.mod_coloring(2, 64), 2, 1 << 10)
        ),
        Instance("unary_coloring", cons.wop_coloring(chain_alpha(4), 1 << 10)),
    ]
    for instance in instances:
        loaded = roundtrip_instance(instance)
        for n in (0, 1, 5, 12, 40, 63):
            assert loaded.payload(n) == instance.payload(n)


def test_tuple_coloring_roundtrips():
    rng = random.Random(8)
    entries = {(a, b): rng.randrange(3) for a in range(12) for b in range(a + 1, 12)}
    base = TupleColoring.from_table(2, 12, entries, range_bound=3)
    instances = [
        Instance("tuple_coloring", base),
        Instance("tuple_coloring", cons.regressive_guard_fixed(base, 3)),
        Instance("tuple_coloring", cons.regressive_guard_shift(base)),
        Instance(
            "tuple_coloring",
            cons.sum_tuple_coloring(cons.lam_minus_coloring(64), 2, 20),
        ),
        Instance("tuple_coloring", cons.sum_mod_coloring(3, 2, 24)),
    ]
    for instance in instances:
        loaded = roundtrip_instance(instance)
        assert loaded.payload((2, 9)) == instance.payload((2, 9))


def test_principle_instance_roundtrips():
    rng = random.Random(9)
    entries = {(a, b): rng.randrange(3) for a in range(16) for b in range(a + 1, 16)}
    instances = [
        Instance("rt1", cons.mod_coloring(2, 64), {"k": 2}),
        Instance(
            "rt",
            TupleColoring.from_table(2, 16, entries, range_bound=3),
            {"k": 3, "n": 2},
        ),
        Instance(
            "reg",
            cons.regressive_guard_fixed(
                TupleColoring.from_table(2, 16, entries, range_bound=3), 3
            ),
            {"n": 2, "ground_set": FiniteNatSet.of(4, 8, 12)},
        ),
        Instance(
            "ht",
            cons.mod_coloring(2, 64),
            {"k": 2, "mode": SumMode.at_most(2), "apart": True},
        ),
        Instance(
            "reght", cons.lam_minus_coloring(64), {"mode": SumMode.exactly(2)}
        ),
        Instance("ran", cons.InjectiveFunctionTable((5, 6, 7, 1, 2))),
        Instance("wop", chain_alpha(3)),
    ]
    for instance in instances:
        loaded = roundtrip_instance(instance)
        assert loaded.principle == instance.principle


def test_solution_roundtrips():
    solutions = [
        Solution("finite_set", FiniteNatSet.of(1, 2, 4)),
        Solution("range_table", {"certified_bound": 4, "members": (1, 2)}),
        Solution("x_sequence", {"values": (2, 1), "stop_reason": "descent_exhausted"}),
    ]
    for sol in solutions:
        text = ser.canonical_dumps(ser.solution_file(sol))
        loaded = ser.solution_from_file(json.loads(text))
        assert ser.canonical_dumps(ser.solution_file(loaded)) == text


def test_unknown_builtin_is_schema_error():
    payload = {
        "kind": "unary_coloring",
        "domain_bound": 8,
        "builtin": {"name": "mystery", "params": {}},
    }
    with pytest.raises(SchemaError) as info:
        ser.unary_coloring_from_payload(payload)
    assert info.value.field == "name"


def test_missing_field_is_schema_error():
    with pytest.raises(SchemaError) as info:
        ser.unary_coloring_from_payload({"kind": "unary_coloring", "domain_bound": 4})
    assert info.value.field == "builtin"
    with pytest.raises(SchemaError):
        ser.instance_from_file({"format_version": 99, "principle": "ran", "payload": {}})


def test_table_length_must_match_domain():
    payload = {
        "kind": "unary_coloring",
        "domain_bound": 9,
        "builtin": {"name": "table", "params": {"values": [0, 1]}},
    }
    with pytest.raises(SchemaError):
        ser.unary_coloring_from_payload(payload)


def test_instance_file_validates_on_load():
    bad = Instance("rt1", cons.identity_coloring(16), {"k": 2})
    doc = ser.instance_file(bad)
    from redbench.errors import ValidationError

    with pytest.raises(ValidationError):
        ser.instance_from_file(doc)
    assert ser.instance_from_file(doc, validate=False).principle == "rt1"


from hypothesis import given, settings
from hypothesis import strategies as st


@given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=32))
@settings(deadline=None)
def test_table_roundtrip_property(values):
    instance = Instance("unary_coloring", UnaryColoring.from_table(values))
    doc = ser.instance_file(instance)
    text = ser.canonical_dumps(doc)
    loaded = ser.instance_from_file(json.loads(text))
    assert ser.canonical_dumps(ser.instance_file(loaded)) == text
    assert [loaded.payload(i) for i in range(len(values))] == list(values)


@given(st.integers(min_value=0, max_value=10_000))
@settings(deadline=None)
def test_descending_sequence_roundtrip_property(seed):
    from helpers import random_descending_alpha

    rng = random.Random(seed)
    alpha = random_descending_alpha(rng, rng.randint(2, 5), rng.randint(3, 10), rng.randint(1, 4))
    instance = Instance("wop", alpha)
    text = ser.canonical_dumps(ser.instance_file(instance))
    loaded = ser.instance_from_file(json.loads(text))
    assert loaded.payload == alpha
    assert ser.canonical_dumps(ser.instance_file(loaded)) == text


def test_canonical_dumps_sorted_and_stable():
    doc = {"b": 1, "a": {"d": 2, "c": 3}}
    text = ser.canonical_dumps(doc)
    assert text.index('"a"') < text.index('"b"')
    assert ser.canonical_dumps(json.loads(text)) == text
