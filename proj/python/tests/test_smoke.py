import json
from pathlib import Path

import pytest

import rauzy_py as rz

DATA = Path(__file__).resolve().parents[2] / "tests" / "data"


def load(name):
    return rz.load_spec(DATA / f"{name}.json")


def fibonacci_prefix(n):
    a, b = "a", "ab"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def thue_morse_prefix(n):
    return "".join("ab"[bin(i).count("1") % 2] for i in range(n))


def windows(text, n):
    return sorted({text[i : i + n] for i in range(len(text) - n + 1)})


def test_prefix_matches_generator():
    assert load("fibonacci").prefix(500) == fibonacci_prefix(500)
    assert load("thue_morse").prefix(512) == thue_morse_prefix(512)


@pytest.mark.parametrize("name,text", [("fibonacci", fibonacci_prefix(20000)), ("thue_morse", thue_morse_prefix(20000))])
def test_factors_match_brute_force(name, text):
    oracle = rz.Oracle(load(name))
    for n in range(1, 16):
        assert oracle.factors(n) == windows(text, n)
        assert oracle.complexity(n) == len(windows(text, n))


def test_sturmian_complexity():
    oracle = rz.Oracle(load("fibonacci"))
    assert [oracle.complexity(n) for n in range(1, 30)] == list(range(2, 31))
    assert oracle.is_factor("abaab")
    assert not oracle.is_factor("bb")


def test_protocol_round_trip():
    oracle = rz.Oracle(load("fibonacci"))
    protocol = rz.evolve(oracle, steps=20)
    assert protocol.failure is None
    assert protocol.steps == 20
    assert protocol.detect_period() == (0, 2)
    assert protocol.light_replay_mismatch() is None
    lines = protocol.to_jsonl().splitlines()
    assert [json.loads(line)["scale"] for line in lines] == protocol.scales
    system = protocol.extract(0, 2, oracle)
    golden = (1 + 5**0.5) / 2
    assert abs(system.growth_rate - golden**2) < 1e-6
    result = rz.verify_language_equality(oracle, system, 100)
    assert result["equal"] and result["first_difference"] is None


def test_runs_are_deterministic():
    a = rz.evolve(rz.Oracle(load("thue_morse")), steps=12)
    b = rz.evolve(rz.Oracle(load("thue_morse")), steps=12)
    assert a.to_jsonl() == b.to_jsonl()


def test_primitivize_and_uniform_recurrence():
    spec = load("erasable")
    report, reduced = rz.primitivize(spec)
    assert "# primitive: true" in report
    original, primitive = rz.Oracle(spec), rz.Oracle(reduced)
    for n in range(1, 40):
        assert original.factors(n) == primitive.factors(n)
    assert rz.check_ur(load("fibonacci"))[0] == "UR_Evidence"
    assert rz.check_ur(load("bpowers"))[0] == "NotUR"


def test_errors_carry_kind():
    with pytest.raises(rz.RauzyError) as info:
        rz.Oracle(load("periodic")).initial_k(8)
    assert info.value.args[1] == "NoValidOrder"
    with pytest.raises(rz.RauzyError) as info:
        rz.parse_spec('{"alphabet":["a"],"rules":{"a":"ab"},"seed":"a"}')
    assert info.value.args[1] in {"UnknownLetter", "NotEndomorphism", "InvalidSpec"}
