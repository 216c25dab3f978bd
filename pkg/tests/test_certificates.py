import json

import pytest
from hypothesis import given, settings, strategies as st

from deficiency.certificates import (Certificate, ReplayError, Step, hw_family_violation,
                                     hw_inequality, obstruction_certificate,
                                     paper_pipeline, replay, step_iterated_cover,
                                     step_quotient_summand)
from deficiency.structured import parse_module


def scan(beta1, beta2, index, cap):
    for k in range(1, cap + 1):
        if 2 + beta2(k) - 2 * beta1(k) > 2 * index:
            return k
    return None


def test_iterated_cover_and_summand():
    assert step_iterated_cover(3, 120) == 120 * 3 - 120
    assert step_iterated_cover(1, 1) == 0
    assert step_iterated_cover(0, 2) == -2
    assert step_quotient_summand(7, 0) == 7
    assert step_quotient_summand(-3, 5) == -8
    with pytest.raises(ValueError):
        step_iterated_cover(1, 0)


@pytest.mark.parametrize("k,N,n,value", [
    (0, 0, 120, 1), (360, 360, 120, 1), (480, 360, 120, 0), (600, 360, 120, -1),
    (5, 0, 1, -4)])
def test_pipeline_values(k, N, n, value):
    cert = paper_pipeline(k, N, n)
    assert cert.value == value == (N + n - k) // n
    assert replay(cert)


def test_pipeline_schema():
    data = json.loads(paper_pipeline(1000, 360).to_json())
    assert set(data) == {"inputs", "steps", "conclusion"}
    assert data["conclusion"] == {"quantity": "def(pi1(Y_k))", "relation": "<=", "value": -5}
    assert [s["rule"] for s in data["steps"]] == [
        "EXT2_GENERATORS", "QUOTIENT_SUMMAND", "ITERATED_COVER", "SOLVE_FOR_DEF"]
    for s in data["steps"]:
        assert set(s) == {"rule", "in", "out", "cite"} and s["cite"]
    assert replay(Certificate.from_dict(data))


def test_pipeline_with_extra_summands():
    extra = parse_module("cyc(3,t^2+1)^4 + cyc(3)^4")
    cert = paper_pipeline(4, 360, extra=extra)
    assert replay(cert)
    # the extra cyc(3, t^2+1) also vanish at (3, -1) and tighten the bound
    assert cert.value == (360 - 8 + 120) // 120


def test_replay_detects_tampering():
    data = paper_pipeline(10, 360).to_dict()
    data["steps"][1]["out"]["D_max"] += 1
    with pytest.raises(ReplayError):
        replay(Certificate.from_dict(data))
    data = paper_pipeline(10, 360).to_dict()
    data["conclusion"]["value"] -= 1
    with pytest.raises(ReplayError):
        replay(Certificate.from_dict(data))
    data = paper_pipeline(10, 360).to_dict()
    data["steps"][0]["in"]["ext2_generators_lb"] = 11
    with pytest.raises(ReplayError):
        replay(Certificate.from_dict(data))
    bogus = Certificate({}, (Step("MAGIC", {}, {}),), "q", "<=", 0)
    with pytest.raises(ReplayError):
        replay(bogus)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 5000), st.integers(0, 2000), st.integers(1, 300))
def test_pipeline_periodicity_and_monotonicity(k, N, n):
    c = paper_pipeline(k, N, n).value
    assert paper_pipeline(k + n, N, n).value == c - 1
    assert paper_pipeline(k + 1, N, n).value <= c
    assert paper_pipeline(k, N + 1, n).value >= c


@pytest.mark.parametrize("b1,b2,k,holds", [
    (0, 10, 2, False), (0, 0, 1, True), (5, 3, 1, True),
    (1, 2, 1, True), (3, 10, 3, True), (3, 11, 3, False)])
def test_hw_truth_table(b1, b2, k, holds):
    assert hw_inequality(b1, b2, k) is holds


def test_hw_bad_index():
    with pytest.raises(ValueError):
        hw_inequality(0, 0, 0)


def test_family_examples():
    assert hw_family_violation((0, 1), (0, 0, 1), 5) == 5
    assert hw_family_violation((0, 0), (0, 0, 0), 3) is None
    assert hw_family_violation((0, 0), (0, 0, 2), 1) == 1


@settings(max_examples=300, deadline=None)
@given(st.tuples(st.integers(-20, 20), st.integers(-20, 20)),
       st.tuples(st.integers(-50, 50), st.integers(-50, 50), st.integers(-3, 3)),
       st.integers(1, 40))
def test_family_matches_scan(a, b, index):
    cap = 2000
    expected = scan(lambda k: a[0] + a[1] * k,
                    lambda k: b[0] + b[1] * k + b[2] * k * k, index, cap)
    assert hw_family_violation(a, b, index, cap=cap) == expected


def test_obstruction_certificate():
    cert = obstruction_certificate((0, 1), (0, 0, 1), 5)
    assert cert.value == 5 and replay(cert)
    assert cert.steps[0].outputs == {"lhs": 17, "rhs": 10, "holds": False}
    none = obstruction_certificate((0, 0), (0, 0, 0), 1)
    assert none.steps == () and replay(none)
