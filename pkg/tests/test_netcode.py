"""Code representation, propagation, verification, simulation, file io."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcode_unicast.gf import PrimeField
from netcode_unicast.graph import build_instance
from netcode_unicast.netcode import (
    EMPTY_RULE,
    CodeError,
    LocalRule,
    NetworkCode,
    code_from_plan,
    is_routing,
    parse_code,
    propagate,
    serialize_code,
    simulate,
    verify_code,
    zero_code,
)

BUTTERFLY = build_instance(
    [
        ("s1", "a"),     # 0
        ("s2", "a"),     # 1
        ("s1", "t2"),    # 2
        ("s2", "t1"),    # 3
        ("a", "b"),      # 4
        ("b", "t1"),     # 5
        ("b", "t2"),     # 6
    ],
    [("s1", "t1"), ("s2", "t2")],
)

# the classic XOR-in-the-middle solution
BUTTERFLY_CODE = NetworkCode(
    q=2,
    T=1,
    rules=(
        LocalRule(src_coeffs=((0, 1),)),
        LocalRule(src_coeffs=((1, 1),)),
        LocalRule(src_coeffs=((0, 1),)),
        LocalRule(src_coeffs=((1, 1),)),
        LocalRule(in_coeffs=((0, 1), (1, 1))),
        LocalRule(in_coeffs=((4, 1),)),
        LocalRule(in_coeffs=((4, 1),)),
    ),
)


def test_propagate_butterfly():
    vectors = propagate(BUTTERFLY, BUTTERFLY_CODE)
    assert vectors[0] == (1, 0)
    assert vectors[1] == (0, 1)
    assert vectors[4] == (1, 1)
    assert vectors[5] == (1, 1)


def test_verify_butterfly_passes():
    result = verify_code(BUTTERFLY, BUTTERFLY_CODE)
    assert result.all_pass
    t1 = result.reports[0]
    assert t1.in_edges == (3, 5)
    # X_0 = Y_3 + Y_5 = X_1 + (X_0 + X_1) over GF(2)
    assert t1.decoders == ((1, 1),)


def test_verify_rank_deficiency_fails():
    # drop the side edges: terminals only see X_0 + X_1
    crippled = NetworkCode(
        q=2,
        T=1,
        rules=BUTTERFLY_CODE.rules[:2]
        + (EMPTY_RULE, EMPTY_RULE)
        + BUTTERFLY_CODE.rules[4:],
    )
    result = verify_code(BUTTERFLY, crippled)
    assert not result.all_pass
    assert result.reports[0].decoders == (None,)


def test_zero_code_fails():
    assert not verify_code(BUTTERFLY, zero_code(2, 1, BUTTERFLY)).all_pass


def test_validate_errors():
    with pytest.raises(CodeError, match="covers"):
        propagate(BUTTERFLY, NetworkCode(2, 1, (EMPTY_RULE,) * 3))
    bad_key = NetworkCode(2, 1, ((LocalRule(in_coeffs=((5, 1),)),) + (EMPTY_RULE,) * 6))
    with pytest.raises(CodeError, match="not\\s+available"):
        propagate(BUTTERFLY, bad_key)
    bad_coeff = NetworkCode(
        2, 1, ((LocalRule(src_coeffs=((0, 2),)),) + (EMPTY_RULE,) * 6)
    )
    with pytest.raises(CodeError, match="outside"):
        propagate(BUTTERFLY, bad_coeff)
    unsorted = NetworkCode(
        2,
        1,
        (EMPTY_RULE,) * 4
        + (LocalRule(in_coeffs=((1, 1), (0, 1))),)
        + (EMPTY_RULE,) * 2,
    )
    with pytest.raises(CodeError, match="ascend"):
        propagate(BUTTERFLY, unsorted)


def test_vector_code_on_expanded_edges():
    inst = build_instance([("s", "t"), ("s", "t")], [("s", "t", 1)])
    # T=2: four expanded edges, rate 2, symbols x0 x1
    code = NetworkCode(
        q=2,
        T=2,
        rules=(
            LocalRule(src_coeffs=((0, 1),)),
            LocalRule(src_coeffs=((1, 1),)),
            EMPTY_RULE,
            EMPTY_RULE,
        ),
    )
    result = verify_code(inst, code)
    assert result.all_pass
    vectors = propagate(inst, code)
    assert vectors == ((1, 0), (0, 1), (0, 0), (0, 0))


def test_code_from_plan_reconstructs():
    F = PrimeField(2)
    plan = {
        0: (1, 0),
        1: (0, 1),
        2: (1, 0),
        3: (0, 1),
        4: (1, 1),
        5: (1, 1),
        6: (1, 1),
    }
    code = code_from_plan(BUTTERFLY, 2, 1, plan)
    assert propagate(BUTTERFLY, code) == tuple(plan[e] for e in range(7))
    assert verify_code(BUTTERFLY, code).all_pass
    assert code.rules[4] == LocalRule(in_coeffs=((0, 1), (1, 1)))


def test_code_from_plan_rejects_unrealizable():
    plan = {0: (1, 0), 1: (0, 1), 4: (1, 1), 5: (1, 0)}
    with pytest.raises(CodeError, match="not realizable"):
        code_from_plan(BUTTERFLY, 2, 1, plan)


def test_is_routing():
    assert is_routing([(0, 0), (1, 0), (0, 1)])
    assert not is_routing([(1, 1)])
    assert not is_routing([(0, 2)])


def test_code_file_roundtrip():
    text = serialize_code(BUTTERFLY_CODE)
    code, globals_table = parse_code(text)
    assert code == BUTTERFLY_CODE
    assert globals_table is None
    assert serialize_code(code) == text
    lines = text.splitlines()
    assert lines[0] == "field q=2"
    assert lines[1] == "vector T=1"
    assert lines[2] == "code 0 : x0=1"
    assert lines[6] == "code 4 : e0=1 e1=1"


def test_code_file_with_globals():
    vectors = propagate(BUTTERFLY, BUTTERFLY_CODE)
    text = serialize_code(BUTTERFLY_CODE, vectors)
    code, globals_table = parse_code(text)
    assert code == BUTTERFLY_CODE
    assert globals_table == {e: vectors[e] for e in range(7)}
    assert "global 4 : 1,1" in text


@pytest.mark.parametrize(
    "text,needle",
    [
        ("code 0 : x0=1\n", "header"),
        ("field q=2\nvector T=1\ncode 0 : x0=1\ncode 0 : x0=1\n", "duplicate"),
        ("field q=2\nvector T=1\ncode 1 : x0=1\n", "cover"),
        ("field q=2\nvector T=1\ncode 0 : y0=1\n", "bad coefficient"),
        ("field q=2\nvector T=1\ncode 0 x0=1\n", "expected"),
        ("field q=2\nvector T=1\nnoise\n", "unknown directive"),
        ("field q=x\n", "bad integer"),
    ],
)
def test_code_parse_errors(text, needle):
    with pytest.raises(CodeError, match=needle):
        parse_code(text)


@st.composite
def butterfly_code_and_values(draw):
    q = draw(st.sampled_from([2, 3, 5]))
    coeff = st.integers(min_value=0, max_value=q - 1)
    rules = []
    for eid in range(BUTTERFLY.n_edges):
        tail = BUTTERFLY.tail(eid)
        in_coeffs = tuple(
            (j, c)
            for j in BUTTERFLY.in_edges[tail]
            if (c := draw(coeff)) != 0
        )
        src_coeffs = tuple(
            (k, c)
            for k in BUTTERFLY.observed_symbols(tail)
            if (c := draw(coeff)) != 0
        )
        rules.append(LocalRule(in_coeffs, src_coeffs))
    values = tuple(draw(coeff) for _ in range(2))
    return NetworkCode(q, 1, tuple(rules)), values


@settings(max_examples=150, derandomize=True)
@given(butterfly_code_and_values())
def test_simulation_matches_propagation(code_and_values):
    code, values = code_and_values
    F = PrimeField(code.q)
    vectors = propagate(BUTTERFLY, code)
    edge_values = simulate(BUTTERFLY, code, values)
    for vec, got in zip(vectors, edge_values):
        want = 0
        for c, x in zip(vec, values):
            want = F.add(want, F.mul(c, x))
        assert got == want


def test_verify_monotone_under_extra_in_edge():
    # widening a terminal's view can only help decoding
    wide = build_instance(
        [
            ("s1", "a"),     # 0
            ("s2", "a"),     # 1
            ("s1", "t2"),    # 2
            ("s2", "t1"),    # 3
            ("a", "b"),      # 4
            ("b", "t1"),     # 5
            ("b", "t2"),     # 6
            ("s2", "t2"),    # 7  extra idle in-edge
        ],
        [("s1", "t1"), ("s2", "t2")],
    )
    rules = BUTTERFLY_CODE.rules + (EMPTY_RULE,)
    code = NetworkCode(q=2, T=1, rules=rules)
    report = verify_code(wide, code)
    assert report.all_pass
