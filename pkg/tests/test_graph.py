"""Instance model, file round-trips, normalization, time expansion."""

import pytest

from netcode_unicast.graph import (
    InstanceError,
    Path,
    Session,
    UnicastInstance,
    build_instance,
    expand_time,
    normalize,
    parse_instance,
    serialize_instance,
)

BUTTERFLY = """\
# classic butterfly, two unit sessions
session 1 s1 t1
session 2 s2 t2
edge s1 a
edge s2 a
edge s1 t2
edge s2 t1
edge a b
edge b t1
edge b t2
"""


def test_parse_butterfly():
    inst = parse_instance(BUTTERFLY)
    assert inst.names == ("s1", "a", "s2", "t2", "t1", "b")
    assert inst.n_edges == 7
    assert inst.sessions == (Session(0, 4), Session(2, 3))
    # node ids follow first appearance in edge lines
    assert inst.edges[0] == (0, 1)
    assert inst.edges[2] == (0, 3)


def test_roundtrip_is_canonical():
    inst = parse_instance(BUTTERFLY)
    text = serialize_instance(inst)
    again = parse_instance(text)
    assert again == inst
    assert serialize_instance(again) == text
    # sessions precede edges, comments dropped, defaults omitted
    lines = text.splitlines()
    assert lines[0] == "session 1 s1 t1"
    assert lines[1] == "session 2 s2 t2"
    assert lines[2] == "edge s1 a"
    assert "rate=" not in text and "cap=" not in text


def test_cap_expands_to_parallel_edges():
    inst = parse_instance("session 1 s t rate=2\nedge s t cap=3\n")
    assert inst.n_edges == 3
    assert inst.edges == ((0, 1),) * 3
    assert inst.sessions[0].rate == 2
    assert "cap" not in serialize_instance(inst)
    assert serialize_instance(inst).count("edge s t") == 3


@pytest.mark.parametrize(
    "text,needle",
    [
        ("edge s t\n", "no sessions"),
        ("session 1 s t\n", "unknown node"),
        ("session 1 s t\nedge s t\nedge t s\n", "cycle"),
        ("session 2 s t\nedge s t\n", "contiguous"),
        ("session 1 s t\nsession 1 s t\nedge s t\n", "duplicate session"),
        ("session 1 s s\nedge s t\n", "differ"),
        ("session 1 s t rate=0\nedge s t\n", ">= 1"),
        ("edge s t cap=0\nsession 1 s t\n", ">= 1"),
        ("edge s\nsession 1 s t\n", "expected"),
        ("vertex s t\n", "unknown directive"),
        ("edge s t weight=2\nsession 1 s t\n", "attribute"),
    ],
)
def test_parse_errors(text, needle):
    with pytest.raises(InstanceError, match=needle):
        parse_instance(text)


def test_session_order_in_file_is_by_index():
    inst = parse_instance("session 2 a b\nsession 1 b c\nedge a b\nedge b c\n")
    assert inst.sessions[0] == Session(1, 2)  # index 1 = b -> c
    assert inst.sessions[1] == Session(0, 1)


def test_toposort_deterministic():
    inst = build_instance(
        [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")], [("s", "t")]
    )
    assert inst.topo_order == (0, 1, 2, 3)
    assert inst.edges_in_topo_order() == [0, 1, 2, 3]


def test_observed_symbols_and_offsets():
    inst = build_instance(
        [("s", "t"), ("s", "u"), ("u", "t")],
        [("s", "t", 2), ("s", "t", 1)],
    )
    assert inst.symbol_offsets() == (0, 2)
    assert inst.n_symbols == 3
    assert inst.observed_symbols(0) == (0, 1, 2)
    assert inst.observed_symbols(1) == ()
    assert inst.session_symbols(0) == (0, 1)
    assert inst.session_symbols(1) == (2,)


def test_keep_edges_renumbers_densely():
    inst = build_instance(
        [("s", "a"), ("a", "t"), ("s", "t")], [("s", "t")]
    )
    sub, mapping = inst.keep_edges([2, 0])
    assert sub.edges == ((0, 1), (0, 2))
    assert mapping == {0: 0, 1: 2}
    assert sub.names == inst.names


def test_path_validation():
    inst = build_instance([("s", "a"), ("a", "t"), ("s", "t")], [("s", "t")])
    p = Path((0, 1))
    p.validate(inst, inst.node_id("s"), inst.node_id("t"))
    assert p.nodes(inst) == (0, 1, 2)
    with pytest.raises(InstanceError):
        Path((1, 0)).validate(inst, 0, 2)
    with pytest.raises(InstanceError):
        Path(()).validate(inst, 0, 2)


def test_normalize_attaches_rate_many_edges():
    # source s2 sits mid-graph; terminal t1 has an out-edge
    inst = build_instance(
        [("s1", "s2"), ("s2", "t1"), ("t1", "x")],
        [("s1", "t1", 1), ("s2", "x", 2)],
    )
    norm, mapping = normalize(inst)
    # session 1: terminal t1 has out-edges -> new terminal ~t1
    # session 2: source s2 has in-edges -> new source ~s2, rate 2 edges
    assert norm.names[:4] == inst.names
    s1, s2 = norm.sessions
    assert norm.names[s1.terminal] == "~t1"
    assert norm.names[s2.source] == "~s2"
    assert len([e for e in norm.edges if e == (s2.source, inst.node_id("s2"))]) == 2
    assert mapping == {0: s1, 1: s2}
    # every source is now clean, every terminal is a sink
    for s in norm.sessions:
        assert norm.in_edges[s.source] == ()
        assert norm.out_edges[s.terminal] == ()


def test_normalize_idempotent():
    inst = build_instance([("s", "a"), ("a", "t")], [("s", "t")])
    norm, mapping = normalize(inst)
    assert norm == inst
    assert mapping == {0: Session(0, 2)}


def test_normalize_fresh_names_avoid_collisions():
    inst = build_instance(
        [("a", "~s1"), ("~s1", "b")], [("~s1", "b")]
    )
    norm, _ = normalize(inst)
    assert len(set(norm.names)) == len(norm.names)


def test_expand_time_ids_and_lineage():
    inst = build_instance([("s", "a"), ("a", "t")], [("s", "t", 2)])
    ex, lineage = expand_time(inst, 3)
    assert ex.n_edges == 6
    assert ex.sessions[0].rate == 6
    for new_id, (old_id, tau) in lineage.items():
        assert new_id == old_id * 3 + tau
        assert ex.edges[new_id] == inst.edges[old_id]
    assert expand_time(inst, 1)[0].edges == inst.edges
    with pytest.raises(InstanceError):
        expand_time(inst, 0)


def test_instance_structural_validation():
    with pytest.raises(InstanceError, match="self-loop"):
        UnicastInstance(("a", "b"), ((0, 0),), (Session(0, 1),))
    with pytest.raises(InstanceError, match="duplicate node names"):
        UnicastInstance(("a", "a"), (), ())
    with pytest.raises(InstanceError, match="invalid node name"):
        UnicastInstance(("a b",), (), ())
    with pytest.raises(InstanceError, match="unknown node"):
        UnicastInstance(("a", "b"), ((0, 1),), (Session(0, 5),))
