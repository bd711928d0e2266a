"""Directed acyclic unit-capacity networks with unicast sessions.

An instance couples a DAG (parallel edges allowed, every edge capacity one)
with an ordered list of unicast sessions.  Nodes are referred to by dense
integer ids assigned in order of first appearance in the edge list; the
original string names are kept for serialization.

The on-disk format is line oriented::

    # comment
    session 1 s1 t1 rate=2
    edge s1 v1
    edge v1 t1 cap=2

``cap=c`` is expanded into ``c`` parallel unit edges at parse time, so a
parsed instance never carries capacities.  Canonical serialization prints
sessions first (ascending index) and then edges in id order, omitting
``rate=1`` and never emitting ``cap=``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class InstanceError(ValueError):
    """Raised for malformed instance structure or files."""


@dataclass(frozen=True, slots=True)
class Session:
    """One unicast demand: ``rate`` unit symbols from ``source`` to ``terminal``."""

    source: int
    terminal: int
    rate: int = 1

    def __post_init__(self) -> None:
        if self.rate < 1:
            raise InstanceError(f"session rate must be >= 1, got {self.rate}")
        if self.source == self.terminal:
            raise InstanceError("session source and terminal must differ")


@dataclass(frozen=True)
class UnicastInstance:
    """Immutable DAG plus sessions.

    Attributes:
        names: node names, index = node id.
        edges: edge endpoint pairs ``(tail, head)``, index = edge id.
        sessions: sessions in index order (file index 1 = sessions[0]).
    """

    names: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    sessions: tuple[Session, ...]
    out_edges: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_edges: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    topo_order: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InstanceError("duplicate node names")
        for name in self.names:
            if not name or "#" in name or any(ch.isspace() for ch in name):
                raise InstanceError(f"invalid node name {name!r}")
        out: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"edge {eid} references unknown node")
            if u == v:
                raise InstanceError(f"edge {eid} is a self-loop")
            out[u].append(eid)
            inc[v].append(eid)
        for s in self.sessions:
            if not (0 <= s.source < n and 0 <= s.terminal < n):
                raise InstanceError("session references unknown node")
        object.__setattr__(self, "out_edges", tuple(tuple(e) for e in out))
        object.__setattr__(self, "in_edges", tuple(tuple(e) for e in inc))
        object.__setattr__(self, "topo_order", self._toposort())

    def _toposort(self) -> tuple[int, ...]:
        n = len(self.names)
        indeg = [len(self.in_edges[v]) for v in range(n)]
        heap = [v for v in range(n) if indeg[v] == 0]
        heapq.heapify(heap)
        order: list[int] = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for eid in self.out_edges[v]:
                w = self.edges[eid][1]
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != n:
            raise InstanceError("graph contains a directed cycle")
        return tuple(order)

    # -- basic queries ----------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.names)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def tail(self, eid: int) -> int:
        return self.edges[eid][0]

    def head(self, eid: int) -> int:
        return self.edges[eid][1]

    def node_id(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InstanceError(f"unknown node {name!r}") from None

    def topo_index(self) -> tuple[int, ...]:
        """Position of each node in the deterministic topological order."""
        pos = [0] * self.n_nodes
        for i, v in enumerate(self.topo_order):
            pos[v] = i
        return tuple(pos)

    def edges_in_topo_order(self) -> list[int]:
        """Edge ids ordered so every edge appears after its tail's in-edges."""
        pos = self.topo_index()
        return sorted(range(self.n_edges), key=lambda e: (pos[self.edges[e][0]], e))

    # -- symbol layout ----------------------------------------------------

    def symbol_offsets(self) -> tuple[int, ...]:
        """Start of each session's block of unit-symbol indices."""
        offsets = []
        acc = 0
        for s in self.sessions:
            offsets.append(acc)
            acc += s.rate
        return tuple(offsets)

    @property
    def n_symbols(self) -> int:
        return sum(s.rate for s in self.sessions)

    def observed_symbols(self, node: int) -> tuple[int, ...]:
        """Unit-symbol indices injected at ``node`` (sources observe own block)."""
        offsets = self.symbol_offsets()
        out: list[int] = []
        for i, s in enumerate(self.sessions):
            if s.source == node:
                out.extend(range(offsets[i], offsets[i] + s.rate))
        return tuple(out)

    def session_symbols(self, index: int) -> tuple[int, ...]:
        offsets = self.symbol_offsets()
        s = self.sessions[index]
        return tuple(range(offsets[index], offsets[index] + s.rate))

    # -- construction helpers ---------------------------------------------

    def with_sessions(self, sessions: Sequence[Session]) -> "UnicastInstance":
        return UnicastInstance(self.names, self.edges, tuple(sessions))

    def keep_edges(self, keep: Iterable[int]) -> tuple["UnicastInstance", dict[int, int]]:
        """Sub-instance on a subset of edges.

        Node set and ids are unchanged; edges are renumbered densely in old id
        order.  Returns the new instance and the map new id -> old id.
        """
        kept = sorted(set(keep))
        for e in kept:
            if not 0 <= e < self.n_edges:
                raise InstanceError(f"unknown edge id {e}")
        new_edges = tuple(self.edges[e] for e in kept)
        mapping = {new: old for new, old in enumerate(kept)}
        return UnicastInstance(self.names, new_edges, self.sessions), mapping


@dataclass(frozen=True, slots=True)
class Path:
    """A directed path given as a tuple of consecutive edge ids."""

    edge_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_ids)

    def nodes(self, instance: UnicastInstance) -> tuple[int, ...]:
        if not self.edge_ids:
            return ()
        first = self.edge_ids[0]
        out = [instance.tail(first)]
        for e in self.edge_ids:
            out.append(instance.head(e))
        return tuple(out)

    def validate(self, instance: UnicastInstance, source: int, terminal: int) -> None:
        if not self.edge_ids:
            raise InstanceError("empty path")
        if instance.tail(self.edge_ids[0]) != source:
            raise InstanceError("path does not start at the source")
        if instance.head(self.edge_ids[-1]) != terminal:
            raise InstanceError("path does not end at the terminal")
        for a, b in zip(self.edge_ids, self.edge_ids[1:]):
            if instance.head(a) != instance.tail(b):
                raise InstanceError("path edges are not consecutive")


def build_instance(
    edges: Sequence[tuple[str, str]],
    sessions: Sequence[tuple[str, str] | tuple[str, str, int]],
) -> UnicastInstance:
    """Assemble an instance from named edge and session lists.

    Node ids follow first appearance in ``edges``; session endpoints must
    already occur there.
    """
    names: list[str] = []
    index: dict[str, int] = {}

    def nid(name: str) -> int:
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    edge_ids = tuple((nid(u), nid(v)) for u, v in edges)
    sess: list[Session] = []
    for spec in sessions:
        src, dst = spec[0], spec[1]
        rate = spec[2] if len(spec) == 3 else 1
        for name in (src, dst):
            if name not in index:
                raise InstanceError(f"unknown node {name!r} in session")
        sess.append(Session(index[src], index[dst], rate))
    return UnicastInstance(tuple(names), edge_ids, tuple(sess))


# -- file format ----------------------------------------------------------


def parse_instance(text: str) -> UnicastInstance:
    """Parse the line-oriented instance format.

    Raises:
        InstanceError: with a 1-based line number on any syntax problem,
            duplicate or non-contiguous session index, unknown node in a
            session line, or a directed cycle.
    """
    edge_specs: list[tuple[str, str, int]] = []
    session_specs: list[tuple[int, str, str, int, int]] = []  # (idx, src, dst, rate, line)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "edge":
            if len(parts) not in (3, 4):
                raise InstanceError(f"line {lineno}: expected 'edge <u> <v> [cap=<c>]'")
            cap = 1
            if len(parts) == 4:
                if not parts[3].startswith("cap="):
                    raise InstanceError(f"line {lineno}: bad edge attribute {parts[3]!r}")
                try:
                    cap = int(parts[3][4:])
                except ValueError:
                    raise InstanceError(f"line {lineno}: bad capacity {parts[3]!r}") from None
                if cap < 1:
                    raise InstanceError(f"line {lineno}: capacity must be >= 1")
            edge_specs.append((parts[1], parts[2], cap))
        elif kind == "session":
            if len(parts) not in (4, 5):
                raise InstanceError(
                    f"line {lineno}: expected 'session <i> <src> <dst> [rate=<r>]'"
                )
            try:
                idx = int(parts[1])
            except ValueError:
                raise InstanceError(f"line {lineno}: bad session index {parts[1]!r}") from None
            rate = 1
            if len(parts) == 5:
                if not parts[4].startswith("rate="):
                    raise InstanceError(f"line {lineno}: bad session attribute {parts[4]!r}")
                try:
                    rate = int(parts[4][5:])
                except ValueError:
                    raise InstanceError(f"line {lineno}: bad rate {parts[4]!r}") from None
            session_specs.append((idx, parts[2], parts[3], rate, lineno))
        else:
            raise InstanceError(f"line {lineno}: unknown directive {kind!r}")

    names: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    for u, v, cap in edge_specs:
        for name in (u, v):
            if name not in index:
                index[name] = len(names)
                names.append(name)
        edges.extend([(index[u], index[v])] * cap)

    session_specs.sort(key=lambda s: (s[0], s[4]))
    sessions: list[Session] = []
    seen: set[int] = set()
    for pos, (idx, src, dst, rate, lineno) in enumerate(session_specs, start=1):
        if idx in seen:
            raise InstanceError(f"line {lineno}: duplicate session index {idx}")
        seen.add(idx)
        if idx != pos:
            raise InstanceError(f"line {lineno}: session indices must be 1-based contiguous")
        for name in (src, dst):
            if name not in index:
                raise InstanceError(f"line {lineno}: unknown node {name!r} in session")
        try:
            sessions.append(Session(index[src], index[dst], rate))
        except InstanceError as exc:
            raise InstanceError(f"line {lineno}: {exc}") from None
    if not sessions:
        raise InstanceError("instance declares no sessions")
    return UnicastInstance(tuple(names), tuple(edges), tuple(sessions))


def serialize_instance(instance: UnicastInstance) -> str:
    """Canonical text form: sessions first, then edges in id order."""
    lines: list[str] = []
    for i, s in enumerate(instance.sessions, start=1):
        rate = f" rate={s.rate}" if s.rate != 1 else ""
        lines.append(
            f"session {i} {instance.names[s.source]} {instance.names[s.terminal]}{rate}"
        )
    for u, v in instance.edges:
        lines.append(f"edge {instance.names[u]} {instance.names[v]}")
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> UnicastInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(instance: UnicastInstance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(instance))


# -- normalization and time expansion --------------------------------------


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "~"
    taken.add(name)
    return name


def normalize(
    instance: UnicastInstance,
) -> tuple[UnicastInstance, dict[int, Session]]:
    """Attach artificial endpoints so sources have no in-edges and terminals
    no out-edges.

    Each attachment uses rate-many parallel unit edges, which caps the
    session's max-flow at ``min(rate, original max-flow)``.  Returns the new
    instance and a map from session index to its new endpoints; an already
    normalized instance round-trips identically with an identity map.
    """
    names = list(instance.names)
    taken = set(names)
    edges = list(instance.edges)
    new_sessions: list[Session] = []
    mapping: dict[int, Session] = {}
    for i, s in enumerate(instance.sessions):
        src, dst = s.source, s.terminal
        if instance.in_edges[src]:
            names.append(_fresh_name(f"~s{i + 1}", taken))
            new_src = len(names) - 1
            edges.extend([(new_src, src)] * s.rate)
            src = new_src
        if instance.out_edges[dst]:
            names.append(_fresh_name(f"~t{i + 1}", taken))
            new_dst = len(names) - 1
            edges.extend([(dst, new_dst)] * s.rate)
            dst = new_dst
        new = Session(src, dst, s.rate)
        new_sessions.append(new)
        mapping[i] = new
    result = UnicastInstance(tuple(names), tuple(edges), tuple(new_sessions))
    return result, mapping


def expand_time(
    instance: UnicastInstance, T: int
) -> tuple[UnicastInstance, dict[int, tuple[int, int]]]:
    """Time-expand the instance for vector coding over T slots.

    Every edge becomes T parallel copies (copy tau of edge e gets id
    ``e * T + tau``); session rates multiply by T; nodes are unchanged.
    Returns the expanded instance and the lineage map
    ``new edge id -> (original edge id, tau)``.
    """
    if T < 1:
        raise InstanceError(f"T must be >= 1, got {T}")
    edges: list[tuple[int, int]] = []
    lineage: dict[int, tuple[int, int]] = {}
    for eid, (u, v) in enumerate(instance.edges):
        for tau in range(T):
            lineage[len(edges)] = (eid, tau)
            edges.append((u, v))
    sessions = tuple(Session(s.source, s.terminal, s.rate * T) for s in instance.sessions)
    return UnicastInstance(instance.names, tuple(edges), sessions), lineage
