"""Linear network codes: local rules, propagation, decodability, file io.

A code over GF(q) with vector length T lives on the T-expanded instance
(edge copy tau of edge e has id ``e*T + tau``).  Each expanded edge has a
local rule: coefficients over the in-edges of its tail plus injection
coefficients over the source symbols observed there.  Global coding vectors
(length L = total expanded rate) follow by topological propagation, and a
terminal decodes iff its own unit vectors lie in the span of its in-edge
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .gf import PrimeField, Vector, in_span
from .graph import UnicastInstance, expand_time


class CodeError(ValueError):
    """Raised for structurally invalid codes or malformed code files."""


@dataclass(frozen=True, slots=True)
class LocalRule:
    """Coefficients of one edge: ``in_coeffs`` over in-edge ids of the tail,
    ``src_coeffs`` over observed source-symbol indices.  Zero coefficients
    are omitted; keys ascend."""

    in_coeffs: tuple[tuple[int, int], ...] = ()
    src_coeffs: tuple[tuple[int, int], ...] = ()


EMPTY_RULE = LocalRule()


@dataclass(frozen=True, slots=True)
class NetworkCode:
    """Local rules for every edge of the T-expanded instance, in id order."""

    q: int
    T: int
    rules: tuple[LocalRule, ...]

    def validate(self, instance: UnicastInstance) -> UnicastInstance:
        """Check structural fit against ``instance``; returns the expanded
        instance the code lives on."""
        expanded, _ = expand_time(instance, self.T)
        if len(self.rules) != expanded.n_edges:
            raise CodeError(
                f"code covers {len(self.rules)} edges, expanded instance has "
                f"{expanded.n_edges}"
            )
        PrimeField(self.q)
        for eid, rule in enumerate(self.rules):
            tail = expanded.tail(eid)
            allowed_in = set(expanded.in_edges[tail])
            allowed_src = set(expanded.observed_symbols(tail))
            for keys, allowed, what in (
                (rule.in_coeffs, allowed_in, "in-edge"),
                (rule.src_coeffs, allowed_src, "source symbol"),
            ):
                prev = -1
                for key, coeff in keys:
                    if key not in allowed:
                        raise CodeError(
                            f"edge {eid}: coefficient on {what} {key} not "
                            f"available at its tail"
                        )
                    if key <= prev:
                        raise CodeError(f"edge {eid}: {what} keys must ascend")
                    prev = key
                    if not 1 <= coeff < self.q:
                        raise CodeError(
                            f"edge {eid}: coefficient {coeff} outside GF({self.q})"
                        )
        return expanded


def zero_code(q: int, T: int, instance: UnicastInstance) -> NetworkCode:
    expanded, _ = expand_time(instance, T)
    return NetworkCode(q, T, (EMPTY_RULE,) * expanded.n_edges)


def propagate(instance: UnicastInstance, code: NetworkCode) -> tuple[Vector, ...]:
    """Global coding vectors per expanded edge, in topological edge order."""
    expanded = code.validate(instance)
    F = PrimeField(code.q)
    L = expanded.n_symbols
    vectors: list[Vector] = [F.zeros(L)] * expanded.n_edges
    for eid in expanded.edges_in_topo_order():
        rule = code.rules[eid]
        acc = F.zeros(L)
        for j, coeff in rule.in_coeffs:
            acc = F.vec_add(acc, F.vec_scale(coeff, vectors[j]))
        for k, coeff in rule.src_coeffs:
            acc = F.vec_add(acc, F.vec_scale(coeff, F.unit(L, k)))
        vectors[eid] = acc
    return tuple(vectors)


def simulate(
    instance: UnicastInstance, code: NetworkCode, source_values: Vector
) -> tuple[int, ...]:
    """Push concrete source values through the local rules edge by edge.

    Independent of :func:`propagate`; used to cross-check that local and
    global views agree.
    """
    expanded = code.validate(instance)
    F = PrimeField(code.q)
    if len(source_values) != expanded.n_symbols:
        raise CodeError("source value vector has the wrong length")
    values = [0] * expanded.n_edges
    for eid in expanded.edges_in_topo_order():
        rule = code.rules[eid]
        acc = 0
        for j, coeff in rule.in_coeffs:
            acc = F.add(acc, F.mul(coeff, values[j]))
        for k, coeff in rule.src_coeffs:
            acc = F.add(acc, F.mul(coeff, source_values[k]))
        values[eid] = acc
    return tuple(values)


@dataclass(frozen=True, slots=True)
class TerminalReport:
    """Decodability of one session at its terminal.

    ``decoders`` holds, per own source symbol, the combination coefficients
    over the terminal's in-edges (ascending id) proving recovery, or None.
    """

    session: int
    passed: bool
    in_edges: tuple[int, ...]
    decoders: tuple[Vector | None, ...]


@dataclass(frozen=True, slots=True)
class VerifyResult:
    reports: tuple[TerminalReport, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.reports)


def verify_code(instance: UnicastInstance, code: NetworkCode) -> VerifyResult:
    """Check every session's terminal: own unit vectors must lie in the span
    of the global vectors received on its in-edges."""
    expanded = code.validate(instance)
    vectors = propagate(instance, code)
    L = expanded.n_symbols
    F = PrimeField(code.q)
    reports: list[TerminalReport] = []
    for i, session in enumerate(expanded.sessions):
        fed = tuple(expanded.in_edges[session.terminal])
        rows = [vectors[e] for e in fed]
        decoders: list[Vector | None] = []
        for k in expanded.session_symbols(i):
            decoders.append(in_span(F.unit(L, k), rows, code.q))
        reports.append(
            TerminalReport(
                session=i,
                passed=all(d is not None for d in decoders),
                in_edges=fed,
                decoders=tuple(decoders),
            )
        )
    return VerifyResult(tuple(reports))


def is_routing(vectors: Iterable[Vector]) -> bool:
    """True when every vector carries at most one symbol, with coefficient 1."""
    for vec in vectors:
        nonzero = [c for c in vec if c != 0]
        if len(nonzero) > 1 or (nonzero and nonzero[0] != 1):
            return False
    return True


def code_from_plan(
    instance: UnicastInstance,
    q: int,
    T: int,
    plan: Mapping[int, Vector],
) -> NetworkCode:
    """Realize target global vectors as local rules.

    ``plan`` maps expanded edge ids to the vectors they must carry (missing
    edges carry zero).  Each edge's rule is solved from its tail's in-edge
    vectors and observed unit injections; unrealizable targets raise.
    """
    expanded, _ = expand_time(instance, T)
    F = PrimeField(q)
    L = expanded.n_symbols
    vectors: list[Vector] = [F.zeros(L)] * expanded.n_edges
    rules: list[LocalRule] = [EMPTY_RULE] * expanded.n_edges
    for eid in expanded.edges_in_topo_order():
        target = plan.get(eid, F.zeros(L))
        if len(target) != L:
            raise CodeError(f"edge {eid}: plan vector has the wrong length")
        tail = expanded.tail(eid)
        in_ids = list(expanded.in_edges[tail])
        observed = list(expanded.observed_symbols(tail))
        rows = [vectors[j] for j in in_ids] + [F.unit(L, k) for k in observed]
        coeffs = in_span(target, rows, q)
        if coeffs is None:
            raise CodeError(f"edge {eid}: plan vector not realizable at its tail")
        n_in = len(in_ids)
        rules[eid] = LocalRule(
            in_coeffs=tuple(
                (j, c) for j, c in zip(in_ids, coeffs[:n_in]) if c != 0
            ),
            src_coeffs=tuple(
                (k, c) for k, c in zip(observed, coeffs[n_in:]) if c != 0
            ),
        )
        vectors[eid] = target
    return NetworkCode(q, T, tuple(rules))


# -- code file format -------------------------------------------------------


def serialize_code(
    code: NetworkCode, globals_table: tuple[Vector, ...] | None = None
) -> str:
    """Canonical text form: header, then one line per expanded edge, then an
    optional global-vector dump."""
    lines = [f"field q={code.q}", f"vector T={code.T}"]
    for eid, rule in enumerate(code.rules):
        parts = [f"e{j}={c}" for j, c in rule.in_coeffs]
        parts += [f"x{k}={c}" for k, c in rule.src_coeffs]
        rhs = " " + " ".join(parts) if parts else ""
        lines.append(f"code {eid} :{rhs}")
    if globals_table is not None:
        for eid, vec in enumerate(globals_table):
            lines.append(f"global {eid} : " + ",".join(str(c) for c in vec))
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> tuple[NetworkCode, dict[int, Vector] | None]:
    """Parse a code file; returns the code and the global table if present.

    Raises:
        CodeError: with a 1-based line number on malformed input.
    """
    q: int | None = None
    T: int | None = None
    rule_lines: dict[int, LocalRule] = {}
    globals_table: dict[int, Vector] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "field":
            if len(parts) != 2 or not parts[1].startswith("q="):
                raise CodeError(f"line {lineno}: expected 'field q=<q>'")
            q = _parse_int(parts[1][2:], lineno)
        elif kind == "vector":
            if len(parts) != 2 or not parts[1].startswith("T="):
                raise CodeError(f"line {lineno}: expected 'vector T=<T>'")
            T = _parse_int(parts[1][2:], lineno)
        elif kind == "code":
            if len(parts) < 3 or parts[2] != ":":
                raise CodeError(f"line {lineno}: expected 'code <edge-id> : ...'")
            eid = _parse_int(parts[1], lineno)
            if eid in rule_lines:
                raise CodeError(f"line {lineno}: duplicate code line for edge {eid}")
            in_coeffs: list[tuple[int, int]] = []
            src_coeffs: list[tuple[int, int]] = []
            for token in parts[3:]:
                if "=" not in token or token[0] not in ("e", "x"):
                    raise CodeError(f"line {lineno}: bad coefficient {token!r}")
                key_text, _, coeff_text = token.partition("=")
                key = _parse_int(key_text[1:], lineno)
                coeff = _parse_int(coeff_text, lineno)
                (in_coeffs if token[0] == "e" else src_coeffs).append((key, coeff))
            rule_lines[eid] = LocalRule(
                in_coeffs=tuple(sorted((j, c) for j, c in in_coeffs if c != 0)),
                src_coeffs=tuple(sorted((k, c) for k, c in src_coeffs if c != 0)),
            )
        elif kind == "global":
            if len(parts) != 4 or parts[2] != ":":
                raise CodeError(f"line {lineno}: expected 'global <edge-id> : v,...'")
            eid = _parse_int(parts[1], lineno)
            globals_table[eid] = tuple(
                _parse_int(v, lineno) for v in parts[3].split(",")
            )
        else:
            raise CodeError(f"line {lineno}: unknown directive {kind!r}")
    if q is None or T is None:
        raise CodeError("missing 'field q=' or 'vector T=' header")
    n_edges = max(rule_lines, default=-1) + 1
    if sorted(rule_lines) != list(range(n_edges)):
        raise CodeError("code lines must cover edge ids 0..N-1 exactly")
    rules = tuple(rule_lines[eid] for eid in range(n_edges))
    return NetworkCode(q, T, rules), (globals_table or None)


def _parse_int(text: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise CodeError(f"line {lineno}: bad integer {text!r}") from None


def load_code(path: str) -> tuple[NetworkCode, dict[int, Vector] | None]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def save_code(
    code: NetworkCode,
    path: str,
    globals_table: tuple[Vector, ...] | None = None,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_code(code, globals_table))
