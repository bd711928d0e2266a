"""Constructive code assignment.

Three constructions cover the feasible range for small connectivity
vectors: uniform vector routing when every session has max-flow n (each
session owns one time layer and routes all n of its symbols there), a
scalar code for two sessions with rates {1, m} and connectivity [1, m+1]
built by peeling spare paths and cascading partial sums along shared path
segments, and a T=2 construction for three unit-rate sessions with sorted
connectivity at least [1, 3, 3] that runs the scalar construction once per
time layer on a capped subgraph and lifts the result back.
"""

from __future__ import annotations

from typing import Mapping

from .flows import connectivity_level, edge_disjoint_paths
from .gf import PrimeField, Vector
from .graph import Session, UnicastInstance, _fresh_name, expand_time
from .netcode import (
    CodeError,
    NetworkCode,
    code_from_plan,
    is_routing,
    propagate,
    verify_code,
)
from .transform import (
    internal_degree_ok,
    lift_code,
    minimize,
    overlap_segments,
    structure,
)

__all__ = ["route_uniform", "assign_1m", "assign_133"]


def route_uniform(instance: UnicastInstance, q: int = 2) -> NetworkCode:
    """Vector routing for uniform connectivity [n, ..., n].

    Session alpha owns time layer alpha and routes its n expanded symbols
    over n edge-disjoint paths inside that layer, so no edge ever mixes
    symbols.  Requires unit rates and at most n sessions.
    """
    levels = connectivity_level(instance)
    n = levels[0]
    if any(v != n for v in levels):
        raise CodeError(f"uniform connectivity required, found {list(levels)}")
    if any(s.rate != 1 for s in instance.sessions):
        raise CodeError("unit session rates required")
    if len(levels) > n:
        raise CodeError(
            f"{len(levels)} sessions cannot each own one of {n} time layers"
        )
    expanded, _ = expand_time(instance, n)
    F = PrimeField(q)
    L = expanded.n_symbols
    plan: dict[int, Vector] = {}
    for alpha in range(len(levels)):
        offset = expanded.symbol_offsets()[alpha]
        for j, path in enumerate(edge_disjoint_paths(instance, alpha, n)):
            for eid in path.edge_ids:
                # layer-alpha copy of a base edge carries symbol j untouched
                plan[eid * n + alpha] = F.unit(L, offset + j)
    code = code_from_plan(instance, q, n, plan)
    if not is_routing(propagate(instance, code)):
        raise CodeError("internal error: routing property violated")
    if not verify_code(instance, code).all_pass:
        raise CodeError("internal error: routing code does not verify")
    return code


def assign_1m(instance: UnicastInstance, q: int = 2) -> NetworkCode:
    """Scalar code for two sessions with rates {1, m}, connectivity [1, m+1].

    On a minimal structured instance the single path P1 of the rate-1
    session shares at most one segment with each of the m+1 disjoint paths
    of the rate-m session.  Paths disjoint from P1 are peeled off largest
    index first, each routing the highest unassigned symbol.  The remaining
    paths all cross P1: ordered by where they meet it, path i feeds its
    symbol into a running sum carried by P1, and the last one injects the
    sum of all fed symbols so the final shared segment cancels back to the
    rate-1 symbol alone.  Both terminals then decode by differences.
    """
    if len(instance.sessions) != 2:
        raise CodeError("exactly two sessions required")
    if instance.sessions[0].rate != 1:
        raise CodeError("the first session must have rate 1")
    m = instance.sessions[1].rate
    levels = connectivity_level(instance)
    if levels != (1, m + 1):
        raise CodeError(f"connectivity {list(levels)} does not match [1, {m + 1}]")
    if not internal_degree_ok(instance):
        raise CodeError("structured instance required (internal degree above 3)")
    if minimize(instance).removed:
        raise CodeError("minimal instance required (some edge is removable)")

    F = PrimeField(q)
    L = instance.n_symbols
    off2 = instance.symbol_offsets()[1]
    x1 = F.unit(L, instance.symbol_offsets()[0])

    p1 = edge_disjoint_paths(instance, 0, 1)[0]
    p2 = edge_disjoint_paths(instance, 1, m + 1)
    segments = [overlap_segments(p1, path) for path in p2]
    if any(len(found) > 1 for found in segments):
        raise CodeError("a path pair has two overlap segments; input is not minimal")

    plan: dict[int, Vector] = {}

    def put(eid: int, vec: Vector) -> None:
        if plan.setdefault(eid, vec) != vec:
            raise CodeError("internal error: conflicting plan assignment")

    active = list(range(m + 1))
    pending = list(range(m))  # rate-m symbol slots, ascending
    while pending:
        spares = [i for i in active if not segments[i]]
        if not spares:
            break
        spare = max(spares)
        unit = F.unit(L, off2 + pending.pop())
        for eid in p2[spare].edge_ids:
            put(eid, unit)
        active.remove(spare)

    if pending:
        # every remaining path crosses P1; |active| == |pending| + 1
        ordered = sorted(
            active, key=lambda i: p1.edge_ids.index(segments[i][0].edges[0])
        )
        sums = [x1]
        for slot in pending:
            sums.append(F.vec_add(sums[-1], F.unit(L, off2 + slot)))
        fed_total = F.vec_add(sums[-1], F.vec_scale(q - 1, x1))
        last = len(ordered) - 1
        shared: set[int] = set()
        for rank, i in enumerate(ordered):
            seg = segments[i][0].edges
            shared.update(seg)
            inside = sums[rank + 1] if rank < last else x1
            feed = F.unit(L, off2 + pending[rank]) if rank < last else fed_total
            path = p2[i].edge_ids
            start = path.index(seg[0])
            for eid in path[:start]:
                put(eid, feed)
            for eid in seg:
                put(eid, inside)
            for eid in path[start + len(seg):]:
                put(eid, inside)
        current = x1
        for eid in p1.edge_ids:
            if eid in shared:
                current = plan[eid]
            else:
                put(eid, current)
    else:
        for eid in p1.edge_ids:
            put(eid, x1)

    code = code_from_plan(instance, q, 1, plan)
    if not verify_code(instance, code).all_pass:
        raise CodeError("internal error: constructed code does not verify")
    return code


def _cap_endpoints(
    instance: UnicastInstance, width: Mapping[int, int]
) -> UnicastInstance:
    """Attach private session endpoints joined by ``width[i]`` parallel edges.

    The attachment bounds session i's max-flow above by width[i] while any
    width[i] edge-disjoint paths survive below it, so the capped instance
    has connectivity exactly min(width[i], previous max-flow) per session.
    Original edge ids are preserved; attachments come after them.
    """
    names = list(instance.names)
    taken = set(names)
    edges = list(instance.edges)
    sessions: list[Session] = []
    for i, s in enumerate(instance.sessions):
        names.append(_fresh_name(f"~s{i + 1}", taken))
        src = len(names) - 1
        names.append(_fresh_name(f"~t{i + 1}", taken))
        dst = len(names) - 1
        edges.extend([(src, s.source)] * width[i])
        edges.extend([(s.terminal, dst)] * width[i])
        sessions.append(Session(src, dst, s.rate))
    return UnicastInstance(tuple(names), tuple(edges), tuple(sessions))


def assign_133(instance: UnicastInstance, q: int = 2) -> NetworkCode:
    """T=2 code for three unit-rate sessions, sorted connectivity >= [1,3,3].

    The session with the smallest max-flow splits its two expanded symbols
    across the time layers; each layer pairs it with one of the other two
    sessions and runs :func:`assign_1m` with m=2 on a capped, minimized,
    structured subgraph.  The per-layer scalar codes are lifted back stage
    by stage and embedded at their layer's edge copies; everything else
    carries zero.
    """
    if len(instance.sessions) != 3:
        raise CodeError("exactly three sessions required")
    if any(s.rate != 1 for s in instance.sessions):
        raise CodeError("unit session rates required")
    levels = connectivity_level(instance)
    order = sorted(range(3), key=lambda i: (levels[i], i))
    ranked = tuple(levels[i] for i in order)
    if ranked[0] < 1 or ranked[1] < 3 or ranked[2] < 3:
        raise CodeError(f"sorted connectivity {list(ranked)} is below [1, 3, 3]")

    a, b, c = order
    capped = _cap_endpoints(instance, {a: 1, b: 3, c: 3})
    union = sorted(
        {
            eid
            for i, k in ((a, 1), (b, 3), (c, 3))
            for path in edge_disjoint_paths(capped, i, k)
            for eid in path.edge_ids
        }
    )
    sub, sub_to_capped = capped.keep_edges(union)

    T = 2
    L = 2 * 3
    plan: dict[int, Vector] = {}
    for tau, partner in enumerate((b, c)):
        lead, mate = sub.sessions[a], sub.sessions[partner]
        layer = sub.with_sessions(
            (
                Session(lead.source, lead.terminal, 1),
                Session(mate.source, mate.terminal, 2),
            )
        )
        shrunk = minimize(layer)
        shaped = structure(shrunk.instance)
        trimmed = minimize(shaped.instance)
        scalar = assign_1m(trimmed.instance, q)
        # undo the post-gadget trim (removed edges carry zero), the gadgets,
        # and the first trim, tracking edge ids through each stage
        grown = code_from_plan(
            shaped.instance,
            q,
            1,
            {
                trimmed.edge_map[eid]: vec
                for eid, vec in enumerate(propagate(trimmed.instance, scalar))
            },
        )
        lifted = lift_code(shaped, shrunk.instance, grown)
        for eid, vec in enumerate(propagate(shrunk.instance, lifted)):
            if not any(vec):
                continue
            capped_eid = sub_to_capped[shrunk.edge_map[eid]]
            if capped_eid >= instance.n_edges:
                continue  # attachment edge, exists only under the cap
            out = [0] * L
            out[2 * a + tau] = vec[0]
            out[2 * partner] = vec[1]
            out[2 * partner + 1] = vec[2]
            plan[capped_eid * T + tau] = tuple(out)

    code = code_from_plan(instance, q, T, plan)
    if not verify_code(instance, code).all_pass:
        raise CodeError("internal error: layered construction does not verify")
    return code
