"""Wheel graphs and the orientation lemma behind the wheel reduction.

For a labeled graph with v = n+1 vertices, call an orientation VALID
when every vertex with label <= n has at most one out-going edge (the
last vertex is unconstrained).  The lemma verified here exhaustively:
among connected, 1-vertex-irreducible, min-valency-3 simple graphs,
valid orientations exist precisely for relabelings of the n-wheel with
the hub in the last slot, and a wheel admits exactly two (the two ways
around the rim).

The search enumerates edge directions depth-first with two exact
prunes: a low vertex already owning an out-edge cannot take another,
and the edges not incident to the hub still awaiting a direction can
never exceed the remaining out-capacity of the low vertices.  Loops are
always out-edges at their vertex (both "directions" coincide), so they
carry a fixed marker and do not enlarge the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import Graph, is_one_vertex_irreducible, iso_class, relabel


def wheel(n: int) -> Graph:
    """The n-wheel: rim cycle 1..n plus hub n+1; n odd >= 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError("wheel size must be odd and >= 3")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    edges += [(i, n + 1) for i in range(1, n + 1)]
    return Graph(n + 1, sorted(edges))


@dataclass(frozen=True)
class Orientation:
    """Per-edge directions: entry k is the head vertex of edge k
    (loops store their vertex)."""
    graph: Graph
    heads: tuple

    def out_degrees(self):
        out = [0] * (self.graph.n + 1)
        for (a, b), head in zip(self.graph.edges, self.heads):
            if a == b:
                out[a] += 1
            else:
                out[a + b - head] += 1
        return out[1:]


def _search(g: Graph, require_exactly_one=False, find_all=True,
            constrained_limit=None):
    """DFS over edge directions.

    require_exactly_one: every vertex (including the last) must end
        with out-degree exactly 1; otherwise vertices 1..n-1... (low
        vertices, label < n+1) must end with out-degree <= 1.
    Returns the list of head tuples (find_all) or a single witness.
    """
    n1 = g.n
    hub = n1 if constrained_limit is None else constrained_limit + 1
    edges = list(g.edges)
    order = sorted(range(len(edges)),
                   key=lambda k: (edges[k][0] == hub or edges[k][1] == hub,))
    out = [0] * (n1 + 1)
    # low-incident budget: non-loop edges with both endpoints below hub
    low_pending = sum(1 for (a, b) in edges
                      if a != hub and b != hub and a != b)
    results = []

    def capacity():
        return sum(1 for v in range(1, n1 + 1)
                   if v != hub and out[v] == 0)

    def limit(v):
        if require_exactly_one:
            return 1
        return 1 if v != hub else len(edges)

    def feasible(pending_low):
        if require_exactly_one:
            # every vertex still needs out-degree exactly 1 eventually;
            # cheap necessary condition: no vertex over 1 (checked on
            # assignment) -- nothing more here
            return True
        return pending_low <= capacity()

    def dfs(k, pending_low):
        if not feasible(pending_low):
            return False
        if k == len(edges):
            if require_exactly_one and any(
                    out[v] != 1 for v in range(1, n1 + 1)):
                return False
            heads = [0] * len(edges)
            for pos, tail_head in assignment.items():
                heads[pos] = tail_head[1]
            results.append(tuple(heads))
            return not find_all
        pos = order[k]
        a, b = edges[pos]
        if a == b:
            # loop: one out-edge at its vertex, fixed marker
            if out[a] + 1 > limit(a):
                return False
            out[a] += 1
            assignment[pos] = (a, a)
            done = dfs(k + 1, pending_low)
            del assignment[pos]
            out[a] -= 1
            return done
        is_low = a != hub and b != hub
        next_pending = pending_low - (1 if is_low else 0)
        for tail, head in ((a, b), (b, a)):
            if out[tail] + 1 > limit(tail):
                continue
            out[tail] += 1
            assignment[pos] = (tail, head)
            if dfs(k + 1, next_pending):
                return True
            del assignment[pos]
            out[tail] -= 1
        return False

    assignment = {}
    dfs(0, low_pending)
    return results


def valid_orientations(g: Graph):
    """All orientations where each vertex labeled <= n has at most one
    out-going edge (n+1 = vertex count); exhaustive, order-stable."""
    heads = _search(g)
    return [Orientation(g, h) for h in sorted(heads)]


def has_valid_orientation(g: Graph) -> bool:
    return bool(_search(g, find_all=False))


def one_out_edge_obstruction(g: Graph) -> bool:
    """True iff NO orientation gives every vertex exactly one out-edge.

    Precondition: all valencies >= 3 (reported as ValueError); for such
    graphs the answer is always True (e > n by a pigeonhole count).
    """
    vals = g.valencies()
    if min(vals) < 3:
        raise ValueError("one_out_edge_obstruction requires valency >= 3")
    if len(g.edges) != g.n:
        return True  # out-degrees sum to e; exactly-one needs e = n
    return not _search(g, require_exactly_one=True, find_all=False)


def _wheel_any_parity(n: int) -> Graph:
    """Rim-plus-hub graph for any n >= 3; only odd n give nonzero
    cochains (even wheels have a sign-reversing reflection), but the
    orientation lemma holds for both parities."""
    if n < 3:
        raise ValueError("wheel size must be >= 3")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    edges += [(i, n + 1) for i in range(1, n + 1)]
    return Graph(n + 1, sorted(edges))


def is_relabeled_wheel(g: Graph) -> bool:
    """Is g = sigma(wheel) for a relabeling fixing the last vertex (hub)?
    Wheels of either parity count; the cochain-level statement then
    needs the parity of the symmetrization on top of this."""
    n = g.n - 1
    if n < 3:
        return False
    w = _wheel_any_parity(n)
    if len(g.edges) != len(w.edges):
        return False
    hub_val = g.valencies()[g.n - 1]
    if hub_val != n:
        return False
    for sigma in itertools.permutations(range(1, n + 1)):
        table = list(sigma) + [g.n]
        if relabel(w, table).graph == g:
            return True
    return False


@dataclass
class WheelCheckEntry:
    graph: Graph
    orientation_count: int
    is_wheel: bool

    def to_json(self):
        return {
            "graph": self.graph.format(),
            "valid_orientation_count": self.orientation_count,
            "is_wheel": self.is_wheel,
        }


@dataclass
class WheelCheckReport:
    max_vertices: int
    graphs_scanned: int
    admitting: list  # WheelCheckEntry for every graph with >= 1 valid orientation
    all_wheels: bool

    def to_json(self):
        return {
            "schema_version": 1,
            "max_vertices": self.max_vertices,
            "graphs_scanned": self.graphs_scanned,
            "admitting": [e.to_json() for e in self.admitting],
            "all_wheels": self.all_wheels,
        }


def _gc_candidates(v):
    """Labeled simple graphs on v vertices: connected, 1-vertex
    irreducible, min valency >= 3 (the subcomplex predicates; loopless
    -- see module docstring of graphs for the tadpole convention)."""
    pool = [(i, j) for i in range(1, v + 1) for j in range(i + 1, v + 1)]
    emin = (3 * v + 1) // 2
    for e in range(emin, len(pool) + 1):
        for combo in itertools.combinations(pool, e):
            val = [0] * (v + 1)
            for (a, b) in combo:
                val[a] += 1
                val[b] += 1
            if min(val[1:]) < 3:
                continue
            g = Graph(v, combo)
            if not is_one_vertex_irreducible(g):
                continue
            yield g


def check_wheels_only(max_vertices: int, progress=None) -> WheelCheckReport:
    """Exhaustive orientation scan of every GC-predicate graph with at
    most max_vertices vertices; see the module docstring for the claim."""
    if max_vertices > 8:
        raise ValueError("max_vertices capped at 8")
    admitting = []
    scanned = 0
    for v in range(4, max_vertices + 1):
        for g in _gc_candidates(v):
            scanned += 1
            if progress and scanned % 20000 == 0:
                progress(scanned)
            if has_valid_orientation(g):
                count = len(valid_orientations(g))
                admitting.append(WheelCheckEntry(
                    graph=g,
                    orientation_count=count,
                    is_wheel=is_relabeled_wheel(g)))
    all_wheels = all(e.is_wheel and e.orientation_count == 2
                     for e in admitting)
    return WheelCheckReport(
        max_vertices=max_vertices,
        graphs_scanned=scanned,
        admitting=admitting,
        all_wheels=all_wheels)
