"""Labeled graphs with totally ordered edge sets.

A Graph has vertices 1..n and an ordered tuple of unordered edges
(i, j) with i <= j; the edge list never repeats a pair (edges form a
set), but loops (i, i) are allowed.  Reordering the edge list by a
permutation sigma multiplies the graph by sign(sigma); a Graph instance
is always kept with its edges in lexicographic order and the sign of
the sorting permutation is tracked separately (SignedGraph).

Vertex relabelings act with the same sign bookkeeping.  No attempt is
made here to canonicalize across isomorphism classes -- that is done by
brute force (iso_class) only where small-arity enumeration needs it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class Graph:
    """Labeled graph with lexicographically sorted edge tuple."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges, _sorted=False):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        norm = []
        for (i, j) in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError("edge (%s, %s) out of range 1..%d" % (i, j, n))
            norm.append((i, j) if i <= j else (j, i))
        if len(set(norm)) != len(norm):
            raise ValueError("repeated edge in edge list")
        self.n = n
        self.edges = tuple(norm)

    def __eq__(self, other):
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return "Graph(%r)" % self.format()

    @property
    def e(self):
        return len(self.edges)

    def degree(self):
        """fGC degree 2n - 2 - e of the suspended graph."""
        return 2 * self.n - 2 - len(self.edges)

    def valencies(self):
        """Per-vertex valency; a loop counts 2 toward its vertex."""
        val = [0] * (self.n + 1)
        for (i, j) in self.edges:
            val[i] += 1
            val[j] += 1
        return val[1:]

    def has_loop(self):
        return any(i == j for (i, j) in self.edges)

    # -- text formats --------------------------------------------------

    def format(self):
        """`n: i-j, i-j, ...` with the list order = the total edge order."""
        if not self.edges:
            return "%d:" % self.n
        return "%d: %s" % (self.n, ", ".join("%d-%d" % e for e in self.edges))

    @staticmethod
    def parse(text):
        head, _, rest = text.partition(":")
        n = int(head.strip())
        edges = []
        rest = rest.strip()
        if rest:
            for chunk in rest.split(","):
                a, _, b = chunk.strip().partition("-")
                edges.append((int(a), int(b)))
        return Graph(n, edges)

    def to_json(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @staticmethod
    def from_json(data):
        return Graph(data["n"], [tuple(e) for e in data["edges"]])


@dataclass(frozen=True)
class SignedGraph:
    graph: Graph
    sign: int


def _sort_sign(edges):
    """Sort an edge tuple, returning (sorted tuple, permutation sign)."""
    indexed = list(edges)
    # insertion sort with inversion count; edge lists are short
    inversions = 0
    for k in range(1, len(indexed)):
        item = indexed[k]
        pos = k
        while pos > 0 and indexed[pos - 1] > item:
            indexed[pos] = indexed[pos - 1]
            pos -= 1
            inversions += 1
        indexed[pos] = item
    return tuple(indexed), (-1) ** inversions


def canonicalize(n, edges):
    """Canonical (edge-sorted) SignedGraph of an arbitrary edge list."""
    norm = []
    for (i, j) in edges:
        norm.append((i, j) if i <= j else (j, i))
    sorted_edges, sign = _sort_sign(tuple(norm))
    return SignedGraph(Graph(n, sorted_edges), sign)


def canonicalize_graph(g: Graph) -> SignedGraph:
    """Graphs are stored canonical, so this is the identity with sign +1;
    kept as the spec'd entry point for raw edge lists."""
    return canonicalize(g.n, g.edges)


def relabel(g: Graph, sigma) -> SignedGraph:
    """Apply a vertex permutation and re-canonicalize.

    sigma maps old label -> new label, given as a dict or as a tuple
    with sigma[i-1] = image of i.  The sign is the edge-reordering sign;
    relabeling composes as a group action on signed graphs.
    """
    if isinstance(sigma, dict):
        table = [0] * (g.n + 1)
        for k, v in sigma.items():
            table[k] = v
    else:
        table = [0] + list(sigma)
    if sorted(table[1:]) != list(range(1, g.n + 1)):
        raise ValueError("not a permutation of 1..%d" % g.n)
    mapped = [(table[i], table[j]) for (i, j) in g.edges]
    return canonicalize(g.n, mapped)


def all_permutations(n):
    return itertools.permutations(range(1, n + 1))


def symmetrize(g: Graph) -> "GraVector":
    """Integer sum over all vertex relabelings (no normalization)."""
    out = GraVector(g.n)
    for sigma in all_permutations(g.n):
        sg = relabel(g, sigma)
        out.add_graph(sg.graph, sg.sign)
    return out


@dataclass(frozen=True)
class StructuralReport:
    connected: bool
    one_vertex_irreducible: bool
    min_valency: int


def _connected_on(vertices, edges):
    """Connectivity of the induced structure on a vertex subset."""
    verts = set(vertices)
    if not verts:
        return True
    adj = {v: set() for v in verts}
    for (i, j) in edges:
        if i in verts and j in verts and i != j:
            adj[i].add(j)
            adj[j].add(i)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def is_connected(g: Graph) -> bool:
    return _connected_on(range(1, g.n + 1), g.edges)


def is_one_vertex_irreducible(g: Graph) -> bool:
    """Connected and still connected after deleting any single vertex."""
    if not is_connected(g):
        return False
    for v in range(1, g.n + 1):
        rest = [u for u in range(1, g.n + 1) if u != v]
        if not _connected_on(rest, g.edges):
            return False
    return True


def structural_predicates(g: Graph) -> StructuralReport:
    vals = g.valencies()
    return StructuralReport(
        connected=is_connected(g),
        one_vertex_irreducible=is_one_vertex_irreducible(g),
        min_valency=min(vals) if vals else 0)


def is_gc_graph(g: Graph, allow_tadpoles=False) -> bool:
    """Membership predicate for Kontsevich's subcomplex: connected,
    1-vertex irreducible, all valencies >= 3.  Loops are excluded by
    default (`allow_tadpoles` opts back in); see README for the
    convention discussion."""
    if g.has_loop() and not allow_tadpoles:
        return False
    if min(g.valencies(), default=0) < 3:
        return False
    return is_one_vertex_irreducible(g)


class GraVector:
    """Finite Q-linear combination of canonical graphs of one arity."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for g, c in terms.items():
                self.add_graph(g, c)

    def add_graph(self, g: Graph, coeff):
        if g.n != self.n:
            raise ValueError("arity mismatch")
        coeff = Fraction(coeff)
        new = self.terms.get(g, Fraction(0)) + coeff
        if new == 0:
            self.terms.pop(g, None)
        else:
            self.terms[g] = new

    def add_signed(self, sg: SignedGraph, coeff=1):
        self.add_graph(sg.graph, sg.sign * Fraction(coeff))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("arity mismatch")
        out = GraVector(self.n, dict(self.terms))
        for g, c in other.terms.items():
            out.add_graph(g, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return GraVector(self.n)
        return GraVector(self.n, {g: c * v for g, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.n == other.n and self.terms == other.terms

    def relabeled(self, sigma):
        out = GraVector(self.n)
        for g, c in self.terms.items():
            sg = relabel(g, sigma)
            out.add_graph(sg.graph, sg.sign * c)
        return out

    def symmetrized(self):
        out = GraVector(self.n)
        for sigma in all_permutations(self.n):
            for g, c in self.terms.items():
                sg = relabel(g, sigma)
                out.add_graph(sg.graph, sg.sign * c)
        return out

    def is_symmetric(self):
        for sigma in all_permutations(self.n):
            if self.relabeled(sigma) != self:
                return False
        return True

    def degrees(self):
        return sorted({g.degree() for g in self.terms})

    def __repr__(self):
        if not self.terms:
            return "GraVector(%d, 0)" % self.n
        bits = ["%s * [%s]" % (c, g.format())
                for g, c in sorted(self.terms.items(),
                                   key=lambda gc: gc[0].edges)]
        return "GraVector(%d, %s)" % (self.n, " + ".join(bits))


# -- isomorphism classes (brute force, small n only) ------------------

@lru_cache(maxsize=None)
def _perm_tables(n):
    return tuple(tuple(p) for p in itertools.permutations(range(1, n + 1)))


def _refine_colors(g: Graph):
    """1-WL color refinement; returns per-vertex color ids (1-indexed pad)."""
    adj = [[] for _ in range(g.n + 1)]
    loops = [0] * (g.n + 1)
    for (i, j) in g.edges:
        if i == j:
            loops[i] += 1
        else:
            adj[i].append(j)
            adj[j].append(i)
    colors = [0] * (g.n + 1)
    for v in range(1, g.n + 1):
        colors[v] = hash((len(adj[v]), loops[v]))
    for _ in range(g.n):
        new = [0] * (g.n + 1)
        for v in range(1, g.n + 1):
            new[v] = hash((colors[v], tuple(sorted(colors[w] for w in adj[v]))))
        if new[1:] == colors[1:]:
            break
        colors = new
    return colors


def _candidate_perms(g: Graph):
    """Permutations compatible with the refined coloring: vertices are
    grouped by color (colors ordered by a label-free invariant) and only
    within-group arrangements are enumerated."""
    colors = _refine_colors(g)
    groups = {}
    for v in range(1, g.n + 1):
        groups.setdefault(colors[v], []).append(v)
    # order color classes canonically: by (size, sorted valencies signature)
    vals = g.valencies()
    keyed = sorted(
        groups.values(),
        key=lambda vs: (len(vs), sorted(vals[v - 1] for v in vs),
                        min(colors[v] for v in vs)))
    label_blocks = []
    next_label = 1
    for vs in keyed:
        label_blocks.append(list(range(next_label, next_label + len(vs))))
        next_label += len(vs)
    for assignment in itertools.product(
            *[itertools.permutations(block) for block in label_blocks]):
        table = [0] * (g.n + 1)
        for vs, labels in zip(keyed, assignment):
            for v, lab in zip(vs, labels):
                table[v] = lab
        yield tuple(table[1:])


class IsoClass:
    """Result of brute-force isomorphism canonicalization.

    rep: canonical representative graph
    sign: SymContribution sign, i.e. Sym(g) = sign * Sym(rep)
    dead: True when the class carries an odd automorphism, so the
          symmetrization of any member is the zero vector.
    """

    __slots__ = ("rep", "sign", "dead")

    def __init__(self, rep, sign, dead):
        self.rep = rep
        self.sign = sign
        self.dead = dead


_iso_cache = {}


def iso_class(g: Graph) -> IsoClass:
    """Brute-force (refinement-pruned) isomorphism class of g.

    Only intended for n <= 8.  The candidate permutations always include
    every automorphism of g, so the odd-automorphism flag is exact.
    """
    cached = _iso_cache.get(g)
    if cached is not None:
        return cached
    best = None
    best_signs = set()
    for sigma in _candidate_perms(g):
        sg = relabel(g, sigma)
        key = sg.graph.edges
        if best is None or key < best[0]:
            best = (key, sg.graph)
            best_signs = {sg.sign}
        elif key == best[0]:
            best_signs.add(sg.sign)
    rep = best[1]
    dead = len(best_signs) == 2
    cls = IsoClass(rep, best_signs.pop(), dead)
    _iso_cache[g] = cls
    if g != rep:
        # the representative is its own class with sign +1
        if rep not in _iso_cache:
            _iso_cache[rep] = IsoClass(rep, 1, dead)
    return cls


def symmetrization_is_zero(g: Graph) -> bool:
    """True iff the integer symmetrization of g cancels to zero, i.e. g
    has an automorphism inducing an odd edge permutation."""
    return iso_class(g).dead


def graphs_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return iso_class(g).rep == iso_class(h).rep


def enumerate_graphs(n, e, allow_loops=True):
    """All canonical labeled graphs with n vertices and e edges."""
    pool = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)
            if allow_loops or i != j]
    for combo in itertools.combinations(pool, e):
        yield Graph(n, combo)
