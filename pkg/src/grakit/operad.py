"""Operadic structure on graph spaces.

insert(outer, i, inner) is the elementary operadic composition: the
inner graph replaces vertex i of the outer graph, edge-endpoints
formerly at i are reattached to inner vertices in all possible ways,
and the edge order of a summand is (outer edges, then inner edges).
Reconnections that would repeat an edge are dropped: a graph with a
doubled edge equals minus itself under the edge-order sign relation,
hence is zero.

The convolution Lie bracket on symmetric graph vectors is normalized as

    (x o y)_n = 1/(k! l!) * Sym( sum_i  x_k o_i y_l ),    n = k+l-1
    [x, y]    = x o y - (-1)^{|x||y|} y o x

where Sym is the plain sum over all vertex relabelings.  This
normalization is the unique scaling under which the two-vertex one-edge
graph is a Maurer-Cartan element ([mc, mc] = 0) and d = [mc, -] squares
to zero; both facts are pinned by tests rather than trusted.

For differentials of symmetrized single graphs there is a fast path:

    d Sym(g) = Sym( mc_expansion(g) )

with mc_expansion local in g (no symmetrization of intermediate sums),
which makes the exhaustive d^2 = 0 sweeps tractable.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graphs import (Graph, GraVector, all_permutations, canonicalize,
                     is_gc_graph, iso_class, relabel)


def insert(outer: Graph, i: int, inner: Graph) -> GraVector:
    """Elementary insertion outer o_i inner as a GraVector."""
    if not 1 <= i <= outer.n:
        raise ValueError("insertion vertex %d out of range" % i)
    n, k = outer.n, inner.n
    result = GraVector(n + k - 1)

    def shift_outer(v):
        # outer labels: 1..i-1 keep, i+1..n shift up by k-1
        return v if v < i else v + k - 1

    def shift_inner(v):
        # inner labels occupy i..i+k-1
        return v + i - 1

    fixed = []
    moving = []  # (edge position, endpoints at i count, other endpoint)
    for (a, b) in outer.edges:
        if a != i and b != i:
            fixed.append((shift_outer(a), shift_outer(b)))
            moving.append(None)
        elif a == i and b == i:
            moving.append(("loop",))
            fixed.append(None)
        else:
            other = b if a == i else a
            moving.append(("half", shift_outer(other)))
            fixed.append(None)

    inner_edges = [(shift_inner(a), shift_inner(b)) for (a, b) in inner.edges]

    # choices: each endpoint at vertex i picks an inner vertex
    slots = []
    for m in moving:
        if m is None:
            slots.append((None,))
        elif m[0] == "loop":
            slots.append(tuple(itertools.product(range(1, k + 1), repeat=2)))
        else:
            slots.append(tuple(range(1, k + 1)))

    for choice in itertools.product(*slots):
        edges = []
        ok = True
        for pos, m in enumerate(moving):
            if m is None:
                edges.append(fixed[pos])
            elif m[0] == "loop":
                w1, w2 = choice[pos]
                edges.append((shift_inner(w1), shift_inner(w2)))
            else:
                edges.append((shift_inner(choice[pos]), m[1]))
        edges.extend(inner_edges)
        seen = set()
        for (a, b) in edges:
            key = (a, b) if a <= b else (b, a)
            if key in seen:
                ok = False
                break
            seen.add(key)
        if not ok:
            continue
        result.add_signed(canonicalize(n + k - 1, edges))
    return result


def insert_vector(outer: GraVector, i: int, inner: GraVector) -> GraVector:
    out = GraVector(outer.n + inner.n - 1)
    for g, cg in outer.terms.items():
        for h, ch in inner.terms.items():
            out = out + insert(g, i, h).scale(cg * ch)
    return out


def iota(generator: str) -> Graph:
    """Images of the two Gerstenhaber generators inside the graph operad."""
    if generator == "product":
        return Graph(2, [])
    if generator == "bracket":
        return Graph(2, [(1, 2)])
    raise ValueError("unknown generator %r" % generator)


MC_GRAPH = Graph(2, [(1, 2)])


class GCCochain:
    """Finitely supported symmetric graph cochain: arity -> GraVector.

    Every stored GraVector must be fixed by all vertex relabelings, and
    all graphs must share one cohomological degree 2n - 2 - e.
    """

    def __init__(self, terms=None, check=True):
        self.terms = {}
        if terms:
            for n, vec in terms.items():
                if vec.is_zero():
                    continue
                self.terms[n] = vec
        if check:
            degs = {d for vec in self.terms.values() for d in vec.degrees()}
            if len(degs) > 1:
                raise ValueError("cochain is not degree-homogeneous: %s" % degs)

    @staticmethod
    def from_graph(g: Graph, symmetrized=True):
        vec = GraVector(g.n, {g: 1})
        if symmetrized:
            vec = vec.symmetrized()
        return GCCochain({g.n: vec})

    @staticmethod
    def zero():
        return GCCochain({})

    def degree(self):
        for vec in self.terms.values():
            degs = vec.degrees()
            if degs:
                return degs[0]
        return None

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        arities = set(self.terms) | set(other.terms)
        out = {}
        for n in arities:
            v = GraVector(n)
            if n in self.terms:
                v = v + self.terms[n]
            if n in other.terms:
                v = v + other.terms[n]
            out[n] = v
        return GCCochain(out)

    def scale(self, c):
        return GCCochain({n: v.scale(c) for n, v in self.terms.items()},
                         check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        keys = set(self.terms) | set(other.terms)
        for n in keys:
            a = self.terms.get(n, GraVector(n))
            b = other.terms.get(n, GraVector(n))
            if a != b:
                return False
        return True

    def is_symmetric(self):
        return all(vec.is_symmetric() for vec in self.terms.values())

    def is_gc(self, allow_tadpoles=False):
        return all(is_gc_graph(g, allow_tadpoles)
                   for vec in self.terms.values() for g in vec.terms)

    def __repr__(self):
        return "GCCochain(%s)" % {n: v for n, v in sorted(self.terms.items())}


MC = GCCochain({2: GraVector(2, {MC_GRAPH: 1})})


def _circ_arity(x: GraVector, y: GraVector) -> GraVector:
    """(x o y) at one arity pair: 1/(k! l!) Sym(sum_i x o_i y)."""
    k, l = x.n, y.n
    raw = GraVector(k + l - 1)
    for i in range(1, k + 1):
        raw = raw + insert_vector(x, i, y)
    from math import factorial
    return raw.symmetrized().scale(
        Fraction(1, factorial(k) * factorial(l)))


def circ(x: GCCochain, y: GCCochain) -> GCCochain:
    out = GCCochain.zero()
    for k, xv in x.terms.items():
        for l, yv in y.terms.items():
            out = out + GCCochain({k + l - 1: _circ_arity(xv, yv)})
    return out


def conv_bracket(x: GCCochain, y: GCCochain) -> GCCochain:
    """Convolution Lie bracket of homogeneous symmetric cochains."""
    dx, dy = x.degree(), y.degree()
    if dx is None or dy is None:
        return GCCochain.zero()
    sign = (-1) ** (dx * dy)
    return circ(x, y) - circ(y, x).scale(sign)


def differential(x: GCCochain) -> GCCochain:
    """d = [mc, -]; raises degree by one."""
    return conv_bracket(MC, x)


# -- fast differential on symmetrized single graphs --------------------

def mc_expansion(g: Graph) -> GraVector:
    """Local expansion D with d Sym(g) = Sym(D(g)).

    D(g) = 1/2 [ mc o_1 g + mc o_2 g - (-1)^{|g|} sum_j g o_j mc ].
    Derived from the bracket normalization by relabeling-equivariance of
    the insertions; tested against the direct differential.
    """
    n = g.n
    out = insert(MC_GRAPH, 1, g) + insert(MC_GRAPH, 2, g)
    sign = (-1) ** g.degree()
    acc = GraVector(n + 1)
    for j in range(1, n + 1):
        acc = acc + insert(g, j, MC_GRAPH)
    out = out - acc.scale(sign)
    return out.scale(Fraction(1, 2))


def mc_expansion_vector(v: GraVector) -> GraVector:
    out = GraVector(v.n + 1)
    for g, c in v.terms.items():
        out = out + mc_expansion(g).scale(c)
    return out


def sym_class_reduce(v: GraVector):
    """Reduce Sym(v) to per-isomorphism-class totals.

    Returns {representative graph: coefficient} with dead classes (odd
    automorphism, zero symmetrization) dropped; Sym(v) = 0 iff empty.
    """
    totals = {}
    for g, c in v.terms.items():
        cls = iso_class(g)
        if cls.dead:
            continue
        new = totals.get(cls.rep, Fraction(0)) + cls.sign * c
        if new == 0:
            totals.pop(cls.rep, None)
        else:
            totals[cls.rep] = new
    return totals


def differential_squared_vanishes(g: Graph) -> bool:
    """Exact check that d(d Sym(g)) = 0, via the fast local expansion.

    Sym(D(D(g))) = 0 iff every isomorphism class either cancels
    numerically or symmetrizes to zero; sym_class_reduce decides both.
    """
    if iso_class(g).dead:
        return True
    first = sym_class_reduce(mc_expansion(g))
    second = GraVector(g.n + 2)
    for rep, c in first.items():
        second = second + mc_expansion(rep).scale(c)
    return not sym_class_reduce(second)
