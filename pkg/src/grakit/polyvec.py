"""Action of labeled graphs on polyvector fields.

Polyvector fields on the formal d-disk are polynomials in even
coordinates t^1..t^d (weight 1) and odd symbols xi_1..xi_d (degree 1):
wedge is the supercommutative product, and the one-edge graph acts as
the Schouten bracket.

A graph acts through one contraction operator per edge, applied in the
edge order.  The operator of an edge (i, j) is

    sum_a  (d/dxi_a at slot i) (d/dt_a at slot j)
         + (d/dt_a at slot i) (d/dxi_a at slot j)

with the Koszul sign rule across slots; afterwards all slots are
multiplied together.  Loop edges (i, i) apply both summands on the one
slot, giving twice the divergence.

The implementation keeps the tensor factored: a state is a list of
branches (coeff, [slot elements]) with degree-homogeneous slots, and an
edge operator maps each branch to at most 2d new branches.  Branches
with a zero slot are dropped immediately, which is what makes wheel
evaluations on connection forms tractable (almost all orientations die
early).

The same code runs over any generator table that contains the t/xi
block, so polyvectors with exterior-form coefficients (connection
forms) work unchanged; extra odd generators just participate in the
sign rule through their degrees.

Operators of distinct edges anticommute exactly like the edge
transpositions in the graph sign relation; edges are applied first
edge = outermost operator.  The global sign normalization is pinned by
the Gerstenhaber-axiom and operad-map tests.
"""

from __future__ import annotations

from fractions import Fraction

from .graphs import Graph, GraVector
from .superalg import EVEN, ODD, Generator, GeneratorTable, SuperElement


def polyvector_table(d, cutoff=None, extra=()):
    """Table with t^1..t^d (even, weight 1) and xi_1..xi_d (odd, deg 1)."""
    gens = [Generator("t%d" % a, EVEN, 0, 1) for a in range(1, d + 1)]
    gens += [Generator("xi%d" % a, ODD, 1, 0) for a in range(1, d + 1)]
    gens += list(extra)
    table = GeneratorTable(gens, cutoff=cutoff)
    table.polyvector_dim = d
    table.t_ids = frozenset(range(d))
    table.xi_ids = frozenset(range(d, 2 * d))
    return table


def _budget(v: SuperElement):
    """(max xi-degree, max t-degree) over the monomials of v; upper
    bounds for how many edge derivatives the slot can still absorb."""
    table = v.table
    xi_ids, t_ids = table.xi_ids, table.t_ids
    xi_max = t_max = 0
    for (even, odd) in v.terms:
        xi_max = max(xi_max, sum(1 for g in odd if g in xi_ids))
        t_max = max(t_max, sum(e for g, e in even if g in t_ids))
    return xi_max, t_max


def _homogeneous_parts(v: SuperElement):
    return [part for _, part in sorted(v.degree_parts().items())]


def _apply_edge(branches, i, j, d, table, remaining=0):
    """One edge operator on a branch list; slots are 0-indexed i, j.

    Every edge consumes exactly one xi-derivative and one t-derivative
    somewhere, so branches whose total slot budgets drop below the
    number of edges still to come are pruned outright -- this is the
    orientation-counting argument run as a search bound, and it is what
    keeps dense-graph evaluations finite in practice.
    """
    out = []
    for coeff, slots, budgets in branches:
        degs = [s.degree() or 0 for s in slots]
        xi_total = sum(b[0] for b in budgets)
        t_total = sum(b[1] for b in budgets)

        def push(sign, si, sj, slot_i, slot_j):
            new = list(slots)
            new[slot_i] = si
            newb = list(budgets)
            newb[slot_i] = _budget(si)
            if slot_j is not None:
                new[slot_j] = sj
                newb[slot_j] = _budget(sj)
            if sum(b[0] for b in newb) < remaining:
                return
            if sum(b[1] for b in newb) < remaining:
                return
            out.append((sign * coeff, new, newb))

        # cheap necessary budgets for this very edge
        if xi_total < 1 + remaining or t_total < 1 + remaining:
            continue
        for a in range(1, d + 1):
            xi = "xi%d" % a
            t = "t%d" % a
            if i == j:
                base = slots[i].derive_cached(t).derive_cached(xi)
                if base.is_zero():
                    continue
                sign = (-1) ** (sum(degs[:i]) % 2)
                push(2 * sign, base, None, i, None)
                continue
            # term 1: d/dxi at slot i (odd), d/dt at slot j (even)
            si = slots[i].derive_cached(xi)
            if not si.is_zero():
                sj = slots[j].derive_cached(t)
                if not sj.is_zero():
                    push((-1) ** (sum(degs[:i]) % 2), si, sj, i, j)
            # term 2: d/dt at slot i (even), d/dxi at slot j (odd)
            si = slots[i].derive_cached(t)
            if not si.is_zero():
                sj = slots[j].derive_cached(xi)
                if not sj.is_zero():
                    push((-1) ** (sum(degs[:j]) % 2), si, sj, i, j)
    return out


def _assignment_feasible(edges, caps):
    """Can every edge take one unit of capacity at one of its endpoints?
    Kuhn matching over capacity-split slot units; an exact Hall-type
    bound, so a False is a proof that the evaluation vanishes."""
    units = []
    for slot, c in enumerate(caps):
        units.extend([slot] * c)
    if len(units) < len(edges):
        return False
    match = {}

    def try_edge(k, visited):
        i, j = edges[k]
        for u, slot in enumerate(units):
            if slot != i and slot != j:
                continue
            if u in visited:
                continue
            visited.add(u)
            if u not in match or try_edge(match[u], visited):
                match[u] = k
                return True
        return False

    for k in range(len(edges)):
        if not try_edge(k, set()):
            return False
    return True


def delta_op(i, j, args):
    """Single edge operator on a tensor of polyvectors.

    Returns a list of (coeff, slots) with 1-based slots i, j applied as
    one edge (i, j).  Arguments may be inhomogeneous; they are split
    into degree-homogeneous branches first.
    """
    if not args:
        raise ValueError("empty argument list")
    table = args[0].table
    d = table.polyvector_dim
    if not (1 <= i <= len(args) and 1 <= j <= len(args)):
        raise ValueError("slot out of range")
    branches = _seed_branches(args)
    return [(c, s) for c, s, _b in _apply_edge(branches, i - 1, j - 1, d, table)]


def _seed_branches(args):
    branches = [(Fraction(1), [])]
    for v in args:
        parts = _homogeneous_parts(v)
        branches = [(c, slots + [p]) for c, slots in branches for p in parts]
    return [(c, s, [_budget(x) for x in s]) for c, s in branches
            if all(not x.is_zero() for x in s)]


def act(g: Graph, args) -> SuperElement:
    """Evaluate the graph on a tuple of polyvector arguments."""
    if len(args) != g.n:
        raise ValueError("arity mismatch: graph %d, args %d" % (g.n, len(args)))
    table = args[0].table
    for v in args:
        if v.table is not table:
            raise ValueError("argument table mismatch")
    d = table.polyvector_dim
    branches = _seed_branches(args)
    # root feasibility: each edge must place one xi- and one t-derivative
    # at an endpoint, within per-slot budgets (loops need both at once)
    simple = [(i - 1, j - 1) for (i, j) in g.edges]
    for which in (0, 1):
        kept = []
        for coeff, slots, budgets in branches:
            if _assignment_feasible(simple, [b[which] for b in budgets]):
                kept.append((coeff, slots, budgets))
        branches = kept
    # first edge in the order acts as the outermost operator
    e = len(g.edges)
    for pos, (i, j) in enumerate(reversed(g.edges)):
        branches = _apply_edge(branches, i - 1, j - 1, d, table,
                               remaining=e - pos - 1)
        if not branches:
            return SuperElement.zero(table)
    total = SuperElement.zero(table)
    for coeff, slots, _b in branches:
        prod = SuperElement.scalar(table, coeff)
        for s in slots:
            prod = prod * s
            if prod.is_zero():
                break
        total = total + prod
    return total


def act_vector(vec: GraVector, args) -> SuperElement:
    table = args[0].table
    total = SuperElement.zero(table)
    for g, c in vec.terms.items():
        total = total + act(g, args).scale(c)
    return total


def wedge(v1: SuperElement, v2: SuperElement) -> SuperElement:
    """Product = action of the two-vertex graph with no edges."""
    return act(Graph(2, []), (v1, v2))


def schouten(v1: SuperElement, v2: SuperElement) -> SuperElement:
    """Degree -1 bracket = action of the two-vertex one-edge graph."""
    if v1.table is not v2.table:
        raise ValueError("table mismatch")
    return act(Graph(2, [(1, 2)]), (v1, v2))


def euler_field(table) -> SuperElement:
    """sum_a t^a xi_a, handy in tests."""
    d = table.polyvector_dim
    out = SuperElement.zero(table)
    for a in range(1, d + 1):
        out = out + SuperElement.gen(table, "t%d" % a) * \
            SuperElement.gen(table, "xi%d" % a)
    return out


def random_polyvector(table, rng, max_terms=4, max_exp=2):
    """Random small polyvector with Fraction coefficients (seeded rng)."""
    d = table.polyvector_dim
    out = SuperElement.zero(table)
    for _ in range(rng.randint(1, max_terms)):
        term = SuperElement.scalar(
            table, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        for a in range(1, d + 1):
            for _ in range(rng.randint(0, max_exp)):
                term = term * SuperElement.gen(table, "t%d" % a)
        for a in range(1, d + 1):
            if rng.random() < 0.4:
                term = term * SuperElement.gen(table, "xi%d" % a)
        out = out + term
    return out
