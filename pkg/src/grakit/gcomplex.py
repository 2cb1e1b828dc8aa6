"""Graph-complex cohomology in per-arity windows.

A BasisWindow holds a basis of the symmetric graph vectors of one
(arity, degree) bidegree, optionally filtered by the Kontsevich
subcomplex predicates.  Degrees follow d = 2n - 2 - e.

The full complex has cochains that are products over all arities; a
window computation is the arity-graded approximation of that object,
which is what fits on a desk.  The caveat is repeated in the CLI
report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import (Graph, GraVector, enumerate_graphs, is_gc_graph,
                     iso_class)
from .linalg import SparseMatrix, in_image, kernel_basis, rank
from .operad import mc_expansion, sym_class_reduce

MAX_ARITY = 7


@dataclass
class BasisWindow:
    arity: int
    degree: int
    gc_filter: bool
    allow_tadpoles: bool
    reps: list        # isomorphism-class representative Graphs
    vectors: list     # the corresponding symmetrized GraVectors

    @property
    def size(self):
        return len(self.reps)

    def edge_count(self):
        return 2 * self.arity - 2 - self.degree

    def coordinates(self, class_totals):
        """Coordinates of Sym-combination given as {class rep: coeff}.

        Raises ValueError when the vector leaves the window span; for
        GC windows this doubles as the subcomplex-closure check.
        """
        index = {rep: k for k, rep in enumerate(self.reps)}
        coords = [Fraction(0)] * self.size
        for rep, c in class_totals.items():
            k = index.get(rep)
            if k is None:
                raise ValueError(
                    "vector leaves the window span at %r" % (rep,))
            coords[k] = c
        return coords


def enumerate_basis(n, d, gc_filter=False, allow_tadpoles=False,
                    max_arity=MAX_ARITY) -> BasisWindow:
    """Basis of (Gra(n))^{S_n} in degree d, one vector per isomorphism
    class whose symmetrization survives (no odd automorphism)."""
    if n > max_arity:
        raise ValueError("arity %d over the configured maximum %d" % (n, max_arity))
    e = 2 * n - 2 - d
    reps, vectors = [], []
    max_edges = n * (n + 1) // 2 if allow_tadpoles or not gc_filter else n * (n - 1) // 2
    if 0 <= e <= max_edges:
        seen = set()
        for g in enumerate_graphs(n, e, allow_loops=not gc_filter or allow_tadpoles):
            cls = iso_class(g)
            if cls.dead or cls.rep in seen:
                continue
            seen.add(cls.rep)
            if gc_filter and not is_gc_graph(cls.rep, allow_tadpoles):
                continue
            reps.append(cls.rep)
            vectors.append(GraVector(n, {cls.rep: 1}).symmetrized())
    reps_sorted = sorted(range(len(reps)), key=lambda k: reps[k].edges)
    return BasisWindow(
        arity=n, degree=d, gc_filter=gc_filter, allow_tadpoles=allow_tadpoles,
        reps=[reps[k] for k in reps_sorted],
        vectors=[vectors[k] for k in reps_sorted])


def differential_matrix(src: BasisWindow, dst: BasisWindow) -> SparseMatrix:
    """Matrix of the graph differential from src to dst coordinates."""
    if dst.arity != src.arity + 1 or dst.degree != src.degree + 1:
        raise ValueError("windows are not consecutive")
    m = SparseMatrix(dst.size, src.size)
    for col, rep in enumerate(src.reps):
        totals = sym_class_reduce(mc_expansion(rep))
        for row, c in enumerate(dst.coordinates(totals)):
            if c:
                m.set_entry(row, col, c)
    return m


def incoming_window(window: BasisWindow) -> BasisWindow:
    return enumerate_basis(window.arity - 1, window.degree - 1,
                           window.gc_filter, window.allow_tadpoles)


def outgoing_window(window: BasisWindow) -> BasisWindow:
    return enumerate_basis(window.arity + 1, window.degree + 1,
                           window.gc_filter, window.allow_tadpoles)


@dataclass
class CohomologyReport:
    arity: int
    degree: int
    gc_filter: bool
    basis_size: int
    kernel_dim: int
    image_dim: int
    cohomology_dim: int

    def to_json(self):
        return {
            "schema_version": 1,
            "arity": self.arity,
            "degree": self.degree,
            "gc_filter": self.gc_filter,
            "basis_size": self.basis_size,
            "kernel_dim": self.kernel_dim,
            "image_dim": self.image_dim,
            "cohomology_dim": self.cohomology_dim,
            "note": "per-arity window; full graph cochains are products over arities",
        }


def cohomology_report(n, d, gc_filter=False, allow_tadpoles=False,
                      max_arity=MAX_ARITY) -> CohomologyReport:
    window = enumerate_basis(n, d, gc_filter, allow_tadpoles, max_arity)
    if window.size == 0:
        return CohomologyReport(n, d, gc_filter, 0, 0, 0, 0)
    if n >= 2:
        src = incoming_window(window)
        image_dim = rank(differential_matrix(src, window)) if src.size else 0
    else:
        image_dim = 0
    out = outgoing_window(window)
    mat = differential_matrix(window, out)
    kernel_dim = window.size - rank(mat)
    return CohomologyReport(n, d, gc_filter, window.size, kernel_dim,
                            image_dim, kernel_dim - image_dim)


def cohomology_dim(n, d, gc_filter=False, allow_tadpoles=False) -> int:
    return cohomology_report(n, d, gc_filter, allow_tadpoles).cohomology_dim


def is_cocycle(g: Graph) -> bool:
    """d Sym(g) = 0?"""
    return not sym_class_reduce(mc_expansion(g))


def is_coboundary(g: Graph, gc_filter=False, allow_tadpoles=False) -> bool:
    """Is Sym(g) in the image of the incoming differential (its window)?"""
    cls = iso_class(g)
    if cls.dead:
        return True
    window = enumerate_basis(g.n, g.degree(), gc_filter, allow_tadpoles)
    vec = window.coordinates({cls.rep: Fraction(cls.sign)})
    if window.arity < 2:
        return all(c == 0 for c in vec)
    src = incoming_window(window)
    if src.size == 0:
        return all(c == 0 for c in vec)
    mat = differential_matrix(src, window)
    return in_image(mat, vec)
