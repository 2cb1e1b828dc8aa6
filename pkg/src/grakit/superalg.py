"""Graded super-commutative polynomial engine over Q, with truncation.

A `GeneratorTable` declares named generators, each even or odd, with an
integer cohomological degree and a nonnegative truncation weight.  A
`SuperElement` is a finite Fraction-linear combination of normal-form
monomials over one table.  Monomials are written

    (even part, odd part)

where the even part is a sorted tuple of (generator id, exponent) pairs
and the odd part is a sorted tuple of generator ids (odd generators
square to zero, so no exponents).  The product follows the Koszul sign
rule: moving an odd factor past an odd factor costs a minus sign.

Odd partial derivatives are LEFT derivatives:

    d/dg (g_1 g_2 ... g_k) = (-1)^(position of g) * (word with g removed)

All downstream sign conventions (Schouten bracket, connection-form
identities) are normalized against the Gerstenhaber axioms in the test
suite rather than asserted a priori.

Truncation: a table may carry a weight cutoff N; any monomial whose
total weight (sum of generator weights, with multiplicity) exceeds N is
dropped on the spot.  Identities that hold without truncation then hold
in the bands the callers state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

EVEN = 0
ODD = 1


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    degree: int
    weight: int = 0


class GeneratorTable:
    """Immutable-after-construction table of named super generators."""

    def __init__(self, generators, cutoff=None):
        self.gens = []
        self.index = {}
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            if g.name in self.index:
                raise ValueError("duplicate generator %r" % g.name)
            if g.parity not in (EVEN, ODD):
                raise ValueError("parity must be EVEN or ODD")
            if (g.degree - g.parity) % 2 != 0:
                raise ValueError(
                    "generator %r: degree parity must match declared parity" % g.name)
            self.index[g.name] = len(self.gens)
            self.gens.append(g)
        self.cutoff = cutoff
        self.parities = tuple(g.parity for g in self.gens)
        self.degrees = tuple(g.degree for g in self.gens)
        self.weights = tuple(g.weight for g in self.gens)

    def gen_id(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise KeyError("unknown generator %r" % name) from None

    def monomial_weight(self, mono):
        even, odd = mono
        w = sum(self.weights[g] * e for g, e in even)
        w += sum(self.weights[g] for g in odd)
        return w

    def monomial_degree(self, mono):
        even, odd = mono
        d = sum(self.degrees[g] * e for g, e in even)
        d += sum(self.degrees[g] for g in odd)
        return d

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)


UNIT_MONO = ((), ())


def _merge_even(e1, e2):
    if not e1:
        return e2
    if not e2:
        return e1
    d = dict(e1)
    for g, e in e2:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items()))


def _merge_odd(o1, o2):
    """Merge sorted odd tuples; returns (merged, sign) or (None, 0) if a
    generator repeats (odd squares vanish)."""
    if not o1:
        return o2, 1
    if not o2:
        return o1, 1
    merged = []
    sign = 1
    i = j = 0
    n1, n2 = len(o1), len(o2)
    while i < n1 and j < n2:
        a, b = o1[i], o2[j]
        if a == b:
            return None, 0
        if a < b:
            merged.append(a)
            i += 1
        else:
            # b jumps over the remaining n1 - i elements of o1
            if (n1 - i) % 2:
                sign = -sign
            merged.append(b)
            j += 1
    merged.extend(o1[i:])
    merged.extend(o2[j:])
    return tuple(merged), sign


class SuperElement:
    """Element of the graded-commutative algebra over a GeneratorTable."""

    __slots__ = ("table", "terms", "_dcache")

    def __init__(self, table, terms=None):
        self.table = table
        self.terms = terms if terms is not None else {}
        self._dcache = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(table):
        return SuperElement(table)

    @staticmethod
    def scalar(table, c):
        c = Fraction(c)
        return SuperElement(table, {UNIT_MONO: c} if c else {})

    @staticmethod
    def gen(table, name, power=1):
        gid = table.gen_id(name)
        g = table.gens[gid]
        if g.parity == ODD:
            if power != 1:
                return SuperElement(table)
            mono = ((), (gid,))
        else:
            mono = (((gid, power),), ())
        if table.cutoff is not None and table.monomial_weight(mono) > table.cutoff:
            return SuperElement(table)
        return SuperElement(table, {mono: Fraction(1)})

    def copy(self):
        return SuperElement(self.table, dict(self.terms))

    # -- ring structure -----------------------------------------------

    def _check(self, other):
        if self.table is not other.table:
            raise ValueError("generator table mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperElement.scalar(self.table, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            new = out.get(m, Fraction(0)) + c
            if new == 0:
                out.pop(m, None)
            else:
                out[m] = new
        return SuperElement(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperElement(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperElement.scalar(self.table, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return SuperElement(self.table)
        return SuperElement(self.table, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        table = self.table
        cutoff = table.cutoff
        wt = table.monomial_weight
        out = {}
        for (e1, o1), c1 in self.terms.items():
            for (e2, o2), c2 in other.terms.items():
                odd, sign = _merge_odd(o1, o2)
                if sign == 0:
                    continue
                mono = (_merge_even(e1, e2), odd)
                if cutoff is not None and wt(mono) > cutoff:
                    continue
                c = c1 * c2 * sign
                new = out.get(mono, Fraction(0)) + c
                if new == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = new
        return SuperElement(table, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperElement.scalar(self.table, other)
        return self.table is other.table and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.table), frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    # -- calculus ------------------------------------------------------

    def derive_cached(self, name):
        """derive() with a per-element memo; derivative chains explored
        repeatedly by the graph action hit a small set of states."""
        if self._dcache is None:
            self._dcache = {}
        got = self._dcache.get(name)
        if got is None:
            got = self.derive(name)
            self._dcache[name] = got
        return got

    def derive(self, name):
        """Graded left derivative with respect to a generator."""
        table = self.table
        gid = table.gen_id(name)
        parity = table.parities[gid]
        out = {}
        for (even, odd), c in self.terms.items():
            if parity == EVEN:
                d = dict(even)
                e = d.get(gid)
                if not e:
                    continue
                if e == 1:
                    del d[gid]
                else:
                    d[gid] = e - 1
                mono = (tuple(sorted(d.items())), odd)
                coeff = c * e
            else:
                if gid not in odd:
                    continue
                pos = odd.index(gid)
                mono = (even, odd[:pos] + odd[pos + 1:])
                coeff = c if pos % 2 == 0 else -c
            new = out.get(mono, Fraction(0)) + coeff
            if new == 0:
                out.pop(mono, None)
            else:
                out[mono] = new
        return SuperElement(table, out)

    def truncate(self, cutoff):
        """Drop terms of weight exceeding cutoff (table cutoff unchanged)."""
        wt = self.table.monomial_weight
        return SuperElement(
            self.table,
            {m: c for m, c in self.terms.items() if wt(m) <= cutoff})

    def coefficient(self, mono):
        return self.terms.get(mono, Fraction(0))

    def constant_term(self):
        return self.terms.get(UNIT_MONO, Fraction(0))

    def weight_parts(self):
        """Split into {weight: SuperElement} by total truncation weight."""
        wt = self.table.monomial_weight
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(wt(m), {})[m] = c
        return {w: SuperElement(self.table, t) for w, t in parts.items()}

    def degree_parts(self):
        """Split into {cohomological degree: SuperElement}."""
        deg = self.table.monomial_degree
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(deg(m), {})[m] = c
        return {d: SuperElement(self.table, t) for d, t in parts.items()}

    def degree(self):
        """Degree if homogeneous, else raises ValueError; zero element -> None."""
        parts = self.degree_parts()
        if not parts:
            return None
        if len(parts) > 1:
            raise ValueError("element is not degree-homogeneous")
        return next(iter(parts))

    # -- rendering ------------------------------------------------------
    #
    # Canonical grammar (also accepted by parse_element):
    #   element  := term (('+'|'-') term)*
    #   term     := coeff ('*' factor)* | factor ('*' factor)*
    #   factor   := name ('^' int)?
    #   coeff    := int | int '/' int
    # Terms are emitted in a fixed sorted order, so rendering is stable.

    def render(self):
        if not self.terms:
            return "0"
        names = [g.name for g in self.table.gens]
        items = sorted(
            self.terms.items(),
            key=lambda mc: (self.table.monomial_weight(mc[0]), mc[0]))
        chunks = []
        for (even, odd), c in items:
            factors = []
            for g, e in even:
                factors.append(names[g] if e == 1 else "%s^%d" % (names[g], e))
            for g in odd:
                factors.append(names[g])
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            elif c == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            chunks.append(body)
        out = chunks[0]
        for ch in chunks[1:]:
            out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
        return out

    def __repr__(self):
        return "<SuperElement %s>" % self.render()


def parse_element(table, text):
    """Parse the canonical rendering grammar back into a SuperElement."""
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        t = tokens[pos[0]]
        pos[0] += 1
        return t

    def parse_factor():
        t = take()
        if t == "(":
            e = parse_sum()
            if take() != ")":
                raise ValueError("expected ')'")
        elif _is_number(t):
            num = Fraction(t)
            if peek() == "/":
                take()
                num /= Fraction(take())
            e = SuperElement.scalar(table, num)
        else:
            power = 1
            if peek() == "^":
                take()
                power = int(take())
            e = SuperElement.gen(table, t, power)
        return e

    def parse_term():
        e = parse_factor()
        while peek() == "*":
            take()
            e = e * parse_factor()
        return e

    def parse_sum():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        e = parse_term().scale(sign)
        while peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
            e = e + parse_term().scale(sign)
        return e

    result = parse_sum()
    if pos[0] != len(tokens):
        raise ValueError("trailing input: %r" % tokens[pos[0]:])
    return result


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ValueError("bad character %r" % ch)
    return tokens


def _is_number(tok):
    return tok[0].isdigit()


class TensorElement:
    """(p,q)-tensor with SuperElement components.

    Components are keyed by (uppers, lowers): tuples of indices in
    1..dim.  Missing components are zero.
    """

    def __init__(self, table, dim, p, q, components=None):
        self.table = table
        self.dim = dim
        self.p = p
        self.q = q
        self.components = {}
        if components:
            for key, val in components.items():
                self.set_component(key[0], key[1], val)

    def _check_key(self, uppers, lowers):
        uppers, lowers = tuple(uppers), tuple(lowers)
        if len(uppers) != self.p or len(lowers) != self.q:
            raise ValueError("tensor shape mismatch")
        for a in uppers + lowers:
            if not 1 <= a <= self.dim:
                raise ValueError("tensor index out of range")
        return uppers, lowers

    def set_component(self, uppers, lowers, value):
        uppers, lowers = self._check_key(uppers, lowers)
        if value.is_zero():
            self.components.pop((uppers, lowers), None)
        else:
            self.components[(uppers, lowers)] = value

    def component(self, uppers, lowers):
        uppers, lowers = self._check_key(uppers, lowers)
        got = self.components.get((uppers, lowers))
        return got if got is not None else SuperElement.zero(self.table)

    def map_components(self, fn):
        out = TensorElement(self.table, self.dim, self.p, self.q)
        for (u, l), v in self.components.items():
            out.set_component(u, l, fn(v))
        return out

    def __add__(self, other):
        if (self.table is not other.table or self.p != other.p
                or self.q != other.q or self.dim != other.dim):
            raise ValueError("tensor mismatch")
        out = TensorElement(self.table, self.dim, self.p, self.q)
        keys = set(self.components) | set(other.components)
        for u, l in keys:
            out.set_component(u, l, self.component(u, l) + other.component(u, l))
        return out

    def __sub__(self, other):
        return self + other.map_components(lambda v: -v)

    def scale(self, c):
        return self.map_components(lambda v: v.scale(c))

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        return (self.table is other.table and self.dim == other.dim
                and self.p == other.p and self.q == other.q
                and self.components == other.components)
