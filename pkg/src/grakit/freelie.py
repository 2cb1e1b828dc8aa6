"""Free Lie algebras on named generators, Lyndon-word coordinates, and
the Grothendieck-Teichmuller relation checks.

Lie elements are stored as Lyndon-basis coordinate dictionaries
{word tuple: Fraction}; each Lyndon word stands for its standard right
bracketing.  Products are computed in the free associative envelope
(commutators of word expansions) and rewritten back to the basis by the
triangular leading-term algorithm: the smallest word of a Lie element
is Lyndon and its bracketing reproduces it with coefficient 1 plus
lexicographically larger words.

The defining relations checked downstream: antisymmetry and the
hexagon live in the free Lie algebra on x, y; the pentagon lives in the
quotient of the free Lie algebra on the six chord generators by the
infinitesimal-braid relations, built degree by degree with exact linear
algebra.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import SparseMatrix, kernel_basis, rank, solve


def lyndon_words(alphabet_size, max_len):
    """All Lyndon words on 0..alphabet_size-1 up to max_len (Duval)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()
    return sorted(out, key=lambda t: (len(t), t))


def _is_lyndon(word):
    n = len(word)
    if n == 1:
        return True
    for k in range(1, n):
        if word[k:] <= word:
            return False
    return True


def standard_factorization(word):
    """w = u v with v the longest proper Lyndon suffix."""
    n = len(word)
    for k in range(1, n):
        if _is_lyndon(word[k:]):
            return word[:k], word[k:]
    raise ValueError("not factorizable: %r" % (word,))


def _expand_bracketing(word, cache):
    """Associative expansion of the standard bracketing of a Lyndon word."""
    got = cache.get(word)
    if got is not None:
        return got
    if len(word) == 1:
        result = {word: Fraction(1)}
    else:
        u, v = standard_factorization(word)
        eu = _expand_bracketing(u, cache)
        ev = _expand_bracketing(v, cache)
        result = {}
        for wu, cu in eu.items():
            for wv, cv in ev.items():
                for left, right, s in ((wu, wv, 1), (wv, wu, -1)):
                    key = left + right
                    val = result.get(key, Fraction(0)) + s * cu * cv
                    if val == 0:
                        result.pop(key, None)
                    else:
                        result[key] = val
    cache[word] = result
    return result


class LieElement:
    """Element of the free Lie algebra on a named alphabet."""

    def __init__(self, alphabet, terms=None):
        self.alphabet = tuple(alphabet)
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(w)] = c
        self._expansion_cache = {}

    @staticmethod
    def generator(alphabet, name):
        alphabet = tuple(alphabet)
        return LieElement(alphabet, {(alphabet.index(name),): 1})

    @staticmethod
    def zero(alphabet):
        return LieElement(alphabet)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            val = out.get(w, Fraction(0)) + c
            if val == 0:
                out.pop(w, None)
            else:
                out[w] = val
        return LieElement(self.alphabet, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return LieElement(self.alphabet)
        return LieElement(self.alphabet,
                          {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return self.alphabet == other.alphabet and self.terms == other.terms

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def degree_part(self, m):
        return LieElement(self.alphabet,
                          {w: c for w, c in self.terms.items() if len(w) == m})

    def y_degree_parts(self, letter_index):
        """Split by the number of occurrences of one letter."""
        parts = {}
        for w, c in self.terms.items():
            k = sum(1 for ch in w if ch == letter_index)
            parts.setdefault(k, {})[w] = c
        return {k: LieElement(self.alphabet, t) for k, t in parts.items()}

    def associative_expansion(self, cache=None):
        """Image in the free associative algebra: {word: coeff}."""
        cache = cache if cache is not None else {}
        out = {}
        for w, c in self.terms.items():
            for word, coeff in _expand_bracketing(w, cache).items():
                val = out.get(word, Fraction(0)) + c * coeff
                if val == 0:
                    out.pop(word, None)
                else:
                    out[word] = val
        return out

    def __repr__(self):
        names = self.alphabet
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            bits.append("%s*%s" % (c, "".join(names[ch] for ch in w)))
        return "LieElement(%s)" % (" + ".join(bits) if bits else "0")


def from_associative(alphabet, assoc):
    """Rewrite a Lie element given by its associative expansion into
    Lyndon coordinates (raises if the input is not a Lie element)."""
    cache = {}
    work = dict(assoc)
    out = {}
    while work:
        word = min(work, key=lambda w: (len(w), w))
        coeff = work[word]
        if not _is_lyndon(word):
            raise ValueError("not a Lie element: leading word %r" % (word,))
        out[word] = out.get(word, Fraction(0)) + coeff
        for w2, c2 in _expand_bracketing(word, cache).items():
            val = work.get(w2, Fraction(0)) - coeff * c2
            if val == 0:
                work.pop(w2, None)
            else:
                work[w2] = val
    return LieElement(alphabet, out)


def lie_bracket(a: LieElement, b: LieElement, degree_cap=None) -> LieElement:
    """[a, b], via commutator of associative expansions."""
    a._check(b)
    ea = a.associative_expansion()
    eb = b.associative_expansion()
    if degree_cap is not None:
        degs = [len(w1) + len(w2) for w1 in ea for w2 in eb]
        if degs and max(degs) > degree_cap:
            raise ValueError("bracket degree exceeds the cap")
    comm = {}
    for w1, c1 in ea.items():
        for w2, c2 in eb.items():
            for key, s in ((w1 + w2, 1), (w2 + w1, -1)):
                val = comm.get(key, Fraction(0)) + s * c1 * c2
                if val == 0:
                    comm.pop(key, None)
                else:
                    comm[key] = val
    return from_associative(a.alphabet, comm)


def substitute(a: LieElement, images: dict, degree_cap=None) -> LieElement:
    """Induced Lie homomorphism: each generator name maps to a Lie
    element of the target alphabet."""
    target = None
    for img in images.values():
        target = img.alphabet
        break
    if target is None:
        raise ValueError("empty substitution")
    gen_images = {}
    for name, img in images.items():
        gen_images[a.alphabet.index(name)] = img

    def image_of_word(w):
        if len(w) == 1:
            return gen_images[w[0]]
        u, v = standard_factorization(w)
        return lie_bracket(image_of_word(u), image_of_word(v),
                           degree_cap=degree_cap)

    out = LieElement.zero(target)
    for w, c in a.terms.items():
        out = out + image_of_word(w).scale(c)
    return out


def derivation_apply(a: LieElement, images: dict) -> LieElement:
    """The derivation sending each generator to images[name] (defaulting
    to zero), applied to a via the Leibniz rule over bracketings."""
    alphabet = a.alphabet
    gen_images = {}
    for i, name in enumerate(alphabet):
        img = images.get(name)
        gen_images[i] = img if img is not None else LieElement.zero(alphabet)

    def apply_word(w):
        # both standard factors of a Lyndon word are Lyndon
        if len(w) == 1:
            return gen_images[w[0]]
        u, v = standard_factorization(w)
        return lie_bracket(apply_word(u), _as_lie(alphabet, v)) + \
            lie_bracket(_as_lie(alphabet, u), apply_word(v))

    out = LieElement.zero(alphabet)
    for w, c in a.terms.items():
        out = out + apply_word(w).scale(c)
    return out


def _as_lie(alphabet, word):
    """The basis element of a Lyndon word."""
    return LieElement(alphabet, {word: 1})


# -- grt relations in lie(x, y) ------------------------------------------

XY = ("x", "y")


def sigma_3():
    """[x,[x,y]] - [y,[y,x]], the degree-3 generator of the relations."""
    x = LieElement.generator(XY, "x")
    y = LieElement.generator(XY, "y")
    return lie_bracket(x, lie_bracket(x, y)) - lie_bracket(y, lie_bracket(y, x))


def ad_power(base: LieElement, arg: LieElement, n: int) -> LieElement:
    out = arg
    for _ in range(n):
        out = lie_bracket(base, out)
    return out


def check_antisymmetry(s: LieElement) -> bool:
    """sigma(y, x) = -sigma(x, y)."""
    x = LieElement.generator(XY, "x")
    y = LieElement.generator(XY, "y")
    return substitute(s, {"x": y, "y": x}) == s.scale(-1)


def check_hexagon(s: LieElement) -> bool:
    """sigma(x,y) + sigma(y,-x-y) + sigma(-x-y,x) = 0 in lie(x,y)."""
    x = LieElement.generator(XY, "x")
    y = LieElement.generator(XY, "y")
    mxy = (x + y).scale(-1)
    total = s + substitute(s, {"x": y, "y": mxy}) + \
        substitute(s, {"x": mxy, "y": x})
    return total.is_zero()


def ihara_bracket(s1: LieElement, s2: LieElement) -> LieElement:
    """delta_{s1}(s2) - delta_{s2}(s1) + [s1, s2], where delta_s is the
    derivation with x -> 0, y -> [y, s]."""
    y = LieElement.generator(XY, "y")
    d1 = derivation_apply(s2, {"y": lie_bracket(y, s1)})
    d2 = derivation_apply(s1, {"y": lie_bracket(y, s2)})
    return d1 - d2 + lie_bracket(s1, s2)


# -- Drinfeld-Kohno quotients --------------------------------------------

def t_n_alphabet(n):
    return tuple("t%d%d" % (i, j) for i in range(1, n + 1)
                 for j in range(i + 1, n + 1))


def t_n_relations(n):
    """Degree-2 relations: [t_ij, t_ik + t_jk] and [t_ij, t_kl]."""
    alph = t_n_alphabet(n)

    def gen(i, j):
        i, j = min(i, j), max(i, j)
        return LieElement.generator(alph, "t%d%d" % (i, j))

    rels = []
    idx = range(1, n + 1)
    for i, j in itertools.combinations(idx, 2):
        for k in idx:
            if k in (i, j):
                continue
            rels.append(lie_bracket(gen(i, j), gen(i, k) + gen(j, k)))
    for (i, j), (k, l) in itertools.combinations(
            itertools.combinations(idx, 2), 2):
        if len({i, j, k, l}) == 4:
            rels.append(lie_bracket(gen(i, j), gen(k, l)))
    return [r for r in rels if not r.is_zero()]


class GradedQuotient:
    """Free Lie algebra on an alphabet modulo a degree-2 relation ideal,
    assembled degree by degree with exact row reduction."""

    def __init__(self, alphabet, relations, degree_cap):
        if degree_cap > 5:
            raise ValueError("degree cap too large for the brute closure")
        self.alphabet = alphabet
        self.degree_cap = degree_cap
        self.words = {m: [w for w in lyndon_words(len(alphabet), m)
                          if len(w) == m]
                      for m in range(1, degree_cap + 1)}
        self.index = {m: {w: k for k, w in enumerate(ws)}
                      for m, ws in self.words.items()}
        # ideal spans per degree, as RREF'd coordinate matrices
        self.ideal = {1: []}
        span2 = [self._coords(r) for r in relations]
        self.ideal[2] = span2
        for m in range(3, degree_cap + 1):
            span = []
            gens = [LieElement.generator(alphabet, name) for name in alphabet]
            prev = self.ideal[m - 1]
            for vec in prev:
                elem = self._from_coords(m - 1, vec)
                for g in gens:
                    span.append(self._coords(lie_bracket(g, elem)))
            self.ideal[m] = span
        self._rref = {}
        for m in range(1, degree_cap + 1):
            self._rref[m] = self._reduce_rows(m, self.ideal[m])

    def _coords(self, elem):
        degs = elem.degrees()
        if not degs:
            return {}
        if len(degs) != 1:
            raise ValueError("inhomogeneous element")
        m = degs[0]
        return {self.index[m][w]: c for w, c in elem.terms.items()}

    def _from_coords(self, m, coords):
        return LieElement(self.alphabet,
                          {self.words[m][k]: c for k, c in coords.items()})

    def _reduce_rows(self, m, rows):
        cols = len(self.words[m])
        mat = SparseMatrix(len(rows), cols)
        for r, row in enumerate(rows):
            for c, val in row.items():
                mat.set_entry(r, c, val)
        from .linalg import _rref
        prows, pcols = _rref(mat)
        return list(zip(pcols, prows))

    def dim(self, m):
        return len(self.words.get(m, ())) - len(self._rref.get(m, ()))

    def reduce(self, elem: LieElement):
        """Quotient coordinates: the ideal-RREF remainder, per degree."""
        out = {}
        for m in elem.degrees():
            if m > self.degree_cap:
                raise ValueError("degree %d over the cap" % m)
            part = self._coords(elem.degree_part(m))
            for pcol, prow in self._rref.get(m, ()):
                f = part.get(pcol)
                if not f:
                    continue
                for c, val in prow.items():
                    nv = part.get(c, Fraction(0)) - f * val
                    if nv == 0:
                        part.pop(c, None)
                    else:
                        part[c] = nv
            if part:
                out[m] = part
        return out

    def is_zero_in_quotient(self, elem: LieElement) -> bool:
        return not self.reduce(elem)


_tn_cache = {}


def tn_quotient(n, degree_cap) -> GradedQuotient:
    if n not in (3, 4):
        raise ValueError("only t_3 and t_4 are built")
    key = (n, degree_cap)
    if key not in _tn_cache:
        _tn_cache[key] = GradedQuotient(
            t_n_alphabet(n), t_n_relations(n), degree_cap)
    return _tn_cache[key]


def pentagon_check(s: LieElement, degree_cap=4) -> bool:
    """The five-term relation for s in the t_4 quotient."""
    degs = s.degrees()
    if not degs:
        return True
    if len(degs) > 1:
        raise ValueError("pentagon check needs a homogeneous element")
    if degs[0] > degree_cap:
        raise ValueError("degree over the cap")
    alph = t_n_alphabet(4)

    def gen(i, j):
        return LieElement.generator(alph, "t%d%d" % (i, j))

    pairs = [
        (gen(2, 3), gen(3, 4), 1),
        (gen(1, 3) + gen(2, 3), gen(3, 4), -1),
        (gen(1, 2) + gen(1, 3), gen(2, 4) + gen(3, 4), 1),
        (gen(1, 2), gen(2, 3) + gen(2, 4), -1),
        (gen(1, 2), gen(2, 3), 1),
    ]
    total = LieElement.zero(alph)
    for ax, ay, sign in pairs:
        total = total + substitute(s, {"x": ax, "y": ay}).scale(sign)
    quotient = tn_quotient(4, max(degree_cap, degs[0]))
    return quotient.is_zero_in_quotient(total)


def dd_shape(s: LieElement, n) -> bool:
    """Leading-term shape: the y-degree-1 part is ad_x^{n-1}(y) and the
    rest has y-degree >= 2."""
    if s.degrees() not in ([n], []):
        return False
    y_idx = s.alphabet.index("y")
    parts = s.y_degree_parts(y_idx)
    want = ad_power(LieElement.generator(XY, "x"),
                    LieElement.generator(XY, "y"), n - 1)
    if parts.get(1) != want:
        return False
    return all(k >= 2 for k in parts if k != 1)


def grt_relation_solutions(degree):
    """Basis of the space of degree-homogeneous solutions of the
    antisymmetry + hexagon + pentagon system, by exact linear solve over
    the Lyndon coordinates of the degree component."""
    words = [w for w in lyndon_words(2, degree) if len(w) == degree]
    columns = []
    for w in words:
        s = LieElement(XY, {w: 1})
        x = LieElement.generator(XY, "x")
        y = LieElement.generator(XY, "y")
        mxy = (x + y).scale(-1)
        anti = substitute(s, {"x": y, "y": x}) + s
        hexa = s + substitute(s, {"x": y, "y": mxy}) + \
            substitute(s, {"x": mxy, "y": x})
        quotient = tn_quotient(4, degree)
        alph = t_n_alphabet(4)

        def gen(i, j):
            return LieElement.generator(alph, "t%d%d" % (i, j))
        penta = LieElement.zero(alph)
        for ax, ay, sign in [
                (gen(2, 3), gen(3, 4), 1),
                (gen(1, 3) + gen(2, 3), gen(3, 4), -1),
                (gen(1, 2) + gen(1, 3), gen(2, 4) + gen(3, 4), 1),
                (gen(1, 2), gen(2, 3) + gen(2, 4), -1),
                (gen(1, 2), gen(2, 3), 1)]:
            penta = penta + substitute(s, {"x": ax, "y": ay}).scale(sign)
        columns.append((anti, hexa, quotient.reduce(penta)))
    # assemble the joint linear system
    anti_words = sorted({w for a, _, _ in columns for w in a.terms})
    hex_words = sorted({w for _, h, _ in columns for w in h.terms})
    penta_keys = sorted({(m, k) for _, _, p in columns
                         for m, coords in p.items() for k in coords})
    rows = len(anti_words) + len(hex_words) + len(penta_keys)
    mat = SparseMatrix(rows, len(words))
    for col, (anti, hexa, penta) in enumerate(columns):
        for w, c in anti.terms.items():
            mat.set_entry(anti_words.index(w), col, c)
        off = len(anti_words)
        for w, c in hexa.terms.items():
            mat.set_entry(off + hex_words.index(w), col, c)
        off += len(hex_words)
        for (m, k), c in [((m, k), coords[k]) for m, coords in penta.items()
                          for k in coords]:
            mat.set_entry(off + penta_keys.index((m, k)), col, c)
    return [
        LieElement(XY, {w: c for w, c in zip(words, vec) if c})
        for vec in kernel_basis(mat)
    ]
