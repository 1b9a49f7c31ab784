"""Rewriting trace functions of free-group words into Fricke coordinates.

The rewriting uses only universal SL(2) trace identities:

* ``t_e = 2``, cyclic invariance and ``t_w = t_{w^-1}``;
* ``t_{UV} + t_{U^-1 V} = t_U t_V`` to trade inverse letters and to split
  a positive word ``x A x B`` into ``t_{xA} t_{xB} - t_{A^-1 B}``;
* ``t_{acb} = p(a, b, c) - t_{abc}`` for out-of-order triples;
* Vogt's identity for positive words in four or more distinct letters.

Every step lowers ``(length, number of inverse letters)`` lexicographically,
so the recursion terminates.  For rank three the result is further reduced
modulo ``F`` (degree at most one in ``t_abc``), which makes it the unique
normal form in B(F_3).  For rank > 3 outputs are deterministic but not
canonical.
"""

from __future__ import annotations

from threading import Lock
from typing import Sequence

from .polyring import Polynomial, Q, Ring
from .presentation import Word

_Letters = tuple[tuple[int, int], ...]


def canonical_letters(w: Word) -> _Letters:
    """Cyclically reduced representative of the conjugacy class of w or w^-1.

    Chooses the fewest inverse letters, then the lexicographically smallest
    rotation.
    """
    w = w.cyclic_reduce()
    if not w.letters:
        return ()
    best = None
    for cand in (w, w.inverse()):
        letters = cand.letters
        ninv = sum(1 for _, s in letters if s < 0)
        for k in range(len(letters)):
            rot = letters[k:] + letters[:k]
            key = (ninv, rot)
            if best is None or key < best:
                best = key
    return best[1]


class TraceReducer:
    """Memoizing ``reduce_trace`` for one trace ring.

    The memo is guarded by a lock, so a reducer may be shared by threads.
    """

    def __init__(self, ring: Ring):
        if ring.generators is None:
            raise ValueError("TraceReducer needs a trace ring")
        self.ring = ring
        self.n = len(ring.generators)
        self._memo: dict[_Letters, Polynomial] = {}
        self._lock = Lock()
        self._two = ring.const(2)
        self._var_of: dict[tuple[int, ...], Polynomial] = {
            tv.indices: ring.var(tv.name) for tv in ring.trace_vars
        }
        self._triples = [tv for tv in ring.trace_vars if tv.kind == "triple"]

    # -- public
    def __call__(self, w: Word) -> Polynomial:
        return self.reduce(w)

    def reduce(self, w: Word) -> Polynomial:
        if w.max_generator() >= self.n:
            raise ValueError("word uses generators outside the ring")
        return self._t(canonical_letters(w))

    def p(self, i: int, j: int, k: int) -> Polynomial:
        """``t_i t_jk + t_j t_ik + t_k t_ij - t_i t_j t_k`` (symmetric in i, j, k)."""
        t = self._pair_or_single
        return t(i) * t(j, k) + t(j) * t(i, k) + t(k) * t(i, j) - t(i) * t(j) * t(k)

    def q(self, i: int, j: int, k: int) -> Polynomial:
        t = self._pair_or_single
        a, b, c = t(i), t(j), t(k)
        ab, ac, bc = t(i, j), t(i, k), t(j, k)
        return (a * a + b * b + c * c + ab * ab + ac * ac + bc * bc + ab * ac * bc
                - a * b * ab - a * c * ac - b * c * bc - 4)

    # -- internals
    def _pair_or_single(self, *idx: int) -> Polynomial:
        return self._var_of[tuple(sorted(idx))]

    def _t(self, letters: _Letters) -> Polynomial:
        hit = self._memo.get(letters)
        if hit is not None:
            return hit
        result = self._fold_triples(self._compute(letters))
        with self._lock:
            self._memo.setdefault(letters, result)
        return result

    def _tw(self, letters: Sequence[tuple[int, int]]) -> Polynomial:
        return self._t(canonical_letters(Word(tuple(letters))))

    def _compute(self, w: _Letters) -> Polynomial:
        L = len(w)
        if L == 0:
            return self._two
        for k, (g, s) in enumerate(w):
            if s < 0:
                # t_{x^-1 W} = t_x t_W - t_{x W}
                rot = w[k:] + w[:k]
                x = (g, 1)
                rest = rot[1:]
                return self._tw([x]) * self._tw(rest) - self._tw((x,) + rest)
        gens = [g for g, _ in w]
        if len(set(gens)) < L:
            return self._split_repeat(w)
        if L == 1:
            return self._var_of[(gens[0],)]
        if L == 2:
            return self._var_of[tuple(sorted(gens))]
        if L == 3:
            a, b, c = gens  # canonical rotation starts with the smallest index
            if b < c:
                return self._var_of[(a, b, c)]
            return self.p(a, b, c) - self._var_of[(a, c, b)]
        return self._vogt(w)

    def _split_repeat(self, w: _Letters) -> Polynomial:
        L = len(w)
        # prefer a cyclically adjacent square: t_{x x B} = t_x t_{x B} - t_B
        for k in range(L):
            if w[k] == w[(k + 1) % L]:
                rot = w[k:] + w[:k]
                x, rest = rot[:1], rot[1:]
                return self._tw(x) * self._tw(rest) - self._tw(rot[2:])
        first: dict[int, int] = {}
        for k, (g, _) in enumerate(w):
            if g in first:
                i, j = first[g], k
                break
            first[g] = k
        rot = w[i:] + w[:i]
        j -= i
        xa, xb = rot[:j], rot[j:]
        a_inv = Word(xa[1:]).inverse().letters
        # t_{xA xB} = t_{xA} t_{xB} - t_{A^-1 B}
        return self._tw(xa) * self._tw(xb) - self._tw(a_inv + xb[1:])

    def _vogt(self, w: _Letters) -> Polynomial:
        a, b, c, d = w[:1], w[1:2], w[2:3], w[3:]
        t = self._tw
        rhs = (t(a) * t(b) * t(c) * t(d) - t(c) * t(d) * t(a + b) - t(b) * t(c) * t(a + d)
               - t(a) * t(d) * t(b + c) - t(a) * t(b) * t(c + d)
               + t(a + d) * t(b + c) - t(a + c) * t(b + d) + t(a + b) * t(c + d)
               + t(d) * t(a + b + c) + t(c) * t(a + b + d) + t(b) * t(a + c + d)
               + t(a) * t(b + c + d))
        return rhs * Q(1, 2)

    def _fold_triples(self, f: Polynomial) -> Polynomial:
        """Replace ``t_ijk^2`` by ``p t_ijk - q`` until every triple degree is <= 1."""
        for tv in self._triples:
            name = tv.name
            if f.degree_in(name) < 2:
                continue
            i = self.ring.index(name)
            x = self.ring.var(name)
            p = self.p(*tv.indices)
            q = self.q(*tv.indices)
            while f.degree_in(name) >= 2:
                high = {}
                low = {}
                for m, c in f.terms.items():
                    if m[i] >= 2:
                        mm = list(m)
                        mm[i] -= 2
                        high[tuple(mm)] = c
                    else:
                        low[m] = c
                h = Polynomial(self.ring, high)
                f = Polynomial(self.ring, low) + h * (p * x - q)
        return f


_REDUCERS: dict[tuple[str, ...], TraceReducer] = {}
_REDUCERS_LOCK = Lock()


def reducer_for(ring: Ring) -> TraceReducer:
    with _REDUCERS_LOCK:
        red = _REDUCERS.get(ring.variables)
        if red is None:
            red = _REDUCERS[ring.variables] = TraceReducer(ring)
        return red


def reduce_trace(w: Word, ring: Ring) -> Polynomial:
    """Polynomial in the Fricke coordinates of ``ring`` equal to ``t_w``."""
    return reducer_for(ring).reduce(w)


def canonical_form(f: Polynomial, ring: Ring | None = None) -> Polynomial:
    """Fold every ``t_ijk^2`` with the ring relation; canonical for rank <= 3."""
    return reducer_for(ring or f.ring)._fold_triples(f)


def theta(alpha: Word, beta: Word, ring: Ring) -> Polynomial:
    """``t_{alpha beta} - t_alpha``."""
    red = reducer_for(ring)
    return red.reduce(alpha * beta) - red.reduce(alpha)


def ring_relation_F(ring: Ring, triple: tuple[int, int, int] = (0, 1, 2)) -> Polynomial:
    """``t_abc^2 - p t_abc + q`` for the given triple of generator indices."""
    red = reducer_for(ring)
    x = ring.trace_var(triple)
    return x * x - red.p(*triple) * x + red.q(*triple)


def builtin_polynomials(ring: Ring) -> dict[str, Polynomial]:
    """``p``, ``q``, ``F`` and ``Delta = p^2 - 4q`` in the rank-three trace ring."""
    if ring.generators is None or len(ring.generators) != 3 or ring.nvars != 7:
        raise ValueError("builtin polynomials live in the 7-variable rank-3 trace ring")
    red = reducer_for(ring)
    p, q = red.p(0, 1, 2), red.q(0, 1, 2)
    return {"p": p, "q": q, "F": ring_relation_F(ring), "Delta": p * p - 4 * q}


def vogt_rhs(a: Word, b: Word, c: Word, d: Word, ring: Ring) -> Polynomial:
    t = reducer_for(ring).reduce
    return (t(a) * t(b) * t(c) * t(d) - t(c) * t(d) * t(a * b) - t(b) * t(c) * t(a * d)
            - t(a) * t(d) * t(b * c) - t(a) * t(b) * t(c * d)
            + t(a * d) * t(b * c) - t(a * c) * t(b * d) + t(a * b) * t(c * d)
            + t(d) * t(a * b * c) + t(c) * t(a * b * d) + t(b) * t(a * c * d)
            + t(a) * t(b * c * d))


def vogt_check(a: Word, b: Word, c: Word, d: Word, ring: Ring) -> bool:
    """Check ``2 t_abcd`` against Vogt's right-hand side."""
    lhs = 2 * reduce_trace(a * b * c * d, ring)
    return traces_equal(lhs, vogt_rhs(a, b, c, d, ring), ring)


def traces_equal(f: Polynomial, g: Polynomial, ring: Ring, trials: int = 4, seed: int = 0) -> bool:
    """Equality in B(F_n).

    Compares canonical forms for rank <= 3, which decides equality.  For rank > 3
    a syntactic mismatch falls back to exact evaluation at random SL(2)
    tuples, which is a probabilistic test.
    """
    if f == g:
        return True
    if ring.generators is not None:
        f, g = canonical_form(f, ring), canonical_form(g, ring)
        if f == g:
            return True
    if len(ring.generators or ()) <= 3:
        return False
    from .oracle import basic_traces, random_representation

    diff = f - g
    for k in range(trials):
        rep = random_representation(len(ring.generators), seed=seed * 1000 + k)
        if diff.eval(basic_traces(rep, ring)) != 0:
            return False
    return True
