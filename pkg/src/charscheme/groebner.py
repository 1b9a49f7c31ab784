"""Buchberger's algorithm over Q and the ideal operations built on it.

Internally a monomial is one Python int: the weight vector of the monomial
order packed into the high part and the exponent vector (16 bits per
variable, top bit of each field kept clear as a guard) in the low part.
Both parts are linear in the exponents, so monomial multiplication is
integer addition, order comparison is integer comparison, and divisibility
is a single masked subtraction.
"""

from __future__ import annotations

import heapq
import logging
import os
import time
from dataclasses import dataclass, field

from .polyring import GREVLEX, MPQ, MonomialOrder, Polynomial, Q, Ring

log = logging.getLogger(__name__)

_FIELD = 16
_EXP_LIMIT = 1 << (_FIELD - 1)
_WEIGHT_BITS = 24
TIMEOUT_ENV = "CHARSCHEME_TIMEOUT_SECS"


class BudgetExceeded(RuntimeError):
    """A Gröbner computation hit its degree, pair or wall-clock limit."""


@dataclass
class Budget:
    max_degree: int = 60
    max_pairs: int = 2_000_000
    seconds: float | None = None

    @classmethod
    def from_env(cls, **kw) -> "Budget":
        b = cls(**kw)
        if b.seconds is None and os.environ.get(TIMEOUT_ENV):
            b.seconds = float(os.environ[TIMEOUT_ENV])
        return b

    def deadline(self) -> float | None:
        return None if self.seconds is None else time.monotonic() + self.seconds


class Codec:
    """Packs exponent vectors into order-compatible ints for one (ring, order)."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.n = nvars
        self.order = order
        self.rows = order.matrix(nvars) if nvars else []
        self.low_bits = _FIELD * nvars
        self.low_mask = (1 << self.low_bits) - 1
        self.guard = sum(1 << (_FIELD * i + _FIELD - 1) for i in range(nvars))
        self.field_mask = (1 << (_FIELD - 1)) - 1
        wbase = 1 << _WEIGHT_BITS
        # contribution of one unit of variable i to the packed int
        self.unit = []
        for i in range(nvars):
            key = 0
            for row in self.rows:
                key = key * wbase + row[i]
            self.unit.append((key << self.low_bits) + (1 << (_FIELD * i)))

    def encode(self, exps) -> int:
        code = 0
        for i, e in enumerate(exps):
            if e:
                if e >= _EXP_LIMIT:
                    raise BudgetExceeded(f"exponent {e} too large")
                code += e * self.unit[i]
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        low = code & self.low_mask
        fm = self.field_mask
        return tuple((low >> (_FIELD * i)) & fm for i in range(self.n))

    def degree(self, code: int) -> int:
        return sum(self.decode(code))

    def divides(self, a: int, b: int) -> bool:
        """Does monomial ``a`` divide monomial ``b``?"""
        g = self.guard
        return ((((b & self.low_mask) | g) - (a & self.low_mask)) & g) == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode(max(x, y) for x, y in zip(self.decode(a), self.decode(b)))

    def to_internal(self, f: Polynomial) -> dict[int, MPQ]:
        return {self.encode(m): c for m, c in f.terms.items()}

    def to_poly(self, ring: Ring, terms) -> Polynomial:
        items = terms.items() if isinstance(terms, dict) else terms
        return Polynomial._raw(ring, {self.decode(m): c for m, c in items})


class _Elem:
    """Basis element: monic, terms sorted by decreasing monomial."""

    __slots__ = ("lead", "low", "tail", "terms", "deg", "sugar")

    def __init__(self, terms: list[tuple[int, MPQ]], codec: Codec, sugar: int | None = None):
        self.terms = terms
        self.lead = terms[0][0]
        self.low = self.lead & codec.low_mask
        self.tail = terms[1:]
        self.deg = codec.degree(self.lead)
        self.sugar = max(codec.degree(m) for m, _ in terms) if sugar is None else sugar


def _monic_sorted(terms: dict[int, MPQ]) -> list[tuple[int, MPQ]]:
    items = sorted(terms.items(), reverse=True)
    lc = items[0][1]
    if lc != 1:
        inv = Q(1) / lc
        items = [(m, c * inv) for m, c in items]
    return items


class _Reducer:
    def __init__(self, codec: Codec, budget: Budget):
        self.codec = codec
        self.budget = budget
        self.deadline = budget.deadline()
        self.steps = 0

    def check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("wall-clock budget exceeded")

    def normal_form(self, terms: dict[int, MPQ], basis: list[_Elem], full: bool = True) -> dict[int, MPQ]:
        """Remainder of ``terms`` on division by ``basis`` (destroys ``terms``)."""
        if not basis:
            return terms
        guard = self.codec.guard
        lmask = self.codec.low_mask
        heap = [-m for m in terms]
        heapq.heapify(heap)
        rem: dict[int, MPQ] = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            m = -pop(heap)
            c = terms.pop(m, None)
            if c is None:
                continue
            lowg = (m & lmask) | guard
            for g in basis:
                if ((lowg - g.low) & guard) == guard:
                    break
            else:
                rem[m] = c
                if not full:
                    # leading term irreducible: keep the rest untouched
                    rem.update(terms)
                    return rem
                continue
            self.steps += 1
            if not self.steps & 1023:
                self.check_time()
            shift = m - g.lead
            for gm, gc in g.tail:
                nm = gm + shift
                v = terms.get(nm)
                if v is None:
                    terms[nm] = -c * gc
                    push(heap, -nm)
                else:
                    v = v - c * gc
                    if v:
                        terms[nm] = v
                    else:
                        del terms[nm]
        return rem


def _spoly(f: _Elem, g: _Elem, lcm: int) -> dict[int, MPQ]:
    sf = lcm - f.lead
    sg = lcm - g.lead
    out: dict[int, MPQ] = {}
    for m, c in f.tail:
        out[m + sf] = c
    for m, c in g.tail:
        k = m + sg
        v = out.get(k)
        if v is None:
            out[k] = -c
        else:
            v = v - c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis; ``polys`` are monic and sorted by decreasing lead."""

    ring: Ring
    order: MonomialOrder
    polys: tuple[Polynomial, ...]
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return any(p.is_constant() and p for p in self.polys)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [p.leading_term(self.order)[0] for p in self.polys]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self)

    def normalized(self) -> list[Polynomial]:
        """Integer-primitive generators with positive leading coefficient."""
        return [p.normalized(self.order) for p in self.polys]

    def to_json(self) -> dict:
        return {"ring": list(self.ring.variables), "order": self.order.name,
                "generators": [p.to_str(self.order) for p in self.normalized()]}


def buchberger(gens, order: MonomialOrder = GREVLEX, budget: Budget | None = None,
               ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Sugar selection strategy with the Gebauer-Möller criteria.  Raises
    :class:`BudgetExceeded` rather than returning a partial basis.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    budget = budget or Budget.from_env()
    codec = Codec(ring.nvars, order)
    red = _Reducer(codec, budget)
    t0 = time.monotonic()

    inputs = [codec.to_internal(g) for g in gens if g]
    inputs.sort(key=lambda t: max(t))
    basis: list[_Elem] = []  # every element ever added (used for reduction)
    active: set[int] = set()
    pairs: dict[tuple[int, int], int] = {}  # (i, j) -> lcm of leads
    queue: list[tuple[int, int, int, int, int]] = []  # (sugar, deg, lcm, i, j)
    npairs = 0

    def add(terms: dict[int, MPQ], sugar: int | None = None):
        elem = _Elem(_monic_sorted(terms), codec, sugar)
        if elem.deg > budget.max_degree:
            raise BudgetExceeded(f"degree {elem.deg} exceeds limit {budget.max_degree}")
        basis.append(elem)
        _update(len(basis) - 1)

    def _update(ih: int):
        h = basis[ih]
        mh = h.lead
        cands = sorted(active)
        lcms = {ig: codec.lcm(mh, basis[ig].lead) for ig in cands}
        # criterion on new pairs (chain + coprime)
        D: list[int] = []
        C = list(cands)
        while C:
            ig = C.pop()
            lhg = lcms[ig]
            coprime = lhg == mh + basis[ig].lead
            if coprime or (not any(codec.divides(lcms[x], lhg) for x in C)
                           and not any(codec.divides(lcms[x], lhg) for x in D)):
                D.append(ig)
        E = [ig for ig in D if lcms[ig] != mh + basis[ig].lead]
        # prune old pairs made redundant by h
        for key in list(pairs):
            l12 = pairs[key]
            i, j = key
            if codec.divides(mh, l12) and codec.lcm(basis[i].lead, mh) != l12 \
                    and codec.lcm(basis[j].lead, mh) != l12:
                del pairs[key]
        for ig in E:
            l = lcms[ig]
            g = basis[ig]
            dl = codec.degree(l)
            sugar = max(g.sugar - g.deg, h.sugar - h.deg) + dl
            pairs[(ig, ih)] = l
            heapq.heappush(queue, (sugar, dl, l, ig, ih))
        for ig in list(active):
            if codec.divides(mh, basis[ig].lead):
                active.discard(ig)
        active.add(ih)

    for terms in inputs:
        current = [basis[i] for i in sorted(active, key=lambda i: basis[i].lead)]
        r = red.normal_form(dict(terms), current)
        if r:
            add(r)

    while queue:
        red.check_time()
        sugar, deg, l, i, j = heapq.heappop(queue)
        key = (i, j)
        if pairs.pop(key, None) is None:
            continue
        npairs += 1
        if npairs > budget.max_pairs:
            raise BudgetExceeded(f"more than {budget.max_pairs} pairs")
        if deg > budget.max_degree:
            raise BudgetExceeded(f"pair degree {deg} exceeds limit {budget.max_degree}")
        s = _spoly(basis[i], basis[j], l)
        current = [basis[k] for k in sorted(active, key=lambda k: basis[k].lead)]
        # top-reduction only; tails are cleaned up in the final inter-reduction
        h = red.normal_form(s, current, full=False)
        if h:
            add(h, max(sugar, max(codec.degree(m) for m in h)))

    # minimal basis, then inter-reduce tails
    leads = sorted(active, key=lambda k: basis[k].lead)
    minimal: list[_Elem] = []
    for k in leads:
        if not any(codec.divides(g.lead, basis[k].lead) for g in minimal):
            minimal.append(basis[k])
    reduced: list[_Elem] = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = red.normal_form(dict(g.tail), others)
        tail[g.lead] = Q(1)
        reduced.append(_Elem(sorted(tail.items(), reverse=True), codec))
    reduced.sort(key=lambda e: e.lead, reverse=True)
    polys = tuple(codec.to_poly(ring, e.terms) for e in reduced)
    stats = {"pairs": npairs, "basis_size": len(polys), "reductions": red.steps,
             "seconds": round(time.monotonic() - t0, 3)}
    log.debug("buchberger %s: %s", order.name, stats)
    return GroebnerBasis(ring, order, polys, stats)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo the reduced basis ``gb``."""
    if f.ring != gb.ring:
        raise ValueError("ring mismatch")
    codec = Codec(gb.ring.nvars, gb.order)
    elems = [_Elem(sorted(codec.to_internal(p).items(), reverse=True), codec) for p in gb.polys]
    elems.sort(key=lambda e: e.lead)
    red = _Reducer(codec, Budget())
    return codec.to_poly(gb.ring, red.normal_form(codec.to_internal(f), elems))


def s_polynomials_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Independent Buchberger-criterion check: every S-polynomial reduces to 0."""
    codec = Codec(gb.ring.nvars, gb.order)
    elems = [_Elem(sorted(codec.to_internal(p).items(), reverse=True), codec) for p in gb.polys]
    red = _Reducer(codec, Budget())
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            l = codec.lcm(elems[i].lead, elems[j].lead)
            if red.normal_form(_spoly(elems[i], elems[j], l), elems):
                return False
    return True
