"""Ideals with cached Gröbner bases and the operations the examples need.

Intersections and quotients go through an auxiliary variable and a block
order that eliminates it; radical membership uses the Rabinowitsch trick.
Nothing here decides radicality: :func:`nonradical_witness` can only prove
that an ideal is *not* radical.
"""

from __future__ import annotations

import json
from itertools import combinations_with_replacement
from threading import Lock
from typing import Iterable, Sequence

from .groebner import Budget, GroebnerBasis, buchberger, normal_form
from .polyring import GREVLEX, MonomialOrder, Polynomial, Ring, RingError

INFINITE = "infinite"


class Ideal:
    """Finite generator list in a fixed ring.

    Generators are normalized (integer-primitive, positive leading
    coefficient), zeros dropped and duplicates removed.  Reduced Gröbner bases
    are cached per monomial order.
    """

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = (), label: str = "",
                 meta: dict | None = None):
        self.ring = ring
        seen = set()
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingError("generator from a different ring")
            if not g:
                continue
            g = g.normalized()
            if g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.label = label
        self.meta = dict(meta or {})
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = Lock()

    @classmethod
    def parse(cls, ring: Ring, texts: Sequence[str], label: str = "") -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts], label)

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<Ideal{name} with {len(self.generators)} generators in {len(self.ring.variables)} variables>"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def is_zero(self) -> bool:
        return not self.generators

    def gb(self, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> GroebnerBasis:
        hit = self._gb.get(order)
        if hit is not None:
            return hit
        result = buchberger(self.generators, order, budget, ring=self.ring)
        with self._lock:
            self._gb.setdefault(order, result)
        return result

    def is_unit(self, budget: Budget | None = None) -> bool:
        return self.gb(budget=budget).is_unit()

    def member(self, f: Polynomial, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> bool:
        return member(f, self, order, budget)

    def to_json(self) -> dict:
        return {"ring": list(self.ring.variables),
                "generators": [g.to_str() for g in self.generators]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingError("ideals live in different rings")


def ideal_from_json(data: dict | str, ring: Ring | None = None, label: str = "") -> Ideal:
    if isinstance(data, str):
        data = json.loads(data)
    if ring is None:
        ring = Ring(tuple(data["ring"]))
    elif list(ring.variables) != list(data["ring"]):
        raise RingError("ideal file ring does not match")
    return Ideal(ring, [ring.parse(g) for g in data["generators"]], label or data.get("label", ""))


def load_ideal(path, ring: Ring | None = None) -> Ideal:
    from pathlib import Path

    path = Path(path)
    return ideal_from_json(path.read_text(), ring, label=path.stem)


# ----------------------------------------------------------------- membership

def member(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> bool:
    if f.ring != I.ring:
        raise RingError("ring mismatch")
    if not f:
        return True
    if I.is_zero():
        return False
    return not normal_form(f, I.gb(order, budget))


def reduce_mod(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> Polynomial:
    if I.is_zero():
        return f
    return normal_form(f, I.gb(order, budget))


def contains(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> bool:
    """``J ⊆ I``."""
    _same_ring(I, J)
    return all(member(g, I, order, budget) for g in J.generators)


def equal(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> bool:
    """Same ideal: identical reduced Gröbner bases under ``order``."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return I.is_zero() == J.is_zero() or (I.is_zero() and not J.gb(order, budget).polys) \
            or (J.is_zero() and not I.gb(order, budget).polys)
    return I.gb(order, budget).polys == J.gb(order, budget).polys


# ------------------------------------------------------------ elimination ops

def eliminate(I: Ideal, names: Sequence[str], budget: Budget | None = None) -> list[Polynomial]:
    """``I ∩ Q[remaining variables]`` for variables ``names`` listed first in the ring."""
    k = len(names)
    if tuple(I.ring.variables[:k]) != tuple(names):
        raise RingError("eliminated variables must come first in the ring")
    gb = I.gb(MonomialOrder("block", k), budget)
    keep = [p for p in gb.polys if not any(p.degree_in(v) > 0 for v in names)]
    return keep


def intersect(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """``I ∩ J`` by eliminating ``y`` from ``y I + (1 - y) J``."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    if _is_whole(I, budget):
        return J
    if _is_whole(J, budget):
        return I
    if contains(J, I, budget=budget):
        return I
    if contains(I, J, budget=budget):
        return J
    big = _fresh_aux(I.ring, first=True)
    y = big.var(big.variables[0])
    # starting from the grevlex bases keeps the elimination run short
    gens = [y * g.embed(big) for g in I.gb(budget=budget).polys]
    gens += [(1 - y) * g.embed(big) for g in J.gb(budget=budget).polys]
    kept = eliminate(Ideal(big, gens), big.variables[:1], budget)
    return Ideal(I.ring, [p.restrict(I.ring) for p in kept])


def intersect_all(ideals: Sequence[Ideal], budget: Budget | None = None) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J, budget)
    return out


def _fresh_aux(ring: Ring, first: bool) -> Ring:
    k = 0
    while True:
        name = "y" if k == 0 else f"y{k}"
        try:
            big = ring.with_aux([name], first=first)
        except RingError:
            k += 1
            continue
        return big


def _is_whole(I: Ideal, budget: Budget | None) -> bool:
    return any(g.is_constant() for g in I.generators) or I.is_unit(budget)


def exact_divide(h: Polynomial, g: Polynomial) -> Polynomial:
    """``h / g``; raises ``ArithmeticError`` if ``g`` does not divide ``h``."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    ring = h.ring
    lm_g, lc_g = g.leading_term()
    quotient = ring.zero()
    rem = h
    while rem:
        lm, lc = rem.leading_term()
        if any(a < b for a, b in zip(lm, lm_g)):
            raise ArithmeticError("non-exact polynomial division")
        mono = Polynomial(ring, {tuple(a - b for a, b in zip(lm, lm_g)): lc / lc_g})
        quotient = quotient + mono
        rem = rem - mono * g
    return quotient


def quotient_by_element(I: Ideal, g: Polynomial, budget: Budget | None = None) -> Ideal:
    """``(I : g) = (I ∩ (g)) / g``."""
    if member(g, I, budget=budget):
        return Ideal(I.ring, [I.ring.one()])
    inter = intersect(I, Ideal(I.ring, [g]), budget)
    return Ideal(I.ring, [exact_divide(h, g) for h in inter.generators])


def quotient(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """``(I : J)``, the intersection of ``(I : g)`` over the generators of ``J``."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("quotient by the zero ideal")
    parts = [quotient_by_element(I, g, budget) for g in J.generators]
    parts = [P for P in parts if not _is_whole(P, budget)]
    if not parts:
        return Ideal(I.ring, [I.ring.one()])
    return intersect_all(parts, budget)


def saturate(I: Ideal, J: Ideal, budget: Budget | None = None, max_rounds: int = 50) -> Ideal:
    """``(I : J^infinity)`` by repeated quotients until the chain stabilizes."""
    cur = I
    for _ in range(max_rounds):
        nxt = quotient(cur, J, budget)
        if contains(cur, nxt, budget=budget):
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def radical_member(f: Polynomial, I: Ideal, budget: Budget | None = None) -> bool:
    """``f ∈ rad(I)`` iff ``1 ∈ I + (1 - y f)`` in a ring with a fresh ``y``."""
    if f.ring != I.ring:
        raise RingError("ring mismatch")
    if not f or member(f, I, budget=budget):
        return True
    big = _fresh_aux(I.ring, first=False)
    y = big.var(big.variables[-1])
    gens = [g.embed(big) for g in I.generators] + [1 - y * f.embed(big)]
    return Ideal(big, gens).is_unit(budget)


def nonradical_witness(I: Ideal, candidates: Sequence[Polynomial], max_factors: int = 2,
                       budget: Budget | None = None) -> Polynomial | None:
    """First ``f`` in ``rad(I) \\ I`` among candidates and their products.

    Products of up to ``max_factors`` candidates are tried in order of size.
    ``None`` says nothing about radicality.
    """
    cands = [c for c in candidates if c]
    seen = set()
    for k in range(1, max_factors + 1):
        for combo in combinations_with_replacement(range(len(cands)), k):
            f = cands[combo[0]]
            for i in combo[1:]:
                f = f * cands[i]
            f = f.normalized()
            if f in seen:
                continue
            seen.add(f)
            if not member(f, I, budget=budget) and radical_member(f, I, budget):
                return f
    return None


# ------------------------------------------------------------ zero-dim count

def vector_space_dimension(I: Ideal, budget: Budget | None = None) -> int | str:
    """``dim_Q Q[x]/I`` by counting standard monomials, or ``"infinite"``."""
    gb = I.gb(GREVLEX, budget)
    n = I.ring.nvars
    if not gb.polys:
        return INFINITE if n else 1
    if gb.is_unit():
        return 0
    leads = gb.leading_monomials()
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leads if m[i] and all(m[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    return _count_standard(leads, bounds)


def _count_standard(leads: list[tuple[int, ...]], bounds: list[int]) -> int:
    n = len(bounds)
    count = 0
    exps = [0] * n

    def divisible(prefix_len: int) -> bool:
        # only leads supported on the fixed prefix can already divide
        for m in leads:
            if all(m[j] == 0 for j in range(prefix_len, n)) and all(m[j] <= exps[j] for j in range(prefix_len)):
                return True
        return False

    def rec(i: int):
        nonlocal count
        if i == n:
            count += 1
            return
        for e in range(bounds[i]):
            exps[i] = e
            if divisible(i + 1):
                break  # larger e in this slot stays divisible
            rec(i + 1)
        exps[i] = 0

    rec(0)
    return count
