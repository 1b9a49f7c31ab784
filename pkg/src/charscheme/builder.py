"""Generating sets for character-scheme ideals.

For a presentation with relators ``r`` the ideal is generated by the trace
differences ``t_{b r} - t_b`` for ``b`` in ``{e, g_i, g_j g_k}``.  With rank
three the ring relation ``F`` is appended so the ideal lives in B(F_3).
Rank above three is supported, but the ring relations of B(F_n) are then not
added; results are relative to that ring and flagged in ``Ideal.meta``.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Sequence

from .ideal import Ideal
from .polyring import Polynomial, Ring, trace_ring
from .presentation import Presentation, Word, abelianize
from .traces import reducer_for, ring_relation_F

MODES = ("relator", "pair")


def ring_for(p: Presentation) -> Ring:
    return trace_ring(p.generators)


def prefix_words(n: int, max_len: int = 2) -> list[Word]:
    """``e``, each ``g_i`` and (for ``max_len >= 2``) each ``g_j g_k`` with ``j < k``."""
    out = [Word()]
    out += [Word.generator(i) for i in range(n)]
    if max_len >= 2:
        out += [Word(((j, 1), (k, 1))) for j, k in combinations(range(n), 2)]
    return out


def _thetas(p: Presentation, ring: Ring, prefixes: Sequence[Word], mode: str) -> list[Polynomial]:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    red = reducer_for(ring)
    gens = []
    for rel in p.relators:
        if mode == "relator":
            r = rel.word()
            for b in prefixes:
                gens.append(red.reduce(b * r) - red.reduce(b))
        else:
            for b in prefixes:
                gens.append(red.reduce(b * rel.rhs) - red.reduce(b * rel.lhs))
    return gens


def _finish(p: Presentation, ring: Ring, gens: list[Polynomial], label: str, mode: str) -> Ideal:
    meta = {"mode": mode, "rank": p.rank}
    if p.rank == 3:
        gens = gens + [ring_relation_F(ring)]
    elif p.rank > 3:
        meta["relative_to_free_ring"] = True
    return Ideal(ring, gens, label=label, meta=meta)


def character_ideal(p: Presentation, mode: str = "relator", ring: Ring | None = None) -> Ideal:
    """Ideal of the character scheme of ``p`` in Fricke coordinates."""
    ring = ring or ring_for(p)
    gens = _thetas(p, ring, prefix_words(p.rank), mode)
    return _finish(p, ring, gens, p.name or "character_ideal", mode)


def partial_ideal_I1(p: Presentation, mode: str = "relator", ring: Ring | None = None) -> Ideal:
    """Only the ``b = e`` and ``b = g_i`` generators."""
    ring = ring or ring_for(p)
    gens = _thetas(p, ring, prefix_words(p.rank, max_len=1), mode)
    return _finish(p, ring, gens, (p.name or "I1") + "_I1", mode)


def stabilization_generators(p: Presentation, ring: Ring | None = None) -> list[Polynomial]:
    """``t_{b r} - t_b`` for every reduced word ``b`` of length three."""
    from .oracle import words_up_to

    ring = ring or ring_for(p)
    red = reducer_for(ring)
    threes = [w for w in words_up_to(p.rank, 3) if len(w) == 3]
    out = []
    for rel in p.relators:
        r = rel.word()
        for b in threes:
            out.append(red.reduce(b * r) - red.reduce(b))
    return out


def nonsimple_ideal(p: Presentation) -> Ideal:
    """Character ideal of the abelianized presentation."""
    I = character_ideal(abelianize(p))
    I.label = (p.name or "presentation") + "_nonsimple"
    return I


# ---------------------------------------------------------------- abelian

def default_names(beta: int) -> list[str]:
    if beta <= 26:
        return [chr(ord("a") + i) for i in range(beta)]
    return [f"g{i}" for i in range(beta)]


def _z(ring: Ring, i: int, j: int) -> Polynomial:
    """``2 t_ij - t_i t_j``; for ``i == j`` this is ``t_i^2 - 4``."""
    ti, tj = ring.trace_var((i,)), ring.trace_var((j,))
    if i == j:
        return ti * ti - 4
    return 2 * ring.trace_var(tuple(sorted((i, j)))) - ti * tj


def _t(ring: Ring, *ix: int) -> Polynomial:
    # repeated pair index: tr(x^2) = t_x^2 - 2
    if len(ix) == 2 and ix[0] == ix[1]:
        ti = ring.trace_var((ix[0],))
        return ti * ti - 2
    return ring.trace_var(tuple(sorted(ix)))


def f_poly(ring: Ring, a: int, b: int) -> Polynomial:
    ta, tb, tab = _t(ring, a), _t(ring, b), _t(ring, a, b)
    return ta * ta + tb * tb + tab * tab - ta * tb * tab - 4


def g_poly(ring: Ring, a: int, b: int, c: int) -> Polynomial:
    t = lambda *ix: _t(ring, *ix)  # noqa: E731
    p = t(a) * t(b, c) + t(b) * t(a, c) + t(c) * t(a, b) - t(a) * t(b) * t(c)
    return t(a) * p - 2 * t(a, b) * t(a, c) - 4 * t(b, c) + 2 * t(b) * t(c)


def h_poly(ring: Ring, a: int, b: int, c: int, d: int) -> Polynomial:
    return _z(ring, a, b) * _z(ring, c, d) - _z(ring, a, c) * _z(ring, b, d)


def abelian_ideal(beta: int, names: Sequence[str] | None = None) -> Ideal:
    """Generators of the character ideal of ``Z^beta``.

    ``f`` for each pair, ``g`` for each triple and choice of distinguished
    index, ``h`` for each four distinct indices, and ``2 t_ijk - p`` for each
    triple variable.
    """
    names = list(names) if names is not None else default_names(beta)
    if len(names) != beta:
        raise ValueError("need one name per generator")
    ring = trace_ring(names)
    gens = [f_poly(ring, a, b) for a, b in combinations(range(beta), 2)]
    for tri in combinations(range(beta), 3):
        for a in tri:
            b, c = [x for x in tri if x != a]
            gens.append(g_poly(ring, a, b, c))
    for quad in combinations(range(beta), 4):
        for a, b, c, d in permutations(quad):
            gens.append(h_poly(ring, a, b, c, d))
    red = reducer_for(ring)
    for tri in combinations(range(beta), 3):
        gens.append(2 * ring.trace_var(tri) - red.p(*tri))
    meta = {"rank": beta}
    if beta > 3:
        meta["relative_to_free_ring"] = True
    return Ideal(ring, gens, label=f"abelian_{beta}", meta=meta)


def rename_ring(I: Ideal, ring: Ring) -> Ideal:
    """Same generators, variables renamed positionally into ``ring``."""
    if ring.nvars != I.ring.nvars:
        raise ValueError("rings have different numbers of variables")
    return Ideal(ring, [Polynomial(ring, dict(g.terms)) for g in I.generators], label=I.label)


# ---------------------------------------------------------------- stored data

def _data_dir(kind: str):
    from importlib.resources import files

    return files("charscheme") / "data" / kind


def example_ideal_names() -> list[str]:
    return sorted(p.name[:-5] for p in _data_dir("ideals").iterdir() if p.name.endswith(".json"))


def named_example_ideals(name: str, ring: Ring | None = None) -> Ideal:
    """A stored example ideal, generators exactly as written in the data file."""
    from .ideal import ideal_from_json

    path = _data_dir("ideals") / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"unknown example ideal {name!r}")
    return ideal_from_json(path.read_text(), ring, label=name)


def example_presentation_names() -> list[str]:
    return sorted(p.name[:-4] for p in _data_dir("presentations").iterdir() if p.name.endswith(".txt"))


def example_presentation(name: str) -> Presentation:
    from .presentation import parse_presentation

    path = _data_dir("presentations") / f"{name}.txt"
    if not path.is_file():
        raise KeyError(f"unknown example presentation {name!r}")
    return parse_presentation(path.read_text(), name=name)
