"""Worked examples with their expected ideals, runnable as checks.

Each case loads presentations and expected ideals from the package data and
yields named assertions.  :func:`run_case` executes them and returns one
JSON-able record per assertion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import builder as B
from . import ideal as ops
from .groebner import Budget, BudgetExceeded
from .ideal import Ideal
from .oracle import basic_traces, binary_dihedral, is_simple
from .presentation import Presentation

FAST, SLOW = "fast", "slow"

Check = tuple[str, Callable[[], bool]]


class Context:
    """Lazy, per-run cache of presentations, ideals and derived ideals."""

    def __init__(self, budget: Budget | None = None):
        self.budget = budget
        self._cache: dict = {}

    def memo(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    def pres(self, name: str) -> Presentation:
        return self.memo(("pres", name), lambda: B.example_presentation(name))

    def I2(self, name: str) -> Ideal:
        return self.memo(("I2", name), lambda: B.character_ideal(self.pres(name)))

    def I1(self, name: str) -> Ideal:
        return self.memo(("I1", name), lambda: B.partial_ideal_I1(self.pres(name)))

    def ideal(self, name: str, ring) -> Ideal:
        return self.memo(("ideal", name), lambda: B.named_example_ideals(name, ring))

    # budget-threaded shorthands
    def eq(self, I, J):
        return ops.equal(I, J, budget=self.budget)

    def inter(self, *ideals):
        return ops.intersect_all(list(ideals), self.budget)

    def contains(self, I, J):
        return ops.contains(I, J, budget=self.budget)


@dataclass(frozen=True)
class GoldenCase:
    name: str
    description: str
    reference: str
    runtime: str
    checks: Callable[[Context], Iterator[Check]] = field(repr=False)
    claims: tuple[str, ...] = ()  # stated but not machine-verified


def _stabilization(ctx: Context, pres: str) -> Check:
    def run():
        I = ctx.I2(pres)
        return all(ops.member(g, I, budget=ctx.budget)
                   for g in B.stabilization_generators(ctx.pres(pres), I.ring))
    return ("length-3 prefix generators lie in the character ideal", run)


def _mode_equivalence(ctx: Context, pres: str) -> Check:
    def run():
        p = ctx.pres(pres)
        return ctx.eq(B.character_ideal(p, "pair"), ctx.I2(pres))
    return ("relator and pair modes give the same ideal", run)


# ------------------------------------------------------------------- cases

def _trefoil(ctx: Context) -> Iterator[Check]:
    def I1():
        return ctx.I1("trefoil")

    def comp(name):
        return ctx.ideal(name, I1().ring)

    def cands():
        return [g for n in ("trefoil_abelian", "trefoil_simple_double", "trefoil_simple")
                for g in comp(n).generators]

    yield ("I1 = abelian ∩ doubled simple component",
           lambda: ctx.eq(I1(), ctx.inter(comp("trefoil_abelian"), comp("trefoil_simple_double"))))
    yield ("I2 = abelian ∩ simple component",
           lambda: ctx.eq(ctx.I2("trefoil"), ctx.inter(comp("trefoil_abelian"), comp("trefoil_simple"))))
    yield ("t_a - t_b in I1", lambda: I1().member(I1().ring.parse("t_a - t_b")))
    yield ("t_ab - 1 not in I1", lambda: not I1().member(I1().ring.parse("t_ab - 1")))
    yield ("I1 has a non-radical witness",
           lambda: ops.nonradical_witness(I1(), cands(), budget=ctx.budget) is not None)
    yield ("no witness for I2 among component generator products",
           lambda: ops.nonradical_witness(ctx.I2("trefoil"), cands(), budget=ctx.budget) is None)
    yield _stabilization(ctx, "trefoil")
    yield _mode_equivalence(ctx, "trefoil")


def _trefoil_xy(ctx: Context) -> Iterator[Check]:
    def I1():
        return ctx.I1("trefoil_xy")

    def parts():
        N = ctx.memo("xy_ns", lambda: B.nonsimple_ideal(ctx.pres("trefoil_xy")))
        return N, ctx.ideal("trefoil_xy_simple", I1().ring)

    def no_witness():
        N, S = parts()
        return ops.nonradical_witness(I1(), list(N.gb().polys) + list(S.generators),
                                      budget=ctx.budget) is None

    def differs():
        other = B.rename_ring(I1(), ctx.I1("trefoil").ring)
        return not ctx.eq(other, ctx.I1("trefoil"))

    yield ("I1 = non-simple ∩ simple line", lambda: ctx.eq(I1(), ctx.inter(*parts())))
    yield ("I1 admits no witness from its component generators", no_witness)
    yield ("I1 differs from the two-bridge I1 under renaming", differs)


def _fig8(ctx: Context) -> Iterator[Check]:
    def I():
        return ctx.I2("fig8_orbifold")

    def stated():
        R = I().ring
        return ctx.inter(*(ctx.ideal(n, R) for n in ("fig8_trivial", "fig8_abelian", "fig8_double")))

    yield ("ideal = stated triple intersection", lambda: ctx.eq(I(), stated()))
    yield ("vector space dimension 4", lambda: ops.vector_space_dimension(I(), ctx.budget) == 4)
    yield _stabilization(ctx, "fig8_orbifold")


def _whitehead(ctx: Context) -> Iterator[Check]:
    def I():
        return ctx.I2("whitehead_84")

    def orbit():
        return ctx.ideal("whitehead_triple_orbit", I().ring)

    yield ("vector space dimension 27", lambda: ops.vector_space_dimension(I(), ctx.budget) == 27)
    yield ("t_a = +-sqrt2, t_b = t_ab = 0 lie on the scheme", lambda: ctx.contains(orbit(), I()))
    yield ("removing those two points leaves dimension 21 (multiplicity 3 each)",
           lambda: ops.vector_space_dimension(ops.saturate(I(), orbit(), ctx.budget), ctx.budget) == 21)


def _z_z4(ctx: Context) -> Iterator[Check]:
    def I():
        return ctx.I2("z_z4")

    yield ("contains t_b(t_b - 2)(t_b + 2)",
           lambda: I().member(I().ring.parse("t_b*(t_b - 2)*(t_b + 2)")))
    yield ("ideal = intersection of the three components",
           lambda: ctx.eq(I(), ctx.inter(*(ctx.ideal(n, I().ring)
                                             for n in ("z_z4_c0", "z_z4_plus", "z_z4_minus")))))


def _z_z_z4(ctx: Context) -> Iterator[Check]:
    def I():
        return ctx.I2("z_z_z4")

    yield ("ideal = intersection of the three components",
           lambda: ctx.eq(I(), ctx.inter(*(ctx.ideal(n, I().ring)
                                             for n in ("z_z_z4_c0", "z_z_z4_plus", "z_z_z4_minus")))))


def _m2(ctx: Context) -> Iterator[Check]:
    def X():
        return ctx.I2("m2")

    def get(name):
        return ctx.ideal(name, X().ring)

    def var(name):
        return X().ring.var(name)

    yield ("t_c in rad(I)", lambda: ops.radical_member(var("t_c"), get("M2_I"), ctx.budget))
    yield ("t_mu in rad(I)", lambda: ops.radical_member(var("t_mu"), get("M2_I"), ctx.budget))
    yield ("t_c not in I", lambda: not get("M2_I").member(var("t_c")))
    yield ("(t_c, t_mu) contains I", lambda: ctx.contains(get("M2_rad_I"), get("M2_I")))
    yield ("I does not contain (t_c, t_mu)", lambda: not ctx.contains(get("M2_I"), get("M2_rad_I")))
    yield ("witness t_c for I", lambda: ops.nonradical_witness(
        get("M2_I"), [var("t_c"), var("t_mu")], budget=ctx.budget) == var("t_c"))
    yield ("character ideal = non-simple ∩ I ∩ J", lambda: ctx.eq(
        X(), ctx.inter(B.nonsimple_ideal(ctx.pres("m2")), get("M2_I"), get("M2_J"))))


def _bor_parts(ctx: Context):
    I = ctx.I2("borromean")
    R = I.ring
    signs = [f"bor_I{x}_{s}" for x in "abc" for s in ("plus", "minus")]
    ns = ctx.ideal("bor_I_ns", R)
    I7 = ctx.memo("I7", lambda: ctx.inter(ns, *(ctx.ideal(n, R) for n in signs)))
    I0 = ctx.ideal("borromean_I0", R)
    Q = ctx.memo("quot", lambda: ops.quotient(I, I7, ctx.budget))
    return I, ns, I7, I0, Q, [ctx.ideal(n, R) for n in signs]


def _borromean_membership(ctx: Context) -> Iterator[Check]:
    yield ("non-simple ideal = stated seven generators", lambda: ctx.eq(
        B.nonsimple_ideal(ctx.pres("borromean")), _bor_parts(ctx)[1]))

    def I0_in_Q():
        _, _, _, I0, Q, _ = _bor_parts(ctx)
        return ctx.contains(Q, I0)

    def Q_in_I0():
        _, _, _, I0, Q, _ = _bor_parts(ctx)
        return ctx.contains(I0, Q)

    yield ("I0 generators lie in (I_Bor : I7)", I0_in_Q)
    yield ("(I_Bor : I7) generators lie in I0", Q_in_I0)
    yield _stabilization(ctx, "borromean")


def _borromean_full(ctx: Context) -> Iterator[Check]:
    def split():
        I, _, I7, I0, _, _ = _bor_parts(ctx)
        return ctx.eq(I, ctx.inter(I0, I7))

    def components_contain():
        I, ns, _, I0, _, signs = _bor_parts(ctx)
        return all(ctx.contains(J, I) for J in [ns, I0, *signs])

    def dihedral_on_I0():
        I, _, _, I0, _, _ = _bor_parts(ctx)
        for sign in (1, -1):
            vals = basic_traces(binary_dihedral(sign), I.ring)
            if any(g.eval(vals) != 0 for g in list(I.generators) + list(I0.generators)):
                return False
        return True

    yield ("I_Bor = I0 ∩ I7", split)
    yield ("every stated component contains I_Bor", components_contain)
    yield ("binary-dihedral characters lie on I0", dihedral_on_I0)
    yield ("binary-dihedral representations are simple",
           lambda: all(is_simple(binary_dihedral(s), 2) for s in (1, -1)))
    yield _mode_equivalence(ctx, "borromean")


CASES: dict[str, GoldenCase] = {c.name: c for c in [
    GoldenCase("trefoil", "trefoil knot, two-bridge presentation",
               "trefoil example: I1 and I2 decompositions", FAST, _trefoil,
               ("I2 is radical",)),
    GoldenCase("trefoil_xy", "trefoil knot as <x, y | x^2 = y^3>",
               "presentation dependence of I1", FAST, _trefoil_xy,
               ("I1 of this presentation is radical",)),
    GoldenCase("fig8_orbifold", "figure-eight orbifold with cone angle 2pi/3",
               "figure-eight orbifold example: three points, one double", FAST, _fig8),
    GoldenCase("whitehead_84", "Whitehead link orbifold, indices (8, 4)",
               "Whitehead orbifold example: 21 simple points and two triple points", FAST, _whitehead,
               ("3 simple, 4 central and 14 abelian non-central characters",)),
    GoldenCase("z_z4", "Z + Z/4", "Z + Z/4 example: three components", FAST, _z_z4,
               ("the ideal is radical",)),
    GoldenCase("z_z_z4", "Z + Z + Z/4", "Z + Z + Z/4 example: three components", FAST, _z_z_z4),
    GoldenCase("M2", "cable space glued to the twisted I-bundle over the Klein bottle",
               "M_2 example: rad(I) = (t_c, t_mu)", FAST, _m2, ("J is radical",)),
    GoldenCase("borromean_I0_membership", "Borromean rings, distinguished component",
               "Borromean rings: I0 = (I_Bor : I7)", SLOW, _borromean_membership,
               ("I0 is radical and prime",)),
    GoldenCase("borromean_full", "Borromean rings, eight-component decomposition",
               "Borromean rings: I_Bor = I0 ∩ I7", SLOW, _borromean_full,
               ("I_Bor is radical with eight irreducible components",)),
]}


def list_cases(fast_only: bool = False) -> list[str]:
    return [n for n, c in CASES.items() if not fast_only or c.runtime == FAST]


def run_case(name: str, budget: Budget | None = None) -> list[dict]:
    """Run every assertion of a case; one record per assertion.

    ``status`` is ``pass``, ``fail``, ``budget_exceeded`` or ``error``.
    """
    try:
        case = CASES[name]
    except KeyError:
        raise KeyError(f"unknown case {name!r}; known: {', '.join(CASES)}") from None
    ctx = Context(budget)
    out = []
    for label, thunk in case.checks(ctx):
        t0 = time.perf_counter()
        detail = None
        try:
            status = "pass" if thunk() else "fail"
        except BudgetExceeded as exc:
            status, detail = "budget_exceeded", str(exc)
        except Exception as exc:  # reported, not raised: one bad assertion should not hide the rest
            status, detail = "error", f"{type(exc).__name__}: {exc}"
        rec = {"case": name, "assertion": label, "status": status,
               "wall_ms": round((time.perf_counter() - t0) * 1000, 1)}
        if detail:
            rec["detail"] = detail
        out.append(rec)
    return out
