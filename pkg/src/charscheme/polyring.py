"""Exact sparse multivariate polynomials over Q in named variables.

Coefficients are ``gmpy2.mpq``.  A :class:`Ring` is an ordered tuple of
variable names; trace rings of free groups are built by :func:`trace_ring`
with the canonical order singles, pairs, triples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

import gmpy2

Q = gmpy2.mpq
MPQ = type(Q(0))
Exps = tuple[int, ...]

AUX_PREFIX = "aux_"


class RingError(ValueError):
    """Raised on ring mismatches, unknown variables and malformed text."""


def to_q(c) -> "gmpy2.mpq":
    if isinstance(c, Fraction):
        return Q(c.numerator, c.denominator)
    if isinstance(c, str):
        return Q(c)
    return Q(c)


# ---------------------------------------------------------------- variables

@dataclass(frozen=True)
class TraceVariable:
    """``kind`` is one of single/pair/triple/aux; indices are 0-based."""

    kind: str
    indices: tuple[int, ...]
    name: str


def trace_name(indices: Sequence[int], gens: Sequence[str]) -> str:
    return "t_" + "".join(gens[i] for i in indices)


def trace_variables(gens: Sequence[str], max_arity: int = 3) -> list[TraceVariable]:
    n = len(gens)
    out: list[TraceVariable] = []
    for arity, kind in ((1, "single"), (2, "pair"), (3, "triple")):
        if arity > max_arity:
            break
        for idx in combinations(range(n), arity):
            out.append(TraceVariable(kind, idx, trace_name(idx, gens)))
    return out


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[variables]; equality is by variable names."""

    variables: tuple[str, ...]
    generators: tuple[str, ...] | None = field(default=None, compare=False)
    trace_vars: tuple[TraceVariable, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise RingError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", v):
                raise RingError(f"invalid variable name {v!r}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.variables)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r} in ring {self.variables}") from None

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Q(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = to_q(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def with_aux(self, names: Sequence[str], first: bool = False) -> "Ring":
        """Extend by auxiliary variables (prepended if ``first``)."""
        names = tuple(AUX_PREFIX + n if not n.startswith(AUX_PREFIX) else n for n in names)
        vs = names + self.variables if first else self.variables + names
        return Ring(vs, self.generators, self.trace_vars)

    def trace_var(self, indices: Sequence[int]) -> "Polynomial":
        if self.generators is None:
            raise RingError("not a trace ring")
        return self.var(trace_name(indices, self.generators))


def trace_ring(gens: Sequence[str], max_arity: int = 3) -> Ring:
    """The ring of Fricke coordinates t_i, t_ij (i<j), t_ijk (i<j<k)."""
    tv = trace_variables(gens, max_arity)
    names = [v.name for v in tv]
    if len(set(names)) != len(names):
        raise RingError(f"generator names {list(gens)} give colliding trace variable names")
    return Ring(tuple(names), tuple(gens), tuple(tv))


# ------------------------------------------------------------------- orders

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by ``kind`` in {lex, grevlex, block}.

    ``block`` with ``k`` compares the first ``k`` variables by grevlex and
    breaks ties by grevlex on the rest, so it eliminates the first block.
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise RingError(f"unknown monomial order {self.kind!r}")

    @property
    def name(self) -> str:
        return f"block{self.k}" if self.kind == "block" else self.kind

    def matrix(self, n: int) -> list[list[int]]:
        """Integer weight rows; monomials compare by their row products."""
        if self.kind == "lex":
            return [[int(i == j) for j in range(n)] for i in range(n)]
        if self.kind == "grevlex":
            return _grevlex_rows(n, 0, n)
        k = self.k
        if not 0 < k < n:
            raise RingError(f"block order needs 0 < k < {n}, got {k}")
        return _grevlex_rows(n, 0, k) + _grevlex_rows(n, k, n)

    def key(self, exps: Exps) -> tuple[int, ...]:
        return tuple(sum(w * e for w, e in zip(row, exps)) for row in self.matrix(len(exps)))


def _grevlex_rows(n: int, lo: int, hi: int) -> list[list[int]]:
    rows = [[1 if lo <= j < hi else 0 for j in range(n)]]
    for i in range(hi - 1, lo, -1):
        rows.append([-1 if j == i else 0 for j in range(n)])
    return rows


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def parse_order(name: str) -> MonomialOrder:
    if name.startswith("block"):
        return MonomialOrder("block", int(name[5:]))
    return MonomialOrder(name)


# -------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable map monomial -> nonzero rational over a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exps, object] | None = None):
        self.ring = ring
        clean: dict[Exps, gmpy2.mpq] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c if isinstance(c, MPQ) else to_q(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, MPQ)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"

    def __str__(self):
        return self.to_str()

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("ring mismatch")
            return other
        if isinstance(other, (int, Fraction, MPQ)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m)
            if v is None:
                terms[m] = c
            else:
                v = v + c
                if v:
                    terms[m] = v
                else:
                    del terms[m]
        return Polynomial._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MPQ)):
            c0 = to_q(other)
            if not c0:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {m: c * c0 for m, c in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Exps, gmpy2.mpq] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = terms.get(m)
                terms[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, MPQ)):
            return self * (Q(1) / to_q(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- queries
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, Q(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.ring.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def variables_used(self) -> set[str]:
        return {self.ring.variables[i] for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Exps, gmpy2.mpq]]:
        rows = order.matrix(self.ring.nvars)

        def key(item):
            m = item[0]
            return tuple(sum(w * e for w, e in zip(row, m)) for row in rows)

        return sorted(self.terms.items(), key=key, reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Exps, gmpy2.mpq]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms(order)[0]

    def normalized(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integer-primitive multiple with positive leading coefficient."""
        if not self.terms:
            return self
        dens = reduce(_lcm, (int(c.denominator) for c in self.terms.values()), 1)
        nums = [int(c * dens) for c in self.terms.values()]
        g = abs(reduce(gcd, nums))
        scale = Q(dens, g)
        if self.leading_term(order)[1] < 0:
            scale = -scale
        return self * scale

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return self * (Q(1) / self.leading_term(order)[1])

    # -- evaluation and substitution
    def eval(self, assignment: Mapping[str, object] | Sequence):
        """Evaluate at values supporting ``+``/``*`` (rationals, Gaussian rationals)."""
        if isinstance(assignment, Mapping):
            try:
                vals = [assignment[v] for v in self.ring.variables]
            except KeyError as exc:
                raise RingError(f"no value for variable {exc.args[0]!r}") from None
        else:
            vals = list(assignment)
            if len(vals) != self.ring.nvars:
                raise RingError("assignment length does not match ring")
        powers: dict[tuple[int, int], object] = {}
        total = 0
        for m, c in self.terms.items():
            term = None
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = vals[i] ** e
                        powers[key] = pw
                    term = pw if term is None else term * pw
            term = c if term is None else term * c
            total = total + term
        return total

    def substitute(self, mapping: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials of the same ring."""
        idx = {self.ring.index(v): p for v, p in mapping.items()}
        result = self.ring.zero()
        for m, c in self.terms.items():
            keep = list(m)
            factor = self.ring.one()
            for i, p in idx.items():
                if m[i]:
                    factor = factor * p ** m[i]
                    keep[i] = 0
            result = result + Polynomial._raw(self.ring, {tuple(keep): c}) * factor
        return result

    def embed(self, ring: Ring) -> "Polynomial":
        """Map into ``ring`` by variable names."""
        if ring == self.ring:
            return self
        pos = [ring.index(v) for v in self.ring.variables]
        n = ring.nvars
        terms = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                e[pos[i]] = k
            terms[tuple(e)] = c
        return Polynomial._raw(ring, terms)

    def restrict(self, ring: Ring) -> "Polynomial":
        """Inverse of :meth:`embed`; fails if a dropped variable occurs."""
        extra = self.variables_used() - set(ring.variables)
        if extra:
            raise RingError(f"variables {sorted(extra)} not in target ring")
        pos = [self.ring.index(v) for v in ring.variables]
        return Polynomial._raw(ring, {tuple(m[i] for i in pos): c for m, c in self.terms.items()})

    # -- text
    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        factor_order = _factor_print_order(ring)
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms(order)):
            neg = c < 0
            a = -c if neg else c
            factors = []
            for i in factor_order:
                e = m[i]
                if e == 1:
                    factors.append(ring.variables[i])
                elif e:
                    factors.append(f"{ring.variables[i]}^{e}")
            if not factors:
                body = _fmt_q(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = _fmt_q(a) + "*" + "*".join(factors)
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _fmt_q(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _factor_print_order(ring: Ring) -> list[int]:
    """Longer trace words first, so ``t_ab*t_a``; plain rings keep their order."""
    if ring.trace_vars:
        arity = {v.name: len(v.indices) for v in ring.trace_vars}
        return sorted(range(ring.nvars), key=lambda i: (-arity.get(ring.variables[i], 0), i))
    return list(range(ring.nvars))


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise RingError(f"unexpected character at {pos} in {text!r}")
        if m.group(1):
            out.append(("num", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if val != op:
            raise RingError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.toks:
            raise RingError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.toks):
            raise RingError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> Polynomial:
        kind, val = self.peek()
        sign = 1
        if val in ("+", "-"):
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while self.peek()[1] in ("+", "-"):
            _, op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.power()
        while self.peek()[1] in ("*", "/"):
            _, op = self.take()
            if op == "*":
                acc = acc * self.power()
            else:
                d = self.power()
                if not d.is_constant() or not d:
                    raise RingError(f"division by non-constant in {self.text!r}")
                acc = acc / d.constant_term()
        return acc

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise RingError(f"exponent must be a nonnegative integer in {self.text!r}")
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(int(val))
        if kind == "name":
            return self.ring.var(val)
        if val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if val == "-":
            return -self.power()
        raise RingError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``3/2*t_ab^2*t_c - t_abc + 4`` (parentheses and ``**`` allowed)."""
    return _Parser(text, ring).parse()


def poly_from_terms(ring: Ring, terms: Iterable[tuple[object, Exps]]) -> Polynomial:
    acc: dict[Exps, gmpy2.mpq] = {}
    for c, m in terms:
        acc[m] = acc.get(m, Q(0)) + to_q(c)
    return Polynomial(ring, acc)
