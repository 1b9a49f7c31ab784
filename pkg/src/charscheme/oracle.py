"""Exact SL(2) representations over the Gaussian rationals.

Used as ground truth for trace rewriting: every identity the symbolic side
produces must hold exactly when evaluated at random representations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .polyring import MPQ, Q, Polynomial, Ring
from .presentation import Presentation, Word


@dataclass(frozen=True)
class GaussianRational:
    re: MPQ = Q(0)
    im: MPQ = Q(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Q(self.re))
        object.__setattr__(self, "im", Q(self.im))

    @staticmethod
    def of(x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else GaussianRational(Q(x), Q(0))

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re * other.re - self.im * other.im,
                                    self.re * other.im + self.im * other.re)
        c = Q(other)
        return GaussianRational(self.re * c, self.im * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * GaussianRational(o.re, -o.im)
        return GaussianRational(num.re / n, num.im / n)

    def __pow__(self, k: int):
        out = GaussianRational(Q(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == Q(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


ZERO = GaussianRational()
ONE = GaussianRational(Q(1))
I = GaussianRational(Q(0), Q(1))


@dataclass(frozen=True)
class Sl2Matrix:
    """``[[a, b], [c, d]]`` with ``ad - bc = 1`` exactly."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    d: GaussianRational

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, GaussianRational.of(getattr(self, name)))
        if self.a * self.d - self.b * self.c != ONE:
            raise ValueError("matrix does not have determinant 1")

    @classmethod
    def _unchecked(cls, a, b, c, d) -> "Sl2Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "a", a)
        object.__setattr__(m, "b", b)
        object.__setattr__(m, "c", c)
        object.__setattr__(m, "d", d)
        return m

    @classmethod
    def identity(cls) -> "Sl2Matrix":
        return cls._unchecked(ONE, ZERO, ZERO, ONE)

    def __matmul__(self, o: "Sl2Matrix") -> "Sl2Matrix":
        return Sl2Matrix._unchecked(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
        )

    def __neg__(self):
        return Sl2Matrix._unchecked(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Sl2Matrix":
        return Sl2Matrix._unchecked(self.d, -self.b, -self.c, self.a)

    def trace(self) -> GaussianRational:
        return self.a + self.d

    def det(self) -> GaussianRational:
        return self.a * self.d - self.b * self.c

    def is_identity(self) -> bool:
        return self == Sl2Matrix.identity()

    def traceless(self) -> tuple[GaussianRational, ...]:
        """Entries of ``M - tr(M)/2 id`` as ``(a0, b, c)`` (``d0 = -a0``)."""
        h = (self.a - self.d) * Q(1, 2)
        return (h, self.b, self.c)


@dataclass(frozen=True)
class Representation:
    """One SL(2) matrix per generator; ``checked`` means all relators hold."""

    matrices: tuple[Sl2Matrix, ...]
    presentation: Presentation | None = field(default=None, compare=False)
    checked: bool = False

    @property
    def rank(self) -> int:
        return len(self.matrices)


def _small_gaussian(rng: random.Random, max_num: int, max_den: int) -> GaussianRational:
    return GaussianRational(Q(rng.randint(-max_num, max_num), rng.randint(1, max_den)),
                            Q(rng.randint(-max_num, max_num), rng.randint(1, max_den)))


def random_sl2(rng: random.Random | int, max_num: int = 8, max_den: int = 4) -> Sl2Matrix:
    """Random exact SL(2) matrix: small ``a, b, c`` with ``a != 0``, ``d = (1+bc)/a``."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    while True:
        a = _small_gaussian(rng, max_num, max_den)
        if a:
            break
    b = _small_gaussian(rng, max_num, max_den)
    c = _small_gaussian(rng, max_num, max_den)
    d = (ONE + b * c) / a
    return Sl2Matrix._unchecked(a, b, c, d)


def random_representation(n: int, seed: int | random.Random = 0, **kw) -> Representation:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Representation(tuple(random_sl2(rng, **kw) for _ in range(n)))


def representation(matrices: Sequence[Sl2Matrix], presentation: Presentation | None = None) -> Representation:
    """Build a representation; with a presentation, verify every relator."""
    mats = tuple(matrices)
    if presentation is None:
        return Representation(mats)
    if len(mats) != presentation.rank:
        raise ValueError("one matrix per generator required")
    rep = Representation(mats, presentation)
    for rel in presentation.relators:
        if evaluate_word(rep, rel.lhs) != evaluate_word(rep, rel.rhs):
            raise ValueError("matrices do not satisfy the relators")
    return Representation(mats, presentation, checked=True)


def evaluate_word(rep: Representation, w: Word) -> Sl2Matrix:
    out = Sl2Matrix.identity()
    mats = rep.matrices
    inv: dict[int, Sl2Matrix] = {}
    for g, s in w.letters:
        if s > 0:
            m = mats[g]
        else:
            m = inv.get(g)
            if m is None:
                m = inv[g] = mats[g].inverse()
        out = out @ m
    return out


def trace_of(rep: Representation, w: Word) -> GaussianRational:
    return evaluate_word(rep, w).trace()


def basic_traces(rep: Representation, ring: Ring) -> dict[str, GaussianRational]:
    """Values of the Fricke coordinates of ``ring`` at ``rep``."""
    return {tv.name: trace_of(rep, Word(tuple((i, 1) for i in tv.indices)))
            for tv in ring.trace_vars}


def check_reduction(rep: Representation, w: Word, ring: Ring) -> bool:
    """Exact comparison of the rewritten trace polynomial with ``tr rho(w)``."""
    from .traces import reduce_trace

    value = reduce_trace(w, ring).eval(basic_traces(rep, ring))
    return GaussianRational.of(value) == trace_of(rep, w)


def evaluate_at(poly: Polynomial, rep: Representation) -> GaussianRational:
    return GaussianRational.of(poly.eval(basic_traces(rep, poly.ring)))


def words_up_to(n: int, depth: int) -> Iterable[Word]:
    """All freely reduced words of length <= depth over n generators."""
    letters = [(g, s) for g in range(n) for s in (1, -1)]
    yield Word()
    frontier: list[tuple] = [()]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for let in letters:
                if w and w[-1][0] == let[0] and w[-1][1] == -let[1]:
                    continue
                nw = w + (let,)
                nxt.append(nw)
                yield Word(nw)
        frontier = nxt


def simplicity_witness(rep: Representation, depth: int) -> tuple[Word, Word, Word] | None:
    """Words ``(u, v, w)`` of length <= depth with ``tr(uvw) != tr(uwv)``, if any.

    ``tr(ABC) - tr(ACB)`` is twice the determinant of the traceless parts, so
    it suffices to fix two independent traceless parts and scan for a third.
    """
    seen: dict[Sl2Matrix, Word] = {}
    for w in words_up_to(rep.rank, depth):
        m = evaluate_word(rep, w)
        if m not in seen:
            seen[m] = w
    items = [(m, w) for m, w in seen.items() if any(m.traceless())]
    if len(items) < 2:
        return None
    first_m, first_w = items[0]
    second = None
    for m, w in items[1:]:
        if not _proportional(first_m.traceless(), m.traceless()):
            second = (m, w)
            break
    if second is None:
        return None
    for m, w in items:
        abc = (first_m @ second[0] @ m).trace()
        acb = (first_m @ m @ second[0]).trace()
        if abc != acb:
            return first_w, second[1], w
    return None


def _proportional(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i, j in ((0, 1), (0, 2), (1, 2)))


def is_simple(rep: Representation, depth: int) -> bool:
    """True iff a witness triple of words of length <= depth exists.

    ``True`` is a proof of simplicity; ``False`` only means no witness up to
    ``depth``.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    return simplicity_witness(rep, depth) is not None


def diagonal(x: GaussianRational) -> Sl2Matrix:
    x = GaussianRational.of(x)
    return Sl2Matrix(x, ZERO, ZERO, ONE / x)


def central(sign: int) -> Sl2Matrix:
    s = GaussianRational(Q(sign))
    return Sl2Matrix(s, ZERO, ZERO, s)


def binary_dihedral(sign: int = 1) -> Representation:
    """``a -> sign*id``, ``b -> diag(i, -i)``, ``c -> [[0, i], [i, 0]]``."""
    return Representation((central(sign), Sl2Matrix(I, ZERO, ZERO, -I), Sl2Matrix(ZERO, I, I, ZERO)))


def fuzz_check_reduction(seed: int, count: int, max_len: int, n: int, ring: Ring | None = None):
    """Yield ``(rep, word, ok)`` for ``count`` seeded random pairs."""
    from .polyring import trace_ring

    names = [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"g{i}" for i in range(n)]
    ring = ring or trace_ring(names)
    rng = random.Random(seed)
    for _ in range(count):
        rep = random_representation(n, rng)
        length = rng.randint(0, max_len)
        letters = [(rng.randrange(n), rng.choice((1, -1))) for _ in range(length)]
        w = Word(tuple(letters))
        yield rep, w, check_reduction(rep, w, ring)

