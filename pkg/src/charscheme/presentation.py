"""Free-group words and finite group presentations.

A word is a tuple of letters ``(generator index, +1 | -1)`` kept freely
reduced.  Relators are stored as pairs ``u = v``; a plain relator ``r`` is
stored as ``(e, r)`` so that ``r = u^-1 v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Letter = tuple[int, int]

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")

IDENTITY_TOKEN = "e"


class PresentationError(ValueError):
    """Raised on malformed words, generator lists or presentation files."""


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, sign in letters:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True, order=True)
class Word:
    """A freely reduced word in a free group.  The empty word is ``e``."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for gen, sign in self.letters:
            if sign not in (1, -1) or gen < 0:
                raise PresentationError(f"bad letter {(gen, sign)!r}")
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def from_indices(cls, seq: Iterable[int]) -> "Word":
        """Build from signed 1-based indices: ``[1, -2]`` is ``a b^-1``."""
        return cls(tuple((abs(k) - 1, 1 if k > 0 else -1) for k in seq))

    @classmethod
    def generator(cls, index: int, power: int = 1) -> "Word":
        sign = 1 if power >= 0 else -1
        return cls(((index, sign),) * abs(power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def cyclic_reduce(self) -> "Word":
        letters = self.letters
        lo, hi = 0, len(letters)
        while hi - lo >= 2 and letters[lo][0] == letters[hi - 1][0] \
                and letters[lo][1] == -letters[hi - 1][1]:
            lo += 1
            hi -= 1
        return Word(letters[lo:hi])

    def rotate(self, k: int) -> "Word":
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])

    def rotations(self) -> list["Word"]:
        return [self.rotate(k) for k in range(max(1, len(self)))]

    def support(self) -> set[int]:
        return {g for g, _ in self.letters}

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def is_identity(self) -> bool:
        return not self.letters


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(w: Word) -> Word:
    return w.inverse()


def cyclic_reduce(w: Word) -> Word:
    return w.cyclic_reduce()


def length(w: Word) -> int:
    return len(w)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


def check_generator_names(names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    if not names:
        raise PresentationError("a presentation needs at least one generator")
    for name in names:
        if not _NAME_RE.match(name):
            raise PresentationError(f"invalid generator name {name!r}")
        if name == IDENTITY_TOKEN:
            raise PresentationError("'e' is reserved for the identity")
    if len(set(names)) != len(names):
        raise PresentationError(f"duplicate generator names in {names}")
    return names


def parse_word(text: str, gens: Sequence[str]) -> Word:
    """Parse ``"b a b a^-1"``-style text over the generator names ``gens``.

    >>> parse_word("a a^-1 b", ["a", "b"])
    Word(letters=((1, 1),))
    """
    tokens = text.split()
    if not tokens:
        raise PresentationError("empty word; write 'e' for the identity")
    if tokens == [IDENTITY_TOKEN]:
        return Word()
    index = {name: i for i, name in enumerate(gens)}
    letters: list[Letter] = []
    for tok in tokens:
        if tok == IDENTITY_TOKEN:
            raise PresentationError("'e' may only appear alone")
        m = _TOKEN_RE.match(tok)
        if not m:
            raise PresentationError(f"malformed token {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in index:
            raise PresentationError(f"unknown generator {name!r}")
        power = 1 if exp is None else int(exp)
        sign = 1 if power > 0 else -1
        letters.extend([(index[name], sign)] * abs(power))
    return Word(tuple(letters))


def print_word(w: Word, gens: Sequence[str]) -> str:
    """Print with run-length exponents; ``parse_word`` inverts this."""
    if not w.letters:
        return IDENTITY_TOKEN
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        gen, sign = letters[i]
        power = sign * (j - i)
        parts.append(gens[gen] if power == 1 else f"{gens[gen]}^{power}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class Relator:
    """The relation ``lhs = rhs``; as a single relator it reads ``lhs^-1 rhs``."""

    lhs: Word
    rhs: Word

    def word(self) -> Word:
        return self.lhs.inverse() * self.rhs


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", check_generator_names(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        n = len(self.generators)
        for rel in self.relators:
            if max(rel.lhs.max_generator(), rel.rhs.max_generator()) >= n:
                raise PresentationError("relator uses an undeclared generator")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def print(self, w: Word) -> str:
        return print_word(w, self.generators)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        for rel in self.relators:
            if rel.lhs.is_identity():
                lines.append("rel: " + self.print(rel.rhs))
            else:
                lines.append(f"rel: {self.print(rel.lhs)} = {self.print(rel.rhs)}")
        return "\n".join(lines) + "\n"


def make_presentation(gens: Sequence[str], relators: Iterable[str], name: str = "") -> Presentation:
    """Convenience constructor taking relator lines as in the file format."""
    gens = check_generator_names(gens)
    return Presentation(gens, tuple(_parse_relator(r, gens) for r in relators), name)


def _parse_relator(text: str, gens: Sequence[str]) -> Relator:
    if "=" in text:
        lhs, _, rhs = text.partition("=")
        if "=" in rhs:
            raise PresentationError(f"more than one '=' in {text!r}")
        return Relator(parse_word(lhs, gens), parse_word(rhs, gens))
    return Relator(Word(), parse_word(text, gens))


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Parse the line-oriented ``gens:`` / ``rel:`` format (``#`` comments)."""
    gens = None
    rels: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise PresentationError(f"line {lineno}: expected 'gens:' or 'rel:'")
        if key == "gens":
            if gens is not None:
                raise PresentationError(f"line {lineno}: duplicate 'gens:' line")
            gens = check_generator_names(rest.split())
        elif key == "rel":
            if gens is None:
                raise PresentationError(f"line {lineno}: 'rel:' before 'gens:'")
            rels.append(rest)
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    if gens is None:
        raise PresentationError("missing 'gens:' line")
    return make_presentation(gens, rels, name)


def load_presentation(path) -> Presentation:
    from pathlib import Path

    path = Path(path)
    return parse_presentation(path.read_text(), name=path.stem)


def abelianize(p: Presentation) -> Presentation:
    """Same generators, original relators plus ``[g_j, g_k] = e`` for j < k."""
    comms = tuple(
        Relator(Word(), commutator(Word.generator(j), Word.generator(k)))
        for j, k in combinations(range(p.rank), 2)
    )
    return Presentation(p.generators, p.relators + comms, p.name + "_ab" if p.name else "")
