"""Bonded braid words: four flavors, validation, rewriting, permutations.

A word lives on ``n`` strands and is a sequence of generators

* ``s<i>`` — crossing of strands i, i+1 (inverse always available),
* ``b<i>`` — bond joining strands i, i+1,
* ``k<i>`` — kink (bond with a back-twist), rigid flavors only,

with ``1 <= i <= n-1``.  Monoid flavors have no inverse bonds/kinks; group
flavors adjoin them.  The token text format is ``s3``, ``s3^-1``, ``b2``,
``k1^-1``, whitespace separated; the empty string is the identity word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Flavor",
    "MONOID",
    "GROUP",
    "RIGID_MONOID",
    "RIGID_GROUP",
    "FLAVORS",
    "Generator",
    "BraidWord",
    "Permutation",
    "Relation",
    "WordError",
    "identity",
    "sigma",
    "bond",
    "kink",
    "validate",
    "free_reduce",
    "concat",
    "invert",
    "permutation",
    "relation_instances",
    "relation_neighbors",
    "parse_word",
    "format_word",
]


class WordError(ValueError):
    """Invalid word, flavor violation, or malformed word text."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Flavor:
    """algebraic in {monoid, group} x geometry in {topological, rigid}."""

    algebraic: str
    geometry: str

    def __post_init__(self):
        if self.algebraic not in ("monoid", "group"):
            raise ValueError(f"bad algebraic flavor {self.algebraic!r}")
        if self.geometry not in ("topological", "rigid"):
            raise ValueError(f"bad geometry flavor {self.geometry!r}")

    @property
    def is_group(self) -> bool:
        return self.algebraic == "group"

    @property
    def is_rigid(self) -> bool:
        return self.geometry == "rigid"

    @property
    def name(self) -> str:
        prefix = "rigid-" if self.is_rigid else ""
        return prefix + self.algebraic

    @staticmethod
    def from_name(name: str) -> Flavor:
        try:
            return _FLAVOR_BY_NAME[name]
        except KeyError:
            options = ", ".join(sorted(_FLAVOR_BY_NAME))
            raise WordError(f"unknown flavor {name!r}; expected one of {options}") from None

    def __str__(self) -> str:
        return self.name


MONOID = Flavor("monoid", "topological")
GROUP = Flavor("group", "topological")
RIGID_MONOID = Flavor("monoid", "rigid")
RIGID_GROUP = Flavor("group", "rigid")
FLAVORS = (MONOID, GROUP, RIGID_MONOID, RIGID_GROUP)
_FLAVOR_BY_NAME = {f.name: f for f in FLAVORS}

_KIND_NAMES = {"s": "crossing", "b": "bond", "k": "kink"}


@dataclass(frozen=True, order=True)
class Generator:
    """One letter: kind in {s, b, k}, 1-based index, sign +1 or -1."""

    kind: str
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.kind not in _KIND_NAMES:
            raise ValueError(f"bad generator kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"bad generator sign {self.sign!r}")
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")

    def inverse(self) -> Generator:
        return Generator(self.kind, self.index, -self.sign)

    def legal_in(self, flavor: Flavor) -> bool:
        if self.kind == "k" and not flavor.is_rigid:
            return False
        if self.kind in ("b", "k") and self.sign == -1 and not flavor.is_group:
            return False
        return True

    def token(self) -> str:
        suffix = "^-1" if self.sign == -1 else ""
        return f"{self.kind}{self.index}{suffix}"

    def __str__(self) -> str:
        return self.token()


def sigma(i: int, sign: int = 1) -> Generator:
    return Generator("s", i, sign)


def bond(i: int, sign: int = 1) -> Generator:
    return Generator("b", i, sign)


def kink(i: int, sign: int = 1) -> Generator:
    return Generator("k", i, sign)


@dataclass(frozen=True)
class BraidWord:
    """A (possibly invalid) word; :func:`validate` reports violations."""

    n: int
    flavor: Flavor
    letters: tuple[Generator, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"strand count must be >= 1, got {self.n}")
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return concat(self, other)

    def with_letters(self, letters: Iterable[Generator]) -> BraidWord:
        return BraidWord(self.n, self.flavor, tuple(letters))

    def free_reduce(self) -> BraidWord:
        return free_reduce(self)

    def inverse(self) -> BraidWord:
        return invert(self)

    def permutation(self) -> Permutation:
        return permutation(self)

    def text(self) -> str:
        return format_word(self)

    def __str__(self) -> str:
        return format_word(self)


def identity(n: int, flavor: Flavor = MONOID) -> BraidWord:
    return BraidWord(n, flavor, ())


def word(n: int, flavor: Flavor, *letters: Generator) -> BraidWord:
    return BraidWord(n, flavor, tuple(letters))


def validate(w: BraidWord) -> list[str]:
    """Every index/flavor violation, with the letter position; empty = ok."""
    problems = []
    for pos, g in enumerate(w.letters):
        if not 1 <= g.index <= w.n - 1:
            problems.append(
                f"letter {pos}: index {g.index} out of range 1..{w.n - 1} on {w.n} strands"
            )
        if g.kind == "k" and not w.flavor.is_rigid:
            problems.append(
                f"letter {pos}: kink generator {g.token()} not allowed in {w.flavor.name} flavor"
            )
        elif g.kind in ("b", "k") and g.sign == -1 and not w.flavor.is_group:
            problems.append(
                f"letter {pos}: inverse {_KIND_NAMES[g.kind]} {g.token()} not allowed in {w.flavor.name} flavor"
            )
    return problems


def require_valid(w: BraidWord) -> BraidWord:
    problems = validate(w)
    if problems:
        raise WordError("; ".join(problems))
    return w


def _cancels(a: Generator, b: Generator, flavor: Flavor) -> bool:
    # s-pairs always cancel; b/k-pairs only where inverses exist at all.
    if a.kind != b.kind or a.index != b.index or a.sign != -b.sign:
        return False
    return a.kind == "s" or flavor.is_group


def free_reduce(w: BraidWord) -> BraidWord:
    """Delete adjacent inverse pairs until none remain (stack pass)."""
    stack: list[Generator] = []
    for g in w.letters:
        if stack and _cancels(stack[-1], g, w.flavor):
            stack.pop()
        else:
            stack.append(g)
    if len(stack) == len(w.letters):
        return w
    return w.with_letters(stack)


def concat(w1: BraidWord, w2: BraidWord) -> BraidWord:
    if w1.n != w2.n or w1.flavor != w2.flavor:
        raise WordError(
            f"cannot concatenate words on ({w1.n}, {w1.flavor.name}) and ({w2.n}, {w2.flavor.name})"
        )
    return BraidWord(w1.n, w1.flavor, w1.letters + w2.letters)


def invert(w: BraidWord) -> BraidWord:
    """Reversal with letterwise inversion; group flavors only."""
    if not w.flavor.is_group:
        raise WordError(f"cannot invert a word in the {w.flavor.name} flavor")
    return w.with_letters(g.inverse() for g in reversed(w.letters))


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..n}; images[i-1] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a bijection on 1..{len(self.images)}: {self.images}")

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, i: int) -> Permutation:
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def then(self, other: Permutation) -> Permutation:
        """Composite 'apply self first, then other'."""
        if other.n != self.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycles (including fixed points), each starting at its minimum,
        ordered by minimum."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))


def permutation(w: BraidWord) -> Permutation:
    """Underlying permutation: s acts as (i, i+1); b and k act trivially."""
    images = list(range(1, w.n + 1))
    for g in w.letters:
        if g.kind == "s":
            images[g.index - 1], images[g.index] = images[g.index], images[g.index - 1]
    # images currently holds the strand occupying each position; invert to
    # map top position -> bottom position.
    out = [0] * w.n
    for pos, strand in enumerate(images, start=1):
        out[strand - 1] = pos
    return Permutation(tuple(out))


# -- defining relations ------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """One defining relation instance lhs = rhs at fixed indices."""

    name: str
    i: int
    j: int | None
    lhs: tuple[Generator, ...]
    rhs: tuple[Generator, ...]

    def words(self, n: int, flavor: Flavor) -> tuple[BraidWord, BraidWord]:
        return BraidWord(n, flavor, self.lhs), BraidWord(n, flavor, self.rhs)


def relation_instances(n: int, flavor: Flavor) -> tuple[Relation, ...]:
    """Every defining relation instance of the flavor's presentation at n.

    Topological monoid: R1-R3, B1, M1-M4.  Rigid adds K1, BK1, MK1-MK4
    (mixed bond relations are then named MB1-MB4).  Group flavors add the
    adjoined-inverse relations BINV (and KINV when rigid).
    """
    out: list[Relation] = []
    gens = range(1, n)
    far_pairs = [(i, j) for i in gens for j in gens if abs(i - j) >= 2]
    mb = "MB" if flavor.is_rigid else "M"

    for i in gens:
        out.append(Relation("R1", i, None, (sigma(i), sigma(i, -1)), ()))
    if flavor.is_group:
        for i in gens:
            out.append(Relation("BINV", i, None, (bond(i), bond(i, -1)), ()))
        if flavor.is_rigid:
            for i in gens:
                out.append(Relation("KINV", i, None, (kink(i), kink(i, -1)), ()))
    for i, j in far_pairs:
        if i < j:
            out.append(Relation("R2", i, j, (sigma(i), sigma(j)), (sigma(j), sigma(i))))
    for i in range(1, n - 1):
        out.append(
            Relation(
                "R3", i, None,
                (sigma(i), sigma(i + 1), sigma(i)),
                (sigma(i + 1), sigma(i), sigma(i + 1)),
            )
        )
    for i, j in far_pairs:
        if i < j:
            out.append(Relation("B1", i, j, (bond(i), bond(j)), (bond(j), bond(i))))
    if flavor.is_rigid:
        for i, j in far_pairs:
            if i < j:
                out.append(Relation("K1", i, j, (kink(i), kink(j)), (kink(j), kink(i))))
        for i, j in far_pairs:
            out.append(Relation("BK1", i, j, (bond(i), kink(j)), (kink(j), bond(i))))
    for i, j in far_pairs:
        out.append(Relation(mb + "1", i, j, (sigma(i), bond(j)), (bond(j), sigma(i))))
    for i in gens:
        out.append(Relation(mb + "2", i, None, (sigma(i), bond(i)), (bond(i), sigma(i))))
    for i in range(1, n - 1):
        out.append(
            Relation(
                mb + "3", i, None,
                (sigma(i + 1), sigma(i), bond(i + 1)),
                (bond(i), sigma(i + 1), sigma(i)),
            )
        )
        out.append(
            Relation(
                mb + "4", i, None,
                (sigma(i), sigma(i + 1), bond(i)),
                (bond(i + 1), sigma(i), sigma(i + 1)),
            )
        )
    if flavor.is_rigid:
        for i, j in far_pairs:
            out.append(Relation("MK1", i, j, (sigma(i), kink(j)), (kink(j), sigma(i))))
        for i in gens:
            out.append(Relation("MK2", i, None, (sigma(i), kink(i)), (kink(i), sigma(i))))
        for i in range(1, n - 1):
            out.append(
                Relation(
                    "MK3", i, None,
                    (sigma(i + 1), sigma(i), kink(i + 1)),
                    (kink(i), sigma(i + 1), sigma(i)),
                )
            )
            out.append(
                Relation(
                    "MK4", i, None,
                    (sigma(i), sigma(i + 1), kink(i)),
                    (kink(i + 1), sigma(i), sigma(i + 1)),
                )
            )
    return tuple(out)


def _invertible_kinds(flavor: Flavor) -> tuple[str, ...]:
    if flavor.is_group:
        return ("s", "b", "k") if flavor.is_rigid else ("s", "b")
    return ("s",)


def relation_neighbors(w: BraidWord, include_insertions: bool = False) -> list[BraidWord]:
    """All words one defining-relation application away, in a fixed order.

    Swap/braid/mixed rewrites run in both directions.  Inverse-pair
    deletions are always enumerated; the unbounded reverse direction
    (inserting ``g g^-1`` / ``g^-1 g`` at a position) only with
    ``include_insertions``.
    """
    letters = w.letters
    seen: set[tuple[Generator, ...]] = {letters}
    out: list[BraidWord] = []

    def emit(new_letters: tuple[Generator, ...]) -> None:
        if new_letters not in seen:
            seen.add(new_letters)
            out.append(w.with_letters(new_letters))

    for rel in relation_instances(w.n, w.flavor):
        for src, dst in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            if not src:
                continue  # insertion direction handled below
            span = len(src)
            for p in range(len(letters) - span + 1):
                if letters[p : p + span] == src:
                    emit(letters[:p] + dst + letters[p + span :])
    # generic inverse-pair deletions (covers the reversed order of R1 and the
    # adjoined bond/kink inverses)
    for p in range(len(letters) - 1):
        if _cancels(letters[p], letters[p + 1], w.flavor):
            emit(letters[:p] + letters[p + 2 :])
    if include_insertions:
        for p in range(len(letters) + 1):
            for kind in _invertible_kinds(w.flavor):
                for i in range(1, w.n):
                    g = Generator(kind, i)
                    for pair in ((g, g.inverse()), (g.inverse(), g)):
                        emit(letters[:p] + pair + letters[p:])
    return out


# -- text format -------------------------------------------------------------


def format_word(w: BraidWord) -> str:
    return " ".join(g.token() for g in w.letters)


def parse_word(text: str, n: int, flavor: Flavor) -> BraidWord:
    """Parse whitespace-separated tokens ``(s|b|k)<digits>[^-1]``.

    Raises :class:`WordError` with the character position of the offending
    token on syntax, range, or flavor violations.
    """
    letters: list[Generator] = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        start = pos
        while pos < length and not text[pos].isspace():
            pos += 1
        token = text[start:pos]
        kind = token[0]
        if kind not in _KIND_NAMES:
            raise WordError(f"unknown generator kind in token {token!r}", start)
        rest = token[1:]
        sign = 1
        if rest.endswith("^-1"):
            sign = -1
            rest = rest[:-3]
        if not rest.isdigit():
            raise WordError(f"malformed token {token!r}", start)
        index = int(rest)
        if not 1 <= index <= n - 1:
            raise WordError(
                f"index {index} out of range 1..{n - 1} on {n} strands", start
            )
        g = Generator(kind, index, sign)
        if not g.legal_in(flavor):
            article = "kink generator" if kind == "k" else f"inverse {_KIND_NAMES[kind]}"
            raise WordError(
                f"{article} {token!r} not allowed in {flavor.name} flavor", start
            )
        letters.append(g)
    return BraidWord(n, flavor, tuple(letters))
