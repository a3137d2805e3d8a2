"""Burau-type matrix representations of bonded braid words.

Crossings map to the classical Burau block ``[[1-t, t], [1, 0]]``; bonds to
``[[1-t*z, t*z], [z, 1-z]]``; kinks to the same block with z replaced by zk.
Inverse letters map to the exact inverse matrices, which is where the
localization at t, 1-z-t*z, 1-zk-t*zk comes in.

The reduced representation has dimension n-1: conjugating any generator
image G by the all-ones upper-triangular matrix C gives a block matrix
``[[G', 0], [*, 1]]``, and G' is the reduced image.  Positive reduced
matrices are built from their closed form; inverse letters reduce via the
conjugation route, which agrees exactly because the corner block is 1.

:func:`verify_relations` and :func:`reduction_consistency_check` turn all
of this into machine-checkable reports.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import words
from .matrix import RingMatrix, block_decompose_reduced, conjugate_by_C, upper_ones
from .ring import ONE, T, Z, ZK, ZERO, RingElement, invert_special
from .words import BraidWord, Flavor, Generator, Relation, WordError

__all__ = [
    "ReprKind",
    "full_kind",
    "reduced_kind",
    "gen_matrix",
    "represent",
    "verify_relations",
    "reduction_consistency_check",
    "RelationCheck",
    "RelationReport",
    "ReductionCheck",
    "ReductionReport",
]


@dataclass(frozen=True)
class ReprKind:
    """reduced flag x word flavor; reduced dimension is n-1."""

    reduced: bool
    flavor: Flavor

    @property
    def label(self) -> str:
        return "reduced" if self.reduced else "full"

    def dimension(self, n: int) -> int:
        return n - 1 if self.reduced else n


def full_kind(flavor: Flavor = words.MONOID) -> ReprKind:
    return ReprKind(False, flavor)


def reduced_kind(flavor: Flavor = words.MONOID) -> ReprKind:
    return ReprKind(True, flavor)


_INV_T = invert_special("t")
_INV_D1 = invert_special("d1")
_INV_D2 = invert_special("d2")

# 2x2 blocks of the unreduced generator images, keyed by (kind, sign):
# crossing, bond, kink and their exact inverses.
_BLOCKS: dict[tuple[str, int], tuple[tuple[RingElement, RingElement], ...]] = {
    ("s", 1): ((ONE - T, T), (ONE, ZERO)),
    ("s", -1): ((ZERO, ONE), (_INV_T, ONE - _INV_T)),
    ("b", 1): ((ONE - T * Z, T * Z), (Z, ONE - Z)),
    ("b", -1): (
        (_INV_D1 * (ONE - Z), _INV_D1 * (-(T * Z))),
        (_INV_D1 * (-Z), _INV_D1 * (ONE - T * Z)),
    ),
    ("k", 1): ((ONE - T * ZK, T * ZK), (ZK, ONE - ZK)),
    ("k", -1): (
        (_INV_D2 * (ONE - ZK), _INV_D2 * (-(T * ZK))),
        (_INV_D2 * (-ZK), _INV_D2 * (ONE - T * ZK)),
    ),
}

# (diagonal, above-diagonal, below-diagonal) entries of the positive reduced
# images: column i-1 (0-based) carries the only non-identity entries.
_REDUCED_COLUMN: dict[str, tuple[RingElement, RingElement, RingElement]] = {
    "s": (-T, T, ONE),
    "b": (ONE - Z - T * Z, T * Z, Z),
    "k": (ONE - ZK - T * ZK, T * ZK, ZK),
}


def _check_compatible(g: Generator, n: int, kind: ReprKind) -> None:
    if not 1 <= g.index <= n - 1:
        raise WordError(f"generator index {g.index} out of range 1..{n - 1}")
    if g.kind == "k" and not kind.flavor.is_rigid:
        raise WordError(f"kink generator {g.token()} needs a rigid representation kind")
    if g.kind in ("b", "k") and g.sign == -1 and not kind.flavor.is_group:
        raise WordError(
            f"inverse generator {g.token()} needs a group representation kind"
        )
    if kind.reduced and n < 2:
        raise WordError("reduced representation needs n >= 2")


def _unreduced_matrix(g: Generator, n: int) -> RingMatrix:
    block = _BLOCKS[(g.kind, g.sign)]
    i = g.index - 1  # 0-based position of the block

    def fill(r: int, c: int) -> RingElement:
        if i <= r <= i + 1 and i <= c <= i + 1:
            return block[r - i][c - i]
        return ONE if r == c else ZERO

    return RingMatrix.build(n, fill)


def _reduced_positive_matrix(g: Generator, n: int) -> RingMatrix:
    diag, above, below = _REDUCED_COLUMN[g.kind]
    d = g.index - 1  # 0-based column carrying the action

    def fill(r: int, c: int) -> RingElement:
        if c == d:
            if r == d:
                return diag
            if r == d - 1:
                return above
            if r == d + 1:
                return below
            return ZERO
        return ONE if r == c else ZERO

    return RingMatrix.build(n - 1, fill)


@functools.lru_cache(maxsize=None)
def gen_matrix(g: Generator, n: int, kind: ReprKind) -> RingMatrix:
    """Image of one generator; cached per (generator, n, kind)."""
    _check_compatible(g, n, kind)
    if not kind.reduced:
        return _unreduced_matrix(g, n)
    if g.sign == 1:
        return _reduced_positive_matrix(g, n)
    # Inverse letters have no printed closed form; their reduced image is the
    # upper-left block of C^-1 (unreduced inverse) C, which is exactly the
    # inverse of the positive reduced matrix.
    return block_decompose_reduced(conjugate_by_C(_unreduced_matrix(g, n))).upper_left


def represent(w: BraidWord, kind: ReprKind) -> RingMatrix:
    """Ordered product of generator images, leftmost letter first."""
    problems = words.validate(w)
    if problems:
        raise WordError("; ".join(problems))
    result = RingMatrix.identity(kind.dimension(w.n))
    for g in w.letters:
        result = result * gen_matrix(g, w.n, kind)
    return result


# -- relation verification ---------------------------------------------------


@dataclass(frozen=True)
class RelationCheck:
    name: str
    n: int
    i: int
    j: int | None
    kind_label: str
    passed: bool

    def line(self) -> str:
        j_part = f" j={self.j}" if self.j is not None else ""
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name} n={self.n} i={self.i}{j_part} kind={self.kind_label} {status}"


@dataclass(frozen=True)
class RelationReport:
    checks: tuple[RelationCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[RelationCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def verify_relations(n: int, kind: ReprKind) -> RelationReport:
    """Check every defining relation instance of the flavor at this n as an
    exact matrix identity under the chosen representation."""
    if n < 2:
        raise WordError("relation verification needs n >= 2")
    checks = []
    for rel in words.relation_instances(n, kind.flavor):
        lhs, rhs = rel.words(n, kind.flavor)
        passed = represent(lhs, kind) == represent(rhs, kind)
        checks.append(RelationCheck(rel.name, n, rel.i, rel.j, kind.label, passed))
    return RelationReport(tuple(checks))


# -- reduction structure -------------------------------------------------------


@dataclass(frozen=True)
class ReductionCheck:
    n: int
    gen: Generator
    check: str
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"REDUCTION n={self.n} gen={self.gen.token()} check={self.check} {status}"


@dataclass(frozen=True)
class ReductionReport:
    checks: tuple[ReductionCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[ReductionCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _flavor_generators(n: int, flavor: Flavor) -> list[Generator]:
    gens: list[Generator] = []
    kinds = ("s", "b", "k") if flavor.is_rigid else ("s", "b")
    for kind in kinds:
        for i in range(1, n):
            gens.append(Generator(kind, i))
    if flavor.is_group:
        for kind in kinds:
            for i in range(1, n):
                gens.append(Generator(kind, i, -1))
    else:
        for i in range(1, n):
            gens.append(Generator("s", i, -1))
    return gens


def expected_bottom_row(g: Generator, n: int) -> tuple[RingElement, ...]:
    """Bottom row of C^-1 G C for positive generators: zero except at the
    last slot when the index is n-1, where it is 1 / z / zk by kind."""
    row = [ZERO] * (n - 1)
    if g.index == n - 1:
        row[-1] = {"s": ONE, "b": Z, "k": ZK}[g.kind]
    return tuple(row)


def reduction_consistency_check(n: int, flavor: Flavor) -> ReductionReport:
    """For every generator image G: the conjugate C^-1 G C has zero upper
    right column and corner 1, its upper-left block is the reduced image,
    positive generators show the expected bottom row, and G fixes the
    all-ones column C e_n."""
    if n < 2:
        raise WordError("reduction check needs n >= 2")
    unreduced = full_kind(flavor)
    reduced = reduced_kind(flavor)
    ones_column = tuple(ONE for _ in range(n))  # C e_n
    checks = []
    for g in _flavor_generators(n, flavor):
        G = gen_matrix(g, n, unreduced)
        block = block_decompose_reduced(conjugate_by_C(G))
        checks.append(ReductionCheck(n, g, "zero-upper-right", block.upper_right_is_zero))
        checks.append(ReductionCheck(n, g, "corner-one", block.corner == ONE))
        checks.append(
            ReductionCheck(
                n, g, "reduced-block", block.upper_left == gen_matrix(g, n, reduced)
            )
        )
        if g.sign == 1:
            checks.append(
                ReductionCheck(
                    n, g, "bottom-row", block.bottom_row == expected_bottom_row(g, n)
                )
            )
        checks.append(
            ReductionCheck(n, g, "fixes-ones-column", G.apply(ones_column) == ones_column)
        )
    return ReductionReport(tuple(checks))
