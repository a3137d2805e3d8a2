"""Combinatorics of the closed-up braid: components, bonds, linking data.

Closing a word joins each top endpoint to the matching bottom endpoint, so
the components are the cycles of the underlying permutation.  Strand
identity is positional: a strand is named by its top endpoint and tracked
through the word, each crossing contributing its sign to the (unordered)
pair of strands it involves.  Bonds contribute no crossings and no
permutation; each bond letter records the components of the two strands it
joins at that point of the word.

The fingerprint string is the Markov-regression key: component count,
sorted component sizes, the bond multigraph in canonical form, and the
sorted nonzero linking numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import words
from .words import BraidWord, Permutation

__all__ = ["ClosureSummary", "close", "closure_invariant_fingerprint", "canonical_bond_edges"]


@dataclass(frozen=True)
class ClosureSummary:
    """Closure data of one word.

    components are the permutation cycles as sorted strand tuples, ordered
    by minimal strand; component ids index into that tuple.  bond_incidence
    lists, per bond/kink letter in word order, the sorted pair of component
    ids it connects.  The linking matrix is symmetric with zero diagonal;
    per-component self-crossing sums live in writhe.
    """

    n: int
    component_count: int
    components: tuple[tuple[int, ...], ...]
    bond_incidence: tuple[tuple[int, int], ...]
    linking_matrix: tuple[tuple[int, ...], ...]
    writhe: tuple[int, ...]


def close(w: BraidWord) -> ClosureSummary:
    problems = words.validate(w)
    if problems:
        raise words.WordError("; ".join(problems))
    n = w.n
    components = tuple(tuple(sorted(c)) for c in permutation_components(w.permutation()))
    comp_of = {}
    for cid, comp in enumerate(components):
        for strand in comp:
            comp_of[strand] = cid
    k = len(components)

    positions = list(range(1, n + 1))  # positions[p-1] = strand currently at p
    crossing_sum = [[0] * k for _ in range(k)]
    bonds: list[tuple[int, int]] = []
    for g in w.letters:
        i = g.index
        a, b = positions[i - 1], positions[i]
        if g.kind == "s":
            ca, cb = comp_of[a], comp_of[b]
            crossing_sum[ca][cb] += g.sign
            if ca != cb:
                crossing_sum[cb][ca] += g.sign
            positions[i - 1], positions[i] = b, a
        else:
            bonds.append(tuple(sorted((comp_of[a], comp_of[b]))))

    linking = [[0] * k for _ in range(k)]
    writhe = [0] * k
    for a in range(k):
        writhe[a] = crossing_sum[a][a]
        for b in range(a + 1, k):
            total = crossing_sum[a][b]
            # crossings between two distinct closed components pair up
            assert total % 2 == 0, "odd crossing sum between distinct components"
            linking[a][b] = linking[b][a] = total // 2

    return ClosureSummary(
        n=n,
        component_count=k,
        components=components,
        bond_incidence=tuple(bonds),
        linking_matrix=tuple(tuple(row) for row in linking),
        writhe=tuple(writhe),
    )


def permutation_components(p: Permutation) -> tuple[tuple[int, ...], ...]:
    return p.cycles()


def canonical_bond_edges(summary: ClosureSummary) -> tuple[tuple[int, int], ...]:
    """Bond incidence as a canonically labeled multigraph edge list.

    Component ids are not stable across Markov moves, so the components
    touched by bonds are relabeled 0..m-1 by brute force to minimize the
    sorted edge list; the result depends only on the isomorphism class of
    the bond multigraph and is therefore invariant under every move.
    """
    if not summary.bond_incidence:
        return ()
    touched = sorted({c for edge in summary.bond_incidence for c in edge})
    best: tuple[tuple[int, int], ...] | None = None
    for perm in itertools.permutations(range(len(touched))):
        relabel = dict(zip(touched, perm))
        edges = tuple(
            sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in summary.bond_incidence)
        )
        if best is None or edges < best:
            best = edges
    return best


def _sorted_linking(summary: ClosureSummary) -> tuple[int, ...]:
    values = []
    k = summary.component_count
    for a in range(k):
        for b in range(a + 1, k):
            lk = summary.linking_matrix[a][b]
            if lk != 0:
                values.append(lk)
    return tuple(sorted(values))


def closure_invariant_fingerprint(w: BraidWord) -> str:
    """Canonical string ``c=..;sizes=[..];bonds=[..];lk=[..]``.

    Writhe is deliberately excluded (not invariant under stabilization).
    """
    summary = close(w)
    return fingerprint_of_summary(summary)


def fingerprint_of_summary(summary: ClosureSummary) -> str:
    sizes = sorted(len(c) for c in summary.components)
    bonds = canonical_bond_edges(summary)
    lk = _sorted_linking(summary)
    sizes_str = "[" + ",".join(str(s) for s in sizes) + "]"
    bonds_str = "[" + ",".join(f"[{a},{b}]" for a, b in bonds) + "]"
    lk_str = "[" + ",".join(str(v) for v in lk) + "]"
    return f"c={summary.component_count};sizes={sizes_str};bonds={bonds_str};lk={lk_str}"


def stabilization_invariants(w: BraidWord) -> tuple[int, tuple[tuple[int, int], ...], tuple[int, ...]]:
    """(component count, canonical bond edges, sorted nonzero linking
    numbers): the fingerprint parts preserved by every Markov move,
    stabilization included (component sizes are not)."""
    summary = close(w)
    return summary.component_count, canonical_bond_edges(summary), _sorted_linking(summary)
