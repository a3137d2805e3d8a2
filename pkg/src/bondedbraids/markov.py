"""Markov moves on bonded braid words, random walks, and equivalence search.

The moves that preserve the closure:

* conjugation ``w -> s_i^e w s_i^-e``,
* cycling a leading/trailing bond letter across the word (``b w <-> w b``),
  and the same for kinks in rigid flavors,
* stabilization ``w -> w s_n`` on one more strand, and destabilization when
  the last letter is the only one touching the last strand.

:func:`markov_equiv_search` is a bounded bidirectional BFS over free-reduced
words under defining-relation rewrites plus the moves above.  Finding a
certificate proves equivalence (it replays step by step); exhausting the
bounds proves nothing.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field

from . import words
from .words import BraidWord, Flavor, Generator, WordError, free_reduce, sigma

__all__ = [
    "MarkovMove",
    "MoveNotApplicable",
    "conjugate",
    "bond_cycle_left",
    "bond_cycle_right",
    "kink_cycle_left",
    "kink_cycle_right",
    "stabilize",
    "destabilize",
    "apply_move",
    "applicable_moves",
    "inverse_move",
    "random_markov_walk",
    "SearchBounds",
    "SearchResult",
    "markov_equiv_search",
    "replay_certificate",
    "certificate_to_json",
]


class MoveNotApplicable(ValueError):
    """The move's precondition fails on this word."""


_MOVE_KINDS = (
    "conjugate",
    "bond-cycle-left",
    "bond-cycle-right",
    "kink-cycle-left",
    "kink-cycle-right",
    "stabilize",
    "destabilize",
)


@dataclass(frozen=True)
class MarkovMove:
    """One move; index/sign are used by conjugation and stabilization."""

    kind: str
    index: int | None = None
    sign: int | None = None

    def __post_init__(self):
        if self.kind not in _MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")

    def record(self) -> dict:
        params = {}
        if self.index is not None:
            params["index"] = self.index
        if self.sign is not None:
            params["sign"] = self.sign
        return {"move": self.kind, "params": params}

    def __str__(self) -> str:
        bits = [self.kind]
        if self.index is not None:
            bits.append(f"i={self.index}")
        if self.sign is not None:
            bits.append(f"sign={'+' if self.sign > 0 else '-'}")
        return "(" + " ".join(bits) + ")"


def conjugate(i: int, sign: int = 1) -> MarkovMove:
    return MarkovMove("conjugate", index=i, sign=sign)


def bond_cycle_left() -> MarkovMove:
    return MarkovMove("bond-cycle-left")


def bond_cycle_right() -> MarkovMove:
    return MarkovMove("bond-cycle-right")


def kink_cycle_left() -> MarkovMove:
    return MarkovMove("kink-cycle-left")


def kink_cycle_right() -> MarkovMove:
    return MarkovMove("kink-cycle-right")


def stabilize(sign: int = 1) -> MarkovMove:
    return MarkovMove("stabilize", sign=sign)


def destabilize() -> MarkovMove:
    return MarkovMove("destabilize")


def _cycleable(g: Generator, kind: str, allow_antibond: bool) -> bool:
    if g.kind != kind:
        return False
    return g.sign == 1 or allow_antibond


def apply_move(w: BraidWord, m: MarkovMove, allow_antibond: bool = False) -> BraidWord:
    """The transformed word, or MoveNotApplicable naming the failed guard.

    Cycle moves are named by the direction the bond/kink letter travels:
    the right variants take a leading letter to the end, the left variants
    a trailing letter to the front.
    """
    letters = w.letters
    if m.kind == "conjugate":
        if m.index is None or not 1 <= m.index <= w.n - 1:
            raise MoveNotApplicable(
                f"conjugation index {m.index} out of range 1..{w.n - 1}"
            )
        s = sigma(m.index, m.sign or 1)
        return w.with_letters((s,) + letters + (s.inverse(),))
    if m.kind in ("bond-cycle-right", "kink-cycle-right"):
        kind = "b" if m.kind.startswith("bond") else "k"
        if kind == "k" and not w.flavor.is_rigid:
            raise MoveNotApplicable("kink cycling needs a rigid flavor")
        if not letters or not _cycleable(letters[0], kind, allow_antibond):
            raise MoveNotApplicable(
                f"word does not begin with a {words._KIND_NAMES[kind]} letter"
            )
        return w.with_letters(letters[1:] + (letters[0],))
    if m.kind in ("bond-cycle-left", "kink-cycle-left"):
        kind = "b" if m.kind.startswith("bond") else "k"
        if kind == "k" and not w.flavor.is_rigid:
            raise MoveNotApplicable("kink cycling needs a rigid flavor")
        if not letters or not _cycleable(letters[-1], kind, allow_antibond):
            raise MoveNotApplicable(
                f"word does not end with a {words._KIND_NAMES[kind]} letter"
            )
        return w.with_letters((letters[-1],) + letters[:-1])
    if m.kind == "stabilize":
        return BraidWord(w.n + 1, w.flavor, letters + (sigma(w.n, m.sign or 1),))
    if m.kind == "destabilize":
        if w.n < 2:
            raise MoveNotApplicable("cannot destabilize below one strand")
        if not letters or letters[-1].kind != "s" or letters[-1].index != w.n - 1:
            raise MoveNotApplicable(
                f"last letter must be a crossing with index {w.n - 1}"
            )
        if any(g.index == w.n - 1 for g in letters[:-1]):
            raise MoveNotApplicable(
                f"index {w.n - 1} appears before the final letter"
            )
        return BraidWord(w.n - 1, w.flavor, letters[:-1])
    raise MoveNotApplicable(f"unknown move {m.kind!r}")


def applicable_moves(
    w: BraidWord, allow_stab: bool = True, allow_antibond: bool = False
) -> list[MarkovMove]:
    """Every applicable move, in a fixed deterministic order."""
    out: list[MarkovMove] = []
    for i in range(1, w.n):
        out.append(conjugate(i, 1))
        out.append(conjugate(i, -1))
    letters = w.letters
    if letters and _cycleable(letters[0], "b", allow_antibond):
        out.append(bond_cycle_right())
    if letters and _cycleable(letters[-1], "b", allow_antibond):
        out.append(bond_cycle_left())
    if w.flavor.is_rigid:
        if letters and _cycleable(letters[0], "k", allow_antibond):
            out.append(kink_cycle_right())
        if letters and _cycleable(letters[-1], "k", allow_antibond):
            out.append(kink_cycle_left())
    if allow_stab:
        out.append(stabilize(1))
        out.append(stabilize(-1))
        if (
            w.n >= 2
            and letters
            and letters[-1].kind == "s"
            and letters[-1].index == w.n - 1
            and not any(g.index == w.n - 1 for g in letters[:-1])
        ):
            out.append(destabilize())
    return out


def inverse_move(m: MarkovMove, word_before: BraidWord) -> MarkovMove:
    """Move undoing m; destabilization needs the word it was applied to."""
    if m.kind == "conjugate":
        return conjugate(m.index, -(m.sign or 1))
    if m.kind == "bond-cycle-left":
        return bond_cycle_right()
    if m.kind == "bond-cycle-right":
        return bond_cycle_left()
    if m.kind == "kink-cycle-left":
        return kink_cycle_right()
    if m.kind == "kink-cycle-right":
        return kink_cycle_left()
    if m.kind == "stabilize":
        return destabilize()
    if m.kind == "destabilize":
        return stabilize(word_before.letters[-1].sign)
    raise ValueError(f"unknown move {m.kind!r}")


def random_markov_walk(
    w: BraidWord,
    steps: int,
    seed: int,
    allow_stab: bool = True,
) -> tuple[BraidWord, tuple[MarkovMove, ...]]:
    """Apply `steps` uniformly chosen applicable moves; deterministic in seed."""
    rng = random.Random(seed)
    trace: list[MarkovMove] = []
    current = w
    for _ in range(steps):
        options = applicable_moves(current, allow_stab=allow_stab)
        if not options:
            break
        move = rng.choice(options)
        current = apply_move(current, move)
        trace.append(move)
    return current, tuple(trace)


# -- equivalence search --------------------------------------------------------


@dataclass(frozen=True)
class SearchBounds:
    max_len: int = 32
    max_n: int = 8
    max_states: int = 20000


@dataclass(frozen=True)
class SearchResult:
    """certificate is None when the bounded search exhausted its budget;
    exhaustion is NOT a proof of inequivalence."""

    certificate: tuple[dict, ...] | None
    states_explored: int

    @property
    def found(self) -> bool:
        return self.certificate is not None


_State = tuple[int, tuple[Generator, ...]]


def _state(w: BraidWord) -> _State:
    return (w.n, w.letters)


def _word(state: _State, flavor: Flavor) -> BraidWord:
    return BraidWord(state[0], flavor, state[1])


def _search_edges(
    w: BraidWord, bounds: SearchBounds, allow_antibond: bool
) -> list[tuple[dict, BraidWord]]:
    """(step record, free-reduced successor) pairs.

    Relation rewrites whose raw result is not already free-reduced are
    skipped: every kept edge is then exactly reversible, so certificates
    stitched from the backward frontier replay verbatim.
    """
    out: list[tuple[dict, BraidWord]] = []
    letters = w.letters
    for rel in words.relation_instances(w.n, w.flavor):
        for direction, (src, dst) in (
            ("forward", (rel.lhs, rel.rhs)),
            ("reverse", (rel.rhs, rel.lhs)),
        ):
            if not src or not dst:
                continue  # deletions/insertions do not help a reduced state
            span = len(src)
            for p in range(len(letters) - span + 1):
                if letters[p : p + span] == src:
                    new = w.with_letters(letters[:p] + dst + letters[p + span :])
                    if new.letters != free_reduce(new).letters:
                        continue
                    record = {
                        "action": "relation",
                        "relation": rel.name,
                        "position": p,
                        "direction": direction,
                    }
                    out.append((record, new))
    for move in applicable_moves(w, allow_stab=True, allow_antibond=allow_antibond):
        new = free_reduce(apply_move(w, move, allow_antibond=allow_antibond))
        if new.n > bounds.max_n or len(new) > bounds.max_len:
            continue
        out.append(({"action": "move", **move.record()}, new))
    return out


def _apply_relation_record(w: BraidWord, record: dict) -> BraidWord:
    for rel in words.relation_instances(w.n, w.flavor):
        if rel.name != record["relation"]:
            continue
        src, dst = (rel.lhs, rel.rhs) if record["direction"] == "forward" else (rel.rhs, rel.lhs)
        p = record["position"]
        if w.letters[p : p + len(src)] == src:
            return w.with_letters(w.letters[:p] + dst + w.letters[p + len(src) :])
    raise WordError(f"relation step {record!r} does not apply to {w.text()!r}")


def _reverse_record(record: dict, word_before: BraidWord) -> dict:
    if record["action"] == "relation":
        direction = "reverse" if record["direction"] == "forward" else "forward"
        return {**record, "direction": direction}
    move = MarkovMove(
        record["move"],
        index=record["params"].get("index"),
        sign=record["params"].get("sign"),
    )
    return {"action": "move", **inverse_move(move, word_before).record()}


def replay_certificate(start: BraidWord, certificate: tuple[dict, ...]) -> BraidWord:
    """Re-apply every step; raises WordError if any step fails to apply."""
    current = free_reduce(start)
    for record in certificate:
        if record["action"] == "relation":
            current = free_reduce(_apply_relation_record(current, record))
        elif record["action"] == "move":
            move = MarkovMove(
                record["move"],
                index=record["params"].get("index"),
                sign=record["params"].get("sign"),
            )
            current = free_reduce(apply_move(current, move, allow_antibond=True))
        else:
            raise WordError(f"unknown certificate action {record!r}")
    return current


def certificate_to_json(certificate: tuple[dict, ...]) -> str:
    return json.dumps(list(certificate), indent=2)


def markov_equiv_search(
    a: BraidWord,
    b: BraidWord,
    bounds: SearchBounds = SearchBounds(),
    allow_antibond: bool = False,
) -> SearchResult:
    """Bidirectional BFS for a replayable move/relation path from a to b."""
    if a.flavor != b.flavor:
        raise WordError("searched words must share a flavor")
    flavor = a.flavor
    a = free_reduce(a)
    b = free_reduce(b)
    # parents[side][state] = (parent_state or None, edge record from parent)
    sides: list[dict[_State, tuple[_State | None, dict | None]]] = [
        {_state(a): (None, None)},
        {_state(b): (None, None)},
    ]
    frontiers: list[deque[_State]] = [deque([_state(a)]), deque([_state(b)])]
    explored = 2

    def path_from_root(side: int, state: _State) -> list[tuple[_State, dict]]:
        """Edges root -> state as (child_state, edge) pairs, in order."""
        steps: list[tuple[_State, dict]] = []
        cur: _State | None = state
        while cur is not None:
            parent, edge = sides[side][cur]
            if edge is not None:
                steps.append((cur, edge))
            cur = parent
        steps.reverse()
        return steps

    def stitch(meet: _State) -> tuple[dict, ...] | None:
        forward = path_from_root(0, meet)
        backward = path_from_root(1, meet)
        records = [dict(edge) for _, edge in forward]
        # reverse the b-side path: each recorded edge parent -> child becomes
        # a step child -> parent
        for child, edge in reversed(backward):
            parent, _ = sides[1][child]
            parent_word = _word(parent, flavor)
            records.append(_reverse_record(edge, parent_word))
        certificate = tuple(records)
        try:
            final = replay_certificate(a, certificate)
        except (WordError, MoveNotApplicable):
            return None
        if _state(final) != _state(b):
            return None
        return certificate

    if _state(a) == _state(b):
        return SearchResult((), explored)
    if _state(b) in sides[0]:
        pass  # cannot happen with distinct roots, kept for clarity

    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        level_size = len(frontiers[side])
        for _ in range(level_size):
            state = frontiers[side].popleft()
            w = _word(state, flavor)
            for record, new in _search_edges(w, bounds, allow_antibond):
                ns = _state(new)
                if ns in sides[side]:
                    continue
                sides[side][ns] = (state, record)
                explored += 1
                if ns in sides[1 - side]:
                    certificate = stitch(ns)
                    if certificate is not None:
                        return SearchResult(certificate, explored)
                frontiers[side].append(ns)
                if explored >= bounds.max_states:
                    return SearchResult(None, explored)
    return SearchResult(None, explored)
