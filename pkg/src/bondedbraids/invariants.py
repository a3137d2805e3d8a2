"""Polynomial invariants extracted from the representations.

The characteristic polynomial det(x*I - image) is a similarity invariant,
so conjugation moves preserve it, and cycling a letter across the word
preserves it too (AB and BA share a characteristic polynomial).  The
Alexander-style candidate divides det(reduced image - I) by
1 + t + ... + t^(n-1) when that division is exact.

Whether any of these survive stabilization is an open experiment;
:func:`invariance_report` asserts only what the Markov move tests
establish and logs the rest for inspection.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from . import closure, markov, words
from .burau import ReprKind, full_kind, reduced_kind, represent
from .matrix import RingMatrix
from .ring import D1_POLY, D2_POLY, ONE, Polynomial, RingElement, try_exact_div
from .words import BraidWord, WordError

__all__ = [
    "CharPoly",
    "char_poly",
    "AlexanderResult",
    "alexander_candidate",
    "unit_normalize",
    "WalkObservation",
    "InvarianceReport",
    "invariance_report",
]


# -- polynomials in an auxiliary variable x over Z[t, z, zk] ------------------

_XPoly = tuple[Polynomial, ...]  # coefficients, ascending in x, trimmed

_XP_ZERO: _XPoly = ()
_P_ZERO = Polynomial.zero()
_P_ONE = Polynomial.one()


def _xp(coeffs: list[Polynomial]) -> _XPoly:
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return tuple(coeffs)


def _xp_sub(a: _XPoly, b: _XPoly) -> _XPoly:
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        ca = a[k] if k < len(a) else _P_ZERO
        cb = b[k] if k < len(b) else _P_ZERO
        out.append(ca - cb)
    return _xp(out)


def _xp_mul(a: _XPoly, b: _XPoly) -> _XPoly:
    if not a or not b:
        return _XP_ZERO
    out = [_P_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero:
            continue
        for j, cb in enumerate(b):
            if cb.is_zero:
                continue
            out[i + j] = out[i + j] + ca * cb
    return _xp(out)


def _xp_div_exact(a: _XPoly, b: _XPoly) -> _XPoly:
    """Exact division in Z[t, z, zk][x]; long division in x with exact
    coefficient division at each step."""
    if not b:
        raise ZeroDivisionError("division by zero x-polynomial")
    if not a:
        return _XP_ZERO
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    out = [_P_ZERO] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c.is_zero:
            continue
        q = try_exact_div(c, lead)
        assert q is not None, "Bareiss x-division must be exact"
        out[k - db] = q
        for j in range(db + 1):
            rem[k - db + j] = rem[k - db + j] - q * b[j]
    assert all(c.is_zero for c in rem), "nonzero remainder in exact x-division"
    return _xp(out)


def _xp_det_bareiss(rows: list[list[_XPoly]]) -> _XPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    sign = 1
    prev: _XPoly = (_P_ONE,)
    for k in range(n - 1):
        if not rows[k][k]:
            for r in range(k + 1, n):
                if rows[r][k]:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return _XP_ZERO
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _xp_sub(_xp_mul(pivot, rows[i][j]), _xp_mul(rows[i][k], rows[k][j]))
                rows[i][j] = _xp_div_exact(num, prev)
            rows[i][k] = _XP_ZERO
        prev = pivot
    result = rows[n - 1][n - 1]
    if sign < 0:
        result = _xp_sub(_XP_ZERO, result)
    return result


@dataclass(frozen=True)
class CharPoly:
    """det(x*I - M) as coefficients c_0..c_dim, ascending; c_dim = 1."""

    coefficients: tuple[RingElement, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def canonical_string(self) -> str:
        pieces = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c.is_zero:
                continue
            c_str = str(c)
            if k == 0:
                pieces.append(c_str)
            else:
                x_part = "x" if k == 1 else f"x^{k}"
                if c.is_one:
                    pieces.append(x_part)
                elif c_str == "-1":
                    pieces.append(f"-{x_part}")
                else:
                    if len(c.num) > 1 or not c.denominator_free:
                        c_str = f"({c_str})"
                    pieces.append(f"{c_str}*{x_part}")
        if not pieces:
            return "0"
        out = pieces[0]
        for term in pieces[1:]:
            out += term if term.startswith("-") else "+" + term
        return out

    def short_hash(self) -> str:
        return hashlib.sha256(self.canonical_string().encode()).hexdigest()[:12]

    def __str__(self) -> str:
        return self.canonical_string()


def char_poly_of_matrix(m: RingMatrix) -> CharPoly:
    """Characteristic polynomial by fraction-free elimination over the ring
    extended by x, with the matrix's t/d1/d2 denominators cleared first."""
    n = m.n
    dt = max(e.den_t for row in m.entries for e in row)
    dd1 = max(e.den_d1 for row in m.entries for e in row)
    dd2 = max(e.den_d2 for row in m.entries for e in row)
    u = _P_ONE.shift_t(dt) * D1_POLY**dd1 * D2_POLY**dd2

    def cleared(e: RingElement) -> Polynomial:
        p = e.num.shift_t(dt - e.den_t)
        if dd1 != e.den_d1:
            p = p * D1_POLY ** (dd1 - e.den_d1)
        if dd2 != e.den_d2:
            p = p * D2_POLY ** (dd2 - e.den_d2)
        return p

    rows: list[list[_XPoly]] = []
    for i in range(n):
        row = []
        for j in range(n):
            c0 = -cleared(m.entries[i][j])
            row.append(_xp([c0, u]) if i == j else _xp([c0]))
        rows.append(row)
    det = _xp_det_bareiss(rows)
    # det(x*u*I - N) = u^n * det(x*I - M): divide the collected factor out.
    coeffs = []
    for k in range(n + 1):
        poly = det[k] if k < len(det) else _P_ZERO
        coeffs.append(RingElement(poly, dt * n, dd1 * n, dd2 * n))
    assert coeffs[-1] == ONE, "characteristic polynomial must be monic"
    return CharPoly(tuple(coeffs))


def char_poly(w: BraidWord, kind: ReprKind | None = None) -> CharPoly:
    if kind is None:
        kind = full_kind(w.flavor)
    return char_poly_of_matrix(represent(w, kind))


# -- Alexander-style candidate -------------------------------------------------


@dataclass(frozen=True)
class AlexanderResult:
    """value = det(reduced image - I), divided by 1 + t + ... + t^(n-1)
    when exact; normalized records whether that division succeeded."""

    value: RingElement
    normalized: bool

    def __str__(self) -> str:
        suffix = "" if self.normalized else " (unnormalized)"
        return f"{self.value}{suffix}"


def _t_cyclotomic_like(n: int) -> Polynomial:
    """1 + t + ... + t^(n-1)."""
    return Polynomial.from_terms({words.Permutation.identity(1) and None or None: 0}) if False else _sum_of_t_powers(n)


def _sum_of_t_powers(n: int) -> Polynomial:
    acc = Polynomial.zero()
    for k in range(n):
        acc = acc + _P_ONE.shift_t(k)
    return acc


def alexander_candidate(w: BraidWord) -> AlexanderResult:
    if w.n < 2:
        raise WordError("alexander candidate needs n >= 2")
    kind = reduced_kind(w.flavor)
    m = represent(w, kind) - RingMatrix.identity(w.n - 1)
    d = m.det()
    h = _sum_of_t_powers(w.n)
    # h is coprime to t, d1 and d2, so exactness is decided on the numerator
    q = try_exact_div(d.num, h)
    if q is None:
        return AlexanderResult(d, normalized=False)
    return AlexanderResult(RingElement(q, d.den_t, d.den_d1, d.den_d2), normalized=True)


def unit_normalize(e: RingElement) -> RingElement:
    """Canonical representative modulo the units +-t^k: clear the t-power so
    the lowest t-exponent is 0 and make the graded-lex lowest term positive."""
    if e.is_zero:
        return e
    shift = e.num.min_exp_t() - e.den_t
    num = e.num.unshift_t(e.num.min_exp_t())
    low = min(num.terms().items(), key=lambda item: (sum(item[0]), item[0].exp_zk, item[0].exp_z, item[0].exp_t))
    if low[1] < 0:
        num = -num
    return RingElement(num, 0, e.den_d1, e.den_d2)


# -- invariance harness ----------------------------------------------------------


@dataclass(frozen=True)
class WalkObservation:
    walk_id: int
    allow_stab: bool
    moves: tuple[markov.MarkovMove, ...]
    endpoint: BraidWord
    char_hash: str
    alexander: str
    fingerprint: str
    verdict: str

    def row(self) -> str:
        moves = ",".join(m.kind for m in self.moves) or "(none)"
        stab = "stab" if self.allow_stab else "conj/cycle"
        return (
            f"walk={self.walk_id} kind={stab} moves={moves} "
            f"char={self.char_hash} alexander={self.alexander} "
            f"fingerprint={self.fingerprint} verdict={self.verdict}"
        )


@dataclass(frozen=True)
class InvarianceReport:
    word: BraidWord
    base_char_hash: str
    base_alexander: str
    base_fingerprint: str
    observations: tuple[WalkObservation, ...]

    @property
    def all_passed(self) -> bool:
        return all(o.verdict == "PASS" for o in self.observations)

    def lines(self) -> list[str]:
        out = [
            f"word={self.word.text() or '(id)'} n={self.word.n} flavor={self.word.flavor.name}",
            f"base char={self.base_char_hash} alexander={self.base_alexander} "
            f"fingerprint={self.base_fingerprint}",
        ]
        out.extend(o.row() for o in self.observations)
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def invariance_report(w: BraidWord, walks: int, steps: int, seed: int) -> InvarianceReport:
    """Seeded Markov walks from w, alternating conjugation/cycle-only and
    stabilization-allowed.

    Asserted per endpoint: full fingerprint and characteristic polynomial
    for conjugation/cycle walks; component count, bond multigraph and
    linking multiset for stabilizing walks (component sizes provably change
    under stabilization, so the full fingerprint cannot be asserted there).
    The Alexander candidate is always observational.
    """
    base_char = char_poly(w)
    base_fp = closure.closure_invariant_fingerprint(w)
    base_stable = closure.stabilization_invariants(w)
    base_alex = str(alexander_candidate(w)) if w.n >= 2 else "n/a"
    observations = []
    for walk_id in range(walks):
        allow_stab = walk_id % 2 == 1
        endpoint, trace = markov.random_markov_walk(
            w, steps, seed + walk_id, allow_stab=allow_stab
        )
        endpoint = words.free_reduce(endpoint)
        end_char = char_poly(endpoint)
        end_fp = closure.closure_invariant_fingerprint(endpoint)
        end_alex = str(alexander_candidate(endpoint)) if endpoint.n >= 2 else "n/a"
        if allow_stab:
            passed = closure.stabilization_invariants(endpoint) == base_stable
        else:
            passed = end_char == base_char and end_fp == base_fp
        observations.append(
            WalkObservation(
                walk_id=walk_id,
                allow_stab=allow_stab,
                moves=trace,
                endpoint=endpoint,
                char_hash=end_char.short_hash(),
                alexander=end_alex,
                fingerprint=end_fp,
                verdict="PASS" if passed else "FAIL",
            )
        )
    return InvarianceReport(
        word=w,
        base_char_hash=base_char.short_hash(),
        base_alexander=base_alex,
        base_fingerprint=base_fp,
        observations=tuple(observations),
    )
