"""Exact symbolic subsets of the rational line, and ordinal-labelled
iteration of supplied set-valued eliminators for infinite-strategy games.

A SymbolicSet is a finite union of rational intervals (open or closed ends,
optionally unbounded) and isolated rational points, kept in a canonical form:
pieces pairwise disjoint, sorted, with touching pieces merged.  Equality of
canonical forms is decidable set equality, and union, intersection and
difference are exact.  Endpoints are Fractions; the only floats anywhere are
the +/-inf sentinels of unbounded pieces, which compare exactly against any
Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ValidationError
from .ordinals import Ordinal
from .reports import CheckReport

INF = float("inf")
NEG_INF = float("-inf")


def _fmt_endpoint(v) -> str:
    if v == INF:
        return "inf"
    if v == NEG_INF:
        return "-inf"
    return str(v)


def _parse_endpoint(text: str):
    if text == "inf":
        return INF
    if text == "-inf":
        return NEG_INF
    return Fraction(text)


@dataclass(frozen=True)
class Piece:
    """One interval [lo,hi] with independently open or closed ends; a point
    is the degenerate both-closed case lo == hi."""

    lo: object
    hi: object
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        if self.lo == NEG_INF and self.lo_closed:
            raise ValueError("-inf cannot be a closed end")
        if self.hi == INF and self.hi_closed:
            raise ValueError("inf cannot be a closed end")
        if self.lo > self.hi:
            raise ValueError("empty piece")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("degenerate piece must be a closed point")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, q: Fraction) -> bool:
        if q < self.lo or (q == self.lo and not self.lo_closed):
            return False
        if q > self.hi or (q == self.hi and not self.hi_closed):
            return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "lo": _fmt_endpoint(self.lo),
            "hi": _fmt_endpoint(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }

    def __str__(self) -> str:
        if self.is_point:
            return "{%s}" % self.lo
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{_fmt_endpoint(self.lo)},{_fmt_endpoint(self.hi)}{right}"


def _mergeable(a: Piece, b: Piece) -> bool:
    """a sorted before b: do they overlap or touch with a closed side?"""
    if a.hi > b.lo:
        return True
    return a.hi == b.lo and (a.hi_closed or b.lo_closed)


def _canonical(pieces) -> tuple[Piece, ...]:
    items = sorted(pieces, key=lambda p: (p.lo, not p.lo_closed))
    merged: list[Piece] = []
    for p in items:
        if merged and _mergeable(merged[-1], p):
            last = merged[-1]
            if p.hi > last.hi:
                hi, hic = p.hi, p.hi_closed
            elif p.hi < last.hi:
                hi, hic = last.hi, last.hi_closed
            else:
                hi, hic = last.hi, last.hi_closed or p.hi_closed
            merged[-1] = Piece(last.lo, hi, last.lo_closed, hic)
        else:
            merged.append(p)
    return tuple(merged)


@dataclass(frozen=True)
class SymbolicSet:
    pieces: tuple[Piece, ...]

    @classmethod
    def from_pieces(cls, pieces) -> "SymbolicSet":
        return cls(_canonical(pieces))

    @classmethod
    def empty(cls) -> "SymbolicSet":
        return cls(())

    @classmethod
    def interval(cls, lo, hi, lo_closed=True, hi_closed=True) -> "SymbolicSet":
        """The rationals between lo and hi; empty when the bounds cross or
        meet without both ends closed.  Infinite ends are always open."""
        lo = lo if lo in (INF, NEG_INF) else Fraction(lo)
        hi = hi if hi in (INF, NEG_INF) else Fraction(hi)
        if lo == NEG_INF:
            lo_closed = False
        if hi == INF:
            hi_closed = False
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            return cls.empty()
        return cls.from_pieces([Piece(lo, hi, lo_closed, hi_closed)])

    @classmethod
    def point(cls, q) -> "SymbolicSet":
        q = Fraction(q)
        return cls.from_pieces([Piece(q, q, True, True)])

    @classmethod
    def points(cls, qs) -> "SymbolicSet":
        return cls.from_pieces([Piece(Fraction(q), Fraction(q), True, True) for q in qs])

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def contains(self, q) -> bool:
        q = Fraction(q)
        return any(p.contains(q) for p in self.pieces)

    def union(self, other: "SymbolicSet") -> "SymbolicSet":
        return SymbolicSet.from_pieces(self.pieces + other.pieces)

    def intersection(self, other: "SymbolicSet") -> "SymbolicSet":
        out = []
        for a in self.pieces:
            for b in other.pieces:
                if a.lo > b.lo or (a.lo == b.lo and not a.lo_closed):
                    lo, loc = a.lo, a.lo_closed
                else:
                    lo, loc = b.lo, b.lo_closed
                if a.hi < b.hi or (a.hi == b.hi and not a.hi_closed):
                    hi, hic = a.hi, a.hi_closed
                else:
                    hi, hic = b.hi, b.hi_closed
                if lo < hi or (lo == hi and loc and hic and lo not in (INF, NEG_INF)):
                    out.append(Piece(lo, hi, loc, hic))
        return SymbolicSet.from_pieces(out)

    def complement(self) -> "SymbolicSet":
        out = []
        cursor, cursor_closed = NEG_INF, False
        for p in self.pieces:
            lo, loc, hi, hic = cursor, cursor_closed, p.lo, not p.lo_closed
            if lo < hi or (lo == hi and loc and hic and lo not in (INF, NEG_INF)):
                out.append(Piece(lo, hi, loc, hic))
            cursor, cursor_closed = p.hi, not p.hi_closed
        if cursor < INF:
            if cursor == NEG_INF:
                out.append(Piece(NEG_INF, INF, False, False))
            else:
                out.append(Piece(cursor, INF, cursor_closed, False))
        return SymbolicSet.from_pieces(out)

    def difference(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.intersection(other.complement())

    def issubset(self, other: "SymbolicSet") -> bool:
        return self.difference(other).is_empty

    def infimum(self) -> tuple[object, bool]:
        """(value, attained); raises on the empty set."""
        if self.is_empty:
            raise ValueError("the empty set has no infimum here")
        p = self.pieces[0]
        return p.lo, p.lo_closed

    def supremum(self) -> tuple[object, bool]:
        if self.is_empty:
            raise ValueError("the empty set has no supremum here")
        p = self.pieces[-1]
        return p.hi, p.hi_closed

    def sample_points(self, per_piece: int = 3) -> list[Fraction]:
        """Rational probe points: interior points of every piece."""
        out = []
        for p in self.pieces:
            if p.is_point:
                out.append(p.lo)
            elif p.lo == NEG_INF and p.hi == INF:
                out.extend(Fraction(j) for j in range(-per_piece // 2, per_piece - per_piece // 2))
            elif p.lo == NEG_INF:
                out.extend(p.hi - j for j in range(1, per_piece + 1))
            elif p.hi == INF:
                out.extend(p.lo + j for j in range(1, per_piece + 1))
            else:
                width = p.hi - p.lo
                out.extend(p.lo + width * j / (per_piece + 1) for j in range(1, per_piece + 1))
        return out

    def to_json_dict(self) -> dict:
        return {"pieces": [p.to_json_dict() for p in self.pieces]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "SymbolicSet":
        return cls.from_pieces(
            [
                Piece(
                    _parse_endpoint(item["lo"]),
                    _parse_endpoint(item["hi"]),
                    item["lo_closed"],
                    item["hi_closed"],
                )
                for item in d["pieces"]
            ]
        )

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        return " u ".join(str(p) for p in self.pieces)


SymbolicRestriction = tuple  # of SymbolicSet, one per player


@dataclass(frozen=True)
class SymbolicGame:
    """Infinite-strategy elimination given by code: per-player initial sets,
    a one-round eliminator, and a rule producing the intersection of the
    current infinite chain of iterates at a limit ordinal."""

    name: str
    players: int
    initial: tuple[SymbolicSet, ...]
    step: Callable[[tuple[SymbolicSet, ...]], tuple[SymbolicSet, ...]]
    limit: Callable[[list[tuple[SymbolicSet, ...]]], tuple[SymbolicSet, ...]]
    encodes: str | None = None

    def __post_init__(self):
        if len(self.initial) != self.players:
            raise ValueError("need one initial set per player")


@dataclass(frozen=True)
class SymbolicTrace:
    steps: tuple[tuple[Ordinal, tuple[SymbolicSet, ...]], ...]
    status: str  # "fixpoint" | "unresolved"
    closure_ordinal: Ordinal | None
    outcome: tuple[SymbolicSet, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "steps": [
                {"ordinal": str(o), "sets": [s.to_json_dict() for s in sets]}
                for o, sets in self.steps
            ],
            "status": self.status,
            "closure_ordinal": None
            if self.closure_ordinal is None
            else str(self.closure_ordinal),
            "outcome": None
            if self.outcome is None
            else [s.to_json_dict() for s in self.outcome],
        }


def _check_descent(prev, nxt, stage: str, where: str):
    for i, (a, b) in enumerate(zip(prev, nxt)):
        diff = b.difference(a)
        if not diff.is_empty:
            probe = diff.sample_points(1)[0]
            err = ValidationError(
                f"{where}: player {i + 1}'s set grew (probe point {probe})",
                witness=probe,
            )
            err.stage = stage
            raise err


def iterate_symbolic(
    game: SymbolicGame, bound: Ordinal, probe_depth: int = 32
) -> SymbolicTrace:
    """Apply the eliminator at successor ordinals and the limit rule at
    omega-multiples, stopping at the first fixpoint or at the bound.

    Within each omega-block at most probe_depth successor steps are taken
    before the limit rule is consulted; the final block is capped by the
    bound's finite part.  Reaching the bound without a fixpoint is an
    explicit 'unresolved' status, never silent truncation.
    """
    current = game.initial
    label = Ordinal(0, 0)
    steps = [(label, current)]
    block = [current]
    while True:
        in_final_block = label.omega_coeff == bound.omega_coeff
        cap = bound.finite if in_final_block else probe_depth
        if label.finite < cap:
            nxt = game.step(current)
            _check_descent(current, nxt, "step", f"step at {label.successor()}")
            if nxt == current:
                return SymbolicTrace(tuple(steps), "fixpoint", label, current)
            label = label.successor()
            steps.append((label, nxt))
            block.append(nxt)
            current = nxt
            continue
        if in_final_block:
            return SymbolicTrace(tuple(steps), "unresolved", None, None)
        lim = game.limit(block)
        _check_descent(current, lim, "limit", f"limit at {label.next_limit()}")
        label = label.next_limit()
        steps.append((label, lim))
        block = [lim]
        current = lim


def validate_witness(
    game: SymbolicGame,
    samples: int = 3,
    bound: Ordinal | None = None,
    probe_depth: int = 16,
) -> CheckReport:
    """Probe-point and canonical-form checks of a symbolic game: the step
    contracts along the trace, every limit output sits inside every iterate
    of its block, and whether the first limit was a fixpoint already."""
    if bound is None:
        bound = Ordinal(2, probe_depth)
    entries = []
    details: dict = {"witness": game.name, "encodes": game.encodes}
    try:
        trace = iterate_symbolic(game, bound, probe_depth=probe_depth)
    except ValidationError as exc:
        kind = (
            "limit-containment-failure"
            if getattr(exc, "stage", "step") == "limit"
            else "step-contraction-failure"
        )
        return CheckReport(
            name="witness-validation",
            passed=False,
            details=details,
            entries=[{"kind": kind, "message": str(exc), "probe": str(exc.witness)}],
        )
    details["status"] = trace.status
    details["closure_ordinal"] = (
        None if trace.closure_ordinal is None else str(trace.closure_ordinal)
    )
    details["steps_recorded"] = len(trace.steps)

    block: list[tuple[Ordinal, tuple[SymbolicSet, ...]]] = []
    omega_value = None
    omega_next = None
    for (o1, s1), (o2, s2) in zip(trace.steps, trace.steps[1:]):
        if o2.is_limit:
            for o_prev, prev in block + [(o1, s1)]:
                for i, (lim_i, prev_i) in enumerate(zip(s2, prev)):
                    diff = lim_i.difference(prev_i)
                    if not diff.is_empty:
                        probe = diff.sample_points(1)[0]
                        entries.append(
                            {
                                "kind": "limit-containment-failure",
                                "limit": str(o2),
                                "iterate": str(o_prev),
                                "player": i + 1,
                                "probe": str(probe),
                            }
                        )
            block = []
        else:
            # successor step: probe-point contraction evidence
            for i, (b, a) in enumerate(zip(s2, s1)):
                for probe in b.sample_points(samples):
                    if not a.contains(probe):
                        entries.append(
                            {
                                "kind": "contraction-probe-failure",
                                "at": str(o2),
                                "player": i + 1,
                                "probe": str(probe),
                            }
                        )
            block.append((o1, s1))
        if o2 == Ordinal(1, 0):
            omega_value = s2
        if o2 == Ordinal(1, 1):
            omega_next = s2

    transfinite_required = None
    if omega_value is not None:
        if omega_next is not None:
            transfinite_required = omega_next != omega_value
        elif trace.status == "fixpoint" and trace.closure_ordinal == Ordinal(1, 0):
            transfinite_required = False
    details["transfinite_required"] = transfinite_required
    return CheckReport(
        name="witness-validation",
        passed=not entries,
        details=details,
        entries=entries,
    )
