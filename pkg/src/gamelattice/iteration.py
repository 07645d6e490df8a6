"""Generic operator iteration on the restriction lattice, with exhaustive
desk-scale verifiers for the classic fixpoint facts.

Operators are plain callables Restriction -> Restriction over one game.
Iteration starts at the top element and stops at the first fixpoint; finite
games never need a limit step, so the trace ordinals are all finite here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import BudgetError
from .games import (
    Game,
    Restriction,
    lattice_join,
    lattice_leq,
    restriction_from_names,
    restriction_top,
)
from .ordinals import Ordinal, parse_ordinal
from .reports import CheckReport

Operator = Callable[[Restriction], Restriction]

DEFAULT_LATTICE_BUDGET = 1 << 16
DEFAULT_PAIR_BUDGET = 2_000_000


@dataclass(frozen=True)
class IterationTrace:
    """Ordinal-labelled iterates from the top element down to the outcome."""

    steps: tuple[tuple[Ordinal, Restriction], ...]
    closure_ordinal: Ordinal
    outcome: Restriction

    def to_json_dict(self) -> dict:
        return {
            "steps": [
                {"ordinal": str(o), "restriction": r.names()}
                for o, r in self.steps
            ],
            "closure_ordinal": str(self.closure_ordinal),
            "outcome": self.outcome.names(),
        }


def trace_from_json_dict(game: Game, d: dict) -> IterationTrace:
    steps = tuple(
        (parse_ordinal(item["ordinal"]), restriction_from_names(game, item["restriction"]))
        for item in d["steps"]
    )
    return IterationTrace(
        steps=steps,
        closure_ordinal=parse_ordinal(d["closure_ordinal"]),
        outcome=restriction_from_names(game, d["outcome"]),
    )


def default_iteration_budget(game: Game) -> int:
    return 10 * sum(game.sizes)


def iterate_operator(
    op: Operator, game: Game, budget: int | None = None
) -> IterationTrace:
    """Iterate op from the top element until the first fixpoint."""
    if budget is None:
        budget = default_iteration_budget(game)
    current = restriction_top(game)
    steps = [(Ordinal(0, 0), current)]
    k = 0
    while True:
        nxt = op(current)
        if nxt == current:
            return IterationTrace(tuple(steps), Ordinal(0, k), current)
        k += 1
        if k > budget:
            raise BudgetError(
                f"no fixpoint within {budget} iterations", attempted=k
            )
        steps.append((Ordinal(0, k), nxt))
        current = nxt


def is_fixpoint(op: Operator, g: Restriction) -> bool:
    return op(g) == g


def is_post_fixpoint(op: Operator, g: Restriction) -> bool:
    return lattice_leq(g, op(g))


# -- mask-level lattice enumeration (internal to the verifiers) ---------------


def _mask_key(r: Restriction) -> tuple[int, ...]:
    return tuple(sum(1 << s for s in comp) for comp in r.sets)


def _from_masks(game: Game, masks: tuple[int, ...]) -> Restriction:
    return Restriction(
        game,
        tuple(
            frozenset(i for i in range(k) if mask >> i & 1)
            for mask, k in zip(masks, game.sizes)
        ),
    )


def _all_mask_tuples(game: Game) -> Iterator[tuple[int, ...]]:
    sizes = game.sizes
    def rec(i):
        if i == len(sizes):
            yield ()
            return
        for rest in rec(i + 1):
            for mask in range(1 << sizes[i]):
                yield (mask,) + rest
    yield from rec(0)


def _submask_tuples(masks: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Every componentwise submask tuple of `masks` (including itself)."""
    def rec(i):
        if i == len(masks):
            yield ()
            return
        for rest in rec(i + 1):
            m = masks[i]
            sub = m
            while True:
                yield (sub,) + rest
                if sub == 0:
                    break
                sub = (sub - 1) & m
    yield from rec(0)


def _image_table(
    op: Operator, game: Game, max_restrictions: int
) -> dict[tuple[int, ...], tuple[int, ...]]:
    total = 1
    for k in game.sizes:
        total <<= k
    if total > max_restrictions:
        raise BudgetError(
            f"lattice of {total} restrictions exceeds the budget of {max_restrictions}",
            attempted=total,
        )
    table = {}
    for masks in _all_mask_tuples(game):
        table[masks] = _mask_key(op(_from_masks(game, masks)))
    return table


def _masks_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x & ~y == 0 for x, y in zip(a, b))


def _monotonicity_counterexample(
    game: Game, table: dict, max_pairs: int
) -> tuple | None:
    """First comparable pair with a non-monotone image, in a fixed order."""
    pairs = 1
    for k in game.sizes:
        pairs *= 3 ** k
    if pairs > max_pairs:
        raise BudgetError(
            f"{pairs} comparable pairs exceed the budget of {max_pairs}",
            attempted=pairs,
        )
    for big in sorted(table):
        img_big = table[big]
        for small in _submask_tuples(big):
            if not _masks_leq(table[small], img_big):
                return (small, big)
    return None


def _names(game: Game, masks: tuple[int, ...]) -> list[list[str]]:
    return _from_masks(game, masks).names()


def verify_tarski(
    op: Operator,
    game: Game,
    op_name: str = "operator",
    max_restrictions: int = DEFAULT_LATTICE_BUDGET,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
) -> CheckReport:
    """Exhaustively confirm outcome = largest fixpoint = join of post-fixpoints.

    The operator must pass an exhaustive monotonicity check first; a failure
    there is reported as a precondition violation, not raised.
    """
    table = _image_table(op, game, max_restrictions)
    details = {
        "game": game.name,
        "operator": op_name,
        "restrictions": len(table),
    }
    violation = _monotonicity_counterexample(game, table, max_pairs)
    if violation is not None:
        small, big = violation
        return CheckReport(
            name="tarski",
            passed=False,
            details={**details, "precondition_violation": "operator is not monotonic"},
            entries=[
                {
                    "kind": "monotonicity-violation",
                    "smaller": _names(game, small),
                    "larger": _names(game, big),
                    "image_smaller": _names(game, table[small]),
                    "image_larger": _names(game, table[big]),
                }
            ],
        )

    outcome = _mask_key(iterate_operator(op, game).outcome)
    fixpoints = [m for m in sorted(table) if table[m] == m]
    post_fixpoints = [m for m in sorted(table) if _masks_leq(m, table[m])]

    def join(mask_list):
        acc = tuple(0 for _ in game.sizes)
        for m in mask_list:
            acc = tuple(a | b for a, b in zip(acc, m))
        return acc

    largest_fixpoint = join(fixpoints)
    post_join = join(post_fixpoints)
    entries = []
    if largest_fixpoint not in table or table[largest_fixpoint] != largest_fixpoint:
        entries.append(
            {"kind": "fixpoint-join-not-fixpoint", "join": _names(game, largest_fixpoint)}
        )
    for m in fixpoints:
        if not _masks_leq(m, largest_fixpoint):
            entries.append({"kind": "fixpoint-above-join", "restriction": _names(game, m)})
    if outcome != largest_fixpoint:
        entries.append(
            {
                "kind": "outcome-differs-from-largest-fixpoint",
                "outcome": _names(game, outcome),
                "largest_fixpoint": _names(game, largest_fixpoint),
            }
        )
    if outcome != post_join:
        entries.append(
            {
                "kind": "outcome-differs-from-post-fixpoint-join",
                "outcome": _names(game, outcome),
                "post_fixpoint_join": _names(game, post_join),
            }
        )
    details.update(
        {
            "outcome": _names(game, outcome),
            "fixpoints": len(fixpoints),
            "post_fixpoints": len(post_fixpoints),
        }
    )
    return CheckReport(name="tarski", passed=not entries, details=details, entries=entries)


def verify_contracting_outcome(
    op: Operator,
    game: Game,
    op_name: str = "operator",
    budget: int | None = None,
) -> CheckReport:
    """Iterate from the top, checking each step descends, and confirm the
    iteration stops at a fixpoint within sum-of-strategy-set-sizes steps.

    The iterates themselves are the contraction sample; a step that grows is
    reported with the witness restriction.
    """
    if budget is None:
        budget = default_iteration_budget(game)
    entries = []
    current = restriction_top(game)
    steps = [(Ordinal(0, 0), current)]
    k = 0
    closure = None
    while True:
        nxt = op(current)
        if not lattice_leq(nxt, current):
            entries.append(
                {
                    "kind": "contraction-violation",
                    "restriction": current.names(),
                    "image": nxt.names(),
                }
            )
            break
        if nxt == current:
            closure = Ordinal(0, k)
            break
        k += 1
        if k > budget:
            entries.append({"kind": "no-fixpoint-within-budget", "budget": budget})
            break
        steps.append((Ordinal(0, k), nxt))
        current = nxt
    bound = sum(game.sizes)
    details = {"game": game.name, "operator": op_name}
    if closure is not None:
        if closure.finite > bound:
            entries.append(
                {
                    "kind": "closure-exceeds-size-bound",
                    "closure": str(closure),
                    "bound": bound,
                }
            )
        for (_, r1), (_, r2) in zip(steps, steps[1:]):
            if not (lattice_leq(r2, r1) and r1 != r2):
                entries.append({"kind": "trace-not-strictly-decreasing"})
                break
        details["closure_ordinal"] = str(closure)
        details["outcome"] = current.names()
    return CheckReport(
        name="contracting-outcome",
        passed=not entries,
        details=details,
        entries=entries,
    )


def verify_inclusion_lemma(
    op1: Operator,
    op2: Operator,
    game: Game,
    op1_name: str = "op1",
    op2_name: str = "op2",
    max_restrictions: int = DEFAULT_LATTICE_BUDGET,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
) -> CheckReport:
    """Hypotheses: op1 pointwise below op2, op1 monotonic, op2 contracting.
    Conclusion: outcome(op1) is included in outcome(op2)."""
    table1 = _image_table(op1, game, max_restrictions)
    table2 = _image_table(op2, game, max_restrictions)
    entries = []
    hypotheses = {"pointwise": True, "op1_monotonic": True, "op2_contracting": True}
    for m in sorted(table1):
        if not _masks_leq(table1[m], table2[m]):
            hypotheses["pointwise"] = False
            entries.append(
                {
                    "kind": "pointwise-inclusion-violation",
                    "restriction": _names(game, m),
                    "op1_image": _names(game, table1[m]),
                    "op2_image": _names(game, table2[m]),
                }
            )
            break
    violation = _monotonicity_counterexample(game, table1, max_pairs)
    if violation is not None:
        small, big = violation
        hypotheses["op1_monotonic"] = False
        entries.append(
            {
                "kind": "op1-monotonicity-violation",
                "smaller": _names(game, small),
                "larger": _names(game, big),
            }
        )
    for m in sorted(table2):
        if not _masks_leq(table2[m], m):
            hypotheses["op2_contracting"] = False
            entries.append(
                {"kind": "op2-contraction-violation", "restriction": _names(game, m)}
            )
            break
    out1 = iterate_operator(op1, game).outcome
    out2 = iterate_operator(op2, game).outcome
    inclusion = lattice_leq(out1, out2)
    if not inclusion:
        entries.append(
            {
                "kind": "outcome-inclusion-violation",
                "op1_outcome": out1.names(),
                "op2_outcome": out2.names(),
            }
        )
    return CheckReport(
        name="inclusion-lemma",
        passed=all(hypotheses.values()) and inclusion,
        details={
            "game": game.name,
            "op1": op1_name,
            "op2": op2_name,
            "hypotheses": hypotheses,
            "outcome_inclusion": inclusion,
            "op1_outcome": out1.names(),
            "op2_outcome": out2.names(),
        },
        entries=entries,
    )


def exhaustive_lattice_laws(game: Game, max_restrictions: int = 1 << 8) -> CheckReport:
    """Partial-order and glb/lub laws, checked on a fully enumerated lattice.

    Pairs are checked on the Restriction objects; the two greatest/least
    quantifiers run over packed masks so games up to eight strategies total
    stay fast.
    """
    from .games import lattice_meet

    mask_tuples = list(_all_mask_tuples(game))
    if len(mask_tuples) > max_restrictions:
        raise BudgetError(
            f"{len(mask_tuples)} restrictions exceed the law-check budget",
            attempted=len(mask_tuples),
        )
    restrictions = [_from_masks(game, m) for m in mask_tuples]
    entries = []
    for a, ma in zip(restrictions, mask_tuples):
        if not lattice_leq(a, a):
            entries.append({"kind": "not-reflexive", "restriction": a.names()})
        for b, mb in zip(restrictions, mask_tuples):
            if lattice_leq(a, b) != _masks_leq(ma, mb):
                entries.append({"kind": "leq-disagrees-with-inclusion"})
            if lattice_leq(a, b) and lattice_leq(b, a) and a != b:
                entries.append({"kind": "not-antisymmetric"})
            meet = _mask_key(lattice_meet([a, b]))
            join = _mask_key(lattice_join([a, b]))
            if not (_masks_leq(meet, ma) and _masks_leq(meet, mb)):
                entries.append({"kind": "meet-not-lower-bound"})
            if not (_masks_leq(ma, join) and _masks_leq(mb, join)):
                entries.append({"kind": "join-not-upper-bound"})
            for mc in mask_tuples:
                if _masks_leq(mc, ma) and _masks_leq(mc, mb) and not _masks_leq(mc, meet):
                    entries.append({"kind": "meet-not-greatest"})
                if _masks_leq(ma, mc) and _masks_leq(mb, mc) and not _masks_leq(join, mc):
                    entries.append({"kind": "join-not-least"})
    return CheckReport(
        name="lattice-laws",
        passed=not entries,
        details={"game": game.name, "restrictions": len(restrictions)},
        entries=entries[:5],
    )
