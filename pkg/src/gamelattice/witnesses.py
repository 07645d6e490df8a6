"""Bundled symbolic games: a two-player game whose iterated elimination of
strictly dominated strategies is not stable at the first infinite ordinal,
plus lifts of the finite bundled games for embedding-consistency checks.

The transfinite witness is the following symmetric game.  Each player picks
x in [0,1] or the outside option 2.  Against an opponent playing y, a choice
x in [0,1] pays min(x, psi(y)) with psi(y) = (1 + min(y, 1)) / 2, and the
outside option pays 2 when y is in {1, 2} and -1 otherwise.  One round of
removing strategies strictly dominated on the current restriction (with
dominators drawn from the full initial strategy set) works out to:

  * x in [0,1) is removed iff psi(y) > x for every surviving opponent y,
    i.e. below the threshold (1 + inf(surviving y))/2, any higher choice
    dominating it;
  * x = 1 is removed iff the opponent's survivors all lie in {1, 2}, the
    dominator being the outside option;
  * the outside option is removed iff the opponent's survivors are non-empty
    and all lie in [0,1), when any x in [0,1] dominates it;
  * against an empty opponent set everything is removed (the dominance
    quantifier is vacuously true).

From the full sets the surviving intervals are [1 - 2^-k, 1] u {2} after k
rounds, strictly shrinking forever; the intersection at the first limit
ordinal is {1, 2}, where one more round removes 1, and {2} is a fixpoint.
So the closure ordinal is one past the first limit ordinal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .games import Game, Restriction, restriction_top
from .properties import PropertyProfile, apply_operator, parse_property_spec
from .symbolic import SymbolicGame, SymbolicSet

ONE = Fraction(1)
TWO = Fraction(2)

_UNIT = SymbolicSet.interval(0, 1)
_BELOW_ONE = SymbolicSet.interval(0, 1, hi_closed=False)
_TOP_COMPONENT = _UNIT.union(SymbolicSet.point(TWO))


def _psi_threshold(opponent: SymbolicSet) -> tuple[Fraction, bool]:
    """inf of psi over the opponent's set, with attainment; requires a
    non-empty opponent set."""
    low = opponent.intersection(_UNIT)
    has_two = opponent.contains(TWO)
    if low.is_empty:
        return ONE, has_two
    c, attained = low.infimum()
    tau = (1 + c) / 2
    if tau == 1:
        return ONE, attained or has_two
    return tau, attained


def _eliminate_one_side(own: SymbolicSet, opponent: SymbolicSet) -> SymbolicSet:
    if opponent.is_empty:
        return SymbolicSet.empty()
    tau, attained = _psi_threshold(opponent)
    surviving_low = own.intersection(
        SymbolicSet.interval(tau, 1, lo_closed=attained, hi_closed=False)
    )
    out = surviving_low
    opp_in_tail = opponent.difference(SymbolicSet.points([ONE, TWO])).is_empty
    if own.contains(ONE) and not opp_in_tail:
        out = out.union(SymbolicSet.point(ONE))
    opp_below_one = opponent.difference(_BELOW_ONE).is_empty
    if own.contains(TWO) and not opp_below_one:
        out = out.union(SymbolicSet.point(TWO))
    return out


def _witness_step(sets):
    x, y = sets
    return (_eliminate_one_side(x, y), _eliminate_one_side(y, x))


def _witness_limit(block):
    """The intersection of the current infinite chain.

    In the shrinking regime the per-player sets are [l, 1] u {2} with the
    lower ends following l -> (1 + l)/2, whose fixed point is 1; the chain's
    intersection is then {1, 2}.  A stabilized chain returns its last
    element, and anything unrecognized falls back to the exact intersection
    of the iterates seen so far (always a superset of the true limit and a
    subset of every iterate).
    """
    last = block[-1]
    if len(block) >= 2 and block[-2] == last:
        return last
    out = []
    for i in range(len(last)):
        chain = [sets[i] for sets in block]
        shrinking = all(
            b.issubset(a) and a != b for a, b in zip(chain, chain[1:])
        )
        low_parts = [s.intersection(_UNIT) for s in chain]
        if (
            shrinking
            and all(not p.is_empty for p in low_parts)
            and all(p.supremum() == (ONE, True) for p in low_parts)
        ):
            lim = SymbolicSet.point(ONE)
            if all(s.contains(TWO) for s in chain):
                lim = lim.union(SymbolicSet.point(TWO))
            out.append(lim)
        else:
            acc = chain[0]
            for s in chain[1:]:
                acc = acc.intersection(s)
            out.append(acc)
    return tuple(out)


def transfinite_witness() -> SymbolicGame:
    return SymbolicGame(
        name="witness-tg",
        players=2,
        initial=(_TOP_COMPONENT, _TOP_COMPONENT),
        step=_witness_step,
        limit=_witness_limit,
        encodes="sd:g",
    )


# -- lifting finite games ------------------------------------------------------


def lift_finite_game(
    game: Game, profile: PropertyProfile, name: str | None = None
) -> SymbolicGame:
    """Embed a finite game as point sets; the step applies the profile's
    elimination operator through the encoding."""

    def encode(r: Restriction):
        return tuple(
            SymbolicSet.points([Fraction(s) for s in sorted(r.sets[i])])
            for i in game.players()
        )

    def decode(sets) -> Restriction:
        return Restriction(
            game,
            tuple(
                frozenset(
                    s for s in game.strategies(i) if sets[i].contains(Fraction(s))
                )
                for i in game.players()
            ),
        )

    def step(sets):
        return encode(apply_operator(profile, game, decode(sets)))

    def limit(block):
        acc = block[0]
        for sets in block[1:]:
            acc = tuple(a.intersection(b) for a, b in zip(acc, sets))
        return acc

    return SymbolicGame(
        name=name or f"embedded-finite-{game.name}",
        players=game.num_players,
        initial=encode(restriction_top(game)),
        step=step,
        limit=limit,
        encodes=str(profile),
    )


def _embedded_pd() -> SymbolicGame:
    from .fixtures import PD

    profile = PropertyProfile.uniform(parse_property_spec("sd:l"), 2)
    return lift_finite_game(PD, profile, name="embedded-finite-pd")


REGISTRY: dict[str, Callable[[], SymbolicGame]] = {
    "witness-tg": transfinite_witness,
    "embedded-finite-pd": _embedded_pd,
}


def load_witness(name: str) -> SymbolicGame:
    if name not in REGISTRY:
        known = ", ".join(sorted(REGISTRY))
        raise ValueError(f"unknown witness {name!r}; registered: {known}")
    return REGISTRY[name]()
