"""Decision procedures for strict dominance and best response.

Pure dominance is a direct quantifier check.  Mixed dominance and
best-response-to-a-correlated-belief run exact LPs and hand back certificates;
every certificate is re-validated by direct rational evaluation before it is
returned.  Quantifiers over an empty set of opponent profiles are taken
literally: a universal is vacuously true, an existential is false.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .errors import ShapeError, UnsupportedBeliefError
from .games import Game, Restriction

PURE = "pure"
CORRELATED = "corr"
INDEPENDENT = "ind"

BELIEF_KINDS = (PURE, CORRELATED, INDEPENDENT)


@dataclass(frozen=True)
class MixedStrategy:
    """A probability mixture over one player's strategies (positive weights only)."""

    owner: int
    weights: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        for strategy, w in self.weights:
            if w <= 0:
                raise ValueError("mixed strategy weights must be positive")
            total += w
        if total != 1:
            raise ValueError(f"mixed strategy weights sum to {total}, not 1")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(s for s, _ in self.weights)


def mixture(owner: int, weight_map) -> MixedStrategy:
    items = tuple(
        (s, Fraction(w)) for s, w in sorted(weight_map.items()) if Fraction(w) != 0
    )
    return MixedStrategy(owner, items)


def uniform_mixture(owner: int, pool: Sequence[int]) -> MixedStrategy:
    k = len(pool)
    return mixture(owner, {s: Fraction(1, k) for s in pool})


@dataclass(frozen=True)
class Belief:
    """What a player holds about the opponents: a single opponent profile, a
    distribution over opponent profiles, or one mixture per opponent."""

    kind: str
    profile: tuple[int, ...] | None = None
    weights: tuple[tuple[tuple[int, ...], Fraction], ...] | None = None
    mixtures: tuple[MixedStrategy, ...] | None = None

    def __post_init__(self):
        if self.kind not in BELIEF_KINDS:
            raise ValueError(f"unknown belief kind {self.kind!r}")
        if self.kind == PURE and self.profile is None:
            raise ValueError("pure belief needs an opponent profile")
        if self.kind == CORRELATED:
            if not self.weights:
                raise ValueError("correlated belief needs a distribution")
            total = Fraction(0)
            for _, w in self.weights:
                if w <= 0:
                    raise ValueError("belief weights must be positive")
                total += w
            if total != 1:
                raise ValueError(f"belief weights sum to {total}, not 1")
        if self.kind == INDEPENDENT and not self.mixtures:
            raise ValueError("independent belief needs one mixture per opponent")

    def support(self) -> frozenset[tuple[int, ...]]:
        if self.kind == PURE:
            return frozenset([self.profile])
        if self.kind == CORRELATED:
            return frozenset(p for p, _ in self.weights)
        import itertools

        return frozenset(
            itertools.product(*(sorted(m.support) for m in self.mixtures))
        )


def pure_belief(profile: Sequence[int]) -> Belief:
    return Belief(PURE, profile=tuple(profile))


def correlated_belief(weight_map) -> Belief:
    items = tuple(
        (tuple(p), Fraction(w))
        for p, w in sorted(weight_map.items())
        if Fraction(w) != 0
    )
    return Belief(CORRELATED, weights=items)


def independent_belief(mixtures: Sequence[MixedStrategy]) -> Belief:
    return Belief(INDEPENDENT, mixtures=tuple(mixtures))


def _check_context(game: Game, context: Restriction):
    if context.game is not game and context.game != game:
        raise ShapeError("restriction belongs to a different game")


def _check_strategy(game: Game, player: int, strategy: int):
    if not 0 <= player < game.num_players:
        raise ValueError(f"no player {player}")
    if not 0 <= strategy < len(game.strategy_names[player]):
        raise ValueError(
            f"player {player + 1} has no strategy index {strategy}"
        )


def expected_payoff(game: Game, player: int, strategy: int, belief: Belief) -> Fraction:
    """Exact expected payoff of `strategy` for `player` under `belief`."""
    if belief.kind == PURE:
        joint = list(belief.profile)
        joint.insert(player, strategy)
        return game.payoff(player, joint)
    if belief.kind == CORRELATED:
        total = Fraction(0)
        for profile, w in belief.weights:
            joint = list(profile)
            joint.insert(player, strategy)
            total += w * game.payoff(player, joint)
        return total
    if game.num_players > 2:
        raise UnsupportedBeliefError(
            "independent mixed beliefs are only decided for 2-player games"
        )
    (mix,) = belief.mixtures
    total = Fraction(0)
    for s, w in mix.weights:
        joint = [0, 0]
        joint[player] = strategy
        joint[1 - player] = s
        total += w * game.payoff(player, joint)
    return total


def strictly_dominates_pure(
    game: Game, context: Restriction, player: int, dominator: int, dominated: int
) -> bool:
    """dominator beats dominated at every opponent profile of the context.

    Vacuously true when the context has no opponent profiles.
    """
    _check_context(game, context)
    _check_strategy(game, player, dominator)
    _check_strategy(game, player, dominated)
    for profile in context.opponent_profiles(player):
        up = game.payoff(player, context.joint_with(player, dominator, profile))
        low = game.payoff(player, context.joint_with(player, dominated, profile))
        if up <= low:
            return False
    return True


def mixed_dominance_witness(
    game: Game,
    context: Restriction,
    player: int,
    dominator_pool: Sequence[int],
    dominated: int,
) -> MixedStrategy | None:
    """A mixture over the pool that strictly beats `dominated` everywhere on
    the context, or None.

    Decided by the exact LP: maximize eps subject to
    sum_s m(s) p(s, y) >= p(dominated, y) + eps for every opponent profile y,
    with m a distribution over the pool.  A witness exists iff eps* > 0.
    """
    _check_context(game, context)
    _check_strategy(game, player, dominated)
    pool = sorted(set(dominator_pool))
    for s in pool:
        _check_strategy(game, player, s)
    if not pool:
        return None
    profiles = list(context.opponent_profiles(player))
    if not profiles:
        # no opponent profile to fail at: dominance is vacuous
        return uniform_mixture(player, pool)
    k = len(pool)
    objective = [lp.ZERO] * k + [lp.ONE, -lp.ONE]
    lhs_le, rhs_le = [], []
    for y in profiles:
        row = [-game.payoff(player, context.joint_with(player, s, y)) for s in pool]
        row += [lp.ONE, -lp.ONE]
        lhs_le.append(row)
        rhs_le.append(-game.payoff(player, context.joint_with(player, dominated, y)))
    lhs_eq = [[lp.ONE] * k + [lp.ZERO, lp.ZERO]]
    value, x = lp.simplex_maximize(objective, lhs_le, rhs_le, lhs_eq, [lp.ONE])
    if value <= 0:
        return None
    witness = mixture(player, {s: x[i] for i, s in enumerate(pool)})
    for y in profiles:
        got = sum(
            (w * game.payoff(player, context.joint_with(player, s, y))
             for s, w in witness.weights),
            Fraction(0),
        )
        if got <= game.payoff(player, context.joint_with(player, dominated, y)):
            raise RuntimeError("LP dominance witness failed re-validation")
    return witness


def is_best_response(
    game: Game,
    belief_context: Restriction,
    comparison_pool: Sequence[int],
    player: int,
    candidate: int,
    belief: Belief,
) -> bool:
    """candidate is weakly payoff-maximal against `belief` among the pool."""
    _check_context(game, belief_context)
    _check_strategy(game, player, candidate)
    allowed = set()
    for profile in belief_context.opponent_profiles(player):
        allowed.add(profile)
    if not belief.support() <= allowed:
        raise ValueError("belief support lies outside the stated restriction")
    base = expected_payoff(game, player, candidate, belief)
    for rival in comparison_pool:
        _check_strategy(game, player, rival)
        if expected_payoff(game, player, rival, belief) > base:
            return False
    return True


def exists_supporting_belief(
    game: Game,
    belief_context: Restriction,
    comparison_pool: Sequence[int],
    player: int,
    candidate: int,
    belief_kind: str,
) -> Belief | None:
    """Some belief held in the context making `candidate` a best response in
    the pool, or None.  Pure beliefs are found by enumeration, correlated
    beliefs by an exact feasibility LP; independent beliefs are routed through
    the correlated path for 2 players and rejected beyond that.
    """
    _check_context(game, belief_context)
    _check_strategy(game, player, candidate)
    if belief_kind not in BELIEF_KINDS:
        raise ValueError(f"unknown belief kind {belief_kind!r}")
    pool = sorted(set(comparison_pool))
    for s in pool:
        _check_strategy(game, player, s)
    profiles = list(belief_context.opponent_profiles(player))
    if not profiles:
        return None
    if belief_kind == INDEPENDENT and game.num_players > 2:
        raise UnsupportedBeliefError(
            "independent mixed beliefs are only decided for 2-player games"
        )

    if belief_kind == PURE:
        for y in profiles:
            belief = pure_belief(y)
            base = expected_payoff(game, player, candidate, belief)
            if all(
                expected_payoff(game, player, s, belief) <= base for s in pool
            ):
                return belief
        return None

    if not pool:
        # nothing to be beaten by: the first profile, as a point distribution
        belief = correlated_belief({profiles[0]: Fraction(1)})
        if belief_kind == INDEPENDENT:
            opponent = 1 - player
            return independent_belief(
                [mixture(opponent, {profiles[0][0]: Fraction(1)})]
            )
        return belief

    # correlated path (also serves independent beliefs for 2 players)
    r = len(profiles)
    objective = [lp.ZERO] * r + [lp.ONE, -lp.ONE]
    lhs_le, rhs_le = [], []
    for s in pool:
        row = [
            game.payoff(player, belief_context.joint_with(player, s, y))
            - game.payoff(player, belief_context.joint_with(player, candidate, y))
            for y in profiles
        ]
        row += [lp.ONE, -lp.ONE]
        lhs_le.append(row)
        rhs_le.append(lp.ZERO)
    lhs_eq = [[lp.ONE] * r + [lp.ZERO, lp.ZERO]]
    value, x = lp.simplex_maximize(objective, lhs_le, rhs_le, lhs_eq, [lp.ONE])
    if value < 0:
        return None
    belief = correlated_belief({y: x[i] for i, y in enumerate(profiles)})
    base = expected_payoff(game, player, candidate, belief)
    for s in pool:
        if expected_payoff(game, player, s, belief) > base:
            raise RuntimeError("LP belief witness failed re-validation")
    if belief_kind == INDEPENDENT:
        opponent = 1 - player
        belief = independent_belief(
            [mixture(opponent, {y[0]: w for y, w in belief.weights})]
        )
    return belief


def _mixture_json(game: Game, m: MixedStrategy) -> dict:
    return {
        "owner": m.owner + 1,
        "weights": {
            game.strategy_names[m.owner][s]: str(w) for s, w in m.weights
        },
    }


def _belief_json(game: Game, player: int, b: Belief) -> dict:
    others = [j for j in game.players() if j != player]
    if b.kind == PURE:
        return {
            "kind": "pure",
            "profile": [
                game.strategy_names[j][s] for j, s in zip(others, b.profile)
            ],
        }
    if b.kind == CORRELATED:
        return {
            "kind": "corr",
            "weights": [
                {
                    "profile": [
                        game.strategy_names[j][s] for j, s in zip(others, p)
                    ],
                    "weight": str(w),
                }
                for p, w in b.weights
            ],
        }
    return {
        "kind": "ind",
        "mixtures": [_mixture_json(game, m) for m in b.mixtures],
    }


def pearce_equivalence_suite(game: Game, restrictions=None, max_restrictions: int = 1 << 10):
    """pearce_equivalence_check across many restrictions (all of them by
    default); the aggregate report keeps only failing entries."""
    from .games import all_restrictions
    from .reports import CheckReport

    if restrictions is None:
        restrictions = list(all_restrictions(game, max_count=max_restrictions))
    checked = 0
    mismatches = []
    for g in restrictions:
        rep = pearce_equivalence_check(game, g)
        checked += 1
        if not rep.passed:
            mismatches.append(
                {
                    "restriction": g.names(),
                    "entries": [e for e in rep.entries if not e["agree"]],
                }
            )
    return CheckReport(
        name="pearce-equivalence-suite",
        passed=not mismatches,
        details={
            "game": game.name,
            "restrictions_checked": checked,
            "mismatching_restrictions": len(mismatches),
        },
        entries=mismatches,
    )


def pearce_equivalence_check(game: Game, g: Restriction):
    """One elimination step under never-best-response-to-a-correlated-belief
    versus one step under mixed-strategy dominance; the two must agree for
    every player and strategy.

    Both images are computed by their own LPs, and the report carries both
    certificates per strategy.  A mismatch is a release-blocking bug.
    """
    from .reports import CheckReport

    _check_context(game, g)
    entries = []
    mismatches = 0
    brc_image = []
    msd_image = []
    for i in game.players():
        pool = sorted(g.sets[i])
        brc_survivors = set()
        msd_survivors = set()
        for s in pool:
            belief = exists_supporting_belief(game, g, pool, i, s, CORRELATED)
            witness = mixed_dominance_witness(game, g, i, pool, s)
            if belief is not None:
                brc_survivors.add(s)
            if witness is None:
                msd_survivors.add(s)
            agree = (belief is not None) == (witness is None)
            if not agree:
                mismatches += 1
            entry = {
                "player": i + 1,
                "strategy": game.strategy_names[i][s],
                "verdict": "survives" if witness is None else "eliminated",
                "agree": agree,
            }
            if belief is not None:
                entry["belief_witness"] = _belief_json(game, i, belief)
            if witness is not None:
                entry["dominance_witness"] = _mixture_json(game, witness)
            entries.append(entry)
        brc_image.append(sorted(game.strategy_names[i][s] for s in brc_survivors))
        msd_image.append(sorted(game.strategy_names[i][s] for s in msd_survivors))
    return CheckReport(
        name="pearce-equivalence",
        passed=mismatches == 0,
        details={
            "game": game.name,
            "restriction": g.names(),
            "brc_image": brc_image,
            "msd_image": msd_image,
            "mismatches": mismatches,
        },
        entries=entries,
    )
