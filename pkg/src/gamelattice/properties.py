"""Per-player rationality properties and the elimination operator they induce.

A property is one of three kinds (pure strict dominance, mixed strict
dominance, best response to a belief), each in a global or local scope: the
comparison pool is the full strategy set for global scope and the current
restriction's component for local scope.  A profile assigns one property per
player; the induced operator removes, simultaneously for every player, each
strategy that fails its property on the current restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import dominance
from .dominance import BELIEF_KINDS
from .errors import BudgetError
from .games import Game, Restriction
from .iteration import (
    DEFAULT_LATTICE_BUDGET,
    DEFAULT_PAIR_BUDGET,
    IterationTrace,
    _all_mask_tuples,
    _from_masks,
    _mask_key,
    _masks_leq,
    _submask_tuples,
    iterate_operator,
)
from .reports import CheckReport

KINDS = ("sd", "msd", "br")
SCOPES = ("l", "g")


@dataclass(frozen=True)
class PropertySpec:
    """One player's notion of rationality."""

    kind: str
    scope: str
    belief: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown property kind {self.kind!r}")
        if self.scope not in SCOPES:
            raise ValueError(f"unknown scope {self.scope!r}")
        if self.kind == "br":
            if self.belief not in BELIEF_KINDS:
                raise ValueError(f"br needs a belief kind, got {self.belief!r}")
        elif self.belief is not None:
            raise ValueError(f"{self.kind} does not take a belief kind")

    def __str__(self) -> str:
        if self.kind == "br":
            return f"br:{self.scope}:{self.belief}"
        return f"{self.kind}:{self.scope}"


def parse_property_spec(text: str) -> PropertySpec:
    """Parse 'sd:l', 'msd:g', 'br:g:pure', 'br:l:corr', 'br:l:ind', ..."""
    parts = text.strip().split(":")
    if parts[0] == "br":
        if len(parts) != 3:
            raise ValueError(f"malformed property {text!r}; want br:<l|g>:<pure|corr|ind>")
        return PropertySpec("br", parts[1], parts[2])
    if len(parts) != 2:
        raise ValueError(f"malformed property {text!r}; want <sd|msd>:<l|g>")
    return PropertySpec(parts[0], parts[1])


@dataclass(frozen=True)
class PropertyProfile:
    """One PropertySpec per player; heterogeneous profiles are permitted."""

    specs: tuple[PropertySpec, ...]

    @classmethod
    def uniform(cls, spec: PropertySpec, n: int) -> "PropertyProfile":
        return cls(tuple(spec for _ in range(n)))

    def __str__(self) -> str:
        if len(set(self.specs)) == 1:
            return str(self.specs[0])
        return ",".join(f"p{i + 1}={s}" for i, s in enumerate(self.specs))


@lru_cache(maxsize=None)
def _eval_core(
    spec: PropertySpec,
    game: Game,
    player: int,
    strategy: int,
    opp_sets: tuple[tuple[int, ...], ...],
    pool: tuple[int, ...],
) -> bool:
    # context component for the player himself never matters below
    sets = []
    j = 0
    for i in game.players():
        if i == player:
            sets.append(frozenset(game.strategies(i)))
        else:
            sets.append(frozenset(opp_sets[j]))
            j += 1
    context = Restriction(game, tuple(sets))
    if spec.kind == "sd":
        return not any(
            dominance.strictly_dominates_pure(game, context, player, s, strategy)
            for s in pool
        )
    if spec.kind == "msd":
        return (
            dominance.mixed_dominance_witness(game, context, player, pool, strategy)
            is None
        )
    return (
        dominance.exists_supporting_belief(
            game, context, pool, player, strategy, spec.belief
        )
        is not None
    )


def clear_property_cache():
    _eval_core.cache_clear()


def eval_property(
    spec: PropertySpec, game: Game, player: int, strategy: int, g: Restriction
) -> bool:
    """Does `strategy` satisfy the property on the restriction g?"""
    if spec.scope == "g":
        pool = tuple(game.strategies(player))
    else:
        pool = tuple(sorted(g.sets[player]))
    opp_sets = tuple(
        tuple(sorted(g.sets[j])) for j in game.players() if j != player
    )
    return _eval_core(spec, game, player, strategy, opp_sets, pool)


def apply_operator(
    profile: PropertyProfile, game: Game, g: Restriction
) -> Restriction:
    """Remove every strategy of every player that fails its property on g."""
    if len(profile.specs) != game.num_players:
        raise ValueError("profile length differs from the number of players")
    sets = tuple(
        frozenset(
            s for s in sorted(g.sets[i])
            if eval_property(profile.specs[i], game, i, s, g)
        )
        for i in game.players()
    )
    return Restriction(game, sets)


def property_operator(profile: PropertyProfile, game: Game):
    """The elimination operator as a plain Restriction -> Restriction callable."""

    def op(g: Restriction) -> Restriction:
        return apply_operator(profile, game, g)

    return op


def outcome(
    profile: PropertyProfile, game: Game, budget: int | None = None
) -> IterationTrace:
    """Iterated elimination from the full game to its first fixpoint."""
    return iterate_operator(property_operator(profile, game), game, budget=budget)


def _satisfaction_tables(
    spec: PropertySpec, game: Game, max_restrictions: int
) -> dict[tuple[int, ...], tuple[int, ...]]:
    """For every restriction (as a mask tuple), per-player bitmasks of the
    strategies in T_i satisfying the property there."""
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
        g = _from_masks(game, masks)
        sat = tuple(
            sum(
                1 << s
                for s in game.strategies(i)
                if eval_property(spec, game, i, s, g)
            )
            for i in game.players()
        )
        table[masks] = sat
    return table


def check_property_monotone(
    spec: PropertySpec,
    game: Game,
    max_restrictions: int = DEFAULT_LATTICE_BUDGET,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
    max_entries: int = 20,
) -> CheckReport:
    """Exhaustively check: G below G' and property holds at G implies it holds
    at G', for every comparable pair and every strategy in T_i."""
    pairs = 1
    for k in game.sizes:
        pairs *= 3 ** k
    if pairs > max_pairs:
        raise BudgetError(
            f"{pairs} comparable pairs exceed the budget of {max_pairs}",
            attempted=pairs,
        )
    table = _satisfaction_tables(spec, game, max_restrictions)
    entries = []
    violations = 0
    for big in sorted(table):
        sat_big = table[big]
        for small in _submask_tuples(big):
            sat_small = table[small]
            for i in game.players():
                bad = sat_small[i] & ~sat_big[i]
                if bad:
                    violations += bin(bad).count("1")
                    if len(entries) < max_entries:
                        entries.append(
                            {
                                "player": i + 1,
                                "strategies": [
                                    game.strategy_names[i][s]
                                    for s in game.strategies(i)
                                    if bad >> s & 1
                                ],
                                "smaller": _from_masks(game, small).names(),
                                "larger": _from_masks(game, big).names(),
                            }
                        )
    return CheckReport(
        name="property-monotonicity",
        passed=violations == 0,
        details={
            "game": game.name,
            "property": str(spec),
            "pairs_checked": pairs,
            "violations": violations,
        },
        entries=entries,
    )


def check_singleton_condition(spec: PropertySpec, game: Game) -> CheckReport:
    """Evaluate the property for every player on every all-singleton
    restriction built from a joint strategy."""
    entries = []
    checked = 0
    for joint in game.joint_strategies():
        g = Restriction(game, tuple(frozenset([s]) for s in joint))
        for i in game.players():
            checked += 1
            if not eval_property(spec, game, i, joint[i], g):
                entries.append(
                    {"joint": list(game.joint_names(joint)), "player": i + 1}
                )
    return CheckReport(
        name="singleton-condition",
        passed=not entries,
        details={
            "game": game.name,
            "property": str(spec),
            "checked": checked,
            "failures": len(entries),
        },
        entries=entries,
    )


def _uniform(game: Game, text: str) -> PropertyProfile:
    return PropertyProfile.uniform(parse_property_spec(text), game.num_players)


def verify_theorem_just(
    game: Game, max_restrictions: int = DEFAULT_LATTICE_BUDGET
) -> CheckReport:
    """Outcome inclusion: best response to a pure belief (global) within pure
    strict dominance (local), with the pointwise chain
    br:g:pure -> sd:g -> sd:l on every restriction."""
    brg = _uniform(game, "br:g:pure")
    sdg = _uniform(game, "sd:g")
    sdl = _uniform(game, "sd:l")
    entries = []
    checked = 0
    for masks in _all_mask_tuples(game):
        g = _from_masks(game, masks)
        checked += 1
        img_brg = _mask_key(apply_operator(brg, game, g))
        img_sdg = _mask_key(apply_operator(sdg, game, g))
        img_sdl = _mask_key(apply_operator(sdl, game, g))
        if not _masks_leq(img_brg, img_sdg):
            entries.append(
                {"kind": "brg-not-below-sdg", "restriction": g.names()}
            )
        if not _masks_leq(img_sdg, img_sdl):
            entries.append(
                {"kind": "sdg-not-below-sdl", "restriction": g.names()}
            )
        if checked > max_restrictions:
            raise BudgetError("restriction budget exceeded", attempted=checked)
    out_brg = outcome(brg, game).outcome
    out_sdl = outcome(sdl, game).outcome
    if not _masks_leq(_mask_key(out_brg), _mask_key(out_sdl)):
        entries.append(
            {
                "kind": "outcome-inclusion-violation",
                "br_outcome": out_brg.names(),
                "sd_outcome": out_sdl.names(),
            }
        )
    return CheckReport(
        name="justification-pure",
        passed=not entries,
        details={
            "game": game.name,
            "restrictions_checked": checked,
            "br_global_outcome": out_brg.names(),
            "sd_local_outcome": out_sdl.names(),
        },
        entries=entries,
    )


def verify_theorem_just1(
    game: Game, max_restrictions: int = DEFAULT_LATTICE_BUDGET
) -> CheckReport:
    """Outcome inclusion: best response to a correlated belief (global) within
    mixed strict dominance (local), with the pointwise chain
    br:g:corr -> br:l:corr = msd:l on every restriction."""
    brg = _uniform(game, "br:g:corr")
    brl = _uniform(game, "br:l:corr")
    msdl = _uniform(game, "msd:l")
    entries = []
    checked = 0
    for masks in _all_mask_tuples(game):
        g = _from_masks(game, masks)
        checked += 1
        img_brg = _mask_key(apply_operator(brg, game, g))
        img_brl = _mask_key(apply_operator(brl, game, g))
        img_msdl = _mask_key(apply_operator(msdl, game, g))
        if not _masks_leq(img_brg, img_brl):
            entries.append(
                {"kind": "brg-not-below-brl", "restriction": g.names()}
            )
        if img_brl != img_msdl:
            entries.append(
                {
                    "kind": "brc-msd-image-mismatch",
                    "restriction": g.names(),
                    "brc_image": _from_masks(game, img_brl).names(),
                    "msd_image": _from_masks(game, img_msdl).names(),
                }
            )
        if checked > max_restrictions:
            raise BudgetError("restriction budget exceeded", attempted=checked)
    out_brg = outcome(brg, game).outcome
    out_msdl = outcome(msdl, game).outcome
    if not _masks_leq(_mask_key(out_brg), _mask_key(out_msdl)):
        entries.append(
            {
                "kind": "outcome-inclusion-violation",
                "br_outcome": out_brg.names(),
                "msd_outcome": out_msdl.names(),
            }
        )
    return CheckReport(
        name="justification-mixed",
        passed=not entries,
        details={
            "game": game.name,
            "restrictions_checked": checked,
            "br_global_outcome": out_brg.names(),
            "msd_local_outcome": out_msdl.names(),
        },
        entries=entries,
    )
