import random

import pytest

from gamelattice import fixtures
from gamelattice.errors import BudgetError
from gamelattice.games import (
    all_restrictions,
    lattice_leq,
    restriction_from_names,
    restriction_top,
)
from gamelattice.iteration import verify_tarski
from gamelattice.properties import (
    PropertyProfile,
    PropertySpec,
    apply_operator,
    check_property_monotone,
    check_singleton_condition,
    eval_property,
    outcome,
    parse_property_spec,
    property_operator,
    verify_theorem_just,
    verify_theorem_just1,
)

PD, MP, MIX, CHAIN = fixtures.PD, fixtures.MP, fixtures.MIX, fixtures.CHAIN

ALL_SPECS = [
    "sd:l", "sd:g", "msd:l", "msd:g",
    "br:l:pure", "br:g:pure", "br:l:corr", "br:g:corr",
]


def uniform(game, text):
    return PropertyProfile.uniform(parse_property_spec(text), game.num_players)


def test_parse_property_spec_grammar():
    assert str(parse_property_spec("sd:l")) == "sd:l"
    assert str(parse_property_spec("br:g:pure")) == "br:g:pure"
    assert parse_property_spec("br:l:ind") == PropertySpec("br", "l", "ind")
    for bad in ("sd", "sd:x", "br:l", "br:l:magic", "wd:l", "msd:g:pure"):
        with pytest.raises(ValueError):
            parse_property_spec(bad)


def test_eval_property_global_local_divergence():
    sd_l, sd_g = parse_property_spec("sd:l"), parse_property_spec("sd:g")
    c = PD.strategy_index(0, "C")
    top = restriction_top(PD)
    assert not eval_property(sd_l, PD, 0, c, top)  # D beats C
    cc = restriction_from_names(PD, [["C"], ["C"]])
    assert eval_property(sd_l, PD, 0, c, cc)  # no dominator inside {C}
    assert not eval_property(sd_g, PD, 0, c, cc)  # D from outside still beats C


def test_apply_operator_examples():
    assert apply_operator(uniform(PD, "sd:l"), PD, restriction_top(PD)).names() == [
        ["D"],
        ["D"],
    ]
    assert apply_operator(uniform(MIX, "msd:l"), MIX, restriction_top(MIX)).names() == [
        ["T", "M"],
        ["L", "R"],
    ]


def test_apply_operator_heterogeneous():
    profile = PropertyProfile(
        (parse_property_spec("sd:l"), parse_property_spec("br:g:pure"))
    )
    top = restriction_top(CHAIN)
    image = apply_operator(profile, CHAIN, top)
    # each player's component is computed independently from the same input
    sd_image = apply_operator(uniform(CHAIN, "sd:l"), CHAIN, top)
    br_image = apply_operator(uniform(CHAIN, "br:g:pure"), CHAIN, top)
    assert image.sets[0] == sd_image.sets[0]
    assert image.sets[1] == br_image.sets[1]


def test_outcome_examples():
    assert outcome(uniform(MP, "br:g:pure"), MP).outcome.is_top()
    trace = outcome(uniform(CHAIN, "sd:l"), CHAIN)
    assert trace.outcome.names() == [["T"], ["L"]]
    assert str(trace.closure_ordinal) == "3"
    assert outcome(uniform(PD, "msd:l"), PD).outcome.names() == [["D"], ["D"]]


def test_operator_contraction_everywhere():
    rng = random.Random(3)
    games = [PD, MP, MIX, CHAIN] + fixtures.random_games(3, 5, 3, 3)
    for game in games:
        for text in ALL_SPECS:
            profile = uniform(game, text)
            for _ in range(6):
                g = fixtures.random_restriction(rng, game)
                assert lattice_leq(apply_operator(profile, game, g), g)


def test_global_refines_local_pointwise():
    for game in (PD, MIX, CHAIN):
        for kind, belief in (("sd", None), ("msd", None), ("br", "pure"), ("br", "corr")):
            glob = PropertyProfile.uniform(
                PropertySpec(kind, "g", belief), game.num_players
            )
            loc = PropertyProfile.uniform(
                PropertySpec(kind, "l", belief), game.num_players
            )
            for g in all_restrictions(game):
                assert lattice_leq(
                    apply_operator(glob, game, g), apply_operator(loc, game, g)
                )


def test_monotone_global_properties():
    assert check_property_monotone(parse_property_spec("sd:g"), PD).passed
    assert check_property_monotone(parse_property_spec("br:g:pure"), MP).passed
    assert check_property_monotone(parse_property_spec("msd:g"), MIX).passed
    assert check_property_monotone(parse_property_spec("br:g:corr"), MIX).passed


def test_local_sd_monotonicity_violation_found_by_search():
    # a violation exists where shrinking the local pool hides a dominator
    spec = parse_property_spec("sd:l")
    found = None
    for game in fixtures.random_games(23, 40, 3, 2):
        report = check_property_monotone(spec, game)
        if not report.passed:
            found = (game, report)
            break
    assert found is not None
    game, report = found
    entry = report.entries[0]
    assert entry["strategies"]


def test_monotone_budget_error():
    with pytest.raises(BudgetError):
        check_property_monotone(parse_property_spec("sd:g"), CHAIN, max_pairs=10)


def test_singleton_condition_local_properties():
    rep = check_singleton_condition(parse_property_spec("sd:l"), PD)
    assert rep.passed and rep.details["checked"] == 8
    rep = check_singleton_condition(parse_property_spec("br:l:pure"), CHAIN)
    assert rep.passed and rep.details["checked"] == 18
    assert check_singleton_condition(parse_property_spec("msd:l"), MIX).passed


def test_singleton_condition_sd_global_fails_at_cc():
    rep = check_singleton_condition(parse_property_spec("sd:g"), PD)
    assert not rep.passed
    assert {"joint": ["C", "C"], "player": 1} in rep.entries


def test_theorem_just_fixtures():
    for game in (PD, MP, MIX, CHAIN):
        rep = verify_theorem_just(game)
        assert rep.passed, (game.name, rep.entries)
    rep = verify_theorem_just(PD)
    assert rep.details["br_global_outcome"] == [["D"], ["D"]]
    assert rep.details["sd_local_outcome"] == [["D"], ["D"]]
    rep = verify_theorem_just(MP)
    assert rep.details["br_global_outcome"] == [["H", "T"], ["H", "T"]]


def test_theorem_just1_fixtures():
    for game in (PD, MP, MIX, CHAIN):
        rep = verify_theorem_just1(game)
        assert rep.passed, (game.name, rep.entries)
    rep = verify_theorem_just1(MIX)
    assert rep.details["br_global_outcome"] == [["T", "M"], ["L", "R"]]
    assert rep.details["msd_local_outcome"] == [["T", "M"], ["L", "R"]]


def test_outcome_equals_largest_fixpoint_for_monotone_profiles():
    for game in (PD, MIX, CHAIN):
        for text in ("sd:g", "msd:g", "br:g:pure"):
            profile = uniform(game, text)
            op = property_operator(profile, game)
            report = verify_tarski(op, game, text)
            assert report.passed
            assert report.details["outcome"] == outcome(profile, game).outcome.names()


def test_profile_length_checked():
    with pytest.raises(ValueError):
        apply_operator(
            PropertyProfile((parse_property_spec("sd:l"),)), PD, restriction_top(PD)
        )
