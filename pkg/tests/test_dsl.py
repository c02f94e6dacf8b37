"""Parsing, validation diagnostics, and rendering of the text format."""

from fractions import Fraction

import pytest

from hog import (
    ArgmaxOrder,
    FixProj,
    Game,
    GameSource,
    MoveSet,
    Player,
    PreferenceOrder,
    ProductOutcomes,
    RenderError,
    VectorOutcomes,
    builtin,
    builtin_names,
    enumerate_equilibria,
    identity_rule,
    outcome_table,
    parse_game,
    render_game,
    tabulate,
)

KEYNES_TEXT = """\
# three voters, the first wants A to win, the others vote with the crowd
game voting-keynes

moves J1 = { A, B }
moves J2 = {A,B}
moves J3 = {
    A,  # conform
    B
}
outcomes = { A, B }
outcome_fn = majority

player J1 = argmax(order: B < A)
player J2 = fix
player J3 = fix
"""


def errors(result):
    return [(d.code, d.line, d.message) for d in result.errors()]


def test_formatting_noise_does_not_change_the_game():
    result = parse_game(KEYNES_TEXT)
    assert result.ok and not result.diagnostics
    assert result.game == builtin("voting-keynes")


@pytest.mark.parametrize("name", builtin_names())
def test_render_then_parse_round_trips(name):
    g = builtin(name)
    result = parse_game(render_game(g))
    assert result.ok and not result.diagnostics
    assert result.game == g


def test_product_is_an_alias_for_moves_outcomes():
    canonical = render_game(builtin("meeting-ny")).text
    aliased = canonical.replace("outcomes = moves", "outcomes = product")
    assert aliased != canonical
    result = parse_game(aliased)
    assert result.ok and result.game == builtin("meeting-ny")


def test_parse_file_names_the_game_after_the_file(tmp_path):
    path = tmp_path / "scratch.hog"
    path.write_text(render_game(builtin("meeting-ny")).text)
    from hog import parse_file

    result = parse_file(path)
    assert result.ok
    assert result.game.name == "meeting-ny"


def test_vector_payoffs_pool_levels_and_stay_exact():
    text = """\
game tiny
moves P1 = { H, T }
moves P2 = { H, T }
outcomes = vectors 2
outcome_fn = table {
  (H, H) -> (1/2, 1) ;
  (H, T) -> (-1, -1) ;
  (T, H) -> (-1, -1) ;
  (T, T) -> (1, 1/2)
}
player P1 = argmax(coord: 1)
player P2 = argmax(coord: 2)
"""
    result = parse_game(text)
    assert result.ok, errors(result)
    g = result.game
    assert g.outcomes == VectorOutcomes(
        2, (Fraction(-1), Fraction(1, 2), Fraction(1))
    )
    assert g.outcome(("H", "H")) == (Fraction(1, 2), Fraction(1))
    report = enumerate_equilibria(g)
    assert report.selection_equilibria() == (("H", "H"), ("T", "T"))
    assert report.quantifier_equilibria() == (("H", "H"), ("T", "T"))


def test_diagnostics_render_with_position_and_severity():
    result = parse_game("game x\nmoves P1 = { A, A }\n")
    texts = [str(d) for d in result.diagnostics]
    assert "2:17: error: duplicate move label 'A'" in texts


# ---------------------------------------------------------------------------
# structural errors
# ---------------------------------------------------------------------------


def test_empty_document_reports_every_missing_section():
    result = parse_game("# nothing here\n")
    assert not result.ok
    messages = [d.message for d in result.errors()]
    assert "missing game declaration" in messages
    assert "no moves declared" in messages
    assert "missing outcomes declaration" in messages
    assert "missing outcome_fn declaration" in messages


def test_player_line_must_follow_its_moves():
    text = "game g\nplayer P1 = fix\nmoves P1 = { A, B }\noutcomes = { A, B }\noutcome_fn = majority\n"
    result = parse_game(text)
    assert any(
        d.message == "moves for P1 must be declared before its player line"
        and d.line == 2
        for d in result.errors()
    )


def test_moves_without_player_is_an_error():
    text = "game g\nmoves P1 = { A, B }\noutcomes = { A, B }\noutcome_fn = majority\n"
    result = parse_game(text)
    assert any(
        d.message == "no player declaration for P1" and d.line == 2
        for d in result.errors()
    )


def test_duplicate_sections_are_flagged():
    text = (
        "game g\ngame h\n"
        "moves P1 = { A, B }\nmoves P1 = { A, B }\n"
        "outcomes = { A, B }\noutcomes = { A, B }\n"
        "outcome_fn = majority\noutcome_fn = majority\n"
        "player P1 = fix\nplayer P1 = fix\n"
    )
    result = parse_game(text)
    codes = [d.code for d in result.errors()]
    assert codes.count("duplicate") == 5
    assert {d.message for d in result.errors() if d.code == "duplicate"} == {
        "game name declared twice",
        "moves for P1 declared twice",
        "outcomes declared twice",
        "outcome_fn declared twice",
        "player P1 declared twice",
    }


def test_unknown_selection_constructor():
    text = (
        "game g\nmoves P1 = { A, B }\nmoves P2 = { A, B }\nmoves P3 = { A, B }\n"
        "outcomes = { A, B }\noutcome_fn = majority\n"
        "player P1 = minimax\nplayer P2 = fix\nplayer P3 = fix\n"
    )
    result = parse_game(text)
    assert any(d.code == "unknown-constructor" for d in result.errors())


def test_diagnostics_come_out_sorted_and_parsing_recovers():
    text = (
        "game g\n"
        "moves P1 = { A, A }\n"
        "moves P2 = { B, }\n"
        "outcomes = { A, B }\n"
        "outcome_fn = majority\n"
        "player P1 = fix\n"
        "player P2 = argmax(order: )\n"
    )
    result = parse_game(text)
    errs = result.errors()
    assert len(errs) >= 3
    positions = [(d.line, d.column) for d in result.diagnostics]
    assert positions == sorted(positions)


# ---------------------------------------------------------------------------
# outcome function validation
# ---------------------------------------------------------------------------

MAJORITY_STUB = "game g\nmoves P1 = {{ A, B }}\nmoves P2 = {{ A, B }}\nmoves P3 = {{ A, B }}\noutcomes = {outcomes}\noutcome_fn = {fn}\nplayer P1 = fix\nplayer P2 = fix\nplayer P3 = fix\n"


def test_majority_needs_an_odd_crowd():
    text = (
        "game g\nmoves P1 = { A, B }\nmoves P2 = { A, B }\n"
        "outcomes = { A, B }\noutcome_fn = majority\n"
        "player P1 = fix\nplayer P2 = fix\n"
    )
    result = parse_game(text)
    assert any(
        "odd number of players" in d.message for d in result.errors()
    )


def test_majority_needs_two_shared_moves():
    text = (
        "game g\nmoves P1 = { A, B, C }\nmoves P2 = { A, B, C }\nmoves P3 = { A, B, C }\n"
        "outcomes = { A, B, C }\noutcome_fn = majority\n"
        "player P1 = fix\nplayer P2 = fix\nplayer P3 = fix\n"
    )
    result = parse_game(text)
    assert any("exactly two moves" in d.message for d in result.errors())


def test_identity_needs_product_outcomes():
    text = (
        "game g\nmoves P1 = { A, B }\nmoves P2 = { A, B }\nmoves P3 = { A, B }\n"
        "outcomes = { A, B }\noutcome_fn = identity\n"
        "player P1 = fix\nplayer P2 = fix\nplayer P3 = fix\n"
    )
    result = parse_game(text)
    assert any(
        "identity outcome function needs `outcomes = moves`" == d.message
        for d in result.errors()
    )


def test_vector_outcomes_need_a_table():
    text = (
        "game g\nmoves P1 = { A, B }\nmoves P2 = { A, B }\n"
        "outcomes = vectors 2\noutcome_fn = identity\n"
        "player P1 = argmax(coord: 1)\nplayer P2 = argmax(coord: 2)\n"
    )
    result = parse_game(text)
    assert errors(result) == [
        ("type-mismatch", 5, "vector outcomes need an explicit outcome table")
    ]


def test_vector_entries_must_match_the_declared_length():
    text = """\
game g
moves P1 = { H, T }
moves P2 = { H, T }
outcomes = vectors 2
outcome_fn = table {
  (H, H) -> (1, -1, 0) ;
  (H, T) -> (-1, 1) ;
  (T, H) -> (-1, 1) ;
  (T, T) -> (1, -1)
}
player P1 = argmax(coord: 1)
player P2 = argmax(coord: 2)
"""
    result = parse_game(text)
    assert any(
        d.message == "expected a payoff vector of 2 rationals for (H, H)"
        and d.line == 6
        for d in result.errors()
    )


def test_mixed_outcome_values_are_rejected():
    text = """\
game g
moves P1 = { H, T }
moves P2 = { H, T }
outcomes = vectors 2
outcome_fn = table {
  (H, H) -> (1, T)
}
player P1 = argmax(coord: 1)
player P2 = argmax(coord: 2)
"""
    result = parse_game(text)
    assert any(
        "outcome value mixes labels and numbers" == d.message
        for d in result.errors()
    )


def test_partial_table_is_reported_at_its_closing_brace():
    text = """\
game g
moves P1 = { A, B }
moves P2 = { A, B }
outcomes = moves
outcome_fn = table {
  (A, A) -> (A, A) ;
  (A, B) -> (A, A)
}
player P1 = coord
player P2 = coord
"""
    result = parse_game(text)
    assert errors(result) == [
        ("arity", 8, "outcome table misses 2 profile(s), e.g. (B, A)")
    ]


def test_table_profiles_must_match_the_move_sets():
    text = """\
game g
moves P1 = { A, B }
moves P2 = { A, B }
outcomes = moves
outcome_fn = table {
  (A, A, A) -> (A, A) ;
  (A, A) -> (A, A) ;
  (A, A) -> (A, B) ;
  (A, B) -> (C, C)
}
player P1 = coord
player P2 = coord
"""
    result = parse_game(text)
    msgs = [d.message for d in result.errors()]
    assert "profile (A, A, A) does not match the move sets" in msgs
    assert "profile (A, A) listed twice" in msgs
    assert "outcome for (A, B) lies outside the outcome space" in msgs


# ---------------------------------------------------------------------------
# player goal validation
# ---------------------------------------------------------------------------


def test_bare_target_goal_is_rejected_with_a_hint():
    text = (
        "game g\nmoves W = { B, F }\nmoves H = { B, F }\n"
        "outcomes = moves\noutcome_fn = identity\n"
        "player W = target(coord: 1, value: B)\nplayer H = coord\n"
    )
    result = parse_game(text)
    assert errors(result) == [
        (
            "type-mismatch",
            6,
            "player W: this goal can reject every move; "
            "give it a fallback inside lex(...)",
        )
    ]


def test_shape_errors_name_the_player():
    text = (
        "game g\nmoves J1 = { A, B }\nmoves J2 = { A, B }\nmoves J3 = { A, B }\n"
        "outcomes = { A, B }\noutcome_fn = majority\n"
        "player J1 = argmax(order: A)\nplayer J2 = fix\nplayer J3 = coord\n"
    )
    result = parse_game(text)
    errs = result.errors()
    assert all(d.code == "type-mismatch" for d in errs)
    assert any(d.message.startswith("player J1: order leaves") for d in errs)
    assert any(d.message.startswith("player J3:") and d.line == 9 for d in errs)


def test_unreachable_outcome_warning_still_yields_a_game():
    text = (
        "game g\nmoves J1 = { A, B }\nmoves J2 = { A, B }\nmoves J3 = { A, B }\n"
        "outcomes = { A, B, C }\noutcome_fn = majority\n"
        "player J1 = argmax(order: C < B < A)\n"
        "player J2 = argmax(order: C < B < A)\n"
        "player J3 = argmax(order: C < B < A)\n"
    )
    result = parse_game(text)
    assert result.ok
    assert [d.code for d in result.warnings()] == ["unreachable-outcome"]
    w = result.warnings()[0]
    assert w.line == 5
    assert w.message.endswith(": C")
    assert result.game.outcome(("B", "B", "A")) == "B"


# ---------------------------------------------------------------------------
# rendering limits
# ---------------------------------------------------------------------------


def _identity_game(labels):
    ms = MoveSet(labels)
    space = ProductOutcomes((ms, ms))
    players = (Player("P1", ms, FixProj(1)), Player("P2", ms, FixProj(2)))
    return Game("g", players, space, identity_rule())


def test_rendering_rejects_labels_the_grammar_cannot_spell():
    g = _identity_game(("left", "far right"))
    with pytest.raises(RenderError):
        render_game(g)


def test_rendering_rejects_tabulated_goals():
    g = builtin("voting-keynes")
    j1 = g.players[0]
    table = tabulate(j1.selection, j1.moves, g.outcomes)
    patched = Game(
        g.name, (Player("J1", j1.moves, table),) + g.players[1:], g.outcomes, g.outcome_fn
    )
    with pytest.raises(RenderError):
        render_game(patched)


def test_rendering_rejects_orders_over_unspellable_values():
    ms = MoveSet(("x", "y"))
    space = VectorOutcomes(2, (0, 1))
    order = PreferenceOrder(space.all_outcomes())
    players = (
        Player("P1", ms, ArgmaxOrder(order)),
        Player("P2", ms, ArgmaxOrder(order)),
    )
    entries = [(s, (0, 1)) for s in [("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")]]
    g = Game("g", players, space, outcome_table(entries))
    with pytest.raises(RenderError):
        render_game(g)


def test_game_source_text_survives_a_round_trip():
    src = render_game(builtin("bos-agreement"))
    assert isinstance(src, GameSource)
    again = render_game(parse_game(src).game)
    assert again.text == src.text
