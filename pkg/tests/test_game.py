import dataclasses

import pytest

from hdvass.core import make_vass
from hdvass.corpus import HD_AUTOMATA, automaton, resolver
from hdvass.game import (
    IN_L_NOT_ACCEPTING, AdamMove, NonHdWitness, NoneUpTo, check_witness, find_nonhd_witness,
    format_strategy, play_letter_game,
)
from hdvass.resolvers import first_enabled


def test_union_witness_shape():
    w = find_nonhd_witness(automaton("N_union"), 3)
    assert isinstance(w, NonHdWitness) and w.depth == 3
    assert w.tree.letter == "a"
    assert sorted(w.losing_words()) == [("a", "b"), ("a", "b", "b")]
    ok, msg = check_witness(automaton("N_union"), w)
    assert ok, msg


def test_union_needs_depth_three():
    assert find_nonhd_witness(automaton("N_union"), 2) == NoneUpTo(2)


def test_tampered_witness_is_caught():
    nu = automaton("N_union")
    w = find_nonhd_witness(nu, 3)
    pruned = dataclasses.replace(w.tree, responses=w.tree.responses[:1])
    ok, _ = check_witness(nu, NonHdWitness(pruned, w.depth))
    assert not ok


def test_not_dvass_has_no_shallow_witness():
    assert find_nonhd_witness(automaton("A_notDVASS"), 6) == NoneUpTo(6)


def test_deterministic_systems_have_no_witness():
    assert find_nonhd_witness(automaton("A_anbn"), 5) == NoneUpTo(5)


def test_non_hd_catalog_entries_have_witnesses():
    for name in ("A_anblen", "A_notHDVASS"):
        w = find_nonhd_witness(automaton(name), 4)
        assert isinstance(w, NonHdWitness)
        assert check_witness(automaton(name), w)[0]


def test_classic_nfa_is_not_history_deterministic():
    # guess on the first letter whether the last letter will be an a or a b
    nfa = make_vass("guess", 0, "ab", ["s", "A", "B", "fa", "fb"], "s", ["fa", "fb"], [
        ("s", "a", (), "A"), ("s", "a", (), "B"),
        ("A", "a", (), "fa"), ("A", "b", (), "A"), ("A", "a", (), "A"), ("fa", "a", (), "fa"),
        ("B", "b", (), "fb"), ("B", "a", (), "B"), ("B", "b", (), "B"), ("fb", "b", (), "fb"),
    ])
    w = find_nonhd_witness(nfa, 4)
    assert isinstance(w, NonHdWitness)
    assert check_witness(nfa, w)[0]


def test_format_strategy_lists_losing_words():
    text = format_strategy(find_nonhd_witness(automaton("N_union"), 3).tree)
    assert text.startswith("adam a") and IN_L_NOT_ACCEPTING in text


def test_play_union_first_choice_loses_at_three():
    t = play_letter_game(automaton("N_union"), "abb", first_enabled())
    assert t.losing_position == 3


def test_play_anbgen_wins():
    t = play_letter_game(automaton("A_anbgen"), "aabb", resolver("R_anbgen"))
    assert t.losing_position is None
    assert t.run.end.counters == (0,)
    assert len(t.steps) == 4 and all(s.in_language == s.eve_accepting for s in t.steps)


def test_play_empty_word():
    t = play_letter_game(automaton("A_anbn"), "", first_enabled())
    assert t.steps == () and t.losing_position is None
    bad = make_vass("b", 0, "a", ["s", "f"], "s", ["s", "f"], [])
    assert play_letter_game(bad, "", first_enabled()).losing_position is None
    eps_in = make_vass("e", 1, "a", ["s", "f"], "s", ["f"], [("s", "@eps", 0, "f")])
    silent = first_enabled()
    silent = dataclasses.replace(silent, final=lambda v, r, o: ())
    assert play_letter_game(eps_in, "", silent).losing_position == 0


@pytest.mark.parametrize("name", HD_AUTOMATA)
def test_hd_catalog_has_no_witness_at_four(name):
    assert isinstance(find_nonhd_witness(automaton(name), 4), NoneUpTo)


def test_negative_horizon_rejected():
    with pytest.raises(ValueError):
        find_nonhd_witness(automaton("A_anbn"), -1)
    assert AdamMove("a").responses == ()
