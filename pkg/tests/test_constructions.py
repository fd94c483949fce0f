import pytest

from hdvass.constructions import (
    FsVass, Homomorphism, check_deterministic, complete, eliminate_epsilon_1hd, endmarker_cover_to_reach,
    inverse_hom, product_intersection, product_union, union_of_dvass,
)
from hdvass.core import VassError, make_vass
from hdvass.corpus import NamedLanguage, automaton, language_of, predicate
from hdvass.semantics import Equal, bounded_equiv, language_up_to, member

from oracles import eps_member, naive_member

A2N = make_vass("a2n", 1, "ab", ["q0", "q1"], "q0", ["q0", "q1"],
                [("q0", "a", 2, "q0"), ("q0", "b", -1, "q1"), ("q1", "b", -1, "q1")], "reach")

UNIVERSAL_AB = make_vass("all", 0, "ab", ["u"], "u", ["u"], [("u", "a", (), "u"), ("u", "b", (), "u")])

PAIRS = [
    ("A_anbn", "A_anbgen"),
    ("A_anblen", "N_union"),
    ("A_anblen_cover", "A_notFSVASS"),
    ("A_notHDVASS", "A_anblen_cover"),
]

# one-counter coverability systems with silent moves
EPS_FIXTURES = {
    "pump": make_vass("pump", 1, "a", ["q0", "q1"], "q0", ["q1"],
                      [("q0", "@eps", 1, "q0"), ("q0", "a", -1, "q1")]),
    "guarded": make_vass("guarded", 1, "ab", ["q0", "q1", "q2", "q3"], "q0", ["q3"], [
        ("q0", "a", 1, "q1"), ("q1", "@eps", -1, "q2"), ("q2", "@eps", 2, "q1"),
        ("q1", "a", 0, "q1"), ("q1", "b", -3, "q3"), ("q3", "b", 0, "q3")]),
    "detour": make_vass("detour", 1, "ab", ["s", "p", "f"], "s", ["s", "f"], [
        ("s", "a", 1, "s"), ("s", "@eps", -1, "p"), ("p", "b", 0, "f"), ("f", "@eps", 0, "s"),
        ("p", "@eps", 0, "s")]),
}


def _lang(name, a, b, combine):
    pa, pb = predicate(a), predicate(b)
    return NamedLanguage(name, pa.alphabet, lambda s: combine(pa(s), pb(s)))


def _pred_name(name):
    return language_of(name).name


@pytest.mark.parametrize("a,b", PAIRS)
def test_product_union_matches_predicates(a, b):
    got = product_union(automaton(a), automaton(b))
    lang = _lang("u", _pred_name(a), _pred_name(b), lambda x, y: x or y)
    assert bounded_equiv(got, lang, 8) == Equal()


@pytest.mark.parametrize("a,b", PAIRS)
def test_product_intersection_matches_predicates(a, b):
    got = product_intersection(automaton(a), automaton(b))
    lang = _lang("i", _pred_name(a), _pred_name(b), lambda x, y: x and y)
    assert bounded_equiv(got, lang, 8) == Equal()


def test_union_examples():
    u = product_union(automaton("A_anbn"), automaton("A_anbgen"))
    assert member(u, "abb").accepted and not member(u, "aab").accepted
    anbn = automaton("A_anbn")
    assert bounded_equiv(product_union(anbn, anbn), anbn, 6) == Equal()


def test_intersection_examples():
    anbn = automaton("A_anbn")
    assert bounded_equiv(product_intersection(anbn, automaton("A_anbgen")), anbn, 8) == Equal()
    cover = automaton("A_notFSVASS")
    assert bounded_equiv(product_intersection(cover, UNIVERSAL_AB), cover, 6) == Equal()


def test_complete_keeps_language():
    anbn = automaton("A_anbn")
    full = complete(anbn)
    assert len(full.transitions) > len(anbn.transitions)
    assert bounded_equiv(full, anbn, 8) == Equal()
    assert complete(UNIVERSAL_AB) == UNIVERSAL_AB
    bare = make_vass("bare", 1, "ab", ["q"], "q", ["q"], [])
    done = complete(bare)
    assert language_up_to(done, 2).accepted == [()]
    assert all(t.source == t.target for t in done.transitions if t.source != "q")


def test_inverse_hom_letterwise():
    anbn = automaton("A_anbn")
    got = inverse_hom(anbn, {"x": "a", "y": "b"})
    assert got.alphabet == ("x", "y")
    expected = NamedLanguage("xy", ("x", "y"),
                             lambda s: naive_member(anbn, s.replace("x", "a").replace("y", "b")))
    assert bounded_equiv(got, expected, 8) == Equal()


def test_inverse_hom_long_image():
    assert language_up_to(inverse_hom(automaton("A_anbn"), {"z": "ab"}), 6).accepted == [(), ("z",)]


def test_inverse_hom_empty_image():
    anbn = automaton("A_anbn")
    h = Homomorphism.of({"u": (), "x": "a", "y": "bb"})
    got = inverse_hom(anbn, h)
    oracle = NamedLanguage("o", ("u", "x", "y"), lambda s: naive_member(anbn, h.apply(tuple(s))))
    assert bounded_equiv(got, oracle, 6) == Equal()


@pytest.mark.parametrize("name", sorted(EPS_FIXTURES))
def test_eps_elimination(name):
    v = EPS_FIXTURES[name]
    out = eliminate_epsilon_1hd(v)
    assert not out.has_eps
    oracle = NamedLanguage(name, v.alphabet, lambda s: eps_member(v, s))
    assert bounded_equiv(out, oracle, 8) == Equal()


def test_eps_elimination_examples():
    pump = EPS_FIXTURES["pump"]
    assert member(eliminate_epsilon_1hd(pump), "a").accepted
    plain = automaton("A_notDVASS")
    assert eliminate_epsilon_1hd(plain) == plain
    with pytest.raises(VassError):
        eliminate_epsilon_1hd(automaton("A_anblenbarrier"))


def test_endmarker():
    out = endmarker_cover_to_reach(automaton("A_anblen_cover"), "#")
    assert member(out, "aab#").accepted and not member(out, "aab").accepted
    assert bounded_equiv(out, predicate("L_anblenbarrier"), 8) == Equal()


def test_endmarker_without_counters():
    fa = make_vass("fa", 0, "a", ["q"], "q", ["q"], [("q", "a", (), "q")])
    out = endmarker_cover_to_reach(fa, "#")
    assert member(out, "aa#").accepted and not member(out, "aa").accepted


def test_determinism_check():
    assert check_deterministic(automaton("A_anbn"))
    assert not check_deterministic(automaton("A_notDVASS"))
    assert check_deterministic(make_vass("e", 1, "a", ["q"], "q", [], []))


def test_finitely_sequential_union():
    fs = union_of_dvass([automaton("A_anbn"), A2N])
    assert isinstance(fs, FsVass)
    assert fs.member("abb") and fs.member("ab") and not fs.member("abbb")
    assert bounded_equiv(fs, predicate("L_notrunion"), 8) == Equal()
    assert bounded_equiv(union_of_dvass([A2N]), A2N, 8) == Equal()
    empty = union_of_dvass([], alphabet=("a", "b"))
    assert not any(empty.member(w) for w in ["", "a", "ab"])


def test_union_of_dvass_requires_determinism():
    with pytest.raises(VassError):
        union_of_dvass([automaton("A_notDVASS")])
