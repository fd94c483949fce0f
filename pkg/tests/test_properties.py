from hypothesis import assume, given, settings, strategies as st

from hdvass.core import COVER, Configuration, DisabledTransitionError, apply, enabled
from hdvass.coverability import coverable
from hdvass.semantics import member

from oracles import capped_coverable, capped_reachable, eps_member, naive_member, random_vass

systems = st.builds(random_vass, st.randoms(use_true_random=False))
eps_free = st.builds(random_vass, st.randoms(use_true_random=False), st.just(False))


@settings(max_examples=150, deadline=None)
@given(systems, st.data())
def test_enabled_iff_apply_succeeds(v, data):
    config = Configuration(data.draw(st.sampled_from(v.states)),
                           tuple(data.draw(st.integers(0, 4)) for _ in range(v.dim)))
    label = data.draw(st.sampled_from(v.alphabet + ("@eps",)))
    ok = enabled(v, config, label)
    for t in v.outgoing(config.state, label):
        try:
            apply(v, config, t)
            assert t in ok
        except DisabledTransitionError:
            assert t not in ok


@settings(max_examples=150, deadline=None)
@given(eps_free, st.data())
def test_member_matches_naive_enumeration(v, data):
    word = data.draw(st.lists(st.sampled_from(v.alphabet), max_size=6))
    assert member(v, word).accepted == naive_member(v, word)


@settings(max_examples=100, deadline=None)
@given(systems, st.data())
def test_cover_membership_with_silent_moves(v, data):
    assume(v.semantics == COVER)
    word = data.draw(st.lists(st.sampled_from(v.alphabet), max_size=4))
    if eps_member(v, word, budget=12, cap=30):
        assert member(v, word).accepted


@settings(max_examples=100, deadline=None)
@given(systems, st.data())
def test_coverable_matches_capped_search(v, data):
    reach = capped_reachable(v, 50)
    q = data.draw(st.sampled_from(v.states))
    target = tuple(data.draw(st.integers(0, 4)) for _ in range(v.dim))
    assert coverable(v, q, target) == capped_coverable(reach, q, target)
