"""Deliberately naive reference implementations used as test oracles.

None of these share code with the package beyond the plain data types:
enabledness, stepping and acceptance are re-derived here from scratch.
"""
from __future__ import annotations

import random
from collections import deque

from hdvass.core import COVER, EPS, REACH, Transition, Vass


def _fits(counters, effect):
    return all(c + d >= 0 for c, d in zip(counters, effect))


def _add(counters, effect):
    return tuple(c + d for c, d in zip(counters, effect))


def _accepts(vass, state, counters):
    if state not in vass.accepting:
        return False
    return vass.semantics == COVER or all(c == 0 for c in counters)


def naive_member(vass: Vass, word) -> bool:
    """Try every transition sequence spelling ``word`` (no silent moves, no sharing)."""
    word = tuple(word)

    def go(state, counters, i):
        if i == len(word):
            return _accepts(vass, state, counters)
        for t in vass.transitions:
            if t.source == state and t.label == word[i] and _fits(counters, t.effect):
                if go(t.target, _add(counters, t.effect), i + 1):
                    return True
        return False

    return go(vass.initial, (0,) * vass.dim, 0)


def eps_member(vass: Vass, word, budget: int = 40, cap: int = 60) -> bool:
    """Breadth-first search over (position, state, counters) with bounded silent steps per gap.

    Counters above ``cap`` are discarded, so the answer is an
    under-approximation that is exact on small fixtures.
    """
    word = tuple(word)
    start = (vass.initial, (0,) * vass.dim)

    def closure(configs):
        seen = set(configs)
        frontier = list(configs)
        for _ in range(budget):
            nxt = []
            for state, counters in frontier:
                for t in vass.transitions:
                    if t.source == state and t.label == EPS and _fits(counters, t.effect):
                        c = _add(counters, t.effect)
                        if max(c, default=0) <= cap and (t.target, c) not in seen:
                            seen.add((t.target, c))
                            nxt.append((t.target, c))
            frontier = nxt
        return seen

    layer = closure({start})
    for letter in word:
        moved = set()
        for state, counters in layer:
            for t in vass.transitions:
                if t.source == state and t.label == letter and _fits(counters, t.effect):
                    c = _add(counters, t.effect)
                    if max(c, default=0) <= cap:
                        moved.add((t.target, c))
        layer = closure(moved)
    return any(_accepts(vass, s, c) for s, c in layer)


def capped_reachable(vass: Vass, cap: int = 50):
    """All configurations reachable with every counter kept at most ``cap``."""
    start = (vass.initial, (0,) * vass.dim)
    seen = {start}
    queue = deque([start])
    while queue:
        state, counters = queue.popleft()
        for t in vass.transitions:
            if t.source == state and _fits(counters, t.effect):
                c = _add(counters, t.effect)
                if max(c, default=0) <= cap and (t.target, c) not in seen:
                    seen.add((t.target, c))
                    queue.append((t.target, c))
    return seen


def capped_coverable(reachable, state, target) -> bool:
    return any(s == state and all(x >= y for x, y in zip(c, target)) for s, c in reachable)


def all_words(alphabet, n):
    """Every word of length at most ``n`` in length-lexicographic order."""
    level = [()]
    for _ in range(n + 1):
        yield from level
        level = [w + (x,) for w in level for x in alphabet]


LETTERS = ("a", "b", "c", "inc1", "x")


def random_vass(rng: random.Random, allow_eps: bool = True) -> Vass:
    """A small valid Vass with random shape."""
    dim = rng.randint(0, 3)
    alphabet = tuple(rng.sample(LETTERS, rng.randint(1, 3)))
    states = tuple(f"q{i}" for i in range(rng.randint(1, 4)))
    labels = alphabet + ((EPS,) if allow_eps else ())
    transitions = []
    for i in range(rng.randint(0, 8)):
        transitions.append(Transition(rng.choice(states), rng.choice(labels),
                                      tuple(rng.randint(-3, 3) for _ in range(dim)),
                                      rng.choice(states), i))
    accepting = frozenset(q for q in states if rng.random() < 0.5)
    return Vass(f"v{rng.randint(0, 999)}", dim, alphabet, states, rng.choice(states), accepting,
                tuple(transitions), rng.choice((COVER, REACH)))
