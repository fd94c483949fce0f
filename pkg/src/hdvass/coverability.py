"""Karp-Miller acceleration.

Vectors here may contain ``OMEGA`` (a float infinity), which absorbs
addition and compares above every integer; a transition is enabled at an
omega coordinate whatever its effect there.  Nodes whose label is
dominated by an already created node with the same state are not added,
which keeps the tree finite and the construction reproducible.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .core import COVER, EPS, Configuration, Transition, Vass, VassError, first_negative

OMEGA = math.inf


def leq(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


def is_omega(x) -> bool:
    return x == OMEGA


class KMNode(NamedTuple):
    index: int
    state: str
    vector: tuple
    parent: int | None
    via: Transition | None


@dataclass(frozen=True)
class KMTree:
    nodes: tuple[KMNode, ...]
    closed: bool = True

    @property
    def root(self) -> KMNode:
        return self.nodes[0]

    def labels(self) -> list[tuple[str, tuple]]:
        return [(n.state, n.vector) for n in self.nodes]


class _Staircase:
    """Pareto frontier of 2-dim vectors: first coordinate ascending, second descending."""

    def __init__(self):
        self.xs: list = []
        self.ys: list = []

    def covered(self, v) -> bool:
        i = bisect.bisect_left(self.xs, v[0])
        return i < len(self.xs) and self.ys[i] >= v[1]

    def holds(self, v) -> bool:
        i = bisect.bisect_left(self.xs, v[0])
        return i < len(self.xs) and self.xs[i] == v[0] and self.ys[i] == v[1]

    def add(self, v):
        if self.covered(v):
            return
        x, y = v
        i = bisect.bisect_left(self.xs, x)
        j = i
        while j > 0 and self.ys[j - 1] <= y:
            j -= 1
        # entries j..i-1 have smaller x and no larger y; an entry at i with x equal is dominated too
        k = i + 1 if i < len(self.xs) and self.xs[i] == x else i
        self.xs[j:k] = [x]
        self.ys[j:k] = [y]


class _Antichain:
    """Per-state sets of vectors, queried for domination."""

    def __init__(self):
        self.by_state: dict[str, object] = {}

    def covered(self, state, vec) -> bool:
        store = self.by_state.get(state)
        if store is None:
            return False
        if isinstance(store, _Staircase):
            return store.covered(vec)
        return any(leq(vec, other) for other in store)

    def still_maximal(self, state, vec) -> bool:
        """False once a strictly larger vector has been added for ``state`` (only tracked for dim <= 2)."""
        store = self.by_state.get(state)
        if isinstance(store, _Staircase):
            return store.holds(vec)
        if store and len(vec) <= 1:
            return store[0] == vec
        return True

    def add(self, state, vec):
        store = self.by_state.get(state)
        if store is None:
            store = _Staircase() if len(vec) == 2 else []
            self.by_state[state] = store
        if isinstance(store, _Staircase):
            store.add(vec)
        elif len(vec) <= 1:
            if not store or (vec and vec[0] > store[0][0]):
                store[:] = [vec]
        else:
            store.append(vec)


def _accelerate(nodes, parent_idx, state, vec):
    vec = list(vec)
    idx = parent_idx
    while idx is not None:
        anc = nodes[idx]
        if anc.state == state and leq(anc.vector, vec) and tuple(anc.vector) != tuple(vec):
            for i, (a, b) in enumerate(zip(anc.vector, vec)):
                if a < b:
                    vec[i] = OMEGA
        idx = anc.parent
    return tuple(vec)


def _build(vass: Vass, roots: Iterable[tuple[str, tuple]], label=None) -> KMTree:
    """Karp-Miller forest from ``roots``, using only transitions reading ``label`` if given."""
    nodes: list[KMNode] = []
    # per node: state -> componentwise minimum of the vectors on its root path (node included)
    path_min: list[dict] = []
    seen = _Antichain()
    for state, vec in roots:
        vec = tuple(vec)
        if seen.covered(state, vec):
            continue
        seen.add(state, vec)
        nodes.append(KMNode(len(nodes), state, vec, None, None))
        path_min.append({state: vec})
    todo = 0
    while todo < len(nodes):
        node = nodes[todo]
        todo += 1
        if not seen.still_maximal(node.state, node.vector):
            continue
        for t in vass.outgoing(node.state, label):
            vec = tuple(c + d for c, d in zip(node.vector, t.effect))
            if any(c < 0 for c in vec):
                continue
            low = path_min[node.index].get(t.target)
            if low is not None and leq(low, vec):
                vec = _accelerate(nodes, node.index, t.target, vec)
            if seen.covered(t.target, vec):
                continue
            seen.add(t.target, vec)
            nodes.append(KMNode(len(nodes), t.target, vec, node.index, t))
            mins = dict(path_min[node.index])
            mins[t.target] = vec if low is None else tuple(min(a, b) for a, b in zip(low, vec))
            path_min.append(mins)
    return KMTree(tuple(nodes), True)


def karp_miller(vass: Vass) -> KMTree:
    """Karp-Miller tree from (initial, 0); labels are ignored."""
    return _build(vass, [(vass.initial, vass.zero)])


def coverable(vass: Vass, target_state: str, target_vector) -> bool:
    target_vector = tuple(target_vector)
    if len(target_vector) != vass.dim:
        raise VassError(f"target vector has length {len(target_vector)}, expected {vass.dim}")
    return any(n.state == target_state and leq(target_vector, n.vector)
               for n in karp_miller(vass).nodes)


def cover_language_nonempty(vass: Vass) -> bool:
    if vass.semantics != COVER:
        raise VassError("cover_language_nonempty needs coverability semantics")
    return any(n.state in vass.accepting for n in karp_miller(vass).nodes)


def accepting_reachable_from(vass: Vass, configs) -> bool:
    """Coverability emptiness test for the residual of a set of omega-configurations."""
    tree = _build(vass, [(c[0], c[1]) for c in configs])
    return any(n.state in vass.accepting for n in tree.nodes)


def maximal(configs) -> list[Configuration]:
    """Maximal elements (per state) in input order; among equal elements the first is kept."""
    configs = [Configuration(s, tuple(v)) for s, v in configs]
    order = sorted(range(len(configs)), key=lambda i: (configs[i].state, tuple(-x for x in configs[i].counters), i))
    seen = _Antichain()
    keep = set()
    for i in order:
        c = configs[i]
        if seen.covered(c.state, c.counters):
            continue
        seen.add(c.state, c.counters)
        keep.add(i)
    return [configs[i] for i in sorted(keep)]


def eps_cover_closure(vass: Vass, configs) -> frozenset:
    """Omega-saturated closure of ``configs`` under silent transitions.

    Returns the maximal elements of the cover set: a configuration reachable
    by silent moves is covered by some returned element and every returned
    element is a limit of reachable ones.
    """
    tree = _build(vass, [(c[0], c[1]) for c in configs], label=EPS)
    return frozenset(maximal(tree.labels()))
