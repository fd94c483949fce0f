"""Word membership, reachable configurations and bounded language comparison.

Membership is exact for silent-free systems (counters stay below
``len(word) * norm``) and for coverability systems with silent moves
(omega-acceleration of each silent gap).  Reachability systems with silent
moves are searched with at most ``eps_budget`` silent steps per gap, and a
search that was cut off without finding a witness is reported as unknown.

Words are enumerated in length-then-lexicographic order, using the
declaration order of the alphabet.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .core import (
    COVER, EPS, Configuration, Run, Vass, VassError, as_word, first_negative, format_word,
    is_accepting, step,
)
from .coverability import _Antichain, eps_cover_closure, maximal


@dataclass(frozen=True)
class SearchOptions:
    eps_budget: int = 64

    def __post_init__(self):
        if self.eps_budget < 0:
            raise ValueError("eps_budget must be non-negative")


DEFAULT_OPTIONS = SearchOptions()


class Verdict(str, enum.Enum):
    ACCEPTED = "ACCEPTED"
    REJECTED = "REJECTED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class MembershipResult:
    verdict: Verdict
    run: Run | None = None
    budget_used: int = 0

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPTED


class AlphabetError(VassError, ValueError):
    pass


class InconclusiveError(VassError):
    """A bounded check met a word whose membership could not be decided."""

    def __init__(self, word, detail="membership unknown within the silent-step budget"):
        self.word = tuple(word)
        super().__init__(f"inconclusive on {format_word(self.word)!r}: {detail}")


@dataclass(frozen=True)
class Equal:
    pass


@dataclass(frozen=True)
class Holds:
    pass


@dataclass(frozen=True)
class Counterexample:
    word: tuple[str, ...]


class BoundedLanguage(NamedTuple):
    accepted: list
    unknown: list


def check_word(vass_or_alphabet, word) -> tuple[str, ...]:
    word = as_word(word)
    alphabet = getattr(vass_or_alphabet, "alphabet", vass_or_alphabet)
    letters = set(alphabet)
    for pos, letter in enumerate(word):
        if letter not in letters:
            raise AlphabetError(f"letter {letter!r} at position {pos} is not in the alphabet")
    return word


# ---------------------------------------------------------------------------
# concrete layered search (witnesses, reach sets)

class _Dominance(_Antichain):
    def dominated(self, c: Configuration) -> bool:
        return self.covered(c.state, c.counters)

    def add(self, c: Configuration):
        super().add(c.state, c.counters)


def _close(vass, layer, li, budget, prune, dom):
    """Silent closure of ``layer`` in place; returns ``(saturated, depth)``."""
    frontier = list(layer)
    depth = 0
    while frontier:
        if depth >= budget:
            for c in frontier:
                for t in vass.outgoing(c.state, EPS):
                    if first_negative(c.counters, t.effect) is None:
                        d = step(c, t)
                        if d not in layer and not (prune and dom.dominated(d)):
                            return True, depth
            return False, depth
        nxt = []
        for c in frontier:
            for t in vass.outgoing(c.state, EPS):
                if first_negative(c.counters, t.effect) is not None:
                    continue
                d = step(c, t)
                if d in layer or (prune and dom.dominated(d)):
                    continue
                layer[d] = (li, c, t)
                if prune:
                    dom.add(d)
                nxt.append(d)
        if nxt:
            depth += 1
        frontier = nxt
    return False, depth


def _layers(vass: Vass, word, budget: int, start: Configuration, prune: bool):
    layers = [{start: None}]
    dom = _Dominance()
    if prune:
        dom.add(start)
    has_eps = vass.has_eps
    saturated = False
    used = 0
    if has_eps:
        saturated, used = _close(vass, layers[0], 0, budget, prune, dom)
    for li, letter in enumerate(word, start=1):
        layer: dict = {}
        dom = _Dominance()
        for c in layers[-1]:
            for t in vass.outgoing(c.state, letter):
                if first_negative(c.counters, t.effect) is not None:
                    continue
                d = step(c, t)
                if d in layer or (prune and dom.dominated(d)):
                    continue
                layer[d] = (li - 1, c, t)
                if prune:
                    dom.add(d)
        if has_eps and layer:
            sat, depth = _close(vass, layer, li, budget, prune, dom)
            saturated = saturated or sat
            used = max(used, depth)
        layers.append(layer)
    return layers, saturated, used


def _trace(layers, li, config) -> Run:
    steps = []
    while True:
        back = layers[li][config]
        if back is None:
            break
        prev_li, prev, t = back
        steps.append((t, config))
        li, config = prev_li, prev
    steps.reverse()
    return Run(config, tuple(steps))


def _witness(vass, layers):
    last = len(layers) - 1
    for c in layers[last]:
        if is_accepting(vass, c):
            return _trace(layers, last, c)
    return None


def reach_set(vass: Vass, word, opts: SearchOptions = DEFAULT_OPTIONS, start: Configuration | None = None):
    """All configurations reachable reading exactly ``word``, with a saturation flag.

    At most ``opts.eps_budget`` silent steps are taken in each gap (before
    the first letter, between letters and after the last one).  The flag is
    set when some gap was cut off, in which case the set is an
    under-approximation.
    """
    word = check_word(vass, word)
    layers, saturated, _ = _layers(vass, word, opts.eps_budget, start or vass.initial_config, prune=False)
    return frozenset(layers[-1]), saturated


def member(vass: Vass, word, opts: SearchOptions = DEFAULT_OPTIONS) -> MembershipResult:
    word = check_word(vass, word)
    start = vass.initial_config
    cover = vass.semantics == COVER
    if cover and vass.has_eps:
        acc = VassAcceptor(vass, opts)
        if not acc.verdict(acc.run(word)):
            return MembershipResult(Verdict.REJECTED)
        budget = max(opts.eps_budget, 1)
        while True:
            layers, _, used = _layers(vass, word, budget, start, prune=True)
            run = _witness(vass, layers)
            if run is not None:
                return MembershipResult(Verdict.ACCEPTED, run, used)
            budget *= 2
    layers, saturated, used = _layers(vass, word, opts.eps_budget, start, prune=cover)
    run = _witness(vass, layers)
    if run is not None:
        return MembershipResult(Verdict.ACCEPTED, run, used)
    return MembershipResult(Verdict.UNKNOWN if saturated else Verdict.REJECTED, None, used)


# ---------------------------------------------------------------------------
# frontier acceptors: shared-prefix evaluation of many words

class VassAcceptor:
    """Incremental membership: a frontier is ``(configs, saturated)``.

    Under coverability the configurations are the maximal elements of the
    omega-closed cover set, which is exact for acceptance of every
    extension.  Under reachability they are the concrete budgeted sets.
    """

    def __init__(self, vass: Vass, opts: SearchOptions = DEFAULT_OPTIONS, start: Configuration | None = None):
        self.vass = vass
        self.opts = opts
        self.alphabet = vass.alphabet
        self.start_config = start or vass.initial_config
        self.cover = vass.semantics == COVER
        self.has_eps = vass.has_eps
        self._cache: dict = {}

    def close(self, configs, saturated=False):
        vass = self.vass
        if self.cover:
            if self.has_eps:
                configs = eps_cover_closure(vass, configs)
            else:
                configs = maximal(configs)
            return tuple(sorted(configs)), False
        layer = dict.fromkeys(configs)
        if self.has_eps:
            sat, _ = _close(vass, layer, 0, self.opts.eps_budget, False, None)
            saturated = saturated or sat
        return tuple(sorted(layer)), saturated

    def initial(self):
        return self.close([self.start_config])

    def step(self, frontier, letter):
        key = (frontier, letter)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        configs, saturated = frontier
        out = {}
        for c in configs:
            for t in self.vass.outgoing(c.state, letter):
                if first_negative(c.counters, t.effect) is None:
                    out.setdefault(step(c, t), None)
        result = self.close(list(out), saturated)
        if len(self._cache) > 200_000:
            self._cache.clear()
        self._cache[key] = result
        return result

    def run(self, word):
        f = self.initial()
        for letter in word:
            f = self.step(f, letter)
        return f

    def verdict(self, frontier):
        configs, saturated = frontier
        if any(is_accepting(self.vass, c) for c in configs):
            return True
        return None if saturated else False

    def dead(self, frontier) -> bool:
        return not frontier[0] and not frontier[1]


class PredicateAcceptor:
    def __init__(self, predicate: Callable, alphabet):
        self.predicate = predicate
        self.alphabet = tuple(alphabet)

    def initial(self):
        return ()

    def step(self, word, letter):
        return word + (letter,)

    def verdict(self, word):
        return bool(self.predicate(word))

    def dead(self, word) -> bool:
        return False


def acceptor_for(x, opts: SearchOptions = DEFAULT_OPTIONS, alphabet=None):
    if isinstance(x, Vass):
        return VassAcceptor(x, opts)
    if hasattr(x, "acceptor"):
        return x.acceptor(opts)
    if callable(x):
        alpha = alphabet if alphabet is not None else getattr(x, "alphabet", None)
        if alpha is None:
            raise VassError("a bare predicate needs an explicit alphabet")
        return PredicateAcceptor(x, alpha)
    raise TypeError(f"cannot build an acceptor from {type(x).__name__}")


def enumerate_words(acceptors, alphabet, n, prune=None):
    """Yield ``(word, frontiers)`` in length-lexicographic order up to length ``n``.

    A subtree is skipped when ``prune(frontiers)`` holds (by default: every
    acceptor is dead).
    """
    if prune is None:
        prune = lambda fs: all(a.dead(f) for a, f in zip(acceptors, fs))  # noqa: E731
    level = [((), tuple(a.initial() for a in acceptors))]
    for length in range(n + 1):
        yield from level
        if length == n:
            return
        nxt = []
        for word, fs in level:
            if prune(fs):
                continue
            for letter in alphabet:
                nxt.append((word + (letter,), tuple(a.step(f, letter) for a, f in zip(acceptors, fs))))
        level = nxt


def language_up_to(vass, n: int, opts: SearchOptions = DEFAULT_OPTIONS,
                   start: Configuration | None = None) -> BoundedLanguage:
    """Accepted words of length at most ``n``; undecided ones are listed separately."""
    if n < 0:
        raise ValueError("n must be non-negative")
    acc = VassAcceptor(vass, opts, start) if isinstance(vass, Vass) else acceptor_for(vass, opts)
    accepted, unknown = [], []
    for word, (f,) in enumerate_words([acc], acc.alphabet, n):
        v = acc.verdict(f)
        if v:
            accepted.append(word)
        elif v is None:
            unknown.append(word)
    return BoundedLanguage(accepted, unknown)


def residual(vass: Vass, config: Configuration, n: int, opts: SearchOptions = DEFAULT_OPTIONS) -> frozenset:
    """Words of length at most ``n`` accepted from ``config``; raises on unknown words."""
    lang = language_up_to(vass, n, opts, start=config)
    if lang.unknown:
        raise InconclusiveError(lang.unknown[0], "residual membership unknown")
    return frozenset(lang.accepted)


def _alphabet_pair(a, b):
    alpha_a = getattr(a, "alphabet", None)
    alpha_b = getattr(b, "alphabet", None)
    if alpha_a is not None and alpha_b is not None and set(alpha_a) != set(alpha_b):
        raise AlphabetError(f"alphabets differ: {sorted(alpha_a)} vs {sorted(alpha_b)}")
    alphabet = alpha_a if alpha_a is not None else alpha_b
    if alphabet is None:
        raise VassError("no alphabet available for enumeration")
    return tuple(alphabet)


def bounded_equiv(a, b, n: int, opts: SearchOptions = DEFAULT_OPTIONS):
    """``Equal()`` or the length-lex least word of length at most ``n`` where ``a`` and ``b`` disagree.

    Either side may be a Vass, a finite union of deterministic VASS, or a
    predicate with an ``alphabet`` attribute.
    """
    alphabet = _alphabet_pair(a, b)
    acc = [acceptor_for(a, opts, alphabet), acceptor_for(b, opts, alphabet)]
    for word, (fa, fb) in enumerate_words(acc, alphabet, n):
        va, vb = acc[0].verdict(fa), acc[1].verdict(fb)
        if va is None or vb is None:
            raise InconclusiveError(word)
        if va != vb:
            return Counterexample(word)
    return Equal()


def bounded_inclusion(a, b, n: int, opts: SearchOptions = DEFAULT_OPTIONS):
    """``Holds()`` or the least word of ``a`` (length at most ``n``) missing from ``b``."""
    alphabet = _alphabet_pair(a, b)
    acc = [acceptor_for(a, opts, alphabet), acceptor_for(b, opts, alphabet)]
    for word, (fa, fb) in enumerate_words(acc, alphabet, n, prune=lambda fs: acc[0].dead(fs[0])):
        va = acc[0].verdict(fa)
        if va is None:
            raise InconclusiveError(word)
        if not va:
            continue
        vb = acc[1].verdict(fb)
        if vb is None:
            raise InconclusiveError(word)
        if not vb:
            return Counterexample(word)
    return Holds()


# ---------------------------------------------------------------------------
# silent-move helpers shared by resolvers and the letter game

def eps_paths(vass: Vass, config: Configuration, budget: int):
    """Configurations reachable by at most ``budget`` silent steps, each with its first-found path."""
    out = {config: ()}
    if not vass.has_eps:
        return list(out.items())
    frontier = [config]
    depth = 0
    while frontier and depth < budget:
        nxt = []
        for c in frontier:
            for t in vass.outgoing(c.state, EPS):
                if first_negative(c.counters, t.effect) is not None:
                    continue
                d = step(c, t)
                if d not in out:
                    out[d] = out[c] + (t,)
                    nxt.append(d)
        frontier = nxt
        depth += 1
    return list(out.items())


def letter_choices(vass: Vass, config: Configuration, letter: str, budget: int):
    """Ways to read ``letter`` from ``config``: ``(prelude, transition, successor)`` triples.

    Preludes are silent paths of length at most ``budget``.  Choices with
    the same successor are merged (the first one is kept); order is by
    transition index, then by prelude discovery order.
    """
    items = []
    for order, (c, prelude) in enumerate(eps_paths(vass, config, budget)):
        for t in vass.outgoing(c.state, letter):
            if first_negative(c.counters, t.effect) is None:
                items.append((t.index, order, prelude, t, step(c, t)))
    items.sort(key=lambda it: (it[0], it[1]))
    seen = set()
    out = []
    for _, _, prelude, t, succ in items:
        if succ in seen:
            continue
        seen.add(succ)
        out.append((prelude, t, succ))
    return out


def accepts_after_eps(vass: Vass, config: Configuration, opts: SearchOptions = DEFAULT_OPTIONS) -> bool:
    """Whether silent moves alone can take ``config`` to acceptance."""
    if is_accepting(vass, config):
        return True
    if not vass.has_eps:
        return False
    if vass.semantics == COVER:
        return any(c.state in vass.accepting for c in eps_cover_closure(vass, [config]))
    return any(is_accepting(vass, c) for c, _ in eps_paths(vass, config, opts.eps_budget))
