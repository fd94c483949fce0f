"""Resolvers: on-the-fly strategies that pick one transition per letter.

A resolver sees the whole run built so far and the next letter, and
answers with a silent prelude plus one transition reading that letter (or
``None`` when it has nothing to offer).  After the last letter its
``finish`` hook may append further silent moves, which lets reachability
resolvers drain counters at the end of a word.

Every built-in resolver here is positional: its answer depends only on the
last configuration of the run.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (
    EPS, Configuration, DisabledTransitionError, Run, Transition, Vass, VassError, is_accepting,
)
from .semantics import (
    DEFAULT_OPTIONS, InconclusiveError, SearchOptions, VassAcceptor, check_word, enumerate_words,
    eps_paths, letter_choices, residual,
)


class ResolverContractError(VassError):
    """A resolver proposed a move that is not a legal continuation of the run."""


Choice = tuple  # (prelude: tuple[Transition, ...], transition: Transition)


def no_final_moves(vass, run, opts):
    return ()


def shortest_accepting_suffix(vass: Vass, run: Run, opts: SearchOptions):
    """Silent path (at most ``eps_budget`` steps) to an accepting configuration, if any."""
    if is_accepting(vass, run.end) or not vass.has_eps:
        return ()
    for config, path in eps_paths(vass, run.end, opts.eps_budget):
        if is_accepting(vass, config):
            return path
    return ()


@dataclass(frozen=True)
class Resolver:
    name: str
    choice: Callable
    final: Callable = shortest_accepting_suffix

    def choose(self, vass: Vass, run: Run, letter: str, opts: SearchOptions = DEFAULT_OPTIONS):
        return self.choice(vass, run, letter, opts)

    def finish(self, vass: Vass, run: Run, opts: SearchOptions = DEFAULT_OPTIONS):
        return tuple(self.final(vass, run, opts))


def positional(name: str, pick: Callable, final: Callable = shortest_accepting_suffix) -> Resolver:
    """Resolver from ``pick(vass, config, letter, opts) -> (prelude, t) | None``."""
    return Resolver(name, lambda vass, run, letter, opts: pick(vass, run.end, letter, opts), final)


def _first(vass, config, letter, opts):
    options = letter_choices(vass, config, letter, opts.eps_budget)
    if not options:
        return None
    prelude, t, _ = options[0]
    return prelude, t


def first_enabled() -> Resolver:
    """Take the lowest-index enabled transition (shortest silent prelude first)."""
    return positional("first", _first)


def by_preference(name: str, order: Callable) -> Resolver:
    """Among the enabled choices pick the one minimising ``order(prelude, t, successor)``."""

    def pick(vass, config, letter, opts):
        options = letter_choices(vass, config, letter, opts.eps_budget)
        if not options:
            return None
        prelude, t, _ = min(options, key=lambda o: order(*o))
        return prelude, t

    return positional(name, pick)


def lookahead_resolver(vass: Vass, horizon: int, opts: SearchOptions = DEFAULT_OPTIONS) -> Resolver:
    """Choose the successor with the largest residual language up to ``horizon``.

    Successors are compared by inclusion of their bounded residuals first,
    then by residual size, then by transition index.  ``horizon == 0``
    means no look-ahead: the first enabled transition.
    """
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    memo: dict = {}

    def pick(v, config, letter, o):
        if v is not vass or horizon == 0:
            return _first(v, config, letter, o)
        key = (config, letter)
        if key in memo:
            return memo[key]
        options = letter_choices(v, config, letter, o.eps_budget)
        if len(options) <= 1:
            out = (options[0][0], options[0][1]) if options else None
        else:
            res = [residual(v, succ, horizon, o) for _, _, succ in options]
            maximal = [i for i, r in enumerate(res) if not any(r < other for other in res)]
            best = min(maximal, key=lambda i: (-len(res[i]), i))
            out = (options[best][0], options[best][1])
        memo[key] = out
        return out

    return positional(f"lookahead:{horizon}", pick)


@dataclass(frozen=True)
class Stuck:
    """The resolver had no move for the letter at ``position`` (0-based)."""

    position: int
    run: Run


def _extend(vass: Vass, run: Run, moves, what: str) -> Run:
    try:
        return run.extend(vass, moves)
    except DisabledTransitionError as exc:
        raise ResolverContractError(f"{what}: {exc}") from exc


def advance(vass: Vass, resolver: Resolver, run: Run, letter: str, opts: SearchOptions = DEFAULT_OPTIONS):
    """Extend ``run`` by one letter as the resolver dictates; ``None`` if it has no move."""
    choice = resolver.choose(vass, run, letter, opts)
    if choice is None:
        return None
    prelude, t = choice
    if any(not isinstance(p, Transition) or p.label != EPS for p in prelude):
        raise ResolverContractError(f"resolver {resolver.name}: prelude contains a non-silent move")
    if t.label != letter:
        raise ResolverContractError(f"resolver {resolver.name}: transition {t.index} reads {t.label!r}, not {letter!r}")
    return _extend(vass, run, (*prelude, t), f"resolver {resolver.name}")


def finalize(vass: Vass, resolver: Resolver, run: Run, opts: SearchOptions = DEFAULT_OPTIONS) -> Run:
    suffix = resolver.finish(vass, run, opts)
    if any(p.label != EPS for p in suffix):
        raise ResolverContractError(f"resolver {resolver.name}: final moves must be silent")
    return _extend(vass, run, suffix, f"resolver {resolver.name} (final moves)")


def resolve_run(vass: Vass, resolver: Resolver, word, opts: SearchOptions = DEFAULT_OPTIONS):
    """The run the resolver builds on ``word``, or ``Stuck`` at the first letter it cannot read."""
    word = check_word(vass, word)
    run = Run(vass.initial_config)
    for pos, letter in enumerate(word):
        nxt = advance(vass, resolver, run, letter, opts)
        if nxt is None:
            return Stuck(pos, run)
        run = nxt
    return finalize(vass, resolver, run, opts)


@dataclass(frozen=True)
class ResolverReport:
    ok: bool
    word: tuple | None = None
    position: int | None = None
    reason: str | None = None

    def __str__(self):
        if self.ok:
            return "OK"
        w = " ".join(self.word) if self.word else "@eps"
        return f"FAILURE word={w!r} position={self.position} reason={self.reason}"


STUCK = "stuck"
NOT_ACCEPTING = "prefix-in-L-but-not-accepting"


def validate_resolver(vass: Vass, resolver: Resolver, n: int, opts: SearchOptions = DEFAULT_OPTIONS) -> ResolverReport:
    """Check that the resolver accepts every word of length at most ``n`` in the language.

    Words are visited in length-lexicographic order, so the reported
    failure is the least one.  Runs are built incrementally along the
    word tree, and subtrees without any accepted extension are skipped.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    acc = VassAcceptor(vass, opts)
    level = [((), acc.initial(), Run(vass.initial_config))]
    for length in range(n + 1):
        nxt = []
        for word, frontier, run in level:
            verdict = acc.verdict(frontier)
            if verdict is None:
                raise InconclusiveError(word)
            if verdict:
                if isinstance(run, Stuck):
                    return ResolverReport(False, word, run.position, STUCK)
                if not is_accepting(vass, finalize(vass, resolver, run, opts).end):
                    return ResolverReport(False, word, len(word), NOT_ACCEPTING)
            if length == n or acc.dead(frontier):
                continue
            for letter in vass.alphabet:
                if isinstance(run, Stuck):
                    child = run
                else:
                    child = advance(vass, resolver, run, letter, opts)
                    if child is None:
                        child = Stuck(length, run)
                nxt.append((word + (letter,), acc.step(frontier, letter), child))
        level = nxt
    return ResolverReport(True)


def is_language_maximal_choice(vass: Vass, config: Configuration, letter: str, t: Transition, n: int,
                               opts: SearchOptions = DEFAULT_OPTIONS) -> bool:
    """Whether taking ``t`` keeps at least the bounded residual of every alternative."""
    options = letter_choices(vass, config, letter, opts.eps_budget)
    mine = [succ for _, u, succ in options if u == t]
    if not mine:
        raise ValueError(f"transition {t.index} is not enabled at {config} on {letter!r}")
    own = residual(vass, mine[0], n, opts)
    for _, u, succ in options:
        if u != t and not residual(vass, succ, n, opts) <= own:
            return False
    return True


def words_accepted_by_resolver(vass: Vass, resolver: Resolver, n: int, opts: SearchOptions = DEFAULT_OPTIONS):
    """Words of length at most ``n`` on which the resolver's run accepts."""
    out = []
    for word, _ in enumerate_words([], vass.alphabet, n, prune=lambda fs: False):
        run = resolve_run(vass, resolver, word, opts)
        if isinstance(run, Run) and is_accepting(vass, run.end):
            out.append(word)
    return out
