"""The letter game and a bounded solver for non-history-determinism witnesses.

Adam spells a word letter by letter; Eve answers each letter with one
transition (optionally preceded by silent moves) and so builds a single
run.  Eve loses at a position when

* the word read so far is in the language but her run cannot reach
  acceptance with silent moves alone, or
* she cannot read Adam's letter although some extension of the word is
  still in the language.

Adam's knowledge is the acceptor frontier of the word so far (the
omega-closed cover set under coverability, the budgeted reach set under
reachability), so membership of the current word is read off directly.
The solver is an AND-OR search with iterative deepening; the returned
strategy has minimal depth.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import COVER, Configuration, Run, Vass, format_word, is_accepting
from .coverability import accepting_reachable_from
from .resolvers import Resolver, advance, finalize
from .semantics import (
    DEFAULT_OPTIONS, InconclusiveError, SearchOptions, VassAcceptor, accepts_after_eps, check_word,
    letter_choices, member,
)

IN_L_NOT_ACCEPTING = "in-L-not-accepting"
STUCK = "stuck"


@dataclass(frozen=True)
class Leaf:
    """Eve has lost on ``word``; for a stuck leaf ``extension`` completes it to a word of the language."""

    word: tuple
    reason: str
    extension: tuple = ()


@dataclass(frozen=True)
class AdamMove:
    """Adam plays ``letter``; ``responses`` maps each Eve choice to the rest of the strategy.

    A choice is keyed by the indices of its silent prelude followed by the
    letter transition.  When Eve has no choice at all, ``stuck`` holds the
    leaf instead.
    """

    letter: str
    responses: tuple = ()
    stuck: Leaf | None = None


@dataclass(frozen=True)
class NonHdWitness:
    tree: object
    depth: int

    def leaves(self):
        out = []

        def walk(node):
            if isinstance(node, Leaf):
                out.append(node)
                return
            if node.stuck is not None:
                out.append(node.stuck)
            for _, sub in node.responses:
                walk(sub)

        walk(self.tree)
        return out

    def losing_words(self):
        return [leaf.word + leaf.extension for leaf in self.leaves()]


@dataclass(frozen=True)
class NoneUpTo:
    horizon: int


def _key(prelude, t):
    return tuple(p.index for p in prelude) + (t.index,)


def _shortest_extension(acc, frontier, limit):
    """Shortest word ``u`` with ``|u| <= limit`` accepted from ``frontier`` (``None`` if there is none)."""
    level = [((), frontier)]
    depth = 0
    while level:
        for u, f in level:
            v = acc.verdict(f)
            if v is None:
                raise InconclusiveError(u, "residual membership unknown")
            if v:
                return u
        if limit is not None and depth >= limit:
            return None
        level = [(u + (x,), acc.step(f, x)) for u, f in level if not acc.dead(f) for x in acc.alphabet]
        depth += 1
    return None


class _Solver:
    def __init__(self, vass: Vass, opts: SearchOptions):
        self.vass = vass
        self.opts = opts
        self.acc = VassAcceptor(vass, opts)
        self.cover = vass.semantics == COVER
        self.memo: dict = {}

    def residual_extension(self, frontier, remaining):
        """An accepted extension of the knowledge, or None; unbounded under coverability."""
        if self.cover:
            if not accepting_reachable_from(self.vass, frontier[0]):
                return None
            return _shortest_extension(self.acc, frontier, None)
        return _shortest_extension(self.acc, frontier, remaining)

    def solve(self, eve: Configuration, frontier, word, remaining):
        """Adam's winning strategy from this position within ``remaining`` letters, or None."""
        v = self.acc.verdict(frontier)
        if v is None:
            raise InconclusiveError(word)
        if v and not accepts_after_eps(self.vass, eve, self.opts):
            return Leaf(word, IN_L_NOT_ACCEPTING)
        if remaining == 0 or self.acc.dead(frontier):
            return None
        key = (eve, frontier, remaining)
        if key in self.memo:
            origin, hit = self.memo[key]
            return None if hit is None else _reword(hit, len(origin), word)
        result = None
        for letter in self.vass.alphabet:
            nxt = self.acc.step(frontier, letter)
            w = word + (letter,)
            options = letter_choices(self.vass, eve, letter, self.opts.eps_budget)
            if not options:
                ext = self.residual_extension(nxt, remaining - 1)
                if ext is not None:
                    result = AdamMove(letter, (), Leaf(w, STUCK, ext))
                    break
                continue
            options.sort(key=lambda o: -sum(o[2].counters))
            responses = []
            for prelude, t, succ in options:
                sub = self.solve(succ, nxt, w, remaining - 1)
                if sub is None:
                    break
                responses.append((_key(prelude, t), sub))
            else:
                responses.sort(key=lambda r: r[0])
                result = AdamMove(letter, tuple(responses))
                break
        self.memo[key] = (word, result)
        return result


def _reword(node, cut, prefix):
    """Re-anchor a memoised subtree found under another word: swap the first ``cut`` letters for ``prefix``."""
    if node is None:
        return None
    if isinstance(node, Leaf):
        return Leaf(prefix + node.word[cut:], node.reason, node.extension)
    return AdamMove(node.letter, tuple((k, _reword(sub, cut, prefix)) for k, sub in node.responses),
                    _reword(node.stuck, cut, prefix))


def find_nonhd_witness(vass: Vass, horizon: int, opts: SearchOptions = DEFAULT_OPTIONS):
    """A minimal-depth Adam strategy of depth at most ``horizon`` beating every Eve, else ``NoneUpTo``."""
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    solver = _Solver(vass, opts)
    root = solver.acc.initial()
    for depth in range(horizon + 1):
        tree = solver.solve(vass.initial_config, root, (), depth)
        if tree is not None:
            return NonHdWitness(tree, depth)
    return NoneUpTo(horizon)


def check_witness(vass: Vass, witness: NonHdWitness, opts: SearchOptions = DEFAULT_OPTIONS):
    """Replay the strategy against every Eve behaviour; returns ``(ok, message)``.

    Membership is re-derived with ``member`` on complete words, independently
    of the solver's knowledge sets.
    """

    def accepted(word):
        res = member(vass, word, opts)
        if res.verdict.value == "UNKNOWN":
            raise InconclusiveError(word)
        return res.accepted

    def walk(node, eve, word):
        if isinstance(node, Leaf):
            if node.word != word:
                return False, f"leaf word {format_word(node.word)} reached along {format_word(word)}"
            if node.reason == IN_L_NOT_ACCEPTING:
                if not accepted(word):
                    return False, f"{format_word(word)} is not in the language"
                if accepts_after_eps(vass, eve, opts):
                    return False, f"Eve accepts {format_word(word)} at {eve}"
                return True, ""
            return False, f"stuck leaf without an Adam move at {format_word(word)}"
        w = word + (node.letter,)
        options = letter_choices(vass, eve, node.letter, opts.eps_budget)
        if not options:
            leaf = node.stuck
            if leaf is None or leaf.word != w:
                return False, f"Eve is stuck on {format_word(w)} but the strategy expects a response"
            if not accepted(w + leaf.extension):
                return False, f"extension {format_word(w + leaf.extension)} is not in the language"
            return True, ""
        table = dict(node.responses)
        for prelude, t, succ in options:
            sub = table.get(_key(prelude, t))
            if sub is None:
                return False, f"no answer to Eve choice {_key(prelude, t)} after {format_word(w)}"
            ok, msg = walk(sub, succ, w)
            if not ok:
                return ok, msg
        return True, ""

    return walk(witness.tree, vass.initial_config, ())


def format_strategy(node, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(node, Leaf):
        tail = f" then {format_word(node.extension)}" if node.extension else ""
        return f"{pad}LOSE {node.reason}: {format_word(node.word)}{tail}\n"
    out = f"{pad}adam {node.letter}\n"
    if node.stuck is not None:
        out += format_strategy(node.stuck, indent + 1)
    for key, sub in node.responses:
        out += f"{pad}  eve {' '.join(map(str, key))}\n"
        out += format_strategy(sub, indent + 2)
    return out


@dataclass(frozen=True)
class GameStep:
    letter: str
    choice: tuple | None
    eve: Configuration | None
    in_language: bool
    eve_accepting: bool


@dataclass(frozen=True)
class Transcript:
    steps: tuple
    losing_position: int | None
    initial_in_language: bool = False
    initial_eve_accepting: bool = False
    run: Run | None = field(default=None, compare=False)


def play_letter_game(vass: Vass, letters, resolver: Resolver, opts: SearchOptions = DEFAULT_OPTIONS,
                     residual_bound: int = 4) -> Transcript:
    """Replay ``resolver`` against a fixed word of Adam.

    The losing position is 0 for the empty word and ``k`` for the ``k``-th
    letter.  When the resolver has no move, play stops; that position loses
    if the language still has an extension (searched up to
    ``residual_bound`` letters under reachability).
    """
    letters = check_word(vass, letters)
    acc = VassAcceptor(vass, opts)
    frontier = acc.initial()

    def status(f, run):
        v = acc.verdict(f)
        if v is None:
            raise InconclusiveError(())
        return v, is_accepting(vass, finalize(vass, resolver, run, opts).end)

    run = Run(vass.initial_config)
    in_l, eve_ok = status(frontier, run)
    losing = 0 if in_l and not eve_ok else None
    init = (in_l, eve_ok)
    steps = []
    for k, letter in enumerate(letters, start=1):
        frontier = acc.step(frontier, letter)
        nxt = advance(vass, resolver, run, letter, opts)
        if nxt is None:
            v = acc.verdict(frontier)
            if vass.semantics == COVER:
                alive = accepting_reachable_from(vass, frontier[0])
            else:
                alive = _shortest_extension(acc, frontier, residual_bound) is not None
            steps.append(GameStep(letter, None, None, bool(v), False))
            if losing is None and alive:
                losing = k
            break
        chosen = nxt.transitions[len(run.transitions):]
        run = nxt
        in_l, eve_ok = status(frontier, run)
        steps.append(GameStep(letter, tuple(t.index for t in chosen), run.end, in_l, eve_ok))
        if losing is None and in_l and not eve_ok:
            losing = k
    return Transcript(tuple(steps), losing, init[0], init[1], run)
