"""The VASS data model and its step rule.

A k-dimensional VASS is a finite automaton whose transitions carry integer
effect vectors on k counters.  A transition is enabled in a configuration
only if every counter stays non-negative after adding its effect.  Runs
start in ``(initial, 0...0)``.

All objects are immutable.  Declaration order of transitions is the
universal tie-breaker, so every search built on top of this module is
deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

EPS = "@eps"
COVER = "cover"
REACH = "reach"
SEMANTICS = (COVER, REACH)


class VassError(Exception):
    """Base class for errors raised by this package."""


class UnknownStateError(VassError, KeyError):
    def __init__(self, state):
        super().__init__(f"unknown state {state!r}")
        self.state = state

    def __str__(self):
        return self.args[0]


class DisabledTransitionError(VassError):
    """Raised when a transition would drive a counter below zero."""

    def __init__(self, transition, counter, message=None):
        self.transition = transition
        self.counter = counter
        super().__init__(message or f"transition {transition.index} is disabled: counter {counter} would go negative")


class ReplayError(VassError):
    def __init__(self, position, cause):
        self.position = position
        self.cause = cause
        super().__init__(f"step {position}: {cause}")


@dataclass(frozen=True)
class Transition:
    source: str
    label: str
    effect: tuple[int, ...]
    target: str
    index: int

    def __post_init__(self):
        object.__setattr__(self, "effect", tuple(self.effect))

    @property
    def is_eps(self) -> bool:
        return self.label == EPS

    def __str__(self):
        eff = ",".join(f"{d:+d}" if d else "0" for d in self.effect)
        return f"#{self.index} {self.source} -{self.label}[{eff}]-> {self.target}"


class Configuration(NamedTuple):
    """A control state together with the counter vector."""

    state: str
    counters: tuple

    def __str__(self):
        return f"({self.state},{format_vector(self.counters)})"


def format_vector(vec) -> str:
    return "[" + ",".join("omega" if v == float("inf") else str(v) for v in vec) + "]"


@dataclass(frozen=True)
class Vass:
    name: str
    dim: int
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    accepting: frozenset
    transitions: tuple[Transition, ...]
    semantics: str = COVER
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _stateset: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        index: dict = {}
        for t in self.transitions:
            index.setdefault((t.source, t.label), []).append(t)
            index.setdefault(t.source, []).append(t)
        object.__setattr__(self, "_index", {k: tuple(v) for k, v in index.items()})
        object.__setattr__(self, "_stateset", frozenset(self.states))

    def __hash__(self):
        return hash((self.name, self.dim, self.alphabet, self.states, self.initial,
                     self.accepting, self.transitions, self.semantics))

    # -- convenience -------------------------------------------------------
    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim

    @property
    def initial_config(self) -> Configuration:
        return Configuration(self.initial, self.zero)

    @property
    def has_eps(self) -> bool:
        return any(t.label == EPS for t in self.transitions)

    @property
    def norm(self) -> int:
        """Largest absolute counter effect over all transitions."""
        return max((abs(d) for t in self.transitions for d in t.effect), default=0)

    def outgoing(self, state: str, label: str | None = None) -> tuple[Transition, ...]:
        """Transitions leaving ``state`` (reading ``label`` if given), in declaration order."""
        key = state if label is None else (state, label)
        return self._index.get(key, ())

    def replace(self, **changes) -> "Vass":
        fields = dict(name=self.name, dim=self.dim, alphabet=self.alphabet, states=self.states,
                      initial=self.initial, accepting=self.accepting,
                      transitions=self.transitions, semantics=self.semantics)
        fields.update(changes)
        return Vass(**fields)


def make_vass(name, dim, alphabet, states, initial, accepting, transitions, semantics=COVER) -> Vass:
    """Build a Vass from ``(source, label, effect, target)`` tuples.

    Indices are assigned in the order given.  Effects may be a single int
    when ``dim == 1``.
    """
    ts = []
    for i, (src, label, eff, dst) in enumerate(transitions):
        if isinstance(eff, int):
            eff = (eff,)
        ts.append(Transition(src, label, tuple(eff), dst, i))
    return Vass(name, dim, tuple(alphabet), tuple(states), initial, frozenset(accepting), tuple(ts), semantics)


def validate(vass: Vass) -> list[str]:
    """Return a list of human-readable invariant violations (empty if valid)."""
    problems = []
    if vass.dim < 0:
        problems.append(f"dimension {vass.dim} is negative")
    if vass.semantics not in SEMANTICS:
        problems.append(f"unknown semantics {vass.semantics!r}")
    seen = set()
    for letter in vass.alphabet:
        if letter == EPS:
            problems.append(f"alphabet contains the reserved silent label {EPS}")
        elif not letter or any(ch.isspace() for ch in letter):
            problems.append(f"alphabet letter {letter!r} is empty or contains whitespace")
        if letter in seen:
            problems.append(f"alphabet letter {letter!r} declared twice")
        seen.add(letter)
    declared = set()
    for q in vass.states:
        if q in declared:
            problems.append(f"state {q!r} declared twice")
        declared.add(q)
    if vass.initial not in declared:
        problems.append(f"initial state {vass.initial!r} is not declared")
    for q in sorted(vass.accepting - declared):
        problems.append(f"accepting state {q!r} is not declared")
    letters = set(vass.alphabet)
    for pos, t in enumerate(vass.transitions):
        where = f"transition {pos}"
        if t.index != pos:
            problems.append(f"{where}: index {t.index} does not match its position")
        for end in (t.source, t.target):
            if end not in declared:
                problems.append(f"{where}: references undeclared state {end!r}")
        if t.label != EPS and t.label not in letters:
            problems.append(f"{where}: label {t.label!r} is not in the alphabet")
        if len(t.effect) != vass.dim:
            problems.append(f"{where}: effect has length {len(t.effect)}, expected dimension {vass.dim}")
    return problems


def _check_state(vass: Vass, state: str) -> None:
    if state not in vass._stateset:
        raise UnknownStateError(state)


def first_negative(counters, effect):
    """Index of the first counter that ``effect`` drives below zero, or None."""
    for i, (c, d) in enumerate(zip(counters, effect)):
        if c + d < 0:
            return i
    return None


def enabled(vass: Vass, config: Configuration, label: str) -> list[Transition]:
    """Transitions from ``config`` reading ``label`` that keep counters non-negative."""
    _check_state(vass, config.state)
    counters = config.counters
    return [t for t in vass.outgoing(config.state, label) if first_negative(counters, t.effect) is None]


def step(config: Configuration, t: Transition) -> Configuration:
    """Unchecked successor; callers must know ``t`` is enabled."""
    return Configuration(t.target, tuple(c + d for c, d in zip(config.counters, t.effect)))


def apply(vass: Vass, config: Configuration, t: Transition) -> Configuration:
    _check_state(vass, config.state)
    if t.source != config.state:
        raise DisabledTransitionError(
            t, None, f"transition {t.index} leaves {t.source!r}, not {config.state!r}")
    bad = first_negative(config.counters, t.effect)
    if bad is not None:
        raise DisabledTransitionError(t, bad)
    return step(config, t)


@dataclass(frozen=True)
class Run:
    start: Configuration
    steps: tuple = ()

    @property
    def end(self) -> Configuration:
        return self.steps[-1][1] if self.steps else self.start

    @property
    def transitions(self) -> tuple[Transition, ...]:
        return tuple(t for t, _ in self.steps)

    @property
    def word(self) -> tuple[str, ...]:
        return tuple(t.label for t, _ in self.steps if t.label != EPS)

    def extend(self, vass: Vass, transitions: Iterable[Transition]) -> "Run":
        steps = list(self.steps)
        config = self.end
        for t in transitions:
            config = apply(vass, config, t)
            steps.append((t, config))
        return Run(self.start, tuple(steps))

    def __len__(self):
        return len(self.steps)


def replay(vass: Vass, transitions: Sequence[Transition], start: Configuration | None = None) -> Run:
    """Validate a transition sequence from ``start`` (default: initial, zero counters)."""
    config = start if start is not None else vass.initial_config
    begin = config
    steps = []
    for pos, t in enumerate(transitions):
        try:
            config = apply(vass, config, t)
        except DisabledTransitionError as exc:
            raise ReplayError(pos, exc) from exc
        steps.append((t, config))
    return Run(begin, tuple(steps))


def is_accepting(vass: Vass, config: Configuration) -> bool:
    if config.state not in vass.accepting:
        return False
    if vass.semantics == REACH:
        return all(c == 0 for c in config.counters)
    return True


def as_word(word) -> tuple[str, ...]:
    """Normalise a word.

    Strings containing whitespace are split on it (multi-character letters
    such as ``inc1``); other strings are read one character per letter.
    """
    if isinstance(word, str):
        return tuple(word.split()) if any(ch.isspace() for ch in word) else tuple(word)
    return tuple(word)


def format_word(word) -> str:
    return " ".join(word) if word else EPS
