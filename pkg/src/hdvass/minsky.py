"""Deterministic two-counter machines and the VASS gadgets that weakly simulate them.

A VASS cannot test a counter for zero, so a zero-test ``ztest_i`` is
simulated by a zero-effect move plus a "cheat" move that decrements
counter ``i`` into a universal accepting sink.  The cheat is enabled
exactly when the zero-test would have been wrong.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .core import COVER, EPS, REACH, Transition, Vass, VassError

OPS = ("inc1", "inc2", "dec1", "dec2", "ztest1", "ztest2")
OP_EFFECT = {
    "inc1": (1, 0), "inc2": (0, 1),
    "dec1": (-1, 0), "dec2": (0, -1),
    "ztest1": (0, 0), "ztest2": (0, 0),
}
SINK = "__u"
COUNTDOWN = "__c"
BRANCH = "@go"
HALT_LETTER = "h"
ESCAPE_LETTER = "b"
COUNT_LETTER = "a"

HALTED = "halted"
RUNNING = "running"
STUCK = "stuck"


def _counter(op: str) -> int:
    return int(op[-1]) - 1


@dataclass(frozen=True)
class TwoCounterMachine:
    name: str
    states: tuple[str, ...]
    initial: str
    halting: str
    transitions: tuple[tuple[str, str, str], ...]

    def outgoing(self, state: str) -> list[tuple[str, str, str]]:
        return [t for t in self.transitions if t[0] == state]


def check_2cm_determinism(machine: TwoCounterMachine):
    """Return ``(state, ops)`` for the first nondeterministic state, else None.

    A state may have one outgoing transition, or exactly the pair
    ``{ztest_i, dec_i}`` on the same counter.
    """
    for q in machine.states:
        ops = [op for _, op, _ in machine.outgoing(q)]
        if len(ops) <= 1:
            continue
        if len(ops) == 2 and {o[:-1] for o in ops} == {"ztest", "dec"} and ops[0][-1] == ops[1][-1]:
            continue
        return q, ops
    return None


@dataclass(frozen=True)
class FaithfulRun:
    """The unique run of a machine, cut off after ``max_steps`` operations."""

    ops: tuple[str, ...]
    configs: tuple[tuple[str, int, int], ...]
    status: str
    max_steps: int

    @property
    def halted(self) -> bool:
        return self.status == HALTED

    def correct(self, k: int) -> tuple[str, ...]:
        return self.ops[:k]

    def x(self, k: int) -> int:
        """One plus the sum of both counters after ``k`` operations."""
        _, c1, c2 = self.configs[k]
        return 1 + c1 + c2

    def incorrect(self, k: int):
        """``correct(k-1)`` followed by the wrong zero-test, when step ``k`` is a decrement."""
        if k < 1 or k > len(self.ops) or not self.ops[k - 1].startswith("dec"):
            return None
        return self.ops[:k - 1] + ("ztest" + self.ops[k - 1][-1],)


def run_2cm(machine: TwoCounterMachine, max_steps: int) -> FaithfulRun:
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    state, c = machine.initial, [0, 0]
    ops: list[str] = []
    configs = [(state, 0, 0)]
    status = RUNNING
    while True:
        if state == machine.halting:
            status = HALTED
            break
        if len(ops) >= max_steps:
            break
        move = None
        for _, op, dst in machine.outgoing(state):
            i = _counter(op)
            if op.startswith("inc") or (op.startswith("dec") and c[i] > 0) or (op.startswith("ztest") and c[i] == 0):
                move = (op, dst)
                break
        if move is None:
            status = STUCK
            break
        op, state = move
        i = _counter(op)
        c[i] += OP_EFFECT[op][i]
        ops.append(op)
        configs.append((state, c[0], c[1]))
    return FaithfulRun(tuple(ops), tuple(configs), status, max_steps)


class _Builder:
    def __init__(self):
        self.transitions: list[Transition] = []

    def add(self, src, label, effect, dst):
        self.transitions.append(Transition(src, label, tuple(effect), dst, len(self.transitions)))


def _simulation(b: _Builder, machine: TwoCounterMachine, rename=lambda q: q):
    for src, op, dst in machine.transitions:
        b.add(rename(src), op, OP_EFFECT[op], rename(dst))
        if op.startswith("ztest"):
            cheat = [0, 0]
            cheat[_counter(op)] = -1
            b.add(rename(src), op, cheat, rename(SINK))


def _sink_loops(b: _Builder, letters, semantics, sink, drain_on_letters=False):
    for letter in letters:
        b.add(sink, letter, (0, 0), sink)
        if semantics == REACH and drain_on_letters:
            b.add(sink, letter, (-1, 0), sink)
            b.add(sink, letter, (0, -1), sink)
    if semantics == REACH and not drain_on_letters:
        b.add(sink, EPS, (-1, 0), sink)
        b.add(sink, EPS, (0, -1), sink)


def _check_semantics(semantics):
    if semantics not in (COVER, REACH):
        raise VassError(f"unknown semantics {semantics!r}")


def _warn_nonzero_halt(machine, semantics, max_steps=10_000):
    if semantics != REACH:
        return
    run = run_2cm(machine, max_steps)
    if run.halted and run.configs[-1][1:] != (0, 0):
        warnings.warn(f"machine {machine.name!r} halts with counters {run.configs[-1][1:]}; "
                      "under reachability semantics the halting state never accepts", stacklevel=3)


def weak_simulate(machine: TwoCounterMachine, semantics: str = COVER) -> Vass:
    """The shared gadget core over ``OPS + (h,)``; accepting: the halting state and the sink."""
    _check_semantics(semantics)
    b = _Builder()
    _simulation(b, machine)
    alphabet = OPS + (HALT_LETTER,)
    _sink_loops(b, alphabet, semantics, SINK)
    return Vass(f"{machine.name}_sim", 2, alphabet, machine.states + (SINK,), machine.initial,
                frozenset({machine.halting, SINK}), tuple(b.transitions), semantics)


def compile_inclusion_gadget(machine: TwoCounterMachine, semantics: str = COVER,
                             halt_loop: bool = True) -> tuple[Vass, Vass]:
    """Two HD 2-VASS with L(A) included in L(B) iff the machine never halts.

    ``A`` additionally reads ``h`` at its halting state; ``B`` can escape to
    its sink on ``b`` from every state.
    """
    _check_semantics(semantics)
    _warn_nonzero_halt(machine, semantics)
    alphabet = OPS + (ESCAPE_LETTER, HALT_LETTER)
    states = machine.states + (SINK,)
    accepting = frozenset({machine.halting, SINK})

    a = _Builder()
    _simulation(a, machine)
    _sink_loops(a, OPS + (HALT_LETTER,), semantics, SINK)
    if halt_loop:
        a.add(machine.halting, HALT_LETTER, (0, 0), machine.halting)
    vass_a = Vass(f"{machine.name}_A", 2, alphabet, states, machine.initial, accepting,
                  tuple(a.transitions), semantics)

    bb = _Builder()
    _simulation(bb, machine)
    _sink_loops(bb, OPS + (HALT_LETTER, ESCAPE_LETTER), semantics, SINK)
    for q in machine.states:
        bb.add(q, ESCAPE_LETTER, (0, 0), SINK)
    vass_b = Vass(f"{machine.name}_B", 2, alphabet, states, machine.initial, accepting,
                  tuple(bb.transitions), semantics)
    return vass_a, vass_b


def compile_hdness_gadget(machine: TwoCounterMachine, semantics: str = COVER,
                          halt_loop: bool = True) -> Vass:
    """Fresh initial state branching on ``@go`` into the two inclusion gadgets.

    The result is history-deterministic iff L(A) is included in L(B).
    """
    vass_a, vass_b = compile_inclusion_gadget(machine, semantics, halt_loop)
    start = "__s"
    transitions = [Transition(start, BRANCH, (0, 0), "A." + vass_a.initial, 0),
                   Transition(start, BRANCH, (0, 0), "B." + vass_b.initial, 1)]
    states = [start]
    accepting = set()
    for tag, part in (("A.", vass_a), ("B.", vass_b)):
        states.extend(tag + q for q in part.states)
        accepting.update(tag + q for q in part.accepting)
        for t in part.transitions:
            transitions.append(Transition(tag + t.source, t.label, t.effect, tag + t.target, len(transitions)))
    return Vass(f"{machine.name}_hd", 2, vass_a.alphabet + (BRANCH,), tuple(states), start,
                frozenset(accepting), tuple(transitions), semantics)


def compile_regularity_gadget(machine: TwoCounterMachine, semantics: str = COVER) -> Vass:
    """HD 2-VASS whose language is regular iff the machine's run is finite-state.

    From every simulation state an ``a`` enters a countdown state that keeps
    reading ``a`` while it can decrement one of the counters.  Under
    coverability the simulation states accept too (zero trailing ``a``);
    under reachability the countdown must drain both counters exactly and
    the sink drains one counter per letter.
    """
    _check_semantics(semantics)
    b = _Builder()
    _simulation(b, machine)
    for q in machine.states:
        b.add(q, COUNT_LETTER, (0, 0), COUNTDOWN)
    b.add(COUNTDOWN, COUNT_LETTER, (-1, 0), COUNTDOWN)
    b.add(COUNTDOWN, COUNT_LETTER, (0, -1), COUNTDOWN)
    alphabet = OPS + (COUNT_LETTER,)
    _sink_loops(b, alphabet, semantics, SINK, drain_on_letters=True)
    if semantics == COVER:
        accepting = frozenset(machine.states) | {COUNTDOWN, SINK}
    else:
        accepting = frozenset({COUNTDOWN, SINK})
    return Vass(f"{machine.name}_reg", 2, alphabet, machine.states + (COUNTDOWN, SINK),
                machine.initial, accepting, tuple(b.transitions), semantics)
