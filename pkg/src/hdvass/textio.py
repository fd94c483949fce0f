"""Line-based text format for VASS and two-counter machines.

VASS files, one directive per line::

    vass anbn
    dim 1
    semantics reach
    alphabet a b
    state q0 initial accepting
    state q1 accepting
    trans q0 a +1 q0
    trans q0 b -1 q1
    trans q1 b -1 q1

Two-counter machine files::

    2cm halt
    state s initial
    state t
    state h halting
    trans s inc1 t
    trans t ztest2 h

A line whose first non-blank character is ``#`` is a comment.  Comments
are whole-line only because ``#`` is an ordinary letter in several
languages (end markers).
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import COVER, EPS, REACH, Transition, Vass, VassError, format_vector
from .minsky import OPS, TwoCounterMachine, check_2cm_determinism


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(VassError):
    def __init__(self, message, span: SourceSpan):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}")


_SEMANTICS = {"cover": COVER, "reach": REACH}


def _tokens(text):
    """Yield ``(line_no, [(column, token), ...])`` for every non-comment line."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.lstrip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((col + 1, tok))
            col += len(tok)
        yield lineno, toks


def _int(tok, lineno, col, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer {what}, got {tok!r}", SourceSpan(lineno, col)) from None


def parse_vass(text: str) -> Vass:
    name = None
    dim = None
    semantics = None
    alphabet = None
    states: list[str] = []
    state_spans: dict[str, SourceSpan] = {}
    initial = None
    accepting: set[str] = set()
    raw_trans = []
    last_span = SourceSpan(1, 1)

    for lineno, toks in _tokens(text):
        col, head = toks[0]
        span = SourceSpan(lineno, col)
        last_span = span
        args = toks[1:]
        if name is None:
            if head != "vass" or len(args) != 1:
                raise ParseError("missing vass header", span)
            name = args[0][1]
            continue
        if head == "vass":
            raise ParseError("duplicate vass header", span)
        elif head == "dim":
            if dim is not None:
                raise ParseError("dimension declared twice", span)
            if len(args) != 1:
                raise ParseError("dim takes exactly one argument", span)
            dim = _int(args[0][1], lineno, args[0][0], "dimension")
            if dim < 0:
                raise ParseError("dimension must be non-negative", SourceSpan(lineno, args[0][0]))
        elif head == "semantics":
            if semantics is not None:
                raise ParseError("semantics declared twice", span)
            if len(args) != 1 or args[0][1] not in _SEMANTICS:
                raise ParseError("semantics must be 'cover' or 'reach'", span)
            semantics = _SEMANTICS[args[0][1]]
        elif head == "alphabet":
            if alphabet is not None:
                raise ParseError("alphabet declared twice", span)
            alphabet = []
            for c, letter in args:
                if letter == EPS:
                    raise ParseError(f"{EPS} cannot be an alphabet letter", SourceSpan(lineno, c))
                if letter in alphabet:
                    raise ParseError(f"letter {letter!r} declared twice", SourceSpan(lineno, c))
                alphabet.append(letter)
        elif head == "state":
            if not args:
                raise ParseError("state needs an id", span)
            c, q = args[0]
            if q in state_spans:
                raise ParseError(f"duplicate state {q!r}", SourceSpan(lineno, c))
            states.append(q)
            state_spans[q] = SourceSpan(lineno, c)
            for fc, flag in args[1:]:
                if flag == "initial":
                    if initial is not None:
                        raise ParseError(f"second initial state {q!r} (already {initial!r})", SourceSpan(lineno, fc))
                    initial = q
                elif flag == "accepting":
                    accepting.add(q)
                else:
                    raise ParseError(f"unknown state flag {flag!r}", SourceSpan(lineno, fc))
        elif head == "trans":
            if dim is None:
                raise ParseError("trans before dim", span)
            if alphabet is None:
                raise ParseError("trans before alphabet", span)
            if len(args) != dim + 3:
                raise ParseError(f"trans expects {dim} effect entries for dimension {dim}, got {len(args) - 3}", span)
            (sc, src), (lc, label) = args[0], args[1]
            if label != EPS and label not in alphabet:
                raise ParseError(f"letter {label!r} is not in the alphabet", SourceSpan(lineno, lc))
            effect = tuple(_int(tok, lineno, c, "effect") for c, tok in args[2:-1])
            dc, dst = args[-1]
            raw_trans.append((src, label, effect, dst, SourceSpan(lineno, sc), SourceSpan(lineno, dc)))
        else:
            raise ParseError(f"unknown directive {head!r}", span)

    if name is None:
        raise ParseError("missing vass header", SourceSpan(1, 1))
    if dim is None:
        raise ParseError("missing dim directive", last_span)
    if semantics is None:
        raise ParseError("missing semantics directive", last_span)
    if alphabet is None:
        raise ParseError("missing alphabet directive", last_span)
    if initial is None:
        raise ParseError("no initial state", last_span)
    transitions = []
    for i, (src, label, effect, dst, sspan, dspan) in enumerate(raw_trans):
        if src not in state_spans:
            raise ParseError(f"undeclared state {src!r}", sspan)
        if dst not in state_spans:
            raise ParseError(f"undeclared state {dst!r}", dspan)
        transitions.append(Transition(src, label, effect, dst, i))
    return Vass(name, dim, tuple(alphabet), tuple(states), initial, frozenset(accepting),
                tuple(transitions), semantics)


def _fmt_delta(d: int) -> str:
    return f"{d:+d}" if d else "0"


def serialize_vass(vass: Vass) -> str:
    lines = [f"vass {vass.name}", f"dim {vass.dim}",
             f"semantics {vass.semantics}",
             " ".join(["alphabet", *vass.alphabet])]
    for q in vass.states:
        flags = []
        if q == vass.initial:
            flags.append("initial")
        if q in vass.accepting:
            flags.append("accepting")
        lines.append(" ".join(["state", q, *flags]))
    for t in vass.transitions:
        lines.append(" ".join(["trans", t.source, t.label, *map(_fmt_delta, t.effect), t.target]))
    return "\n".join(lines) + "\n"


def parse_2cm(text: str) -> TwoCounterMachine:
    name = None
    states: list[str] = []
    spans: dict[str, SourceSpan] = {}
    initial = halting = None
    raw = []
    last = SourceSpan(1, 1)
    for lineno, toks in _tokens(text):
        col, head = toks[0]
        span = last = SourceSpan(lineno, col)
        args = toks[1:]
        if name is None:
            if head != "2cm" or len(args) != 1:
                raise ParseError("missing 2cm header", span)
            name = args[0][1]
        elif head == "state":
            if not args:
                raise ParseError("state needs an id", span)
            c, q = args[0]
            if q in spans:
                raise ParseError(f"duplicate state {q!r}", SourceSpan(lineno, c))
            states.append(q)
            spans[q] = SourceSpan(lineno, c)
            for fc, flag in args[1:]:
                if flag == "initial":
                    if initial is not None:
                        raise ParseError(f"second initial state {q!r}", SourceSpan(lineno, fc))
                    initial = q
                elif flag == "halting":
                    if halting is not None:
                        raise ParseError(f"second halting state {q!r}", SourceSpan(lineno, fc))
                    halting = q
                else:
                    raise ParseError(f"unknown state flag {flag!r}", SourceSpan(lineno, fc))
        elif head == "trans":
            if len(args) != 3:
                raise ParseError("trans expects: trans <src> <op> <dst>", span)
            (sc, src), (oc, op), (dc, dst) = args
            if op not in OPS:
                raise ParseError(f"unknown operation {op!r}", SourceSpan(lineno, oc))
            raw.append((src, op, dst, SourceSpan(lineno, sc), SourceSpan(lineno, dc)))
        else:
            raise ParseError(f"unknown directive {head!r}", span)
    if name is None:
        raise ParseError("missing 2cm header", SourceSpan(1, 1))
    if initial is None:
        raise ParseError("no initial state", last)
    if halting is None:
        raise ParseError("no halting state", last)
    transitions = []
    for src, op, dst, sspan, dspan in raw:
        if src not in spans:
            raise ParseError(f"undeclared state {src!r}", sspan)
        if dst not in spans:
            raise ParseError(f"undeclared state {dst!r}", dspan)
        transitions.append((src, op, dst))
    machine = TwoCounterMachine(name, tuple(states), initial, halting, tuple(transitions))
    bad = check_2cm_determinism(machine)
    if bad is not None:
        state, ops = bad
        first = next(sp for (s, _o, _d, sp, _) in raw if s == state)
        raise ParseError(f"state {state!r} is nondeterministic: operations {' '.join(ops)}", first)
    return machine


def serialize_2cm(machine: TwoCounterMachine) -> str:
    lines = [f"2cm {machine.name}"]
    for q in machine.states:
        flags = (["initial"] if q == machine.initial else []) + (["halting"] if q == machine.halting else [])
        lines.append(" ".join(["state", q, *flags]))
    for src, op, dst in machine.transitions:
        lines.append(f"trans {src} {op} {dst}")
    return "\n".join(lines) + "\n"


def parse_homomorphism(text: str):
    """Parse ``letter -> word`` lines into an ordered mapping.

    Word letters are whitespace separated; ``@eps`` spells the empty word.
    """
    mapping = {}
    for lineno, toks in _tokens(text):
        words = [tok for _, tok in toks]
        if len(words) < 3 or words[1] != "->":
            raise ParseError("expected: <letter> -> <word>", SourceSpan(lineno, toks[0][0]))
        letter = words[0]
        if letter in mapping:
            raise ParseError(f"letter {letter!r} mapped twice", SourceSpan(lineno, toks[0][0]))
        image = words[2:]
        if image == [EPS]:
            image = []
        elif EPS in image:
            raise ParseError(f"{EPS} must stand alone", SourceSpan(lineno, toks[2][0]))
        mapping[letter] = tuple(image)
    return mapping


def format_km_tree(tree) -> str:
    """One node per line: ``state vector parent-index via-transition-index``."""
    lines = []
    for node in tree.nodes:
        parent = "-" if node.parent is None else str(node.parent)
        via = "-" if node.via is None else str(node.via.index)
        lines.append(f"{node.state} {format_vector(node.vector)} {parent} {via}")
    return "\n".join(lines) + "\n"
