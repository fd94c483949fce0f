"""Language-level constructions on VASS.

Each function returns a fresh ``Vass`` (or a finite union wrapper); inputs
are never modified.  Fresh state names start with ``__``; product states
are spelled ``(p,q)`` and delayed-credit states ``q<v1,...>``.  When silent
moves can pump a counter without bound, the elimination switches to a
counter-free copy whose states end in ``!``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import COVER, EPS, REACH, Transition, Vass, VassError, as_word
from .semantics import DEFAULT_OPTIONS, SearchOptions, VassAcceptor, member

SINK = "__sink"


def _fresh(name: str, taken) -> str:
    if name not in taken:
        return name
    i = 1
    while f"{name}{i}" in taken:
        i += 1
    return f"{name}{i}"


class _Emitter:
    def __init__(self):
        self.transitions: list[Transition] = []
        self.seen: set = set()

    def add(self, src, label, effect, dst):
        key = (src, label, tuple(effect), dst)
        if key in self.seen:
            return
        self.seen.add(key)
        self.transitions.append(Transition(src, label, tuple(effect), dst, len(self.transitions)))


def check_deterministic(vass: Vass) -> bool:
    """No silent moves and at most one transition per (state, letter)."""
    pairs = set()
    for t in vass.transitions:
        if t.label == EPS or (t.source, t.label) in pairs:
            return False
        pairs.add((t.source, t.label))
    return True


def complete(vass: Vass) -> Vass:
    """Give every (state, letter) pair a transition that is enabled at every counter value.

    Missing pairs get a zero-effect move to a fresh non-accepting sink.  The
    input is returned as is when nothing is missing.
    """
    missing = []
    for q in vass.states:
        for letter in vass.alphabet:
            if not any(all(d >= 0 for d in t.effect) for t in vass.outgoing(q, letter)):
                missing.append((q, letter))
    if not missing:
        return vass
    sink = _fresh(SINK, set(vass.states))
    zero = vass.zero
    ts = list(vass.transitions)
    for q, letter in missing:
        ts.append(Transition(q, letter, zero, sink, len(ts)))
    for letter in vass.alphabet:
        ts.append(Transition(sink, letter, zero, sink, len(ts)))
    return vass.replace(states=vass.states + (sink,), transitions=tuple(ts))


def _prepare_operand(vass: Vass) -> Vass:
    if vass.has_eps:
        if vass.dim == 1 and vass.semantics == COVER:
            vass = eliminate_epsilon_1hd(vass)
        else:
            raise VassError(f"{vass.name}: products need silent-free inputs "
                            "(silent moves can only be removed from 1-dim coverability systems)")
    return complete(vass)


def _product(a: Vass, b: Vass, union: bool) -> Vass:
    if set(a.alphabet) != set(b.alphabet):
        raise VassError(f"alphabets differ: {list(a.alphabet)} vs {list(b.alphabet)}")
    if a.semantics != b.semantics:
        raise VassError(f"semantics differ: {a.semantics} vs {b.semantics}")
    a, b = _prepare_operand(a), _prepare_operand(b)
    ka, kb = a.dim, b.dim

    def name(p, q):
        return f"({p},{q})"

    states = [name(p, q) for p in a.states for q in b.states]
    em = _Emitter()
    for p in a.states:
        for q in b.states:
            for letter in a.alphabet:
                for ta in a.outgoing(p, letter):
                    for tb in b.outgoing(q, letter):
                        em.add(name(p, q), letter, ta.effect + tb.effect, name(ta.target, tb.target))
    accepting = set()
    drains = []
    for p in a.states:
        for q in b.states:
            fa, fb = p in a.accepting, q in b.accepting
            if not union:
                if fa and fb:
                    accepting.add(name(p, q))
            elif a.semantics == COVER:
                if fa or fb:
                    accepting.add(name(p, q))
            else:
                if fa and fb:
                    accepting.add(name(p, q))
                if fa:
                    drains.append((name(p, q), "A"))
                if fb:
                    drains.append((name(p, q), "B"))
    if drains:
        # Reachability union: after the last letter, silently empty the
        # counters of the component that did not accept.
        zero = (0,) * (ka + kb)
        for side in ("A", "B"):
            if not any(s == side for _, s in drains):
                continue
            d = _fresh(f"__drain{side}", set(states))
            states.append(d)
            accepting.add(d)
            for src, s in drains:
                if s == side:
                    em.add(src, EPS, zero, d)
            others = range(ka, ka + kb) if side == "A" else range(ka)
            for i in others:
                eff = [0] * (ka + kb)
                eff[i] = -1
                em.add(d, EPS, eff, d)
    op = "union" if union else "inter"
    return Vass(f"{a.name}_{op}_{b.name}", ka + kb, a.alphabet, tuple(states), name(a.initial, b.initial),
                frozenset(accepting), tuple(em.transitions), a.semantics)


def product_union(a: Vass, b: Vass) -> Vass:
    """Synchronised product accepting when either component accepts.

    Under reachability a component's acceptance also needs the other
    component's counters at zero; the product therefore gets two accepting
    drain states entered silently at the end of the word.
    """
    return _product(a, b, union=True)


def product_intersection(a: Vass, b: Vass) -> Vass:
    return _product(a, b, union=False)


@dataclass(frozen=True)
class Homomorphism:
    mapping: tuple  # ((letter, image), ...) in declaration order

    @classmethod
    def of(cls, mapping) -> "Homomorphism":
        items = mapping.items() if hasattr(mapping, "items") else mapping
        return cls(tuple((x, tuple(as_word(img)) if isinstance(img, str) else tuple(img)) for x, img in items))

    @property
    def source_alphabet(self) -> tuple:
        return tuple(x for x, _ in self.mapping)

    @property
    def target_letters(self) -> tuple:
        seen = []
        for _, img in self.mapping:
            for y in img:
                if y not in seen:
                    seen.append(y)
        return tuple(seen)

    @property
    def max_image_length(self) -> int:
        return max((len(img) for _, img in self.mapping), default=0)

    def image(self, letter):
        return dict(self.mapping)[letter]

    def apply(self, word) -> tuple:
        table = dict(self.mapping)
        return tuple(y for x in as_word(word) for y in table[x])


def _paths(vass: Vass, q: str, image):
    """Transition sequences from ``q`` spelling ``image`` as ``(target, prefix_min, total)``, deduplicated."""
    out = []
    seen = set()
    zero = vass.zero

    def go(state, pos, low, total):
        if pos == len(image):
            key = (state, low, total)
            if key not in seen:
                seen.add(key)
                out.append(key)
            return
        for t in vass.outgoing(state, image[pos]):
            tot = tuple(a + b for a, b in zip(total, t.effect))
            go(t.target, pos + 1, tuple(min(a, b) for a, b in zip(low, tot)), tot)

    go(q, 0, zero, zero)
    return out


def _credit_name(q, v):
    return f"{q}<{','.join(map(str, v))}>"


def inverse_hom(vass: Vass, h) -> Vass:
    """Automaton for the words whose image under ``h`` is accepted.

    States carry the positive part of a path's effect as delayed credit:
    a letter ``x`` whose image leads from ``q`` to ``q2`` with prefix minima
    ``e`` and total ``t`` becomes a move from ``q<v>`` with effect ``e + v``
    to ``q2<t - e>``.  Credit is released on the next move.
    """
    if not isinstance(h, Homomorphism):
        h = Homomorphism.of(h)
    if vass.has_eps:
        raise VassError("inverse homomorphism needs a silent-free automaton")
    letters = set(vass.alphabet)
    for x, img in h.mapping:
        for y in img:
            if y not in letters:
                raise VassError(f"image of {x!r} uses {y!r}, which is not in the alphabet of {vass.name}")
    zero = vass.zero
    start = (vass.initial, zero)
    order = [start]
    index = {start: 0}
    em = _Emitter()
    cache: dict = {}
    i = 0
    while i < len(order):
        q, v = order[i]
        i += 1
        for x, img in h.mapping:
            key = (q, x)
            if key not in cache:
                cache[key] = _paths(vass, q, img)
            for target, low, total in cache[key]:
                nxt = (target, tuple(t - e for t, e in zip(total, low)))
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                em.add(_credit_name(q, v), x, tuple(e + c for e, c in zip(low, v)), _credit_name(*nxt))
    accepting = frozenset(_credit_name(q, v) for q, v in order
                          if q in vass.accepting and (vass.semantics == COVER or v == zero))
    return Vass(f"{vass.name}_inv", vass.dim, h.source_alphabet, tuple(_credit_name(q, v) for q, v in order),
                _credit_name(*start), accepting, tuple(em.transitions), vass.semantics)


# ---------------------------------------------------------------------------
# silent-move elimination for one-counter coverability systems

def _eps_walks(vass: Vass, q: str, limit: int):
    """Simple silent paths from ``q`` (the empty one included) as ``(end, prefix_min, total)``."""
    out = []

    def go(state, visited, low, total):
        out.append((state, low, total))
        if len(visited) > limit:
            return
        for t in vass.outgoing(state, EPS):
            if t.target in visited:
                continue
            tot = total + t.effect[0]
            go(t.target, visited | {t.target}, min(low, tot), tot)

    go(q, frozenset({q}), 0, 0)
    return out


def _pump_need(vass: Vass, s: str, limit: int):
    """Least counter value from which some positive silent cycle through ``s`` (length <= limit) runs, or None."""
    best = None

    def go(state, steps, low, total):
        nonlocal best
        if steps and state == s and total > 0:
            need = -low
            best = need if best is None else min(best, need)
        if steps >= limit:
            return
        for t in vass.outgoing(state, EPS):
            tot = total + t.effect[0]
            go(t.target, steps + 1, min(low, tot), tot)

    go(s, 0, 0, 0)
    return best


def _eps_graph_reach(vass: Vass, q: str):
    seen = [q]
    i = 0
    while i < len(seen):
        for t in vass.outgoing(seen[i], EPS):
            if t.target not in seen:
                seen.append(t.target)
        i += 1
    return seen


def eliminate_epsilon_1hd(vass: Vass) -> Vass:
    """Silent-free 1-dim coverability VASS with the same language.

    Every letter move is fused with the silent path that follows it; the
    positive part of the fused effect is kept as delayed credit in the
    state.  When the silent path can reach a positive silent cycle, the
    counter is unbounded from then on and the fused move enters a copy of
    the automaton whose moves all have effect 0.  Silent paths and cycles
    are explored up to ``len(states)`` steps.
    """
    if vass.dim != 1:
        raise VassError(f"silent-move elimination needs dimension 1, got {vass.dim}")
    if vass.semantics != COVER:
        raise VassError("silent-move elimination needs coverability semantics")
    if not vass.has_eps:
        return vass
    limit = len(vass.states)
    walks = {q: _eps_walks(vass, q, limit) for q in vass.states}
    need = {q: _pump_need(vass, q, limit) for q in vass.states}
    reach = {q: _eps_graph_reach(vass, q) for q in vass.states}

    def outcomes(q, d):
        """After an effect ``d`` landing in ``q``: credit outcomes and pumped copy entries."""
        credit, pumped = [], []
        for end, low, total in walks[q]:
            low_all = min(d, d + low)
            tot_all = d + total
            credit.append((end, low_all, tot_all))
            if need[end] is not None:
                pumped.append((end, min(low_all, tot_all - need[end])))
        return credit, pumped

    def copy_moves(r):
        moves = []
        for t in vass.outgoing(r):
            if t.label == EPS:
                continue
            for p in reach[t.target]:
                moves.append((t.label, p + "!"))
        return moves

    init = _fresh("__init", set(vass.states))
    order: list = []
    index: dict = {}

    def node(key):
        if key not in index:
            index[key] = len(order)
            order.append(key)
        return key

    def name(key):
        return init if key == "init" else (key if isinstance(key, str) else _credit_name(key[0], (key[1],)))

    em = _Emitter()
    accepting = set()

    def emit_from(src_key, q, v):
        """Moves of credit state ``q<v>`` written as leaving ``src_key``."""
        for t in vass.outgoing(q):
            if t.label == EPS:
                continue
            credit, pumped = outcomes(t.target, t.effect[0])
            for end, low, total in credit:
                e = min(low, 0)
                em.add(name(src_key), t.label, (v + e,), name(node((end, total - e))))
            for s, low in pumped:
                e = min(low, 0)
                for r in reach[s]:
                    em.add(name(src_key), t.label, (v + e,), name(node(r + "!")))

    start_credit, start_pumped = outcomes(vass.initial, 0)
    node("init")
    i = 0
    while i < len(order):
        key = order[i]
        i += 1
        if key == "init":
            for end, low, total in start_credit:
                if low >= 0:
                    if end in vass.accepting:
                        accepting.add(init)
                    emit_from("init", end, total)
            for s, low in start_pumped:
                if low >= 0:
                    for r in reach[s]:
                        if r in vass.accepting:
                            accepting.add(init)
                        for letter, dst in copy_moves(r):
                            em.add(init, letter, (0,), name(node(dst)))
        elif isinstance(key, str):
            r = key[:-1]
            if r in vass.accepting:
                accepting.add(key)
            for letter, dst in copy_moves(r):
                em.add(key, letter, (0,), name(node(dst)))
        else:
            q, v = key
            if q in vass.accepting:
                accepting.add(name(key))
            emit_from(key, q, v)
    return Vass(f"{vass.name}_noeps", 1, vass.alphabet, tuple(name(k) for k in order), init,
                frozenset(accepting), tuple(em.transitions), COVER)


def endmarker_cover_to_reach(vass: Vass, marker: str = "#") -> Vass:
    """Reachability VASS for ``L(vass) . marker``.

    Accepting states stop accepting and read ``marker`` into a fresh
    accepting drain that silently decrements any counter.
    """
    if vass.semantics != COVER:
        raise VassError("the end-marker transform expects coverability semantics")
    if marker in vass.alphabet or marker == EPS:
        raise VassError(f"marker {marker!r} collides with the alphabet")
    drain = _fresh("__drain", set(vass.states))
    zero = vass.zero
    ts = list(vass.transitions)
    for q in vass.states:
        if q in vass.accepting:
            ts.append(Transition(q, marker, zero, drain, len(ts)))
    for i in range(vass.dim):
        eff = [0] * vass.dim
        eff[i] = -1
        ts.append(Transition(drain, EPS, tuple(eff), drain, len(ts)))
    return Vass(f"{vass.name}_marked", vass.dim, vass.alphabet + (marker,), vass.states + (drain,),
                vass.initial, frozenset({drain}), tuple(ts), REACH)


# ---------------------------------------------------------------------------
# finite unions of deterministic VASS

class _UnionAcceptor:
    def __init__(self, parts, alphabet):
        self.parts = parts
        self.alphabet = alphabet

    def initial(self):
        return tuple(p.initial() for p in self.parts)

    def step(self, frontier, letter):
        return tuple(p.step(f, letter) for p, f in zip(self.parts, frontier))

    def verdict(self, frontier):
        vs = [p.verdict(f) for p, f in zip(self.parts, frontier)]
        if any(vs):
            return True
        return None if None in vs else False

    def dead(self, frontier):
        return all(p.dead(f) for p, f in zip(self.parts, frontier))


@dataclass(frozen=True)
class FsVass:
    """A finite union of deterministic VASS, accepting the union of their languages."""

    members: tuple
    alphabet: tuple

    def member(self, word, opts: SearchOptions = DEFAULT_OPTIONS) -> bool:
        return any(member(m, word, opts).accepted for m in self.members)

    def __call__(self, word) -> bool:
        return self.member(word)

    def acceptor(self, opts: SearchOptions = DEFAULT_OPTIONS):
        return _UnionAcceptor([VassAcceptor(m, opts) for m in self.members], self.alphabet)


def union_of_dvass(members, alphabet=None) -> FsVass:
    members = tuple(members)
    for m in members:
        if not check_deterministic(m):
            raise VassError(f"{m.name} is not deterministic")
    if members:
        first = members[0]
        for m in members[1:]:
            if set(m.alphabet) != set(first.alphabet):
                raise VassError(f"{m.name} has a different alphabet from {first.name}")
            if m.semantics != first.semantics:
                raise VassError(f"{m.name} has different semantics from {first.name}")
        if alphabet is None:
            alphabet = first.alphabet
    if alphabet is None:
        raise VassError("an empty union needs an explicit alphabet")
    return FsVass(members, tuple(alphabet))
