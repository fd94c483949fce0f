"""Catalogue of named languages, automata recognising them, and their resolvers.

Predicates are the source of truth: every automaton is checked against its
predicate by bounded equivalence.  Words are tuples of letters.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .core import COVER, EPS, REACH, Vass, VassError, as_word, first_negative, make_vass
from .resolvers import Resolver, by_preference, first_enabled, no_final_moves, positional

# ---------------------------------------------------------------------------
# predicates


@dataclass(frozen=True)
class NamedLanguage:
    name: str
    alphabet: tuple
    predicate: Callable
    description: str = ""

    def __call__(self, word) -> bool:
        return bool(self.predicate("".join(as_word(word))))


def _full(pattern):
    rx = re.compile(pattern)
    return lambda s: rx.fullmatch(s)


def _blocks(s, letters):
    """Split ``s`` into maximal runs if it matches ``letters[0]* letters[1]* ...``, else None."""
    pattern = "".join(f"({x}*)" for x in letters)
    m = re.fullmatch(pattern, s)
    return None if m is None else [len(g) for g in m.groups()]


def _not_dvass(s):
    if re.fullmatch("a*b*c", s):
        return True
    r = _blocks(s, "ab")
    return r is not None and r[1] <= r[0]


def _anbgen(s):
    r = _blocks(s, "ab")
    return r is not None and r[1] >= r[0]


def _anbgen_hash(s):
    return s.endswith("#") and _anbgen(s[:-1])


def _not_hdvass(s):
    trailing_b = len(s) - len(s.rstrip("b"))
    rest = s[:len(s) - trailing_b]
    preceding_a = len(rest) - len(rest.rstrip("a"))
    return trailing_b <= preceding_a


def _anblen(s):
    r = _blocks(s, "ab")
    return r is not None and r[1] <= r[0]


def _anbn(s):
    r = _blocks(s, "ab")
    return r is not None and r[0] == r[1]


def _must_vass_eps(s):
    m = re.fullmatch(r"(1[01]*)#(0*)#", s)
    return m is not None and len(m.group(2)) <= int(m.group(1), 2)


def _anblen_barrier(s):
    return s.endswith("#") and _anblen(s[:-1])


def _not_fsvass(s):
    i = 0
    while True:
        j = i
        while j < len(s) and s[j] == "a":
            j += 1
        n = j - i
        k = j
        while k < len(s) and s[k] == "b":
            k += 1
        m = k - j
        if n == 0 or m == 0 or m > n:
            return False
        if m < n:
            return k < len(s) and s[k] == "a"
        i = k
        if i == len(s):
            return False


def _anbn_astar(s):
    r = _blocks(s, "aba")
    return r is not None and r[0] == r[1]


def _not_runion(s):
    r = _blocks(s, "ab")
    return r is not None and (r[1] == r[0] or r[1] == 2 * r[0])


def _not_cunion(s):
    r = _blocks(s, "abc")
    return r is not None and (r[1] <= r[0] or r[2] <= r[0])


def _not_cint(s):
    r = _blocks(s, "abc")
    return r is not None and r[1] <= r[0] and r[2] <= r[0]


def _not_rint(s):
    r = _blocks(s, "abc")
    return r is not None and r[0] == r[1] == r[2]


PREDICATES = {
    "L_notDVASS": NamedLanguage("L_notDVASS", ("a", "b", "c"), _not_dvass, "a^n b^{<=n} + a* b* c"),
    "L_anbgen": NamedLanguage("L_anbgen", ("a", "b"), _anbgen, "a^n b^{>=n}"),
    "L_anbgen_hash": NamedLanguage("L_anbgen_hash", ("a", "b", "#"), _anbgen_hash, "a^n b^{>=n} #"),
    "L_notHDVASS": NamedLanguage("L_notHDVASS", ("a", "b"), _not_hdvass,
                                 "trailing b-run no longer than the a-run right before it"),
    "L_anblen": NamedLanguage("L_anblen", ("a", "b"), _anblen, "a^n b^{<=n}"),
    "L_anbn": NamedLanguage("L_anbn", ("a", "b"), _anbn, "a^n b^n"),
    "L_mustVASSe": NamedLanguage("L_mustVASSe", ("0", "1", "#"), _must_vass_eps, "bin(n) # 0^{<=n} #"),
    "L_anblenbarrier": NamedLanguage("L_anblenbarrier", ("a", "b", "#"), _anblen_barrier, "a^n b^{<=n} #"),
    "L_notFSVASS": NamedLanguage("L_notFSVASS", ("a", "b"), _not_fsvass,
                                 "balanced blocks a^n b^n (n>=1), then a^n b^m with 1<=m<n, then a, then anything"),
    "L_anbnastar": NamedLanguage("L_anbnastar", ("a", "b"), _anbn_astar, "a^n b^n a*"),
    "L_notrunion": NamedLanguage("L_notrunion", ("a", "b"), _not_runion, "a^n b^n + a^n b^{2n}"),
    "L_notcunion": NamedLanguage("L_notcunion", ("a", "b", "c"), _not_cunion,
                                 "a^n b^{<=n} c* + a^n b* c^{<=n}"),
    "L_notcint": NamedLanguage("L_notcint", ("a", "b", "c"), _not_cint, "a^n b^{<=n} c^{<=n}"),
    "L_notrint": NamedLanguage("L_notrint", ("a", "b", "c"), _not_rint, "a^n b^n c^n"),
}


def predicate(name: str) -> NamedLanguage:
    try:
        return PREDICATES[name]
    except KeyError:
        raise VassError(f"unknown language {name!r}") from None


# ---------------------------------------------------------------------------
# automata

def _a_not_dvass():
    return make_vass("notDVASS", 1, "abc", ["q1", "q2", "q3", "q4"], "q1", ["q1", "q2", "q4"], [
        ("q1", "a", 1, "q1"),
        ("q1", "b", -1, "q2"),
        ("q1", "b", 0, "q3"),
        ("q2", "b", -1, "q2"),
        ("q2", "b", 0, "q3"),
        ("q3", "b", 0, "q3"),
        ("q1", "c", 0, "q4"),
        ("q2", "c", 0, "q4"),
        ("q3", "c", 0, "q4"),
    ], COVER)


def _a_anbgen():
    return make_vass("anbgen", 1, "ab", ["qa", "qb"], "qa", ["qa", "qb"], [
        ("qa", "a", 1, "qa"),
        ("qa", "b", -1, "qb"),
        ("qa", "b", 0, "qb"),
        ("qb", "b", -1, "qb"),
        ("qb", "b", 0, "qb"),
    ], REACH)


def _a_not_hdvass():
    return make_vass("notHDVASS", 1, "ab", ["s0", "g", "p", "r"], "s0", ["s0", "p", "r"], [
        ("s0", "a", 0, "g"),
        ("s0", "b", 0, "g"),
        ("s0", "a", 1, "p"),
        ("g", "a", 0, "g"),
        ("g", "b", 0, "g"),
        ("g", "a", 1, "p"),
        ("p", "a", 1, "p"),
        ("p", "b", -1, "r"),
        ("r", "b", -1, "r"),
    ], COVER)


def _a_anblen():
    return make_vass("anblen", 1, "ab", ["qa", "qb"], "qa", ["qa", "qb"], [
        ("qa", "a", 1, "qa"),
        ("qa", "a", 0, "qa"),
        ("qa", "b", -1, "qb"),
        ("qb", "b", -1, "qb"),
    ], REACH)


def _a_anblen_cover():
    return make_vass("anblen_cover", 1, "ab", ["qa", "qb"], "qa", ["qa", "qb"], [
        ("qa", "a", 1, "qa"),
        ("qa", "b", -1, "qb"),
        ("qb", "b", -1, "qb"),
    ], COVER)


def _a_anbn():
    return make_vass("anbn", 1, "ab", ["q0", "q1"], "q0", ["q0", "q1"], [
        ("q0", "a", 1, "q0"),
        ("q0", "b", -1, "q1"),
        ("q1", "b", -1, "q1"),
    ], REACH)


def _a_must_vass_eps():
    # X holds the value in counter 1, Y in counter 2.  A digit enters X2
    # (resp. Y2), which silently moves the value across at double rate and
    # then silently returns to the other rest state.
    ts = [("s", "1", (1, 0), "X")]
    for d in (0, 1):
        ts.append(("X", str(d), (0, d), "X2"))
        ts.append(("Y", str(d), (d, 0), "Y2"))
    ts += [("X2", EPS, (-1, 2), "X2"),
           ("X2", EPS, (0, 0), "Y"),
           ("Y2", EPS, (2, -1), "Y2"),
           ("Y2", EPS, (0, 0), "X"),
           ("X", "#", (0, 0), "Z"),
           ("Y", "#", (0, 0), "Z"),
           ("Z", "0", (-1, 0), "Z"),
           ("Z", "0", (0, -1), "Z"),
           ("Z", "#", (0, 0), "F")]
    return make_vass("mustVASSe", 2, ("0", "1", "#"), ["s", "X", "X2", "Y", "Y2", "Z", "F"], "s", ["F"],
                     ts, COVER)


def _a_anblen_barrier():
    return make_vass("anblenbarrier", 1, ("a", "b", "#"), ["qa", "qb", "d"], "qa", ["d"], [
        ("qa", "a", 1, "qa"),
        ("qa", "b", -1, "qb"),
        ("qb", "b", -1, "qb"),
        ("qa", "#", 0, "d"),
        ("qb", "#", 0, "d"),
        ("d", EPS, -1, "d"),
    ], REACH)


def _a_not_fsvass():
    return make_vass("notFSVASS", 1, "ab", ["q1", "q2", "q_s"], "q1", ["q_s"], [
        ("q1", "a", 1, "q1"),
        ("q1", "b", -1, "q2"),
        ("q2", "b", -1, "q2"),
        ("q2", "a", -1, "q_s"),
        ("q2", "a", 1, "q1"),
        ("q_s", "a", 0, "q_s"),
        ("q_s", "b", 0, "q_s"),
    ], COVER)


def _n_union():
    return make_vass("n_union", 1, "ab", ["s0", "p1", "p2", "r1", "r2"], "s0", ["s0", "r1", "r2"], [
        ("s0", "a", 1, "p1"),
        ("s0", "a", 2, "p2"),
        ("p1", "a", 1, "p1"),
        ("p2", "a", 2, "p2"),
        ("p1", "b", -1, "r1"),
        ("r1", "b", -1, "r1"),
        ("p2", "b", -1, "r2"),
        ("r2", "b", -1, "r2"),
    ], REACH)


AUTOMATA = {
    "A_notDVASS": (_a_not_dvass, "L_notDVASS"),
    "A_anbgen": (_a_anbgen, "L_anbgen"),
    "A_notHDVASS": (_a_not_hdvass, "L_notHDVASS"),
    "A_anblen": (_a_anblen, "L_anblen"),
    "A_anbn": (_a_anbn, "L_anbn"),
    "A_mustVASSe": (_a_must_vass_eps, "L_mustVASSe"),
    "A_anblenbarrier": (_a_anblen_barrier, "L_anblenbarrier"),
    "A_notFSVASS": (_a_not_fsvass, "L_notFSVASS"),
    "N_union": (_n_union, "L_notrunion"),
}

HELPERS = {"A_anblen_cover": (_a_anblen_cover, "L_anblen")}

HD_AUTOMATA = ("A_notDVASS", "A_anbgen", "A_anbn", "A_mustVASSe", "A_anblenbarrier", "A_notFSVASS")
NON_HD_AUTOMATA = ("A_notHDVASS", "A_anblen", "N_union")


def automaton(name: str) -> Vass:
    entry = AUTOMATA.get(name) or HELPERS.get(name)
    if entry is None:
        raise VassError(f"unknown automaton {name!r}")
    return entry[0]()


def language_of(name: str) -> NamedLanguage:
    entry = AUTOMATA.get(name) or HELPERS.get(name)
    if entry is None:
        raise VassError(f"unknown automaton {name!r}")
    return predicate(entry[1])


def equivalence_bound(vass: Vass, n: int = 10, small: int = 8) -> int:
    """Bound used for fidelity checks: ``small`` for multi-counter or silent-move automata."""
    return small if vass.dim > 1 or vass.has_eps else n


# ---------------------------------------------------------------------------
# resolvers


def _drain_prelude(vass, config, letter, opts):
    """After a digit, move the whole value across before leaving; count zeros on a nonzero counter."""
    state, (c1, c2) = config
    prelude = ()
    if state in ("X2", "Y2"):
        loop, leave = vass.outgoing(state, EPS)
        if state == "X2":
            prelude, c1, c2 = (loop,) * c1, 0, c2 + 2 * c1
        else:
            prelude, c1, c2 = (loop,) * c2, c1 + 2 * c2, 0
        prelude += (leave,)
        state = leave.target
    for t in vass.outgoing(state, letter):
        if first_negative((c1, c2), t.effect) is None:
            return prelude, t
    return None


def _barrier_drain(vass, run, opts):
    end = run.end
    if end.state != "d":
        return ()
    loop = vass.outgoing("d", EPS)[0]
    return (loop,) * end.counters[0]


def _r_not_dvass():
    return by_preference("corpus:notDVASS", lambda pre, t, succ: (t.target != "q2", t.index))


def _r_anbgen():
    return by_preference("corpus:anbgen", lambda pre, t, succ: (t.effect[0] != -1, t.index))


def _r_not_fsvass():
    return by_preference("corpus:notFSVASS", lambda pre, t, succ: (t.target != "q_s", t.index))


def _r_must_vass_eps():
    return positional("corpus:mustVASSe", _drain_prelude, no_final_moves)


def _r_anbn():
    r = first_enabled()
    return Resolver("corpus:anbn", r.choice, r.final)


def _r_anblen_barrier():
    r = first_enabled()
    return Resolver("corpus:anblenbarrier", r.choice, _barrier_drain)


RESOLVERS = {
    "A_notDVASS": _r_not_dvass,
    "A_anbgen": _r_anbgen,
    "A_notFSVASS": _r_not_fsvass,
    "A_mustVASSe": _r_must_vass_eps,
    "A_anbn": _r_anbn,
    "A_anblenbarrier": _r_anblen_barrier,
}

# Bounds at which each catalogue resolver is validated.
RESOLVER_BOUNDS = {
    "A_notDVASS": 10,
    "A_anbgen": 12,
    "A_notFSVASS": 9,
    "A_mustVASSe": 8,
    "A_anbn": 10,
    "A_anblenbarrier": 8,
}


def _canonical(name: str) -> str:
    if name in AUTOMATA:
        return name
    for prefix in ("A_", "R_"):
        if "A_" + name.removeprefix(prefix) in AUTOMATA:
            return "A_" + name.removeprefix(prefix)
    return name


def resolver(name: str) -> Resolver:
    key = _canonical(name)
    if key in NON_HD_AUTOMATA:
        raise VassError(f"{name}: no resolver exists in catalog")
    if key not in RESOLVERS:
        raise VassError(f"unknown resolver {name!r}")
    return RESOLVERS[key]()


# ---------------------------------------------------------------------------
# separation suite

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def run_separation_suite(n: int = 8, opts=None):
    """Run the catalogue's consistency checks at word bound ``n`` and return their results."""
    from .game import NoneUpTo, check_witness, find_nonhd_witness
    from .resolvers import validate_resolver
    from .semantics import DEFAULT_OPTIONS, Equal, Holds, bounded_equiv, bounded_inclusion

    if n < 6:
        raise ValueError("the separation suite needs n >= 6")
    opts = opts or DEFAULT_OPTIONS
    results = []
    for name in AUTOMATA:
        a = automaton(name)
        bound = equivalence_bound(a, n, min(n, 8))
        res = bounded_equiv(a, language_of(name), bound, opts)
        results.append(CheckResult(f"equiv {name} n={bound}", res == Equal(), str(res)))
    for name in RESOLVERS:
        a = automaton(name)
        bound = RESOLVER_BOUNDS[name]
        rep = validate_resolver(a, resolver(name), bound, opts)
        results.append(CheckResult(f"resolver {name} n={bound}", rep.ok, str(rep)))
    w = find_nonhd_witness(automaton("N_union"), 3, opts)
    ok = not isinstance(w, NoneUpTo) and check_witness(automaton("N_union"), w, opts)[0]
    results.append(CheckResult("witness N_union h=3", ok, "" if ok else str(w)))
    for name in HD_AUTOMATA:
        w = find_nonhd_witness(automaton(name), 6, opts)
        results.append(CheckResult(f"no witness {name} h=6", isinstance(w, NoneUpTo), str(w)))
    sigma_star = NamedLanguage("Sigma*", ("a", "b"), lambda s: True)
    inc1 = bounded_inclusion(automaton("A_anbn"), automaton("A_anbgen"), n, opts)
    inc2 = bounded_inclusion(automaton("A_anbgen"), sigma_star, n, opts)
    results.append(CheckResult(f"include anbn <= anbgen n={n}", inc1 == Holds(), str(inc1)))
    results.append(CheckResult(f"include anbgen <= Sigma* n={n}", inc2 == Holds(), str(inc2)))
    return results
