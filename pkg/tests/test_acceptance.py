"""Exit criteria for the build.

Each criterion prints exactly one ``PASS`` or ``FAIL`` line with its
wall-clock time.  Run the file directly (``python tests/test_acceptance.py``)
or through pytest (``pytest -m acceptance``).
"""
from __future__ import annotations

import os
import random
import subprocess
import sys
import tempfile
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hdvass.constructions import (  # noqa: E402
    Homomorphism, eliminate_epsilon_1hd, endmarker_cover_to_reach, inverse_hom, product_intersection,
    product_union,
)
from hdvass.core import make_vass, validate  # noqa: E402
from hdvass.corpus import (  # noqa: E402
    AUTOMATA, HD_AUTOMATA, HELPERS, NamedLanguage, RESOLVER_BOUNDS, automaton, equivalence_bound, language_of,
    predicate, resolver,
)
from hdvass.coverability import OMEGA, coverable, karp_miller  # noqa: E402
from hdvass.game import NonHdWitness, NoneUpTo, check_witness, find_nonhd_witness  # noqa: E402
from hdvass.minsky import (  # noqa: E402
    compile_inclusion_gadget, compile_regularity_gadget, run_2cm,
)
from hdvass.resolvers import validate_resolver  # noqa: E402
from hdvass.semantics import Counterexample, Equal, Holds, bounded_equiv, bounded_inclusion, member  # noqa: E402
from hdvass.textio import parse_2cm, parse_vass, serialize_vass  # noqa: E402

from conftest import M_COUNT, M_HALT, M_LOOP  # noqa: E402
from oracles import (  # noqa: E402
    all_words, capped_coverable, capped_reachable, eps_member, naive_member, random_vass,
)

CRITERIA: dict[int, tuple[str, float | None, object]] = {}


def criterion(number: int, title: str, limit: float | None = None):
    def register(fn):
        CRITERIA[number] = (title, limit, fn)
        return fn
    return register


@criterion(1, "corpus fidelity", 60)
def corpus_fidelity():
    for name in AUTOMATA:
        a = automaton(name)
        n = equivalence_bound(a)
        res = bounded_equiv(a, language_of(name), n)
        assert res == Equal(), f"{name} at n={n}: {res}"
    return f"{len(AUTOMATA)} automata equal to their predicates"


@criterion(2, "resolver validity", 60)
def resolver_validity():
    worst = 0.0
    for name, n in (("A_notDVASS", 10), ("A_anbgen", 12), ("A_notFSVASS", 9), ("A_mustVASSe", 8)):
        assert RESOLVER_BOUNDS[name] >= n
        start = time.perf_counter()
        rep = validate_resolver(automaton(name), resolver(name), n)
        took = time.perf_counter() - start
        assert rep.ok, f"{name}: {rep}"
        assert took < 60, f"{name} took {took:.1f}s"
        worst = max(worst, took)
    return f"4 resolvers OK, slowest {worst:.1f}s"


@criterion(3, "non-HD witness", 30)
def nonhd_witness():
    nu = automaton("N_union")
    w = find_nonhd_witness(nu, 3)
    assert isinstance(w, NonHdWitness), w
    ok, msg = check_witness(nu, w)
    assert ok, msg
    for name in HD_AUTOMATA:
        got = find_nonhd_witness(automaton(name), 6)
        assert got == NoneUpTo(6), f"{name}: {got}"
    return f"N_union witness depth {w.depth}; {len(HD_AUTOMATA)} HD automata clean at h=6"


def _combined(a, b, union):
    pa, pb = language_of(a), language_of(b)
    if union:
        return NamedLanguage("or", pa.alphabet, lambda s: pa(s) or pb(s))
    return NamedLanguage("and", pa.alphabet, lambda s: pa(s) and pb(s))


PRODUCT_PAIRS = (("A_anbn", "A_anbgen"), ("A_anblen", "N_union"),
                 ("A_anblen_cover", "A_notFSVASS"), ("A_notHDVASS", "A_anblen_cover"))

HOMS = (
    ("A_anbn", {"x": "a", "y": "b"}),
    ("A_anbn", {"z": "ab"}),
    ("A_anbn", {"u": (), "x": "a", "y": "bb"}),
)

EPS_SYSTEMS = (
    make_vass("pump", 1, "a", ["q0", "q1"], "q0", ["q1"],
              [("q0", "@eps", 1, "q0"), ("q0", "a", -1, "q1")]),
    make_vass("guarded", 1, "ab", ["q0", "q1", "q2", "q3"], "q0", ["q3"], [
        ("q0", "a", 1, "q1"), ("q1", "@eps", -1, "q2"), ("q2", "@eps", 2, "q1"),
        ("q1", "a", 0, "q1"), ("q1", "b", -3, "q3"), ("q3", "b", 0, "q3")]),
    make_vass("detour", 1, "ab", ["s", "p", "f"], "s", ["s", "f"], [
        ("s", "a", 1, "s"), ("s", "@eps", -1, "p"), ("p", "b", 0, "f"), ("f", "@eps", 0, "s"),
        ("p", "@eps", 0, "s")]),
)


@criterion(4, "closure constructions")
def closure_constructions():
    for a, b in PRODUCT_PAIRS:
        for union, build in ((True, product_union), (False, product_intersection)):
            res = bounded_equiv(build(automaton(a), automaton(b)), _combined(a, b, union), 8)
            assert res == Equal(), f"{build.__name__}({a}, {b}): {res}"
    for name, mapping in HOMS:
        base, h = automaton(name), Homomorphism.of(mapping)
        oracle = NamedLanguage("h", h.source_alphabet,
                               lambda s, h=h, base=base: naive_member(base, h.apply(tuple(s))))
        res = bounded_equiv(inverse_hom(base, h), oracle, 6)
        assert res == Equal(), f"inverse_hom {mapping}: {res}"
    for v in EPS_SYSTEMS:
        out = eliminate_epsilon_1hd(v)
        assert not out.has_eps, v.name
        res = bounded_equiv(out, NamedLanguage(v.name, v.alphabet, lambda s, v=v: eps_member(v, s)), 8)
        assert res == Equal(), f"silent-move elimination on {v.name}: {res}"
    res = bounded_equiv(endmarker_cover_to_reach(automaton("A_anblen_cover"), "#"), predicate("L_anblenbarrier"), 8)
    assert res == Equal(), f"end marker: {res}"
    return "8 products, 3 inverse images, 3 eliminations, end marker: zero mismatches"


@criterion(5, "coverability engine", 30)
def coverability_engine():
    checked = 0
    for name in list(AUTOMATA) + list(HELPERS):
        v = automaton(name)
        reach = capped_reachable(v, 50)
        targets = [()]
        for _ in range(v.dim):
            targets = [t + (x,) for t in targets for x in range(6)]
        for q in v.states:
            for target in targets:
                assert coverable(v, q, target) == capped_coverable(reach, q, target), (name, q, target)
                checked += 1
    loop = make_vass("loop", 1, "a", ["q0"], "q0", ["q0"], [("q0", "a", 1, "q0")])
    got = {(n.state, n.vector) for n in karp_miller(loop).nodes}
    assert got == {("q0", (0,)), ("q0", (OMEGA,))}, got
    return f"{checked} coverability queries agree; self-loop tree exact"


@criterion(6, "Minsky gadgets", 60)
def minsky_gadgets():
    a, b = compile_inclusion_gadget(parse_2cm(M_HALT))
    res = bounded_inclusion(a, b, 4)
    assert res == Counterexample(("inc1", "ztest2", "h")), res
    a, b = compile_inclusion_gadget(parse_2cm(M_LOOP))
    res = bounded_inclusion(a, b, 6)
    assert res == Holds(), res
    checked = 0
    for text in (M_HALT, M_LOOP, M_COUNT):
        m = parse_2cm(text)
        g = compile_regularity_gadget(m)
        r = run_2cm(m, 4)
        for k in range(len(r.ops) + 1):
            rho = r.correct(k)
            assert member(g, rho + ("a",) * r.x(k)).accepted, (m.name, k)
            assert not member(g, rho + ("a",) * (r.x(k) + 1)).accepted, (m.name, k)
            checked += 1
    return f"inclusion gadgets exact; regularity gadget holds on {checked} prefixes"


_CLI_RUNS = (
    ["hd-check", "{N_union}", "--horizon", "3"],
    ["lang", "{A_notDVASS}", "--max-len", "5"],
    ["karp-miller", "{A_mustVASSe}"],
    ["validate-resolver", "{A_notDVASS}", "--resolver", "lookahead:3", "--max-len", "6"],
    ["product", "{A_anbn}", "{A_anbgen}"],
    ["rm-eps", "{pump}"],
)


def _cli_outputs(tmpdir, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    outs = []
    for argv in _CLI_RUNS:
        args = [a.format(**{k: os.path.join(tmpdir, k + ".vass") for k in _files()}) for a in argv]
        done = subprocess.run([sys.executable, "-m", "hdvass.cli", *args], capture_output=True, env=env)
        outs.append((done.returncode, done.stdout))
    return outs


def _files():
    out = {name: automaton(name) for name in ("N_union", "A_notDVASS", "A_mustVASSe", "A_anbn", "A_anbgen")}
    out["pump"] = EPS_SYSTEMS[0]
    return out


@criterion(7, "infrastructure laws")
def infrastructure_laws():
    rng = random.Random(20261019)
    for i in range(200):
        v = random_vass(rng)
        assert validate(v) == [], validate(v)
        assert parse_vass(serialize_vass(v)) == v, f"round trip #{i}"
    words = 0
    for name in list(AUTOMATA) + list(HELPERS):
        v = automaton(name)
        if v.has_eps:
            continue
        for w in all_words(v.alphabet, 8):
            assert member(v, w).accepted == naive_member(v, w), (name, w)
            words += 1
    with tempfile.TemporaryDirectory() as d:
        for name, v in _files().items():
            with open(os.path.join(d, name + ".vass"), "w", encoding="utf-8") as fh:
                fh.write(serialize_vass(v))
        first, second = _cli_outputs(d, 1), _cli_outputs(d, 2)
    assert first == second, "CLI output differs between runs"
    assert all(code in (0, 1) for code, _ in first), [code for code, _ in first]
    return f"200 round trips; {words} member checks; {len(_CLI_RUNS)} CLI outputs byte-identical"


def check(number: int) -> tuple[bool, str]:
    title, limit, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        detail, ok = f"{exc}", False
    took = time.perf_counter() - start
    if ok and limit is not None and took >= limit:
        ok, detail = False, f"{detail}; over the {limit:.0f}s limit"
    bound = f" (limit {limit:.0f}s)" if limit is not None else ""
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {number} {title}: {detail} [{took:.1f}s{bound}]"


@pytest.mark.acceptance
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = check(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [check(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
