"""Command-line front end.

Exit code 0 means the check succeeded; 1 means it turned up a negative
answer such as a counterexample.  Code 2 reports an inconclusive search
and code 3 a usage or parse error.
"""
from __future__ import annotations

import argparse
import sys

from . import constructions, corpus, game, minsky, resolvers, semantics, textio
from .core import Run, Vass, VassError, format_vector, format_word, is_accepting, replay

OK, FOUND, INCONCLUSIVE, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, args) -> Vass:
    vass = textio.parse_vass(_read(path))
    if args.semantics_override and args.semantics_override != vass.semantics:
        print(f"note: {vass.name} re-tagged from {vass.semantics} to {args.semantics_override}", file=sys.stderr)
        vass = vass.replace(semantics=args.semantics_override)
    return vass


def _opts(args) -> semantics.SearchOptions:
    return semantics.SearchOptions(eps_budget=args.eps_budget)


def _header(args, out):
    out.write(f"# hdvass {args.command} max-len={args.max_len} eps-budget={args.eps_budget} horizon={args.horizon}\n")


def _word(text, vass: Vass) -> tuple:
    """Space-separated letters; a single token made of one-character letters may be written unspaced."""
    tokens = (text or "").split()
    if tokens in ([], ["@eps"]):
        return ()
    if len(tokens) == 1 and tokens[0] not in vass.alphabet and all(ch in vass.alphabet for ch in tokens[0]):
        return tuple(tokens[0])
    return tuple(tokens)


def format_run(run: Run) -> str:
    lines = [f"start | - | {run.start.state} | {format_vector(run.start.counters)}"]
    for t, config in run.steps:
        lines.append(f"{t.label} | {t.index} | {config.state} | {format_vector(config.counters)}")
    return "\n".join(lines) + "\n"


def _resolver(name: str, vass: Vass, opts):
    if name == "first":
        return resolvers.first_enabled()
    if name.startswith("lookahead:"):
        try:
            h = int(name.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad look-ahead horizon in {name!r}") from None
        return resolvers.lookahead_resolver(vass, h, opts)
    if name.startswith("corpus:"):
        return corpus.resolver(name.split(":", 1)[1])
    raise UsageError(f"unknown resolver {name!r} (known forms: first, lookahead:<h>, corpus:<name>)")


# -- subcommands -------------------------------------------------------------

def cmd_member(args, out):
    vass = _load(args.file, args)
    res = semantics.member(vass, _word(args.word, vass), _opts(args))
    out.write(f"{res.verdict.value}\n")
    if res.run is not None:
        out.write(format_run(res.run))
    return {"ACCEPTED": OK, "REJECTED": FOUND, "UNKNOWN": INCONCLUSIVE}[res.verdict.value]


def cmd_run(args, out):
    text = _read(args.file)
    first = next((ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
    if first == "2cm":
        machine = textio.parse_2cm(text)
        run = minsky.run_2cm(machine, args.steps)
        for k, op in enumerate(run.ops, start=1):
            q, c1, c2 = run.configs[k]
            out.write(f"{op} | {k} | {q} | [{c1},{c2}]\n")
        out.write(f"{run.status.upper()} after {len(run.ops)} steps\n")
        return OK
    vass = _load(args.file, args)
    ts = []
    for tok in args.transitions or []:
        for part in tok.replace(",", " ").split():
            try:
                i = int(part)
            except ValueError:
                raise UsageError(f"bad transition index {part!r}") from None
            if not 0 <= i < len(vass.transitions):
                raise UsageError(f"no transition with index {i}")
            ts.append(vass.transitions[i])
    try:
        run = replay(vass, ts)
    except VassError as exc:
        out.write(f"DISABLED {exc}\n")
        return FOUND
    out.write(format_run(run))
    out.write("ACCEPTING\n" if is_accepting(vass, run.end) else "NOT-ACCEPTING\n")
    return OK


def cmd_lang(args, out):
    vass = _load(args.file, args)
    lang = semantics.language_up_to(vass, args.max_len, _opts(args))
    for w in lang.accepted:
        out.write(format_word(w) + "\n")
    for w in lang.unknown:
        out.write(f"UNKNOWN {format_word(w)}\n")
    return INCONCLUSIVE if lang.unknown else OK


def _report(res, out):
    if isinstance(res, (semantics.Equal, semantics.Holds)):
        out.write(f"{type(res).__name__.upper()}\n")
        return OK
    out.write(f"COUNTEREXAMPLE {format_word(res.word)}\n")
    return FOUND


def cmd_equiv(args, out):
    a, b = _load(args.a, args), _load(args.b, args)
    return _report(semantics.bounded_equiv(a, b, args.max_len, _opts(args)), out)


def cmd_include(args, out):
    a, b = _load(args.a, args), _load(args.b, args)
    return _report(semantics.bounded_inclusion(a, b, args.max_len, _opts(args)), out)


def cmd_hd_check(args, out):
    vass = _load(args.file, args)
    res = game.find_nonhd_witness(vass, args.horizon, _opts(args))
    if isinstance(res, game.NoneUpTo):
        out.write(f"NO-WITNESS-UP-TO {res.horizon}\n")
        return OK
    out.write(f"WITNESS depth={res.depth}\n")
    out.write(game.format_strategy(res.tree))
    return FOUND


def cmd_resolve(args, out):
    vass = _load(args.file, args)
    opts = _opts(args)
    res = resolvers.resolve_run(vass, _resolver(args.resolver, vass, opts), _word(args.word, vass), opts)
    if isinstance(res, resolvers.Stuck):
        out.write(f"STUCK at {res.position}\n")
        out.write(format_run(res.run))
        return FOUND
    out.write(format_run(res))
    if is_accepting(vass, res.end):
        out.write("ACCEPTING\n")
        return OK
    out.write("NOT-ACCEPTING\n")
    return FOUND


def cmd_validate_resolver(args, out):
    vass = _load(args.file, args)
    opts = _opts(args)
    rep = resolvers.validate_resolver(vass, _resolver(args.resolver, vass, opts), args.max_len, opts)
    out.write(str(rep) + "\n")
    return OK if rep.ok else FOUND


def _emit(vass, args, out):
    text = textio.serialize_vass(vass)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return OK


def cmd_product(args, out):
    a, b = _load(args.a, args), _load(args.b, args)
    op = constructions.product_union if args.op == "union" else constructions.product_intersection
    return _emit(op(a, b), args, out)


def cmd_invhom(args, out):
    vass = _load(args.file, args)
    h = textio.parse_homomorphism(_read(args.map))
    return _emit(constructions.inverse_hom(vass, h), args, out)


def cmd_rm_eps(args, out):
    return _emit(constructions.eliminate_epsilon_1hd(_load(args.file, args)), args, out)


def cmd_endmark(args, out):
    return _emit(constructions.endmarker_cover_to_reach(_load(args.file, args), args.marker), args, out)


def cmd_karp_miller(args, out):
    from .coverability import karp_miller
    out.write(textio.format_km_tree(karp_miller(_load(args.file, args))))
    return OK


def cmd_compile_2cm(args, out):
    machine = textio.parse_2cm(_read(args.file))
    if args.gadget == "inclusion":
        a, b = minsky.compile_inclusion_gadget(machine, args.semantics)
        if args.output:
            base = args.output
            with open(base + ".A.vass", "w", encoding="utf-8") as fh:
                fh.write(textio.serialize_vass(a))
            with open(base + ".B.vass", "w", encoding="utf-8") as fh:
                fh.write(textio.serialize_vass(b))
        else:
            out.write(textio.serialize_vass(a))
            out.write("\n")
            out.write(textio.serialize_vass(b))
        return OK
    if args.gadget == "hdness":
        return _emit(minsky.compile_hdness_gadget(machine, args.semantics), args, out)
    return _emit(minsky.compile_regularity_gadget(machine, args.semantics), args, out)


def cmd_corpus(args, out):
    if args.action == "list":
        for name in corpus.AUTOMATA:
            lang = corpus.language_of(name)
            tag = "HD" if name in corpus.HD_AUTOMATA else "non-HD"
            out.write(f"{name} {lang.name} {tag}\n")
        for name, lang in corpus.PREDICATES.items():
            out.write(f"{name} {' '.join(lang.alphabet)} : {lang.description}\n")
        return OK
    if args.action == "dump":
        if not args.name:
            raise UsageError("corpus dump needs a name")
        out.write(textio.serialize_vass(corpus.automaton(args.name)))
        return OK
    results = corpus.run_separation_suite(args.n if args.n is not None else args.max_len, _opts(args))
    for r in results:
        out.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}\n")
    return OK if all(r.passed for r in results) else FOUND


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-len", type=int, default=8)
    common.add_argument("--eps-budget", type=int, default=64)
    common.add_argument("--horizon", type=int, default=4)
    common.add_argument("--semantics-override", choices=["cover", "reach"])

    p = _Parser(prog="hdvass", description="VASS language acceptors and history-determinism tools")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("member", cmd_member, "decide membership of a word")
    sp.add_argument("file")
    sp.add_argument("-w", "--word", default="")
    sp = add("run", cmd_run, "replay transitions (or simulate a 2cm file)")
    sp.add_argument("file")
    sp.add_argument("-t", "--transitions", nargs="*")
    sp.add_argument("--steps", type=int, default=100)
    sp = add("lang", cmd_lang, "list accepted words up to --max-len")
    sp.add_argument("file")
    for name, fn, help_ in (("equiv", cmd_equiv, "bounded language equivalence"),
                            ("include", cmd_include, "bounded language inclusion")):
        sp = add(name, fn, help_)
        sp.add_argument("a")
        sp.add_argument("b")
    sp = add("hd-check", cmd_hd_check, "search a non-HD witness up to --horizon")
    sp.add_argument("file")
    sp = add("resolve", cmd_resolve, "build the resolver's run on a word")
    sp.add_argument("file")
    sp.add_argument("-w", "--word", default="")
    sp.add_argument("--resolver", default="first")
    sp = add("validate-resolver", cmd_validate_resolver, "check a resolver on all words up to --max-len")
    sp.add_argument("file")
    sp.add_argument("--resolver", default="first")
    sp = add("product", cmd_product, "union or intersection product")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--op", choices=["union", "inter"], default="union")
    sp.add_argument("-o", "--output")
    sp = add("invhom", cmd_invhom, "inverse homomorphic image")
    sp.add_argument("file")
    sp.add_argument("--map", required=True)
    sp.add_argument("-o", "--output")
    sp = add("rm-eps", cmd_rm_eps, "remove silent moves (1-dim coverability)")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("endmark", cmd_endmark, "coverability to reachability with an end marker")
    sp.add_argument("file")
    sp.add_argument("--marker", default="#")
    sp.add_argument("-o", "--output")
    sp = add("karp-miller", cmd_karp_miller, "print the Karp-Miller tree")
    sp.add_argument("file")
    sp = add("compile-2cm", cmd_compile_2cm, "compile a two-counter machine into a gadget")
    sp.add_argument("file")
    sp.add_argument("--gadget", choices=["inclusion", "hdness", "regularity"], default="inclusion")
    sp.add_argument("--semantics", choices=["cover", "reach"], default="cover")
    sp.add_argument("-o", "--output")
    sp = add("corpus", cmd_corpus, "list, dump or verify the catalogue")
    sp.add_argument("action", choices=["list", "dump", "verify"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("-n", type=int)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command not in ("corpus", "karp-miller", "run", "compile-2cm", "product", "invhom", "rm-eps",
                                "endmark"):
            _header(args, out)
        return args.fn(args, out)
    except UsageError as exc:
        print(f"hdvass: {exc}", file=sys.stderr)
        return USAGE
    except textio.ParseError as exc:
        print(f"hdvass: parse error: {exc}", file=sys.stderr)
        return USAGE
    except semantics.InconclusiveError as exc:
        out.write(f"INCONCLUSIVE {format_word(exc.word)}\n")
        return INCONCLUSIVE
    except VassError as exc:
        print(f"hdvass: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
