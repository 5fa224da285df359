"""Command-line front end: ``causal-games SUBCOMMAND ...``.

Exit status is 0 on success, 1 on a domain error (bad term, ill-typed input,
failing model check, unjoinable peaks, ...) and 2 on a usage error.  An
argument of the form ``@path`` is read from that file and ``-`` from stdin.
JSON is printed with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys

from causal_games import render
from causal_games.games import CyclicStrategy, GamesModel, compose_strategies, is_strategy
from causal_games.gamespres import canon_to_strategy, normalize_G, strategy_to_canon
from causal_games.logic.axioms import AXIOM_SETS, parse_pair
from causal_games.logic.proofs import interp_proof, parse_proof
from causal_games.multirel import MRelModel, RelModel, canonicalize_B, canonicalize_R, interp_B, interp_R
from causal_games.rewriting import SYSTEMS, check_local_confluence, format_word, parse_word, word_type
from causal_games.sigcat import evaluate, parse_term, typecheck
from causal_games.theories import (
    THEORY_NAMES,
    Renamed,
    SimplexModel,
    builtin_theory,
    check_model,
    derived_g_theory,
)


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True)


def _theory(name: str):
    return derived_g_theory() if name == "G-derived" else builtin_theory(name)


def _signature(name: str):
    return _theory("B" if name == "R" else name).signature


def _strategy(arg: str) -> CyclicStrategy:
    """A strategy from JSON, or from a canonical word of the games presentation."""
    text = _read(arg).strip()
    if text.startswith("{"):
        return CyclicStrategy.from_json(json.loads(text))
    return canon_to_strategy(parse_word(text))


def _models():
    games = GamesModel()
    return {
        "MRel": MRelModel(),
        "Rel": RelModel(),
        "Delta": SimplexModel(),
        "Games": games,
        "Games-dual": Renamed(games, {"L": "P", "R": "O"}, {"eta": "etaOP", "eps": "epsOP"}),
    }


DEFAULT_MODEL = {"M": "Delta", "B": "MRel", "R": "Rel", "D": "Games-dual", "G": "Games", "G-derived": "Games"}


# -- subcommands --------------------------------------------------------------------


def cmd_normalize(args) -> str:
    if args.word:
        word = parse_word(_read(args.input))
        if args.theory == "G":
            word_type(word)
        return format_word(SYSTEMS[args.theory].normalize(word))
    t = parse_term(_read(args.input), _signature(args.theory))
    match args.theory:
        case "B":
            return format_word(canonicalize_B(t))
        case "R":
            return format_word(canonicalize_R(t))
    return format_word(normalize_G(t))


def cmd_interp(args) -> str:
    t = parse_term(_read(args.input), _signature(args.theory))
    match args.theory:
        case "B":
            return _dump(interp_B(t).to_json())
        case "R":
            return _dump(interp_R(t).to_json())
    typecheck(t, _signature("G"))
    return evaluate(t, GamesModel()).dumps()


def cmd_compose(args) -> str:
    sigma, tau = _strategy(args.first), _strategy(args.second)
    c = compose_strategies(sigma, tau)
    return _dump({"cyclic": not is_strategy(c), "strategy": c.to_json()})


def cmd_check_model(args) -> tuple[str, int]:
    model = args.model or DEFAULT_MODEL[args.theory]
    report = check_model(_theory(args.theory), _models()[model])
    return f"{report}\nmodel: {model}", 0 if report.ok else 1


def cmd_compile_proof(args) -> str:
    proof = parse_proof(_read(args.proof))
    sigma = interp_proof(proof, AXIOM_SETS[args.axioms]())
    doc = sigma.to_json()
    if sigma.dom.is_filiform and sigma.cod.is_filiform:
        doc["canonical"] = format_word(strategy_to_canon(sigma))
    return _dump(doc)


def cmd_axioms(args) -> str:
    p, q = parse_pair(_read(args.pair))
    member = AXIOM_SETS[args.axioms]().member(p, q)
    return "member" if member else "not member"


def cmd_render(args) -> str:
    if args.kind == "term":
        sig = _signature(args.theory)
        t = parse_term(_read(args.input), sig)
        return (render.term_dot if args.format == "dot" else render.term_ascii)(t, sig).rstrip("\n")
    s = _strategy(args.input)
    return (render.strategy_dot if args.format == "dot" else render.strategy_ascii)(s).rstrip("\n")


def cmd_confluence(args) -> tuple[str, int]:
    peaks = check_local_confluence(SYSTEMS[args.theory], args.bound, args.index_bound)
    lines = [str(p) for p in peaks]
    lines.append(f"{args.theory}: {len(peaks)} unjoinable peak(s) up to length {args.bound}")
    return "\n".join(lines), 0 if not peaks else 1


def cmd_theory(args) -> str:
    return _theory(args.name).dumps()


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="causal-games", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="canonical word of a term (or of a letter word with --word)")
    p.add_argument("--theory", choices=("B", "R", "G"), required=True)
    p.add_argument("--word", action="store_true", help="INPUT is a letter word, rewrite it to normal form")
    p.add_argument("input")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("interp", help="interpret a term in MRel (B), Rel (R) or Games (G)")
    p.add_argument("--theory", choices=("B", "R", "G"), required=True)
    p.add_argument("input")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("compose", help="compose two strategies (JSON or canonical words)")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("check-model", help="evaluate every relation of a theory in a model")
    p.add_argument("--theory", choices=THEORY_NAMES + ("G-derived",), required=True)
    p.add_argument("--model", choices=sorted(_models()))
    p.set_defaults(func=cmd_check_model)

    p = sub.add_parser("compile-proof", help="strategy of a proof file")
    p.add_argument("proof")
    p.add_argument("--axioms", choices=sorted(AXIOM_SETS), default="default")
    p.set_defaults(func=cmd_compile_proof)

    p = sub.add_parser("axioms", help="axiom-set membership")
    asub = p.add_subparsers(dest="action", required=True)
    q = asub.add_parser("query", help='is "(P, Q)" an axiom?')
    q.add_argument("pair")
    q.add_argument("--axioms", choices=sorted(AXIOM_SETS), default="default")
    q.set_defaults(func=cmd_axioms)

    p = sub.add_parser("render", help="ascii or dot diagram of a term or strategy")
    p.add_argument("kind", choices=("term", "strategy"))
    p.add_argument("input")
    p.add_argument("--format", choices=("ascii", "dot"), default="ascii")
    p.add_argument("--theory", choices=("B", "R", "G", "M", "D"), default="B", help="signature for terms")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("confluence", help="bounded local-confluence check")
    p.add_argument("--theory", choices=("B", "R", "G"), required=True)
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--index-bound", type=int, default=None)
    p.set_defaults(func=cmd_confluence)

    p = sub.add_parser("theory", help="theory utilities")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("dump", help="relations of a built-in theory as JSON")
    q.add_argument("name", choices=THEORY_NAMES + ("G-derived",))
    q.set_defaults(func=cmd_theory)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result = args.func(args)
    except (ValueError, TypeError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"causal-games: error: {msg}", file=sys.stderr)
        return 1
    text, code = result if isinstance(result, tuple) else (result, 0)
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
