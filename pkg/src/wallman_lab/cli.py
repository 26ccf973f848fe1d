"""Batch front end: JSON in, JSON reports out, optional DOT graphs.

Exit codes: 0 success, 1 assertion failure (--assert), 2 input error.
Reports are deterministic for fixed inputs; the elapsed_ms field is the only
run-dependent part and tests mask it.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .errors import WallmanLabError
from .lattice import (
    Poset,
    conn,
    downset_lattice,
    is_disjunctive,
    is_distributive,
    is_normal,
    satisfies_HI,
    satisfies_dim_le1,
    validate,
)
from .spaces import make_space, mask_of, points_of

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_INPUT = 2


class InputError(WallmanLabError):
    pass


# ---------------------------------------------------------------- loading


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"{path}: {err}")


def _digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def load_lattice(path):
    data = _read_json(path)
    try:
        if "poset" in data:
            p = data["poset"]
            size = p["size"]
            le = [[False] * size for _ in range(size)]
            for i in range(size):
                le[i][i] = True
            for i, j in p["le"]:
                le[i][j] = True
            # reflexive-transitive closure of the listed relations
            for k in range(size):
                for i in range(size):
                    if le[i][k]:
                        for j in range(size):
                            if le[k][j]:
                                le[i][j] = True
            poset = Poset(size, tuple(tuple(r) for r in le)).validate()
            return downset_lattice(poset)
        return validate(
            tuple(data["elements"]),
            tuple(tuple(r) for r in data["meet"]),
            tuple(tuple(r) for r in data["join"]),
            data["bottom"],
            data["top"],
        )
    except (KeyError, TypeError, IndexError) as err:
        raise InputError(f"{path}: malformed lattice JSON ({err})")
    except WallmanLabError as err:
        raise InputError(f"{path}: {err}")


def load_space(path):
    data = _read_json(path)
    try:
        return make_space(data["points"], [mask_of(s) for s in data["closed"]])
    except (KeyError, TypeError) as err:
        raise InputError(f"{path}: malformed space JSON ({err})")
    except WallmanLabError as err:
        raise InputError(f"{path}: {err}")


def load_theory(path):
    from .fol import Theory, bind_constants, parse

    data = _read_json(path)
    try:
        constants = tuple(data["constants"])
        sentences = tuple(
            bind_constants(parse(text), constants) for text in data["sentences"]
        )
        return Theory(constants, sentences)
    except (KeyError, TypeError) as err:
        raise InputError(f"{path}: malformed theory JSON ({err})")
    except WallmanLabError as err:
        raise InputError(f"{path}: {err}")


# ---------------------------------------------------------------- DOT


def hasse_dot(L):
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i, name in enumerate(L.names):
        lines.append(f'  n{i} [label="{name}"];')
    for a in L.elements():
        for b in L.elements():
            if a == b or not L.leq(a, b):
                continue
            if any(c not in (a, b) and L.leq(a, c) and L.leq(c, b) for c in L.elements()):
                continue
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def wallman_dot(W):
    lines = ["graph wallman {"]
    for i, u in enumerate(W.points):
        label = ",".join(W.lattice.name(a) for a in sorted(u.members))
        lines.append(f'  p{i} [label="{{{label}}}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- reports


def _report(args_list, digests, outcome, started):
    return {
        "command": args_list,
        "inputs": digests,
        "outcome": outcome,
        "elapsed_ms": int((time.monotonic() - started) * 1000),
        "version": __version__,
    }


def _emit(report):
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _mask_json(mask):
    return points_of(mask)


# ---------------------------------------------------------------- commands

_PREDICATES = {
    "distributive": is_distributive,
    "disjunctive": is_disjunctive,
    "normal": is_normal,
    "connected": lambda L: conn(L, L.top),
    "hi": satisfies_HI,
    "dim_le1": satisfies_dim_le1,
}


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, dict):
        return {str(k): list(v) if isinstance(v, tuple) else v for k, v in w.items()}
    if isinstance(w, tuple):
        return list(w)
    if hasattr(w, "__dict__"):
        return dict(w.__dict__)
    return w


def cmd_check(args):
    started = time.monotonic()
    L = load_lattice(args.lattice)
    names = args.predicates or sorted(_PREDICATES)
    for nm in names:
        if nm not in _PREDICATES:
            raise InputError(f"unknown predicate {nm!r}")

    def run_one(nm):
        verdict, witness = _PREDICATES[nm](L)
        return nm, {"holds": verdict, "witness": _witness_json(witness)}

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_one, names))
    else:
        results = [run_one(nm) for nm in names]
    outcome = {nm: payload for nm, payload in results}
    _emit(_report(sys.argv[1:], {args.lattice: _digest(args.lattice)}, outcome, started))
    if args.assert_ and not all(p["holds"] for p in outcome.values()):
        return EXIT_ASSERT
    return EXIT_OK


def cmd_wallman(args, stone=False):
    from .wallman import stone_space, wallman_space

    started = time.monotonic()
    L = load_lattice(args.lattice)
    W = stone_space(L) if stone else wallman_space(L)
    outcome = {
        "points": [sorted(u.members) for u in W.points],
        "base": {L.name(a): _mask_json(W.base[a]) for a in L.elements()},
    }
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(hasse_dot(L))
            fh.write(wallman_dot(W))
    _emit(_report(sys.argv[1:], {args.lattice: _digest(args.lattice)}, outcome, started))
    return EXIT_OK


def cmd_eval(args):
    from .fol import bind_constants, eval_formula, parse

    started = time.monotonic()
    L = load_lattice(args.structure)
    formula = parse(args.formula)
    interp = {}
    for item in args.let:
        name, _, value = item.partition("=")
        interp[name] = int(value)
    formula = bind_constants(formula, interp)
    value = eval_formula(L, formula, interp)
    report = _report(
        sys.argv[1:], {args.structure: _digest(args.structure)}, {"value": value}, started
    )
    _emit(report)
    if args.assert_ and not value:
        return EXIT_ASSERT
    return EXIT_OK


def cmd_ef(args):
    from .ef import ef_equivalent, strategy_to_sentence
    from .fol import print_formula

    started = time.monotonic()
    A = load_lattice(args.a)
    B = load_lattice(args.b)
    equivalent, strategy = ef_equivalent(A, B, args.rounds)
    outcome = {"equivalent": equivalent, "rounds": args.rounds}
    if not equivalent:
        outcome["separating_sentence"] = print_formula(strategy_to_sentence(A, B, strategy))
    digests = {args.a: _digest(args.a), args.b: _digest(args.b)}
    _emit(_report(sys.argv[1:], digests, outcome, started))
    if args.assert_ and not equivalent:
        return EXIT_ASSERT
    return EXIT_OK


def cmd_find_model(args):
    from .modelfinder import Model, SearchBudget, find_model

    started = time.monotonic()
    theory = load_theory(args.theory)
    try:
        budget = SearchBudget(max_size=args.max_size)
    except ValueError as err:
        raise InputError(str(err))
    result = find_model(theory, budget)
    if isinstance(result, Model):
        L = result.lattice
        outcome = {
            "result": "model",
            "size": L.n,
            "elements": list(L.names),
            "meet": [list(r) for r in L.meet],
            "join": [list(r) for r in L.join],
            "bottom": L.bottom,
            "top": L.top,
            "interpretation": dict(sorted(result.interpretation.items())),
        }
    else:
        outcome = {"result": type(result).__name__}
    _emit(_report(sys.argv[1:], {args.theory: _digest(args.theory)}, outcome, started))
    if args.assert_ and outcome["result"] != "model":
        return EXIT_ASSERT
    return EXIT_OK


def cmd_surject(args):
    from .homsearch import find_L_morphism, surjection_from_morphism

    started = time.monotonic()
    X = load_space(args.x)
    Y = load_space(args.y)
    morphism = find_L_morphism(Y, Y.closed_sorted(), X)
    if morphism is None:
        outcome = {"found": False}
    else:
        f, verification = surjection_from_morphism(Y, morphism, X)
        outcome = {
            "found": True,
            "map": f,
            "morphism": {
                str(_mask_json(b)): _mask_json(m) for b, m in sorted(morphism.assignment.items())
            },
            **verification,
        }
    digests = {args.x: _digest(args.x), args.y: _digest(args.y)}
    _emit(_report(sys.argv[1:], digests, outcome, started))
    if args.assert_ and not outcome["found"]:
        return EXIT_ASSERT
    return EXIT_OK


def cmd_embed(args):
    from .homsearch import find_lattice_embedding

    started = time.monotonic()
    B = load_lattice(args.b)
    L = load_lattice(args.l)
    emb = find_lattice_embedding(B, L)
    if emb is None:
        outcome = {"found": False}
    else:
        outcome = {
            "found": True,
            "assignment": {B.name(e): L.name(t) for e, t in sorted(emb.items())},
        }
    digests = {args.b: _digest(args.b), args.l: _digest(args.l)}
    _emit(_report(sys.argv[1:], digests, outcome, started))
    if args.assert_ and not outcome["found"]:
        return EXIT_ASSERT
    return EXIT_OK


# ---------------------------------------------------------------- driver


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wallman-lab",
        description="finite lattices, their ultrafilter spaces, and the first-order lattice language",
    )
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate lattice predicates")
    p.add_argument("lattice")
    p.add_argument("--predicates", nargs="*", metavar="NAME")
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("wallman", help="ultrafilter space of a distributive lattice")
    p.add_argument("lattice")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(fn=cmd_wallman)

    p = sub.add_parser("stone", help="ultrafilter space of a Boolean algebra")
    p.add_argument("lattice")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(fn=lambda a: cmd_wallman(a, stone=True))

    p = sub.add_parser("eval", help="evaluate a formula on a lattice")
    p.add_argument("structure")
    p.add_argument("formula")
    p.add_argument("--let", action="append", default=[], metavar="NAME=INDEX")
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("ef", help="pebble-game equivalence of two lattices")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--rounds", type=int, default=3)
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.set_defaults(fn=cmd_ef)

    p = sub.add_parser("find-model", help="bounded model search for a theory")
    p.add_argument("theory")
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.set_defaults(fn=cmd_find_model)

    p = sub.add_parser("surject", help="continuous surjection X onto Y via a base morphism")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.set_defaults(fn=cmd_surject)

    p = sub.add_parser("embed", help="bounded-lattice embedding search")
    p.add_argument("b")
    p.add_argument("l")
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.set_defaults(fn=cmd_embed)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except WallmanLabError as err:
        print(f"input error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
