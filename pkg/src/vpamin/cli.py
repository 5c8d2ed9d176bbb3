"""Command-line interface.

Exit codes: 0 success (or a positive answer), 1 negative answer, 2 input
error, 3 internal or backend error. Answers end with one machine-readable
line ``RESULT key=value ...``. Words are given as one argument of
whitespace-separated symbols; in ``RESULT`` lines they are comma-joined,
with ``eps`` for the empty word.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from . import dfa as dfa_mod
from . import formats, gen, reduction
from . import immersion as imm_mod
from . import vpa as vpa_mod
from .errors import (BackendError, ContractError, InputError, ScaleError, SoundnessError,
                     StructureError, VpaminError)
from .sat import encoding, minimize

OK, NEGATIVE, INPUT_ERROR, INTERNAL_ERROR = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _word(arg: str) -> tuple[str, ...]:
    return tuple(arg.split())


def _fmt_word(word: Sequence[str] | None) -> str:
    if word is None:
        return "none"
    return ",".join(word) if word else "eps"


def _result(**fields) -> None:
    parts = []
    for k, v in fields.items():
        if isinstance(v, bool):
            v = str(v).lower()
        parts.append(f"{k}={v}")
    print("RESULT " + " ".join(parts))


def _deterministic(v: vpa_mod.Vpa, path: str) -> vpa_mod.Vpa:
    check = vpa_mod.is_deterministic(v)
    if not check:
        raise _Fail(INPUT_ERROR, f"{path} is not deterministic: {check.witness}")
    return v


# --- dfa ------------------------------------------------------------------

def cmd_dfa(args) -> int:
    if args.action == "min":
        d = dfa_mod.minimize(formats.parse_dfa(_read(args.file)))
        _write(args.out, formats.dump_dfa(d))
        _result(states=d.num_states)
        return OK
    if args.action == "equiv":
        a = formats.parse_dfa(_read(args.a))
        b = formats.parse_dfa(_read(args.b))
        verdict = dfa_mod.equivalent(a, b)
        if verdict.equal:
            _result(equal=True)
            return OK
        print("counterexample: " + " ".join(verdict.counterexample))
        _result(equal=False, counterexample=_fmt_word(verdict.counterexample))
        return NEGATIVE
    d = formats.parse_dfa(_read(args.file))
    ok = dfa_mod.member(d, _word(args.word))
    _result(member=ok)
    return OK if ok else NEGATIVE


# --- vpa ------------------------------------------------------------------

def cmd_vpa(args) -> int:
    if args.action == "detcheck":
        check = vpa_mod.is_deterministic(formats.parse_vpa(_read(args.file)))
        if check:
            _result(deterministic=True)
            return OK
        print(f"witness: {check.witness}")
        _result(deterministic=False)
        return NEGATIVE
    if args.action == "member":
        v = _deterministic(formats.parse_vpa(_read(args.file)), args.file)
        ok = vpa_mod.member(v, _word(args.word))
        _result(member=ok)
        return OK if ok else NEGATIVE
    if args.action == "empty":
        e = vpa_mod.emptiness(formats.parse_vpa(_read(args.file)))
        if e.empty:
            _result(empty=True)
            return OK
        print("accepted: " + " ".join(e.witness))
        _result(empty=False, witness=_fmt_word(e.witness))
        return NEGATIVE
    a = _deterministic(formats.parse_vpa(_read(args.a)), args.a)
    b = _deterministic(formats.parse_vpa(_read(args.b)), args.b)
    verdict = vpa_mod.equivalent(a, b)
    if verdict.equal:
        _result(equal=True)
        return OK
    print("counterexample: " + " ".join(verdict.counterexample))
    _result(equal=False, counterexample=_fmt_word(verdict.counterexample))
    return NEGATIVE


# --- imm ------------------------------------------------------------------

def _symmetry(flag: str) -> bool | None:
    return {"auto": None, "on": True, "off": False}[flag]


def cmd_imm(args) -> int:
    if args.action == "validate":
        imm = formats.parse_immersion(_read(args.file))
        targets = [formats.parse_dfa(_read(p)) for p in args.targets]
        verdicts = imm_mod.validate(imm, targets)
        for i, v in enumerate(verdicts, 1):
            if not v.equal:
                print(f"slot {i}: counterexample {' '.join(v.counterexample) or 'eps'}")
        ok = all(v.equal for v in verdicts)
        _result(valid=ok, size=imm.size)
        return OK if ok else NEGATIVE
    if args.action == "to-vpa":
        imm = formats.parse_immersion(_read(args.file))
        v = imm_mod.to_vpa(imm)
        _write(args.out, formats.dump_vpa(v))
        _result(states=v.num_states)
        return OK
    if args.action == "from-vpa":
        imm = imm_mod.from_vpa(formats.parse_vpa(_read(args.file)))
        _write(args.out, formats.dump_immersion(imm))
        _result(size=imm.size, slots=len(imm.slots))
        return OK
    if args.action == "analyze":
        imm = formats.parse_immersion(_read(args.file))
        primes = [int(p) for p in args.primes.split(",") if p]
        report = imm_mod.analyze(imm, primes, args.m)
        for line in report.lines():
            print(line)
        _result(ok=report.ok, dispatch=len(report.dispatch_cycles),
                counting=len(report.counting_cycles), violations=len(report.violations),
                minimal_form=len(report.minimal_form))
        return OK if report.ok else NEGATIVE
    if args.action == "encode":
        canon = minimize.canonical([formats.parse_dfa(_read(p)) for p in args.targets])
        model = encoding.encode(args.size, canon, _symmetry(args.symmetry))
        _write(args.out, model.to_dimacs())
        if args.map:
            Path(args.map).write_text(model.sidecar())
        _result(variables=model.variable_count, clauses=len(model.clauses))
        return OK
    return _minimize(args)


def _minimize(args) -> int:
    targets = [formats.parse_dfa(_read(p)) for p in args.targets]
    result = minimize.min_immersion(targets, args.budget, args.backend,
                                    _symmetry(args.symmetry), args.jobs)
    fields = {"optimum": result.optimum if result.found else "none",
              "size_probes": result.probe_summary() or "none"}
    if args.oracle:
        oracle = minimize.brute_force_min_immersion(targets, args.budget)
        fields["oracle"] = oracle.optimum if oracle.found else "none"
        if oracle.optimum != result.optimum:
            _result(**fields)
            raise _Fail(INTERNAL_ERROR, f"oracle disagreement: SAT {result.optimum}, "
                                        f"brute force {oracle.optimum}")
    if result.found:
        text = formats.dump_immersion(result.witness)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    fields["backend"] = result.backend
    _result(**fields)
    return OK if result.found else NEGATIVE


# --- reduce ---------------------------------------------------------------

def cmd_reduce(args) -> int:
    g = formats.parse_graph(_read(args.graph))
    if args.action == "3col":
        params = reduction.choose_parameters(g.n)
        targets, bound = reduction.build_instance(g)
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            for i, d in enumerate(targets, 1):
                (out / f"A_{i}.dfa").write_text(formats.dump_dfa(d))
            (out / "bound.txt").write_text(f"{bound}\n")
        _result(n=g.n, m=params.m, N=params.N, primes=",".join(map(str, params.primes)))
        return OK
    if args.action == "solve3col":
        coloring = reduction.solve_3coloring(g)
        if coloring is None:
            _result(colorable=False)
            return NEGATIVE
        _write(args.out, formats.dump_coloring(coloring))
        _result(colorable=True)
        return OK
    if args.action == "color-to-imm":
        coloring = formats.parse_coloring(_read(args.coloring))
        imm = reduction.coloring_to_immersion(g, coloring)
        _write(args.out, formats.dump_immersion(imm))
        targets, bound = reduction.build_instance(g)
        verdicts = imm_mod.validate(imm, targets)
        for i, v in enumerate(verdicts, 1):
            if not v.equal:
                print(f"slot {i}: counterexample {' '.join(v.counterexample) or 'eps'}",
                      file=sys.stderr)
        ok = all(v.equal for v in verdicts)
        _result(size=imm.size, bound=bound, valid=ok)
        # an invalid witness for a proper colouring falsifies the construction
        return OK if ok else INTERNAL_ERROR
    imm = formats.parse_immersion(_read(args.immersion))
    coloring = reduction.immersion_to_coloring(imm, g)
    _write(args.out, formats.dump_coloring(coloring))
    _result(colors=len(set(coloring.values())), proper=True)
    return OK


# --- gen ------------------------------------------------------------------

def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    alphabet = tuple(a for a in args.alphabet.split(",") if a)
    if args.kind == "dfa":
        text = formats.dump_dfa(gen.random_dfa(rng, args.states, alphabet, args.density))
    elif args.kind == "graph":
        text = formats.dump_graph(gen.random_graph(rng, args.n, args.density))
    elif args.kind == "imm":
        text = formats.dump_immersion(
            gen.random_immersion(rng, args.states, args.slots, alphabet, args.density))
    else:
        text = formats.dump_vpa(gen.random_vpa(rng, args.states, density=args.density))
    _write(args.out, text)
    _result(kind=args.kind, seed=args.seed)
    return OK


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vpamin", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log solver progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dfa", help="DFA minimization, equivalence and membership")
    ds = d.add_subparsers(dest="action", required=True)
    x = ds.add_parser("min")
    x.add_argument("file")
    x.add_argument("--out")
    x = ds.add_parser("equiv")
    x.add_argument("a")
    x.add_argument("b")
    x = ds.add_parser("member")
    x.add_argument("file")
    x.add_argument("word")
    d.set_defaults(func=cmd_dfa)

    v = sub.add_parser("vpa", help="VPA membership, emptiness, equivalence, determinism")
    vs = v.add_subparsers(dest="action", required=True)
    x = vs.add_parser("member")
    x.add_argument("file")
    x.add_argument("word")
    for name in ("empty", "detcheck"):
        vs.add_parser(name).add_argument("file")
    x = vs.add_parser("equiv")
    x.add_argument("a")
    x.add_argument("b")
    v.set_defaults(func=cmd_vpa)

    i = sub.add_parser("imm", help="immersions: validation, translation, minimization")
    is_ = i.add_subparsers(dest="action", required=True)
    x = is_.add_parser("validate")
    x.add_argument("file")
    x.add_argument("targets", nargs="+")
    for name in ("to-vpa", "from-vpa"):
        x = is_.add_parser(name)
        x.add_argument("file")
        x.add_argument("--out")
    x = is_.add_parser("minimize")
    x.add_argument("targets", nargs="+")
    x.add_argument("--budget", type=int, required=True)
    x.add_argument("--backend", default="internal",
                   help="internal, internal-python or dimacs:PATH")
    x.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    x.add_argument("--symmetry", choices=("auto", "on", "off"), default="auto")
    x.add_argument("--jobs", type=int, default=1)
    x.add_argument("--out")
    x = is_.add_parser("encode", help="write the DIMACS model for one size")
    x.add_argument("targets", nargs="+")
    x.add_argument("--size", type=int, required=True)
    x.add_argument("--symmetry", choices=("auto", "on", "off"), default="auto")
    x.add_argument("--out")
    x.add_argument("--map", help="sidecar file for decoding")
    x = is_.add_parser("analyze")
    x.add_argument("file")
    x.add_argument("--m", type=int, required=True)
    x.add_argument("--primes", required=True, help="comma-separated")
    i.set_defaults(func=cmd_imm)

    r = sub.add_parser("reduce", help="the 3-colorability reduction")
    rs = r.add_subparsers(dest="action", required=True)
    x = rs.add_parser("3col")
    x.add_argument("graph")
    x.add_argument("--out", help="directory for A_i.dfa and bound.txt")
    x = rs.add_parser("solve3col")
    x.add_argument("graph")
    x.add_argument("--out")
    x = rs.add_parser("color-to-imm")
    x.add_argument("graph")
    x.add_argument("coloring")
    x.add_argument("--out")
    x = rs.add_parser("imm-to-color")
    x.add_argument("graph")
    x.add_argument("immersion")
    x.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gen", help="seeded random test data")
    g.add_argument("kind", choices=("dfa", "graph", "imm", "vpa"))
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--states", type=int, default=4)
    g.add_argument("--slots", type=int, default=2)
    g.add_argument("--n", type=int, default=4)
    g.add_argument("--alphabet", default="a,b")
    g.add_argument("--density", type=float, default=0.7)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InputError, ContractError, ScaleError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (BackendError, SoundnessError, VpaminError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
