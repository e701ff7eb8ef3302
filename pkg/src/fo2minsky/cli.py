"""Command-line front end.

Exit status: 0 for success / true / sat, 1 for false / none / violation,
2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import ca, codec, reduction, satsearch, structures
from .fo2 import FormulaSyntaxError, parse_formula, pretty_formula, satisfies
from .fo2.eval import UnboundVariable

OK, FALSE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _machine(path):
    try:
        return ca.parse_machine(_read(path))
    except ca.ParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _structure(path):
    try:
        return structures.parse_structure(_read(path))
    except structures.StructureParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _formula(path):
    try:
        return parse_formula(_read(path))
    except FormulaSyntaxError as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def render_sentence(machine: ca.CounterMachine, source: str = "") -> str:
    """The compiled sentence with one comment line naming each conjunct."""
    parts = reduction.conjuncts(machine)
    lines = [f"; sentence for {source or 'machine'}: {len(parts)} conjuncts", "(and"]
    for label, f in parts:
        lines.append(f"  ; {label}")
        lines.append(pretty_formula(f, indent=2))
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def _find_run(machine, max_steps):
    return ca.find_accepting_run(machine, max_steps, min_steps=1)


def cmd_compile(args):
    machine = _machine(args.machine)
    try:
        text = render_sentence(machine, Path(args.machine).name)
    except (reduction.UnsupportedCounters, reduction.TrivialMachine) as e:
        raise UsageError(str(e)) from None
    _emit(text, args.output)
    return OK


def cmd_simulate(args):
    machine = _machine(args.machine)
    if args.max_steps < 1:
        raise UsageError("--max-steps must be at least 1")
    run = ca.find_accepting_run(machine, args.max_steps)
    if run is None:
        print("none")
        return FALSE
    sys.stdout.write(ca.format_run(machine, run))
    return OK


def cmd_encode(args):
    machine = _machine(args.machine)
    if args.run:
        try:
            run = ca.parse_run(machine, _read(args.run))
        except ca.ParseError as e:
            raise UsageError(f"{args.run}: {e}") from None
    else:
        if args.max_steps is None or args.max_steps < 1:
            raise UsageError("encode needs --run or --max-steps >= 1")
        run = _find_run(machine, args.max_steps)
        if run is None:
            print("none")
            return FALSE
    try:
        s, meta = codec.encode(machine, run)
    except codec.EncodeError as e:
        print(f"error: {e}", file=sys.stderr)
        return FALSE
    except reduction.UnsupportedCounters as e:
        raise UsageError(str(e)) from None
    _emit(structures.format_structure(s, meta.comments()), args.output)
    return OK


def cmd_decode(args):
    machine = _machine(args.machine)
    s = _structure(args.structure)
    try:
        run = codec.decode(machine, s)
    except codec.DecodeError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return FALSE
    sys.stdout.write(ca.format_run(machine, run))
    why = ca.run_violation(machine, run)
    if why:
        print(f"# not accepting: {why}")
        return FALSE
    return OK


def cmd_check(args):
    s = _structure(args.structure)
    f = _formula(args.formula)
    try:
        value = satisfies(s, f)
    except UnboundVariable as e:
        raise UsageError(f"formula has free variables: {e}") from None
    print("true" if value else "false")
    return OK if value else FALSE


def cmd_solve(args):
    f = _formula(args.formula)
    try:
        spec = satsearch.SearchSpec.for_sentence(f, args.max_size, args.mode)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.mode == "full":
        n_preds = len(spec.all_predicates)
        if n_preds * args.max_size > 20:
            print(f"warning: full mode enumerates 2^{n_preds * args.max_size} labellings at the largest size",
                  file=sys.stderr)
    result = satsearch.solve(spec)
    if isinstance(result, satsearch.NoModel):
        print(result)
        return FALSE
    sys.stdout.write(structures.format_structure(result))
    return OK


def roundtrip(machine, max_steps, max_size, out=None) -> bool:
    """Both directions of the reduction on one machine; prints one line per check."""
    out = out or sys.stdout
    phi = reduction.compile_machine(machine)
    ok = True
    run = _find_run(machine, max_steps)
    if run is None:
        print(f"completeness: FAIL no accepting run within {max_steps} steps", file=out)
        ok = False
    else:
        s, meta = codec.encode(machine, run)
        sat = satisfies(s, phi)
        print(f"completeness: {'ok' if sat else 'FAIL'} run of {len(run)} steps, "
              f"encoding of size {len(s)} (k={meta.k})", file=out)
        same = codec.decode(machine, s) == run
        print(f"identity: {'ok' if same else 'FAIL'} decode(encode(run)) == run", file=out)
        ok = ok and sat and same
    found = bad = 0
    for model in satsearch.iter_models(satsearch.SearchSpec.for_machine(machine, max_size)):
        found += 1
        try:
            accepted = ca.validate_run(machine, codec.decode(machine, model))
        except codec.DecodeError:
            accepted = False
        bad += not accepted
    print(f"soundness: {'ok' if not bad else 'FAIL'} {found} model(s) up to size {max_size}, "
          f"{found - bad} decode to accepting runs", file=out)
    return ok and not bad


def cmd_roundtrip(args):
    machine = _machine(args.machine)
    if args.max_steps < 1 or args.max_size < 1:
        raise UsageError("--max-steps and --max-size must be at least 1")
    try:
        passed = roundtrip(machine, args.max_steps, args.max_size)
    except (reduction.UnsupportedCounters, reduction.TrivialMachine) as e:
        raise UsageError(str(e)) from None
    return OK if passed else FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fo2minsky", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="print the sentence for a counter machine")
    c.add_argument("machine")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compile)

    c = sub.add_parser("simulate", help="search a shortest accepting run")
    c.add_argument("machine")
    c.add_argument("--max-steps", type=int, required=True)
    c.set_defaults(func=cmd_simulate)

    c = sub.add_parser("encode", help="structure encoding an accepting run")
    c.add_argument("machine")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--run")
    g.add_argument("--max-steps", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_encode)

    c = sub.add_parser("decode", help="read a run off a structure")
    c.add_argument("machine")
    c.add_argument("structure")
    c.set_defaults(func=cmd_decode)

    c = sub.add_parser("check", help="evaluate a sentence on a structure")
    c.add_argument("structure")
    c.add_argument("formula")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("solve", help="bounded search for a finite model")
    c.add_argument("formula")
    c.add_argument("--max-size", type=int, required=True)
    c.add_argument("--mode", choices=satsearch.MODES, default="well-colored")
    c.set_defaults(func=cmd_solve)

    c = sub.add_parser("roundtrip", help="check both directions of the reduction")
    c.add_argument("machine")
    c.add_argument("--max-steps", type=int, required=True)
    c.add_argument("--max-size", type=int, required=True)
    c.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
