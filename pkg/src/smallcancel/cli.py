"""Command-line front end.

Every subcommand prints a short human-readable summary.  With ``--json PATH``
it also writes a structured report carrying the schema number, the package
version and the fully resolved configuration.  Exit codes: 0 for success or
a Trivial verdict, 1 for Nontrivial or Violated, 2 for usage and validation
errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .amalgam import AmalgamWord, word
from .cancellation import SCHEMA, check_c_prime, symmetrize
from .dehn import UncertifiedSet, membership, verify_trace
from .factors import ConfigError, FactorSystem, FactorWord, load_system, preset
from .relators import FULL_CAP, CapTooSmall
from .shelah import (POWER_BOUND, CountTooLarge, HypothesisFailed, assemble_step,
                     build_topology_base, family_word, verify_conditions)
from .words import WordSyntaxError, format_word, free_reduce, generator_length, parse_word


class UsageError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("usage", message)


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# -- argument resolution ---------------------------------------------------------

def _system(args) -> FactorSystem:
    if args.config:
        try:
            return load_system(args.config)
        except OSError as exc:
            raise UsageError("config", exc.strerror or str(exc)) from None
    return preset(args.preset)


def _lambda(text: str) -> Fraction:
    try:
        lam = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError("lambda", f"not a rational: {text!r}") from None
    if lam <= 0:
        raise UsageError("lambda", "must be positive")
    return lam


def _cap(args) -> int:
    if args.cap < 2:
        raise UsageError("cap", f"must be at least 2, got {args.cap}")
    return args.cap


def _indices(text: str) -> list[int]:
    try:
        out = sorted({int(t) for t in text.replace(",", " ").split()})
    except ValueError:
        raise UsageError("relators", f"expected comma separated indices, got {text!r}") from None
    if not out or out[0] < 0:
        raise UsageError("relators", "indices must be non-negative")
    return out


def _word(system: FactorSystem, text: str | None) -> AmalgamWord:
    if text is None:
        raise UsageError("word", "required")
    try:
        return word(system, text)
    except WordSyntaxError as exc:
        raise UsageError("word", str(exc)) from None
    except ValueError as exc:
        raise UsageError("word", str(exc)) from None


def _relator_set(system, args):
    cap = _cap(args)
    ks = _indices(args.relators)
    return ks, symmetrize(system, [family_word(system, k, cap) for k in ks])


def _resolved(args, system: FactorSystem, **extra) -> dict:
    cfg = {"system": system.describe(), "cap": args.cap, "seed": args.seed}
    cfg.update(extra)
    return cfg


# -- subcommands -------------------------------------------------------------------

def cmd_reduce(args, system):
    w = _word(system, args.word)
    if args.factor:
        try:
            g = system.reduce(w.syllables, args.factor)
        except ValueError as exc:
            raise UsageError("factor", str(exc)) from None
        syl = g.syllables
    else:
        syl = free_reduce(w.syllables)
    text = format_word(syl)
    print(text)
    print(f"generator length {generator_length(syl)}")
    return 0, {"word": text, "generator_length": generator_length(syl)}, {"word": args.word, "factor": args.factor}


def cmd_normal_form(args, system):
    w = _word(system, args.word)
    print(str(w))
    print(f"length {w.length}")
    if w.length > 1:
        print("letters: " + " | ".join(w.letter_strings()))
    return 0, {"normal_form": str(w), "length": w.length, "letters": w.letter_strings(),
               "factors": list(w.factors)}, {"word": args.word}


def cmd_pieces(args, system):
    ks, R = _relator_set(system, args)
    res = check_c_prime(R, _lambda(args.lam))
    rep = res.report
    print(f"relators {ks}: {len(R.cycles)} cycles, {len(R)} rotation members")
    print(f"max piece length {rep.max_piece_length} (rotation pieces {rep.rotation_piece_length})")
    print(f"min relator length {rep.min_relator_length}, achieved lambda {_frac(rep.achieved_lambda)}")
    return 0, rep.to_dict(), {"relators": ks}


def cmd_check_cc(args, system):
    ks, R = _relator_set(system, args)
    lam = _lambda(args.lam)
    res = check_c_prime(R, lam)
    verdict = "Certified" if res.certified else "Violated"
    print(f"C'({_frac(lam)}) {verdict}: max piece {res.report.max_piece_length}, "
          f"min relator length {res.report.min_relator_length}")
    if res.violation:
        print("violation: " + json.dumps(res.violation, sort_keys=True))
    d = res.to_dict()
    d.pop("schema", None)
    return (0 if res.certified else 1), d, {"relators": ks, "lambda": _frac(lam)}


def cmd_dehn(args, system):
    w = _word(system, args.word)
    ks, R = _relator_set(system, args)
    rng = random.Random(args.seed)
    verdict = membership(w, R, require_certificate=not args.uncertified,
                         tie_break=args.tie_break, rng=rng)
    d = verdict.to_dict()
    if verdict.trivial:
        d["replay_ok"] = verify_trace(verdict, R)
        print(f"Trivial: {len(verdict.trace)} rewrite steps, replay {'ok' if d['replay_ok'] else 'FAILED'}")
    else:
        print(f"Nontrivial: max fragment ratio {d['max_fragment_ratio']}, residue length "
              f"{verdict.residue.length}")
    return (0 if verdict.trivial else 1), d, {"word": args.word, "relators": ks,
                                              "tie_break": args.tie_break}


def _h_n(system: FactorSystem, text: str | None) -> FactorWord:
    if text is None:
        # keeps the system's own h: h_n = x h^-1 gives h_n^-1 x = h
        syl = free_reduce(system.x.syllables + tuple((s, -e) for s, e in reversed(system.h.syllables)))
        return FactorWord(syl, "K")
    try:
        return system.reduce(parse_word(text), "K")
    except ValueError as exc:
        raise UsageError("h-n", str(exc)) from None


def cmd_verify_step(args, system):
    step = assemble_step(system, _h_n(system, args.h_n), _cap(args))
    rep = verify_conditions(step, args.radius)
    print(f"relator length {rep['relator_length']} < {POWER_BOUND}: {rep['relator_below_power_bound']}")
    for key in ("embedding", "intersection", "malnormality"):
        part = rep[key]
        print(f"{key}: {'ok' if part['ok'] else 'FAILED'} ({part['checked']} checks)")
    return (0 if rep["ok"] else 1), rep, {"radius": args.radius, "h": format_word(step.h.syllables)}


def cmd_topology_base(args, system):
    step = assemble_step(system, _h_n(system, args.h_n), _cap(args))
    if args.count < 1:
        raise UsageError("count", "must be positive")
    tb = build_topology_base(step, args.count, budget=args.budget,
                             require_certificate=not args.uncertified, workers=args.workers)
    print("k(n): " + " ".join(map(str, tb.ks)))
    for g, k in zip(tb.elements, tb.ks):
        print(f"  g = {g}  |g| = {g.length}  k = {k}  |r_k| = {tb.relator_lengths[k]}")
    ok = tb.ok()
    print("chain certified" if ok else "chain NOT certified")
    return (0 if ok else 1), tb.to_dict(), {"count": args.count, "budget": args.budget}


def cmd_report(args, system):
    cap = _cap(args)
    lam = _lambda(args.lam)
    r0 = family_word(system, 0, cap)
    res = check_c_prime(symmetrize(system, [r0]), lam)
    hyps = system.hypothesis_failures()
    d = {
        "hypotheses_ok": not hyps,
        "failed_hypotheses": hyps,
        "relator_length": r0.length,
        "power_bound": POWER_BOUND,
        "relator_below_power_bound": r0.length < POWER_BOUND,
        "certificate": {k: v for k, v in res.to_dict().items() if k != "schema"},
    }
    print(f"system {system.name}: hypotheses {'ok' if not hyps else 'FAILED ' + ', '.join(hyps)}")
    print(f"|r0| = {r0.length} (< {POWER_BOUND}: {r0.length < POWER_BOUND})")
    print(f"C'({_frac(lam)}) {'Certified' if res.certified else 'Violated'}, "
          f"max piece {res.report.max_piece_length}")
    return (0 if res.certified and not hyps else 1), d, {"lambda": _frac(lam)}


COMMANDS = {
    "reduce": cmd_reduce,
    "normal-form": cmd_normal_form,
    "pieces": cmd_pieces,
    "check-cc": cmd_check_cc,
    "dehn": cmd_dehn,
    "verify-step": cmd_verify_step,
    "topology-base": cmd_topology_base,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--preset", default="amalgam-h1", help="built-in factor system")
    src.add_argument("--config", help="factor system file")
    common.add_argument("--cap", type=int, default=FULL_CAP, help="largest block exponent in r0")
    common.add_argument("--lambda", dest="lam", default="1/10", help="small cancellation constant p/q")
    common.add_argument("--json", "--out", dest="json", metavar="PATH", help="write a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")

    p = _Parser(prog="smallcancel", description="Small cancellation over amalgamated free products.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("reduce", parents=[common], help="free reduction of a word")
    s.add_argument("--word", required=True)
    s.add_argument("--factor", choices=["K", "L"], help="reduce inside one factor")

    s = sub.add_parser("normal-form", parents=[common], help="amalgam normal form")
    s.add_argument("--word", required=True)

    for name, help_text in (("pieces", "piece report"), ("check-cc", "C'(lambda) certification")):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("--relators", default="0", help="family indices, 0 is r0 (default 0)")

    s = sub.add_parser("dehn", parents=[common], help="membership in the normal closure")
    s.add_argument("--word", required=True)
    s.add_argument("--relators", default="0")
    s.add_argument("--tie-break", choices=["leftmost", "random"], default="leftmost")
    s.add_argument("--uncertified", action="store_true",
                   help="run even when the set is not C'(1/10); Nontrivial is then heuristic")

    s = sub.add_parser("verify-step", parents=[common], help="bounded checks of one inductive step")
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--h-n", dest="h_n", help="the K-element h_n (default keeps the system's h)")

    s = sub.add_parser("topology-base", parents=[common], help="certified normal subgroup chain")
    s.add_argument("--count", type=int, default=5)
    s.add_argument("--h-n", dest="h_n")
    s.add_argument("--budget", type=int, default=400_000, help="max relator letters per query")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--uncertified", action="store_true")

    sub.add_parser("report", parents=[common], help="hypotheses, |r0| and certificate summary")
    return p


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        system = _system(args)
        code, result, extra = COMMANDS[args.command](args, system)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisFailed as exc:
        print(f"error: {exc.name}: hypothesis fails", file=sys.stderr)
        return 2
    except CapTooSmall as exc:
        print(f"error: cap: {exc}", file=sys.stderr)
        return 2
    except (UncertifiedSet, CountTooLarge) as exc:
        field = "relators" if isinstance(exc, UncertifiedSet) else "budget"
        print(f"error: {field}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        report = {
            "schema": SCHEMA,
            "version": __version__,
            "command": args.command,
            "config": _resolved(args, system, **extra),
            "exit_code": code,
            "result": result,
        }
        Path(args.json).write_text(json.dumps(report, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
