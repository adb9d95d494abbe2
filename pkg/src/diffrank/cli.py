"""Command-line front end.

Prose goes to stdout; JSON lines go to the ``--json`` path (``-`` sends them
to stdout and moves the prose to stderr).  Exit codes: 0 on success, 1 when a
check fails, 2 on parse or usage errors.
"""

from __future__ import annotations

import sys
from typing import Optional, Sequence, TextIO

from .chain import (
    Finite,
    Identity,
    canonical_quotient,
    class_representatives,
    is_strict_left_shift,
    quotient_chain,
)
from .construct import (
    MAX_ORACLE_N,
    Check,
    Report,
    build_fixed_point_example,
    build_omega_increasing_example,
    construction_checks,
    oracle_verify_rank_correspondences,
    oracle_verify_theorem3,
)
from .dsl import Classify, Command, Construct, Quotient, Rank, Verify, parse_dsl, render
from .errors import DiffRankError, ParseError
from .hahn_field import classify_automorphism, tower_from_chain_shift
from .rank import (
    INTERSECTION,
    MULT,
    PRINCIPAL_RANK,
    PRINCIPAL_SIGMA_RANK,
    RANK,
    SIGMA,
    SIGMA_RANK,
    all_ranks,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

_WHICH_KIND = {
    "rank": RANK,
    "principal": PRINCIPAL_RANK,
    "sigma": SIGMA_RANK,
    "sigmaprincipal": PRINCIPAL_SIGMA_RANK,
    "intersection": INTERSECTION,
}

USAGE = """usage: diffrank COMMAND [OPTIONS]

  construct fixedpoint|omega --m INT [--eta SHIFT]
  classify --chain CHAIN --shift SHIFT
  rank --chain CHAIN [--shift SHIFT] [--which all|rank|principal|sigma|sigmaprincipal|intersection]
  quotient --chain CHAIN --shift SHIFT
  verify correspondences|theorem3|all [--n INT] [--m INT]

common options: --json PATH (JSON lines, '-' for stdout), --cap INT (iteration cap, default 64)
"""


def _construct(cmd: Construct, say) -> Report:
    if cmd.recipe == "omega":
        if cmd.eta is not None:
            raise DiffRankError("--eta applies to the fixedpoint recipe only")
        result = build_omega_increasing_example(cmd.m)
    elif cmd.eta is None:
        result = build_fixed_point_example(cmd.m)
    else:
        result = build_fixed_point_example(cmd.m, cmd.eta)
    report = Report(list(result.to_records()))
    report.extend(construction_checks(result))
    say(f"construction {cmd.recipe} with m = {cmd.m}")
    say(f"  value set   {result.chain}")
    say(f"  sigma_Gamma {result.tower.sigma_chain}")
    cls = result.classification
    say(f"  isometry {cls.isometry.value}, weak isometry {cls.weak_isometry.value}, "
        f"omega-increasing {cls.omega_increasing.value}, square growth {cls.square_growth.value}")
    for r in result.ranks:
        say(f"  {r.kind} = {r.order_type}")
    return report


def _classify(cmd: Classify, say) -> Report:
    tower = tower_from_chain_shift(cmd.chain, cmd.shift)
    cls = classify_automorphism(tower)
    case = f"classify:{cmd.chain}|{cmd.shift}"
    strict = is_strict_left_shift(cmd.shift)
    report = Report([Check(case, "classification", "pass", cls.to_json()),
                     Check(case, "omega_increasing_chain_level", "pass",
                           {"strict_left_shift": strict})])
    say(f"classification of {cmd.shift} on {cmd.chain}")
    for name in ("isometry", "weak_isometry", "omega_increasing", "square_growth"):
        say(f"  {name}: {getattr(cls, name).value}")
    say(f"  chain-level strict left shift: {str(strict).lower()}")
    for name, witness in cls.witnesses:
        say(f"  witness ({name}): {witness}")
    return report


def _rank(cmd: Rank, say) -> Report:
    if cmd.which in ("sigma", "sigmaprincipal", "intersection") and cmd.shift is None:
        raise DiffRankError(f"--which {cmd.which} needs --shift")
    ranks = all_ranks(cmd.chain, cmd.shift)
    if cmd.which != "all":
        ranks = [r for r in ranks if r.kind == _WHICH_KIND[cmd.which]]
    case = f"rank:{cmd.chain}" + ("" if cmd.shift is None else f"|{cmd.shift}")
    say(f"ranks of {cmd.chain}" + ("" if cmd.shift is None else f" under {cmd.shift}"))
    for r in ranks:
        say(f"  {r.kind} = {r.order_type} (cardinality {r.cardinality})")
    return Report([Check(case, r.kind, "pass", r.to_json()) for r in ranks])


def _quotient(cmd: Quotient, say) -> Report:
    quotient = quotient_chain(cmd.chain, cmd.shift, cmd.cap)
    canon = canonical_quotient(cmd.chain, cmd.shift)
    reps = class_representatives(cmd.chain, cmd.shift)
    case = f"quotient:{cmd.chain}|{cmd.shift}"
    witness = {
        "quotient": str(quotient),
        "order_type": None if canon is None else str(canon),
        "representatives": None if reps is None else [str(x) for x in reps],
    }
    say(f"{cmd.chain} modulo {cmd.shift}")
    say(f"  order type {witness['order_type'] or 'not finitely described'}")
    if reps is not None:
        say(f"  class representatives {', '.join(witness['representatives'])}")
    return Report([Check(case, "quotient", "pass", witness)])


def _verify(cmd: Verify, say) -> Report:
    report = Report()
    if cmd.suite in ("correspondences", "all"):
        sizes = [cmd.n] if cmd.n is not None else list(range(1, MAX_ORACLE_N + 1))
        for n in sizes:
            part = oracle_verify_rank_correspondences(n)
            say(f"correspondences n = {n}: {_tally(part)}")
            report.extend(part)
    if cmd.suite in ("theorem3", "all"):
        cases = []
        if cmd.m is None:
            cases.append(((Finite(3), Identity()), MULT, "finite(3) with identity, mult"))
            ms = [2, 3]
        else:
            ms = [cmd.m]
        cases += [(build_omega_increasing_example(m), SIGMA, f"omega m = {m}, sigma") for m in ms]
        for example, relation, label in cases:
            part = oracle_verify_theorem3(example, relation, cmd.cap)
            say(f"rings from initial segments, {label}: {_tally(part)}")
            report.extend(part)
    return report


def _tally(report: Report) -> str:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for c in report.checks:
        counts[c.status] += 1
    return f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped"


_HANDLERS = {Construct: _construct, Classify: _classify, Rank: _rank,
             Quotient: _quotient, Verify: _verify}


def run(cmd: Command, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    human = stderr if cmd.json_path == "-" else stdout

    def say(line: str) -> None:
        print(line, file=human)

    try:
        report = _HANDLERS[type(cmd)](cmd, say)
    except DiffRankError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    failures = report.failures
    for c in failures:
        say(f"FAIL {c.case_id}: {c.property} {c.witness if c.witness is not None else ''}".rstrip())
    say(f"{render(cmd)}: {_tally(report)}")
    if cmd.json_path == "-":
        stdout.write(report.to_jsonl())
    elif cmd.json_path is not None:
        with open(cmd.json_path, "w", encoding="utf-8") as fh:
            fh.write(report.to_jsonl())
    return EXIT_FAILED if failures else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if not args or args[0] in ("-h", "--help", "help"):
        sys.stdout.write(USAGE)
        return EXIT_OK if args else EXIT_USAGE
    try:
        cmd = parse_dsl(" ".join(args))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
