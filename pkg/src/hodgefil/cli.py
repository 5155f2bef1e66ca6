"""Command line entry point: ``hodgefil <basis|hodge|congruence> --level N ...``.

Exit codes: 0 ok, 2 usage, 3 data error, 4 math-pipeline error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import HodgefilError, InadmissiblePrime
from .pipeline import (RunConfig, basis_report, congruence_report_json, hodge_report, load_inputs,
                       run_basis, run_congruence, run_hodge)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, int(n ** 0.5) + 1))


def next_candidate(p: int, level: int) -> int:
    q = p + 1
    while not is_prime(q) or q == level:
        q += 1
    return q


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hodgefil", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, hlp in (("basis", "symplectic de Rham basis"), ("hodge", "Hodge filtration data"),
                      ("congruence", "mod-N corank comparison")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--level", type=int, required=True, help="prime level N")
        sp.add_argument("--prime", type=int, default=3, help="Hecke prime p (default 3)")
        sp.add_argument("--precision", type=int, help="truncate fixtures to O(q^P)")
        sp.add_argument("--nn", type=int, help="coefficient window length (default N - 7)")
        sp.add_argument("--data-dir", help="fixture directory (default: bundled data)")
        sp.add_argument("--basis-override", help="change-of-basis JSON")
        sp.add_argument("--lenient-denominators", action="store_true",
                        help="skip rows whose coefficients have N in a denominator")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--full", action="store_true", help="print series at full precision")
    return ap


def config_from_args(ap: argparse.ArgumentParser, args) -> RunConfig:
    if args.level % 2 == 0 or not is_prime(args.level):
        ap.error(f"--level must be an odd prime, got {args.level}")
    if not is_prime(args.prime):
        ap.error(f"--prime must be prime, got {args.prime}")
    if args.prime == args.level:
        ap.error("--prime must differ from --level")
    if args.nn is not None and args.nn < 1:
        ap.error("--nn must be positive")
    override = args.basis_override
    if override and not Path(override).exists():
        bundled = Path(__file__).parent / "data" / override
        if bundled.exists():
            override = str(bundled)
    return RunConfig(args.level, args.prime, args.precision, args.nn, args.data_dir, override,
                     args.lenient_denominators, args.full)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run(cfg: RunConfig, command: str) -> dict:
    if command == "basis":
        inputs, data = run_basis(cfg)
        return basis_report(cfg, inputs, data)
    if command == "hodge":
        inputs = load_inputs(cfg)
        data, res = run_hodge(cfg, inputs)
        return hodge_report(cfg, inputs, data, res)
    return congruence_report_json(cfg, run_congruence(cfg))


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = config_from_args(ap, args)
    try:
        doc = run(cfg, args.command)
    except InadmissiblePrime as exc:
        err = exc.to_dict()
        err["suggestion"] = f"try --prime {next_candidate(cfg.prime_p, cfg.level)}"
        sys.stderr.write(dumps(err))
        return exc.exit_code
    except HodgefilError as exc:
        sys.stderr.write(dumps(exc.to_dict()))
        return exc.exit_code
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.command == "congruence":
        sys.stderr.write(doc["summary"] + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
