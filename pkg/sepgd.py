#!/usr/bin/env python3
"""
sepgd: verify risk bounds of gradient descent on separable linear classification

Commands: validate, run, sweep, rates, verify, events.
Exit codes: 0 success, 1 certificate/verification failure, 2 usage/config error,
3 result files could not be written.
"""

import argparse
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent))

from commands import EXIT_USAGE, events, rates, run, sweep, validate, verify

COMMANDS = {
    "validate": (validate, "Certify the tail axioms and loss class membership"),
    "run": (run, "Run one trial and compare measured risk with the bounds"),
    "sweep": (sweep, "Run R trials per (gamma, T, n) cell and verify the bounds"),
    "rates": (rates, "Print the closed-form rate and predicted slopes"),
    "verify": (verify, "Re-verify a saved sweep.json"),
    "events": (events, "Estimate the big-T instance event probabilities"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(description='Risk bounds of GD/SGD on separable data: certify, run, sweep, verify')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)
    for name, (module, help_text) in COMMANDS.items():
        module.add_arguments(sub.add_parser(name, help=help_text, description=help_text))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    module, _ = COMMANDS[args.command]
    return module.run(args)


if __name__ == "__main__":
    sys.exit(main())
