"""
Sub-commands of sepgd.py

Each module exposes `add_arguments(parser)` and `run(args) -> int` returning the
process exit code: 0 success, 1 certificate/verification failure, 2 usage or
config error, 3 results could not be written.
"""

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
