"""verify: re-check a saved sweep.json against the lemmas and risk bounds."""

from pathlib import Path

from experiments.results_io import read_json, write_json
from experiments.sweep import SweepResult
from experiments.verify import verify_bounds
from utils.constants import CONFIDENCE, SCHEMA_VERSION
from utils.errors import ConfigError
from utils.logging_utils import ts_print

from . import EXIT_FAILED, EXIT_OK
from .common import guarded


def add_arguments(parser):
    parser.add_argument('--sweep', type=str, required=True,
                        help='Path to a sweep.json written by the sweep command')
    parser.add_argument('--confidence', type=float, default=CONFIDENCE,
                        help='One-sided confidence level for the lower-bound check')
    parser.add_argument('--output', type=str, default=None,
                        help='Report path (default: verify.json next to the sweep file)')


def run(args) -> int:
    def body() -> int:
        path = Path(args.sweep)
        if not path.exists():
            raise FileNotFoundError(f"Sweep file not found: {path}")
        try:
            data = read_json(path)
        except ValueError as e:
            raise ConfigError("sweep", f"{path} is not valid JSON: {e}") from e
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ConfigError("schema_version",
                              f"expected {SCHEMA_VERSION}, got {data.get('schema_version')!r}")
        if not 0 < args.confidence < 1:
            raise ConfigError("confidence", f"must lie in (0, 1), got {args.confidence!r}")
        try:
            sweep = SweepResult.from_dict(data)
        except (KeyError, TypeError) as e:
            raise ConfigError("cells", f"malformed sweep file: {e}") from e
        report = verify_bounds(sweep, confidence=args.confidence)
        out = Path(args.output) if args.output else path.parent / "verify.json"
        write_json({"sweep": str(path), **report.to_dict()}, out)
        for f in report.failures:
            ts_print(f"❌ cell {f['cell']} (g={f['gamma']:g}, T={f['T']}, n={f['n']}): {f['check']} {f['detail']}")
        ts_print(f"{'✅ passed' if report.passed else '❌ failed'}: {report.cells_checked} cells; report: {out}")
        return EXIT_OK if report.passed else EXIT_FAILED

    return guarded(body)
