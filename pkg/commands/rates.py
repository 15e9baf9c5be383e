"""rates: closed-form risk rate and predicted log-log slopes for the configured tail family."""

from bounds.rates import FAMILIES, rate_table
from experiments.results_io import write_json
from utils.cache_paths import report_path
from utils.logging_utils import format_table, ts_print

from . import EXIT_OK
from .common import add_common_arguments, guarded, load_config, run_key_for

_ALL_ALPHA = 2.0


def add_arguments(parser):
    add_common_arguments(parser)
    parser.add_argument('--all', action='store_true',
                        help=f'Print every family (alpha={_ALL_ALPHA:g} where one is needed)')


def run(args) -> int:
    def body() -> int:
        cfg = load_config(args)
        family, alpha = cfg.tail["family"], cfg.tail.get("alpha")
        entries = [rate_table(family, alpha, cfg.gamma, cfg.T, cfg.n)]
        if args.all:
            entries += [rate_table(f, None if f == "exponential" else _ALL_ALPHA, cfg.gamma, cfg.T, cfg.n)
                        for f in FAMILIES if f != family]
        rows = [(e.family, "-" if e.alpha is None else e.alpha, e.expression, e.value, e.slope_T, e.slope_n,
                 e.slope_T_small_T, e.slope_n_large_T, e.slope_T_of_n_term, e.asymptotic_T_exponent)
                for e in entries]
        print(format_table(["family", "alpha", "rate", "value", "slope_T", "slope_n", "slope_T|T<<n",
                            "slope_n|T>>n", "slope_T(n-term)", "asymptotic_T"], rows))
        run_key = run_key_for("rates", cfg)
        path = write_json({"run_key": run_key, "gamma": cfg.gamma, "T": cfg.T, "n": cfg.n,
                           "rates": [e.to_dict() for e in entries]},
                          report_path(cfg.output_dir, run_key, "rates"))
        ts_print(f"📁 rates: {path}")
        return EXIT_OK

    return guarded(body)
