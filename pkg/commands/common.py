"""Shared plumbing: RunConfig → tails, losses, trial/sweep configs, run keys, exit codes."""

import traceback
from typing import Callable, Optional

from experiments.configs import SweepConfig, TrialConfig
from instances import DiscreteDistribution
from instances.loader import load_distribution
from losses import LossFunction
from losses.factory import LossFactory
from tails import TailFunction
from tails.factory import TailFactory
from utils.config import RunConfig, config_echo, load_run_config
from utils.errors import AxiomError, ConfigError, InfeasibleError
from utils.logging_utils import ts_print
from utils.run_key import build_run_key

from . import EXIT_IO, EXIT_USAGE


def add_common_arguments(parser):
    parser.add_argument('--config', type=str, required=True,
                        help='YAML or JSON run configuration')
    parser.add_argument('--set', dest='overrides', action='append', default=[], metavar='KEY.PATH=VALUE',
                        help='Override a config field by dotted path (repeatable)')
    parser.add_argument('--output-dir', type=str, default=None,
                        help='Root directory for result files (overrides output_dir)')


def load_config(args) -> RunConfig:
    return load_run_config(args.config, args.overrides, args.output_dir)


def build_tail(cfg: RunConfig) -> TailFunction:
    try:
        return TailFactory.create_tail(cfg.tail)
    except ValueError as e:
        raise ConfigError("tail", str(e)) from e


def build_loss(kind: str, phi: TailFunction, field_path: str = "loss") -> LossFunction:
    try:
        return LossFactory.create_loss(kind, phi)
    except AxiomError:
        raise
    except ValueError as e:
        raise ConfigError(field_path, str(e)) from e


def custom_distribution(cfg: RunConfig) -> Optional[DiscreteDistribution]:
    if cfg.distribution["kind"] != "custom":
        return None
    return load_distribution(cfg.distribution["path"])


def trial_config(cfg: RunConfig, phi: Optional[TailFunction] = None) -> TrialConfig:
    phi = phi or build_tail(cfg)
    loss = build_loss(cfg.loss, phi)
    dist = custom_distribution(cfg)
    gamma = dist.gamma if dist is not None else cfg.gamma
    try:
        return TrialConfig(phi=phi, loss=loss, dist_kind=cfg.distribution["kind"], gamma=gamma, T=cfg.T, n=cfg.n,
                           eta=None if cfg.eta == "auto" else cfg.eta, delta=cfg.delta, K=cfg.K, eps=cfg.eps,
                           algo=cfg.algo, custom_dist=dist)
    except ValueError as e:
        raise ConfigError("", str(e)) from e


def sweep_config(cfg: RunConfig) -> SweepConfig:
    if cfg.sweep is None:
        raise ConfigError("sweep", "missing required block for the sweep command")
    base = trial_config(cfg)
    gammas = cfg.sweep.gamma
    if base.dist_kind == "custom":
        gammas = (base.gamma,)
    try:
        return SweepConfig(base=base, T=cfg.sweep.T, n=cfg.sweep.n, gamma=gammas, trials=cfg.trials,
                           seed=cfg.seed, axis=cfg.sweep.axis, min_trials=cfg.sweep.min_trials)
    except ValueError as e:
        raise ConfigError("sweep", str(e)) from e


def run_key_for(kind: str, cfg: RunConfig) -> str:
    return build_run_key(kind, config_echo(cfg))


def guarded(body: Callable[[], int]) -> int:
    """Run a command body, mapping usage and config errors to exit code 2 and
    I/O failures on result files to exit code 3."""
    try:
        return body()
    except (ConfigError, FileNotFoundError) as e:
        ts_print(f"❌ Config error: {e}")
        return EXIT_USAGE
    except (InfeasibleError, AxiomError, ValueError) as e:
        ts_print(f"❌ Invalid parameters: {e}")
        return EXIT_USAGE
    except OSError as e:
        ts_print(f"❌ Cannot write results: {e}")
        ts_print(traceback.format_exc())
        return EXIT_IO
