"""Grid certificate that a loss belongs to the φ-tailed class C_{φ,β}.

Runs on the same grid machinery as the tail axioms, extended to u < 0; β is
the loss's own smoothness constant.
"""

from typing import Optional

import numpy as np

from tails import TailFunction
from tails.axioms import AxiomCheck, AxiomReport, GridSpec, _worst, default_grid
from utils.constants import (AXIOM_ATOL, FD_STEP, GRID_POINTS, LOSS_GRID_U_MIN, PAIR_SAMPLES,
                             SELF_BOUND_ATOL, SMOOTH_SLACK)

from . import LossFunction

MembershipReport = AxiomReport

_TINY = 1e-290
_FD_U_MAX = 20.0


def loss_grid(phi: TailFunction, points: int = GRID_POINTS) -> GridSpec:
    return GridSpec(u_max=default_grid(phi, points).u_max, points=points, u_min=LOSS_GRID_U_MIN)


def check_loss_class(loss: LossFunction, phi: TailFunction, grid: Optional[GridSpec] = None,
                     atol: float = AXIOM_ATOL, seed: int = 0) -> MembershipReport:
    grid = grid or loss_grid(phi)
    u = grid.nodes()
    f = np.asarray(loss.eval(u), dtype=float)
    d = np.asarray(loss.deriv(u), dtype=float)
    ref = np.asarray(phi.eval(np.maximum(u, 0.0)), dtype=float)
    beta = loss.beta
    report = MembershipReport(subject=f"{loss.describe()} in C[{phi.describe()}, beta={beta:.6g}]")

    v, at = _worst(-f, u)
    report.checks.append(AxiomCheck("nonnegative", v <= atol, v, at))

    v, at = _worst(-np.diff(d), u[1:])
    report.checks.append(AxiomCheck("convex", v <= atol, v, at, "loss' nondecreasing"))

    ratio = np.abs(np.diff(d)) / np.diff(u)
    v, at = _worst(ratio - beta * SMOOTH_SLACK, u[1:])
    report.checks.append(AxiomCheck("beta_smooth", v <= atol, v, at, f"beta={beta:.6g}"))

    # a loss dominated by a positive φ must stay positive while φ is
    df = np.diff(f)
    v, at = _worst(df, u[1:])
    flat = (df >= 0) & (ref[:-1] > _TINY)
    strict_ok = not bool(np.any(flat))
    detail = ""
    if not strict_ok:
        first = float(u[1:][np.argmax(flat)])
        detail = f"{int(flat.sum())} flat grid steps, first at u={first:.6g}"
    report.checks.append(AxiomCheck("strictly_decreasing", v <= atol and strict_ok, v, at, detail))

    pos = u >= 0
    v, at = _worst(f[pos] - ref[pos], u[pos])
    report.checks.append(AxiomCheck("dominated_by_tail", v <= atol, v, at, "loss(u) <= phi(u), u >= 0"))

    v, at = _worst(d * d - 2.0 * beta * f, u)
    report.checks.append(AxiomCheck("self_bounded_gradient", v <= SELF_BOUND_ATOL, v, at,
                                    "loss'^2 <= 2 beta loss"))

    # f(x) <= 2 f(y) + β(x−y)² on random pairs of grid nodes
    rng = np.random.default_rng(seed)
    ix = rng.integers(0, u.size, PAIR_SAMPLES)
    iy = rng.integers(0, u.size, PAIR_SAMPLES)
    gap = f[ix] - 2.0 * f[iy] - beta * (u[ix] - u[iy]) ** 2
    v, at = _worst(gap / (1.0 + np.abs(f[ix])), u[ix])
    report.checks.append(AxiomCheck("pair_inequality", v <= atol, v, at,
                                    f"{PAIR_SAMPLES} sampled pairs"))

    h = FD_STEP
    fd_u = u[(u >= LOSS_GRID_U_MIN) & (u <= _FD_U_MAX)]
    fd = (np.asarray(loss.eval(fd_u + h)) - np.asarray(loss.eval(fd_u - h))) / (2.0 * h)
    err = np.abs(np.asarray(loss.deriv(fd_u)) - fd)
    v, at = _worst(err - 10.0 * beta * h, fd_u)
    report.checks.append(AxiomCheck("finite_difference", v <= 0, v, at, f"h={h:g}"))
    return report
