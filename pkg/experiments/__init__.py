"""
Monte Carlo harness

Trials (sample, train, measure exact risk, attach bounds, flag violations),
sweeps over (γ, T, n) grids, event-probability estimates, slope fits,
verification of sweeps against the bounds, and result files.
"""
