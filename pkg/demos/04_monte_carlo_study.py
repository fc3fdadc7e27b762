"""A small Monte Carlo comparison of the four headline estimators.

Generates correlated designs, draws Bernoulli responses at a unit-length
restriction-compatible truth, fits every replication, and reports the
empirical MSE of each estimator across a d grid. With 300 replications
this takes a few seconds; the full study uses 2000 (see the CLI's
--table-suite for the complete n x p x correlation grid).

Everything is keyed off one seed: rerunning this script reproduces the
numbers bit for bit, in any worker configuration.

Run from the repository root:

    python demos/04_monte_carlo_study.py
"""

from shrinklogit import SimulationConfig, default_restriction, run_simulation

grid = (0.1, 0.3, 0.5, 0.7, 0.9, 0.99)
print(f"{'corr':>6} {'kind':>6}" + "".join(f"  d={d:<5}" for d in grid))
for rho in (0.9, 0.99, 0.999):
    config = SimulationConfig(
        n=100,
        p=4,
        rho=rho,
        d_grid=grid,
        reps=300,
        seed=20_260_809,
        restriction=default_restriction(4),
    )
    result = run_simulation(config)
    for kind in config.estimator_kinds:
        cells = "".join(f"  {result.mse(kind, d):7.3f}" for d in grid)
        print(f"{rho:>6} {kind:>6}{cells}")
    print(f"{'':>6} (completed {result.completed}, skipped {result.skipped})")

print("""
reading the table:
  * the MLE row explodes as the correlation level rises;
  * the restricted MLE stays far below it (valid prior knowledge pays);
  * the shrunken rows grow with d and meet their unshrunken versions
    near d = 1, so small d is where shrinkage helps most;
  * the restricted shrunken estimator has the smallest cell everywhere.
""")
