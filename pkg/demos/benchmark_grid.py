"""A small benchmark grid, rendered as a markdown table.

The full comparison (dimensions 20/40/60, offsets 1e-5..1e-1, 10 trials)
runs from the command line:

    conebench --seed 42 --format markdown

This script runs a reduced grid so it finishes in a couple of seconds, then
shows how the same cell statistics look as CSV rows.  Generic iteration
counts grow as the dimension rises and the sampled points approach the dual
boundary; the specialized counts stay flat and small.
"""

from conebarriers import ExperimentConfig, render_table, run_grid

config = ExperimentConfig(
    cones=("log", "hpower", "linf"),
    dims=(10, 20),
    offsets=(1e-4, 1e-2, 1e-1),
    trials=5,
    seed=42,
)
stats = run_grid(config)

print("markdown rendering (g = generic Newton, s = specialized root finding):")
print()
print(render_table(stats, "markdown"))

print("the same cells as CSV:")
print()
print(render_table(stats, "csv"))
