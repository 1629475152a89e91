"""The whole benchmark in one call.

run_benchmark executes every solver over a seed grid and aggregates
medians, representative runs, and eigenstate histograms; emit_report
writes the deterministic JSON record plus human-readable tables.  The
same thing is available from the shell as `bench run --dataset cars`.

Run:  python3 demos/05_full_benchmark.py
"""

from cutclust import RunConfig, emit_report, run_benchmark

config = RunConfig(dataset="cars", seeds=tuple(range(1, 6)))
report = run_benchmark(config)

ground = report.payload["exact"]["ground_energy"]
print(f"exact ground energy {ground:.4f}\n")
print(f"{'algorithm':>10} {'median energy':>14} {'of ground':>10} {'accuracy':>9}")
for algo, block in report.payload["algorithms"].items():
    med = block["median_energy_expectation"]
    accs = [r["accuracy"] for r in block["runs"]]
    print(f"{algo:>10} {med:14.4f} {med / ground:10.1%} "
          f"{sum(a == 1.0 for a in accs):>6}/{len(accs)}")

files = emit_report(report, "bench_out")
print("\nwrote:")
for f in files:
    print(f"  {f}")

print("\ntable.md:\n")
print((files[-1].parent / "table.md").read_text())
