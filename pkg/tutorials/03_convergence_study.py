"""
Convergence of RK2, RK4 and the pole ladder
============================================

Error of the transported vector against a fine RK4 reference as the number
of steps (or rungs) grows. Plots with matplotlib if it is installed.
Takes about 20 seconds.
"""

from lieparallel.bench import BenchConfig, run_convergence, slopes_by_scheme

records = run_convergence(BenchConfig(beta=2.0, seed=42))
for scheme, slope in slopes_by_scheme(records).items():
    print(f"{scheme}: order {slope:.2f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    for scheme in ("rk2", "rk4", "pole"):
        rows = [r for r in records if r.scheme == scheme and r.error > 0]
        plt.loglog([r.n for r in rows], [r.error for r in rows], "o-", label=scheme)
    plt.xlabel("number of steps")
    plt.ylabel("transport error")
    plt.legend()
    plt.savefig("convergence.png")
