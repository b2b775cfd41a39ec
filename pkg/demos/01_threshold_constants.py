"""Reproduce the headline threshold constants.

The strong bound |pi(x) - li(x)| < sqrt(x) log(x) / 8pi is known
unconditionally as far as the zero verification height T allows:
whenever K/loglog(x) * sqrt(x/log x) <= T.  This walk-through solves the
threshold equations for their reach, runs the full tightening iteration at
T = 3e12 until the constant stops improving, and regenerates both published
tables, checking every row dominates its reference value.
"""

from mpmath import mp

from primebounds import published
from primebounds.engine import ThresholdEquation, iterate, solve_x_max, table1, table2

mp.pretty = True

print("=== threshold reach at T = 3e12 ===")
comparison = solve_x_max(ThresholdEquation("comparison", 4.92, 3e12))
strong = solve_x_max(ThresholdEquation("strong", 9.06, 3e12))
print(f"comparison shape, K = 4.92 : x_max = {mp.nstr(comparison, 6)}")
print(f"strong shape,     K = 9.06 : x_max = {mp.nstr(strong, 6)}")
print(f"improvement factor: {mp.nstr(strong / comparison, 4)}")

print("\n=== iterative tightening, strong variant ===")
report = iterate(3e12)
for i, rnd in enumerate(report.rounds, start=1):
    print(
        f"round {i}: A = {rnd.state.A:.4g}  (D, E) = ({rnd.state.D:.3f}, {rnd.state.E:.3f})"
        f"  B = {float(rnd.b_rounded):.4g}  E(A) = {float(rnd.e_at_a):.6f}"
        f"  -> x_max = {float(rnd.x_max):.5g}"
    )
print(f"final constant {float(report.final_constant)} reaching {float(report.x_max):.5g}")

print("\n=== higher verification heights ===")
for (T0, K, xm), (pT, pK, pxm) in zip(
    table1([r[0] for r in published.TABLE1]), published.TABLE1
):
    tag = "<=" if float(K) <= pK else "> (!)"
    print(f"T0 = {T0:.0e}: K = {float(K)} {tag} published {pK}; x_max = {float(xm):.5g}")

print("\n=== weakened constants, wider reach ===")
for (a, K, xm), (pa, pK, pxm) in zip(
    table2([r[0] for r in published.TABLE2]), published.TABLE2
):
    print(f"a = {a:8.0f}: K = {float(K):.4g} (published {pK});  x_max = {float(xm):.5g}")
