"""Negative-winding symbols: the moment-determinant formula and the
2x2 matrix boundary problem that reproduces it.

For F3 (winding -1) and F5 (winding -2) the x-dependent determinant of
compensated-shift moments equals det(1 + V) on the unit circle exactly.
The same moments are the entries of the matrix boundary-problem solution,
whose jump and normalization residuals are printed alongside.
"""

import numpy as np

from detlab import asymptotics, orthopoly, symbols

for name in ("F3", "F5"):
    spec = symbols.fixture(name)
    n = -symbols.winding_number(spec)
    print(f"--- {name}: winding {-n} ---")
    print(f"{'x':>3} {'moment det':>24} {'gap to det(1+V)':>16} "
          f"{'jump':>10} {'norm':>10}")
    for x in range(1, 6):
        hf = asymptotics.hartwig_fisher(spec, x)
        det = asymptotics.tau_eff(spec, x)
        sol = orthopoly.RHPSolution(orthopoly.MeasureMu(spec, x))
        jump = max(sol.jump_residual(q)
                   for q in np.exp(2j * np.pi * np.array([0.1, 0.6])))
        print(f"{x:>3} {hf.real:>24.16e} {abs(hf - det) / abs(det):>16.2e} "
              f"{jump:>10.2e} {sol.normalization_residual():>10.2e}")
    print()
