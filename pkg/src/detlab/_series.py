"""Laurent-series helpers on origin-centered circles.

Boundary values of Cauchy transforms are evaluated through truncated
Laurent series of the density sampled on the circle, never through
principal-value quadrature.  All grids start at angle -pi and run
counterclockwise, so the angle parametrization matches the branch cut
of the principal logarithm.
"""

from __future__ import annotations

import numpy as np

PHASE0 = -np.pi


def circle_nodes(radius: float, m: int, center: complex = 0.0):
    """Counterclockwise nodes q_j = center + radius*exp(i*phi_j), phi_j in [-pi, pi)."""
    phi = PHASE0 + 2.0 * np.pi * np.arange(m) / m
    return center + radius * np.exp(1j * phi)


def circle_weights(nodes, m: int, center: complex = 0.0, orientation: int = 1):
    """Trapezoidal dq weights: orientation * 2*pi*i*(q - center)/m."""
    return orientation * 2j * np.pi * (nodes - center) / m


def laurent_coeffs(values):
    """Laurent coefficients c_j of f on its sampling circle.

    f(q) ~ sum_j c_j (q/rho)^j for the grid produced by circle_nodes.
    Returns (j, c) with j = -m/2 .. m/2-1 in ascending order.
    """
    m = len(values)
    c = np.fft.fft(np.asarray(values, dtype=complex)) / m
    j = np.fft.fftfreq(m, 1.0 / m).astype(int)
    c = c * np.exp(-1j * j * PHASE0)   # grid starts at angle -pi, not 0
    order = np.argsort(j)
    return j[order], c[order]


class LaurentSplit:
    """Plus/minus Cauchy split of a function given on an origin-centered circle.

    For f with Laurent coefficients c_j on the circle |k| = rho,
    the transform F(q) = (1/2pi i) \oint f(k)/(k-q) dk splits into

        plus(q)  = sum_{j>=0} c_j (q/rho)^j     (analytic inside, |q| < rho)
        minus(q) = -sum_{j<0} c_j (q/rho)^j     (analytic outside, |q| > rho)

    Boundary values on the circle itself come from the same series.
    """

    def __init__(self, values, radius: float):
        self.radius = float(radius)
        self.j, self.c = laurent_coeffs(values)
        self.m = len(values)

    def tail_ratio(self) -> float:
        """Relative size of the largest edge coefficient (aliasing indicator)."""
        scale = np.max(np.abs(self.c))
        if scale == 0.0:
            return 0.0
        edge = max(np.abs(self.c[0]), np.abs(self.c[-1]))
        return float(edge / scale)

    def _eval(self, q, mask, derivative=0):
        q = np.asarray(q, dtype=complex)
        scalar = q.ndim == 0
        qf = np.atleast_1d(q)
        j = self.j[mask]
        c = self.c[mask] / self.radius ** j.astype(float)
        out = np.zeros(qf.shape, dtype=complex)
        for _ in range(derivative):
            c = c * j
            j = j - 1
        # drop exactly-cancelled terms so 0**0 or 0**(-1) never appears
        keep = c != 0.0
        j, c = j[keep], c[keep]
        nz = qf != 0.0
        if np.any(nz):
            # negative exponents via (1/q)**|j|: the direct form overflows
            # in its intermediate q**|j| for large |q|
            pos, neg = j >= 0, j < 0
            acc = np.zeros(qf[nz].shape, dtype=complex)
            if np.any(pos):
                acc += (qf[nz, None] ** j[None, pos]) @ c[pos]
            if np.any(neg):
                acc += ((1.0 / qf[nz, None]) ** (-j[None, neg])) @ c[neg]
            out[nz] = acc
        if np.any(~nz):
            at0 = c[j == 0].sum() if np.any(j == 0) else 0.0
            if np.any(j < 0):
                at0 = np.nan if np.any(np.abs(c[j < 0]) > 0) else at0
            out[~nz] = at0
        return out[0] if scalar else out

    def plus(self, q, derivative=0):
        return self._eval(q, self.j >= 0, derivative)

    def minus(self, q, derivative=0):
        return -self._eval(q, self.j < 0, derivative)

    def reconstruct(self, q, derivative=0):
        """Full series value; valid in the annulus of analyticity."""
        return self._eval(q, np.ones_like(self.j, dtype=bool), derivative)

    def zero_mode(self) -> complex:
        return complex(self.c[self.j == 0][0])

    def coefficient(self, k: int) -> complex:
        hit = self.c[self.j == k]
        return complex(hit[0]) if len(hit) else 0.0
