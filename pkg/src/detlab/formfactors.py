"""Finite-size overlap sums that converge to the unit-circle determinant.

Two families of momenta live on (or near) the unit circle: the unshifted
roots of p^L = 1 and the shifted roots of p^L * phi(p) = 1, obtained from
the former by a Newton homotopy that switches the symbol on gradually.
Squared overlaps of the two families, summed over N-point subsets of the
unshifted grid, reproduce the Fredholm determinant as L grows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import errors, symbols

RESIDUAL_TOL = 1e-12
DISTINCT_TOL = 1e-8
SUBSET_BUDGET = 200_000
HOMOTOPY_STEPS = 16
NEWTON_TOL = 1e-14
NEWTON_MAXIT = 60


@dataclass(frozen=True)
class RootSystem:
    """Unshifted and shifted momentum grids for one symbol at size L."""

    spec: symbols.SymbolSpec
    L: int
    N: int
    q_roots: np.ndarray   # all L roots of q^L = 1
    indices: np.ndarray   # the N grid indices the shifted roots continue from
    p_roots: np.ndarray   # N roots of p^L * phi(p) = 1
    residuals: np.ndarray


def _chosen_indices(L: int, N: int) -> np.ndarray:
    """N grid indices closest to the positive real axis, in grid order."""
    j = np.arange(L)
    ang = np.angle(np.exp(2j * np.pi * j / L))
    order = np.argsort(np.abs(ang), kind="stable")
    return np.sort(order[:N])


def solve_shifted(spec: symbols.SymbolSpec, L: int, N: int | None = None
                  ) -> RootSystem:
    """Continue N unit roots of p^L = 1 into roots of p^L * phi(p) = 1.

    The symbol is switched on through phi^t, t: 0 -> 1; the logarithm of phi
    is tracked continuously along each root's path so no branch choice is
    ever taken from scratch.
    """
    if L < 4:
        raise errors.InputError("grid size L must be at least 4")
    if N is None:
        N = L
    if not 1 <= N <= L:
        raise errors.InputError("need 1 <= N <= L")
    j_all = np.arange(L)
    q_roots = np.exp(2j * np.pi * j_all / L)
    idx = _chosen_indices(L, N)

    p = q_roots[idx].astype(complex)
    logphi = np.log(symbols.eval_phi(spec, p))  # principal start, then tracked

    def step_log(p_old, p_new, l_old):
        ratio = symbols.eval_phi(spec, p_new) / symbols.eval_phi(spec, p_old)
        return l_old + np.log(ratio)

    for t in np.linspace(0.0, 1.0, HOMOTOPY_STEPS + 1)[1:]:
        for it in range(NEWTON_MAXIT):
            g = p ** L * np.exp(t * logphi) - 1.0
            dlog = symbols.eval_dphi(spec, p) / symbols.eval_phi(spec, p)
            dg = (g + 1.0) * (L / p + t * dlog)
            delta = g / dg
            p_new = p - delta
            logphi = step_log(p, p_new, logphi)
            p = p_new
            if np.max(np.abs(delta)) < NEWTON_TOL:
                break
        else:
            bad = int(idx[int(np.argmax(np.abs(delta)))])
            raise errors.NewtonDiverged(bad)

    residuals = np.abs(p ** L * symbols.eval_phi(spec, p) - 1.0)
    if np.max(residuals) > RESIDUAL_TOL:
        bad = int(idx[int(np.argmax(residuals))])
        raise errors.NewtonDiverged(bad)
    if N > 1:
        dist = np.abs(p[:, None] - p[None, :])
        np.fill_diagonal(dist, np.inf)
        if dist.min() < DISTINCT_TOL:
            raise errors.DegenerateZeros(
                f"shifted roots collide: min distance {dist.min():.2e}")
    return RootSystem(spec=spec, L=L, N=N, q_roots=q_roots, indices=idx,
                      p_roots=p, residuals=residuals)


def _angular_density(spec: symbols.SymbolSpec, p: np.ndarray, L: int):
    """1 + (2 pi / L) * (angular derivative of the phase shift) at p."""
    dlog = symbols.eval_dphi(spec, p) / symbols.eval_phi(spec, p)
    return 1.0 + p * dlog / L


def form_factor(system: RootSystem, q_subset) -> complex:
    """Squared overlap of the shifted roots with an N-point unshifted subset.

    Evaluated as a sum of logarithms and exponentiated once at the end; the
    value is symmetric in the subset ordering.
    """
    q = np.asarray(q_subset, dtype=complex)
    if q.shape != (system.N,):
        raise errors.SizeMismatch(
            f"subset size {q.size} != number of shifted roots {system.N}")
    spec, L, p = system.spec, system.L, system.p_roots

    theta_q = symbols.eval_theta(spec, q)
    theta_p = symbols.eval_theta(spec, p)
    if np.any(theta_q == 0) or np.any(theta_p == 0):
        return 0.0 + 0.0j
    dens = _angular_density(spec, p, L)

    # Squared grid-spacing normalization 1/L^{2N}: fixed so that a constant
    # phase shift gives the thermodynamic value exactly at every finite L
    # (each factor 2 of a half-angle sine is already carried by the root
    # differences).
    log_total = -2.0 * system.N * np.log(float(L))
    log_total += np.sum(np.log(p) + np.log(q) + np.log(theta_q) +
                        np.log(theta_p) - np.log(1.0 + theta_q) - np.log(dens))
    iu = np.triu_indices(system.N, k=1)
    log_total += 2.0 * np.sum(np.log(p[iu[1]] - p[iu[0]]))
    log_total += 2.0 * np.sum(np.log(q[iu[1]] - q[iu[0]]))
    log_total -= 2.0 * np.sum(np.log(p[:, None] - q[None, :]))
    if abs(log_total.real) > 700.0:
        raise errors.OverflowGuard(
            f"log-magnitude {log_total.real:.1f} exceeds safe range")
    return complex(np.exp(log_total))


def tau_eff_finite(spec: symbols.SymbolSpec, L: int, N: int | None = None,
                   x: int = 1) -> complex:
    """Finite-size overlap series: sum over N-subsets of the unshifted grid
    of |overlap|^2 * prod (q_i/p_i)^x, with compensated summation."""
    system = solve_shifted(spec, L, N)
    N = system.N
    if math.comb(L, N) > SUBSET_BUDGET:
        raise errors.BudgetExceeded(
            f"C({L},{N}) = {math.comb(L, N)} exceeds {SUBSET_BUDGET}")
    p = system.p_roots
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for combo in itertools.combinations(range(L), N):
        q = system.q_roots[list(combo)]
        # coincident grids (symbol identically trivial): unit overlap
        if N == p.size and np.max(np.abs(np.sort_complex(q) -
                                         np.sort_complex(p))) < 1e-12:
            term = 1.0 + 0.0j
        else:
            term = form_factor(system, q) * complex(
                np.prod((q / p) ** x))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return complex(total)
