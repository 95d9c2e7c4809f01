"""Symbol weights theta(q), phi(q) = 1 + theta(q), and their phase shift.

Two families cover every scenario exercised by the rest of the library:

* ``rational``      -- phi(q) = P(q)/Q(q), zeros and poles exactly known,
                       any winding number;
* ``laurent_phase`` -- phi(q) = exp(sum_j t_j q^j), nowhere zero, smooth,
                       always zero winding.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import errors
from ._series import circle_nodes, circle_weights, laurent_coeffs

SEP_TOL = 1e-6


@dataclass(frozen=True)
class SymbolSpec:
    """Weight specification; immutable and safe to share between threads."""

    kind: str
    numer: tuple = ()          # ascending powers of q (rational)
    denom: tuple = (1.0,)
    log_coeffs: dict = field(default_factory=dict)   # j -> t_j (laurent_phase)
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("rational", "laurent_phase"):
            raise errors.InputError(f"unknown symbol kind {self.kind!r}")
        if self.kind == "rational":
            object.__setattr__(self, "numer", tuple(complex(c) for c in self.numer))
            object.__setattr__(self, "denom", tuple(complex(c) for c in self.denom))
            self._validate_rational()
        else:
            lc = {int(j): complex(t) for j, t in self.log_coeffs.items()}
            object.__setattr__(self, "log_coeffs", lc)

    def _validate_rational(self):
        p = np.array(self.numer, dtype=complex)
        q = np.array(self.denom, dtype=complex)
        if not len(p) or not np.any(p) or not len(q) or not np.any(q):
            raise errors.InputError("rational symbol needs nonzero numerator and denominator")
        pr = _poly_roots(p)
        qr = _poly_roots(q)
        for r in pr:
            if abs(abs(r) - 1.0) < 1e-8:
                raise errors.InputError(f"numerator root {r} lies on the unit circle")
            if len(qr) and np.min(np.abs(qr - r)) < 1e-10:
                raise errors.InputError("numerator and denominator share a root")
        for r in qr:
            if abs(abs(r) - 1.0) < 1e-8:
                raise errors.InputError(f"denominator root {r} lies on the unit circle")


def _poly_roots(coeffs_ascending):
    c = np.trim_zeros(np.asarray(coeffs_ascending, dtype=complex), "b")
    if len(c) <= 1:
        return np.array([], dtype=complex)
    return np.roots(c[::-1])


def _polyval(coeffs_ascending, q):
    return np.polynomial.polynomial.polyval(q, np.asarray(coeffs_ascending, dtype=complex))


def _polyder(coeffs_ascending):
    c = np.asarray(coeffs_ascending, dtype=complex)
    if len(c) <= 1:
        return np.zeros(1, dtype=complex)
    return c[1:] * np.arange(1, len(c))


def eval_phi(spec: SymbolSpec, q):
    """phi(q) = 1 + theta(q)."""
    q = np.asarray(q, dtype=complex)
    if spec.kind == "rational":
        den = _polyval(spec.denom, q)
        scale = max(np.max(np.abs(np.asarray(spec.denom))), 1.0)
        if np.any(np.abs(den) < 1e-14 * scale):
            raise errors.PoleHit("evaluation point hits a denominator root")
        return _polyval(spec.numer, q) / den
    acc = np.zeros(q.shape, dtype=complex)
    for j, t in spec.log_coeffs.items():
        acc = acc + t * q ** j
    return np.exp(acc)


def eval_theta(spec: SymbolSpec, q):
    return eval_phi(spec, q) - 1.0


def eval_dphi(spec: SymbolSpec, q):
    """phi'(q)."""
    q = np.asarray(q, dtype=complex)
    if spec.kind == "rational":
        p, d = spec.numer, spec.denom
        den = _polyval(d, q)
        return (_polyval(_polyder(p), q) * den - _polyval(p, q) * _polyval(_polyder(d), q)) / den ** 2
    dlog = np.zeros(q.shape, dtype=complex)
    for j, t in spec.log_coeffs.items():
        dlog = dlog + t * j * q ** (j - 1)
    return eval_phi(spec, q) * dlog


def eval_dnu(spec: SymbolSpec, q):
    """nu'(q) = phi'(q) / (2 pi i phi(q)); single-valued even when nu is not."""
    return eval_dphi(spec, q) / (2j * np.pi * eval_phi(spec, q))


def eval_nu_grid(spec: SymbolSpec, nodes):
    """Phase shift nu = log(phi)/(2 pi i) unwrapped continuously along a circle grid.

    The closing increment nu[0 again] - nu[-1] accumulates the winding, so the
    returned array is periodic only for zero-winding symbols.
    """
    nodes = np.asarray(nodes, dtype=complex)
    w = eval_phi(spec, nodes)
    if np.any(np.abs(w) < 1e-12):
        raise errors.ZeroOnContour("phi vanishes at a quadrature node")
    ang = np.unwrap(np.angle(w))
    return (np.log(np.abs(w)) + 1j * ang) / (2j * np.pi)


def grid_winding(spec: SymbolSpec, nodes) -> float:
    """Total increment of nu over one closed loop of the grid (argument principle)."""
    nodes = np.asarray(nodes, dtype=complex)
    w = eval_phi(spec, np.concatenate([nodes, nodes[:1]]))
    ang = np.unwrap(np.angle(w))
    return float((ang[-1] - ang[0]) / (2.0 * np.pi))


def winding_number(spec: SymbolSpec, m: int = 512) -> int:
    """Winding of phi around the unit circle, by quadrature, cross-checked by counting."""
    nodes = circle_nodes(1.0, m)
    weights = circle_weights(nodes, m)
    quad = np.sum(weights * eval_dphi(spec, nodes) / eval_phi(spec, nodes)) / (2j * np.pi)
    n = int(round(quad.real))
    if abs(quad - n) > 0.25:
        raise errors.WindingInconsistent(f"quadrature winding {quad} not near an integer")
    if spec.kind == "rational":
        zeros = _poly_roots(spec.numer)
        poles = _poly_roots(spec.denom)
        count = int(np.sum(np.abs(zeros) < 1.0)) - int(np.sum(np.abs(poles) < 1.0))
        if n != count:
            raise errors.WindingInconsistent(
                f"quadrature winding {n} vs zero/pole count {count}")
    return n


@dataclass(frozen=True)
class SymbolAnalysis:
    zeros: tuple          # all zeros of phi, descending modulus
    poles: tuple          # (location, multiplicity)
    winding: int
    z_list: tuple         # zeros selected for contour enclosure/exclusion
    w_list: tuple         # remaining same-side zeros, ascending distance from |q|=1

    @property
    def pole_moduli(self):
        return tuple(abs(p) for p, _ in self.poles)


def _newton_polish(coeffs, root, tol=1e-12, maxit=40):
    dcoeffs = _polyder(coeffs)
    z = complex(root)
    scale = max(np.max(np.abs(np.asarray(coeffs))), 1.0)
    for _ in range(maxit):
        f = complex(_polyval(coeffs, z))
        if abs(f) < tol * scale:
            return z
        df = complex(_polyval(dcoeffs, z))
        if df == 0.0:
            break
        step = f / df
        if not np.isfinite(step) or abs(step) > 1e6:
            break
        z -= step
    f = complex(_polyval(coeffs, z))
    if abs(f) < tol * scale:
        return z
    raise errors.RootFindFailure(f"polish stalled at {z}, residual {abs(f):.2e}")


def analyze(spec: SymbolSpec, sep_tol: float = SEP_TOL) -> SymbolAnalysis:
    """Locate zeros/poles, fix the winding, and pick the zeros the contour must handle."""
    n = winding_number(spec)
    if spec.kind == "laurent_phase":
        return SymbolAnalysis((), (), 0, (), ())

    zeros = [_newton_polish(spec.numer, r) for r in _poly_roots(spec.numer)]
    zeros.sort(key=abs, reverse=True)
    mods = sorted(abs(z) for z in zeros)
    for a, b in zip(mods, mods[1:]):
        if b - a < sep_tol:
            raise errors.DegenerateZeros(f"zero moduli {a} and {b} within sep_tol")

    praw = sorted(_poly_roots(spec.denom), key=abs)
    poles = []
    for r in praw:
        if poles and abs(r - poles[-1][0]) < 1e-8:
            poles[-1] = (poles[-1][0], poles[-1][1] + 1)
        else:
            poles.append((complex(r), 1))

    if n < 0:
        outside = [z for z in zeros if abs(z) > 1.0]
        outside.sort(key=abs)                     # nearest to the circle first
        z_list = tuple(sorted(outside[:-n], key=abs, reverse=True))
        rest = outside[-n:]
    elif n > 0:
        inside = [z for z in zeros if abs(z) < 1.0]
        inside.sort(key=abs, reverse=True)
        z_list = tuple(inside[:n])
        rest = inside[n:]
    else:
        z_list, rest = (), []
    w_list = tuple(sorted(rest, key=lambda z: abs(abs(z) - 1.0)))
    return SymbolAnalysis(tuple(zeros), tuple(poles), n, z_list, w_list)


def fourier_coefficients(spec: SymbolSpec, m: int = 256):
    """Fourier data on the unit circle.

    Returns (ks, c, nu) where c[i] is the moment c_{ks[i]} of phi and nu[i]
    the Laurent coefficient nu_{ks[i]} in the normalization
    nu(q) = sum_j q^j nu_j / (2 pi i).
    """
    if m & (m - 1):
        raise errors.InputError("node count must be a power of two")
    deg = (max(len(spec.numer), len(spec.denom)) - 1 if spec.kind == "rational"
           else max((abs(j) for j in spec.log_coeffs), default=0))
    if m < 4 * deg + 16:
        raise errors.InputError(f"m={m} too small for degree {deg}")
    nodes = circle_nodes(1.0, m)
    ks, c = laurent_coeffs(eval_phi(spec, nodes))
    cmax = np.max(np.abs(c))
    if cmax > 0 and max(abs(c[0]), abs(c[-1])) > 1e-13 * cmax:
        raise errors.AliasingSuspected("phi moment tail has not decayed")
    if spec.kind == "laurent_phase":
        nu = np.zeros_like(c)
        for j, t in spec.log_coeffs.items():
            nu[ks == j] = t
    else:
        nuvals = eval_nu_grid(spec, nodes)
        w = winding_number(spec)
        if w != 0:
            # remove the winding part so the FFT sees a periodic function
            phi_ang = np.angle(nodes)
            nuvals = nuvals - w * phi_ang / (2.0 * np.pi)
        _, nu = laurent_coeffs(nuvals)
        nu = 2j * np.pi * nu
        if w != 0:
            nu[ks == 0] = np.nan   # no single-valued zero mode with winding
    return ks, c, nu


# --- JSON interface ---------------------------------------------------------

def _c2pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def to_json_dict(spec: SymbolSpec) -> dict:
    if spec.kind == "rational":
        return {"kind": "rational",
                "numer": [_c2pair(c) for c in spec.numer],
                "denom": [_c2pair(c) for c in spec.denom]}
    return {"kind": "laurent_phase",
            "log_coeffs": {str(j): _c2pair(t) for j, t in spec.log_coeffs.items()}}


def from_json_dict(data: dict, label: str = "") -> SymbolSpec:
    try:
        kind = data["kind"]
        if kind == "rational":
            return SymbolSpec(kind="rational",
                              numer=tuple(complex(a, b) for a, b in data["numer"]),
                              denom=tuple(complex(a, b) for a, b in data["denom"]),
                              label=label)
        if kind == "laurent_phase":
            return SymbolSpec(kind="laurent_phase",
                              log_coeffs={int(j): complex(a, b)
                                          for j, (a, b) in data["log_coeffs"].items()},
                              label=label)
    except (KeyError, TypeError, ValueError) as exc:
        raise errors.InputError(f"malformed symbol data: {exc}") from exc
    raise errors.InputError(f"unknown symbol kind {data.get('kind')!r}")


def load_symbol(path) -> SymbolSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise errors.InputError(f"parse error: {exc}") from exc
    return from_json_dict(data, label=os.path.splitext(os.path.basename(path))[0])


FIXTURE_NAMES = ("F0", "F1", "F2", "F3", "F4", "F5", "F6", "F7")


def fixture(name: str) -> SymbolSpec:
    """Load one of the shipped fixture symbols F0..F7 (env DETLAB_FIXTURES overrides)."""
    if name not in FIXTURE_NAMES:
        raise errors.InputError(f"unknown fixture {name!r}")
    override = os.environ.get("DETLAB_FIXTURES")
    if override:
        return load_symbol(os.path.join(override, f"{name}.json"))
    ref = resources.files("detlab") / "fixtures" / f"{name}.json"
    return from_json_dict(json.loads(ref.read_text()), label=name)
