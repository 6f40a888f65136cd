"""Special functions and the approximation-ratio grid minimizations.

The projection-rounding expectation per edge is

    F(r, t) = g(r) * t * 2F1(1/2, 1/2; r/2 + 1; t^2),

with g(r) the squared half-integer Gamma ratio 2/r * (G((r+1)/2)/G(r/2))^2,
hard-coded exactly for the three ranks that occur: g(1) = 2/pi, g(2) = pi/4,
g(3) = 8/(3 pi). F(1, t) reduces to (2/pi) arcsin(t), and F(r, 1) = 1 by the
Gauss summation of the series at z = 1 (convergent since c - a - b = r/2).

Ratio curves:
  projection rounding   (1 - F(r, t)) / (1 - r t)          over t in [-1, 1/r)
  axis rounding         (1 - g*2 arcsin(t)/pi) / (1 - r g t) over g in {-1, +1},
                        t in [-1, 1] with r*g*t < 1
both minimized over a uniform grid, keeping positive ratios only.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from ._kernels import hyp_series

__all__ = [
    "RatioCurve",
    "hyp2f1_half",
    "bfv_expectation",
    "approx_ratio_bfv",
    "approx_ratio_axis",
    "curve_to_csv",
]

# 2F1(1/2,1/2;r/2+1;1) = Gamma(c)Gamma(r/2) / Gamma(c-1/2)^2, c = r/2+1
_GAUSS_AT_ONE = {1: math.pi / 2, 2: 4 / math.pi, 3: 3 * math.pi / 8}
_G = {1: 2 / math.pi, 2: math.pi / 4, 3: 8 / (3 * math.pi)}

_SERIES_TOL = 1e-16
_SERIES_CAP = 1_000_000


def _check_rank(r: int) -> int:
    if r not in (1, 2, 3):
        raise ValueError(f"rank must be 1, 2 or 3, got {r!r}")
    return r


def hyp2f1_half(r: int, z: float) -> float:
    """2F1(1/2, 1/2; r/2 + 1; z) for z in [0, 1], to absolute accuracy 1e-14."""
    _check_rank(r)
    z = float(z)
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z={z} outside [0, 1]")
    if z == 1.0:
        return _GAUSS_AT_ONE[r]
    value, tail, _ = hyp_series(r / 2 + 1.0, z, _SERIES_TOL, _SERIES_CAP)
    if tail > 1e-12:
        # only reachable within ~1e-7 of z=1; the exact endpoint is handled above
        raise ArithmeticError(f"series did not converge at z={z} (tail bound {tail:.2e})")
    return float(value)


def bfv_expectation(r: int, t: float) -> float:
    """F(r, t) = g(r) * t * 2F1(1/2, 1/2; r/2+1; t^2); odd in t, F(r, 1) = 1."""
    _check_rank(r)
    t = float(t)
    if abs(t) > 1.0:
        raise ValueError(f"t={t} outside [-1, 1]")
    return _G[r] * t * hyp2f1_half(r, t * t)


@dataclass(frozen=True)
class RatioCurve:
    """Sampled ratio curve with its grid minimum.

    samples holds (t, ratio) pairs over the valid grid; for the axis scheme
    they cover the g=+1 branch (the g=-1 branch is its mirror image under
    t -> -t) while the minimum is taken over both branches, with the
    minimizing branch in `gamma` (None for the projection scheme).
    """

    r: int
    samples: tuple[tuple[float, float], ...]
    minimum: tuple[float, float]
    step: float
    gamma: int | None = None


def _grid(step: float) -> list[float]:
    count = int(math.floor(2.0 / step + 1e-9)) + 1
    return [-1.0 + k * step for k in range(count)]


def approx_ratio_bfv(r: int, step: float = 0.01) -> RatioCurve:
    """Minimize (1 - F(r,t)) / (1 - r t) over the grid t in [-1, 1/r)."""
    _check_rank(r)
    if step <= 0:
        raise ValueError("step must be positive")
    samples = []
    best = None
    for t in _grid(step):
        den = 1.0 - r * t
        if t > 1.0 or den <= 1e-12:
            break
        ratio = (1.0 - bfv_expectation(r, t)) / den
        samples.append((t, ratio))
        if ratio > 0 and (best is None or ratio < best[1]):
            best = (t, ratio)
    return RatioCurve(r=r, samples=tuple(samples), minimum=best, step=step)


def approx_ratio_axis(r: int, step: float = 0.01) -> RatioCurve:
    """Minimize (1 - g*2arcsin(t)/pi) / (1 - r g t) over g in {-1,+1} and the t grid."""
    _check_rank(r)
    if step <= 0:
        raise ValueError("step must be positive")
    samples = []
    best = None
    for g in (1, -1):
        for t in _grid(step):
            if t > 1.0:
                break
            den = 1.0 - r * g * t
            if den <= 1e-12:
                continue
            ratio = (1.0 - g * 2.0 * math.asin(max(-1.0, min(1.0, t))) / math.pi) / den
            if g == 1:
                samples.append((t, ratio))
            if ratio > 0 and (best is None or ratio < best[1]):
                best = (t, ratio, g)
    t_star, ratio_star, g_star = best
    return RatioCurve(
        r=r,
        samples=tuple(samples),
        minimum=(t_star, ratio_star),
        step=step,
        gamma=g_star,
    )


def curve_to_csv(curve: RatioCurve) -> str:
    """Two-column CSV (t, ratio) of the sampled grid."""
    lines = ["t,ratio"]
    for t, ratio in curve.samples:
        lines.append(f"{t:.17g},{ratio:.17g}")
    return "\n".join(lines) + "\n"
