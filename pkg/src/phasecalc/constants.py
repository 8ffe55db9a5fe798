"""Closed-form constants of the phase-space Sobolev inequalities.

Everything here is a scalar function of the smoothness/integrability
exponents and the spatial dimension d (the phase space has dimension 2d).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import gamma as _gamma


def sphere_area(m: float) -> float:
    """Area of the unit sphere S^{m-1}, continued to real m via Gamma.

    omega_m = 2 pi^{m/2} / Gamma(m/2).  For negative non-even m the Gamma
    continuation gives a signed value; poles (m a non-positive even
    integer) are rejected.
    """
    m = float(m)
    if m <= 0 and abs(m / 2 - round(m / 2)) < 1e-12:
        raise ValueError(f"sphere_area pole at m={m} (Gamma pole)")
    return 2.0 * math.pi ** (m / 2.0) / _gamma(m / 2.0)


def riesz_constant(m: float, s: float) -> float:
    """c_{m,s} = (2 pi)^s |omega_{-s}| / omega_{m+s} for phase-space dim m.

    Negative s gives the constant of the Riesz kernel K_s (the same
    display with s -> -s).
    """
    if m <= 0:
        raise ValueError(f"dimension argument must be positive, got {m}")
    if abs(s) < 1e-300:
        raise ValueError("s = 0 hits the omega_0 pole")
    return (2.0 * math.pi) ** s * abs(sphere_area(-s)) / sphere_area(m + s)


def gagliardo_constant(s: float, p: float, d: int = 1) -> float:
    """Normalizing constant of the fractional Sobolev seminorm.

    gamma_{s,p} = p |omega_{-2s}| / (4 omega_{2d+sp}) *
                  (pi omega_{p+1} / s^{(p-2)/2})^s,
    calibrated so the p = 2 seminorm matches the spectral H^s norm.
    """
    if not 0 < s < 1:
        raise ValueError(f"s must lie in (0,1), got {s}")
    if p < 1 or math.isinf(p):
        raise ValueError(f"p must be a finite real >= 1, got {p}")
    lead = p * abs(sphere_area(-2.0 * s)) / (4.0 * sphere_area(2 * d + s * p))
    return lead * (math.pi * sphere_area(p + 1.0) / s ** ((p - 2.0) / 2.0)) ** s


class UnsupportedExponents(ValueError):
    """No closed form for this (s, p) pair; callers fall back to empirical estimation."""


def sobolev_constant(s: float, p: float, d: int = 1) -> float:
    """Sharp constant of the classical Sobolev inequality on R^{2d}.

    Two closed forms are known: s = 1 with p >= 1 (Talenti/Aubin) and
    p = 2 with s in (0,1] (Lieb).  They agree at (1,2).  The target
    exponent q is fixed by 1/p - 1/q = s/(2d) and must be finite.
    Other pairs raise UnsupportedExponents.
    """
    n = 2 * d
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    inv_q = 1.0 / p - s / n
    if inv_q <= 0:
        raise UnsupportedExponents(f"target exponent q diverges for s={s}, p={p}, d={d}")
    q = 1.0 / inv_q

    if s == 1:
        qp = q / (q - 1.0)
        if p == 1:
            pref = 1.0  # (q/p')^{1/p'} -> 1 as p' -> inf
        else:
            pp = p / (p - 1.0)
            pref = (q / pp) ** (1.0 / pp)
        w = (
            sphere_area(4 * d / p)
            * sphere_area(4 * d / qp)
            / (sphere_area(2 * d + 2) * sphere_area(4 * d))
        )
        # Exponent 1/(2d): with 1/d the display contradicts both the Lieb
        # form at (1,2) and the p=1 isoperimetric constant.
        return (1.0 / n) * pref * w ** (1.0 / n)

    if p == 2 and 0 < s <= 1:
        return (
            1.0
            / (math.pi**s * sphere_area(2 * d + 1) ** (s / n))
            * math.sqrt(sphere_area(2 * d + 2 * s) / sphere_area(2 * d - 2 * s))
        )

    raise UnsupportedExponents(f"no closed-form sharp constant for s={s}, p={p}")


def theta(s: float) -> float:
    """theta_s = sup_{r >= 0} (1 - e^{-r}) / r^s, for s in (0, 1].

    For s < 1 the supremum is attained at the root of e^r = 1 + r/s;
    theta_1 = 1 is the limiting value at r -> 0.  Always in (0, 1].
    """
    if not 0 < s <= 1:
        raise ValueError(f"s must lie in (0,1], got {s}")
    if s == 1:
        return 1.0

    def f(r):
        return math.expm1(r) - r / s

    hi = 1.0
    while f(hi) < 0:
        hi *= 2.0
        if hi > 1e6:  # cannot happen: the root is below ~2/(1-s)
            raise RuntimeError("theta root bracketing failed")
    r_star = brentq(f, 1e-12, hi, xtol=1e-14, rtol=1e-15)
    return float(-np.expm1(-r_star) / r_star**s)


def conjugate(p: float) -> float:
    """Holder conjugate with the conventions 1' = inf and inf' = 1."""
    if p < 1:
        raise ValueError(f"exponent must be >= 1, got {p}")
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)
