"""Quantitative verification of the phase-space inequalities.

Every check produces CheckRecords with the constant folded into the
right-hand side, so status == "pass" literally means ratio <= 1 + tol.
Checks whose constant the theory leaves unspecified are report-only:
they record the empirical constant and are judged collectively by the
hbar-stability aggregator (max/min across the sweep <= 2).

Tolerances: TOL_EXACT for identities that hold on the lattice up to
roundoff and interpolation-exact inequalities; TOL_QUAD for anything
resting on singular quadrature.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import constants as cn
from .calculus import dyadic_block, fractional_laplacian, quantum_gradient, resolvable_band, translate
from .families import make_operator, sobolev_optimizer_symbol
from .grids import PhaseGrid, SymbolField, gaussian_symbol, make_grid, sample_symbol
from .norms import (
    besov_norm_diff1,
    dyadic_block_norms,
    besov_norm_diff2,
    besov_norm_lp,
    bessel_norm,
    frobenius_lp2,
    holder_norm,
    mixed_schatten_norm,
    schatten_norm,
    sobolev_norm,
    sobolev_norm_frac,
)
from .quantize import KernelOperator, toplitz_quantize
from .calculus import semiclassical_convolve

TOL_EXACT = 1e-6
TOL_QUAD = 0.05
STABILITY_SPREAD = 2.0

PASS, FAIL, REPORT = "pass", "fail", "report-only"


@dataclass
class CheckRecord:
    check_id: str
    params: dict
    lhs: float
    rhs: float
    ratio: float
    bound: Optional[float]
    status: str

    @staticmethod
    def build(check_id, params, lhs, rhs, bound=None, tol=TOL_EXACT, report=False,
              two_sided=False) -> "CheckRecord":
        lhs, rhs = float(lhs), float(rhs)
        if rhs > 0:
            ratio = lhs / rhs
        else:
            ratio = float("nan") if lhs > 0 else 0.0
        if report:
            status = REPORT
        elif rhs == 0 and lhs == 0:
            status = REPORT
        elif two_sided:
            status = PASS if abs(ratio - 1.0) <= tol else FAIL
        else:
            status = PASS if ratio <= 1.0 + tol else FAIL
        return CheckRecord(check_id, dict(params), lhs, rhs, ratio, bound, status)


def _seed_for(master: int, *tags) -> int:
    text = "|".join(str(t) for t in tags)
    return (int(master) ^ zlib.crc32(text.encode())) & 0xFFFFFFFF


def _target_exponent(s: float, p: float, d: int) -> float:
    inv = 1.0 / p - s / (2 * d)
    if inv <= 1e-12:
        return math.inf
    return 1.0 / inv


def _gagliardo_norm(A: KernelOperator, s: float, p: float) -> float:
    """W^{s,p} seminorm: integer path at s = 1, fractional quadrature below."""
    if s == 1:
        return sobolev_norm(A, 1, p)
    return sobolev_norm_frac(A, s, p)


# ---------------------------------------------------------------------------
# individual checks


def check_young(f: SymbolField, A: KernelOperator, p: float, q: float, r: float,
                params=None) -> CheckRecord:
    """|f star A|_{L^p} <= |f|_{L^q} |A|_{L^r} with 1 + 1/p = 1/q + 1/r."""
    if abs(1.0 + 1.0 / p - 1.0 / q - 1.0 / r) > 1e-9:
        raise ValueError(f"Young exponents violate 1 + 1/p = 1/q + 1/r: {(p, q, r)}")
    lhs = schatten_norm(semiclassical_convolve(f, A), p)
    na = schatten_norm(A, r)
    rhs = f.lp_norm(q) * na
    pr = dict(params or {}, p=p, q=q, r=r)
    if na == 0:
        return CheckRecord.build("young", pr, 0.0, 0.0, report=True)
    return CheckRecord.build("young", pr, lhs, rhs, tol=TOL_EXACT)


def check_hls(a: float, A: KernelOperator, p: float, r: float, params=None) -> list:
    """|z|^{-a} convolution bound; the constant is unspecified, so report-only.

    The weak norm of |z|^{-a} in L^{2d/a, infinity} is (omega_2d / 2d)^{a/(2d)}.
    """
    grid = A.grid
    d = grid.d
    q = 2 * d / a
    if not 1 < q < math.inf:
        raise ValueError(f"a={a} leaves the weak exponent {q} outside (1, inf)")
    if not (1 < r <= p):
        raise ValueError(f"HLS needs 1 < r <= p, got r={r}, p={p}")
    if abs(1.0 + 1.0 / p - 1.0 / q - 1.0 / r) > 1e-9:
        raise ValueError(f"HLS exponents violate the convolution relation: {(p, q, r)}")

    def kernel(x, xi):
        rad = np.sqrt(x**2 + xi**2)
        with np.errstate(divide="ignore"):
            out = rad ** (-a)
        return np.where(rad > 0, out, 0.0)

    f = sample_symbol(grid, kernel)
    weak = (cn.sphere_area(2 * d) / (2 * d)) ** (a / (2 * d))
    lhs = schatten_norm(semiclassical_convolve(f, A), p)
    rhs = weak * schatten_norm(A, r)
    pr = dict(params or {}, a=a, p=p, q=q, r=r)
    return [CheckRecord.build("hls", pr, lhs, rhs, report=True)]


def _gagliardo_bounds(s: float, p: float, q: float, d: int) -> dict:
    """All applicable explicit bounds on the uniform constant, keyed by origin."""
    bounds = {}
    if s == 1:
        cs = cn.sobolev_constant(1, p, d)
        bounds["grad"] = cs + cn.sphere_area(2 * d) / cn.sphere_area(2 * d + 1)
    if p == 2 or q == 2:
        try:
            cs = cn.sobolev_constant(s, 2, d) if p == 2 else cn.sobolev_constant(s, p, d)
            bounds["gaussian"] = cs + cn.theta(s) / (8 * math.pi) ** (s / 2)
        except cn.UnsupportedExponents:
            pass
    if 0 < s < 1:
        try:
            cs = cn.sobolev_constant(s, p, d)
            r = max(p, cn.conjugate(p))
            gam = cn.gagliardo_constant(s, p, d)
            pp = cn.conjugate(p)
            corr = (1 - 2.0 ** ((s - 1) * r)) ** (1.0 / r) / (gam ** (1.0 / p) * pp ** (d + s / 2))
            corr *= (cn.sphere_area(2 * d) / cn.sphere_area((2 * d + s) * pp)) ** (1.0 / pp)
            bounds["frac"] = cs + corr
        except cn.UnsupportedExponents:
            pass
    return bounds


def check_gagliardo_sobolev(A: KernelOperator, s: float, p: float, params=None) -> list:
    """|A|_{L^q} <= C |A|_{W^{s,p}} against the sharpest applicable explicit bound."""
    d = A.grid.d
    q = _target_exponent(s, p, d)
    if math.isinf(q):
        raise ValueError(f"target exponent diverges for s={s}, p={p}, d={d}")
    lhs = schatten_norm(A, q)
    wn = _gagliardo_norm(A, s, p)
    pr = dict(params or {}, s=s, p=p, q=q)
    bounds = _gagliardo_bounds(s, p, q, d)
    if not bounds:
        if wn == 0:
            return [CheckRecord.build("gagliardo_sobolev", pr, lhs, 0.0, report=True)]
        return [CheckRecord.build("gagliardo_sobolev", pr, lhs, wn, report=True)]
    best = min(bounds.values())
    return [CheckRecord.build("gagliardo_sobolev", pr, lhs, best * wn, bound=best, tol=TOL_QUAD)]


def check_sobolev_product(A: KernelOperator, p: float, params=None) -> CheckRecord:
    """Dilation-optimized product form at s = 1:
    |A|_{L^q} <= 2^{1/r} C (|grad_x A|_p |grad_xi A|_p)^{1/2}, r = min(p, 2)."""
    grid = A.grid
    d = grid.d
    q = _target_exponent(1.0, p, d)
    if math.isinf(q):
        raise ValueError(f"target exponent diverges for p={p}, d={d}")
    r = min(p, 2.0)
    cbound = _gagliardo_bounds(1.0, p, q, d)["grad"]
    g = quantum_gradient(A)
    w = grid.dx**d
    scale = 1.0 if math.isinf(p) else grid.h ** (d / p)
    nx = scale * mixed_schatten_norm([c.kernel * w for c in g.grad_x], p, 2, "inner")
    nxi = scale * mixed_schatten_norm([c.kernel * w for c in g.grad_xi], p, 2, "inner")
    lhs = schatten_norm(A, q)
    rhs = 2.0 ** (1.0 / r) * cbound * math.sqrt(nx * nxi)
    pr = dict(params or {}, s=1.0, p=p, q=q)
    return CheckRecord.build("sobolev_product", pr, lhs, rhs, bound=cbound, tol=TOL_QUAD)


def check_bessel_sobolev(A: KernelOperator, s: float, p: float, params=None,
                         grad_route: bool = True) -> list:
    """|A|_{L^q} <= C |(-Delta)^{s/2} A|_{L^p}; explicit constant when p <= 2 <= q."""
    if p <= 1:
        raise ValueError("Bessel route needs p > 1")
    d = A.grid.d
    q = _target_exponent(s, p, d)
    if math.isinf(q):
        raise ValueError(f"target exponent diverges for s={s}, p={p}, d={d}")
    lhs = schatten_norm(A, q)
    hn = bessel_norm(A, s, p)
    pr = dict(params or {}, s=s, p=p, q=q)
    records = []
    theta_term = lambda t: (cn.theta(t) / (8 * math.pi) ** (t / 2)) if t > 0 else 1.0
    if p == 2:
        bound = cn.sobolev_constant(s, 2, d) + theta_term(s)
        records.append(CheckRecord.build("bessel_sobolev", pr, lhs, bound * hn, bound=bound, tol=TOL_QUAD))
    elif q == 2:
        # dual form: the classical constant for target L^2 equals the p = 2 display
        bound = cn.sobolev_constant(s, 2, d) + theta_term(s)
        records.append(CheckRecord.build("bessel_sobolev", pr, lhs, bound * hn, bound=bound, tol=TOL_QUAD))
    elif p <= 2 <= q:
        st = 2 * d * (0.5 - 1.0 / q)
        b1 = cn.sobolev_constant(st, 2, d) + theta_term(st) if st > 0 else 2.0
        rem = s - st
        b2 = (cn.sobolev_constant(rem, 2, d) + theta_term(rem)) if rem > 0 else 2.0
        bound = b1 * b2
        pr2 = dict(pr, s_tilde=st)
        records.append(CheckRecord.build("bessel_sobolev", pr2, lhs, bound * hn, bound=bound, tol=TOL_QUAD))
    else:
        records.append(CheckRecord.build("bessel_sobolev", pr, lhs, hn, report=True))
    # intermediate route through the gradient: |A|_q <= C |(-D)^{(s-1)/2} grad A|_p
    if grad_route and 0 < s < 2 * d - 1 + 1e-12 and s != 1:
        g = quantum_gradient(A)
        comps = [fractional_laplacian(c, (s - 1) / 2.0) for c in g.all_components()]
        w = A.grid.dx**d
        scale = 1.0 if math.isinf(p) else A.grid.h ** (d / p)
        rhs = scale * mixed_schatten_norm([c.kernel * w for c in comps], p, 2, "inner")
        records.append(CheckRecord.build("bessel_sobolev_grad", pr, lhs, rhs, report=True))
    return records


def check_morrey(A: KernelOperator, s: float, theta: float, params=None) -> CheckRecord:
    """Holder-norm Morrey embedding; no closed-form constant, report-only."""
    if not 0 < theta < s <= 1:
        raise ValueError(f"need 0 < theta < s <= 1, got theta={theta}, s={s}")
    d = A.grid.d
    p = 2 * d / (s - theta)
    lhs = holder_norm(A, theta)
    rhs = _gagliardo_norm(A, s, p)
    pr = dict(params or {}, s=s, theta=theta, p=p)
    return CheckRecord.build("morrey", pr, lhs, rhs, report=True)


def check_uncertainty(A: KernelOperator, params=None) -> CheckRecord:
    """D_x^2 = h^{2d} iint |x-y|^2 |A(x,y)|^2 <= 2 sigma_x^2 for normalized states."""
    grid = A.grid
    d = grid.d
    tr = A.trace().real * grid.h**d
    if abs(tr) < 1e-300:
        raise ValueError("state has zero trace; cannot normalize")
    K = A.kernel / (tr / grid.h**d) / grid.h**d  # h^d tr -> 1
    n = grid.n_points
    xflat = np.broadcast_to(
        grid.x.reshape((n,) + (1,) * (d - 1)), (n,) * d
    ).ravel() if d > 1 else grid.x
    period = 2.0 * grid.half_width
    diff = (xflat[:, None] - xflat[None, :] + grid.half_width) % period - grid.half_width
    diff2 = diff**2
    w = grid.dx**d
    lhs = grid.h ** (2 * d) * float(np.sum(diff2 * np.abs(K) ** 2)) * w**2
    mean = float(np.real(np.sum(xflat * np.diag(K))) * w * grid.h**d)
    second = float(np.real(np.sum(xflat**2 * np.diag(K))) * w * grid.h**d)
    sigma2 = second - mean**2
    return CheckRecord.build("uncertainty", dict(params or {}), lhs, 2.0 * sigma2, tol=TOL_EXACT)


def check_besov_suite(A: KernelOperator, s: float, p: float, r: float, params=None,
                      block_norms=None) -> list:
    """All comparison statements between the Besov variants and the Sobolev norms."""
    grid = A.grid
    d = grid.d
    pr = dict(params or {}, s=s, p=p, r=r)
    out = []
    pp = cn.conjugate(p)
    rr = cn.conjugate(r)

    b2 = besov_norm_diff2(A, s, p, r) if s < 2 else None
    if 0 < s < 1:
        b1 = besov_norm_diff1(A, s, p, r)
        r0 = max(p, pp, r, rr)
        r0p = cn.conjugate(r0)
        lo = (2.0**r0p - 2.0 ** (s * r0p)) ** (1.0 / r0p)
        hi = (2.0**r0 - 2.0 ** (s * r0)) ** (1.0 / r0)
        out.append(CheckRecord.build("besov_diff2_vs_diff1_upper", pr, b2, hi * b1, bound=hi, tol=TOL_QUAD))
        out.append(CheckRecord.build("besov_diff2_vs_diff1_lower", pr, lo * b1, b2, bound=lo, tol=TOL_QUAD))

        if p < math.inf:
            gam = cn.gagliardo_constant(s, p, d)
            wn = sobolev_norm_frac(A, s, p)
            bpp = besov_norm_diff2(A, s, p, p)
            # triangle-inequality bracket, any p
            out.append(CheckRecord.build(
                "besov_sobolev_frac_upper", pr, gam ** (1.0 / p) * bpp, 2.0 * wn, bound=2.0, tol=TOL_QUAD))
            out.append(CheckRecord.build(
                "besov_sobolev_frac_lower", pr, (2.0 - 2.0**s) * wn, gam ** (1.0 / p) * bpp,
                bound=2.0 - 2.0**s, tol=TOL_QUAD))
            # sharped two-sided form; direction flips across p = 2
            lo2 = (2.0**pp - 2.0 ** (s * pp)) ** (1.0 / pp) / gam ** (1.0 / p)
            hi2 = ((2.0**p - 2.0 ** (s * p)) / gam) ** (1.0 / p)
            if p >= 2:
                out.append(CheckRecord.build("besov_sharp_upper", pr, bpp, hi2 * wn, bound=hi2, tol=TOL_QUAD))
                out.append(CheckRecord.build("besov_sharp_lower", pr, lo2 * wn, bpp, bound=lo2, tol=TOL_QUAD))
            else:
                out.append(CheckRecord.build("besov_sharp_upper", pr, lo2 * wn, bpp, bound=lo2, tol=TOL_QUAD))
                out.append(CheckRecord.build("besov_sharp_lower", pr, bpp, hi2 * wn, bound=hi2, tol=TOL_QUAD))
        if p == 2:
            hs = bessel_norm(A, s, 2)
            gam = cn.gagliardo_constant(s, 2, d)
            b22 = besov_norm_diff2(A, s, 2, 2)
            out.append(CheckRecord.build(
                "besov_bessel_identity", pr, hs**2, gam / (4.0 - 4.0**s) * b22**2, tol=0.02, two_sided=True))
        # interpolation bound with explicit constant
        lp = schatten_norm(A, p)
        w1 = sobolev_norm(A, 1, p)
        cs = 2.0 ** (1 - s) * (cn.sphere_area(2 * d) / (s * (1 - s) * r)) ** (1.0 / r) if r < math.inf else 2.0 ** (1 - s)
        out.append(CheckRecord.build(
            "besov_interpolation", pr, 0.5 * b2, cs * lp ** (1 - s) * w1**s, bound=cs, tol=TOL_QUAD))
        # Littlewood-Paley equivalence, report-only two-sided constant
        bn = block_norms if (block_norms is not None and p == 2) else None
        blp = besov_norm_lp(A, s, p, r, block_norms=bn)
        out.append(CheckRecord.build("besov_lp_over_diff1", pr, blp, b1, report=True))

    if s == 1:
        binf = besov_norm_diff2(A, 1.0, p, math.inf)
        w1 = sobolev_norm(A, 1, p)
        out.append(CheckRecord.build("besov_sobolev_s1", pr, binf, 2.0 * w1, bound=2.0, tol=TOL_QUAD))
        if p == 2:
            g2 = sobolev_norm(A, 1, 2)
            b122 = besov_norm_diff2(A, 1.0, 2, 2)
            const = d / (math.log(4.0) * cn.sphere_area(2 * d))
            out.append(CheckRecord.build(
                "gradient_besov_identity", pr, g2**2, const * b122**2, tol=0.02, two_sided=True))
    return out


def check_besov_scales(A: KernelOperator, s: float, p: float, params=None,
                       block_norms=None) -> list:
    """Third-index monotonicity, order-0 Schatten comparison, and the Besov
    Sobolev embedding; constants unspecified, report-only."""
    pr = dict(params or {}, s=s, p=p)
    out = []
    bn = block_norms if (block_norms is not None and p == 2) else dyadic_block_norms(A, p)
    for r_small, r_big in [(1.0, 2.0), (2.0, math.inf)]:
        big = besov_norm_lp(A, s, p, r_big, block_norms=bn)
        small = besov_norm_lp(A, s, p, r_small, block_norms=bn)
        out.append(CheckRecord.build(
            "besov_inclusion", dict(pr, r_small=r_small, r_big=r_big), big, small, report=True))
    lp = schatten_norm(A, p)
    out.append(CheckRecord.build(
        "besov_vs_schatten_lower", pr, besov_norm_lp(A, 0.0, p, math.inf, block_norms=bn), lp, report=True))
    out.append(CheckRecord.build(
        "besov_vs_schatten_upper", pr, lp, besov_norm_lp(A, 0.0, p, 1.0, block_norms=bn), report=True))
    d = A.grid.d
    q = _target_exponent(s / 2, p, d)  # s0 = s/2, s1 = s
    if not math.isinf(q):
        out.append(CheckRecord.build(
            "besov_sobolev_embedding", dict(pr, s0=s / 2, q=q),
            besov_norm_diff1(A, s / 2, q, 2.0), besov_norm_diff1(A, s, p, 2.0), report=True))
    return out


def check_bernstein(A: KernelOperator, p: float, q: float, n_grad: int, params=None,
                    block_norms=None) -> list:
    """|grad^n block_j A|_{L^q} <= C 2^{j(n + 2d(1/p - 1/q))} |A|_{L^p}.

    The empirical constant is the sup of the per-block ratio over the
    resolvable dyadic band (the block carrying the operator's bulk moves
    with hbar, so only the sup is hbar-comparable).  Blocks whose L^2
    mass cannot reach the running sup are pruned via the spectral bound
    |grad^n block_j|_{L^2} <= (4 pi 2^j)^n |block_j|_{L^2}."""
    grid = A.grid
    d = grid.d
    base = schatten_norm(A, p)
    js, mass = block_norms if block_norms is not None else dyadic_block_norms(A, 2.0)
    growth = lambda j: 2.0 ** (j * (n_grad + 2 * d * (1.0 / p - 1.0 / q)))
    if n_grad == 0 and q == 2:
        best = max(m / (growth(j) * base) for j, m in zip(js, mass))
        return [CheckRecord.build(
            "bernstein", dict(params or {}, p=p, q=q, n=n_grad), best * base, base, report=True)]
    order = sorted(range(len(js)), key=lambda i: -(
        (4.0 * np.pi * 2.0 ** js[i]) ** n_grad * mass[i] / growth(js[i])))
    best = 0.0
    for i in order:
        j = js[i]
        if (4.0 * np.pi * 2.0**j) ** n_grad * mass[i] / (growth(j) * base) <= best:
            break
        blk = dyadic_block(A, j)
        val = sobolev_norm(blk, n_grad, q) if n_grad else schatten_norm(blk, q)
        best = max(best, val / (growth(j) * base))
    return [CheckRecord.build(
        "bernstein", dict(params or {}, p=p, q=q, n=n_grad), best * base, base, report=True)]


def check_riesz_transform(A: KernelOperator, p: float, params=None) -> CheckRecord:
    """Empirical L^p ratio of the Riesz Schur multiplier (conjectured bounded)."""
    from .calculus import riesz_schur_multiplier

    lhs = schatten_norm(riesz_schur_multiplier(A), p)
    rhs = schatten_norm(A, p)
    return CheckRecord.build("riesz_multiplier", dict(params or {}, p=p), lhs, rhs, report=True)


def estimate_lower_bound(s: float, p: float, hbar_list, half_width=8.0, base_points=64,
                         seed=0, lam=1.0, params=None) -> list:
    """Ratio R(hbar) = |T(g_{s,p})|_{L^q} / |T(g_{s,p})|_{W^{s,p}} per hbar.

    R should climb toward the classical sharp constant as hbar shrinks.
    Report records per hbar plus pass/fail records for monotonicity and
    closeness (>= 0.9 C_S at the smallest hbar).
    """
    d = 1
    q = _target_exponent(s, p, d)
    if math.isinf(q):
        raise ValueError(f"target exponent diverges for s={s}, p={p}")
    cs = cn.sobolev_constant(s, p, d)
    hbar_list = sorted(hbar_list, reverse=True)
    ratios = []
    out = []
    for hb in hbar_list:
        n = scaled_points(base_points, hb)
        grid = make_grid(1, n, half_width, hb)
        A = toplitz_quantize(sobolev_optimizer_symbol(grid, s, p, lam=lam))
        lhs = schatten_norm(A, q)
        wn = _gagliardo_norm(A, s, p)
        ratio = lhs / wn
        ratios.append(ratio)
        out.append(CheckRecord.build(
            "lower_bound_ratio", dict(params or {}, s=s, p=p, q=q, hbar=hb, n_points=n),
            lhs, wn, bound=cs, report=True))
    mono = all(b >= a - 1e-9 for a, b in zip(ratios, ratios[1:]))
    pr = dict(params or {}, s=s, p=p, q=q, hbar_min=hbar_list[-1])
    out.append(CheckRecord(
        "lower_bound_monotone", pr, float(ratios[-1]), float(ratios[0]),
        float(ratios[-1] / ratios[0]), None, PASS if mono else FAIL))
    out.append(CheckRecord.build("lower_bound_close", pr, 0.9 * cs, ratios[-1], bound=cs, tol=0.0))
    return out


# ---------------------------------------------------------------------------
# suite driver


def scaled_points(base: int, hbar: float, cap: int = 512) -> int:
    """n_points scaling ~ 1/sqrt(hbar), even, capped."""
    n = int(round(base / math.sqrt(hbar)))
    n += n % 2
    return min(n, cap)


def stability_records(records: list) -> list:
    """Group report-only constants by everything but hbar; pass iff max/min <= 2."""
    groups: dict = {}
    for rec in records:
        if rec.status != REPORT or "hbar" not in rec.params:
            continue
        if not (math.isfinite(rec.ratio) and rec.ratio > 0):
            continue
        key = (rec.check_id, tuple(sorted(
            (k, v) for k, v in rec.params.items() if k not in ("hbar", "n_points", "seed"))))
        groups.setdefault(key, []).append(rec.ratio)
    out = []
    for (cid, key), vals in sorted(groups.items()):
        if len(vals) < 2:
            continue
        spread = max(vals) / min(vals)
        params = dict(key)
        params["n_hbar"] = len(vals)
        out.append(CheckRecord(
            f"{cid}_hbar_stability", params, max(vals), min(vals), spread,
            STABILITY_SPREAD, PASS if spread <= STABILITY_SPREAD else FAIL))
    return out


ALL_SUITES = (
    "young",
    "hls",
    "gagliardo_sobolev",
    "bessel_sobolev",
    "morrey",
    "besov",
    "bernstein",
    "riesz",
    "uncertainty",
    "lower_bound",
)


@dataclass
class Report:
    records: list
    summary: dict = field(default_factory=dict)

    def finalize(self):
        self.records.sort(key=lambda r: (r.check_id, sorted_params_string(r.params)))
        n_pass = sum(1 for r in self.records if r.status == PASS)
        n_fail = sum(1 for r in self.records if r.status == FAIL)
        n_rep = sum(1 for r in self.records if r.status == REPORT)
        worst: dict = {}
        for r in self.records:
            if r.status in (PASS, FAIL) and math.isfinite(r.ratio):
                worst[r.check_id] = max(worst.get(r.check_id, 0.0), r.ratio)
        self.summary = {
            "n_records": len(self.records),
            "n_pass": n_pass,
            "n_fail": n_fail,
            "n_report_only": n_rep,
            "worst_ratio": {k: worst[k] for k in sorted(worst)},
        }
        return self


def sorted_params_string(params: dict) -> str:
    items = []
    for k in sorted(params):
        v = params[k]
        if isinstance(v, float):
            items.append(f"{k}={v:.12g}")
        else:
            items.append(f"{k}={v}")
    return ",".join(items)


def run_suite(config) -> Report:
    """Execute the configured checks over families x hbar x exponents.

    Exponent pairs violating a theorem's hypotheses are skipped, not
    failed.  Fractional quadratures at p not in {2} need per-offset
    singular values, so they run only on low-rank families at the
    moderate end of the hbar sweep.  Deterministic for a fixed seed.
    """
    suites = set(config.suites) if list(config.suites) != ["all"] else set(ALL_SUITES)
    unknown = suites - set(ALL_SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    records: list = []
    d, base_n, half_width = config.grid
    if d != 1:
        raise ValueError("the harness sweeps are built for d = 1")

    s_frac = [s for s in config.s_list if 0 < s < 1]
    heavy_hbars = set([hb for hb in sorted(config.hbar_list, reverse=True)
                       if scaled_points(base_n, hb) <= 200][:3])

    for family in config.families:
        # one seed per family: every hbar sees the same dimensionless draws,
        # so the sweep measures hbar-dependence, not sample variation
        seed = _seed_for(config.seed, family)
        for hb in sorted(config.hbar_list, reverse=True):
            n = scaled_points(base_n, hb)
            grid = make_grid(1, n, half_width, hb)
            rng = np.random.default_rng(seed)
            A = make_operator(family, grid, rng, rank=config.rank)
            base = {"family": family, "hbar": hb, "n_points": n, "seed": seed}
            heavy_ok = A.factors is not None and hb in heavy_hbars
            bn2 = dyadic_block_norms(A, 2.0) if suites & {"besov", "bernstein"} else None

            if "young" in suites:
                f = gaussian_symbol(grid)
                for (p, q, r) in [(2.0, 1.0, 2.0), (1.0, 1.0, 1.0), (2.0, 2.0, 1.0)]:
                    records.append(check_young(f, A, p, q, r, params=base))
            if "hls" in suites:
                records.extend(check_hls(1.0, A, 3.0, 1.2, params=base))
            if "gagliardo_sobolev" in suites:
                for s in config.s_list:
                    for p in config.p_list:
                        q = _target_exponent(s, p, d)
                        if math.isinf(q):
                            continue  # hypothesis q < inf violated: skip
                        fast = s == 1 or p == 2
                        if not (fast or heavy_ok):
                            continue
                        records.extend(check_gagliardo_sobolev(A, s, p, params=base))
                for p in config.p_list:
                    if not math.isinf(_target_exponent(1.0, p, d)):
                        records.append(check_sobolev_product(A, p, params=base))
            if "bessel_sobolev" in suites:
                pairs = [(s, 2.0) for s in config.s_list if 2.0 in config.p_list]
                pairs += [(1.0, p) for p in config.p_list
                          if 1 < p < 2 and not math.isinf(_target_exponent(1.0, p, d))]
                for s, p in pairs:
                    q = _target_exponent(s, p, d)
                    if p <= 1 or math.isinf(q):
                        continue
                    records.extend(check_bessel_sobolev(A, s, p, params=base,
                                                        grad_route=heavy_ok))
            if "morrey" in suites and A.factors is not None:
                for (s, th) in [(1.0, 0.5), (0.75, 0.25)]:
                    if s in config.s_list:
                        records.append(check_morrey(A, s, th, params=base))
            if "besov" in suites:
                for s in s_frac:
                    for r in config.r_list:
                        records.extend(check_besov_suite(A, s, 2.0, r, params=base, block_norms=bn2))
                records.extend(check_besov_suite(A, 1.0, 2.0, 2.0, params=base, block_norms=bn2))
                records.extend(check_besov_scales(A, 0.5, 2.0, params=base, block_norms=bn2))
                if heavy_ok:
                    for p in config.p_list:
                        if p in (1.0, 2.0):
                            continue
                        records.extend(check_besov_suite(A, 0.5, p, p, params=base))
            if "bernstein" in suites:
                records.extend(check_bernstein(A, 2.0, 2.0, 1, params=base, block_norms=bn2))
                records.extend(check_bernstein(A, 1.0, 2.0, 0, params=base, block_norms=bn2))
            if "riesz" in suites:
                for p in config.p_list:
                    if 1 < p < math.inf:
                        records.append(check_riesz_transform(A, p, params=base))
            if "uncertainty" in suites:
                rng2 = np.random.default_rng(_seed_for(config.seed, family, "psd"))
                P = make_operator(family, grid, rng2, rank=config.rank, hermitian=True)
                records.append(check_uncertainty(P, params=base))

    if "lower_bound" in suites:
        records.extend(estimate_lower_bound(
            0.5, 2.0, config.hbar_list, half_width=half_width,
            base_points=base_n, seed=config.seed, params={"family": "toplitz-sobolev-optimizer"}))

    records.extend(stability_records(records))
    return Report(records).finalize()
