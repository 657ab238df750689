"""Bivariate exponent functions governing the Boolean-cube bounds.

All functions return base-2 exponents normalized per dimension n. The core
objects, with x always a degree-like ratio and y a point-like ratio in
[0, 1/2]:

- r(x,y): one-step ratio K_s(i+1)/K_s(i) in the exponential regime;
- exponent_I(x,y) = -1 + integral_0^y log2 r(x,z) dz (closed form);
- tau(x,y): log2 K_s(i)/n profile, piecewise across the root-region boundary
  y = 1/2 - sqrt(x(1-x));
- h, g, a: the auxiliary one-parameter families;
- psi(p,x): the lp/l2 moment-ratio exponent, two representations;
- pi(x,y): spectral-projection exponent, symmetric and nonpositive;
- alpha, x*, phi, tilde_phi: noise-stability exponents for sets;
- eta, eta_p: hypercontractive exponents in terms of the lp/l1 ratio.

Implicit equations are solved by bisection on monotone maps only. The few
removable singularities (y = 0 rows, sigma or eps in {0, 1/2}) are evaluated
by their analytic limits, noted inline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .numerics import InputError, InternalError, binary_entropy, inverse_entropy

_SLACK = 1e-12


def _clamp01(t: float) -> float:
    return 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)


def root_region_boundary(x: float) -> float:
    """The point-ratio boundary y = 1/2 - sqrt(x(1-x)) of the root region."""
    return 0.5 - math.sqrt(x * (1.0 - x))


def ratio_r(x: float, y: float) -> float:
    """r(x,y) = ((1-2x) + sqrt((1-2x)^2 - 4y(1-y))) / (2(1-y)).

    Defined for 0 <= x <= 1/2 and 0 <= y <= 1/2 - sqrt(x(1-x)); decreasing
    in y with r(x,0) = 1-2x and r(0,y) = 1.
    """
    if not (0.0 <= x <= 0.5 + _SLACK):
        raise InputError(f"ratio_r: x={x} outside [0, 1/2]")
    if y < -_SLACK or y > root_region_boundary(x) + 1e-9:
        raise InputError(f"ratio_r: y={y} outside [0, 1/2 - sqrt(x(1-x))] for x={x}")
    a = 1.0 - 2.0 * x
    disc = a * a - 4.0 * y * (1.0 - y)
    b = math.sqrt(max(disc, 0.0))
    return (a + b) / (2.0 * (1.0 - y))


def _I_closed(u: float, v: float) -> float:
    """Closed-form antiderivative, u = point ratio, v = degree ratio > 0.

    With a = 1-2v and b = sqrt(a^2 - 4u(1-u)):
    log2(1-u) + (a/2) log2(1-2u-b) + u log2((a+b)/(2(1-u)))
    - (1/2) log2(2(1-u) - a^2 - ab).
    Requires u(1-u) + v(1-v) <= 1/4 with v > 0 (so 1-2u-b > 0).
    """
    a = 1.0 - 2.0 * v
    disc = a * a - 4.0 * u * (1.0 - u)
    b = math.sqrt(max(disc, 0.0))
    t1 = math.log2(1.0 - u)
    t2 = 0.5 * a * math.log2(1.0 - 2.0 * u - b)
    t3 = u * math.log2((a + b) / (2.0 * (1.0 - u))) if u > 0.0 else 0.0
    t4 = -0.5 * math.log2(2.0 * (1.0 - u) - a * a - a * b)
    return t1 + t2 + t3 + t4


def exponent_I(x_deg: float, y_pt: float) -> float:
    """The anchored antiderivative of log2 r along the point ratio:

    exponent_I(x, y) = -1 + integral_0^y log2 r(x, z) dz,

    so exponent_I(x, 0) = -1 for every x, and exponent_I(0, y) = -1 since
    r(0, .) = 1. Computed in closed form for x, y > 0.
    """
    if not (0.0 <= x_deg <= 0.5 + _SLACK):
        raise InputError(f"exponent_I: x_deg={x_deg} outside [0, 1/2]")
    if y_pt < -_SLACK or y_pt > root_region_boundary(x_deg) + 1e-9:
        raise InputError(
            f"exponent_I: y_pt={y_pt} outside the root region for x_deg={x_deg}"
        )
    if y_pt <= 0.0 or x_deg <= 0.0:
        return -1.0
    return _I_closed(y_pt, x_deg) - _I_closed(0.0, x_deg) - 1.0


def tau(x: float, y: float) -> float:
    """tau(x,y): the normalized log2-magnitude profile of degree-x polynomials
    at point ratio y.

    H(x) + exponent_I(x,y) + 1 inside the root region, (1+H(x)-H(y))/2
    outside; continuous across the seam; tau(x,0) = H(x), tau(x,1/2) = H(x)/2.
    """
    if not (0.0 <= x <= 0.5 + _SLACK and 0.0 <= y <= 0.5 + _SLACK):
        raise InputError(f"tau: (x,y)=({x},{y}) outside [0, 1/2]^2")
    x = min(max(x, 0.0), 0.5)
    y = min(max(y, 0.0), 0.5)
    if y <= root_region_boundary(x):
        return binary_entropy(x) + exponent_I(x, y) + 1.0
    return 0.5 * (1.0 + binary_entropy(x) - binary_entropy(y))


def little_h(p: float, x: float) -> float:
    """h(p,x) = x^{1/p}(1-x)^{(p-1)/p} + x^{(p-1)/p}(1-x)^{1/p};
    increases from 0 to 1 on x in [0, 1/2]."""
    if p < 2:
        raise InputError(f"little_h: need p >= 2, got p={p}")
    if not (0.0 <= x <= 0.5 + _SLACK):
        raise InputError(f"little_h: x={x} outside [0, 1/2]")
    if x <= 0.0:
        return 0.0
    x = min(x, 0.5)
    u, v = 1.0 / p, (p - 1.0) / p
    return x ** u * (1.0 - x) ** v + x ** v * (1.0 - x) ** u


def little_g(p: float, x: float) -> float:
    """g(p,x) = x^{1/p}(1-x)^{(p-1)/p} - x^{(p-1)/p}(1-x)^{1/p} >= 0;
    h^2 - g^2 = 4x(1-x)."""
    if p < 2:
        raise InputError(f"little_g: need p >= 2, got p={p}")
    if not (0.0 <= x <= 0.5 + _SLACK):
        raise InputError(f"little_g: x={x} outside [0, 1/2]")
    if x <= 0.0:
        return 0.0
    x = min(x, 0.5)
    u, v = 1.0 / p, (p - 1.0) / p
    return x ** u * (1.0 - x) ** v - x ** v * (1.0 - x) ** u


def solve_h_inverse(p: float, target: float, iterations: int = 120) -> float:
    """y in [0, 1/2] with h(p, y) = target; bisection on the increasing h.

    Bisects in log2(y): near 0 the solution is y ~ target^p, far below any
    absolute grid on [0, 1/2], while h(2^z) stays monotone in z.
    """
    if not (0.0 <= target <= 1.0):
        raise InputError(f"solve_h_inverse: target={target} outside [0, 1]")
    if target == 0.0:
        return 0.0
    if target == 1.0:
        return 0.5
    # h(p,y) <= 2 y^{1/p}, so z below p(log2(target) - 1) brackets from the left
    lo = p * (math.log2(target) - 1.0) - 1.0
    hi = -1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if little_h(p, 2.0 ** mid) < target:
            lo = mid
        else:
            hi = mid
    return 2.0 ** (0.5 * (lo + hi))


def a_fn(p: float, delta: float) -> float:
    """a(p,delta) = (1/2 - delta) ((1-d)^{p-1} - d^{p-1}) / ((1-d)^p + d^p);
    decreases from 1/2 at delta = 0 to 0 at delta = 1/2."""
    if p < 2:
        raise InputError(f"a_fn: need p >= 2, got p={p}")
    if not (0.0 <= delta <= 0.5 + _SLACK):
        raise InputError(f"a_fn: delta={delta} outside [0, 1/2]")
    d = min(max(delta, 0.0), 0.5)
    num = (1.0 - d) ** (p - 1.0) - d ** (p - 1.0)
    den = (1.0 - d) ** p + d ** p
    return (0.5 - d) * num / den


def solve_a_inverse(p: float, x: float, iterations: int = 80) -> float:
    """delta in [0, 1/2] with a(p, delta) = x; bisection on the decreasing a."""
    if not (0.0 <= x <= 0.5):
        raise InputError(f"solve_a_inverse: x={x} outside [0, 1/2]")
    if x == 0.5:
        return 0.0
    if x == 0.0:
        return 0.5
    lo, hi = 0.0, 0.5  # a decreasing: a(lo) = 1/2 >= x >= 0 = a(hi)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if a_fn(p, mid) > x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class PsiEval:
    """psi(p,x) with both representations and the auxiliary solutions."""

    p: float
    x: float
    value: float  # first representation H(y) - 1 + p tau(x,y) - (p/2) H(x)
    second_value: float  # (p-1) + log2((1-d)^p + d^p) - (p/2)H(x) - px log2(1-2d)
    y_aux: float  # h(p, y) = 1 - 2x
    delta_aux: float  # a(p, delta) = x


def psi(p: float, x: float) -> PsiEval:
    """The moment-ratio exponent psi(p, x).

    First representation: H(y) - 1 + p tau(x,y) - (p/2) H(x) with
    h(p,y) = 1-2x. Second: (p-1) + log2((1-d)^p + d^p) - (p/2) H(x)
    - p x log2(1-2d) with a(p,d) = x. Both are computed and reconciled;
    disagreement beyond 1e-6 raises InternalError.
    """
    if p < 2:
        raise InputError(f"psi: need p >= 2, got p={p}")
    if not (0.0 <= x <= 0.5 + _SLACK):
        raise InputError(f"psi: x={x} outside [0, 1/2]")
    x = min(max(x, 0.0), 0.5)
    if x == 0.0:
        # y = 1/2, delta = 1/2; both representations collapse to 0 in the limit
        return PsiEval(p, x, 0.0, 0.0, 0.5, 0.5)
    if p == 2.0:
        # h(2,y) = 1-2x lands y on the root-region boundary and both
        # representations vanish identically
        return PsiEval(p, x, 0.0, 0.0, root_region_boundary(x), solve_a_inverse(2.0, x))
    y = solve_h_inverse(p, 1.0 - 2.0 * x)
    hx = binary_entropy(x)
    rep1 = binary_entropy(y) - 1.0 + p * tau(x, y) - 0.5 * p * hx
    d = solve_a_inverse(p, x)
    rep2 = (
        (p - 1.0)
        + math.log2((1.0 - d) ** p + d ** p)
        - 0.5 * p * hx
        - p * x * math.log2(1.0 - 2.0 * d)
    )
    if abs(rep1 - rep2) > 1e-6:
        raise InternalError(
            f"psi: representations disagree by {abs(rep1 - rep2):.3e} at p={p}, x={x}"
        )
    return PsiEval(p, x, rep1, rep2, y, d)


def pi_fn(x: float, y: float) -> float:
    """pi(x,y) = tau(x,y) - (1 + H(x) - H(y))/2 inside the root region, else 0.

    Symmetric, nonpositive, strictly negative strictly inside the region.
    """
    if not (0.0 <= x <= 0.5 + _SLACK and 0.0 <= y <= 0.5 + _SLACK):
        raise InputError(f"pi_fn: (x,y)=({x},{y}) outside [0, 1/2]^2")
    x = min(max(x, 0.0), 0.5)
    y = min(max(y, 0.0), 0.5)
    if y > root_region_boundary(x):
        return 0.0
    return exponent_I(x, y) + 1.0 + 0.5 * (binary_entropy(x) + binary_entropy(y) - 1.0)


def golden_section_min(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> tuple[float, float]:
    """Golden-section minimization of a unimodal f on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def grid_then_golden_min(
    f: Callable[[float], float], lo: float, hi: float, grid: int = 2001
) -> tuple[float, float]:
    """Dense-grid scan followed by golden-section refinement in the best cell.

    Robust oracle for 1-d minimizations whose unimodality we prefer not to
    assume; cost ~grid + 60 evaluations.
    """
    step = (hi - lo) / (grid - 1)
    best_i, best_v = 0, math.inf
    xs = [lo + k * step for k in range(grid)]
    for k, xk in enumerate(xs):
        v = f(xk)
        if v < best_v:
            best_i, best_v = k, v
    a = xs[max(0, best_i - 1)]
    b = xs[min(grid - 1, best_i + 1)]
    xm, vm = golden_section_min(f, a, b)
    if vm <= best_v:
        return xm, vm
    return xs[best_i], best_v


def x_of_sigma_delta(sigma: float, delta: float) -> float:
    """The stationary overlap x(sigma, delta) =
    (-d^2 + d sqrt(d^2 + 4(1-2d) sigma(1-sigma))) / (2(1-2d));
    continuous limit sigma(1-sigma) at delta = 1/2."""
    if delta >= 0.5 - 1e-14:
        return sigma * (1.0 - sigma)
    if delta <= 0.0 or sigma <= 0.0:
        return 0.0
    d = delta
    q = sigma * (1.0 - sigma)
    return (-d * d + d * math.sqrt(d * d + 4.0 * (1.0 - 2.0 * d) * q)) / (
        2.0 * (1.0 - 2.0 * d)
    )


@dataclass(frozen=True)
class PiMinRecord:
    sigma: float
    kappa: float
    min_over_delta: float
    closed_form: float
    gap: float
    delta_argmin: float


def pi_min_check(sigma: float, kappa: float) -> PiMinRecord:
    """Oracle for the delta-minimization representation of pi:

    pi(sigma,kappa) = (1/2) min_{0<=d<=1/2} { sigma H(x/sigma)
      + (1-sigma) H(x/(1-sigma)) + 2x log2(d) + (1-2x) log2(1-d)
      - kappa log2(1-2d) },  x = x_of_sigma_delta(sigma, d).

    Minimized by grid + golden section; compared against the closed form.
    """

    def objective(d: float) -> float:
        x = x_of_sigma_delta(sigma, d)
        acc = 0.0
        if sigma > 0.0:
            acc += sigma * binary_entropy(_clamp01(x / sigma))
        acc += (1.0 - sigma) * binary_entropy(_clamp01(x / (1.0 - sigma)))
        if x > 0.0:
            acc += 2.0 * x * math.log2(d)
        acc += (1.0 - 2.0 * x) * math.log2(1.0 - d)
        if kappa > 0.0:
            acc -= kappa * math.log2(1.0 - 2.0 * d)
        return acc

    lo, hi = 1e-12, 0.5 - 1e-12
    d_star, val = grid_then_golden_min(objective, lo, hi)
    if 0.0 < val:
        # the d -> 0 endpoint has limit 0
        d_star, val = 0.0, 0.0
    if kappa == 0.0:
        # the d -> 1/2 endpoint is admissible when the kappa term vanishes;
        # its analytic limit is H(sigma) - 1 (x -> sigma(1-sigma))
        end = binary_entropy(sigma) - 1.0
        if end < val:
            d_star, val = 0.5, end
    closed = pi_fn(sigma, kappa)
    half = 0.5 * val
    return PiMinRecord(sigma, kappa, half, closed, half - closed, d_star)


def alpha_value(sigma: float, eps: float, x: float) -> float:
    """alpha_{sigma,eps}(x) = sigma H(x/sigma) + (1-sigma) H(x/(1-sigma))
    + 2x log2(eps) + (1-2x) log2(1-eps), for 0 <= x <= sigma.

    Limits: sigma = 0 forces x = 0 with value log2(1-eps); eps = 0 gives 0 at
    x = 0 and -inf for x > 0; eps = 1/2 contributes a flat -1.
    """
    if not (0.0 <= sigma <= 0.5 + _SLACK and 0.0 <= eps <= 0.5 + _SLACK):
        raise InputError(f"alpha_value: (sigma,eps)=({sigma},{eps}) outside [0,1/2]^2")
    if x < -_SLACK or x > sigma + _SLACK:
        raise InputError(f"alpha_value: x={x} outside [0, sigma={sigma}]")
    x = min(max(x, 0.0), sigma)
    acc = 0.0
    if sigma > 0.0:
        acc += sigma * binary_entropy(_clamp01(x / sigma))
        acc += (1.0 - sigma) * binary_entropy(_clamp01(x / (1.0 - sigma)))
    if x > 0.0:
        if eps == 0.0:
            return -math.inf
        acc += 2.0 * x * math.log2(eps)
    if eps < 1.0:
        acc += (1.0 - 2.0 * x) * math.log2(1.0 - eps)
    return acc


def x_star(sigma: float, eps: float) -> float:
    """Maximizer of alpha_{sigma,eps}:
    x* = (-eps^2 + eps sqrt(eps^2 + 4(1-2eps) sigma(1-sigma))) / (2(1-2eps));
    limit sigma(1-sigma) at eps = 1/2."""
    if not (0.0 <= sigma <= 0.5 + _SLACK and 0.0 <= eps <= 0.5 + _SLACK):
        raise InputError(f"x_star: (sigma,eps)=({sigma},{eps}) outside [0,1/2]^2")
    if eps <= 0.0 or sigma <= 0.0:
        return 0.0
    if eps >= 0.5 - 1e-14:
        return sigma * (1.0 - sigma)
    q = sigma * (1.0 - sigma)
    return (-eps * eps + eps * math.sqrt(eps * eps + 4.0 * (1.0 - 2.0 * eps) * q)) / (
        2.0 * (1.0 - 2.0 * eps)
    )


@dataclass(frozen=True)
class NoiseParams:
    sigma: float
    eps: float
    x_star: float
    alpha_max: float


def alpha_and_xstar(sigma: float, eps: float) -> NoiseParams:
    """Closed-form maximizer of alpha with its value."""
    xs = x_star(sigma, eps)
    return NoiseParams(sigma, eps, xs, alpha_value(sigma, eps, xs))


def phi(sigma: float, eps: float) -> float:
    """phi(sigma, eps) = H(sigma) - 1 + max_x alpha_{sigma,eps}(x)."""
    if not (0.0 <= sigma <= 0.5 + _SLACK and 0.0 <= eps <= 0.5 + _SLACK):
        raise InputError(f"phi: (sigma,eps)=({sigma},{eps}) outside [0,1/2]^2")
    if eps == 0.0:
        return binary_entropy(sigma) - 1.0
    return binary_entropy(sigma) - 1.0 + alpha_value(sigma, eps, x_star(sigma, eps))


def tilde_phi(y: float, eps: float) -> float:
    """tilde_phi(y, eps) = phi(H^{-1}(y), eps), for y in [0, 1]."""
    if not (0.0 <= y <= 1.0 + _SLACK):
        raise InputError(f"tilde_phi: y={y} outside [0, 1]")
    return phi(inverse_entropy(min(y, 1.0)), eps)


@dataclass(frozen=True)
class PhiTransformRecord:
    sigma: float
    eps: float
    phi_value: float
    grid_max_value: float
    gap: float
    y_argmax: float
    y_closed_form: float


def phi_transform_check(sigma: float, eps: float) -> PhiTransformRecord:
    """Oracle for the transform identity
    phi(sigma,eps) = max_{0<=y<=1/2} { y log2(1-2eps) + H(y) + 2 tau(sigma,y) } - 2,
    with the closed-form maximizer
    y* = ((1-eps) - sqrt(eps^2 + 4(1-2eps) sigma(1-sigma))) / (2-2eps)."""
    p_val = phi(sigma, eps)
    q = sigma * (1.0 - sigma)
    if eps >= 0.5 - 1e-14:
        y_closed = 0.0
    else:
        y_closed = ((1.0 - eps) - math.sqrt(eps * eps + 4.0 * (1.0 - 2.0 * eps) * q)) / (
            2.0 - 2.0 * eps
        )

    if eps >= 0.5 - 1e-14:
        # log2(1-2eps) = -inf kills every y > 0
        best_y, best = 0.0, binary_entropy(0.0) + 2.0 * tau(sigma, 0.0)
    else:
        c = math.log2(1.0 - 2.0 * eps)

        def neg_m(y: float) -> float:
            return -(y * c + binary_entropy(y) + 2.0 * tau(sigma, y))

        best_y, neg_best = grid_then_golden_min(neg_m, 0.0, 0.5)
        best = -neg_best
    grid_max = best - 2.0
    return PhiTransformRecord(
        sigma, eps, p_val, grid_max, p_val - grid_max, best_y, max(y_closed, 0.0)
    )


def eta_p(p: float, x: float, eps: float) -> float:
    """eta_p(x, eps) = (1/2) tilde_phi(1 - (p/(p-1)) x, 2 eps (1-eps))
    + x/(p-1), for 0 <= x <= (p-1)/p and p >= 1 + (1-2eps)^2."""
    if p <= 1.0:
        raise InputError(f"eta_p: need p > 1, got p={p}")
    if not (0.0 <= eps <= 0.5 + _SLACK):
        raise InputError(f"eta_p: eps={eps} outside [0, 1/2]")
    if x < -_SLACK or x > (p - 1.0) / p + 1e-9:
        raise InputError(f"eta_p: x={x} outside [0, (p-1)/p] for p={p}")
    x = min(max(x, 0.0), (p - 1.0) / p)
    if x == 0.0:
        # tilde_phi(1, .) = 0 identically: the classic inequality, no gain
        return 0.0
    delta = 2.0 * eps * (1.0 - eps)
    return 0.5 * tilde_phi(1.0 - (p / (p - 1.0)) * x, delta) + x / (p - 1.0)


def eta(x: float, eps: float) -> float:
    """eta(x, eps) = eta_p(x, eps) at p = 1 + (1-2eps)^2."""
    if not (0.0 <= eps <= 0.5 + _SLACK):
        raise InputError(f"eta: eps={eps} outside [0, 1/2]")
    p = 1.0 + (1.0 - 2.0 * eps) ** 2
    if p <= 1.0 + 1e-14:
        # eps = 1/2: the admissible interval degenerates to x = 0
        if abs(x) > 1e-9:
            raise InputError(f"eta: x={x} outside the degenerate domain at eps=1/2")
        return 0.0
    return eta_p(p, x, eps)


@dataclass(frozen=True)
class EdgeIsoMinRecord:
    sigma: float
    y: float
    min_over_eps: float
    closed_form: float
    gap: float
    eps_argmin: float


def edge_iso_min_check(sigma: float, y: float) -> EdgeIsoMinRecord:
    """Oracle for the eps-minimization behind the edge-isoperimetric bound:

    min_{0<eps<=1/2} { phi(sigma,eps) + 1 - H(sigma) - y log2(eps)
      - (1-y) log2(1-eps) } = sigma H(y/(2 sigma)) + (1-sigma) H(y/(2(1-sigma))).
    """
    if not (0.0 <= sigma <= 0.5 + _SLACK):
        raise InputError(f"edge_iso_min_check: sigma={sigma} outside [0, 1/2]")
    if y < -_SLACK or y > 2.0 * sigma * (1.0 - sigma) + 1e-9:
        raise InputError(
            f"edge_iso_min_check: y={y} outside [0, 2 sigma (1-sigma)] for sigma={sigma}"
        )
    y = min(max(y, 0.0), 2.0 * sigma * (1.0 - sigma)) if sigma > 0 else 0.0
    base = 1.0 - binary_entropy(sigma)

    def objective(e: float) -> float:
        val = phi(sigma, e) + base - (1.0 - y) * math.log2(1.0 - e)
        if y > 0.0:
            val -= y * math.log2(e)
        return val

    # log-spaced grid toward eps -> 0 where the y = 0 infimum lives
    lo, hi = 1e-9, 0.5
    pts = 2001
    best_e, best = hi, objective(hi)
    for k in range(pts):
        e = lo * (hi / lo) ** (k / (pts - 1))
        v = objective(e)
        if v < best:
            best_e, best = e, v
    e_ref, v_ref = golden_section_min(
        objective, max(lo, best_e * 0.5), min(hi, best_e * 2.0)
    )
    if v_ref < best:
        best_e, best = e_ref, v_ref
    if sigma == 0.0:
        closed = 0.0
    else:
        closed = sigma * binary_entropy(_clamp01(y / (2.0 * sigma))) + (
            1.0 - sigma
        ) * binary_entropy(_clamp01(y / (2.0 * (1.0 - sigma))))
    return EdgeIsoMinRecord(sigma, y, best, closed, best - closed, best_e)
