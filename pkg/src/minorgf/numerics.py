"""High-precision evaluation of the generating functions and every growth constant.

All arithmetic runs under mpmath at a configurable decimal precision
(default 60 digits, minimum 30).  Solvers are bracketed: every reported
constant comes with the residual of its defining equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable

import mpmath as mp

from .oracle import enumerate_ut_trees
from .systems import a_c_cascade, sp_networks

DEFAULT_DPS = 60
MIN_DPS = 30
SEED_ORDER = 30


def _require_dps(dps: int) -> int:
    if dps < MIN_DPS:
        raise ValueError(f"working precision below {MIN_DPS} digits")
    return dps


@dataclass(frozen=True)
class HighPrecisionValue:
    """A decimal constant carried as a string, with its working precision."""

    digits: str
    dps: int

    @staticmethod
    def wrap(value, dps: int) -> "HighPrecisionValue":
        return HighPrecisionValue(mp.nstr(value, dps, strip_zeros=False), dps)

    def mpf(self):
        with mp.workdps(self.dps):
            return mp.mpf(self.digits)

    def __float__(self) -> float:
        return float(mp.mpf(self.digits))

    def __str__(self) -> str:
        return self.digits


class Method(Enum):
    BRANCH_POINT = "BranchPoint"
    TREE_FUNCTION = "TreeFunctionSingularity"
    CLOSED_FORM = "ClosedForm"
    COMPOSITION_CRITICAL = "CompositionCritical"


@dataclass(frozen=True)
class GrowthResult:
    gamma: HighPrecisionValue
    rho: HighPrecisionValue
    method: Method
    residual: HighPrecisionValue

    def to_json_dict(self, constant: str, **params) -> dict:
        out = {"constant": constant}
        out.update({k: v for k, v in params.items() if v is not None})
        out.update({
            "value": self.gamma.digits,
            "rho": self.rho.digits,
            "residual": self.residual.digits,
            "method": self.method.value,
        })
        return out


def _partial_sum(coeffs, x):
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        if isinstance(c, Fraction):
            acc = acc * x + mp.mpf(c.numerator) / c.denominator
        else:
            acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# the network singularity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NetworkSingularity:
    t0: HighPrecisionValue
    rho_d: HighPrecisionValue
    d_at_rho: HighPrecisionValue
    residual: HighPrecisionValue


@lru_cache(maxsize=8)
def solve_t0(dps: int = DEFAULT_DPS) -> NetworkSingularity:
    """The positive solution of (1-t^2)^{-1} exp(-t^2/(1+t)) = 2 and its derived values."""
    _require_dps(dps)
    with mp.workdps(dps):
        def g(t):
            return mp.exp(-t * t / (1 + t)) / (1 - t * t) - 2

        t0 = mp.findroot(g, (mp.mpf("0.5"), mp.mpf("0.99")), solver="anderson")
        rho = (1 + t0) * (t0 - 1) ** 2 / t0 ** 3
        d_rho = t0 ** 2 / (1 - t0 ** 2)
        return NetworkSingularity(
            HighPrecisionValue.wrap(t0, dps),
            HighPrecisionValue.wrap(rho, dps),
            HighPrecisionValue.wrap(d_rho, dps),
            HighPrecisionValue.wrap(abs(g(t0)), dps),
        )


@lru_cache(maxsize=8)
def _seed_series(order: int = SEED_ORDER):
    nets = sp_networks(order)
    return nets.d.coeffs


def eval_d(x, dps: int = DEFAULT_DPS):
    """The network series evaluated on (0, rho_d), on the branch with D(0) = 1."""
    _require_dps(dps)
    with mp.workdps(dps):
        x = mp.mpf(x)
        sing = solve_t0(dps)
        rho = sing.rho_d.mpf()
        if not 0 < x < rho:
            raise ValueError("evaluation point outside (0, rho)")
        d_hi = sing.d_at_rho.mpf()

        def g(dv):
            return x * dv * dv / (1 + x * dv) - mp.log((1 + dv) / 2)

        tol = mp.mpf(10) ** (-(dps - 10))
        seed = _partial_sum(_seed_series(), x)
        try:
            val = mp.findroot(g, seed, tol=tol)
            if not (1 - mp.mpf("1e-12") <= val <= d_hi * (1 + mp.mpf("1e-12"))):
                raise ValueError
        except (ValueError, ZeroDivisionError, mp.libmp.NoConvergence):
            val = mp.findroot(g, (mp.mpf(1), d_hi), solver="anderson", tol=tol,
                              maxsteps=dps * 4)
        return val


def eval_d_prime(x, dps: int = DEFAULT_DPS):
    """dD/dx by implicit differentiation of the defining identity."""
    with mp.workdps(dps):
        x = mp.mpf(x)
        d = eval_d(x, dps)
        denom = (1 + x * d) ** 2 / (1 + d) - x * d * (2 + x * d)
        return d * d / denom


def eval_r(u, dps: int = DEFAULT_DPS):
    """The tree function R = u e^R on [0, 1/e], principal branch."""
    _require_dps(dps)
    with mp.workdps(dps):
        u = mp.mpf(u)
        if u < 0 or u > mp.exp(-1) * (1 + mp.mpf("1e-30")):
            raise ValueError("the tree function is evaluated on [0, 1/e]")
        if u == 0:
            return mp.mpf(0)

        def g(rv):
            return rv - u * mp.exp(rv)

        tol = mp.mpf(10) ** (-(dps - 10))
        return mp.findroot(g, (mp.mpf(0), mp.mpf(1)), solver="anderson",
                           tol=tol, maxsteps=dps * 4)


# ---------------------------------------------------------------------------
# coloured-block and coloured-tree values
# ---------------------------------------------------------------------------

def eval_b1(x, dps: int = DEFAULT_DPS):
    with mp.workdps(dps):
        x = mp.mpf(x)
        d = eval_d(x, dps)
        return x * d / (1 + x * d)


def b1_at_rho(dps: int = DEFAULT_DPS):
    """B_1 at the network singularity, in closed form through t0."""
    with mp.workdps(dps):
        sing = solve_t0(dps)
        w = sing.rho_d.mpf() * sing.d_at_rho.mpf()
        return w / (1 + w)


@lru_cache(maxsize=8)
def _shape_census(k: int):
    return tuple((s.vertices, s.edges, s.leaves, s.optional_roots)
                 for s in enumerate_ut_trees(k))


def _bk_from_d(k: int, x, d):
    if k == 1:
        return x * d / (1 + x * d)
    total = mp.mpf(0)
    for a, e, f, g in _shape_census(k):
        total += x ** a * d ** (e + f) * (1 + d) ** g / (1 - x * d * d) ** e
    return total


def eval_bk(k: int, x, dps: int = DEFAULT_DPS):
    """The k-coloured block series via the tree-shape census and edge substitution."""
    with mp.workdps(dps):
        x = mp.mpf(x)
        return _bk_from_d(k, x, eval_d(x, dps))


def _cascade_values(l: int, x, dps: int, with_top: bool = False):
    """(E_j, Bbar_j) per level plus A_j(x) for j < l (and j = l when asked).

    The top-level A needs x below the top singularity; the levels data alone
    only needs x below the previous one.
    """
    with mp.workdps(dps):
        x = mp.mpf(x)
        d_val = eval_d(x, dps)
        b = {k: _bk_from_d(k, x, d_val) for k in range(1, l + 1)}
        a = {0: mp.mpf(0)}
        hat = {0: mp.mpf(1)}
        levels = {}

        def exp_sum(s: int):
            return mp.exp(mp.fsum(comb(s, s2) * a[s2] for s2 in range(1, s + 1)))

        for j in range(1, l + 1):
            k_part = mp.fsum(comb(j, s) * a[s] for s in range(1, j))
            w = mp.fsum((-1) ** (j - s) * comb(j, s) * (2 ** s) * exp_sum(s)
                        for s in range(j))
            m_part = mp.mpf(0)
            for shape, count in _partition_types_cached(j):
                if len(shape) < 2:
                    continue
                term = mp.mpf(count) * b[len(shape)]
                for part in shape:
                    term *= hat[part]
                m_part += term
            bbar = -(b[1] * w + m_part)
            e_j = (2 ** j) * b[1] * mp.exp(k_part - bbar)
            levels[j] = (e_j, bbar)
            if j < l or with_top:
                a[j] = eval_r(e_j, dps) - bbar
                hat[j] = mp.fsum((-1) ** (j - s) * comb(j, s) * (2 ** s) * exp_sum(s)
                                 for s in range(j + 1))
        return a, levels


@lru_cache(maxsize=32)
def _partition_types_cached(j: int):
    from .systems import _partition_types
    return tuple(_partition_types(j))


def eval_e(l: int, x, dps: int = DEFAULT_DPS):
    """The singularity function whose e^{-1} level-crossing locates rho_a(l)."""
    _, levels = _cascade_values(l, x, dps)
    return levels[l][0]


def eval_a(l: int, x, dps: int = DEFAULT_DPS):
    """A_{[l]}(x), evaluated through the tree function."""
    a, _ = _cascade_values(l, x, dps, with_top=True)
    return a[l]


_rho_a_cache: dict[tuple[int, int], tuple] = {}


def rho_a(l: int, dps: int = DEFAULT_DPS):
    """Dominant singularity of the l-colour rooted tree class (returns mpf)."""
    _require_dps(dps)
    if not 1 <= l <= 5:
        raise ValueError("l out of range 1..5")
    key = (l, dps)
    if key in _rho_a_cache:
        return _rho_a_cache[key][0]
    with mp.workdps(dps):
        if l == 1:
            value = solve_t0(dps).rho_d.mpf()
            _rho_a_cache[key] = (value, mp.mpf(0))
            return value
        upper = rho_a(l - 1, dps)
        inv_e = mp.exp(-1)

        def g(x):
            return eval_e(l, x, dps) - inv_e

        # hunt for a positive bracket end, approaching the previous
        # singularity geometrically (the level function is increasing)
        hi = None
        for k in range(1, 3 * dps):
            cand = upper * (1 - mp.mpf(2) ** (-k))
            if g(cand) > 0:
                hi = cand
                break
        if hi is None:
            raise ValueError("no sign change below the previous singularity")
        lo = hi / 2
        while g(lo) >= 0:
            lo /= 2
        tol = mp.mpf(10) ** (-(dps - 8))
        value = mp.findroot(g, (lo, hi), solver="anderson", tol=tol,
                            maxsteps=dps * 4)
        _rho_a_cache[key] = (value, abs(g(value)))
        return value


def rho_a_residual(l: int, dps: int = DEFAULT_DPS):
    rho_a(l, dps)
    return _rho_a_cache[(l, dps)][1]


# ---------------------------------------------------------------------------
# the rooted series-parallel branch point
# ---------------------------------------------------------------------------

def eval_b_prime(x, dps: int = DEFAULT_DPS):
    """Derivative of the biconnected series, through the network series."""
    with mp.workdps(dps):
        x = mp.mpf(x)
        d = eval_d(x, dps)
        dp = eval_d_prime(x, dps)
        w = x * d
        wp = d + x * dp
        db_dw = 1 / (2 * (1 + w)) - (w ** 3 + 2 * w ** 2 + w + 1 - x) / (2 * (1 + w) ** 2)
        db_dx = w / (2 * (1 + w))
        return db_dw * wp + db_dx


def psi_f_sp(u, dps: int = DEFAULT_DPS):
    """The functional inverse of the rooted series-parallel series."""
    with mp.workdps(dps):
        u = mp.mpf(u)
        return u * mp.exp(-eval_b_prime(u, dps))


def eval_b_second(u, dps: int = DEFAULT_DPS):
    """Second derivative of the biconnected series, by an extended-precision
    central difference of the closed-form first derivative."""
    wide = 2 * dps + 10
    with mp.workdps(wide):
        u = mp.mpf(u)
        h = mp.mpf(10) ** (-(dps // 2))
        hi = eval_b_prime(u + h, wide)
        lo = eval_b_prime(u - h, wide)
        val = (hi - lo) / (2 * h)
    with mp.workdps(dps):
        return +val


@lru_cache(maxsize=8)
def branch_point_sp(dps: int = DEFAULT_DPS):
    """(u0, rho_f, residual): the maximum of psi on (0, rho_d)."""
    _require_dps(dps)
    with mp.workdps(dps):
        rho_d = solve_t0(dps).rho_d.mpf()

        def phi(u):
            # d/du log psi = 1/u - B''(u)
            return 1 / u - eval_b_second(u, dps)

        lo = mp.mpf("0.12")
        hi = rho_d * (1 - mp.mpf("1e-12"))
        while phi(hi) >= 0:
            hi = (hi + rho_d) / 2
        tol = mp.mpf(10) ** (-(dps - 15))
        u0 = mp.findroot(phi, (lo, hi), solver="anderson", tol=tol, maxsteps=dps * 4)
        rho_f = psi_f_sp(u0, dps)
        return u0, rho_f, abs(phi(u0))


def gamma_rd_k4(l: int, dps: int = DEFAULT_DPS) -> GrowthResult:
    """Growth constant of the graphs with a redundant size-l blocker (K4 case)."""
    _require_dps(dps)
    if not 1 <= l <= 5:
        raise ValueError("l out of range 1..5")
    with mp.workdps(dps):
        u0, rho_f, res0 = branch_point_sp(dps)
        rho_inner = rho_a(l, dps)
        if rho_inner < u0:
            rho = psi_f_sp(rho_inner, dps)
            residual = rho_a_residual(l, dps)
            method = Method.TREE_FUNCTION
        else:
            rho = rho_f
            residual = res0
            method = Method.COMPOSITION_CRITICAL
        return GrowthResult(
            HighPrecisionValue.wrap(1 / rho, dps),
            HighPrecisionValue.wrap(rho, dps),
            method,
            HighPrecisionValue.wrap(residual, dps),
        )


# ---------------------------------------------------------------------------
# outerplanar constants
# ---------------------------------------------------------------------------

def eval_outer_d(x, dps: int = DEFAULT_DPS):
    with mp.workdps(dps):
        x = mp.mpf(x)
        return (1 + x - mp.sqrt(x * x - 6 * x + 1)) / (4 * x)


def rho_outer_network(dps: int = DEFAULT_DPS):
    """(rho, rho * Dtilde(rho)): the closed-form singularity of the network series."""
    with mp.workdps(dps):
        rho = 3 - 2 * mp.sqrt(2)
        return rho, rho * eval_outer_d(rho, dps)


def outer_r(l: int, dps: int = DEFAULT_DPS):
    """r_l = 2^-l (1 - 1/(2^l - 1)), the solution of 2^l x Dtilde(x) = 1."""
    if not 2 <= l <= 11:
        raise ValueError("l out of range 2..11")
    with mp.workdps(dps):
        r = mp.mpf(1) / (1 << l) * (1 - mp.mpf(1) / ((1 << l) - 1))
        residual = abs((1 << l) * r * eval_outer_d(r, dps) - 1)
        return r, residual


def psi_f_outer(u, dps: int = DEFAULT_DPS):
    with mp.workdps(dps):
        u = mp.mpf(u)
        return u * mp.exp((mp.sqrt(1 - 6 * u + u * u) - 5 * u - 1) / 8)


def outer_tau(dps: int = DEFAULT_DPS):
    """Smallest positive root of 3u^4 - 28u^3 + 70u^2 - 58u + 8."""
    with mp.workdps(dps):
        roots = mp.polyroots([3, -28, 70, -58, 8])
        real = sorted(mp.re(r) for r in roots
                      if abs(mp.im(r)) < mp.mpf(10) ** (-dps // 2) and mp.re(r) > 0)
        return real[0]


def outer_rd_gamma(l: int, dps: int = DEFAULT_DPS) -> GrowthResult:
    """Growth constant of the redundant-blocker class for the outerplanar pair."""
    _require_dps(dps)
    with mp.workdps(dps):
        r, residual = outer_r(l, dps)
        sigma = psi_f_outer(r, dps)
        return GrowthResult(
            HighPrecisionValue.wrap(1 / sigma, dps),
            HighPrecisionValue.wrap(sigma, dps),
            Method.CLOSED_FORM,
            HighPrecisionValue.wrap(residual, dps),
        )


def outer_ex_gamma(k: int, dps: int = DEFAULT_DPS) -> GrowthResult:
    """Growth constant of the class without k+1 disjoint outerplanar obstructions."""
    _require_dps(dps)
    if not 1 <= k <= 5:
        raise ValueError("k out of range 1..5")
    with mp.workdps(dps):
        if k == 1:
            tau = outer_tau(dps)
            rho_f = psi_f_outer(tau, dps)
            rho = rho_f / 2
            poly_res = abs(mp.polyval([3, -28, 70, -58, 8], tau))
            return GrowthResult(
                HighPrecisionValue.wrap(2 / rho_f, dps),
                HighPrecisionValue.wrap(rho, dps),
                Method.BRANCH_POINT,
                HighPrecisionValue.wrap(poly_res, dps),
            )
        return outer_rd_gamma(2 * k + 1, dps)


# ---------------------------------------------------------------------------
# supercritical tree fraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeFraction:
    fraction: HighPrecisionValue
    rho: HighPrecisionValue
    residual: HighPrecisionValue


def tree_fraction(d_fn: Callable, i_fn: Callable, l_fn: Callable,
                  domain_hi, dps: int = DEFAULT_DPS,
                  diff_step: str = "1e-15") -> TreeFraction:
    """Limit fraction of underlying-tree vertices in the substituted tree class.

    `d_fn`, `i_fn`, `l_fn` are numeric evaluators of the component series,
    all analytic on (0, domain_hi).  The composition must be supercritical:
    f(x, 1) must reach e^{-1} strictly inside the domain.
    """
    _require_dps(dps)
    with mp.workdps(dps):
        hi = mp.mpf(domain_hi)

        def f(x, s):
            xd = d_fn(x)
            xi = i_fn(x)
            xl = l_fn(x)
            return s * x * xd * xi * mp.exp(s * x * xd * (xl - xi))

        inv_e = mp.exp(-1)
        probe = hi * (1 - mp.mpf("1e-12"))
        if f(probe, 1) <= inv_e:
            raise ValueError("composition is not supercritical on the given domain")
        lo = probe / 2
        while f(lo, 1) >= inv_e:
            lo /= 2
        rho = mp.findroot(lambda x: f(x, 1) - inv_e, (lo, probe), solver="anderson")
        if not rho * d_fn(rho) * i_fn(rho) < 1:
            raise ValueError("the internal-weight bound failed at the singularity")
        h = mp.mpf(diff_step)
        f_x = (f(rho + h, 1) - f(rho - h, 1)) / (2 * h)
        f_s = (f(rho, 1 + h) - f(rho, 1 - h)) / (2 * h)
        a = f_s / (rho * f_x)
        return TreeFraction(
            HighPrecisionValue.wrap(a, dps),
            HighPrecisionValue.wrap(rho, dps),
            HighPrecisionValue.wrap(abs(f(rho, 1) - inv_e), dps),
        )
