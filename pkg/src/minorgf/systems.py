"""The generating-function systems: networks, coloured-tree cascades, fans,
rooted compositions and the leaf-marked Cayley series.

Everything here is exact; the identity checks raise on failure instead of
returning wrong series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .oracle import enumerate_ut_trees
from .series import ONE, ZERO, Poly, TruncatedEGF, newton_implicit


class SeriesIdentityError(AssertionError):
    """An internal cross-check between two exact routes failed."""


# ---------------------------------------------------------------------------
# series-parallel networks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SPNetworks:
    d: TruncatedEGF
    s: TruncatedEGF
    p: TruncatedEGF


@lru_cache(maxsize=16)
def sp_networks(order: int) -> SPNetworks:
    """Solve D = E2 + S + P with the series/parallel mutual recursion."""
    x = TruncatedEGF.x(order)
    one = TruncatedEGF.one(order)
    s = TruncatedEGF.zero(order)
    p = TruncatedEGF.zero(order)
    for _ in range(order + 2):
        pe = p + 1
        chain = x * pe
        s_new = pe * (chain / (one - chain))
        p_new = 2 * s_new.exp() - s_new - 2
        if s_new == s and p_new == p:
            break
        s, p = s_new, p_new
    else:
        raise SeriesIdentityError("network recursion did not stabilise")
    d = 1 + s + p
    # the two classical identities, exact to the working order
    lhs = x * d * d / (one + x * d)
    rhs = ((one + d) / 2).log()
    if not (lhs - rhs).is_zero():
        raise SeriesIdentityError("the D-identity failed")
    if not (p + 1 - d / (one + x * d)).is_zero():
        raise SeriesIdentityError("the P-identity failed")
    return SPNetworks(d, s, p)


# ---------------------------------------------------------------------------
# fan classes: shape sums in (x, y), and edge substitution y -> D(x)
# ---------------------------------------------------------------------------

def _one_plus_y_power(g: int) -> Poly:
    return Poly(tuple(Fraction(comb(g, i)) for i in range(g + 1)))


@lru_cache(maxsize=32)
def fan_bivariate(k: int, order: int) -> TruncatedEGF:
    """F'_k(x, y): vertices in x, edges in y, summed over the tree shapes."""
    if not 2 <= k <= 6:
        raise ValueError("fan classes are available for 2 <= k <= 6")
    coeffs = [Poly() for _ in range(order + 1)]
    for shape in enumerate_ut_trees(k):
        a, e, f, g = shape.vertices, shape.edges, shape.leaves, shape.optional_roots
        opt = _one_plus_y_power(g)
        for j in range(0, order + 1 - a):
            # x^(a+j) y^(e+f+2j) (1+y)^g binom(e-1+j, j)
            mult = Fraction(comb(e - 1 + j, j)) if e else (ONE if j == 0 else ZERO)
            if not mult:
                continue
            base = Poly((ZERO,) * (e + f + 2 * j) + (mult,))
            coeffs[a + j] = coeffs[a + j] + base * opt
        # when e = 0 (the one-vertex shape) the geometric factor is empty
    return TruncatedEGF(coeffs)


def substitute_y(bivariate: TruncatedEGF, series: TruncatedEGF) -> TruncatedEGF:
    """Replace the y-marker by a series: sum_n x^n p_n(series)."""
    order = min(bivariate.order, series.order)
    out = TruncatedEGF.zero(order)
    for n in range(order + 1):
        p = bivariate.coeffs[n]
        if not bool(p):
            continue
        if isinstance(p, Poly):
            value = p(series.truncate(order))
            if not isinstance(value, TruncatedEGF):
                value = TruncatedEGF.const(value, order)
        else:
            value = TruncatedEGF.const(p, order)
        out = out + value.shift(n)
    return out


@lru_cache(maxsize=32)
def b_series(k: int, order: int) -> TruncatedEGF:
    """The coloured-block series: a labelled vertex times a non-series network
    for k = 1, edge substitution into the fan class otherwise."""
    if not 1 <= k <= 6:
        raise ValueError("block classes are available for 1 <= k <= 6")
    nets = sp_networks(order)
    if k == 1:
        return TruncatedEGF.x(order) * (nets.p + 1)
    return substitute_y(fan_bivariate(k, order), nets.d)


# ---------------------------------------------------------------------------
# the coloured-tree cascade
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cascade:
    """a[j] and a_hat[j] are the series for colour sets of size j (index 0 unused)."""
    a: tuple[TruncatedEGF, ...]
    a_hat: tuple[TruncatedEGF, ...]


def _partition_types(j: int):
    """Integer partitions of j with the number of set partitions of that type."""
    def parts(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in parts(remaining - first, first):
                yield (first,) + rest

    for shape in parts(j, j):
        count = factorial(j)
        mult: dict[int, int] = {}
        for part in shape:
            count //= factorial(part)
            mult[part] = mult.get(part, 0) + 1
        for m in mult.values():
            count //= factorial(m)
        yield shape, count


@lru_cache(maxsize=16)
def a_c_cascade(l: int, order: int) -> Cascade:
    """Solve the triangular system for the rooted coloured-tree classes."""
    if not 1 <= l <= 5:
        raise ValueError("the cascade is available for 1 <= l <= 5")
    b = {k: b_series(k, order) for k in range(1, l + 1)}
    zero = TruncatedEGF.zero(order)
    one = TruncatedEGF.one(order)
    a: list[TruncatedEGF] = [zero]
    a_hat: list[TruncatedEGF] = [one]

    def exp_sum(s: int) -> TruncatedEGF:
        acc = zero
        for s2 in range(1, s + 1):
            acc = acc + comb(s, s2) * a[s2]
        return acc.exp()

    for j in range(1, l + 1):
        k_exp = zero
        for s in range(1, j):
            k_exp = k_exp + comb(j, s) * a[s]
        exp_k = k_exp.exp()
        w = zero
        for s in range(j):
            w = w + Fraction((-1) ** (j - s) * comb(j, s) * (1 << s)) * exp_sum(s)
        m = zero
        for shape, count in _partition_types(j):
            if len(shape) < 2:
                continue
            term = TruncatedEGF.const(count, order) * b[len(shape)]
            for part in shape:
                term = term * a_hat[part]
            m = m + term
        b1 = b[1]
        coeff = (1 << j) * b1 * exp_k
        rest = b1 * w + m

        a_j = newton_implicit(lambda y, c=coeff, r=rest: c * y.exp() + r, order)
        a.append(a_j)
        hat = zero
        for s in range(j + 1):
            hat = hat + Fraction((-1) ** (j - s) * comb(j, s) * (1 << s)) * exp_sum(s)
        a_hat.append(hat)
    return Cascade(tuple(a), tuple(a_hat))


# ---------------------------------------------------------------------------
# Cayley trees, with and without leaf marking
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def cayley_r(order: int) -> TruncatedEGF:
    """R = x e^R, the rooted labelled tree series."""
    x = TruncatedEGF.x(order)
    return newton_implicit(lambda y: x * y.exp(), order)


@dataclass(frozen=True)
class CayleyLeaf:
    """Bivariate rooted-tree series; the marker counts leaves.

    `root_is_leaf` counts the root as a leaf iff its degree is <= 1;
    `pendant` is the variant where the root counts only when n = 1.
    """
    root_is_leaf: TruncatedEGF
    pendant: TruncatedEGF


@lru_cache(maxsize=16)
def cayley_leaf(order: int) -> CayleyLeaf:
    z = Poly.var()
    zm1 = z - Poly.const(1)
    x_zm1 = TruncatedEGF.from_coeffs([Poly(), zm1], order)      # x (z-1)
    inner = TruncatedEGF.x(order) * x_zm1.exp()                 # x e^{x(z-1)}
    r = cayley_r(order)
    r_comp = r.compose(inner)
    main = r_comp * (x_zm1 + 1) + x_zm1 * x_zm1 + x_zm1
    # pendant variant: solves directly against its fixed-point equation
    xz = TruncatedEGF.from_coeffs([Poly(), z], order)
    x = TruncatedEGF.x(order)
    pendant = newton_implicit(lambda y: xz + x * (y.exp() - 1), order)
    expected = x_zm1 + r_comp
    if not (pendant - expected).is_zero():
        raise SeriesIdentityError("the two pendant-variant routes disagree")
    return CayleyLeaf(main, pendant)


# ---------------------------------------------------------------------------
# tree substitution: edges, internal vertices, leaves
# ---------------------------------------------------------------------------

def tree_substitution(d: TruncatedEGF, i: TruncatedEGF, l: TruncatedEGF,
                      order: int) -> tuple[TruncatedEGF, TruncatedEGF]:
    """(A2, A') for the class of trees with substituted edges/internals/leaves.

    The marker counts the size of the underlying tree.  A2 solves its
    fixed-point equation; A' is the rooted closed form.
    """
    if d.is_zero() or i.is_zero() or l.is_zero():
        raise ValueError("component classes must be nonempty")
    d = d.truncate(order) if d.order > order else d
    i = i.truncate(order) if i.order > order else i
    l = l.truncate(order) if l.order > order else l
    s = Poly.var()
    sx = TruncatedEGF.from_coeffs([Poly(), s], order)
    f = sx * d * i * (sx * d * (l - i)).exp()
    a2 = newton_implicit(lambda y, ff=f: ff * y.exp(), order)
    if not (a2 - f * a2.exp()).is_zero():
        raise SeriesIdentityError("the bivariate fixed point failed to verify")
    r_comp = cayley_r(order).compose(f)
    lead = sx * d * (l - i) + 1
    aprime = lead * (r_comp / d) + (sx * (l - i)) ** 2 * d + sx * (l - i)
    return a2, aprime


# ---------------------------------------------------------------------------
# rooted compositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootedSP:
    f: TruncatedEGF          # rooted connected series-parallel graphs
    biconnected: TruncatedEGF
    b_prime: TruncatedEGF
    psi: TruncatedEGF        # functional inverse of f


@lru_cache(maxsize=16)
def rooted_sp(order: int) -> RootedSP:
    nets = sp_networks(order + 1)
    x1 = TruncatedEGF.x(order + 1)
    one1 = TruncatedEGF.one(order + 1)
    xd = x1 * nets.d
    b = ((one1 + xd).log() / 2
         - xd * (xd * xd + xd + 2 - 2 * x1) / (4 * (one1 + xd)))
    b_prime = b.derive()                     # now exact to `order`
    x = TruncatedEGF.x(order)
    f = newton_implicit(lambda y: x * b_prime.compose(y).exp(), order)
    psi = x * (-b_prime.truncate(order)).exp()
    if not (psi.compose(f) - x).is_zero():
        raise SeriesIdentityError("the functional inverse check failed")
    return RootedSP(f, b.truncate(order), b_prime.truncate(order), psi)


@lru_cache(maxsize=16)
def rooted_crd3(order: int) -> TruncatedEGF:
    """The series of connected 3-colour-rootable graphs rooted at a rootable vertex."""
    cascade = a_c_cascade(3, order)
    f = rooted_sp(order).f
    a1, a2, a3 = cascade.a[1], cascade.a[2], cascade.a[3]
    expo = a3.compose(f) + 3 * a2.compose(f) + 3 * a1.compose(f)
    return 8 * f * expo.exp()


# ---------------------------------------------------------------------------
# outerplanar networks
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def outer_network(order: int) -> TruncatedEGF:
    """(1 + x - sqrt(x^2 - 6x + 1)) / (4x), the outerplanar network series."""
    x = TruncatedEGF.x(order + 1)
    h = 1 - 6 * x + x * x
    root = h.sqrt()
    numer = 1 + x - root
    series = numer.shift_down(1) / 4
    if not (4 * TruncatedEGF.x(series.order) * series + root.truncate(series.order)
            - 1 - TruncatedEGF.x(series.order)).is_zero():
        raise SeriesIdentityError("the defining identity of the outerplanar series failed")
    return series
