"""Closed-form infinite-product expressions for the fixed-point generating
function, expanded exactly in the truncated series kernel, together with
the product identities used to pass between the different variable sets.

All products live in the canonical space (y, q0..q_{ell-1}) and are built
from shifted variables qtilde_a = y^(2 r_a) q_a, their cyclic products
z = qtilde_0 * .. * qtilde_{ell-1}, and the telescoping combinations
u_c = prod_{b=c}^{ell-1} qtilde_{-b}^(-1) with u_ell = 1.
"""

from .localization import check_ranks
from .partitions import partition_sum_lhs
from .series import (Series, SeriesError, canonical_space,
                     pochhammer_inverse, series_diff_report)


def qtilde_monomial(space, r, qt_exps, y_exp=0):
    """Canonical-space monomial y^y_exp * prod_a qtilde_a^qt_exps[a]."""
    ell = len(r)
    exps = [0] * len(space.names)
    exps[0] = y_exp + sum(2 * r[a] * qt_exps[a] for a in range(ell))
    for a in range(ell):
        exps[1 + a] = qt_exps[a]
    return tuple(exps)


def u_exponents(ell, c):
    """qtilde exponent vector of u_c; empty for c = ell."""
    if not 1 <= c <= ell:
        raise ValueError("u index %d out of range 1..%d" % (c, ell))
    v = [0] * ell
    for b in range(c, ell):
        v[(-b) % ell] -= 1
    return v


def _add(*vecs):
    out = [0] * len(vecs[0])
    for v in vecs:
        for i, e in enumerate(v):
            out[i] += e
    return out


def _neg(v):
    return [-e for e in v]


def _expand_product(space, r, factors):
    """Product of inverse Pochhammer factors (m)_inf^(-1) with step z.

    Each factor is a pair (y_exp, qt_exps).  A factor whose base monomial
    has non-positive q-degree would make the product ill-defined, so that
    is an internal error.
    """
    ell = len(r)
    z = qtilde_monomial(space, r, [1] * ell)
    out = Series.one(space)
    for y_exp, qt in factors:
        m0 = qtilde_monomial(space, r, qt, y_exp)
        if space.gdeg(m0) < 1:
            raise SeriesError("internal: product factor of q-degree %d"
                              % space.gdeg(m0))
        out = out * pochhammer_inverse(space, m0, z)
    return out


def theorem_Z(r, n_max):
    """Product form of the generating function in the qtilde variables.

    One factor family (y^(-2t) z^k)_inf^(-1) per pair (a, t<=r_a), plus for
    each residue c in 1..ell-1 the family with base
    y^(-2t) z * prod_{b=c}^{ell-1} qtilde_{a-b}^(-1).
    """
    r = check_ranks(r)
    ell = len(r)
    space = canonical_space(ell, n_max)
    ones = [1] * ell
    factors = []
    for a in range(ell):
        for t in range(1, r[a] + 1):
            factors.append((-2 * t, ones))
            for c in range(1, ell):
                qt = list(ones)
                for b in range(c, ell):
                    qt[(a - b) % ell] -= 1
                factors.append((-2 * t, qt))
    return _expand_product(space, r, factors)


def theorem_Z_u(r, n_max):
    """Same generating function written in the variables u_1..u_ell.

    Diagonal families (y^(-2t) z^k)_inf^(-1) for every (a, t<=r_a); for each
    ordered pair a < c the families with bases y^(-2t) z u_a u_c^(-1) for
    t <= r_{ell-c} and y^(-2t) u_a^(-1) u_c for t <= r_{ell-a}, the latter
    stepped from z^0.
    """
    r = check_ranks(r)
    ell = len(r)
    space = canonical_space(ell, n_max)
    ones = [1] * ell
    factors = []
    for a in range(ell):
        for t in range(1, r[a] + 1):
            factors.append((-2 * t, ones))
    for a in range(1, ell + 1):
        ua = u_exponents(ell, a)
        for c in range(a + 1, ell + 1):
            uc = u_exponents(ell, c)
            for t in range(1, r[ell - c] + 1):
                factors.append((-2 * t, _add(ones, ua, _neg(uc))))
            for t in range(1, r[ell - a] + 1):
                factors.append((-2 * t, _add(_neg(ua), uc)))
    return _expand_product(space, r, factors)


def verify_theorem_Z(r, n_max, brute=None, threads=1):
    """Check the qtilde product form against the localization sum."""
    from .localization import brute_force_Z
    if brute is None:
        brute = brute_force_Z(r, n_max, threads=threads)
    closed = theorem_Z(r, n_max)
    return series_diff_report(brute, closed)


def verify_change_of_variables(r, n_max):
    """Check that the qtilde and u product forms expand identically."""
    return series_diff_report(theorem_Z(r, n_max), theorem_Z_u(r, n_max))


def verify_partition_identity(a, ell, n_max):
    """Check the colored-partition sum against its product form.

    The sum side runs over all partitions of size <= n_max, each weighted
    v^(number of columns) times the product of one X per box, colored by
    row.  The product side is (v z^k)_inf^(-1) times, for each c in
    1..ell-1, (v z^k prod_{b=c}^{ell-1} X_{a-b}^(-1))_inf^(-1), where
    z = X_0 * .. * X_{ell-1}.
    """
    lhs = partition_sum_lhs(a, ell, n_max)
    space = lhs.space
    # variable order (v, X0, .., X{ell-1}); exponent tuples built directly
    z = tuple([0] + [1] * ell)
    rhs = Series.one(space)
    bases = [tuple([1] + [1] * ell)]
    for c in range(1, ell):
        exps = [1] + [1] * ell
        for b in range(c, ell):
            exps[1 + (a - b) % ell] -= 1
        bases.append(tuple(exps))
    for m0 in bases:
        if space.gdeg(m0) < 1:
            raise SeriesError("internal: partition-identity factor of "
                              "q-degree %d" % space.gdeg(m0))
        rhs = rhs * pochhammer_inverse(space, m0, z)
    return series_diff_report(lhs, rhs)


def _appendixB_lhs_factors(r):
    ell = len(r)
    ones = [1] * ell
    factors = []
    for a in range(1, ell):
        for t in range(1, r[a] + 1):
            for c in range(1, ell):
                if c == a:
                    continue
                qt = list(ones)
                for b in range(c, ell):
                    qt[(a - b) % ell] -= 1
                factors.append((-2 * t, qt))
    return factors


def _appendixB_split_factors(r):
    ell = len(r)
    ones = [1] * ell
    factors = []
    for a in range(1, ell):
        for c in range(a + 1, ell):
            qt = list(ones)
            for b in range(c, ell):
                qt[(a - b) % ell] -= 1
            for t in range(1, r[a] + 1):
                factors.append((-2 * t, qt))
            pos = [0] * ell
            for b in range(c, ell):
                pos[(a - b) % ell] += 1
            for t in range(1, r[a - c + ell] + 1):
                factors.append((-2 * t, pos))
    return factors


def _appendixB_u_factors(r):
    ell = len(r)
    ones = [1] * ell
    factors = []
    for a in range(1, ell):
        ua = u_exponents(ell, a)
        for c in range(a + 1, ell):
            uc = u_exponents(ell, c)
            for t in range(1, r[ell - c] + 1):
                factors.append((-2 * t, _add(ones, ua, _neg(uc))))
            for t in range(1, r[ell - a] + 1):
                factors.append((-2 * t, _add(_neg(ua), uc)))
    return factors


def verify_appendixB(r, n_max):
    """Check the rearrangement chain for the off-diagonal factor block.

    Three expansions are compared pairwise: the raw double product over
    ordered residue pairs, the split form that collects each unordered
    pair into an inverse-variable family and a positive-variable family,
    and the form written in the u variables.  For ell = 2 all three are
    empty products and the checks hold trivially.
    """
    r = check_ranks(r)
    ell = len(r)
    space = canonical_space(ell, n_max)
    lhs = _expand_product(space, r, _appendixB_lhs_factors(r))
    split = _expand_product(space, r, _appendixB_split_factors(r))
    uform = _expand_product(space, r, _appendixB_u_factors(r))
    checks = [
        ("raw_vs_split", series_diff_report(lhs, split)),
        ("split_vs_u", series_diff_report(split, uform)),
        ("raw_vs_u", series_diff_report(lhs, uform)),
    ]
    out = {"equal": all(rep["equal"] for _, rep in checks),
           "checks": [dict(rep, name=name) for name, rep in checks]}
    return out
