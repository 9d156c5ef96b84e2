"""Torus fixed points of the cyclic instanton moduli components, their
equivariant tangent characters, Morse indices, and the localization sum
for the generating function of Poincare polynomials.

This module is the independent oracle against which the closed-form
product expressions are verified.  Fixed points of a component indexed by
a rank vector r and an occupation vector n are tuples of colored Young
diagrams, one per sector 1..sum(r), whose combined color counts equal n.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor

from .partitions import Partition, colored_counts, enumerate_partitions
from .series import Series, canonical_space


def check_ranks(r):
    r = tuple(int(x) for x in r)
    if len(r) < 2:
        raise ValueError("rank vector needs at least two entries")
    if any(x < 0 for x in r):
        raise ValueError("rank entries must be non-negative")
    if sum(r) < 1:
        raise ValueError("rank vector must have a positive entry")
    return r


def check_occupation(n, ell):
    n = tuple(int(x) for x in n)
    if len(n) != ell:
        raise ValueError("occupation vector length %d does not match ell=%d"
                         % (len(n), ell))
    if any(x < 0 for x in n):
        raise ValueError("occupation entries must be non-negative")
    return n


def sector_index(beta, r):
    """The unique a with r_0+..+r_{a-1}+1 <= beta <= r_0+..+r_a."""
    r = check_ranks(r)
    if not 1 <= beta <= sum(r):
        raise ValueError("beta=%d out of range 1..%d" % (beta, sum(r)))
    acc = 0
    for a, ra in enumerate(r):
        acc += ra
        if beta <= acc:
            return a
    raise AssertionError("unreachable")


class FixedPoint:
    __slots__ = ("mus",)

    def __init__(self, mus):
        self.mus = tuple(mu if isinstance(mu, Partition) else Partition(mu)
                         for mu in mus)

    def total_size(self):
        return sum(mu.size for mu in self.mus)

    def occupation(self, r):
        """Combined per-color box counts of all components."""
        r = check_ranks(r)
        ell = len(r)
        n = [0] * ell
        for beta, mu in enumerate(self.mus, start=1):
            cc = colored_counts(mu, sector_index(beta, r), ell)
            for b in range(ell):
                n[b] += cc[b]
        return tuple(n)

    def __eq__(self, other):
        return isinstance(other, FixedPoint) and self.mus == other.mus

    def __hash__(self):
        return hash(self.mus)

    def __repr__(self):
        return "FixedPoint(%r)" % (tuple(mu.to_list() for mu in self.mus),)


def _compositions(total, parts):
    # first entry largest first, for a deterministic overall order
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _all_tuples(r, total):
    """All fixed points of total box count exactly `total`, canonical order."""
    big_r = sum(r)
    for comp in _compositions(total, big_r):
        for mus in itertools.product(*(enumerate_partitions(k) for k in comp)):
            yield FixedPoint(mus)


def fixed_points_of_size(r, total):
    """All fixed points with total box count exactly `total`, across all
    occupation vectors, in canonical order."""
    r = check_ranks(r)
    if total < 0:
        raise ValueError("total must be non-negative")
    return list(_all_tuples(r, total))


def enumerate_fixed_points(r, n):
    """All tuples of colored diagrams with combined color counts equal n."""
    r = check_ranks(r)
    n = check_occupation(n, len(r))
    return [fp for fp in _all_tuples(r, sum(n)) if fp.occupation(r) == n]


class RepRingElement:
    """Tangent contribution of one sector pair (alpha, beta).

    Terms map (t1, t2, omega) -> coefficient for monomials
    T1^t1 * T2^t2 * Omega^omega, with omega reduced mod ell; the overall
    Z_beta Z_alpha^(-1) tag is carried by the sector pair itself.
    """

    __slots__ = ("sector", "terms")

    def __init__(self, sector, terms):
        self.sector = tuple(sector)
        self.terms = dict(terms)

    def count(self):
        return sum(self.terms.values())

    def __repr__(self):
        return "RepRingElement(%r, %r)" % (self.sector, self.terms)


def tangent_character(fp, r):
    """One RepRingElement per pair (alpha, beta), alpha outer, beta inner.

    For the pair (alpha, beta) the terms are
      sum over boxes (i,j) of mu_alpha of
        T1^(-mu_beta_row(j)+i) * (Omega T2)^(colheight_alpha(i)-j+1)
      plus sum over boxes (i,j) of mu_beta of
        T1^(mu_alpha_row(j)-i+1) * (Omega T2)^(-colheight_beta(i)+j)
    times the prefactor Omega^(a(beta)-a(alpha)), so the Omega exponent of
    a term equals a(beta) - a(alpha) + t2 mod ell.
    """
    r = check_ranks(r)
    ell = len(r)
    big_r = sum(r)
    if len(fp.mus) != big_r:
        raise ValueError("fixed point has %d components, expected %d"
                         % (len(fp.mus), big_r))
    sectors = [sector_index(b, r) for b in range(1, big_r + 1)]
    heights = [mu.col_heights() for mu in fp.mus]
    out = []
    for alpha in range(1, big_r + 1):
        mu_a = fp.mus[alpha - 1]
        h_a = heights[alpha - 1]
        for beta in range(1, big_r + 1):
            mu_b = fp.mus[beta - 1]
            h_b = heights[beta - 1]
            shift = sectors[beta - 1] - sectors[alpha - 1]
            terms = {}
            for i, j in mu_a.boxes():
                t1 = -mu_b.row(j) + i
                t2 = h_a[i - 1] - j + 1
                key = (t1, t2, (shift + t2) % ell)
                terms[key] = terms.get(key, 0) + 1
            for i, j in mu_b.boxes():
                t1 = mu_a.row(j) - i + 1
                t2 = -h_b[i - 1] + j
                key = (t1, t2, (shift + t2) % ell)
                terms[key] = terms.get(key, 0) + 1
            out.append(RepRingElement((alpha, beta), terms))
    return out


def invariant_part(elements, ell):
    """Keep only monomials whose total Omega exponent vanishes mod ell."""
    out = []
    for e in elements:
        kept = {k: c for k, c in e.terms.items() if k[2] % ell == 0}
        out.append(RepRingElement(e.sector, kept))
    return out


def tangent_count(elements):
    return sum(e.count() for e in elements)


def morse_index_formula(mu, beta, r):
    """Index contribution of one component: the color counts paired with
    the rank entries, minus the column count times the in-sector offset."""
    r = check_ranks(r)
    ell = len(r)
    a = sector_index(beta, r)
    counts = colored_counts(mu, a, ell)
    head = sum(r[: a + 1])
    return sum(counts[c] * r[c] for c in range(ell)) - mu.col * (head - beta + 1)


def fixed_point_morse_index(fp, r):
    return sum(morse_index_formula(mu, beta, r)
               for beta, mu in enumerate(fp.mus, start=1))


def morse_index_oracle(fp, r):
    """Count invariant tangent monomials with negative T2 weight for pairs
    alpha >= beta, nonpositive T2 weight for pairs alpha < beta."""
    ell = len(check_ranks(r))
    total = 0
    for e in invariant_part(tangent_character(fp, r), ell):
        alpha, beta = e.sector
        for (_, t2, _), c in e.terms.items():
            if t2 < 0 or (alpha < beta and t2 == 0):
                total += c
    return total


def poincare_polynomial(r, n):
    """Map from y-exponent 2w to the number-of-fixed-points weight count."""
    out = {}
    for fp in enumerate_fixed_points(r, n):
        e = 2 * fixed_point_morse_index(fp, r)
        out[e] = out.get(e, 0) + 1
    return dict(sorted(out.items()))


def _chunk_terms(args):
    r, fps = args
    ell = len(r)
    terms = {}
    for fp in fps:
        n = fp.occupation(r)
        w = fixed_point_morse_index(fp, r)
        mono = (2 * w,) + n
        terms[mono] = terms.get(mono, 0) + 1
    return terms


def brute_force_Z(r, n_max, threads=1):
    """Localization sum: for every occupation vector with total <= n_max,
    each fixed point contributes y^(2w) times the q-monomial of its
    occupation vector."""
    r = check_ranks(r)
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    ell = len(r)
    space = canonical_space(ell, n_max)
    fps = []
    for total in range(n_max + 1):
        fps.extend(_all_tuples(r, total))
    threads = max(1, int(threads or 1))
    if threads == 1 or len(fps) < 64:
        merged = _chunk_terms((r, fps))
    else:
        size = (len(fps) + threads - 1) // threads
        chunks = [(r, fps[k:k + size]) for k in range(0, len(fps), size)]
        merged = {}
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_chunk_terms, chunks):
                for m, c in part.items():
                    merged[m] = merged.get(m, 0) + c
    return Series.from_terms(space, merged)
