"""Sparse exact multivariate Laurent series with total-degree truncation.

A VariableSpace fixes an ordered list of variable names, the subset of
variables whose total exponent is the truncation grading, the truncation
bound, and optional per-variable caps on absolute exponents (needed by
spaces with ungraded Laurent directions that would otherwise produce
infinitely many terms at a fixed graded degree).

Monomials are exponent tuples aligned with the variable order.  Series
coefficients are arbitrary-precision integers; no division ever occurs.
"""

import json


class SeriesError(Exception):
    pass


class VariableSpace:
    def __init__(self, names, grading, truncation, caps=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise SeriesError("duplicate variable names")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        grading = tuple(grading)
        for g in grading:
            if g not in self.index:
                raise SeriesError("grading variable %r not in space" % (g,))
        if len(set(grading)) != len(grading):
            raise SeriesError("duplicate grading variables")
        if not isinstance(truncation, int) or truncation < 0:
            raise SeriesError("truncation must be a non-negative integer")
        self.grading = grading
        self.truncation = truncation
        self.caps = {}
        if caps:
            for n, c in caps.items():
                if n not in self.index:
                    raise SeriesError("capped variable %r not in space" % (n,))
                if not isinstance(c, int) or c < 0:
                    raise SeriesError("cap must be a non-negative integer")
                self.caps[n] = c
        self._gidx = tuple(self.index[g] for g in grading)
        self._cidx = tuple((self.index[n], c) for n, c in self.caps.items())
        self._unit = (0,) * len(names)

    def unit(self):
        return self._unit

    def mono(self, exps=None, **kw):
        """Build an exponent tuple from a name->exponent mapping."""
        out = [0] * len(self.names)
        for src in (exps, kw):
            if not src:
                continue
            for name, e in src.items():
                try:
                    out[self.index[name]] += int(e)
                except KeyError:
                    raise SeriesError("unknown variable %r" % (name,)) from None
        return tuple(out)

    def gdeg(self, m):
        return sum(m[i] for i in self._gidx)

    def caps_ok(self, m):
        return all(abs(m[i]) <= c for i, c in self._cidx)

    def admits(self, m):
        g = self.gdeg(m)
        return 0 <= g <= self.truncation and self.caps_ok(m)

    def mono_mul(self, m1, m2):
        return tuple(a + b for a, b in zip(m1, m2))

    def mono_pow(self, m, e):
        return tuple(a * e for a in m)

    def with_truncation(self, truncation):
        return VariableSpace(self.names, self.grading, truncation, self.caps)

    def __eq__(self, other):
        return (isinstance(other, VariableSpace)
                and self.names == other.names
                and self.grading == other.grading
                and self.truncation == other.truncation
                and self.caps == other.caps)

    def __repr__(self):
        return "VariableSpace(%r, grading=%r, truncation=%d)" % (
            list(self.names), list(self.grading), self.truncation)


def canonical_space(ell, truncation):
    """The comparison space (y, q0, ..., q{ell-1}) graded by total q-degree."""
    names = ("y",) + tuple("q%d" % a for a in range(ell))
    return VariableSpace(names, names[1:], truncation)


class Series:
    """Immutable truncated Laurent series over a VariableSpace."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms):
        # trusted constructor: terms must already be clean (admissible
        # monomials, no zero coefficients); external callers use from_terms
        self.space = space
        self.terms = terms

    @classmethod
    def from_terms(cls, space, terms):
        """Validating constructor; drops above-truncation terms, rejects
        monomials of negative graded degree."""
        clean = {}
        width = len(space.names)
        for m, c in dict(terms).items():
            m = tuple(m)
            if len(m) != width:
                raise SeriesError("monomial width %d does not match space" % len(m))
            c = int(c)
            if c == 0:
                continue
            g = space.gdeg(m)
            if g < 0:
                raise SeriesError("monomial with negative graded degree: %r" % (m,))
            if g > space.truncation or not space.caps_ok(m):
                continue
            clean[m] = clean.get(m, 0) + c
        return cls(space, {m: c for m, c in clean.items() if c})

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def one(cls, space, coeff=1):
        return cls.from_terms(space, {space.unit(): coeff})

    @classmethod
    def monomial(cls, space, m, coeff=1):
        return cls.from_terms(space, {tuple(m): coeff})

    def _require_same(self, other):
        if not isinstance(other, Series):
            raise SeriesError("expected a Series")
        if self.space != other.space:
            raise SeriesError("mismatched spaces: %r vs %r" % (self.space, other.space))

    def __add__(self, other):
        if isinstance(other, int):
            other = Series.one(self.space, other)
        self._require_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            elif m in out:
                del out[m]
        return Series(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Series.one(self.space, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Series.zero(self.space)
            return Series(self.space, {m: c * other for m, c in self.terms.items()})
        self._require_same(other)
        sp = self.space
        trunc = sp.truncation
        a = sorted(((sp.gdeg(m), m, c) for m, c in self.terms.items()),
                   key=lambda t: t[0])
        b = sorted(((sp.gdeg(m), m, c) for m, c in other.terms.items()),
                   key=lambda t: t[0])
        out = {}
        for g1, m1, c1 in a:
            lim = trunc - g1
            for g2, m2, c2 in b:
                if g2 > lim:
                    break
                m = tuple(x + y for x, y in zip(m1, m2))
                if not sp.caps_ok(m):
                    continue
                nc = out.get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                elif m in out:
                    del out[m]
        return Series(sp, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Series)
                and self.space == other.space
                and self.terms == other.terms)

    def coefficient(self, m):
        return self.terms.get(tuple(m), 0)

    def restrict(self, var):
        """Set a variable to 1 by deleting its exponent, merging collisions."""
        i = self.space.index[var]
        out = {}
        for m, c in self.terms.items():
            mm = m[:i] + (0,) + m[i + 1:]
            out[mm] = out.get(mm, 0) + c
        return Series.from_terms(self.space, out)

    def truncate(self, truncation):
        sp = self.space.with_truncation(truncation)
        return Series.from_terms(sp, self.terms)

    def terms_sorted(self):
        """Canonical order: descending lexicographic on exponent tuples."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __repr__(self):
        return "Series(%s)" % (render_text(self),)


def add(s1, s2):
    return s1 + s2


def mul(s1, s2):
    return s1 * s2


def coefficient(s, m):
    return s.coefficient(m)


def restrict(s, var):
    return s.restrict(var)


def geometric_inverse(space, m):
    """Expansion of 1/(1 - m) as 1 + m + m^2 + ... in the truncated ring.

    Requires a direction in which the powers die out: graded degree >= 1,
    or graded degree 0 with a non-zero exponent on a capped variable.
    """
    m = tuple(m)
    g = space.gdeg(m)
    if g < 0:
        raise SeriesError("geometric_inverse: graded degree %d < 0" % g)
    if g == 0 and not any(m[i] for i, _ in space._cidx):
        raise SeriesError("geometric_inverse: graded degree 0 and no capped exponent")
    terms = {}
    p = space.unit()
    while space.admits(p):
        terms[p] = 1
        p = space.mono_mul(p, m)
    return Series(space, terms)


def pochhammer_inverse(space, m, z):
    """Inverse of prod_{n>=1} (1 - z^{n-1} m), factor by factor.

    Factors whose monomial exceeds the truncation are identically 1 in the
    truncated ring and are skipped; the step monomial z must have graded
    degree >= 1 so that only finitely many factors survive.
    """
    m = tuple(m)
    z = tuple(z)
    if space.gdeg(z) < 1:
        raise SeriesError("pochhammer_inverse: step monomial needs graded degree >= 1")
    if space.gdeg(m) < 0:
        raise SeriesError("pochhammer_inverse: graded degree %d < 0" % space.gdeg(m))
    out = Series.one(space)
    f = m
    while space.gdeg(f) <= space.truncation:
        out = out * geometric_inverse(space, f)
        f = space.mono_mul(f, z)
    return out


def series_product(space, factors):
    """Ordered product of a list of Series, starting from 1."""
    out = Series.one(space)
    for f in factors:
        out = out * f
    return out


def substitute(s, mapping, target):
    """Monomial-wise ring homomorphism into another space.

    Every source variable must have an image monomial in the target space.
    Image monomials above the target truncation (or violating a cap) are
    dropped; an image of negative graded degree is an error, since it
    signals a variable change that is illegal for the chosen grading.
    """
    src = s.space
    images = []
    for name in src.names:
        if name not in mapping:
            raise SeriesError("substitute: no image for variable %r" % (name,))
        img = tuple(mapping[name])
        if len(img) != len(target.names):
            raise SeriesError("substitute: image width does not match target space")
        images.append(img)
    out = {}
    for m, c in s.terms.items():
        img = target.unit()
        for i, e in enumerate(m):
            if e:
                img = target.mono_mul(img, target.mono_pow(images[i], e))
        g = target.gdeg(img)
        if g < 0:
            raise SeriesError("substitute: image monomial has negative graded degree")
        if g > target.truncation or not target.caps_ok(img):
            continue
        nc = out.get(img, 0) + c
        if nc:
            out[img] = nc
        elif img in out:
            del out[img]
    return Series(target, out)


def to_json_dict(s):
    sp = s.space
    d = {
        "variables": list(sp.names),
        "grading": list(sp.grading),
        "truncation": sp.truncation,
    }
    if sp.caps:
        d["caps"] = {n: sp.caps[n] for n in sp.names if n in sp.caps}
    d["terms"] = [
        {"exp": {name: e for name, e in zip(sp.names, m) if e}, "coeff": str(c)}
        for m, c in s.terms_sorted()
    ]
    return d


def from_json_dict(d):
    sp = VariableSpace(d["variables"], d["grading"], d["truncation"], d.get("caps"))
    terms = {}
    for t in d["terms"]:
        m = sp.mono(t["exp"])
        terms[m] = terms.get(m, 0) + int(t["coeff"])
    return Series.from_terms(sp, terms)


def to_json(s, indent=None):
    return json.dumps(to_json_dict(s), indent=indent)


def from_json(text):
    return from_json_dict(json.loads(text))


def render_text(s):
    """Plain-text form: terms in canonical order, like 2*y^2*q0*q1 + q0."""
    items = s.terms_sorted()
    if not items:
        return "0"
    pieces = []
    for m, c in items:
        factors = []
        for name, e in zip(s.space.names, m):
            if e == 0:
                continue
            factors.append(name if e == 1 else "%s^%d" % (name, e))
        body = "*".join(factors)
        if not body:
            mag = str(abs(c))
        elif abs(c) == 1:
            mag = body
        else:
            mag = "%d*%s" % (abs(c), body)
        pieces.append((c < 0, mag))
    first_neg, first = pieces[0]
    text = ("-" + first) if first_neg else first
    for neg, mag in pieces[1:]:
        text += (" - " if neg else " + ") + mag
    return text


def series_diff_report(lhs, rhs):
    """Compare two series in the same space.

    Returns {"equal": True} on a match; otherwise the first differing
    coefficient in canonical monomial order, with both values as strings.
    """
    if not isinstance(lhs, Series) or not isinstance(rhs, Series):
        raise SeriesError("series_diff_report expects two Series")
    if lhs.space != rhs.space:
        raise SeriesError("series_diff_report: mismatched spaces")
    if lhs.terms == rhs.terms:
        return {"equal": True}
    names = lhs.space.names
    for m in sorted(set(lhs.terms) | set(rhs.terms), reverse=True):
        cl = lhs.terms.get(m, 0)
        cr = rhs.terms.get(m, 0)
        if cl != cr:
            return {"equal": False,
                    "first_diff": {"exp": {n: e for n, e in zip(names, m) if e},
                                   "lhs": str(cl), "rhs": str(cr)}}
    raise AssertionError("unreachable")
