"""Unit-group coordinates and residue symbols on A((t))*.

Every unit f of A((t)) factors uniquely as

    f = a0 * t^w * prod_{i>0} (1 - a_i t^i) * prod_{i>0} (1 - a_{-i} t^{-i})

with a0 a unit, the negative coordinates nilpotent and almost all zero.
The Contou-Carrere symbol is evaluated from these coordinates by a finite
product: nilpotency truncates the pairing terms, and required_precision
makes the needed coordinate window explicit instead of ever truncating
an answer.  Over a field the symbol degenerates to the tame symbol at
t = 0.  Kato's residue symbol for the two-variable field k((x))((z)) is
computed levelwise over k[x]/(x^m) from the x^e * unit normal form.
"""

from __future__ import annotations

from math import gcd

from .errors import (
    IndeterminateAtPrecision,
    InsufficientPrecision,
    MixedFields,
    MixedRings,
)
from .rings import Ring, RingMap, TruncatedPolynomialRing
from .series import DEFAULT_PRECISION, INF, LaurentSeries, _geometric_inverse


class UnitDecomposition:
    """Winding number and multiplicative coordinates of a unit series.

    ``pos``/``neg`` map the coordinate index i to the (nonzero) value of
    a_i / a_{-i}; positive coordinates are known for 1 <= i < prec.
    """

    __slots__ = ("ring", "w", "a0", "pos", "neg", "prec")

    def __init__(self, ring: Ring, w: int, a0, pos: dict, neg: dict, prec):
        self.ring = ring
        self.w = w
        self.a0 = a0
        self.pos = pos
        self.neg = neg
        self.prec = prec

    def jmax(self) -> int:
        """Deepest nonzero negative coordinate index (0 when none)."""
        return max(self.neg) if self.neg else 0

    def __eq__(self, other):
        return (
            isinstance(other, UnitDecomposition)
            and self.ring == other.ring
            and self.w == other.w
            and self.a0 == other.a0
            and self.pos == other.pos
            and self.neg == other.neg
            and self.prec == other.prec
        )

    def __repr__(self):
        fmt = self.ring.format_element
        pos = {i: fmt(a) for i, a in sorted(self.pos.items())}
        neg = {-i: fmt(a) for i, a in sorted(self.neg.items())}
        return (
            f"UnitDecomposition(w={self.w}, a0={fmt(self.a0)}, "
            f"pos={pos}, neg={neg}, prec={self.prec})"
        )


def _clear_negative_tail(f: LaurentSeries):
    """Write f = c*t^w * (raw negative factors) * h with h supported in t^>=0.

    Returns (w, c, raw, h) where raw lists (depth, value) for factors
    (1 - value*t^-depth).  Peeling the deepest coefficient first pushes
    the remaining negative part into higher powers of the maximal ideal,
    so the loop ends after finitely many steps (m^e = 0).
    """
    ring = f.ring
    w = f.winding_number()
    c = f.coeff(w)
    h = f.shift(-w).scalar_mul(ring.inv(c))
    raw = []
    budget = 64 + 16 * ring.nilpotency_index * (1 + max(0, -h.ell))
    while h.coeffs and h.ell < 0:
        budget -= 1
        if budget < 0:
            raise RuntimeError("negative-tail peeling did not terminate")
        d = h.ell
        a = ring.neg(h.coeff(d))
        raw.append((-d, a))
        h = h * _geometric_inverse(ring, d, a)
    return w, c, raw, h


def _canonical_negative(ring: Ring, raw) -> dict:
    """Turn an unordered factor list into the canonical a_{-i} coordinates."""
    B = LaurentSeries.one(ring)
    for d, a in raw:
        B = B * LaurentSeries.from_terms(ring, {0: ring.one, -d: ring.neg(a)})
    neg = {}
    i = 1
    budget = 64 + 16 * ring.nilpotency_index * (1 + max(0, -B.ell))
    while B.coeffs and B.ell < 0:
        budget -= 1
        if budget < 0:
            raise RuntimeError("negative coordinate extraction did not terminate")
        c = B.coeff(-i)
        if not ring.is_zero(c):
            a = ring.neg(c)
            neg[i] = a
            B = B * _geometric_inverse(ring, -i, a)
        i += 1
    assert B == LaurentSeries.one(ring)
    return neg


def witt_decompose(f: LaurentSeries, prec=None) -> UnitDecomposition:
    """Winding number and coordinates of a unit f, uniquely determined by f.

    ``prec`` requests the positive-coordinate window; it defaults to the
    relative precision of f (capped for exact inputs).  The achieved
    window is recorded on the result, never exceeded silently.
    """
    ring = f.ring
    w, c, raw, h = _clear_negative_tail(f)
    neg = _canonical_negative(ring, raw)
    u0 = h.coeff(0)
    a0 = ring.mul(c, u0)
    u = h.scalar_mul(ring.inv(u0))
    if prec is None:
        prec = f.prec - w if f.prec != INF else DEFAULT_PRECISION
    if u.prec == INF and len(u.coeffs) <= 1:
        # pure monomial times negative tail: every positive coordinate is zero
        return UnitDecomposition(ring, w, a0, {}, neg, INF)
    window = prec if prec != INF else DEFAULT_PRECISION
    u = u.truncate(window)
    avail = int(u.prec)
    pos = {}
    for i in range(1, avail):
        ai = ring.neg(u.coeff(i))
        if not ring.is_zero(ai):
            pos[i] = ai
            geom = {k: ring.pow(ai, k // i) for k in range(0, avail, i)}
            u = u * LaurentSeries.from_terms(ring, geom, prec=avail)
    return UnitDecomposition(ring, w, a0, pos, neg, avail)


def recompose(d: UnitDecomposition, prec=None) -> LaurentSeries:
    """Evaluate the coordinate product back into A((t)).

    Positive coordinates at indices >= prec are unknown, so the result
    carries the honestly propagated precision: the missing factors
    contribute 1 + O(t^prec), which the expanded negative tail pulls
    down to O(t^(w + prec + ell)) with ell the tail's lowest index.
    With every coordinate known (prec = inf) the product is exact.
    """
    if prec is None:
        prec = d.prec
    if d.prec < prec:
        raise IndeterminateAtPrecision(
            f"coordinates only known below index {d.prec}, requested {prec}"
        )
    ring = d.ring
    out = LaurentSeries.constant(ring, d.a0)
    for i, a in sorted(d.pos.items()):
        if i >= prec:
            break
        out = out * LaurentSeries.from_terms(ring, {0: ring.one, i: ring.neg(a)})
        if prec != INF:
            out = out.truncate(prec)
    if prec != INF:
        out = out.truncate(prec)
    for i, a in sorted(d.neg.items()):
        out = out * LaurentSeries.from_terms(ring, {0: ring.one, -i: ring.neg(a)})
    return out.shift(d.w)


def required_precision(f: LaurentSeries, g: LaurentSeries) -> tuple[int, int]:
    """Coordinate windows (for f, for g) that pin the symbol exactly.

    Positive coordinates of one argument only matter against negative
    coordinates of the other: the term at (i, j) dies once the nilpotent
    power b_{-j}^{i/(i,j)} hits zero, which is guaranteed for
    i >= e*jmax, e the nilpotency index.  The windows also cover the
    leading-unit contributions a0^w(g) and b0^w(f).
    """
    if f.ring != g.ring:
        raise MixedRings(f"cannot pair series over {f.ring} and {g.ring}")
    e = f.ring.nilpotency_index
    jf = _canonical_negative(f.ring, _clear_negative_tail(f)[2])
    jg = _canonical_negative(g.ring, _clear_negative_tail(g)[2])
    jmax_f = max(jf) if jf else 0
    jmax_g = max(jg) if jg else 0
    return max(1, e * jmax_g), max(1, e * jmax_f)


def contou_carrere(f: LaurentSeries, g: LaurentSeries):
    """The A*-valued pairing <f, g> evaluated exactly from coordinates.

    Equals the tame symbol at t = 0 when A is a field.  Raises
    InsufficientPrecision when the inputs do not determine every
    contributing coordinate.
    """
    if f.ring != g.ring:
        raise MixedRings(f"cannot pair series over {f.ring} and {g.ring}")
    ring = f.ring
    req_f, req_g = required_precision(f, g)
    df = witt_decompose(f, prec=req_f)
    dg = witt_decompose(g, prec=req_g)
    if df.prec < req_f or dg.prec < req_g:
        raise InsufficientPrecision(
            f"need coordinate windows {req_f}/{req_g}, have {df.prec}/{dg.prec}"
        )
    return symbol_from_decompositions(df, dg)


def symbol_from_decompositions(df: UnitDecomposition, dg: UnitDecomposition):
    """Evaluate the pairing formula on two coordinate decompositions."""
    ring = df.ring
    result = ring.pow(ring.neg(ring.one), (df.w * dg.w) & 1)
    result = ring.mul(result, ring.pow(df.a0, dg.w))
    den = ring.pow(dg.a0, df.w)
    for j, b in dg.neg.items():
        for i, a in df.pos.items():
            d = gcd(i, j)
            bp = ring.pow(b, i // d)
            if ring.is_zero(bp):
                continue
            term = ring.sub(ring.one, ring.mul(ring.pow(a, j // d), bp))
            result = ring.mul(result, ring.pow(term, d))
    for i, a in df.neg.items():
        for j, b in dg.pos.items():
            d = gcd(i, j)
            ap = ring.pow(a, j // d)
            if ring.is_zero(ap):
                continue
            term = ring.sub(ring.one, ring.mul(ap, ring.pow(b, i // d)))
            den = ring.mul(den, ring.pow(term, d))
    return ring.mul(result, ring.inv(den))


class MHatElement:
    """x^e * u, the normal form of a unit of the two-variable field.

    The unit part u is a unit Laurent series in z over k[x]/(x^m); the
    x-adic level m is the ring's truncation order.
    """

    __slots__ = ("ring", "exponent", "unit")

    def __init__(self, ring: TruncatedPolynomialRing, exponent: int, unit: LaurentSeries):
        if not isinstance(ring, TruncatedPolynomialRing) or ring.gen != "x":
            raise MixedFields(f"{ring} is not a truncated local ring k[x]/(x^m)")
        if unit.ring != ring:
            raise MixedFields(f"unit part lives over {unit.ring}, expected {ring}")
        if not unit.is_unit():
            from .errors import NonUnit

            raise NonUnit("the z-series part must be a unit")
        self.ring = ring
        self.exponent = exponent
        self.unit = unit

    def deg(self) -> int:
        """z-order of the reduction of the unit part modulo x."""
        return self.unit.winding_number()

    def __mul__(self, other: MHatElement) -> MHatElement:
        if other.ring != self.ring:
            raise MixedFields("cannot multiply over different levels")
        return MHatElement(self.ring, self.exponent + other.exponent, self.unit * other.unit)

    def substitute_z(self, sigma: LaurentSeries) -> MHatElement:
        return MHatElement(self.ring, self.exponent, self.unit.substitute(sigma))

    def map_level(self, h: RingMap) -> MHatElement:
        return MHatElement(h.target, self.exponent, self.unit.map_coefficients(h))

    def format(self) -> str:
        body = self.unit.format(var="z")
        if self.exponent == 0:
            return f"({body})"
        xe = "x" if self.exponent == 1 else f"x^{self.exponent}"
        return f"{xe} * ({body})"

    def __repr__(self):
        return f"MHatElement({self.ring}, {self.format()})"


def deg_mhat(u: MHatElement) -> int:
    return u.deg()


class KatoValue:
    """x^exponent * unit in k((x))*, recorded exactly modulo 1 + x^m k[[x]]."""

    __slots__ = ("ring", "exponent", "unit")

    def __init__(self, ring: TruncatedPolynomialRing, exponent: int, unit):
        self.ring = ring
        self.exponent = exponent
        self.unit = unit

    def __eq__(self, other):
        return (
            isinstance(other, KatoValue)
            and self.ring == other.ring
            and self.exponent == other.exponent
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.ring, self.exponent, self.unit))

    def mul(self, other: KatoValue) -> KatoValue:
        if other.ring != self.ring:
            raise MixedFields("cannot multiply values at different levels")
        return KatoValue(
            self.ring,
            self.exponent + other.exponent,
            self.ring.mul(self.unit, other.unit),
        )

    def inv(self) -> KatoValue:
        return KatoValue(self.ring, -self.exponent, self.ring.inv(self.unit))

    def map_level(self, h: RingMap) -> KatoValue:
        return KatoValue(h.target, self.exponent, h(self.unit))

    def format(self) -> str:
        unit = self.ring.format_element(self.unit)
        if self.exponent == 0:
            return unit
        xe = "x" if self.exponent == 1 else f"x^{self.exponent}"
        return xe if unit == "1" else f"{xe} * ({unit})"

    def __repr__(self):
        return f"KatoValue({self.ring}, {self.format()})"


def kato_residue(f: MHatElement, g: MHatElement) -> KatoValue:
    """The residue symbol {f, g} computed from the x^e * unit normal forms.

    Constants pair trivially and {c, u} = c^deg(u), so the x-exponent of
    the value is e1*deg(u2) - e2*deg(u1) while the unit parts pair through
    the Contou-Carrere symbol over k[x]/(x^m).
    """
    if f.ring != g.ring:
        raise MixedFields(f"levels {f.ring} and {g.ring} do not match")
    exponent = f.exponent * g.deg() - g.exponent * f.deg()
    unit = contou_carrere(f.unit, g.unit)
    return KatoValue(f.ring, exponent, unit)
