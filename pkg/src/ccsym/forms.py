"""Kahler differential forms over A((t)) and their residues.

One-forms are written f*dt + g*de and two-forms h*de^dt, where e is the
nilpotent generator of A (for a field A the de-components vanish since
Omega^1_A = 0).  The de-coefficients are stored modulo the annihilator
relation m*e^(m-1)*de = 0, so equality of forms is equality of normal
forms.  res1 extracts the t^-1 coefficient of the dt-part, res2 the
t^-1 coefficient of h; both refuse to answer when that coefficient lies
beyond the known precision.

Rings without a ring-homomorphism section of the residue map (Z/p^m for
m > 1) are rejected: their module of forms over the residue field is not
the one any of the residue identities are about.
"""

from __future__ import annotations

from .errors import MixedRings, UnsupportedRing
from .rings import Ring, RingMap, TruncatedPolynomialRing
from .series import LaurentSeries
from .symbols import MHatElement, contou_carrere, kato_residue


def _require_section(ring: Ring) -> None:
    if not ring.has_section:
        raise UnsupportedRing(
            f"{ring} has no coefficient-field section; differential forms unsupported"
        )


def _has_annihilator(ring: Ring) -> bool:
    """Whether e^(m-1)*de = 0 holds (the relation m*e^(m-1)*de = 0 with m a unit)."""
    if not isinstance(ring, TruncatedPolynomialRing) or ring.is_field:
        return False
    char = ring.characteristic
    return char == 0 or ring.order % char != 0


def reduce_de_coefficient(ring: Ring, c):
    """Canonical representative of c as a de-coefficient in Omega^1_A."""
    _require_section(ring)
    if ring.is_field:
        return ring.zero
    if _has_annihilator(ring):
        return c[:-1] + (ring.base.zero,)
    return c


def _reduce_de_series(s: LaurentSeries) -> LaurentSeries:
    ring = s.ring
    if ring.is_field:
        return LaurentSeries.zero(ring)
    if not _has_annihilator(ring):
        return s
    zero = ring.base.zero
    return LaurentSeries(
        ring, s.ell, (c[:-1] + (zero,) for c in s.coeffs), s.prec
    )


class AOneForm:
    """An element c*de of Omega^1_A, in canonical (annihilator-reduced) form."""

    __slots__ = ("ring", "coeff")

    def __init__(self, ring: Ring, coeff):
        _require_section(ring)
        self.ring = ring
        self.coeff = reduce_de_coefficient(ring, coeff)

    @classmethod
    def zero(cls, ring: Ring) -> AOneForm:
        return cls(ring, ring.zero)

    def __add__(self, other: AOneForm) -> AOneForm:
        if self.ring != other.ring:
            raise MixedRings("cannot add forms over different rings")
        return AOneForm(self.ring, self.ring.add(self.coeff, other.coeff))

    def __neg__(self) -> AOneForm:
        return AOneForm(self.ring, self.ring.neg(self.coeff))

    def __sub__(self, other: AOneForm) -> AOneForm:
        return self + (-other)

    def scale(self, a) -> AOneForm:
        return AOneForm(self.ring, self.ring.mul(a, self.coeff))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.coeff)

    def __eq__(self, other):
        return (
            isinstance(other, AOneForm)
            and self.ring == other.ring
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash((self.ring, self.coeff))

    def format(self) -> str:
        gen = self.ring.gen if isinstance(self.ring, TruncatedPolynomialRing) else "e"
        if self.ring.is_zero(self.coeff):
            return "0"
        cs = self.ring.format_element(self.coeff)
        if cs == "1":
            return f"d{gen}"
        wrap = "+" in cs or "-" in cs[1:]
        return f"({cs})*d{gen}" if wrap else f"{cs}*d{gen}"

    def __repr__(self):
        return f"AOneForm({self.ring}, {self.format()})"


class OneForm:
    """f*dt + g*de with f, g in A((t)); g is annihilator-reduced."""

    __slots__ = ("ring", "dt", "de")

    def __init__(self, dt: LaurentSeries, de: LaurentSeries):
        if dt.ring != de.ring:
            raise MixedRings("components live over different rings")
        _require_section(dt.ring)
        self.ring = dt.ring
        self.dt = dt
        self.de = _reduce_de_series(de)

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(self.dt + other.dt, self.de + other.de)

    def __neg__(self) -> OneForm:
        return OneForm(-self.dt, -self.de)

    def __sub__(self, other: OneForm) -> OneForm:
        return self + (-other)

    def series_mul(self, s: LaurentSeries) -> OneForm:
        return OneForm(s * self.dt, s * self.de)

    def __eq__(self, other):
        return (
            isinstance(other, OneForm)
            and self.dt == other.dt
            and self.de == other.de
        )

    def format(self, var: str = "t") -> str:
        gen = self.ring.gen if isinstance(self.ring, TruncatedPolynomialRing) else "e"
        return f"({self.dt.format(var)})*d{var} + ({self.de.format(var)})*d{gen}"

    def __repr__(self):
        return f"OneForm({self.format()})"


class TwoForm:
    """h*de^dt, the normal form of a two-form over A((t))."""

    __slots__ = ("ring", "h")

    def __init__(self, h: LaurentSeries):
        _require_section(h.ring)
        self.ring = h.ring
        self.h = _reduce_de_series(h) if not h.ring.is_field else LaurentSeries.zero(h.ring, h.prec)

    def __add__(self, other: TwoForm) -> TwoForm:
        return TwoForm(self.h + other.h)

    def __neg__(self) -> TwoForm:
        return TwoForm(-self.h)

    def series_mul(self, s: LaurentSeries) -> TwoForm:
        return TwoForm(s * self.h)

    def __eq__(self, other):
        return isinstance(other, TwoForm) and self.h == other.h

    def format(self, var: str = "t") -> str:
        gen = self.ring.gen if isinstance(self.ring, TruncatedPolynomialRing) else "e"
        return f"({self.h.format(var)})*d{gen}^d{var}"

    def __repr__(self):
        return f"TwoForm({self.format()})"


def d_series(f: LaurentSeries) -> OneForm:
    """Exterior derivative df = f'*dt + (df/de)*de."""
    ring = f.ring
    _require_section(ring)
    if isinstance(ring, TruncatedPolynomialRing) and not ring.is_field:
        de = LaurentSeries(ring, f.ell, (ring.d_epsilon(c) for c in f.coeffs), f.prec)
    else:
        de = LaurentSeries.zero(ring)
    return OneForm(f.derivative(), de)


def dlog(f: LaurentSeries) -> OneForm:
    """Logarithmic differential f^-1 df of a unit series."""
    finv = f.inverse()
    form = d_series(f)
    return OneForm(finv * form.dt, finv * form.de)


def dlog_element(ring: Ring, a) -> AOneForm:
    """dlog of a unit of A, an element of Omega^1_A."""
    _require_section(ring)
    if ring.is_field:
        ring.inv(a)  # unit check; Omega^1 of a field over itself vanishes
        return AOneForm.zero(ring)
    return AOneForm(ring, ring.mul(ring.inv(a), ring.d_epsilon(a)))


def wedge(alpha: OneForm, beta: OneForm) -> TwoForm:
    """alpha ^ beta in the normal form (de_a*dt_b - dt_a*de_b)*de^dt."""
    return TwoForm(alpha.de * beta.dt - alpha.dt * beta.de)


def dlog2(f: LaurentSeries, g: LaurentSeries) -> TwoForm:
    """dlog(f) ^ dlog(g) for unit series f, g."""
    return wedge(dlog(f), dlog(g))


def res1(alpha: OneForm):
    """Residue of a one-form: the t^-1 coefficient of its dt-component."""
    return alpha.dt.coeff(-1)


def res2(omega: TwoForm) -> AOneForm:
    """Residue of a two-form h*de^dt: (t^-1 coefficient of h)*de."""
    return AOneForm(omega.ring, omega.h.coeff(-1))


def res2_dlog2(f: LaurentSeries, g: LaurentSeries) -> AOneForm:
    """res2(dlog2(f, g)), asserted equal to dlog of the symbol <f, g>."""
    lhs = res2(dlog2(f, g))
    rhs = dlog_element(f.ring, contou_carrere(f, g))
    if lhs != rhs:
        raise AssertionError(
            f"residue square violated: res2(dlog2) = {lhs.format()} but "
            f"dlog<f,g> = {rhs.format()}"
        )
    return lhs


def form_substitute(sigma: LaurentSeries, form, prec=None):
    """Pull a form back along t -> sigma(t): dt -> sigma'dt + (dsigma/de)de."""
    ring = sigma.ring
    dsigma = d_series(sigma)
    if isinstance(form, OneForm):
        ft = form.dt.substitute(sigma, prec=prec)
        fe = form.de.substitute(sigma, prec=prec)
        return OneForm(ft * dsigma.dt, ft * dsigma.de + fe)
    if isinstance(form, TwoForm):
        # h de^dt -> (h o sigma) de^(sigma' dt); the de^de part dies
        return TwoForm(form.h.substitute(sigma, prec=prec) * dsigma.dt)
    if isinstance(form, AOneForm):
        return form
    raise TypeError(f"cannot substitute into {type(form).__name__}")


def map_form(h: RingMap, form):
    """Base change of forms along a coefficient homomorphism.

    The de-components pick up the chain factor d(h(e))/de'; for the
    residue map onto the coefficient field the factor is zero.
    """
    target = h.target
    _require_section(target)
    if h.kind == "epsilon":
        img = h.gen_image
        chain = (
            target.d_epsilon(img)
            if isinstance(target, TruncatedPolynomialRing) and not target.is_field
            else target.zero
        )
    elif h.kind == "residue":
        chain = target.zero
    else:
        raise UnsupportedRing(f"forms cannot be based-changed along {h!r}")
    if isinstance(form, AOneForm):
        return AOneForm(target, target.mul(h(form.coeff), chain))
    if isinstance(form, OneForm):
        de = form.de.map_coefficients(h).scalar_mul(chain)
        return OneForm(form.dt.map_coefficients(h), de)
    if isinstance(form, TwoForm):
        return TwoForm(form.h.map_coefficients(h).scalar_mul(chain))
    raise TypeError(f"cannot base change {type(form).__name__}")


def log_square_check(f: MHatElement, g: MHatElement):
    """The levelwise residue square for x^e * unit elements.

    Splits the value of the symbol {f, g} into its dx/x multiplicity and
    its regular Omega^1 part and compares both against the two-form
    residue route: the multiplicity must equal e1*w(u2) - e2*w(u1) (also
    recovered from residues of the logarithmic derivatives), and the
    regular part must satisfy res2(dlog2(u1, u2)) = dlog{u1, u2}.
    Returns the Kato value; raises AssertionError on any mismatch.
    """
    ring = f.ring
    kv = kato_residue(f, g)
    w1, w2 = f.deg(), g.deg()
    if kv.exponent != f.exponent * w2 - g.exponent * w1:
        raise AssertionError("dx/x multiplicity disagrees with winding bookkeeping")
    for u, w in ((f.unit, w1), (g.unit, w2)):
        if res1(dlog(u)) != ring.from_int(w):
            raise AssertionError("res1(dlog u) != winding number in A")
    lhs = res2(dlog2(f.unit, g.unit))
    rhs = dlog_element(ring, kv.unit)
    if lhs != rhs:
        raise AssertionError(
            f"levelwise square violated: {lhs.format()} != {rhs.format()}"
        )
    return kv
