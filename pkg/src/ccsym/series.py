"""Precision-tracked Laurent series A((t)) over a local Artinian ring.

A series stores its lowest index, a finite coefficient window, and an
explicit precision bound N: coefficients at indices >= N are unknown,
everything below N outside the stored window is exactly zero.  Exact
data (Laurent polynomials) carry infinite precision.  All operations
propagate the best sound precision and raise IndeterminateAtPrecision
rather than answer from unknown coefficients.
"""

from __future__ import annotations

from .errors import (
    IndeterminateAtPrecision,
    MixedRings,
    NonUnit,
    NotAUniformizer,
)
from .rings import Ring, RingMap

INF = float("inf")

#: window used when an exact series is inverted or expanded and the caller
#: did not request a precision; results still carry their explicit O(t^N).
DEFAULT_PRECISION = 24


class LaurentSeries:
    """An element of A((t)) known modulo O(t^prec)."""

    __slots__ = ("ring", "ell", "coeffs", "prec")

    def __init__(self, ring: Ring, ell: int, coeffs, prec=INF):
        coeffs = list(coeffs)
        if prec != INF:
            prec = int(prec)
            keep = prec - ell
            if keep < len(coeffs):
                coeffs = coeffs[: max(keep, 0)]
        lead = 0
        while lead < len(coeffs) and ring.is_zero(coeffs[lead]):
            lead += 1
        tail = len(coeffs)
        while tail > lead and ring.is_zero(coeffs[tail - 1]):
            tail -= 1
        self.ring = ring
        self.prec = prec
        if lead == tail:
            self.ell = 0
            self.coeffs = ()
        else:
            self.ell = ell + lead
            self.coeffs = tuple(coeffs[lead:tail])

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, prec=INF) -> LaurentSeries:
        return cls(ring, 0, (), prec)

    @classmethod
    def one(cls, ring: Ring, prec=INF) -> LaurentSeries:
        return cls(ring, 0, (ring.one,), prec)

    @classmethod
    def constant(cls, ring: Ring, c, prec=INF) -> LaurentSeries:
        return cls(ring, 0, (c,), prec)

    @classmethod
    def t_power(cls, ring: Ring, k: int, coeff=None, prec=INF) -> LaurentSeries:
        return cls(ring, k, (ring.one if coeff is None else coeff,), prec)

    @classmethod
    def from_terms(cls, ring: Ring, terms: dict, prec=INF) -> LaurentSeries:
        if not terms:
            return cls.zero(ring, prec)
        lo = min(terms)
        hi = max(terms)
        coeffs = [terms.get(i, ring.zero) for i in range(lo, hi + 1)]
        return cls(ring, lo, coeffs, prec)

    # -- basic accessors ---------------------------------------------------

    @property
    def is_zero_series(self) -> bool:
        """True when every known coefficient is zero (exact zero if prec=inf)."""
        return not self.coeffs

    def end(self) -> int:
        return self.ell + len(self.coeffs)

    def coeff(self, i: int):
        """Coefficient of t^i; raises if i is beyond the precision bound."""
        if i >= self.prec:
            raise IndeterminateAtPrecision(
                f"coefficient of t^{i} unknown beyond O(t^{self.prec})"
            )
        if self.ell <= i < self.end():
            return self.coeffs[i - self.ell]
        return self.ring.zero

    def known(self, i: int) -> bool:
        return i < self.prec

    def _check(self, other: LaurentSeries) -> None:
        if self.ring != other.ring:
            raise MixedRings(f"cannot mix series over {self.ring} and {other.ring}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        self._check(other)
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return LaurentSeries(other.ring, other.ell, other.coeffs, prec)
        if not other.coeffs:
            return LaurentSeries(self.ring, self.ell, self.coeffs, prec)
        ring = self.ring
        lo = min(self.ell, other.ell)
        hi = max(self.end(), other.end())
        out = []
        for i in range(lo, hi):
            a = self.coeffs[i - self.ell] if self.ell <= i < self.end() else ring.zero
            b = (
                other.coeffs[i - other.ell]
                if other.ell <= i < other.end()
                else ring.zero
            )
            out.append(ring.add(a, b))
        return LaurentSeries(ring, lo, out, prec)

    def __neg__(self) -> LaurentSeries:
        ring = self.ring
        return LaurentSeries(ring, self.ell, map(ring.neg, self.coeffs), self.prec)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self + (-other)

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        self._check(other)
        ring = self.ring
        la = self.ell if self.coeffs else self.prec
        lb = other.ell if other.coeffs else other.prec
        prec = min(la + other.prec, lb + self.prec)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(ring, prec)
        a, b = self.coeffs, other.coeffs
        na, nb = len(a), len(b)
        lo = self.ell + other.ell
        length = na + nb - 1
        if prec != INF:
            length = min(length, prec - lo)
        dot = ring.dot
        out = []
        for n in range(length):
            i0 = max(0, n - nb + 1)
            i1 = min(na, n + 1)
            j = n - i0
            j_stop = n - i1
            out.append(
                dot(a[i0:i1], b[j : (j_stop if j_stop >= 0 else None) : -1])
            )
        return LaurentSeries(ring, lo, out, prec)

    def scalar_mul(self, c) -> LaurentSeries:
        ring = self.ring
        return LaurentSeries(
            ring, self.ell, (ring.mul(c, x) for x in self.coeffs), self.prec
        )

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by t^k (exact)."""
        return LaurentSeries(
            self.ring, self.ell + k, self.coeffs, self.prec + k if self.prec != INF else INF
        )

    def truncate(self, prec) -> LaurentSeries:
        return LaurentSeries(self.ring, self.ell, self.coeffs, min(self.prec, prec))

    def __pow__(self, n: int) -> LaurentSeries:
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries.one(self.ring)
        base = self
        first = True
        while n:
            if n & 1:
                result = base if first else result * base
                first = False
            n >>= 1
            if n:
                base = base * base
        return result

    # -- unit structure ----------------------------------------------------

    def is_unit(self) -> bool:
        """Whether the reduction in k((t)) is nonzero.

        Decidable as soon as any stored coefficient is a unit of A, or
        when the series is exact; otherwise the precision window could
        hide a unit coefficient and the question is indeterminate.
        """
        ring = self.ring
        for c in self.coeffs:
            if ring.is_unit(c):
                return True
        if self.prec == INF:
            return False
        raise IndeterminateAtPrecision(
            f"all coefficients of {self} below O(t^{self.prec}) are nilpotent"
        )

    def winding_number(self) -> int:
        """Order of the reduction of the series in k((t))."""
        ring = self.ring
        for i, c in enumerate(self.coeffs):
            if ring.is_unit(c):
                return self.ell + i
        if self.prec == INF:
            raise NonUnit(f"{self} is not a unit of {self.ring}((t))")
        raise IndeterminateAtPrecision(
            f"all coefficients of {self} below O(t^{self.prec}) are nilpotent"
        )

    def nilpotent_depth(self) -> int:
        """Largest d such that the coefficient of t^(w-d) is nonzero (0 if none)."""
        return max(0, self.winding_number() - self.ell)

    def inverse(self, prec=None) -> LaurentSeries:
        """Multiplicative inverse, exact up to the propagated precision.

        Factors out t^w times the leading unit, clears the nilpotent
        negative tail by finitely many geometric factors (m^e = 0), and
        inverts the remaining 1 + O(t) part by back-substitution.
        """
        ring = self.ring
        w = self.winding_number()
        c = self.coeff(w)
        h = self.shift(-w).scalar_mul(ring.inv(c))
        geoms = []
        budget = 16 + 8 * ring.nilpotency_index * (1 + max(0, -h.ell))
        while h.coeffs and h.ell < 0:
            budget -= 1
            if budget < 0:
                raise RuntimeError("negative-tail clearing did not terminate")
            d = h.ell
            g = _geometric_inverse(ring, d, ring.neg(h.coeff(d)))
            geoms.append(g)
            h = h * g
        cap = prec if prec is not None else None
        if h.prec == INF and len(h.coeffs) <= 1:
            inv_h = LaurentSeries.constant(ring, ring.inv(h.coeff(0)))
            if cap is not None:
                inv_h = inv_h.truncate(cap)
        else:
            if h.prec == INF and cap is None:
                cap = DEFAULT_PRECISION
            inv_h = _unit_power_series_inverse(h, cap)
        out = inv_h.shift(-w).scalar_mul(ring.inv(c))
        for g in geoms:
            out = out * g
        if prec is not None:
            out = out.truncate(prec)
        return out

    # -- calculus and functoriality ----------------------------------------

    def derivative(self) -> LaurentSeries:
        """Termwise d/dt; the precision bound drops by one."""
        ring = self.ring
        out = [
            ring.mul(ring.from_int(self.ell + i), c)
            for i, c in enumerate(self.coeffs)
        ]
        prec = self.prec - 1 if self.prec != INF else INF
        return LaurentSeries(ring, self.ell - 1, out, prec)

    def map_coefficients(self, h: RingMap) -> LaurentSeries:
        if h.source != self.ring:
            raise MixedRings(f"map {h!r} does not apply to series over {self.ring}")
        return LaurentSeries(h.target, self.ell, map(h, self.coeffs), self.prec)

    def substitute(self, sigma: LaurentSeries, prec=None) -> LaurentSeries:
        """Composition f(sigma(t)) for a uniformizer sigma = c*t + t^2*h.

        Negative powers of t go through sigma's inverse.  Precision is
        propagated by the underlying operations; the unknown tail of f
        enters at order f.prec since sigma has order one.  An optional
        prec caps the result (and the working window, for speed).
        """
        self._check(sigma)
        ring = self.ring
        if sigma.ell < 1 or not sigma.coeffs:
            raise NotAUniformizer("substitution series has terms below degree 1")
        if not sigma.known(1):
            raise NotAUniformizer("linear coefficient unknown at this precision")
        if not ring.is_unit(sigma.coeff(1)):
            raise NotAUniformizer("linear coefficient is not a unit")
        out_prec = self.prec if prec is None else min(self.prec, prec)
        if not self.coeffs:
            return LaurentSeries.zero(ring, out_prec)
        acc = LaurentSeries.zero(ring)
        top = self.end() - 1
        for i in range(top, -1, -1):
            c = self.coeffs[i - self.ell] if i >= self.ell else ring.zero
            acc = acc * sigma + LaurentSeries.constant(ring, c)
            if prec is not None:
                acc = acc.truncate(prec)
        if self.ell < 0:
            depth = -self.ell
            sig_inv = sigma.inverse(None if prec is None else prec + depth)
            power = LaurentSeries.one(ring)
            for i in range(-1, self.ell - 1, -1):
                power = power * sig_inv
                if prec is not None:
                    power = power.truncate(prec)
                ci = self.coeffs[i - self.ell] if i >= self.ell else ring.zero
                if not ring.is_zero(ci):
                    acc = acc + power.scalar_mul(ci)
        return acc.truncate(out_prec)

    # -- comparison and display --------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.ring == other.ring
            and self.ell == other.ell
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.ring, self.ell, self.coeffs, self.prec))

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Equality of every coefficient both series claim to know."""
        self._check(other)
        bound = min(self.prec, other.prec)
        lo = min(self.ell if self.coeffs else 0, other.ell if other.coeffs else 0)
        hi = max(self.end(), other.end())
        ring = self.ring
        for i in range(lo, hi):
            if i >= bound:
                break
            a = self.coeffs[i - self.ell] if self.ell <= i < self.end() else ring.zero
            b = (
                other.coeffs[i - other.ell]
                if other.ell <= i < other.end()
                else ring.zero
            )
            if a != b:
                return False
        return True

    def format(self, var: str = "t") -> str:
        ring = self.ring
        parts = []
        for i, c in enumerate(self.coeffs):
            if ring.is_zero(c):
                continue
            idx = self.ell + i
            cs = ring.format_element(c)
            wrap = ("+" in cs) or ("-" in cs[1:])
            if idx == 0:
                term = cs
            else:
                pw = var if idx == 1 else f"{var}^{idx}"
                if cs == "1":
                    term = pw
                elif cs == "-1":
                    term = f"-{pw}"
                else:
                    term = f"({cs})*{pw}" if wrap else f"{cs}*{pw}"
            parts.append(term)
        if not parts:
            body = "0"
        else:
            body = parts[0]
            for part in parts[1:]:
                body += part if part.startswith("-") else "+" + part
        if self.prec == INF:
            return body
        tail = f"O({var}^{self.prec})"
        return tail if body == "0" else f"{body}+{tail}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentSeries({self.ring}, {self.format()})"


def _geometric_inverse(ring: Ring, d: int, a) -> LaurentSeries:
    """(1 - a*t^d)^(-1) = sum a^k t^(dk) for nilpotent a; exact and finite."""
    terms = {0: ring.one}
    power = a
    k = 1
    while not ring.is_zero(power):
        terms[d * k] = power
        power = ring.mul(power, a)
        k += 1
        if k > ring.nilpotency_index:
            raise RuntimeError("geometric tail of a non-nilpotent coefficient")
    return LaurentSeries.from_terms(ring, terms)


def _unit_power_series_inverse(g: LaurentSeries, cap=None) -> LaurentSeries:
    """Inverse of g = u*(1 + O(t)) with u a unit of A, by back-substitution."""
    ring = g.ring
    prec = g.prec
    if cap is not None:
        prec = min(prec, cap)
    if prec == INF:
        prec = DEFAULT_PRECISION
    n = int(prec)
    if n <= 0:
        raise IndeterminateAtPrecision("no known coefficients to invert")
    g0inv = ring.inv(g.coeff(0))
    out = [g0inv]
    gw = [g.coeff(i) if g.known(i) else ring.zero for i in range(n)]
    for k in range(1, n):
        s = ring.zero
        for j in range(1, k + 1):
            gj = gw[j]
            if not ring.is_zero(gj):
                s = ring.add(s, ring.mul(gj, out[k - j]))
        out.append(ring.neg(ring.mul(g0inv, s)))
    return LaurentSeries(ring, 0, out, g.prec if cap is None else min(g.prec, cap))
