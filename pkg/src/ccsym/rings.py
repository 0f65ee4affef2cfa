"""Exact arithmetic in local Artinian coefficient rings.

Supported rings: prime fields F_p, the rationals Q, truncated polynomial
rings k[e]/(e^m) over either base field, and Z/p^m.  Elements are plain
Python data (int, Fraction, or a coefficient tuple) in canonical form;
each ring object supplies the operations, in the style of dense-polynomial
ground domains.  Every element of a local ring here is either a unit
(nonzero residue) or nilpotent.
"""

from __future__ import annotations

import itertools
import operator
from fractions import Fraction

from .errors import MixedRings, NonUnit, NotAHomomorphism, UnsupportedRing


class Ring:
    """Base class for the supported local Artinian coefficient rings.

    Concrete rings expose ``zero``/``one``, the arithmetic methods, the
    residue/lift pair, and metadata: ``characteristic``, the nilpotency
    index (least e with m^e = 0, 1 for fields), and ``has_section``
    (True when the residue map admits a ring-homomorphism section, which
    the differential-form layer requires).
    """

    characteristic: int
    nilpotency_index: int
    has_section: bool
    is_field: bool

    # -- arithmetic ------------------------------------------------------

    def add(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def pow(self, x, n: int):
        if n < 0:
            return self.pow(self.inv(x), -n)
        result = self.one
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def dot(self, xs, ys):
        """Sum of pairwise products; the convolution kernel for series."""
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    # -- structure -------------------------------------------------------

    def is_zero(self, x) -> bool:
        return x == self.zero

    def is_unit(self, x) -> bool:
        return not self.residue_field.is_zero(self.residue(x))

    def is_nilpotent(self, x) -> bool:
        return self.residue_field.is_zero(self.residue(x))

    @property
    def residue_field(self) -> Ring:
        raise NotImplementedError

    def residue(self, x):
        raise NotImplementedError

    def lift(self, c):
        """Pick the canonical preimage of a residue-field element."""
        raise NotImplementedError

    def d_epsilon(self, x):
        raise UnsupportedRing(f"{self} has no nilpotent generator to differentiate by")

    def from_int(self, n: int):
        raise NotImplementedError

    # -- sampling and enumeration ----------------------------------------

    def random_element(self, rng):
        raise NotImplementedError

    def random_unit(self, rng):
        x = self.random_element(rng)
        while not self.is_unit(x):
            x = self.random_element(rng)
        return x

    def random_nilpotent(self, rng):
        raise NotImplementedError

    def iter_elements(self):
        raise UnsupportedRing(f"{self} is not finite")

    # -- text ------------------------------------------------------------

    def format_element(self, x) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.__str__()


class PrimeField(Ring):
    """F_p with elements stored as reduced ints in [0, p)."""

    is_field = True
    nilpotency_index = 1
    has_section = True

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise NonUnit(f"0 is not invertible in {self}")
        return pow(x, -1, self.p)

    def pow(self, x, n: int):
        if n < 0:
            return pow(self.inv(x), -n, self.p)
        return pow(x, n, self.p)

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys)) % self.p

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x % self.p != 0

    def is_nilpotent(self, x):
        return x % self.p == 0

    @property
    def residue_field(self):
        return self

    def residue(self, x):
        return x

    def lift(self, c):
        return c % self.p

    def from_int(self, n):
        return n % self.p

    def random_element(self, rng):
        return rng.randrange(self.p)

    def random_unit(self, rng):
        return rng.randrange(1, self.p)

    def random_nilpotent(self, rng):
        return 0

    def iter_elements(self):
        return iter(range(self.p))

    def format_element(self, x):
        return str(x)

    def __str__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


class RationalField(Ring):
    """Q with exact Fraction elements."""

    is_field = True
    nilpotency_index = 1
    has_section = True
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if not x:
            raise NonUnit("0 is not invertible in Q")
        return 1 / x

    def pow(self, x, n):
        if n < 0 and not x:
            raise NonUnit("0 is not invertible in Q")
        return x**n

    def dot(self, xs, ys):
        return Fraction(sum(map(operator.mul, xs, ys)))

    def is_zero(self, x):
        return not x

    def is_unit(self, x):
        return bool(x)

    def is_nilpotent(self, x):
        return not x

    @property
    def residue_field(self):
        return self

    def residue(self, x):
        return x

    def lift(self, c):
        return Fraction(c)

    def from_int(self, n):
        return Fraction(n)

    def random_element(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    def random_unit(self, rng):
        num = rng.choice([n for n in range(-6, 7) if n])
        return Fraction(num, rng.randint(1, 4))

    def random_nilpotent(self, rng):
        return Fraction(0)

    def format_element(self, x):
        return str(x)

    def __str__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class TruncatedPolynomialRing(Ring):
    """k[e]/(e^m) over a base field k, elements as length-m coefficient tuples.

    The generator name is cosmetic ("e" for deformation parameters, "x"
    for truncated local fields k[x]/(x^m)); the ring structure only
    depends on the base field and the truncation order.
    """

    is_field = False
    has_section = True

    def __init__(self, base: Ring, gen: str = "e", order: int = 1):
        if not base.is_field:
            raise UnsupportedRing("truncated polynomial rings need a field base")
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        self.base = base
        self.gen = gen
        self.order = order
        self.characteristic = base.characteristic
        self.nilpotency_index = order
        self.is_field = order == 1
        self.zero = (base.zero,) * order
        self.one = (base.one,) + (base.zero,) * (order - 1)
        self._int_base = isinstance(base, PrimeField)

    def generator(self):
        if self.order < 2:
            raise UnsupportedRing(f"{self} has no nonzero nilpotent generator")
        return tuple(
            self.base.one if i == 1 else self.base.zero for i in range(self.order)
        )

    def add(self, x, y):
        base = self.base
        return tuple(map(base.add, x, y))

    def sub(self, x, y):
        base = self.base
        return tuple(map(base.sub, x, y))

    def neg(self, x):
        return tuple(map(self.base.neg, x))

    def mul(self, x, y):
        m = self.order
        acc = [0] * m
        for i in range(m):
            xi = x[i]
            if xi:
                for j in range(m - i):
                    acc[i + j] += xi * y[j]
        return self._normalize(acc)

    def _normalize(self, acc):
        if self._int_base:
            p = self.base.p
            return tuple(a % p for a in acc)
        return tuple(Fraction(a) for a in acc)

    def dot(self, xs, ys):
        m = self.order
        acc = [0] * m
        for x, y in zip(xs, ys):
            for i in range(m):
                xi = x[i]
                if xi:
                    for j in range(m - i):
                        acc[i + j] += xi * y[j]
        return self._normalize(acc)

    def inv(self, x):
        # Triangular back-substitution on c0*(1 + nilpotent part).
        base = self.base
        if not base.is_unit(x[0]):
            raise NonUnit(f"{self.format_element(x)} is not a unit of {self}")
        c0inv = base.inv(x[0])
        out = [c0inv] + [base.zero] * (self.order - 1)
        for d in range(1, self.order):
            s = base.zero
            for i in range(1, d + 1):
                s = base.add(s, base.mul(x[i], out[d - i]))
            out[d] = base.neg(base.mul(c0inv, s))
        return tuple(out)

    def is_zero(self, x):
        base = self.base
        return all(base.is_zero(c) for c in x)

    def is_unit(self, x):
        return self.base.is_unit(x[0])

    def is_nilpotent(self, x):
        return self.base.is_zero(x[0])

    @property
    def residue_field(self):
        return self.base

    def residue(self, x):
        return x[0]

    def lift(self, c):
        return (c,) + (self.base.zero,) * (self.order - 1)

    def d_epsilon(self, x):
        base = self.base
        out = [
            base.mul(base.from_int(i), x[i]) for i in range(1, self.order)
        ]
        out.append(base.zero)
        return tuple(out)

    def from_int(self, n):
        return self.lift(self.base.from_int(n))

    def random_element(self, rng):
        base = self.base
        return tuple(base.random_element(rng) for _ in range(self.order))

    def random_unit(self, rng):
        base = self.base
        return (base.random_unit(rng),) + tuple(
            base.random_element(rng) for _ in range(self.order - 1)
        )

    def random_nilpotent(self, rng):
        base = self.base
        return (base.zero,) + tuple(
            base.random_element(rng) for _ in range(self.order - 1)
        )

    def iter_elements(self):
        pools = [list(self.base.iter_elements())] * self.order
        return (tuple(c) for c in itertools.product(*pools))

    def format_element(self, x):
        base = self.base
        parts = []
        for i, c in enumerate(x):
            if base.is_zero(c):
                continue
            cs = base.format_element(c)
            if i == 0:
                parts.append(cs)
            else:
                var = self.gen if i == 1 else f"{self.gen}^{i}"
                parts.append(var if cs == "1" else f"{cs}*{var}")
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            out += part if part.startswith("-") else "+" + part
        return out

    def __str__(self):
        return f"{self.base}[{self.gen}]/({self.gen}^{self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedPolynomialRing)
            and other.base == self.base
            and other.order == self.order
            and other.gen == self.gen
        )

    def __hash__(self):
        return hash(("T", self.base, self.gen, self.order))


class IntegersModPrimePower(Ring):
    """Z/p^m, a quotient of a discrete valuation ring; no section for m > 1.

    Symbols are fully supported here; the differential-form layer rejects
    this ring because its residue map has no ring-homomorphism section.
    """

    is_field = False

    def __init__(self, p: int, m: int):
        PrimeField(p)  # primality check
        if m < 1:
            raise ValueError("exponent must be >= 1")
        self.p = p
        self.m = m
        self.pm = p**m
        self.characteristic = self.pm
        self.nilpotency_index = m
        self.is_field = m == 1
        self.has_section = m == 1
        self.zero = 0
        self.one = 1 % self.pm

    def add(self, x, y):
        return (x + y) % self.pm

    def sub(self, x, y):
        return (x - y) % self.pm

    def neg(self, x):
        return -x % self.pm

    def mul(self, x, y):
        return x * y % self.pm

    def inv(self, x):
        if x % self.p == 0:
            raise NonUnit(f"{x} is not invertible in {self}")
        return pow(x, -1, self.pm)

    def pow(self, x, n):
        if n < 0:
            return pow(self.inv(x), -n, self.pm)
        return pow(x, n, self.pm)

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys)) % self.pm

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x % self.p != 0

    def is_nilpotent(self, x):
        return x % self.p == 0

    @property
    def residue_field(self):
        return PrimeField(self.p)

    def residue(self, x):
        return x % self.p

    def lift(self, c):
        return c % self.pm

    def from_int(self, n):
        return n % self.pm

    def random_element(self, rng):
        return rng.randrange(self.pm)

    def random_unit(self, rng):
        x = rng.randrange(self.pm)
        while x % self.p == 0:
            x = rng.randrange(self.pm)
        return x

    def random_nilpotent(self, rng):
        return self.p * rng.randrange(self.pm // self.p) % self.pm

    def iter_elements(self):
        return iter(range(self.pm))

    def format_element(self, x):
        return str(x)

    def __str__(self):
        return f"Z/{self.pm}"

    def __eq__(self, other):
        return (
            isinstance(other, IntegersModPrimePower)
            and other.p == self.p
            and other.m == self.m
        )

    def __hash__(self):
        return hash(("Z", self.p, self.m))


QQ = RationalField()


def truncated_ring(base: Ring, gen: str, order: int) -> Ring:
    return TruncatedPolynomialRing(base, gen, order)


class RingMap:
    """A supported coefficient homomorphism h: A -> B.

    The three descriptor kinds: the residue map A -> k, a local map
    between truncated rings sending the generator to a nilpotent image,
    and the truncation Z/p^m -> Z/p^m' for m' <= m.  Constructors
    validate locality and well-definedness and raise NotAHomomorphism
    otherwise.
    """

    def __init__(self, source: Ring, target: Ring, apply, label: str,
                 kind: str = "", gen_image=None):
        self.source = source
        self.target = target
        self._apply = apply
        self.label = label
        self.kind = kind
        self.gen_image = gen_image  # image of the source generator, if any

    def __call__(self, x):
        return self._apply(x)

    def __repr__(self):
        return f"RingMap({self.label}: {self.source} -> {self.target})"


def residue_map(ring: Ring) -> RingMap:
    k = ring.residue_field
    return RingMap(ring, k, ring.residue, "residue", kind="residue")


def epsilon_map(source: Ring, target: Ring, image) -> RingMap:
    """Map k[e]/(e^m) -> B determined by e -> image, a nilpotent of B."""
    if not isinstance(source, TruncatedPolynomialRing):
        raise NotAHomomorphism(f"{source} has no polynomial generator")
    if isinstance(target, TruncatedPolynomialRing):
        if target.base != source.base:
            raise NotAHomomorphism(f"base fields of {source} and {target} differ")
        embed = target.lift
    elif target == source.base:
        embed = lambda c: c  # noqa: E731
    else:
        raise NotAHomomorphism(f"{target} is not a ring over {source.base}")
    if not target.is_nilpotent(image):
        raise NotAHomomorphism("image of the generator must be nilpotent")
    if not target.is_zero(target.pow(image, source.order)):
        raise NotAHomomorphism(
            f"image^{source.order} != 0 in {target}; map is not well defined"
        )

    def apply(x):
        acc = target.zero
        for c in reversed(x):
            acc = target.add(target.mul(acc, image), embed(c))
        return acc

    return RingMap(
        source,
        target,
        apply,
        f"{source.gen}->{target.format_element(image)}",
        kind="epsilon",
        gen_image=image,
    )


def truncation_map(source: Ring, new_exponent: int) -> RingMap:
    """Z/p^m -> Z/p^m' for m' <= m."""
    if not isinstance(source, IntegersModPrimePower):
        raise NotAHomomorphism(f"{source} is not of the form Z/p^m")
    if not 1 <= new_exponent <= source.m:
        raise NotAHomomorphism("target exponent must satisfy 1 <= m' <= m")
    target = IntegersModPrimePower(source.p, new_exponent)
    return RingMap(
        source, target, lambda x: x % target.pm, f"mod {target.pm}", kind="truncation"
    )
