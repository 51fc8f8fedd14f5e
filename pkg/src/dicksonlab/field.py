"""Arithmetic for F_q (q = p^e, p > 3 prime) and its quadratic extension F_{q^2}.

Elements of F_q are coefficient vectors over F_p with respect to the power basis
of F_p[x]/(modulus); the modulus is the lexicographically smallest monic
irreducible of degree e (coefficients compared low-to-high).  The quadratic
extension is F_q[s]/(s^2 - r) where r is the smallest-index quadratic
non-residue of F_q.  Everything is exact integer arithmetic; fields up to
q = 2^20 are accepted.
"""

from __future__ import annotations

import itertools

MAX_FIELD_SIZE = 1 << 20


class NotPrimeError(ValueError):
    """Raised when the requested characteristic is composite."""


class SmallCharacteristicError(ValueError):
    """Raised when the requested characteristic is 3 or less."""


class FieldTooLargeError(ValueError):
    """Raised when p^e exceeds the supported size budget."""


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense polynomial helpers over F_p (lists of ints, low-to-high) ----------

def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av:
            for j, bv in enumerate(b):
                out[i + j] = (out[i + j] + av * bv) % p
    return out


def _pmod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(df):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b != [0]:
        lead = b[-1]
        if lead != 1:
            li = pow(lead, p - 2, p)
            b = [(c * li) % p for c in b]
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, exp, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while exp:
        if exp & 1:
            result = _pmod(_pmul(result, base), f, p)
        base = _pmod(_pmul(base, base), f, p)
        exp >>= 1
    return result


def _is_irreducible(f, p):
    """Rabin test for a monic polynomial f over F_p."""
    e = len(f) - 1
    if e == 1:
        return True
    x = [0, 1]
    # x^(p^e) must equal x mod f
    h = x
    powers = {}
    for i in range(1, e + 1):
        h = _ppowmod(h, p, f, p)
        powers[i] = h
    if _pmod([(a - b) % p for a, b in itertools.zip_longest(powers[e], x, fillvalue=0)], f, p) != [0]:
        return False
    # for each prime divisor r of e, gcd(x^(p^(e/r)) - x, f) must be constant
    for r in _prime_divisors(e):
        g = powers[e // r]
        diff = [(a - b) % p for a, b in itertools.zip_longest(g, x, fillvalue=0)]
        while len(diff) > 1 and diff[-1] == 0:
            diff.pop()
        if diff == [0]:
            return False
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _smallest_modulus(p, e):
    """Lexicographically smallest monic irreducible of degree e (low coeffs first)."""
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FqElem:
    """An element of F_q as a coefficient tuple over F_p, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FqElem):
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            o = other % p
            return FqElem(self.field, tuple((a * o) % p for a in self.coeffs))
        if not isinstance(other, FqElem):
            return NotImplemented
        return FqElem(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inv(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.field.from_int(other).coeffs
        return (
            isinstance(other, FqElem)
            and self.coeffs == other.coeffs
            and (self.field is other.field or self.field == other.field)
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    @property
    def index(self):
        """Enumeration index: sum of coeffs[i] * p^i."""
        p = self.field.p
        total = 0
        for c in reversed(self.coeffs):
            total = total * p + c
        return total

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"FqElem({self})"


class Fq2Elem:
    """An element lo + hi*s of F_{q^2}, where s^2 is the chosen non-residue."""

    __slots__ = ("field", "lo", "hi")

    def __init__(self, field, lo, hi):
        self.field = field
        self.lo = lo
        self.hi = hi

    def _coerce(self, other):
        if isinstance(other, Fq2Elem):
            return other
        if isinstance(other, FqElem):
            return Fq2Elem(self.field, other, self.field.zero)
        if isinstance(other, int):
            return Fq2Elem(self.field, self.field.from_int(other), self.field.zero)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fq2Elem(self.field, self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fq2Elem(self.field, self.lo - other.lo, self.hi - other.hi)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Fq2Elem(self.field, -self.lo, -self.hi)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        return Fq2Elem(self.field, a * c + b * d * self.field.nonresidue, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        """The q-th power Frobenius image lo - hi*s (s^q = -s since s^2 is a non-residue)."""
        return Fq2Elem(self.field, self.lo, -self.hi)

    def norm(self):
        """Norm down to F_q: (lo + hi*s)(lo - hi*s) = lo^2 - s^2 hi^2."""
        return self.lo * self.lo - self.field.nonresidue * self.hi * self.hi

    def inv(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in F_{q^2}")
        ni = n.inv()
        return Fq2Elem(self.field, self.lo * ni, -self.hi * ni)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.ext_one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo.coeffs, self.hi.coeffs))

    def __bool__(self):
        return bool(self.lo) or bool(self.hi)

    def in_base(self):
        """True when the element lies in F_q (s-component zero)."""
        return not self.hi

    @property
    def index(self):
        return self.lo.index + self.field.q * self.hi.index

    def __str__(self):
        return f"{self.lo};{self.hi}"

    def __repr__(self):
        return f"Fq2Elem({self.lo} + ({self.hi})*s)"


class Field:
    """The finite field F_q together with the tools the evaluators need.

    make_field is spelled Field(p, e); the instance carries the base modulus,
    the extension non-residue, element constructors, enumeration, square roots
    in F_{q^2}, and the parameterization solver y(1-y) = x.
    """

    def __init__(self, p, e=1):
        if not isinstance(p, int) or not isinstance(e, int) or e < 1:
            raise ValueError("p and e must be integers with e >= 1")
        if p <= 3:
            raise SmallCharacteristicError("p must be a prime greater than 3")
        if not _is_prime(p):
            raise NotPrimeError("p must be a prime greater than 3")
        q = p ** e
        if q > MAX_FIELD_SIZE:
            raise FieldTooLargeError(f"q = p^e = {q} exceeds the budget {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = _smallest_modulus(p, e)
        self.zero = FqElem(self, (0,) * e)
        self.one = self.from_int(1)
        self.half = self.from_int(2).inv()
        self.quarter = self.from_int(4).inv()
        self.nonresidue = self._find_nonresidue()
        self.ext_zero = Fq2Elem(self, self.zero, self.zero)
        self.ext_one = Fq2Elem(self, self.one, self.zero)
        self._solve_y_cache = {}

    # -- construction -------------------------------------------------------

    def from_int(self, v):
        c = [0] * self.e
        c[0] = v % self.p
        return FqElem(self, tuple(c))

    def elem(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients, got {len(coeffs)}")
        return FqElem(self, coeffs)

    def from_index(self, i):
        if not 0 <= i < self.q:
            raise ValueError(f"index {i} out of range [0, {self.q})")
        c = []
        for _ in range(self.e):
            c.append(i % self.p)
            i //= self.p
        return FqElem(self, tuple(c))

    def ext(self, lo, hi=None):
        if isinstance(lo, int):
            lo = self.from_int(lo)
        if hi is None:
            hi = self.zero
        elif isinstance(hi, int):
            hi = self.from_int(hi)
        return Fq2Elem(self, lo, hi)

    # -- enumeration ---------------------------------------------------------

    def elements(self):
        """All of F_q in ascending enumeration-index order."""
        for i in range(self.q):
            yield self.from_index(i)

    def ext_elements(self):
        """All of F_{q^2}, ordered by (lo index, hi index)."""
        for hi in range(self.q):
            h = self.from_index(hi)
            for lo in range(self.q):
                yield Fq2Elem(self, self.from_index(lo), h)

    # -- arithmetic core -----------------------------------------------------

    def _mul(self, a, b):
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    prod[i + j] += av * bv
        f = self.modulus
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(e):
                    prod[i - e + j] -= c * f[j]
        return tuple(v % p for v in prod[:e])

    def _find_nonresidue(self):
        # Euler criterion scan in enumeration order; q is odd, so one exists.
        exp = (self.q - 1) // 2
        for x in self.elements():
            if x and x ** exp != self.one:
                return x
        raise AssertionError("no quadratic non-residue found")  # unreachable for odd q

    # -- square roots --------------------------------------------------------

    def _sqrt_residue(self, a):
        """Tonelli-Shanks square root of a known quadratic residue a != 0."""
        q = self.q
        s, t = 0, q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = self.nonresidue ** t
        m, c, u, r = s, z, a ** t, a ** ((t + 1) // 2)
        while u != self.one:
            i, probe = 0, u
            while probe != self.one:
                probe = probe * probe
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            u = u * c
            r = r * b
        return r

    def sqrt_ext(self, x):
        """The square root of x in F_{q^2}, choosing the smaller-index root.

        Every x in F_q has a root: residues split in F_q, non-residues as
        hi*s with hi in F_q.
        """
        if not x:
            return self.ext_zero
        chi = x ** ((self.q - 1) // 2)
        if chi == self.one:
            r = self.ext(self._sqrt_residue(x))
        else:
            r = self.ext(self.zero, self._sqrt_residue(x / self.nonresidue))
        alt = -r
        return r if (r.lo.index, r.hi.index) <= (alt.lo.index, alt.hi.index) else alt

    def solve_y(self, x):
        """The canonical y in F_{q^2} with y(1-y) = x: y = (1 + sqrt(1-4x))/2.

        Returns 1/2 exactly when x = 1/4; the returned y always satisfies
        y^q = y or y^q = 1 - y (y lies in F_q or in the mirror set V).
        """
        cached = self._solve_y_cache.get(x.coeffs)
        if cached is not None:
            return cached
        y = (1 + self.sqrt_ext(self.one - 4 * x)) * self.ext(self.half)
        self._solve_y_cache[x.coeffs] = y
        return y

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e})"


def make_field(p, e=1):
    """Construct F_q with its quadratic extension machinery; alias of Field(p, e)."""
    return Field(p, e)
