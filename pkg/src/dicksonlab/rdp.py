"""Evaluators for reversed Dickson polynomials of every kind over F_q.

The family D_{n,k}(a,x) (kind index k, 0 <= k < p after reduction) is evaluated
three independent ways: the explicit coefficient sum, the two-term linear
recursion (with a matrix fast path), and the functional expression through the
parameterization x = y(1-y) in F_{q^2}.  Closed forms at prime-power degrees,
the generating-series check, the scaling identity, the a = 0 degenerate family,
and the odd/even binomial transform p_{n,k} live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .field import FqElem


class InternalInconsistencyError(RuntimeError):
    """A value that must lie in F_q came out of F_{q^2} with a nonzero s-part."""


def binom_mod_p(n, r, p):
    """C(n, r) mod p via Lucas' theorem (digit-wise in base p)."""
    if r < 0 or n < 0 or r > n:
        return 0
    res = 1
    while r:
        nd, rd = n % p, r % p
        if rd > nd:
            return 0
        res = res * comb(nd, rd) % p
        n //= p
        r //= p
    return res


@dataclass(frozen=True)
class RdpParams:
    """Evaluation query (n, k, a); k is reduced mod the characteristic of a's field."""

    n: int
    k: int
    a: FqElem

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        object.__setattr__(self, "k", self.k % self.a.field.p)


# -- coefficient route --------------------------------------------------------

def coeff_residues(n, k, p):
    """Coefficients of D_{n,k}(1, x) as ints mod p, x^0 first.

    Coefficient i is (n-ki)/(n-i) C(n-i, i) (-1)^i, computed division-free as
    [C(n-i,i) - (k-1) C(n-i-1, i-1)] (-1)^i so that Lucas reduction is exact
    even when p divides n-i.
    """
    k %= p
    if n == 0:
        return [(2 - k) % p]
    out = []
    for i in range(n // 2 + 1):
        c = (binom_mod_p(n - i, i, p) - (k - 1) * binom_mod_p(n - i - 1, i - 1, p)) % p
        if i & 1:
            c = -c % p
        out.append(c)
    return out


def rdp_coeffs(field, n, k, a=None):
    """Coefficient vector of D_{n,k}(a, x) as a polynomial in x over F_q."""
    if a is None:
        a = field.one
    base = coeff_residues(n, k, field.p)
    if a == field.one:
        return [field.from_int(c) for c in base]
    if not a:
        out = [field.zero] * len(base)
        if n % 2 == 0:
            out[n // 2] = field.from_int(base[n // 2])
        return out
    apow = a ** n
    inv_a2 = (a * a).inv()
    out = []
    for c in base:
        out.append(apow * c)
        apow = apow * inv_a2
    return out


def eval_coeff_sum(field, n, k, x, a=None):
    """D_{n,k}(a, x) by Horner evaluation of the explicit coefficient sum."""
    if a is None or a == field.one:
        cs = coeff_residues(n, k, field.p)
        p = field.p
        acc = field.zero.coeffs
        for c in reversed(cs):
            acc = field._mul(acc, x.coeffs)
            acc = ((acc[0] + c) % p,) + acc[1:]
        return FqElem(field, acc)
    acc = field.zero
    for c in reversed(rdp_coeffs(field, n, k, a)):
        acc = acc * x + c
    return acc


# -- recursion route ----------------------------------------------------------

def recursion_values(field, k, x, n_max):
    """[D_{0,k}(1,x), ..., D_{n_max,k}(1,x)] by the two-term recursion."""
    vals = [field.from_int(2 - k), field.one]
    for _ in range(2, n_max + 1):
        vals.append(vals[-1] - x * vals[-2])
    return vals[: n_max + 1]


def eval_recursion(field, n, k, x):
    """D_{n,k}(1, x) by iterating D_m = D_{m-1} - x D_{m-2}."""
    prev, cur = field.from_int(2 - k), field.one
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, cur - x * prev
    return cur


def eval_recursion_matrix(field, n, k, x):
    """D_{n,k}(1, x) via log-time powers of the companion matrix [[1, -x], [1, 0]]."""
    d0 = field.from_int(2 - k)
    if n == 0:
        return d0
    one, zero = field.one, field.zero
    m = (one, zero, zero, one)
    b = (one, -x, one, zero)
    e = n - 1
    while e:
        if e & 1:
            m = _mat_mul(m, b)
        b = _mat_mul(b, b)
        e >>= 1
    # (D_n, D_{n-1}) = M^(n-1) (D_1, D_0) with D_1 = 1
    return m[0] + m[1] * d0


def _mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


# -- functional route ---------------------------------------------------------

def value_at_quarter(field, n, k):
    """D_{n,k}(1, 1/4) = (kn - k + 2) / 2^n, an element of the prime field."""
    p = field.p
    num = (k * (n % p) - k + 2) % p
    den = pow(2, n, p)
    return field.from_int(num * pow(den, p - 2, p))


def _functional_weights(field, k, y):
    w1 = (k - 1) - (k - 2) * y
    w2 = 1 + (k - 2) * y
    invden = (2 * y - 1).inv()
    return w1, w2, invden


def _to_base(field, v, n, k, x):
    if not v.in_base():
        raise InternalInconsistencyError(
            f"functional value left the base field at n={n}, k={k}, x={x}"
        )
    return v.lo


def eval_functional(field, n, k, x):
    """D_{n,k}(1, x) through y(1-y) = x; exponent reduced mod q^2 - 1 for n >= 1."""
    k %= field.p
    if x == field.quarter:
        return value_at_quarter(field, n, k)
    y = field.solve_y(x)
    m = 0 if n == 0 else (n - 1) % (field.q * field.q - 1) + 1
    w1, w2, invden = _functional_weights(field, k, y)
    v = (w1 * y ** m - w2 * (1 - y) ** m) * invden
    return _to_base(field, v, n, k, x)


def functional_values(field, k, x, n_max):
    """[D_{0,k}(1,x), ..., D_{n_max,k}(1,x)] via running powers of y and 1-y."""
    k %= field.p
    if x == field.quarter:
        return [value_at_quarter(field, n, k) for n in range(n_max + 1)]
    y = field.solve_y(x)
    z = 1 - y
    w1, w2, invden = _functional_weights(field, k, y)
    yp = zp = field.ext_one
    vals = []
    for n in range(n_max + 1):
        vals.append(_to_base(field, (w1 * yp - w2 * zp) * invden, n, k, x))
        yp = yp * y
        zp = zp * z
    return vals


# -- degenerate parameter a = 0 ----------------------------------------------

def eval_a_zero(field, n, k, x):
    """D_{n,k}(0, x): zero for odd n, (2-k)(-1)^{n/2} x^{n/2} for even n."""
    k %= field.p
    if n == 0:
        return field.from_int(2 - k)
    if n % 2 == 1:
        return field.zero
    m = n // 2
    sign = -1 if m % 2 else 1
    return field.from_int((2 - k) * sign) * x ** m


# -- identities ----------------------------------------------------------------

def scale_identity(field, n, k, a, b, x):
    """Both sides of D_{n,k}(a,x) = (a/b)^n D_{n,k}(b, (b^2/a^2) x); a, b nonzero."""
    if not a or not b:
        raise ValueError("scale parameters a and b must be nonzero")
    lhs = eval_coeff_sum(field, n, k, x, a=a)
    rhs = (a / b) ** n * eval_coeff_sum(field, n, k, (b * b) / (a * a) * x, a=b)
    return lhs, rhs


def check_generating_series(field, k, x, n_max):
    """True iff (1 - t + x t^2) * sum D_{n,k}(1,x) t^n = (2-k) + (k-1) t through degree n_max - 1."""
    vals = recursion_values(field, k, x, n_max)
    zero = field.zero
    t0, t1 = field.from_int(2 - k), field.from_int(k - 1)
    for d in range(n_max):
        c = vals[d]
        if d >= 1:
            c = c - vals[d - 1]
        if d >= 2:
            c = c + x * vals[d - 2]
        expect = t0 if d == 0 else t1 if d == 1 else zero
        if c != expect:
            return False
    return True


def closed_form_prime_power(field, s, k, x):
    """Both sides of 2^{p^s} D_{p^s,k}(1,x) + k - 2 = k (1-4x)^{(p^s-1)/2}, s >= 1."""
    if s < 1:
        raise ValueError("s must be a positive integer")
    n = field.p ** s
    two_n = field.from_int(pow(2, n, field.p))
    lhs = two_n * eval_functional(field, n, k, x) + (k - 2)
    rhs = field.from_int(k) * (1 - 4 * x) ** ((n - 1) // 2)
    return lhs, rhs


def closed_form_two_prime_powers(field, s, l, k, x):
    """Both sides of the closed form at degree n = p^s + p^l with 0 < s < l."""
    if not 0 < s < l:
        raise ValueError("need 0 < s < l")
    p = field.p
    n = p ** s + p ** l
    lhs = eval_functional(field, n, k, x)
    u = 1 - 4 * x
    quarter = field.quarter
    rhs = (
        field.from_int(k) * quarter * (u ** ((p ** s - 1) // 2) + u ** ((p ** l - 1) // 2))
        - field.from_int(k - 2) * quarter * (field.one + u ** (n // 2))
    )
    return lhs, rhs


# -- odd/even binomial transform ----------------------------------------------

def aux_poly_residues(n, k, p):
    """Coefficients of p_{n,k}(x) = k sum C(n,2j+1) x^j - (k-2) sum C(n,2j) x^j mod p."""
    k %= p
    if n == 0:
        return [(2 - k) % p]
    return [
        (k * binom_mod_p(n, 2 * j + 1, p) - (k - 2) * binom_mod_p(n, 2 * j, p)) % p
        for j in range(n // 2 + 1)
    ]


def aux_poly_eval(field, n, k, x):
    """p_{n,k}(x); satisfies D_{n,k}(1, x) = 2^{-n} p_{n,k}(1 - 4x) and p_{n,k}(0) = kn - k + 2."""
    cs = aux_poly_residues(n, k, field.p)
    acc = field.zero
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def second_kind_value(field, n, x):
    """E_n(1, x) = sum C(n-i, i) (-x)^i, the k = 1 member, from its own coefficients."""
    acc = field.zero
    p = field.p
    for i in range(n // 2, -1, -1):
        c = binom_mod_p(n - i, i, p)
        if i & 1:
            c = -c % p
        acc = acc * x + c
    return acc
