"""First moments of D_{n,k}(1, .) over F_q by generating-function bookkeeping.

The direct route sums the evaluator over the field.  The reconstruction route
builds the coefficient tables b (from -1 - (t - t^q)^{q-1}) and c (the series
numerator), runs the five-case linear recursion for the shifted moments d_n,
and recovers a_n = d_n + (kn-k+2)/2^n.  Both routes must agree exactly; the
recursion computes its overlap region twice and refuses to continue when the
two disagree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FqElem
from .rdp import binom_mod_p, eval_functional, value_at_quarter


class InconsistentRecursionError(ArithmeticError):
    """The d-recursion overlap region disagreed between its two derivations."""


class Poly:
    """Dense polynomial over F_q with exact arithmetic; coefficients low-to-high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        cleaned = []
        for c in coeffs:
            if isinstance(c, int):
                c = field.from_int(c)
            cleaned.append(c)
        while cleaned and not cleaned[-1]:
            cleaned.pop()
        self.field = field
        self.coeffs = tuple(cleaned)

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def one(cls, field):
        return cls(field, [1])

    @classmethod
    def monomial(cls, field, n, c=1):
        return cls(field, [0] * n + [c])

    @classmethod
    def geometric(cls, field, lo, hi):
        """t^lo + t^(lo+1) + ... + t^hi."""
        return cls(field, [0] * lo + [1] * (hi - lo + 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, FqElem)):
            if isinstance(other, int):
                other = self.field.from_int(other)
            return Poly(self.field, [c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    if bv:
                        out[i + j] = out[i + j] + av * bv
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, m):
        """Multiply by t^m."""
        if not self.coeffs:
            return self
        return Poly(self.field, (self.field.zero,) * m + self.coeffs)

    def divexact(self, divisor):
        """Quotient by a divisor known to divide exactly; raises on remainder."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dc = divisor.coeffs
        dd = len(dc) - 1
        lead_inv = dc[-1].inv()
        quot = [self.field.zero] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                f = c * lead_inv
                quot[i - dd] = f
                for j, dv in enumerate(dc):
                    rem[i - dd + j] = rem[i - dd + j] - f * dv
        if any(rem):
            raise ValueError("division is not exact")
        return Poly(self.field, quot)

    def __repr__(self):
        return f"Poly(deg={self.degree}, {[str(c) for c in self.coeffs[:8]]}...)"


# -- coefficient tables --------------------------------------------------------

def compute_b(field):
    """The b-table of length q^2-q+1 (ints mod p), from its closed form.

    b_0 = -1; for i = alpha + beta*q with alpha + beta = q - 1 the entry is
    (-1)^(beta+1) C(q-1, beta); all other entries vanish.
    """
    p, q = field.p, field.q
    b = [0] * (q * q - q + 1)
    b[0] = p - 1
    for beta in range(q):
        i = (q - 1 - beta) + beta * q
        sign = 1 if (beta + 1) % 2 == 0 else -1
        b[i] = sign * binom_mod_p(q - 1, beta, p) % p
    return b


def compute_b_expanded(field):
    """The same table by brute expansion of -1 - (t - t^q)^(q-1)."""
    q = field.q
    base = Poly(field, [0, 1]) - Poly.monomial(field, q)
    return -(base ** (q - 1)) - Poly.one(field)


def _series_bracket(field):
    """t^(2(q-1)) + sum_{m=1}^{q-1} (t-1)^(q-1-m) t^(2m) (1/4)^m."""
    q = field.q
    bracket = Poly.monomial(field, 2 * (q - 1))
    tm1 = Poly(field, [-1, 1])
    pw = Poly.one(field)
    for m in range(q - 1, 0, -1):
        bracket = bracket + pw.shift(2 * m) * field.quarter ** m
        pw = pw * tm1
    return bracket


def _tq_poly(field):
    """t^q - t^(q-1) - 1."""
    q = field.q
    return Poly(field, [-1] + [0] * (q - 2) + [-1, 1])


def compute_c(field, k):
    """The c-table driving the d-recursion, with general-kind numerators.

    c = -(t^q - t^(q-1) - 1) * sum_{i=1}^{q^2-1} t^i
        - ((k-1)t - k + 2) * bracket * sum b_i t^i.
    Constant term must be 0 and degree at most q^2 + q - 1.
    """
    q = field.q
    k %= field.p
    geo = Poly.geometric(field, 1, q * q - 1)
    numerator = Poly(field, [-(k - 2), k - 1])
    b = Poly(field, compute_b(field))
    c = -(_tq_poly(field) * geo) - numerator * _series_bracket(field) * b
    assert not c[0], "c-table has a nonzero constant term"
    assert c.degree <= q * q + q - 1, "c-table degree out of bounds"
    return c


def compute_c_literal(field, k):
    """The c-table exactly as displayed in the source derivation.

    Keeps the kind-specialized numerators (kt + 1 - k) and (2t - 1); kept only
    for the --paper-literal comparison, where its divergence is the point.
    """
    q = field.q
    k %= field.p
    geo = Poly.geometric(field, 0, q * q - 2)
    first = Poly(field, [1 - k, k])
    fourth_kind = Poly(field, [-1, 2])
    b = Poly(field, compute_b(field))
    return -(_tq_poly(field) * first * geo) - fourth_kind * _series_bracket(field) * b


# -- the d-recursion ------------------------------------------------------------

def _d_tables(field, k, c):
    """Forward-filled d table plus the tail closed form for the last q entries."""
    q = field.q
    q2 = q * q
    d = [field.zero] * q2
    for j in range(1, q):
        d[j] = -c[j]
    d[q] = c[1] - c[q]
    for i in range(q + 1, q2):
        d[i] = d[i - q] - d[i - q + 1] - c[i]
    tail = [field.zero] * q
    acc = field.zero
    for j in range(q - 1, -1, -1):
        acc = acc + c[q2 + j]
        tail[j] = acc
    return d, tail


def d_recursion_diagnostics(field, k, c):
    """(d table, overlap mismatch indices); tail values win in the returned table."""
    q = field.q
    q2 = q * q
    d, tail = _d_tables(field, k, c)
    mismatches = [q2 - q + j for j in range(q) if tail[j] != d[q2 - q + j]]
    for j in range(q):
        d[q2 - q + j] = tail[j]
    return d, mismatches


def run_d_recursion(field, k, c=None):
    """The d table (index n, entries for 1 <= n <= q^2-1) from the c-table.

    The last q entries are computed both by the forward recursion and by the
    tail closed form; any disagreement raises InconsistentRecursionError.
    """
    if c is None:
        c = compute_c(field, k)
    d, mismatches = d_recursion_diagnostics(field, k, c)
    if mismatches:
        raise InconsistentRecursionError(
            f"overlap disagreement at indices {mismatches} (k={k}, q={field.q})"
        )
    return d


# -- moments ---------------------------------------------------------------------

def first_moment_direct(field, n, k):
    """sum_a D_{n,k}(1, a) by direct evaluation over the whole field."""
    total = field.zero
    for a in field.elements():
        total = total + eval_functional(field, n, k, a)
    return total


def first_moment_theorem(field, n, k, d=None):
    """a_n = d_n + (kn-k+2)/2^n from the recursion; needs 1 <= n <= q^2-1."""
    if not 1 <= n <= field.q * field.q - 1:
        raise ValueError(f"n={n} outside the recursion domain [1, {field.q * field.q - 1}]")
    if d is None:
        d = run_d_recursion(field, k)
    return d[n] + value_at_quarter(field, n, k)


@dataclass(frozen=True)
class MomentRow:
    """One reconciliation row: direct vs reconstructed first moment."""

    n: int
    k: int
    direct: FqElem
    reconstructed: FqElem
    agrees: bool


def moment_rows(field, k, n_range=None):
    """MomentRows for every n in n_range (default the full domain [1, q^2-1])."""
    if n_range is None:
        n_range = range(1, field.q * field.q)
    d = run_d_recursion(field, k)
    rows = []
    for n in n_range:
        direct = first_moment_direct(field, n, k)
        recon = first_moment_theorem(field, n, k, d)
        rows.append(MomentRow(n, k, direct, recon, direct == recon))
    return rows


def series_residual(field, k, d):
    """(t^q - t^(q-1) - 1) * sum d_n t^n - c(t); the zero polynomial iff d is right."""
    series = Poly(field, [field.zero] + list(d[1:]))
    return _tq_poly(field) * series - compute_c(field, k)


def h_factor_identity(field, k):
    """Both sides of the cleared-denominator factorization behind the c-table:

    (t^(q^2-1) - 1) N (t^q - t^(q-1) - 1)  ==  N (sum b_i t^i) ((t-1)^q - (t-1) t^(2(q-1)))
    with N = (k-1)t - k + 2.
    """
    q = field.q
    k %= field.p
    numerator = Poly(field, [-(k - 2), k - 1])
    lhs = (Poly.monomial(field, q * q - 1) - Poly.one(field)) * numerator * _tq_poly(field)
    tm1 = Poly(field, [-1, 1])
    denom = tm1 ** q - tm1.shift(2 * (q - 1))
    rhs = numerator * Poly(field, compute_b(field)) * denom
    return lhs, rhs
