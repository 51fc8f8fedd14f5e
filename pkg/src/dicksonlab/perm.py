"""Permutation behavior of x -> D_{n,k}(1, x) on F_q.

Brute-force bijection scans with first-collision witnesses, the 2-to-1
fiber criterion on the doubled domain (F_q and the mirror set V, minus 1/2),
Hermite power-sum moments, the mod-6 necessary condition, prime-power
exclusions, and the a = 0 degenerate family.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .rdp import (
    aux_poly_eval,
    eval_a_zero,
    eval_functional,
    value_at_quarter,
)

# Full-census scans above this size need an explicit opt-in.
SCAN_Q_LIMIT = 13


@dataclass(frozen=True)
class PermReport:
    """Verdict for one (n, k): permutation or not, with a collision witness."""

    n: int
    k: int
    is_pp: bool
    witness: tuple | None
    method: str

    def __post_init__(self):
        if not self.is_pp and self.witness is None:
            raise ValueError("a negative verdict needs a witness")


def is_pp_brute(field, n, k):
    """Scan all of F_q in enumeration order; witness is the first collision pair."""
    seen = {}
    for x in field.elements():
        value = eval_functional(field, n, k, x)
        first = seen.get(value)
        if first is not None:
            return PermReport(n, k, False, (first, x), "brute")
        seen[value] = x
    return PermReport(n, k, True, None, "brute")


def moment(field, n, k, i):
    """The power sum over the whole field: sum_x D_{n,k}(1,x)^i."""
    total = field.zero
    for x in field.elements():
        total = total + eval_functional(field, n, k, x) ** i
    return total


def build_v(field):
    """The mirror set V = {y in F_{q^2} : y^q = 1 - y} = {1/2 + h*s}, |V| = q."""
    half = field.half
    return [field.ext(half, field.from_index(h)) for h in range(field.q)]


def two_to_one_check(field, n, k):
    """PP verdict via fibers of y -> D_{n,k}(1, y(1-y)) on the doubled domain.

    The domain is F_q and V with 1/2 removed from each.  Permutation iff every
    fiber has exactly two elements ({y, 1-y}) and the special value
    (kn-k+2)/2^n is never attained.
    """
    half_c = field.half.coeffs
    domain = [field.ext(x) for x in field.elements() if x.coeffs != half_c]
    domain += [v for v in build_v(field) if v.hi]
    forbidden = value_at_quarter(field, n, k)
    m = 0 if n == 0 else (n - 1) % (field.q * field.q - 1) + 1
    fibers = {}
    for y in domain:
        w1 = (k - 1) - (k - 2) * y
        w2 = 1 + (k - 2) * y
        v = (w1 * y ** m - w2 * (1 - y) ** m) / (2 * y - 1)
        if not v.in_base():
            raise AssertionError("fiber value left the base field")
        fibers.setdefault(v.lo, []).append(y)

    def x_of(y):
        return (y * (1 - y)).lo

    if forbidden in fibers:
        return PermReport(n, k, False, (x_of(fibers[forbidden][0]), field.quarter), "two-to-one")
    for ys in fibers.values():
        if len(ys) != 2:
            xs = sorted({x_of(y) for y in ys}, key=lambda x: x.index)
            return PermReport(n, k, False, (xs[0], xs[1]), "two-to-one")
    return PermReport(n, k, True, None, "two-to-one")


def necessary_mod6(field, k, n_max):
    """Degrees n <= n_max with n = 1 mod 6 that still permute (always empty)."""
    return [
        n for n in range(n_max + 1)
        if n % 6 == 1 and is_pp_brute(field, n, k).is_pp
    ]


def never_pp_prime_power(field, k, s_max):
    """True iff D_{p^s,k} fails to permute for every 1 <= s <= s_max."""
    return all(not is_pp_brute(field, field.p ** s, k).is_pp for s in range(1, s_max + 1))


def prime_power_gcd_obstruction(field, s):
    """gcd((p^s - 1)/2, q - 1), which is >= (p-1)/2 > 1: the reason p^s never permutes."""
    return gcd((field.p ** s - 1) // 2, field.q - 1)


def zero_param_criterion(field, n, k):
    """PP predicate for D_{n,k}(0, x): n even, gcd(n/2, q-1) = 1, and k != 2.

    n = 0 is excluded automatically (gcd(0, q-1) = q-1 > 1); k = 2 collapses
    the even-degree map to the constant zero.
    """
    return n % 2 == 0 and gcd(n // 2, field.q - 1) == 1 and k % field.p != 2


def zero_param_is_pp_brute(field, n, k):
    """Brute bijection scan of x -> D_{n,k}(0, x)."""
    return len({eval_a_zero(field, n, k, x) for x in field.elements()}) == field.q


def aux_poly_pp_equiv(field, n, k):
    """(D_{n,k}(1,.) permutes, p_{n,k} permutes) - the two verdicts always match."""
    direct = is_pp_brute(field, n, k).is_pp
    aux = len({aux_poly_eval(field, n, k, x) for x in field.elements()}) == field.q
    return direct, aux


def pp_scan(field, k, n_range=None, allow_large=False):
    """PermReports for every n in n_range (default the full census [0, q^2-1]).

    Full-scale censuses are gated to q <= 13 unless allow_large is set.
    """
    if n_range is None:
        n_range = range(field.q * field.q)
    if field.q > SCAN_Q_LIMIT and not allow_large:
        raise ValueError(
            f"census at q={field.q} exceeds the default budget (q <= {SCAN_Q_LIMIT}); "
            "pass allow_large=True to override"
        )
    return [is_pp_brute(field, n, k) for n in n_range]
