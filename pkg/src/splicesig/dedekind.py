"""Sawtooth function and Dedekind sums in exact rational arithmetic.

Two evaluators are provided. :func:`dedekind_sum` is the direct O(q)
summation (run by the integer kernel) and serves as the oracle;
:func:`dedekind_sum_fast` runs the Euclidean recursion driven by the
reciprocity law in O(log q) steps.
"""
import random
from fractions import Fraction
from math import floor, gcd

from . import kernels
from .errors import DomainError

__all__ = [
    "sawtooth",
    "dedekind_sum",
    "dedekind_sum_fast",
    "reciprocity_defect",
    "ext_gcd",
    "three_term_check",
    "identity_suite",
]


def sawtooth(x):
    """((x)) = {x} - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


def _check_q(q):
    if q < 1:
        raise DomainError(f"Dedekind sum needs q >= 1, got {q}")


def dedekind_sum(p, q):
    """s(p, q) = sum_{j=0}^{q-1} ((j/q)) ((p j/q)), summed term by term."""
    _check_q(q)
    p %= q
    if p == 0:
        return Fraction(0)
    return Fraction(kernels.dedekind_numerator(p, q), 4 * q * q)


def dedekind_sum_fast(p, q):
    """s(p, q) by gcd cancellation and reciprocity recursion.

    Uses s(ap, aq) = s(p, q), periodicity in p, and
    s(p, q) = (p^2 + q^2 + 1 - 3pq) / (12pq) - s(q, p) for coprime p, q.
    """
    _check_q(q)
    g = gcd(p, q)
    p, q = p // g, q // g
    p %= q
    total = Fraction(0)
    sign = 1
    while q > 1 and p != 0:
        total += sign * Fraction(p * p + q * q + 1 - 3 * p * q, 12 * p * q)
        sign = -sign
        p, q = q % p, p
    return total


def reciprocity_defect(p, q):
    """R(p, q) = p/q + q/p + gcd(p, q)^2/(pq) - 3, so that s(p,q) + s(q,p) = R/12."""
    if p < 1 or q < 1:
        raise DomainError(f"reciprocity_defect needs positive arguments, got ({p}, {q})")
    g = gcd(p, q)
    return Fraction(p, q) + Fraction(q, p) + Fraction(g * g, p * q) - 3


def ext_gcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def three_term_check(p, q, u, v, s=dedekind_sum_fast):
    """Check s(p,q) + s(u,v) = s(p'u - q'v, t) - 1/4 + (q/(vt) + v/(qt) + t/(qv))/12.

    Here p p' + q q' = 1 and t = p v + q u. ``s`` selects the evaluator.
    """
    if min(p, q, u, v) < 1:
        raise DomainError("three-term law needs positive integers")
    if gcd(p, q) != 1 or gcd(u, v) != 1:
        raise DomainError(f"three-term law needs gcd(p,q) = gcd(u,v) = 1, got {(p, q, u, v)}")
    _, pp, qq = ext_gcd(p, q)
    t = p * v + q * u
    lhs = s(p, q) + s(u, v)
    rhs = (
        s(pp * u - qq * v, t)
        - Fraction(1, 4)
        + (Fraction(q, v * t) + Fraction(v, q * t) + Fraction(t, q * v)) / 12
    )
    return lhs == rhs


def identity_suite(max_q=200, samples=200, recip_max=None, three_term=1000, seed=0):
    """Run the identity checks and return a list of ``(name, ok, detail)``.

    ``max_q`` bounds the fast-vs-naive sweep (``samples`` random p per q),
    ``recip_max`` bounds the exhaustive reciprocity sweep (defaults to
    ``min(max_q, 500)``), ``three_term`` is the number of random quadruples.
    """
    if max_q < 1:
        raise DomainError("max_q must be >= 1")
    rng = random.Random(seed)
    if recip_max is None:
        recip_max = min(max_q, 500)
    results = []

    bad = None
    count = 0
    for q in range(1, max_q + 1):
        for _ in range(samples):
            p = rng.randint(-3 * q, 3 * q)
            count += 1
            if dedekind_sum_fast(p, q) != dedekind_sum(p, q):
                bad = (p, q)
                break
        if bad:
            break
    results.append(("fast == naive", bad is None, f"{count} pairs, q <= {max_q}" if bad is None else f"mismatch at {bad}"))

    bad = None
    count = 0
    for q in range(2, recip_max + 1):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            count += 1
            if 12 * (dedekind_sum(p, q) + dedekind_sum(q, p)) != reciprocity_defect(p, q):
                bad = (p, q)
                break
        if bad:
            break
    results.append(("reciprocity", bad is None, f"{count} coprime pairs, q <= {recip_max}" if bad is None else f"fails at {bad}"))

    bad = None
    for _ in range(three_term):
        p, q, u, v = _coprime_pair(rng, 300) + _coprime_pair(rng, 300)
        if not three_term_check(p, q, u, v, s=dedekind_sum):
            bad = (p, q, u, v)
            break
    results.append(("three-term law", bad is None, f"{three_term} quadruples" if bad is None else f"fails at {bad}"))

    bad = None
    for _ in range(1000):
        q = rng.randint(1, 150)
        p = rng.randint(-4 * q, 4 * q)
        a = rng.randint(1, 12)
        k = rng.randint(-5, 5)
        base = dedekind_sum(p, q)
        ok = (
            dedekind_sum(a * p, a * q) == base
            and dedekind_sum(-p, q) == -base
            and dedekind_sum(p + k * q, q) == base
        )
        if ok and gcd(p, q) == 1:
            ok = dedekind_sum(pow(p, -1, q) if q > 1 else 0, q) == base
        if not ok:
            bad = (p, q, a, k)
            break
    results.append(("cancellation identities", bad is None, "1000 triples" if bad is None else f"fails at {bad}"))

    bad = None
    for _ in range(1000):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        n = rng.randint(-50, 50)
        w = sawtooth(x)
        if not (sawtooth(-x) == -w and sawtooth(x + n) == w and -Fraction(1, 2) < w < Fraction(1, 2)):
            bad = x
            break
    results.append(("sawtooth odd/periodic", bad is None, "1000 rationals" if bad is None else f"fails at {bad}"))

    left = dedekind_sum(-19, 38) + dedekind_sum(-20, 38) + dedekind_sum(1, 38)
    right = dedekind_sum(1, 18) + dedekind_sum(-9, 18) + dedekind_sum(2, 18) + dedekind_sum(-12, 18)
    ok = left == Fraction(45, 19) and right == Fraction(11, 6)
    results.append(("example aggregates", ok, f"{left}, {right}"))
    return results


def _coprime_pair(rng, bound):
    while True:
        a, b = rng.randint(1, bound), rng.randint(1, bound)
        if gcd(a, b) == 1:
            return (a, b)
