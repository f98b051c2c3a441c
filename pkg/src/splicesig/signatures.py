"""Tristram-Levine signatures of graph links from splice diagrams.

Each splice component contributes equivariant signatures supported on
the points i/m, m its node multiplicity. The signature function is
assembled from these jumps; the average signature is computed both by
integrating that step function and by the per-component Dedekind-sum
formula, and the two must agree.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from . import kernels
from .dedekind import dedekind_sum_fast, reciprocity_defect, sawtooth
from .errors import DomainError, InvariantFailure
from .graph import ARROWHEAD, NODE
from .ops import decompose


@dataclass(frozen=True)
class ComponentData:
    """Seifert data of a one-node component, one entry per direction at the node."""

    alphas: tuple[int, ...]
    mults: tuple[int, ...]
    betas: tuple[int, ...]
    m: int
    s: tuple[int, ...]
    directions: tuple[str, ...] = ()
    nonzero_arrowheads: int = 0


def component_data(c):
    nodes = c.nodes
    if len(nodes) != 1:
        raise DomainError(f"component_data needs exactly one node, got {len(nodes)}")
    (v,) = nodes
    inc = sorted(c.incident[v], key=lambda e: e.other(v))
    dirs = tuple(e.other(v) for e in inc)
    alphas = tuple(e.weight_at(v) for e in inc)
    mults = []
    for x in dirs:
        kind = c.kind(x)
        if kind == NODE:
            raise DomainError("component has a node-node edge")
        mults.append(c.multiplicity(x) if kind == ARROWHEAD else 0)
    betas = []
    for j, a in enumerate(alphas):
        rest = prod(alphas[:j] + alphas[j + 1:])
        betas.append(0 if a == 1 else pow(rest, -1, a))
    m = sum(prod(alphas[:j] + alphas[j + 1:]) * mj for j, mj in enumerate(mults))
    s = []
    for a, mj, bj in zip(alphas, mults, betas):
        num = mj - bj * m
        if num % a:
            raise InvariantFailure(f"alpha {a} does not divide m_j - beta_j m = {num}")
        s.append(num // a)
    nonzero = sum(1 for x in dirs if c.kind(x) == ARROWHEAD and c.multiplicity(x))
    return ComponentData(alphas, tuple(mults), tuple(betas), m, tuple(s), dirs, nonzero)


def _require_link_data(d):
    if not any(d.multiplicity(a) for a in d.arrowheads):
        raise DomainError("signature needs at least one arrowhead with non-zero multiplicity")


def _component_table(d):
    _require_link_data(d)
    comps, cuts = decompose(d)
    data = [component_data(c) for c in comps]
    return data, cuts


def equivariant_signature(d, p, q, _data=None):
    """sigma^-_lambda at lambda = exp(2 pi i p/q): sum over components with q | m
    of 2 sum_j ((s_j p / q))."""
    if not 0 < p < q:
        raise DomainError(f"need 0 < p < q, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise DomainError(f"need gcd(p, q) = 1, got ({p}, {q})")
    data = _data if _data is not None else _component_table(d)[0]
    total = Fraction(0)
    for cd in data:
        if cd.m % q == 0:
            total += 2 * sum(sawtooth(Fraction(sj * p, q)) for sj in cd.s)
    if total.denominator != 1:
        raise InvariantFailure(f"equivariant signature {total} is not an integer")
    return int(total)


@dataclass(frozen=True)
class StepFunction:
    """Piecewise constant function on (0, 1) with exact breakpoints.

    ``values[k]`` holds on the open interval between consecutive points of
    ``(0, *breakpoints, 1)``. At a breakpoint the mean of the one-sided
    limits is returned.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValueError("need one more value than breakpoints")
        pts = (Fraction(0),) + tuple(self.breakpoints) + (Fraction(1),)
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise ValueError("breakpoints must be strictly increasing inside (0, 1)")
        if any(a == b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("adjacent values must differ")

    def intervals(self):
        pts = (Fraction(0),) + tuple(self.breakpoints) + (Fraction(1),)
        return [(pts[k], pts[k + 1], self.values[k]) for k in range(len(self.values))]

    def __call__(self, x):
        x = Fraction(x)
        if not 0 < x < 1:
            raise DomainError("step function lives on (0, 1)")
        lo, hi = 0, len(self.breakpoints)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.breakpoints[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.breakpoints) and self.breakpoints[lo] == x:
            return Fraction(self.values[lo] + self.values[lo + 1], 2)
        return Fraction(self.values[lo])

    def integral(self):
        return sum(((b - a) * v for a, b, v in self.intervals()), Fraction(0))

    def to_csv(self, approx=False):
        header = "x_start,x_end,value"
        if approx:
            header += ",x_start_approx,x_end_approx"
        lines = [header]
        for a, b, v in self.intervals():
            row = f"{str(a)},{str(b)},{v}"
            if approx:
                row += f",{float(a):.12g},{float(b):.12g}"
            lines.append(row)
        return "\n".join(lines) + "\n"


def jump_table(d, _data=None):
    """Map each point y in (0, 1) with sigma^-_y != 0 to that integer value."""
    data = _data if _data is not None else _component_table(d)[0]
    jumps = {}
    for cd in data:
        m = cd.m
        if m < 2:
            continue
        residues = [sj % m for sj in cd.s]
        idx, num = kernels.jump_numerators(residues, m)
        for i, n in zip(idx, num):
            if n % m:
                raise InvariantFailure(f"equivariant signature {n}/{m} is not an integer")
            y = Fraction(i, m)
            jumps[y] = jumps.get(y, 0) + n // m
    return {y: s for y, s in jumps.items() if s}


def signature_function(d, _data=None):
    """sigma(x) = 1 - #Gamma - sum_{y > x} sigma^-_y + sum_{y < x} sigma^-_y."""
    jumps = jump_table(d, _data)
    count = sum(1 for a in d.arrowheads if d.multiplicity(a))
    ys = sorted(jumps)
    value = 1 - count - sum(jumps.values())
    breakpoints = []
    values = [value]
    for y in ys:
        value += 2 * jumps[y]
        breakpoints.append(y)
        values.append(value)
    return StepFunction(tuple(breakpoints), tuple(values))


def average_routes(d):
    """Return ``(integral_route, dedekind_route)`` without comparing them."""
    data, cuts = _component_table(d)
    route_a = signature_function(d, data).integral()
    route_b = Fraction(0)
    for cd in data:
        route_b += 1 - cd.nonzero_arrowheads - 4 * sum(dedekind_sum_fast(sj, cd.m) for sj in cd.s)
    route_b += sum(1 for _, ma, mb in cuts if ma * mb != 0)
    return route_a, route_b


def average_signature(d):
    """Average of sigma over the circle; both routes are computed and must agree."""
    a, b = average_routes(d)
    if a != b:
        raise InvariantFailure(f"average signature routes disagree: integral {a}, Dedekind {b}")
    return a


def average_elementary(a, b):
    """Closed form for the average signature of Gamma(a, b), b >= 1."""
    if a < 1:
        raise DomainError("need a >= 1")
    if b < 1:
        raise DomainError("the closed form needs b >= 1; use average_signature for b = 0")
    R = reciprocity_defect
    return -1 - (R(1, a * (b + 1)) + R(b, (b + 1) * a) - R(1, a) - 12 * dedekind_sum_fast(a, b)) / 3


def family2_average_oracle(p, q, mults):
    """Dedekind-free closed form of the average signature of ``star(p, q, mults)``."""
    mults = list(mults)
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise DomainError(f"need coprime positive p, q, got ({p}, {q})")
    if not mults or any(m < 1 for m in mults):
        raise DomainError("need a nonempty list of positive multiplicities")
    R = reciprocity_defect
    k = len(mults)
    M = p * q * sum(mults)
    acc = Fraction(0)
    for mj in mults:
        Mj = M - p * q * mj
        acc += R(mj, M)
        if Mj:
            acc += R(1, mj * (Mj + 1)) + R(Mj, (Mj + 1) * mj) - R(mj, Mj) - R(1, mj)
        # Mj == 0 only for k == 1: the outer component is an unknot with eta = 0,
        # and the remaining terms cancel pairwise.
    return 1 - k - acc / 3 + R(p, q) / 3


__all__ = [
    "ComponentData",
    "StepFunction",
    "component_data",
    "equivariant_signature",
    "jump_table",
    "signature_function",
    "average_routes",
    "average_signature",
    "average_elementary",
    "family2_average_oracle",
]
