"""The invariant S(Gamma) and the check  average signature == -S(Gamma)/3."""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError
from .graph import is_exceptional_shape, linking_number, nearest, node_weight, validate, vertex_multiplicity
from .ops import cut_multiplicity
from .signatures import average_signature


@dataclass(frozen=True)
class SGammaBreakdown:
    linking: Fraction
    nodes: Fraction
    leaves: Fraction
    edges: Fraction
    arrowheads: Fraction

    @property
    def total(self):
        return self.linking + self.nodes + self.leaves + self.edges + self.arrowheads

    def to_dict(self):
        return {k: str(getattr(self, k)) for k in ("linking", "nodes", "leaves", "edges", "arrowheads", "total")}


def edge_term(d, e, mults=None):
    """Contribution of a node-node edge to the edge sum."""
    v, w = e.ends
    mu_v = cut_multiplicity(d, e, v)
    mu_w = cut_multiplicity(d, e, w)
    dv, dw = node_weight(d, v), node_weight(d, w)
    if mu_v and mu_w:
        mults = mults or {}
        m_v = mults.get(v) or vertex_multiplicity(d, v)
        m_w = mults.get(w) or vertex_multiplicity(d, w)
        c = gcd(mu_v, mu_w)
        return c * c * (
            Fraction(e.weight_at(v), mu_v * m_v) + Fraction(e.weight_at(w), mu_w * m_w) - Fraction(1, mu_v * mu_w)
        )
    if mu_w == 0 and mu_v:
        return Fraction(1, dv) - Fraction(dw, e.weight_at(w) ** 2)
    if mu_v == 0 and mu_w:
        return Fraction(1, dw) - Fraction(dv, e.weight_at(v) ** 2)
    raise DomainError(f"edge {list(e.ends)}: both cut multiplicities vanish")


def s_gamma(d):
    """Five-term breakdown of S(Gamma). Multiplicities weight the linking term."""
    if not d.nodes:
        raise DomainError("S(Gamma) needs at least one node")
    arrows = d.arrowheads
    linking = 0
    for i, a in enumerate(arrows):
        ma = d.multiplicity(a)
        if not ma:
            continue
        for b in arrows[i + 1:]:
            mb = d.multiplicity(b)
            if mb:
                linking += 2 * ma * mb * linking_number(d, a, b)
    mults = {v: vertex_multiplicity(d, v) for v in d.nodes}
    nodes = sum(node_weight(d, v) * (d.valency(v) - 2) for v in d.nodes if d.valency(v) > 2)
    leaves = Fraction(0)
    for leaf in d.leaves:
        w, dw = nearest(d, leaf)
        leaves -= Fraction(node_weight(d, w), dw * dw)
    edges = sum((edge_term(d, e, mults) for e in d.node_edges()), Fraction(0))
    arrowheads = Fraction(0)
    for a in arrows:
        w, dw = nearest(d, a)
        if not mults[w]:
            raise DomainError(f"node {w!r} has multiplicity 0")
        arrowheads += Fraction(dw, mults[w])
    return SGammaBreakdown(Fraction(linking), Fraction(nodes), leaves, edges, arrowheads)


@dataclass(frozen=True)
class TheoremReport:
    s_gamma: Fraction | None
    average: Fraction | None
    holds: bool
    skipped_reason: str | None = None

    @property
    def skipped(self):
        return self.skipped_reason is not None

    def to_dict(self):
        return {
            "s_gamma": None if self.s_gamma is None else str(self.s_gamma),
            "average": None if self.average is None else str(self.average),
            "holds": self.holds,
            "skipped": self.skipped_reason,
        }


def skip_reason(d, report=None):
    """Why the theorem does not apply to ``d``, or None."""
    report = report or validate(d)
    if report.structural_errors:
        return "invalid diagram"
    if report.bad_leaves:
        return "not almost minimal"
    if not report.is_link:
        return "multilink"
    if is_exceptional_shape(d):
        return "exceptional shape (possible unknot or Hopf link)"
    return None


def check_main_theorem(d, report=None):
    reason = skip_reason(d, report)
    if reason:
        return TheoremReport(None, None, False, reason)
    s = s_gamma(d).total
    avg = average_signature(d)
    return TheoremReport(s, avg, avg == -s / 3)
