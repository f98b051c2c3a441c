"""Splice diagrams: data model, JSON format, validation and basic invariants.

A diagram is a weighted tree whose vertices are nodes (valency >= 3),
leaves and arrowheads. Every edge carries one positive weight at each end;
arrowheads carry a non-negative multiplicity.
"""
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod

from .errors import DiagramParseError, DomainError

NODE = "node"
LEAF = "leaf"
ARROWHEAD = "arrowhead"
KINDS = (NODE, LEAF, ARROWHEAD)


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str
    multiplicity: int | None = None


@dataclass(frozen=True)
class Edge:
    ends: tuple[str, str]
    weights: tuple[int, int] = (1, 1)

    def weight_at(self, v):
        if v == self.ends[0]:
            return self.weights[0]
        if v == self.ends[1]:
            return self.weights[1]
        raise KeyError(v)

    def other(self, v):
        return self.ends[1] if v == self.ends[0] else self.ends[0]

    def canonical(self):
        if self.ends[1] < self.ends[0]:
            return Edge((self.ends[1], self.ends[0]), (self.weights[1], self.weights[0]))
        return self


@dataclass(frozen=True)
class SpliceDiagram:
    """Immutable splice diagram, stored with vertices and edges in canonical order.

    Construction only checks referential integrity (unique ids, known kinds,
    edge ends that exist, multiplicities on arrowheads only). The structural
    rules live in :func:`validate`.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        verts = tuple(sorted(self.vertices, key=lambda v: v.id))
        seen = set()
        for v in verts:
            if v.id in seen:
                raise DiagramParseError(f"duplicate vertex id {v.id!r}")
            seen.add(v.id)
            if v.kind not in KINDS:
                raise DiagramParseError(f"unknown kind {v.kind!r} for vertex {v.id!r}")
            if (v.kind == ARROWHEAD) != (v.multiplicity is not None):
                raise DiagramParseError(f"vertex {v.id!r}: multiplicity must be given exactly for arrowheads")
        edges = tuple(sorted((e.canonical() for e in self.edges), key=lambda e: (e.ends, e.weights)))
        for e in edges:
            for end in e.ends:
                if end not in seen:
                    raise DiagramParseError(f"edge {list(e.ends)} references unknown vertex {end!r}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @cached_property
    def by_id(self):
        return {v.id: v for v in self.vertices}

    @cached_property
    def incident(self):
        inc = {v.id: [] for v in self.vertices}
        for e in self.edges:
            inc[e.ends[0]].append(e)
            if e.ends[1] != e.ends[0]:
                inc[e.ends[1]].append(e)
        return inc

    def kind(self, v):
        return self.by_id[v].kind

    def valency(self, v):
        return len(self.incident[v])

    def ids(self, kind=None):
        return [v.id for v in self.vertices if kind is None or v.kind == kind]

    @property
    def nodes(self):
        return self.ids(NODE)

    @property
    def leaves(self):
        return self.ids(LEAF)

    @property
    def arrowheads(self):
        return self.ids(ARROWHEAD)

    def multiplicity(self, a):
        return self.by_id[a].multiplicity

    def node_edges(self):
        """Edges joining two nodes."""
        return [e for e in self.edges if self.kind(e.ends[0]) == NODE and self.kind(e.ends[1]) == NODE]

    def find_edge(self, v, w):
        for e in self.incident[v]:
            if e.other(v) == w:
                return e
        raise DomainError(f"no edge between {v!r} and {w!r}")

    def relabel(self, mapping):
        """Return a copy with vertex ids renamed through ``mapping`` (missing ids kept)."""
        f = lambda x: mapping.get(x, x)  # noqa: E731
        return SpliceDiagram(
            tuple(Vertex(f(v.id), v.kind, v.multiplicity) for v in self.vertices),
            tuple(Edge((f(e.ends[0]), f(e.ends[1])), e.weights) for e in self.edges),
        )


def make_diagram(vertices, edges):
    """Build a diagram from loose tuples.

    ``vertices``: iterable of ``(id, kind)`` or ``(id, "arrowhead", m)``;
    ``edges``: iterable of ``(v, w)`` or ``(v, w, weight_v, weight_w)``.
    """
    vs = [Vertex(*t) for t in vertices]
    es = []
    for t in edges:
        es.append(Edge((t[0], t[1]), (t[2], t[3]) if len(t) == 4 else (1, 1)))
    return SpliceDiagram(tuple(vs), tuple(es))


# -- serialization -----------------------------------------------------------

def to_dict(d):
    verts = []
    for v in d.vertices:
        item = {"id": v.id, "kind": v.kind}
        if v.kind == ARROWHEAD:
            item["multiplicity"] = v.multiplicity
        verts.append(item)
    edges = [{"ends": list(e.ends), "weights": list(e.weights)} for e in d.edges]
    return {"vertices": verts, "edges": edges}


def serialize(d):
    """Canonical UTF-8 JSON text (sorted vertices and edges, trailing newline)."""
    return json.dumps(to_dict(d), indent=2, ensure_ascii=False) + "\n"


def _need_int(value, loc, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DiagramParseError(f"expected an integer, got {value!r}", loc)
    if minimum is not None and value < minimum:
        raise DiagramParseError(f"expected an integer >= {minimum}, got {value}", loc)
    return value


def from_dict(obj):
    if not isinstance(obj, dict):
        raise DiagramParseError("top level must be an object", "$")
    for key in ("vertices", "edges"):
        if not isinstance(obj.get(key), list):
            raise DiagramParseError(f"missing list {key!r}", "$")
    verts = []
    seen = set()
    for i, item in enumerate(obj["vertices"]):
        loc = f"vertices[{i}]"
        if not isinstance(item, dict):
            raise DiagramParseError("vertex must be an object", loc)
        vid = item.get("id")
        if not isinstance(vid, str):
            raise DiagramParseError("vertex id must be a string", loc + ".id")
        if vid in seen:
            raise DiagramParseError(f"duplicate vertex id {vid!r}", loc + ".id")
        seen.add(vid)
        kind = item.get("kind")
        if kind not in KINDS:
            raise DiagramParseError(f"kind must be one of {KINDS}, got {kind!r}", loc + ".kind")
        mult = None
        if kind == ARROWHEAD:
            if "multiplicity" not in item:
                raise DiagramParseError("arrowhead needs a multiplicity", loc)
            # negative values are reported by validate, not rejected here
            mult = _need_int(item["multiplicity"], loc + ".multiplicity", None)
        elif "multiplicity" in item:
            raise DiagramParseError("only arrowheads carry a multiplicity", loc + ".multiplicity")
        verts.append(Vertex(vid, kind, mult))
    edges = []
    for i, item in enumerate(obj["edges"]):
        loc = f"edges[{i}]"
        if not isinstance(item, dict):
            raise DiagramParseError("edge must be an object", loc)
        ends = item.get("ends")
        if not (isinstance(ends, list) and len(ends) == 2 and all(isinstance(x, str) for x in ends)):
            raise DiagramParseError("ends must be a list of two vertex ids", loc + ".ends")
        for j, end in enumerate(ends):
            if end not in seen:
                raise DiagramParseError(f"unknown vertex {end!r}", f"{loc}.ends[{j}]")
        weights = item.get("weights", [1, 1])
        if not (isinstance(weights, list) and len(weights) == 2):
            raise DiagramParseError("weights must be a list of two integers", loc + ".weights")
        w = tuple(_need_int(x, f"{loc}.weights[{j}]", None) for j, x in enumerate(weights))
        edges.append(Edge(tuple(ends), w))
    return SpliceDiagram(tuple(verts), tuple(edges))


def parse_diagram(text):
    """Parse the JSON diagram format from ``str`` or ``bytes``."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DiagramParseError(f"invalid UTF-8 ({exc.reason})", f"byte {exc.start}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_dict(obj)


def load_diagram(path):
    with open(path, "rb") as fh:
        return parse_diagram(fh.read())


# -- paths and linking numbers -----------------------------------------------

def path_edges(d, v, w):
    """Vertices and edges of the unique v-w path (BFS; assumes a tree)."""
    prev = {v: None}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if x == w:
            break
        for e in d.incident[x]:
            y = e.other(x)
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    if w not in prev:
        raise DomainError(f"{v!r} and {w!r} are not connected")
    verts, edges = [w], []
    x = w
    while prev[x] is not None:
        x, e = prev[x]
        verts.append(x)
        edges.append(e)
    verts.reverse()
    edges.reverse()
    return verts, edges


def linking_number(d, v, w):
    """Product of the weights at vertices of the v-w path on edges off the path."""
    if v == w:
        raise DomainError("linking number needs two distinct vertices")
    verts, edges = path_edges(d, v, w)
    on_path = set(edges)
    result = 1
    for x in verts:
        for e in d.incident[x]:
            if e not in on_path:
                result *= e.weight_at(x)
    return result


def vertex_multiplicity(d, v):
    """m_v = sum over arrowheads a != v of m_a * lk(a, v)."""
    total = 0
    for a in d.arrowheads:
        if a == v:
            continue
        m = d.multiplicity(a)
        if m:
            total += m * linking_number(d, a, v)
    return total


def node_weight(d, v):
    """d_v for a node: product of all adjacent edge-end weights."""
    return prod(e.weight_at(v) for e in d.incident[v])


def nearest(d, v):
    """(nearest node, nearest weight) for a leaf or arrowhead."""
    if d.kind(v) == NODE:
        raise DomainError(f"{v!r} is a node")
    inc = d.incident[v]
    if len(inc) != 1:
        raise DomainError(f"{v!r} has valency {len(inc)}, expected 1")
    e = inc[0]
    w = e.other(v)
    return w, e.weight_at(w)


def vertex_weight(d, v):
    """d_v: node weight for nodes, d_w / d_we^2 for leaves and arrowheads."""
    if d.kind(v) == NODE:
        return Fraction(node_weight(d, v))
    w, dw = nearest(d, v)
    return Fraction(node_weight(d, w), dw * dw)


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    structural_errors: tuple[str, ...] = ()
    bad_leaves: tuple[str, ...] = ()
    is_almost_minimal: bool = False
    is_link: bool = False
    arrowhead_count_nonzero: int = 0
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def ok(self):
        return not self.structural_errors

    def to_dict(self):
        return {
            "valid": self.ok,
            "structural_errors": list(self.structural_errors),
            "bad_leaves": list(self.bad_leaves),
            "is_almost_minimal": self.is_almost_minimal,
            "is_link": self.is_link,
            "arrowhead_count_nonzero": self.arrowhead_count_nonzero,
        }


def _structural_errors(d):
    errs = []
    n = len(d.vertices)
    if n == 0:
        return ["diagram is empty"]
    for e in d.edges:
        if e.ends[0] == e.ends[1]:
            errs.append(f"edge {list(e.ends)} is a loop")
        for end, wt in zip(e.ends, e.weights):
            if wt < 1:
                errs.append(f"edge {list(e.ends)}: weight {wt} at {end!r} is not positive")
    pairs = [e.ends for e in d.edges]
    if len(set(pairs)) != len(pairs):
        errs.append("parallel edges present")
    if len(d.edges) != n - 1:
        errs.append(f"not a tree: {n} vertices but {len(d.edges)} edges")
    # connectivity
    start = d.vertices[0].id
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for e in d.incident[x]:
            y = e.other(x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        errs.append(f"not connected: {n - len(seen)} vertices unreachable from {start!r}")
    if not d.nodes:
        errs.append("no node (vertex of valency >= 3)")
    for v in d.vertices:
        val = d.valency(v.id)
        if v.kind == NODE and val < 3:
            errs.append(f"node {v.id!r} has valency {val}; nodes need valency >= 3")
        elif v.kind != NODE and val != 1:
            errs.append(f"{v.kind} {v.id!r} has valency {val}; expected 1")
        if v.kind == ARROWHEAD and v.multiplicity < 0:
            errs.append(f"arrowhead {v.id!r} has negative multiplicity {v.multiplicity}")
        if v.kind != NODE:
            for e in d.incident[v.id]:
                if e.weight_at(v.id) != 1:
                    errs.append(f"weight at {v.kind} {v.id!r} must be 1, got {e.weight_at(v.id)}")
                if d.kind(e.other(v.id)) != NODE:
                    errs.append(f"{v.kind} {v.id!r} is not attached to a node")
        else:
            ws = [e.weight_at(v.id) for e in d.incident[v.id]]
            for i in range(len(ws)):
                for j in range(i + 1, len(ws)):
                    if gcd(ws[i], ws[j]) != 1:
                        errs.append(f"node {v.id!r}: weights {ws[i]} and {ws[j]} are not coprime")
            big = [x for x in ws if x > 1]
            if len(big) > 2:
                errs.append(f"node {v.id!r} has {len(big)} weights > 1 (at most 2 allowed for S^3)")
    return errs


def _is_gamma_1b(d, w):
    """Is the splice component at node ``w`` of shape Gamma(1, b)?"""
    from .ops import cut_multiplicity  # local: ops depends on this module

    inc = d.incident[w]
    if len(inc) != 3 or any(e.weight_at(w) != 1 for e in inc):
        return False
    leaves = [e for e in inc if d.kind(e.other(w)) == LEAF]
    if len(leaves) != 1:
        return False
    mults = []
    for e in inc:
        x = e.other(w)
        if d.kind(x) == ARROWHEAD:
            mults.append(d.multiplicity(x))
        elif d.kind(x) == NODE:
            mults.append(cut_multiplicity(d, e, w))
    return 1 in mults


def validate(d):
    """Report every structural violation, bad leaves and almost-minimality."""
    errs = _structural_errors(d)
    mults = [d.multiplicity(a) for a in d.arrowheads]
    nonzero = sum(1 for m in mults if m)
    is_link = bool(mults) and all(m == 1 for m in mults)
    bad = []
    if not errs:
        for leaf in d.leaves:
            w, dw = nearest(d, leaf)
            if dw == 1 and not _is_gamma_1b(d, w):
                bad.append(leaf)
    return ValidationReport(
        structural_errors=tuple(errs),
        bad_leaves=tuple(bad),
        is_almost_minimal=not errs and not bad,
        is_link=is_link,
        arrowhead_count_nonzero=nonzero,
    )


def is_exceptional_shape(d):
    """Conservative unknot/Hopf-link guard: a single node whose weights are all 1,
    or with fewer than two weights > 1 and at most two arrowheads."""
    if len(d.nodes) != 1:
        return False
    v = d.nodes[0]
    ws = [e.weight_at(v) for e in d.incident[v]]
    big = sum(1 for x in ws if x > 1)
    return big == 0 or (big < 2 and len(d.arrowheads) <= 2)
