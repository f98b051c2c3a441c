"""Surgery on splice diagrams: cutting, splicing, splice components,
completion, named families and a seeded generator of S^3 link diagrams."""
import random
from dataclasses import dataclass
from math import gcd

from .errors import DomainError, InvariantFailure, SpliceCompatibilityError
from .graph import (
    ARROWHEAD,
    LEAF,
    NODE,
    Edge,
    SpliceDiagram,
    Vertex,
    is_exceptional_shape,
    linking_number,
    make_diagram,
    nearest,
    path_edges,
    vertex_multiplicity,
)


@dataclass(frozen=True)
class CutResult:
    side_a: SpliceDiagram
    side_b: SpliceDiagram
    mult_a: int
    mult_b: int
    arrow_a: str
    arrow_b: str

    @property
    def eta(self):
        return 1 if self.mult_a * self.mult_b != 0 else 0


def _side(d, e, start):
    """Vertex ids reachable from ``start`` without crossing ``e``."""
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for f in d.incident[x]:
            if f == e:
                continue
            y = f.other(x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _resolve_edge(d, e):
    if isinstance(e, Edge):
        e = e.ends
    v, w = e
    return d.find_edge(v, w)


def cut_multiplicity(d, e, at):
    """Multiplicity of the arrowhead that replaces ``e`` on the side of ``at``.

    Sum over arrowheads a beyond ``e`` of m_a times the linking number, in the
    far side, between a and the far side's own new arrowhead.
    """
    far = e.other(at)
    total = 0
    for a in _side(d, e, far):
        if d.kind(a) != ARROWHEAD or not d.multiplicity(a):
            continue
        verts, edges = path_edges(d, far, a)
        on_path = set(edges)
        on_path.add(e)
        lk = 1
        for x in verts:
            for f in d.incident[x]:
                if f not in on_path:
                    lk *= f.weight_at(x)
        total += d.multiplicity(a) * lk
    return total


def _fresh(d, base):
    name = base
    while name in d.by_id:
        name += "'"
    return name


def cut_edge(d, e, names=None, check=True):
    """Cut a node-node edge into two arrowheads.

    ``side_a`` holds ``e.ends[0]``. ``names`` optionally fixes the ids of the
    two new arrowheads (default ``"v|w"`` at v). With ``check`` set, every
    node multiplicity on each side is compared with its value in ``d``.
    """
    e = _resolve_edge(d, e)
    v, w = e.ends
    if d.kind(v) != NODE or d.kind(w) != NODE:
        raise DomainError(f"cut_edge needs an edge between two nodes, got {list(e.ends)}")
    xa, xb = names if names else (_fresh(d, f"{v}|{w}"), _fresh(d, f"{w}|{v}"))
    if xa == xb or (xa in d.by_id) or (xb in d.by_id):
        raise DomainError(f"arrowhead names {xa!r}, {xb!r} clash with the diagram")
    ma = cut_multiplicity(d, e, v)
    mb = cut_multiplicity(d, e, w)
    ids_a = _side(d, e, v)
    ids_b = _side(d, e, w)

    def build(ids, end, new_id, mult):
        verts = [d.by_id[x] for x in ids] + [Vertex(new_id, ARROWHEAD, mult)]
        edges = [f for f in d.edges if f != e and f.ends[0] in ids]
        edges.append(Edge((end, new_id), (e.weight_at(end), 1)))
        return SpliceDiagram(tuple(verts), tuple(edges))

    side_a = build(ids_a, v, xa, ma)
    side_b = build(ids_b, w, xb, mb)
    if check:
        for side in (side_a, side_b):
            for n in side.nodes:
                if vertex_multiplicity(side, n) != vertex_multiplicity(d, n):
                    raise InvariantFailure(f"node multiplicity of {n!r} changed by cutting {list(e.ends)}")
    return CutResult(side_a, side_b, ma, mb, xa, xb)


def splice(d1, a1, d2, a2):
    """Join arrowhead ``a1`` of ``d1`` and ``a2`` of ``d2`` into one edge.

    The multiplicity of each arrowhead must equal the cut multiplicity the
    other diagram induces on it.
    """
    for d, a in ((d1, a1), (d2, a2)):
        if a not in d.by_id or d.kind(a) != ARROWHEAD:
            raise DomainError(f"{a!r} is not an arrowhead")
    clash = (set(d1.by_id) - {a1}) & (set(d2.by_id) - {a2})
    if clash:
        raise DomainError(f"vertex ids used on both sides: {sorted(clash)}")
    expect1 = sum(d2.multiplicity(a) * linking_number(d2, a2, a) for a in d2.arrowheads if a != a2)
    expect2 = sum(d1.multiplicity(a) * linking_number(d1, a1, a) for a in d1.arrowheads if a != a1)
    if d1.multiplicity(a1) != expect1 or d2.multiplicity(a2) != expect2:
        raise SpliceCompatibilityError(
            f"cannot splice: {a1!r} needs multiplicity {expect1} (has {d1.multiplicity(a1)}), "
            f"{a2!r} needs multiplicity {expect2} (has {d2.multiplicity(a2)})",
            expect1,
            expect2,
        )
    n1, w1 = nearest(d1, a1)
    n2, w2 = nearest(d2, a2)
    verts = [v for v in d1.vertices if v.id != a1] + [v for v in d2.vertices if v.id != a2]
    edges = [f for f in d1.edges if a1 not in f.ends] + [f for f in d2.edges if a2 not in f.ends]
    edges.append(Edge((n1, n2), (w1, w2)))
    return SpliceDiagram(tuple(verts), tuple(edges))


def decompose(d, order=None):
    """Cut every node-node edge. Returns ``(components, cuts)``.

    ``cuts`` lists ``(edge, mult_a, mult_b)`` for each cut in the order made.
    ``order`` optionally permutes the node-node edges of ``d`` (as end pairs).
    """
    todo = [e.ends for e in d.node_edges()] if order is None else list(order)
    pieces = [d]
    cuts = []
    for v, w in todo:
        for i, piece in enumerate(pieces):
            if v in piece.by_id and w in piece.by_id:
                r = cut_edge(piece, (v, w), names=(f"{v}|{w}", f"{w}|{v}"), check=False)
                pieces[i:i + 1] = [r.side_a, r.side_b]
                cuts.append((piece.find_edge(v, w), r.mult_a, r.mult_b))
                break
        else:
            raise DomainError(f"edge {v!r}-{w!r} not found")
    pieces.sort(key=lambda c: c.nodes[0])
    return pieces, cuts


def components(d):
    """Splice components of ``d``, one per node, ordered by node id."""
    if not d.nodes:
        raise DomainError("diagram has no node")
    return decompose(d)[0]


def elementary(a, b, prefix=""):
    """Gamma(a, b): a leaf of weight a and two unit-weight arrowheads of multiplicity b and 1.

    Vertex ids are ``prefix`` + ``n``, ``leaf``, ``b``, ``one``.
    """
    if a < 1:
        raise DomainError(f"elementary graph needs a >= 1, got {a}")
    if b < 0:
        raise DomainError(f"elementary graph needs b >= 0, got {b}")
    n, leaf, ab, one = (prefix + s for s in ("n", "leaf", "b", "one"))
    return make_diagram(
        [(n, NODE), (leaf, LEAF), (ab, ARROWHEAD, b), (one, ARROWHEAD, 1)],
        [(n, leaf, a, 1), (n, ab, 1, 1), (n, one, 1, 1)],
    )


def completion(d, a, always_splice=False):
    """Turn a one-off multiplicity at arrowhead ``a`` into a genuine link diagram.

    m_a > 1 splices Gamma(m_a, b) onto ``a`` (b is forced by compatibility),
    m_a = 0 turns ``a`` into a leaf, m_a = 1 returns ``d`` unless
    ``always_splice`` asks for the Gamma(1, b) splice anyway.
    """
    if d.kind(a) != ARROWHEAD:
        raise DomainError(f"{a!r} is not an arrowhead")
    others = [x for x in d.arrowheads if x != a]
    if any(d.multiplicity(x) != 1 for x in others):
        raise DomainError("completion needs every other arrowhead to have multiplicity 1")
    m = d.multiplicity(a)
    if m == 0:
        verts = [Vertex(a, LEAF) if v.id == a else v for v in d.vertices]
        return SpliceDiagram(tuple(verts), d.edges)
    if m == 1 and not always_splice:
        return d
    b = sum(linking_number(d, x, a) for x in others)
    prefix = f"{a}/"
    while any(prefix + s in d.by_id for s in ("n", "leaf", "b", "one")):
        prefix += "'"
    return splice(d, a, elementary(m, b, prefix=prefix), prefix + "b")


# -- named families ----------------------------------------------------------

def _coprime(*pairs):
    for x, y in pairs:
        if x < 1 or y < 1:
            raise DomainError(f"weights must be positive, got ({x}, {y})")
        if gcd(x, y) != 1:
            raise DomainError(f"({x}, {y}) are not coprime")


def torus(p, q):
    _coprime((p, q))
    return make_diagram(
        [("n", NODE), ("lp", LEAF), ("lq", LEAF), ("a", ARROWHEAD, 1)],
        [("n", "lp", p, 1), ("n", "lq", q, 1), ("n", "a", 1, 1)],
    )


def iterated_torus(params):
    """Cabling chain: node j has a leaf of weight p_j, weight q_j towards node j-1
    (a leaf for j = 1) and weight 1 towards node j+1 (the arrowhead at the end)."""
    params = list(params)
    if not params:
        raise DomainError("iterated_torus needs at least one (p, q)")
    _coprime(*params)
    verts = [("l0", LEAF)]
    edges = []
    prev = "l0"
    for j, (p, q) in enumerate(params, start=1):
        n = f"n{j}"
        verts += [(n, NODE), (f"l{j}", LEAF)]
        edges.append((prev, n, 1, q))
        edges.append((n, f"l{j}", p, 1))
        prev = n
    verts.append(("a", ARROWHEAD, 1))
    edges.append((prev, "a", 1, 1))
    return make_diagram(verts, edges)


def star(p, q, mults):
    """Central node with leaves p, q joined by unit-weight edges to k outer nodes;
    outer node j carries a leaf of weight m_j and one arrowhead."""
    mults = list(mults)
    if not mults:
        raise DomainError("star needs at least one outer multiplicity")
    _coprime((p, q))
    if any(m < 1 for m in mults):
        raise DomainError("outer leaf weights must be positive")
    verts = [("c", NODE), ("lp", LEAF), ("lq", LEAF)]
    edges = [("c", "lp", p, 1), ("c", "lq", q, 1)]
    for j, m in enumerate(mults, start=1):
        verts += [(f"o{j}", NODE), (f"ol{j}", LEAF), (f"a{j}", ARROWHEAD, 1)]
        edges += [("c", f"o{j}", 1, 1), (f"o{j}", f"ol{j}", m, 1), (f"o{j}", f"a{j}", 1, 1)]
    return make_diagram(verts, edges)


def build_family(kind, params):
    """``kind`` in {"torus", "iterated_torus", "star"}; ``params`` as for the constructor."""
    if kind == "torus":
        return torus(*params)
    if kind == "iterated_torus":
        return iterated_torus(params)
    if kind == "star":
        p, q, mults = params
        return star(p, q, mults)
    raise DomainError(f"unknown family {kind!r}")


# -- random generation -------------------------------------------------------

def _big(rng, max_weight, avoid=1):
    """A weight in [2, max_weight] coprime to ``avoid``."""
    choices = [x for x in range(2, max_weight + 1) if gcd(x, avoid) == 1]
    return rng.choice(choices)


def _grow(rng, size, max_weight):
    verts = []
    edges = []
    count = {"n": 0, "l": 0, "a": 0}

    def new(kind, mult=None):
        tag = {NODE: "n", LEAF: "l", ARROWHEAD: "a"}[kind]
        vid = f"{tag}{count[tag]}"
        count[tag] += 1
        verts.append(Vertex(vid, kind, mult))
        return vid

    # root: a torus-link node with at most two weights > 1
    root = new(NODE)
    nbig = rng.choice((0, 1, 2, 2, 2))
    bigs = []
    for _ in range(nbig):
        avoid = bigs[0] if bigs else 1
        bigs.append(_big(rng, max_weight, avoid))
    nleaf = rng.randint(0, nbig)
    spare = bigs[nleaf:]
    narrow = max(1, 3 - nleaf, len(spare)) + rng.choice((0, 0, 1))
    arrow_weights = spare + [1] * (narrow - len(spare))
    rng.shuffle(arrow_weights)
    for w in bigs[:nleaf]:
        edges.append(Edge((root, new(LEAF)), (w, 1)))
    for w in arrow_weights:
        edges.append(Edge((root, new(ARROWHEAD, 1)), (w, 1)))

    target = rng.randint(1, size)
    for _ in range(target - 1):
        arrows = [v.id for v in verts if v.kind == ARROWHEAD]
        a = rng.choice(arrows)
        (e,) = [f for f in edges if a in f.ends]
        u = e.other(a)
        w_u = e.weight_at(u)
        edges.remove(e)
        verts[:] = [v for v in verts if v.id != a]
        x = new(NODE)
        r = _big(rng, max_weight) if rng.random() < 0.6 else 1
        edges.append(Edge((u, x), (w_u, r)))
        # at most one further weight > 1 at x, so the splice stays inside S^3
        if rng.random() < 0.6:
            edges.append(Edge((x, new(LEAF)), (_big(rng, max_weight, r), 1)))
            for _ in range(rng.choice((1, 1, 2))):
                edges.append(Edge((x, new(ARROWHEAD, 1)), (1, 1)))
        else:
            k = rng.choice((2, 2, 3))
            ws = [1] * k
            if rng.random() < 0.5:
                ws[0] = _big(rng, max_weight, r)
            for w in ws:
                edges.append(Edge((x, new(ARROWHEAD, 1)), (w, 1)))
    return SpliceDiagram(tuple(verts), tuple(edges))


def generate_random(seed, size, max_weight=5):
    """Deterministic random almost-minimal link diagram in S^3 with at most ``size`` nodes.

    Grown by cabling from a torus-link node; exceptional single-node shapes
    (possible unknot or Hopf link) are discarded and regrown.
    """
    if size < 1:
        raise DomainError("size must be >= 1")
    if max_weight < 3:
        raise DomainError("max_weight must be >= 3")
    rng = random.Random(seed)
    while True:
        d = _grow(rng, size, max_weight)
        if not is_exceptional_shape(d):
            return d
