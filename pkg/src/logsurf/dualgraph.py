"""Dual graphs of curve configurations and germ classification.

A vertex is a curve with its self-intersection (stored as the actual C^2,
so negative for exceptional curves), geometric genus, and a node count for
curves with ordinary double points. Edges carry intersection multiplicity.
On top of that sit the standard tools: intersection matrix, determinant,
cyclic quotient types of chains, discrepancy coefficients, and the
classification of log canonical germs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from logsurf.exact import (
    QMatrix,
    Rational,
    determinant,
    is_negative_definite,
    rat,
    solve_linear,
)


class Disconnected(Exception):
    pass


class InvalidChain(Exception):
    pass


class NotNegativeDefinite(Exception):
    pass


class UnclassifiableShape(Exception):
    pass


class GraphFormatError(Exception):
    pass


@dataclass(frozen=True)
class GraphVertex:
    label: str
    self_int: int
    genus: int = 0
    is_exceptional: bool = True
    node_count: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0 or self.node_count < 0:
            raise ValueError("genus and node count must be nonnegative")

    @property
    def arithmetic_genus(self) -> int:
        return self.genus + self.node_count


@dataclass(frozen=True)
class DualGraph:
    """Vertices plus a multiset of unordered edges (pairs of labels)."""

    vertices: tuple[GraphVertex, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        labels = [v.label for v in self.vertices]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertex labels")
        known = set(labels)
        norm = []
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at {a}; record nodes via node_count instead")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a},{b}) references unknown vertex")
            norm.append((a, b) if a <= b else (b, a))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(v.label for v in self.vertices)

    def vertex(self, label: str) -> GraphVertex:
        for v in self.vertices:
            if v.label == label:
                return v
        raise KeyError(label)

    def edge_multiplicity(self, a: str, b: str) -> int:
        key = (a, b) if a <= b else (b, a)
        return sum(1 for e in self.edges if e == key)

    def adjacency(self) -> dict[str, list[str]]:
        """Neighbors with multiplicity (a double edge lists the neighbor twice)."""
        adj: dict[str, list[str]] = {v.label: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def subgraph(self, labels: Iterable[str]) -> DualGraph:
        keep = set(labels)
        verts = tuple(v for v in self.vertices if v.label in keep)
        if len(verts) != len(keep):
            missing = keep - {v.label for v in verts}
            raise KeyError(f"unknown labels {sorted(missing)}")
        edges = tuple(e for e in self.edges if e[0] in keep and e[1] in keep)
        return DualGraph(verts, edges)

    def exceptional_labels(self) -> tuple[str, ...]:
        return tuple(v.label for v in self.vertices if v.is_exceptional)

    def boundary_labels(self) -> tuple[str, ...]:
        return tuple(v.label for v in self.vertices if not v.is_exceptional)


def intersection_matrix(g: DualGraph) -> QMatrix:
    n = len(g.vertices)
    idx = {v.label: i for i, v in enumerate(g.vertices)}
    ent = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        ent[i][i] = Fraction(v.self_int)
    for a, b in g.edges:
        i, j = idx[a], idx[b]
        ent[i][j] += 1
        ent[j][i] += 1
    return QMatrix.from_rows(ent)


def graph_determinant(g: DualGraph) -> Rational:
    """Determinant of the negated intersection matrix (1 for the empty graph)."""
    m = intersection_matrix(g)
    neg = QMatrix(m.rows, m.cols, tuple(-e for e in m.entries))
    return determinant(neg)


@dataclass(frozen=True)
class ShapeInfo:
    is_tree: bool
    is_chain: bool
    has_cycle: bool
    forks: tuple[str, ...]
    tails: tuple[str, ...]


def _components(g: DualGraph) -> list[list[str]]:
    adj = g.adjacency()
    seen: set[str] = set()
    comps = []
    for v in g.labels:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(comp)
    return comps


def shape(g: DualGraph) -> ShapeInfo:
    """Valence census of a connected graph. Raises Disconnected otherwise."""
    if len(g.vertices) == 0:
        raise Disconnected("empty graph")
    comps = _components(g)
    if len(comps) > 1:
        raise Disconnected(f"{len(comps)} components: {[sorted(c) for c in comps]}")
    adj = g.adjacency()
    valence = {v: len(adj[v]) for v in g.labels}
    has_cycle = len(g.edges) >= len(g.vertices)
    is_tree = not has_cycle
    is_chain = is_tree and all(val <= 2 for val in valence.values())
    forks = tuple(sorted(v for v, val in valence.items() if val >= 3))
    tails = tuple(sorted(v for v, val in valence.items() if val == 1))
    return ShapeInfo(is_tree, is_chain, has_cycle, forks, tails)


def _chain_order(g: DualGraph) -> list[str]:
    """Labels of a chain graph in path order (ties broken toward the smaller end label)."""
    info = shape(g)
    if not info.is_chain:
        raise InvalidChain("graph is not a chain")
    if len(g.vertices) == 1:
        return [g.vertices[0].label]
    adj = g.adjacency()
    start = min(info.tails)
    order = [start]
    prev = None
    while len(order) < len(g.vertices):
        nxt = [n for n in adj[order[-1]] if n != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


@dataclass(frozen=True)
class CyclicType:
    """Cyclic quotient singularity of type (n, q): 1/n with weights (1, q)."""

    n: int
    q: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.q < 1:
            raise ValueError("n and q must be positive")
        if self.n > 1 and not (self.q < self.n and math.gcd(self.n, self.q) == 1):
            raise ValueError(f"({self.n},{self.q}) is not a reduced cyclic type")


def _continued_fraction(entries: Sequence[int]) -> Fraction:
    """Evaluate e1 - 1/(e2 - 1/(... - 1/ek)) exactly."""
    val = Fraction(entries[-1])
    for e in reversed(entries[:-1]):
        val = e - 1 / val
    return val


def cyclic_type(chain: DualGraph) -> CyclicType:
    """Cyclic quotient type of a chain of rational curves, all with C^2 <= -2.

    n/q is the continued-fraction value of the chain read from one end; the
    other end gives the inverse of q mod n, and the smaller of the two is
    returned so the type has one canonical spelling. The empty chain is the
    smooth point (1, 1).
    """
    if len(chain.vertices) == 0:
        return CyclicType(1, 1)
    order = _chain_order(chain)
    entries = []
    for lbl in order:
        v = chain.vertex(lbl)
        if v.self_int >= -1:
            raise InvalidChain(f"{lbl} has self-intersection {v.self_int}; chain needs <= -2 throughout")
        if v.genus != 0 or v.node_count != 0:
            raise InvalidChain(f"{lbl} is not a smooth rational curve")
        entries.append(-v.self_int)
    forward = _continued_fraction(entries)
    backward = _continued_fraction(list(reversed(entries)))
    n, q = forward.numerator, forward.denominator
    qb = backward.denominator
    assert backward.numerator == n
    return CyclicType(n, min(q, qb))


def solve_discrepancies(
    g: DualGraph,
    boundary_coeffs: Mapping[str, Rational] | None = None,
) -> dict[str, Rational]:
    """Coefficients b with (K + sum b_i E_i + boundary) . E_i = 0 for all exceptional E_i.

    Uses K.C = 2 p_a(C) - 2 - C^2. Non-exceptional vertices enter with their
    given coefficient (default 1). The exceptional intersection matrix must be
    negative definite, which makes the solution unique.
    """
    exc = g.exceptional_labels()
    bnd = g.boundary_labels()
    coeffs = {lbl: Fraction(1) for lbl in bnd}
    if boundary_coeffs:
        for lbl, c in boundary_coeffs.items():
            if lbl not in coeffs:
                raise KeyError(f"{lbl} is not a boundary vertex of this graph")
            coeffs[lbl] = rat(c)
    if not exc:
        return {}
    sub = g.subgraph(exc)
    m = intersection_matrix(sub)
    if not is_negative_definite(m):
        raise NotNegativeDefinite("exceptional intersection matrix is not negative definite")
    rhs = []
    for lbl in exc:
        v = g.vertex(lbl)
        k_dot = 2 * v.arithmetic_genus - 2 - v.self_int
        bterm = sum((coeffs[b] * g.edge_multiplicity(b, lbl) for b in bnd), Fraction(0))
        rhs.append(Fraction(-k_dot) - bterm)
    sol = solve_linear(m, tuple(rhs))
    return dict(zip(exc, sol))


@dataclass(frozen=True)
class GermClassification:
    is_lc: bool
    is_klt: bool
    is_plt: bool
    discrepancy_coeffs: dict[str, Rational] = field(default_factory=dict)
    order: int | None = None
    nklt_case: str | None = None
    cyclic_points: tuple[CyclicType, ...] | None = None


_FORK_BRANCH_TYPES = ((2, 3, 6), (2, 4, 4), (3, 3, 3))


def _branches_at_fork(g: DualGraph, fork: str) -> list[list[str]]:
    adj = g.adjacency()
    branches = []
    for start in adj[fork]:
        branch = [start]
        prev = fork
        while True:
            nxt = [n for n in adj[branch[-1]] if n != prev]
            if not nxt:
                break
            prev = branch[-1]
            branch.append(nxt[0])
        branches.append(branch)
    return branches


def _nklt_case(g: DualGraph) -> str:
    """Shape label for a boundary-free lc germ that is not klt."""
    info = shape(g)
    verts = g.vertices
    if len(verts) == 1:
        v = verts[0]
        if v.arithmetic_genus >= 1:
            return "a"
        raise UnclassifiableShape("single smooth rational vertex cannot have coefficient 1")
    if info.has_cycle:
        adj = g.adjacency()
        ok = all(len(adj[v.label]) == 2 and v.arithmetic_genus == 0 and v.self_int <= -2 for v in verts)
        if ok and len(g.edges) == len(verts):
            return "b"
        raise UnclassifiableShape("cycle-bearing graph is not a plain cycle of rational curves")
    if not all(v.arithmetic_genus == 0 for v in verts):
        raise UnclassifiableShape("tree with positive-genus vertices")
    adj = g.adjacency()
    if len(info.forks) == 1:
        fork = info.forks[0]
        branches = _branches_at_fork(g, fork)
        if len(branches) == 3:
            dets = tuple(
                sorted(int(graph_determinant(g.subgraph(br))) for br in branches)
            )
            if dets in _FORK_BRANCH_TYPES:
                return "d"
            raise UnclassifiableShape(f"fork branch determinants {dets} are not a unimodular triple")
        if len(branches) == 4:
            corners = [br for br in branches if len(br) == 1 and g.vertex(br[0]).self_int == -2]
            if len(corners) == 4:
                return "c"
        raise UnclassifiableShape("fork valence pattern matches no germ case")
    if len(info.forks) == 2:
        f1, f2 = info.forks
        corner_count = 0
        spine = set(g.labels)
        for f in (f1, f2):
            tails_here = [
                n for n in adj[f]
                if len(adj[n]) == 1 and g.vertex(n).self_int == -2
            ]
            if len(tails_here) != 2:
                raise UnclassifiableShape(f"fork {f} does not carry two (-2) corner tails")
            corner_count += 2
            spine -= set(tails_here)
        spine_graph = g.subgraph(spine)
        spine_info = shape(spine_graph)
        if corner_count == 4 and spine_info.is_chain:
            ends = spine_info.tails if len(spine) > 1 else (f1,)
            if set(info.forks) <= set(ends) or len(spine) == 1:
                return "c"
        raise UnclassifiableShape("two-fork graph is not a chain with corner pairs")
    raise UnclassifiableShape("coefficient-1 tree with no usable fork structure")


def classify_germ(
    g: DualGraph,
    boundary_coeffs: Mapping[str, Rational] | None = None,
) -> GermClassification:
    """Classify the germ described by a connected dual graph.

    Works from the solved discrepancy coefficients: klt means all below 1
    (and no boundary through the point with coefficient 1), lc means none
    above 1. For lc-but-not-klt boundary-free germs the shape is labeled
    a (single curve of arithmetic genus >= 1), b (cycle of rational curves),
    c (chain with a (-2)-pair at each end), or d (fork whose branch
    determinants are (2,3,6), (2,4,4) or (3,3,3)).
    """
    shape(g)  # connectivity gate
    bnd = g.boundary_labels()
    coeffs = {lbl: Fraction(1) for lbl in bnd}
    if boundary_coeffs:
        for lbl, c in boundary_coeffs.items():
            if lbl not in coeffs:
                raise KeyError(f"{lbl} is not a boundary vertex")
            coeffs[lbl] = rat(c)
    disc = solve_discrepancies(g, coeffs)
    exc_vals = list(disc.values())
    bnd_vals = list(coeffs.values())
    is_lc = all(b <= 1 for b in exc_vals) and all(c <= 1 for c in bnd_vals)
    is_klt = all(b < 1 for b in exc_vals) and all(c < 1 for c in bnd_vals)
    is_plt = all(b < 1 for b in exc_vals) and all(c <= 1 for c in bnd_vals)

    order = None
    if is_klt:
        exc_graph = g.subgraph(g.exceptional_labels())
        order = int(graph_determinant(exc_graph))

    nklt_case = None
    if is_lc and not is_klt and not bnd:
        nklt_case = _nklt_case(g)

    cyclic_points = None
    exc_graph = g.subgraph(g.exceptional_labels()) if g.exceptional_labels() else None
    if exc_graph is not None and all(b < 1 for b in exc_vals):
        comps = _components(exc_graph)
        types = []
        for comp in comps:
            comp_graph = exc_graph.subgraph(comp)
            try:
                types.append(cyclic_type(comp_graph))
            except InvalidChain:
                types = None
                break
        if types is not None:
            cyclic_points = tuple(sorted(types, key=lambda t: (t.n, t.q)))

    return GermClassification(
        is_lc=is_lc,
        is_klt=is_klt,
        is_plt=is_plt,
        discrepancy_coeffs=disc,
        order=order,
        nklt_case=nklt_case,
        cyclic_points=cyclic_points,
    )


def contract_and_square(g: DualGraph, contracted: Iterable[str], curve: str) -> Rational:
    """Self-intersection of the image of `curve` after contracting `contracted`.

    Computed from the pullback: if M is the (negative definite) intersection
    matrix of the contracted curves and v the intersection vector of the
    curve with them, the image square is C^2 - v^T M^{-1} v.
    """
    cset = list(dict.fromkeys(contracted))
    if curve in cset:
        raise ValueError("curve to track cannot itself be contracted")
    sub = g.subgraph(cset)
    m = intersection_matrix(sub)
    if not is_negative_definite(m):
        raise NotNegativeDefinite("contracted configuration is not negative definite")
    v = tuple(Fraction(g.edge_multiplicity(curve, lbl)) for lbl in cset)
    c2 = Fraction(g.vertex(curve).self_int)
    if not cset:
        return c2
    x = solve_linear(m, v)
    return c2 - sum((xi * vi for xi, vi in zip(x, v)), Fraction(0))


def enumerate_fork_squares(target: Rational = Fraction(-1, 3)) -> frozenset[tuple[int, int, int, int, int, int]]:
    """All fork germs with unimodular branch triple whose contracted central
    curve has the given self-intersection.

    A hit is reported as (n1, n2, n3, q1, q2, q3): branch chain of type
    (n_i, q_i) read with q_i the determinant of the branch minus its
    fork-adjacent vertex, so the contracted square is E0^2 + sum q_i/n_i.
    Branches are sorted by (n, q). Scans every integer central
    self-intersection -e0 <= -2 that could reach the target.
    """
    hits = set()
    t = rat(target)
    e0 = 2
    while Fraction(-e0) + 3 > t:
        for ns in _FORK_BRANCH_TYPES:
            qs_ranges = [[q for q in range(1, n) if math.gcd(n, q) == 1] for n in ns]
            for q1 in qs_ranges[0]:
                for q2 in qs_ranges[1]:
                    for q3 in qs_ranges[2]:
                        total = Fraction(-e0) + Fraction(q1, ns[0]) + Fraction(q2, ns[1]) + Fraction(q3, ns[2])
                        if total == t:
                            branches = sorted(zip(ns, (q1, q2, q3)))
                            hit = tuple(n for n, _ in branches) + tuple(q for _, q in branches)
                            hits.add(hit)
        e0 += 1
    return frozenset(hits)


def residue_search(value: Rational, moduli: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Find all coprime residue tuples r_i mod m_i with value - sum r_i/m_i an integer.

    Returns {residues: integer part}. Moduli must all be >= 2.
    """
    if any(m < 2 for m in moduli):
        raise ValueError("moduli must be >= 2")
    val = rat(value)
    hits: dict[tuple[int, ...], int] = {}

    def rec(i: int, acc: Fraction, chosen: tuple[int, ...]) -> None:
        if i == len(moduli):
            z = val - acc
            if z.denominator == 1:
                hits[chosen] = int(z)
            return
        for r in range(1, moduli[i]):
            if math.gcd(r, moduli[i]) == 1:
                rec(i + 1, acc + Fraction(r, moduli[i]), chosen + (r,))

    rec(0, Fraction(0), ())
    return hits


def adjunction_degree(orders: Sequence[int]) -> Rational:
    """-2 + sum (1 - 1/n_i) over the given orders."""
    if any(n < 1 for n in orders):
        raise ValueError("orders must be positive")
    return Fraction(-2) + sum((1 - Fraction(1, n) for n in orders), Fraction(0))


def parse_graph(text: str) -> DualGraph:
    """Parse the plain-text graph format.

    Vertex lines: ``label self_int [genus] [boundary] [node[=k]]``. Edge
    lines: ``labelA -- labelB [multiplicity]``. ``#`` starts a comment.
    Self-intersections written as positive integers follow the display
    convention for resolution graphs and are negated on input; negative
    values are taken literally.
    """
    vertices: list[GraphVertex] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "--" in line:
            parts = line.split()
            if len(parts) not in (3, 4) or parts[1] != "--":
                raise GraphFormatError(f"line {lineno}: expected 'A -- B [mult]'")
            mult = 1
            if len(parts) == 4:
                try:
                    mult = int(parts[3])
                except ValueError as exc:
                    raise GraphFormatError(f"line {lineno}: bad multiplicity {parts[3]!r}") from exc
                if mult < 1:
                    raise GraphFormatError(f"line {lineno}: multiplicity must be >= 1")
            edges.extend([(parts[0], parts[2])] * mult)
            continue
        parts = line.split()
        if len(parts) < 2:
            raise GraphFormatError(f"line {lineno}: expected 'label self_int ...'")
        label = parts[0]
        try:
            shown = int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: bad self-intersection {parts[1]!r}") from exc
        if shown == 0:
            raise GraphFormatError(f"line {lineno}: self-intersection 0 is ambiguous in this format")
        self_int = -shown if shown > 0 else shown
        genus = 0
        is_exceptional = True
        node_count = 0
        rest = parts[2:]
        if rest and rest[0].lstrip("-").isdigit():
            genus = int(rest[0])
            rest = rest[1:]
        for tok in rest:
            if tok == "boundary":
                is_exceptional = False
            elif tok == "node":
                node_count = 1
            elif tok.startswith("node="):
                node_count = int(tok.split("=", 1)[1])
            else:
                raise GraphFormatError(f"line {lineno}: unknown flag {tok!r}")
        vertices.append(GraphVertex(label, self_int, genus, is_exceptional, node_count))
    try:
        return DualGraph(tuple(vertices), tuple(edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_graph(g: DualGraph) -> str:
    """Inverse of parse_graph (self-intersections written literally, negative)."""
    lines = []
    for v in g.vertices:
        parts = [v.label, str(v.self_int)]
        if v.genus:
            parts.append(str(v.genus))
        if not v.is_exceptional:
            parts.append("boundary")
        if v.node_count == 1:
            parts.append("node")
        elif v.node_count > 1:
            parts.append(f"node={v.node_count}")
        lines.append(" ".join(parts))
    seen: dict[tuple[str, str], int] = {}
    for e in g.edges:
        seen[e] = seen.get(e, 0) + 1
    for (a, b), mult in sorted(seen.items()):
        lines.append(f"{a} -- {b}" + (f" {mult}" if mult > 1 else ""))
    return "\n".join(lines) + "\n"
