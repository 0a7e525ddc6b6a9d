"""The ridge graph of the triangle-facet cone, its complement, and the
quotient graph on Triangles, together with the structural checks on them.

Vertices of the ridge graph are the 3*C(n, 3) triangle facets; two facets are
adjacent when non-conflicting (no coordinate carries oppositely signed
entries).  The complement graph is where the structure lives: neighborhoods
decompose into hexagons, same-support facets form 3-cliques (Triangles), and
the quotient on Triangles is the 2-intersection graph on 3-subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .core import TriangleFacet, enumerate_triangle_facets

__all__ = [
    "Graph",
    "StructureError",
    "conflicting",
    "build_ridge_graph",
    "build_complement",
    "HexagonNeighborhood",
    "verify_hexagon_neighborhood",
    "Triangle",
    "find_triangles",
    "group_facets_by_support",
    "build_triangle_graph",
    "verify_johnson_isomorphism",
    "verify_rook_neighborhood",
    "verify_distance2_property",
    "bfs_distances",
    "IntersectionArray",
    "intersection_array",
    "verify_line_graph_k34",
    "to_graph6",
    "edge_list_lines",
    "label_lines",
]


class StructureError(RuntimeError):
    """A structural claim failed; the message carries the witness."""


class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.

    Treated as immutable after construction; labels optionally attach a facet
    or 3-set to each vertex.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        adj = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = adj
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("label count does not match vertex count")

    @classmethod
    def from_adjacency(cls, adj: Sequence[int], labels=None) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = list(adj)
        g.labels = tuple(labels) if labels is not None else None
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int):
        m = self.adj[v]
        while m:
            lsb = m & -m
            yield lsb.bit_length() - 1
            m ^= lsb

    def edges(self):
        for u in range(self.n):
            m = self.adj[u] >> (u + 1)
            while m:
                lsb = m & -m
                yield (u, u + 1 + lsb.bit_length() - 1)
                m ^= lsb

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def common_neighbor_count(self, u: int, v: int) -> int:
        return (self.adj[u] & self.adj[v]).bit_count()

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        adj = [full & ~self.adj[v] & ~(1 << v) for v in range(self.n)]
        return Graph.from_adjacency(adj, self.labels)

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Image under a vertex permutation (perm[v] is the new name of v)."""
        adj = [0] * self.n
        for v in range(self.n):
            m = self.adj[v]
            row = 0
            while m:
                lsb = m & -m
                row |= 1 << perm[lsb.bit_length() - 1]
                m ^= lsb
            adj[perm[v]] = row
        labels = None
        if self.labels is not None:
            labels = [None] * self.n
            for v, lab in enumerate(self.labels):
                labels[perm[v]] = lab
        return Graph.from_adjacency(adj, labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def _signed_masks(f: TriangleFacet) -> tuple[int, int]:
    pos = neg = 0
    for idx, sign in f.entries():
        if sign > 0:
            pos |= 1 << idx
        else:
            neg |= 1 << idx
    return pos, neg


def conflicting(f: TriangleFacet, g: TriangleFacet) -> bool:
    """True when some coordinate carries nonzero entries of opposite sign."""
    if f.n != g.n:
        raise ValueError("facet dimensions differ")
    fp, fn = _signed_masks(f)
    gp, gn = _signed_masks(g)
    return bool(fp & gn or fn & gp)


@lru_cache(maxsize=None)
def _facet_graph_masks(n: int):
    facets = tuple(enumerate_triangle_facets(n))
    signed = [_signed_masks(f) for f in facets]
    v = len(facets)
    conflict = [0] * v
    for a in range(v):
        ap, an = signed[a]
        for b in range(a + 1, v):
            bp, bn = signed[b]
            if ap & bn or an & bp:
                conflict[a] |= 1 << b
                conflict[b] |= 1 << a
    return facets, tuple(conflict)


def build_ridge_graph(n: int) -> Graph:
    """Graph on the triangle facets, adjacent iff non-conflicting."""
    if n < 4:
        raise ValueError("need n >= 4")
    facets, conflict = _facet_graph_masks(n)
    full = (1 << len(facets)) - 1
    adj = [full & ~conflict[v] & ~(1 << v) for v in range(len(facets))]
    return Graph.from_adjacency(adj, facets)


def build_complement(n: int) -> Graph:
    """Complement of the ridge graph: adjacent iff conflicting."""
    if n < 4:
        raise ValueError("need n >= 4")
    facets, conflict = _facet_graph_masks(n)
    return Graph.from_adjacency(list(conflict), facets)


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(m: int):
    while m:
        lsb = m & -m
        yield lsb.bit_length() - 1
        m ^= lsb


@dataclass
class HexagonNeighborhood:
    vertex: int
    distinguished_edge: tuple[int, int]
    hexagons: tuple[tuple[int, ...], ...]  # each (u1, a, b, c, d, u2)


def verify_hexagon_neighborhood(gbar: Graph, u: int) -> HexagonNeighborhood:
    """Check that the neighborhood of u decomposes as n-3 hexagons sharing
    one edge whose endpoints carry the same support 3-set as u.

    Raises StructureError with a witness when the decomposition fails.
    """
    if gbar.labels is None:
        raise ValueError("complement graph must carry facet labels")
    n = gbar.labels[0].n
    nb = list(gbar.neighbors(u))
    nb_mask = _mask_of(nb)
    expected = 2 + 4 * (n - 3)
    if len(nb) != expected:
        raise StructureError(f"vertex {u}: neighborhood size {len(nb)} != {expected}")

    ind_deg = {v: (gbar.adj[v] & nb_mask).bit_count() for v in nb}
    if n >= 5:
        heavy = [v for v in nb if ind_deg[v] == n - 2]
        if len(heavy) != 2 or not gbar.has_edge(*heavy):
            raise StructureError(
                f"vertex {u}: no unique max-degree edge in neighborhood (candidates {heavy})"
            )
    else:
        # All induced degrees tie at 2 for n=4; fall back to the support labels.
        support = gbar.labels[u].support
        heavy = [v for v in nb if gbar.labels[v].support == support]
        if len(heavy) != 2 or not gbar.has_edge(*heavy):
            raise StructureError(f"vertex {u}: same-support edge missing at n=4")
    u1, u2 = sorted(heavy)

    if not (gbar.labels[u].support == gbar.labels[u1].support == gbar.labels[u2].support):
        raise StructureError(
            f"vertex {u}: distinguished edge ({u1}, {u2}) does not share the support 3-set"
        )

    rest_mask = nb_mask & ~(1 << u1) & ~(1 << u2)
    components = []
    seen = 0
    for start in _bits(rest_mask):
        if (seen >> start) & 1:
            continue
        comp = 0
        frontier = 1 << start
        while frontier:
            comp |= frontier
            nxt = 0
            for v in _bits(frontier):
                nxt |= gbar.adj[v] & rest_mask & ~comp
            frontier = nxt
        seen |= comp
        components.append(comp)
    if len(components) != n - 3:
        raise StructureError(
            f"vertex {u}: {len(components)} path components, expected {n - 3}"
        )

    hexagons = []
    for comp in components:
        verts = list(_bits(comp))
        if len(verts) != 4:
            raise StructureError(f"vertex {u}: component size {len(verts)} != 4")
        degs = {v: (gbar.adj[v] & comp).bit_count() for v in verts}
        ends = sorted(v for v in verts if degs[v] == 1)
        if sorted(degs.values()) != [1, 1, 2, 2]:
            raise StructureError(f"vertex {u}: component {verts} is not a 4-path")
        a_end = [v for v in ends if gbar.has_edge(v, u1) and not gbar.has_edge(v, u2)]
        d_end = [v for v in ends if gbar.has_edge(v, u2) and not gbar.has_edge(v, u1)]
        if len(a_end) != 1 or len(d_end) != 1:
            raise StructureError(
                f"vertex {u}: path endpoints {ends} do not close a hexagon over ({u1}, {u2})"
            )
        a, d = a_end[0], d_end[0]
        interior = [v for v in verts if v not in (a, d)]
        if any(gbar.has_edge(v, u1) or gbar.has_edge(v, u2) for v in interior):
            raise StructureError(f"vertex {u}: chord from path interior to ({u1}, {u2})")
        b = next(w for w in _bits(gbar.adj[a] & comp))
        c = next(w for w in _bits(gbar.adj[d] & comp))
        hexagons.append((u1, a, b, c, d, u2))
    return HexagonNeighborhood(u, (u1, u2), tuple(hexagons))


@dataclass(frozen=True)
class Triangle:
    """The 3-clique of same-support facets in the complement graph."""

    vertices: tuple[int, int, int]
    support: frozenset[int]


def group_facets_by_support(gbar: Graph) -> list[Triangle]:
    """Triangles read off the facet labels (the algebraic grouping)."""
    groups: dict[frozenset, list[int]] = {}
    for v, f in enumerate(gbar.labels):
        groups.setdefault(f.support, []).append(v)
    out = []
    for support, verts in groups.items():
        if len(verts) != 3:
            raise StructureError(f"support {sorted(support)} has {len(verts)} facets")
        out.append(Triangle(tuple(sorted(verts)), support))
    out.sort(key=lambda t: sorted(t.support))
    return out


def find_triangles(gbar: Graph) -> list[Triangle]:
    """Detect Triangles purely from adjacency via the common-neighbor census.

    Edges inside a Triangle have the strictly largest number of common
    neighbors; the top-count edges must decompose into disjoint 3-cliques.
    At n=4 the census is non-discriminating (both counts equal 2), so the
    support grouping is used instead.
    """
    if gbar.labels is not None and gbar.labels[0].n == 4:
        return group_facets_by_support(gbar)
    edge_counts = {e: gbar.common_neighbor_count(*e) for e in gbar.edges()}
    top = max(edge_counts.values())
    partner = [0] * gbar.n
    for (a, b), cnt in edge_counts.items():
        if cnt == top:
            partner[a] |= 1 << b
            partner[b] |= 1 << a
    triangles = []
    seen = 0
    for v in range(gbar.n):
        if (seen >> v) & 1:
            continue
        cell = (1 << v) | partner[v]
        verts = tuple(sorted(_bits(cell)))
        if len(verts) != 3 or any(partner[w] | (1 << w) != cell for w in verts):
            raise StructureError(f"top-count edges at vertex {v} do not form a 3-clique")
        seen |= cell
        support = gbar.labels[v].support if gbar.labels is not None else None
        triangles.append(Triangle(verts, support))
    triangles.sort(key=lambda t: sorted(t.support) if t.support else t.vertices)
    return triangles


def build_triangle_graph(gbar: Graph, triangles: Sequence[Triangle] | None = None) -> Graph:
    """Quotient graph on Triangles, adjacent when joined by complement edges.

    Asserts that adjacent Triangles are joined by exactly 4 cross edges
    forming two disjoint 2-paths, and non-adjacent ones by none.
    """
    if triangles is None:
        triangles = find_triangles(gbar)
    masks = [_mask_of(t.vertices) for t in triangles]
    edges = []
    for a in range(len(triangles)):
        for b in range(a + 1, len(triangles)):
            cross = [
                (u, w)
                for u in triangles[a].vertices
                for w in _bits(gbar.adj[u] & masks[b])
            ]
            if not cross:
                continue
            if len(cross) != 4:
                raise StructureError(
                    f"Triangles {a} and {b} joined by {len(cross)} edges, expected 0 or 4"
                )
            _assert_two_disjoint_2paths(triangles[a].vertices, triangles[b].vertices, cross)
            edges.append((a, b))
    labels = None
    if all(t.support is not None for t in triangles):
        labels = [t.support for t in triangles]
    return Graph(len(triangles), edges, labels)


def _assert_two_disjoint_2paths(va, vb, cross):
    deg: dict[int, int] = {}
    for u, w in cross:
        deg[u] = deg.get(u, 0) + 1
        deg[w] = deg.get(w, 0) + 1
    if len(deg) != 6 or sorted(deg.values()) != [1, 1, 1, 1, 2, 2]:
        raise StructureError(f"cross edges {cross} are not two disjoint 2-paths")
    adj: dict[int, set[int]] = {v: set() for v in deg}
    for u, w in cross:
        adj[u].add(w)
        adj[w].add(u)
    seen: set[int] = set()
    comps = 0
    for v in deg:
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        comps += 1
        if len(comp) != 3:
            raise StructureError(f"cross component {sorted(comp)} is not a 2-path")
    if comps != 2:
        raise StructureError(f"cross edges {cross} form {comps} components, expected 2")


def verify_johnson_isomorphism(gamma: Graph, n: int) -> bool:
    """The support labeling is an isomorphism onto the graph on 3-subsets
    with adjacency 'intersect in a 2-subset'."""
    if gamma.labels is None:
        return False
    if set(gamma.labels) != {
        frozenset(c) for c in itertools.combinations(range(1, n + 1), 3)
    }:
        return False
    for a in range(gamma.n):
        for b in range(a + 1, gamma.n):
            expected = len(gamma.labels[a] & gamma.labels[b]) == 2
            if gamma.has_edge(a, b) != expected:
                return False
    return True


def verify_rook_neighborhood(gamma: Graph, v: int) -> bool:
    """The neighborhood of v is the 3 x (n-3) rook graph under the coordinate
    map w -> (dropped point of v, added point)."""
    base = gamma.labels[v]
    coords = {}
    for w in gamma.neighbors(v):
        dropped = base - gamma.labels[w]
        added = gamma.labels[w] - base
        if len(dropped) != 1 or len(added) != 1:
            return False
        coords[w] = (next(iter(dropped)), next(iter(added)))
    neighbors = list(coords)
    for a_idx in range(len(neighbors)):
        for b_idx in range(a_idx + 1, len(neighbors)):
            a, b = neighbors[a_idx], neighbors[b_idx]
            (p1, q1), (p2, q2) = coords[a], coords[b]
            expected = (p1 == p2) != (q1 == q2)
            if gamma.has_edge(a, b) != expected:
                return False
    return True


def bfs_distances(graph: Graph, source: int) -> list[int]:
    dist = [-1] * graph.n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in _bits(frontier):
            nxt |= graph.adj[v]
        nxt &= ~seen
        for v in _bits(nxt):
            dist[v]= d
        seen |= nxt
        frontier = nxt
    return dist


def verify_distance2_property(gamma: Graph, v: int) -> bool:
    """Each vertex at distance 2 from v meets the neighborhood of v in
    exactly 4 vertices, and those 4-sets are pairwise distinct."""
    dist = bfs_distances(gamma, v)
    foursets = []
    for w in range(gamma.n):
        if dist[w] != 2:
            continue
        common = gamma.adj[w] & gamma.adj[v]
        if common.bit_count() != 4:
            return False
        foursets.append(common)
    return len(set(foursets)) == len(foursets)


@dataclass(frozen=True)
class IntersectionArray:
    bs: tuple[int, ...]
    cs: tuple[int, ...]

    def __str__(self) -> str:
        return "{%s; %s}" % (",".join(map(str, self.bs)), ",".join(map(str, self.cs)))


def intersection_array(gamma: Graph) -> IntersectionArray:
    """Verify distance-regularity by exhaustive distance census and return
    the parameters; raises StructureError when the census is inconsistent."""
    all_dist = [bfs_distances(gamma, v) for v in range(gamma.n)]
    if any(-1 in row for row in all_dist):
        raise StructureError("graph is not connected")
    diameter = max(max(row) for row in all_dist)
    bs: list[int | None] = [None] * diameter
    cs: list[int | None] = [None] * diameter
    for v in range(gamma.n):
        dist = all_dist[v]
        for w in range(gamma.n):
            d = dist[w]
            if w == v:
                continue
            nearer = sum(1 for x in _bits(gamma.adj[w]) if dist[x] == d - 1)
            farther = sum(1 for x in _bits(gamma.adj[w]) if dist[x] == d + 1)
            if cs[d - 1] is None:
                cs[d - 1] = nearer
            elif cs[d - 1] != nearer:
                raise StructureError(
                    f"not distance-regular: c_{d} differs at pair ({v}, {w})"
                )
            if d < diameter:
                if bs[d] is None:
                    bs[d] = farther
                elif bs[d] != farther:
                    raise StructureError(
                        f"not distance-regular: b_{d} differs at pair ({v}, {w})"
                    )
            elif farther:
                raise StructureError(f"distance census overflow at ({v}, {w})")
    degree = gamma.degree(0)
    if any(gamma.degree(v) != degree for v in range(gamma.n)):
        raise StructureError("not regular")
    return IntersectionArray((degree, *bs[1:]), tuple(cs))


_K34_PAIR_CLASS = {
    frozenset({1, 2}): 0,
    frozenset({3, 4}): 0,
    frozenset({1, 3}): 1,
    frozenset({2, 4}): 1,
    frozenset({1, 4}): 2,
    frozenset({2, 3}): 2,
}


def verify_line_graph_k34(ridge4: Graph) -> bool:
    """Explicit isomorphism of the 12-vertex ridge graph onto the line graph
    of K_{3,4}: apex pair -> its perfect-matching class, third point -> the
    4-side vertex; adjacency must match 'share exactly one coordinate'."""
    if ridge4.labels is None or ridge4.n != 12:
        return False
    coords = []
    for f in ridge4.labels:
        coords.append((_K34_PAIR_CLASS[frozenset(f.apex)], f.k))
    if len(set(coords)) != 12:
        return False
    for a in range(12):
        for b in range(a + 1, 12):
            (m1, k1), (m2, k2) = coords[a], coords[b]
            expected = (m1 == m2) != (k1 == k2)
            if ridge4.has_edge(a, b) != expected:
                return False
    return True


def to_graph6(graph: Graph) -> str:
    """Standard graph6 encoding (header-free), for up to 258047 vertices."""
    n = graph.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    else:
        raise ValueError("graph too large for this encoder")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if graph.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for bit in bits[k : k + 6]:
            val = (val << 1) | bit
        chars.append(chr(val + 63))
    return head + "".join(chars)


def edge_list_lines(graph: Graph) -> list[str]:
    """One 'u v' line per edge, 0-based, ascending."""
    return [f"{u} {v}" for u, v in graph.edges()]


def label_lines(graph: Graph) -> list[str]:
    """Sidecar vertex labels: facets as 'v i j k a b' (support then apex
    pair), 3-sets as 'v i j k'."""
    if graph.labels is None:
        return []
    lines = []
    for v, lab in enumerate(graph.labels):
        if isinstance(lab, TriangleFacet):
            i, j, k = sorted(lab.support)
            a, b = lab.apex
            lines.append(f"{v} {i} {j} {k} {a} {b}")
        else:
            i, j, k = sorted(lab)
            lines.append(f"{v} {i} {j} {k}")
    return lines
