"""Standard small k-graphs used as fixtures and in the documentation."""

from __future__ import annotations

from .factorization import KGraph
from .skeleton import Edge, Skeleton


def bouquet(n: int) -> KGraph:
    """B_n: one vertex ``v`` with loops ``e1 .. en``."""
    sk = Skeleton(1, ["v"], [Edge(f"e{t}", 1, "v", "v") for t in range(1, n + 1)])
    return KGraph(sk, validate=True)


def omega(n: int) -> KGraph:
    """Finite truncation of the chain graph: vertices 0..n-1, loops ``a_i``,
    ``b_i`` at every vertex and a chain edge ``c_i`` from i+1 into i."""
    vertices = [str(i) for i in range(n)]
    edges = []
    for i in range(n):
        edges.append(Edge(f"a{i}", 1, str(i), str(i)))
        edges.append(Edge(f"b{i}", 1, str(i), str(i)))
        if i + 1 < n:
            edges.append(Edge(f"c{i}", 1, str(i), str(i + 1)))
    return KGraph(Skeleton(1, vertices, edges), validate=True)


def f_theta(m: int, n: int, theta: dict | None = None) -> KGraph:
    """The single-vertex 2-graph with f_i g_j = g_j' f_i' where θ(i,j) = (i',j').

    ``theta`` defaults to the identity, giving the cartesian product B_m × B_n.
    """
    theta = theta or {}
    edges = [Edge(f"f{i}", 1, "v", "v") for i in range(1, m + 1)]
    edges += [Edge(f"g{j}", 2, "v", "v") for j in range(1, n + 1)]
    squares = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            i2, j2 = theta.get((i, j), (i, j))
            squares.append(((f"f{i}", f"g{j}"), (f"g{j2}", f"f{i2}")))
    return KGraph(Skeleton(2, ["v"], edges), squares, validate=True)


def gamma_ex1() -> KGraph:
    """Three solid loops f1..f3, three dashed loops g1..g3 and nine squares:

    g_j f_1 = f_2 g_j, g_j f_2 = f_1 g_j, g_j f_3 = f_3 g_j for j in {1, 3};
    g_2 f_i = f_i g_2 for every i.
    """
    edges = [Edge(f"f{i}", 1, "v", "v") for i in (1, 2, 3)]
    edges += [Edge(f"g{j}", 2, "v", "v") for j in (1, 2, 3)]
    squares = []
    for j in (1, 3):
        g = f"g{j}"
        squares += [((g, "f1"), ("f2", g)), ((g, "f2"), ("f1", g)), ((g, "f3"), ("f3", g))]
    for i in (1, 2, 3):
        squares.append((("g2", f"f{i}"), (f"f{i}", "g2")))
    return KGraph(Skeleton(2, ["v"], edges), squares, validate=True)


def gamma_labels() -> dict:
    """The grading c(f3) = (1,0), c(g3) = (0,1), zero on the other edges."""
    return {"f3": (1, 0), "g3": (0, 1)}


def swap_theta() -> dict:
    """θ on 2×2 exchanging (1,1) and (2,1) and fixing (1,2), (2,2)."""
    return {(1, 1): (2, 1), (2, 1): (1, 1), (1, 2): (1, 2), (2, 2): (2, 2)}
