"""Tiny graph builders shared by the test modules."""

from digrank import Digraph


def cycle(n):
    """Directed cycle 0 -> 1 -> ... -> n-1 -> 0."""
    return Digraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n):
    """All ordered pairs of distinct vertices."""
    return Digraph.from_edges(
        n, [(i, j) for i in range(n) for j in range(n) if i != j])


def chain(n):
    """Acyclic path 0 -> 1 -> ... -> n-1."""
    return Digraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def edgeless(n):
    return Digraph.from_edges(n, [])


def loop_vertex():
    return Digraph.from_edges(1, [(0, 0)])
