"""Composite Gauss-Legendre helpers used by the momentum and rapidity integrals."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def panel_nodes(edges, nodes_per_panel: int):
    """Gauss-Legendre nodes/weights on the panels delimited by ``edges``.

    Returns flat arrays covering every panel with ``nodes_per_panel`` nodes.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2:
        raise ValueError("need at least two panel edges")
    xg, wg = _leggauss(nodes_per_panel)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    x = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    return x, w


def density_nodes(lo: float, hi: float, density, nodes_per_panel: int = 10):
    """Nodes/weights on [lo, hi] with a spatially varying target node density.

    ``density(x)`` gives the requested nodes per unit length near ``x``; each
    panel is sized to carry ``nodes_per_panel`` nodes at the local density,
    evaluated conservatively at both panel ends.
    """
    if hi <= lo:
        return np.empty(0), np.empty(0)
    edges = [lo]
    x = lo
    while x < hi:
        h = nodes_per_panel / max(density(x), 1e-12)
        h = min(h, nodes_per_panel / max(density(min(x + h, hi)), 1e-12))
        x = min(x + h, hi)
        if x - edges[-1] < 1e-14 * max(abs(lo), abs(hi), 1.0):
            x = hi
        edges.append(x)
    return panel_nodes(np.asarray(edges), nodes_per_panel)


def graded_edges(start: float, stop: float, finest: float, ratio: float = 2.0):
    """Geometrically graded edges from ``start`` toward ``stop``.

    The panel adjacent to ``stop`` has width about ``finest``; widths grow by
    ``ratio`` toward ``start``.  Edges are returned sorted ascending.
    """
    if finest <= 0:
        raise ValueError("finest must be positive")
    span = abs(stop - start)
    if span <= finest:
        return np.array(sorted([start, stop]))
    widths = []
    w = finest
    total = 0.0
    while total + w < span:
        widths.append(w)
        total += w
        w *= ratio
    widths.append(span - total)
    sign = 1.0 if stop > start else -1.0
    edges = [stop]
    for w in widths:
        edges.append(edges[-1] - sign * w)
    edges[-1] = start
    return np.array(sorted(edges))
