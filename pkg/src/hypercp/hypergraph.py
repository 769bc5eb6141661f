"""Immutable hypergraph with dual-indexed sparse incidence.

A hypergraph is a set of n nodes (dense indices 0..n-1) plus a list of
hyperedges, each a set of at least two nodes, with a positive weight per
edge.  Construction canonicalizes the input: node indices inside an edge
are sorted and deduplicated, exact duplicate edges are merged with their
weights summed, and edges are stored in lexicographic order.  The object
is immutable after construction and safe to share across threads.

Incidence is kept in flat CSR-style arrays in both directions
(edge -> member nodes and node -> incident edges), which is what the
iterative solvers traffic in.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Sequence

import numpy as np


class XiRule(enum.Enum):
    """Per-edge scaling rule used by the scoring objective.

    RECIPROCAL           1 / |e|        (ignores edge weights)
    WEIGHTED_RECIPROCAL  w(e) / |e|
    UNIT                 w(e)           (no size penalty)
    """

    RECIPROCAL = "reciprocal"
    WEIGHTED_RECIPROCAL = "weighted"
    UNIT = "unit"


class Hypergraph:
    """Canonical in-memory hypergraph.

    Parameters
    ----------
    n : int
        Number of nodes; indices 0..n-1.  Isolated nodes are allowed.
    edges : iterable of node-index lists
        Hyperedges.  Each is canonicalized to a sorted tuple of distinct
        indices; an edge with fewer than two distinct nodes is an error.
        Duplicate edges are merged and their weights summed.
    weights : sequence of positive floats, optional
        One weight per input edge; defaults to 1 for every edge.
    labels : sequence of str, optional
        External node labels, one per node.  Labels must be unique,
        non-empty, free of whitespace and '#', and must not start
        with '%' (the text-format comment marker).
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]],
        weights: Sequence[float] | None = None,
        labels: Sequence[str] | None = None,
    ) -> None:
        if n < 0:
            raise ValueError(f"node count must be nonnegative, got {n}")
        edges = list(edges)
        if weights is None:
            wlist = [1.0] * len(edges)
        else:
            wlist = [float(w) for w in weights]
            if len(wlist) != len(edges):
                raise ValueError(
                    f"{len(edges)} edges but {len(wlist)} weights"
                )

        merged: dict[tuple[int, ...], float] = {}
        for raw, w in zip(edges, wlist):
            if not math.isfinite(w) or w <= 0.0:
                raise ValueError(f"edge weight must be positive and finite, got {w}")
            key = tuple(sorted({int(i) for i in raw}))
            if not key:
                raise ValueError("empty hyperedge")
            if key[0] < 0 or key[-1] >= n:
                raise ValueError(f"node index out of range [0, {n}): {list(raw)}")
            if len(key) < 2:
                raise ValueError(
                    f"hyperedge needs at least 2 distinct nodes, got {list(raw)}"
                )
            merged[key] = merged.get(key, 0.0) + w

        self.n = int(n)
        self.edges: list[tuple[int, ...]] = sorted(merged)
        self.weights = np.array([merged[e] for e in self.edges], dtype=np.float64)
        self.weights.flags.writeable = False

        if labels is not None:
            labels = [str(x) for x in labels]
            if len(labels) != n:
                raise ValueError(f"{n} nodes but {len(labels)} labels")
            if len(set(labels)) != n:
                raise ValueError("node labels must be unique")
            for lab in labels:
                if not lab or lab.split() != [lab] or "#" in lab or lab.startswith("%"):
                    raise ValueError(f"label not representable in text format: {lab!r}")
        self.labels: list[str] | None = labels

        # Flat edge->node incidence: members[offsets[e]:offsets[e+1]] lists edge e.
        sizes = np.fromiter((len(e) for e in self.edges), dtype=np.int64, count=self.m)
        self.offsets = np.concatenate(([0], np.cumsum(sizes)))
        self.members = (
            np.concatenate([np.asarray(e, dtype=np.int64) for e in self.edges])
            if self.edges
            else np.empty(0, dtype=np.int64)
        )
        self.offsets.flags.writeable = False
        self.members.flags.writeable = False

        # Transposed index (node -> incident edges), built once.
        edge_ids = np.repeat(np.arange(self.m, dtype=np.int64), sizes)
        order = np.argsort(self.members, kind="stable")
        self._node_edge_ids = edge_ids[order]
        self._node_offsets = np.concatenate(
            ([0], np.cumsum(np.bincount(self.members, minlength=self.n)))
        ).astype(np.int64)
        self._node_edge_ids.flags.writeable = False
        self._node_offsets.flags.writeable = False

    @property
    def m(self) -> int:
        """Number of hyperedges."""
        return len(self.edges)

    @property
    def sizes(self) -> np.ndarray:
        """Per-edge node counts |e|."""
        return np.diff(self.offsets)

    @property
    def degrees(self) -> np.ndarray:
        """Per-node count of incident edges."""
        return np.diff(self._node_offsets)

    def degree_sum(self) -> int:
        """Total incidence count: sum of |e| over all edges.

        Equals the number of nonzeros of the incidence matrix and the
        per-iteration cost unit of the solvers.
        """
        return int(self.members.size)

    def incident_edges(self, node: int) -> np.ndarray:
        """Edge ids containing `node`, in ascending order."""
        lo, hi = self._node_offsets[node], self._node_offsets[node + 1]
        return self._node_edge_ids[lo:hi]

    def label_of(self, node: int) -> str:
        """External label of a node (its index as a string by default)."""
        return self.labels[node] if self.labels is not None else str(node)

    def edges_by_label(self) -> list[tuple[tuple[str, ...], float]]:
        """Edges as sorted label tuples with weights, sorted; index-free view."""
        out = [
            (tuple(sorted(self.label_of(i) for i in e)), float(w))
            for e, w in zip(self.edges, self.weights)
        ]
        out.sort()
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and np.array_equal(self.weights, other.weights)
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m})"


def xi_vector(h: Hypergraph, rule: XiRule) -> np.ndarray:
    """Per-edge scaling values under `rule`; strictly positive."""
    sizes = h.sizes.astype(np.float64)
    if rule is XiRule.RECIPROCAL:
        return 1.0 / sizes
    if rule is XiRule.WEIGHTED_RECIPROCAL:
        return h.weights / sizes
    if rule is XiRule.UNIT:
        return h.weights.copy()
    raise ValueError(f"unknown xi rule: {rule!r}")
