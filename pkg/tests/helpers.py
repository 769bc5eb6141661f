"""Shared test fixtures: random instances and independent oracles.

Oracles here deliberately avoid the package's vectorized kernels: dense
matrices, per-set recounts and exhaustive enumeration, so they can
disagree with the implementation when it is wrong.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from hypercp import Hypergraph, XiRule


def random_hypergraph(
    rng: np.random.Generator,
    n: int,
    m: int,
    smin: int = 2,
    smax: int = 5,
    cover_all: bool = True,
    weighted: bool = False,
) -> Hypergraph:
    """Random hypergraph; cover_all patches in edges so no node is isolated."""
    edges = [
        rng.choice(n, size=int(rng.integers(smin, smax + 1)), replace=False).tolist()
        for _ in range(m)
    ]
    if cover_all:
        used = set(itertools.chain.from_iterable(edges))
        missing = [i for i in range(n) if i not in used]
        for i in missing:
            other = int(rng.integers(n - 1))
            edges.append([i, other if other < i else other + 1])
    weights = rng.uniform(0.5, 3.0, size=len(edges)).tolist() if weighted else None
    return Hypergraph(n, edges, weights=weights)


def dense_incidence(h: Hypergraph) -> np.ndarray:
    """0/1 node-by-edge incidence matrix, built edge by edge."""
    b = np.zeros((h.n, h.m))
    for j, e in enumerate(h.edges):
        for i in e:
            b[i, j] = 1.0
    return b


def xi_values(h: Hypergraph, rule: XiRule) -> np.ndarray:
    sizes = np.array([len(e) for e in h.edges], dtype=float)
    if rule is XiRule.RECIPROCAL:
        return 1.0 / sizes
    if rule is XiRule.WEIGHTED_RECIPROCAL:
        return h.weights / sizes
    return h.weights.copy()


def dense_gradient(h: Hypergraph, rule: XiRule, x: np.ndarray, q: float) -> np.ndarray:
    """Gradient map via the dense incidence matrix, no rescaling tricks."""
    b = dense_incidence(h)
    y = b.T @ (x**q)
    return x ** (q - 1.0) * (b @ (xi_values(h, rule) * y ** (1.0 / q - 1.0)))


def naive_objective(h: Hypergraph, rule: XiRule, x: np.ndarray, q: float) -> float:
    xi = xi_values(h, rule)
    return sum(
        float(xi[j]) * float(np.sum(np.asarray([x[i] for i in e]) ** q) ** (1.0 / q))
        for j, e in enumerate(h.edges)
    )


def naive_profile_value(h: Hypergraph, nodes, rule: XiRule | None = None) -> float:
    """Per-set recount of the contained/touched edge ratio."""
    s = set(nodes)
    xi = np.ones(h.m) if rule is None else xi_values(h, rule)
    num = sum(float(xi[j]) for j, e in enumerate(h.edges) if set(e) <= s)
    den = sum(float(xi[j]) for j, e in enumerate(h.edges) if set(e) & s)
    return num / den if den else 0.0


def is_hitting_set(h: Hypergraph, nodes) -> bool:
    s = set(nodes)
    return all(s & set(e) for e in h.edges)


def is_minimal_hitting_set(h: Hypergraph, nodes) -> bool:
    s = set(nodes)
    if not is_hitting_set(h, s):
        return False
    return all(not is_hitting_set(h, s - {u}) for u in s)


def model_log_likelihood(
    h: Hypergraph, ranks, max_size: int, rule: XiRule, q_mu: float
) -> float:
    """Exact log-likelihood of a sample under the planted-order model.

    Sums log P over every candidate subset of sizes 2..max_size, using
    the observed edge set of h; the per-edge score is xi(e) times the
    q_mu-norm of (n - rank)/n over the candidate's nodes.
    """
    ranks = list(ranks)
    n = h.n
    present = {e for e in h.edges}
    total = 0.0
    for r in range(2, max_size + 1):
        for combo in itertools.combinations(range(n), r):
            mu = sum(((n - ranks[i]) / n) ** q_mu for i in combo) ** (1.0 / q_mu)
            if rule is XiRule.RECIPROCAL:
                s = mu / r
            elif rule is XiRule.WEIGHTED_RECIPROCAL:
                s = mu / r
            else:
                s = mu
            p = 1.0 / (1.0 + math.exp(-s))
            total += math.log(p) if combo in present else math.log(1.0 - p)
    return total


def kendall_tau(a, b) -> float:
    from scipy.stats import kendalltau

    return float(kendalltau(a, b).statistic)
