"""Weighted digraphs: Laplacians, spectra, and the consensus reduction basis.

Edge convention: ``weights[i, j] > 0`` means there is a link carrying agent
j's state to agent i (j is an in-neighbor of i).  A graph is balanced when
the weight matrix is symmetric; balanced graphs have real Laplacian spectra
and are the only ones for which an exact spectrum summary is offered here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "WeightedDigraph",
    "SpectrumSummary",
    "ReductionBasis",
    "UnsupportedGraphError",
    "GraphBandError",
    "laplacian",
    "is_balanced",
    "has_spanning_tree",
    "spectrum",
    "laplacian_disc_radius",
    "reduction_basis",
    "reduced_laplacian",
    "consensus_eigenvalues",
    "random_balanced_graph",
]


class UnsupportedGraphError(ValueError):
    """Raised when an operation needs a balanced graph but got a general one."""


class GraphBandError(RuntimeError):
    """Raised when no sampled topology can be scaled into the requested band."""

    def __init__(self, message: str, best_ratio: float):
        super().__init__(message)
        self.best_ratio = best_ratio


@dataclass(frozen=True)
class WeightedDigraph:
    """Simple weighted digraph on n >= 1 nodes.

    Weights are nonnegative and finite with a zero diagonal (no self-loops).
    The stored array is copied and frozen so graphs are safely shareable.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
        if w.shape[0] < 1:
            raise ValueError("graph needs at least one node")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0.0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.diagonal(w) != 0.0):
            raise ValueError("self-loops are not allowed (diagonal must be zero)")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def in_degrees(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    @classmethod
    def from_edges(cls, n: int, edges, symmetric: bool = False) -> "WeightedDigraph":
        """Build a graph from (receiver, sender, weight) triples, 0-based.

        With ``symmetric=True`` every triple also installs the reverse link,
        so each undirected pair needs to be listed only once.
        """
        w = np.zeros((n, n))
        for i, j, weight in edges:
            w[i, j] = weight
            if symmetric:
                w[j, i] = weight
        return cls(w)

    @classmethod
    def complete(cls, n: int, weight: float = 1.0) -> "WeightedDigraph":
        w = np.full((n, n), float(weight))
        np.fill_diagonal(w, 0.0)
        return cls(w)


@dataclass(frozen=True)
class SpectrumSummary:
    """Sorted Laplacian eigenvalues with the second-smallest and largest."""

    eigenvalues: np.ndarray
    lambda2: float
    lambdaN: float


@dataclass(frozen=True)
class ReductionBasis:
    """Orthonormal basis of the subspace orthogonal to the all-ones vector.

    ``mbar`` is N x (N-1) with mbar.T @ mbar = I and mbar.T @ ones = 0.
    """

    mbar: np.ndarray

    @property
    def n(self) -> int:
        return self.mbar.shape[0]


def laplacian(g: WeightedDigraph) -> np.ndarray:
    """In-degree Laplacian D - W; every row sums to zero."""
    w = g.weights
    return np.diag(w.sum(axis=1)) - w


def is_balanced(g: WeightedDigraph, tol: float = 1e-12) -> bool:
    """True when the weight matrix is symmetric up to ``tol``."""
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    w = g.weights
    return bool(np.abs(w - w.T).max(initial=0.0) <= tol)


def _reaches_all(send: np.ndarray, root: int) -> bool:
    # send[u, i] True when node u's state is delivered to node i
    n = send.shape[0]
    reached = np.zeros(n, dtype=bool)
    reached[root] = True
    frontier = reached.copy()
    while frontier.any():
        nxt = send[frontier].any(axis=0) & ~reached
        reached |= nxt
        frontier = nxt
    return bool(reached.all())


def has_spanning_tree(g: WeightedDigraph) -> bool:
    """Combinatorial test: some node's state reaches every other node.

    Traversal follows information flow (a positive weights[i, j] lets j's
    state reach i), so this is graph search on the transposed positivity
    pattern, never a spectral threshold.
    """
    adj = g.weights > 0.0
    send = adj.T
    if g.n == 1:
        return True
    if np.array_equal(adj, adj.T):
        # symmetric structure: reachability is the same from every node
        return _reaches_all(send, 0)
    return any(_reaches_all(send, root) for root in range(g.n))


def laplacian_disc_radius(g: WeightedDigraph) -> float:
    """Radius bound 2 * max in-degree covering all Laplacian eigenvalues.

    This is the only spectral statement available for general digraphs; use
    ``spectrum`` for exact values on balanced graphs.
    """
    return float(2.0 * g.in_degrees().max(initial=0.0))


def spectrum(g: WeightedDigraph, tol: float = 1e-12) -> SpectrumSummary:
    """Exact Laplacian spectrum of a balanced graph, sorted ascending.

    lambda2 is positive exactly when the graph is connected.  Tiny negative
    eigenvalues from rounding are clamped to zero (the balanced Laplacian is
    positive semidefinite).  Raises UnsupportedGraphError for non-balanced
    graphs, whose spectra are complex; see ``laplacian_disc_radius`` for the
    bound that remains available there.
    """
    if g.n < 2:
        raise ValueError("spectrum needs at least two nodes")
    if not is_balanced(g, tol):
        raise UnsupportedGraphError(
            "exact spectrum requires a balanced graph; only "
            "laplacian_disc_radius is available for general digraphs"
        )
    ev = np.linalg.eigvalsh(laplacian(g))
    ev = np.where((ev < 0.0) & (ev > -1e-10), 0.0, ev)
    ev.setflags(write=False)
    return SpectrumSummary(ev, float(ev[1]), float(ev[-1]))


def reduction_basis(n: int) -> ReductionBasis:
    """Deterministic orthonormal basis of the complement of span{ones}.

    Columns are the classical Helmert directions: column j balances j equal
    positive entries against one entry of weight -j, normalized.
    """
    if n < 2:
        raise ValueError("reduction basis needs n >= 2")
    m = np.zeros((n, n - 1))
    for j in range(1, n):
        scale = 1.0 / math.sqrt(j * (j + 1))
        m[:j, j - 1] = scale
        m[j, j - 1] = -j * scale
    m.setflags(write=False)
    return ReductionBasis(m)


def reduced_laplacian(g: WeightedDigraph, basis: ReductionBasis) -> np.ndarray:
    """Project the Laplacian onto the disagreement subspace: mbar.T L mbar.

    For balanced graphs the result is symmetric and its eigenvalues are the
    Laplacian eigenvalues with one zero removed.  Non-balanced graphs are
    rejected; their reduced matrix is not symmetric and downstream consumers
    rely on the symmetric eigenstructure.
    """
    if not is_balanced(g):
        raise UnsupportedGraphError("reduced_laplacian requires a balanced graph")
    if basis.n != g.n:
        raise ValueError(f"basis is for {basis.n} nodes, graph has {g.n}")
    return basis.mbar.T @ laplacian(g) @ basis.mbar


def consensus_eigenvalues(g: WeightedDigraph) -> np.ndarray:
    """Laplacian eigenvalues with one zero removed, for any digraph.

    Computed as the eigenvalues of the projection mbar.T L mbar, which is
    exactly the non-consensus block of the Laplacian in the [ones, mbar]
    coordinates (the projection is similarity-exact because mbar spans the
    complement of ones and L annihilates ones).  Complex in general; sorted
    by (real, imag) for determinism.
    """
    basis = reduction_basis(g.n)
    ev = np.linalg.eigvals(basis.mbar.T @ laplacian(g) @ basis.mbar)
    order = np.lexsort((ev.imag, ev.real))
    return ev[order]


def _random_connected_symmetric(rng: np.random.Generator, n: int, edge_prob: float) -> np.ndarray:
    w = np.zeros((n, n))
    order = rng.permutation(n)
    for idx in range(1, n):
        i = int(order[idx])
        j = int(order[rng.integers(0, idx)])
        w[i, j] = w[j, i] = 1.0
    extra = np.triu(rng.random((n, n)) < edge_prob, 1)
    extra = extra | extra.T
    w[extra] = 1.0
    return w


def random_balanced_graph(
    n: int,
    lambda_lo: float,
    lambda_hi: float,
    rng_seed,
    edge_prob: float = 0.3,
    max_tries: int = 200,
) -> WeightedDigraph:
    """Connected balanced graph with nonzero Laplacian spectrum inside a band.

    Samples a random connected symmetric unit-weight graph (spanning tree
    backbone plus independent extra edges) and rescales all weights by one
    factor that places [lambda2, lambdaN] inside [lambda_lo, lambda_hi].
    A sample is rejected when its spectral ratio exceeds the band's ratio;
    after ``max_tries`` rejections a GraphBandError reports the best ratio
    seen.  Deterministic for a fixed seed.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    if not (0.0 < lambda_lo <= lambda_hi):
        raise ValueError("band must satisfy 0 < lambda_lo <= lambda_hi")
    rng = np.random.default_rng(rng_seed)
    band_ratio = lambda_hi / lambda_lo
    best_ratio = math.inf
    for _ in range(max_tries):
        g = WeightedDigraph(_random_connected_symmetric(rng, n, edge_prob))
        summ = spectrum(g)
        if summ.lambda2 <= 0.0:
            continue
        ratio = summ.lambdaN / summ.lambda2
        best_ratio = min(best_ratio, ratio)
        if ratio > band_ratio:
            continue
        # geometric-mean placement leaves equal relative slack on both ends
        scale = math.sqrt((lambda_lo / summ.lambda2) * (lambda_hi / summ.lambdaN))
        scaled = WeightedDigraph(scale * g.weights)
        check = spectrum(scaled)
        if check.lambda2 >= lambda_lo and check.lambdaN <= lambda_hi:
            return scaled
    raise GraphBandError(
        f"no sampled topology fits the band [{lambda_lo}, {lambda_hi}] "
        f"(ratio {band_ratio:.6g}) after {max_tries} tries; "
        f"best spectral ratio found was {best_ratio:.6g}",
        best_ratio,
    )
