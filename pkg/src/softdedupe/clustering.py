"""Threshold-and-group clustering with automatic threshold and refinement."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .similarity import CompositeSimilarity

# refinement is an exhaustive search; clusters beyond this size are skipped
REFINE_SIZE_CAP = 2000


class DisjointSet:
    """Union-find with path compression and union by rank."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, u: int) -> int:
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return
        if self.rank[ru] < self.rank[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1


@dataclass(frozen=True)
class ThresholdedGraph:
    """Record graph with an edge wherever similarity >= tau."""

    n: int
    tau: float
    adjacency: tuple[frozenset[int], ...]

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]


@dataclass(frozen=True)
class ClusterSet:
    """A partition of record indices 0..n-1 into disjoint clusters."""

    clusters: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for c in self.clusters:
            if not c:
                raise ValueError("empty cluster")
            if seen & set(c):
                raise ValueError("clusters are not disjoint")
            seen.update(c)
        if seen != set(range(len(seen))):
            raise ValueError("clusters do not cover a contiguous index range")

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.clusters)

    @property
    def c(self) -> int:
        return len(self.clusters)

    def labels(self) -> np.ndarray:
        lab = np.empty(self.n, dtype=np.int64)
        for cid, members in enumerate(self.clusters):
            lab[list(members)] = cid
        return lab

    @staticmethod
    def from_labels(labels: Sequence[int]) -> "ClusterSet":
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return ClusterSet.from_groups(groups.values())

    @staticmethod
    def from_groups(groups: Iterable[Iterable[int]]) -> "ClusterSet":
        clusters = sorted((tuple(sorted(g)) for g in groups), key=lambda c: c[0])
        return ClusterSet(clusters=tuple(clusters))


@dataclass(frozen=True)
class HStatistics:
    """Per-record maximum similarity and its summary statistics."""

    values: np.ndarray
    mean: float
    std: float
    max: float


def _offdiag_dense(sim: CompositeSimilarity) -> np.ndarray:
    dense = sim.dense()
    np.fill_diagonal(dense, 0.0)
    return dense


def h_statistics(sim: CompositeSimilarity) -> HStatistics:
    """H_i = max over j != i of SIM_{i,j}; absent entries count as 0."""
    if sim.n < 2:
        raise ValueError("need at least two records")
    h = _offdiag_dense(sim).max(axis=1)
    return HStatistics(
        values=h, mean=float(h.mean()), std=float(h.std(ddof=1)), max=float(h.max())
    )


def threshold_from_h(h: np.ndarray) -> float:
    """mu(H) + sigma(H), falling back to mu(H) when that reaches max(H)."""
    h = np.asarray(h, dtype=float)
    mean = float(h.mean())
    tau = mean + float(h.std(ddof=1))
    return tau if tau < float(h.max()) else mean


def auto_threshold(sim: CompositeSimilarity) -> float:
    """Automatic threshold from the per-record maximum similarities."""
    return threshold_from_h(h_statistics(sim).values)


def nontrivial_interval(sim: CompositeSimilarity) -> tuple[float, float]:
    """Half-open (min, max] off-diagonal similarity range for useful taus."""
    offdiag = _offdiag_dense(sim)
    mask = ~np.eye(sim.n, dtype=bool)
    return float(offdiag[mask].min()), float(offdiag[mask].max())


def threshold(sim: CompositeSimilarity, tau: float) -> ThresholdedGraph:
    """Link every record pair whose similarity is >= tau."""
    lo, hi = nontrivial_interval(sim)
    if not lo < tau <= hi:
        warnings.warn(
            f"tau={tau} outside the nontrivial interval ({lo}, {hi}]; "
            "clustering will be trivial",
            stacklevel=2,
        )
    dense = _offdiag_dense(sim)
    neighbors = [frozenset(np.flatnonzero(row >= tau).tolist()) for row in dense]
    return ThresholdedGraph(n=sim.n, tau=tau, adjacency=tuple(neighbors))


def graph_from_edges(
    n: int, edges: Iterable[tuple[int, int]], tau: float = 0.0
) -> ThresholdedGraph:
    """Build a record graph directly from an undirected edge list."""
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        if i == j:
            continue
        neighbors[i].add(j)
        neighbors[j].add(i)
    return ThresholdedGraph(
        n=n, tau=tau, adjacency=tuple(frozenset(nb) for nb in neighbors)
    )


def group(graph: ThresholdedGraph) -> ClusterSet:
    """Connected components of the thresholded graph."""
    ds = DisjointSet(graph.n)
    for i, nb in enumerate(graph.adjacency):
        for j in nb:
            if j > i:
                ds.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(graph.n):
        groups.setdefault(ds.find(i), []).append(i)
    return ClusterSet.from_groups(groups.values())


def strength(cluster: Sequence[int], graph: ThresholdedGraph) -> float:
    """Fraction of linked pairs inside the cluster; 0 for singletons."""
    p = len(cluster)
    if p < 2:
        return 0.0
    edges = 0
    members = list(cluster)
    for idx, i in enumerate(members):
        nb = graph.adjacency[i]
        edges += sum(1 for j in members[idx + 1 :] if j in nb)
    return edges / comb(p, 2)


def _subclusters(members: Sequence[int], graph: ThresholdedGraph) -> list[list[int]]:
    """Connected components of the subgraph induced by `members`."""
    member_set = set(members)
    seen: set[int] = set()
    comps = []
    for start in members:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in graph.adjacency[u]:
                if v in member_set and v not in seen:
                    seen.add(v)
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def needs_refinement(cluster: Sequence[int], graph: ThresholdedGraph) -> bool:
    """True when removing some single record disconnects the remainder."""
    members = sorted(cluster)
    if len(members) <= 2:
        return False
    for removed in members:
        rest = [r for r in members if r != removed]
        if len(_subclusters(rest, graph)) > 1:
            return True
    return False


def refine_cluster(cluster: Sequence[int], graph: ThresholdedGraph) -> list[list[int]]:
    """Split an unstable cluster by removing and re-attaching one record.

    The removed record maximizes the mean strength of the remaining
    subclusters; it is then re-added to the subcluster maximizing the
    strength of the union. Ties pick the lowest record / subcluster index.
    """
    members = sorted(cluster)
    if not needs_refinement(members, graph):
        raise ValueError("refine_cluster called on a stable cluster")
    best_score = -1.0
    best_removed = None
    best_subs: list[list[int]] = []
    for removed in members:
        rest = [r for r in members if r != removed]
        subs = _subclusters(rest, graph)
        score = sum(strength(s, graph) for s in subs) / len(subs)
        if score > best_score:
            best_score, best_removed, best_subs = score, removed, subs
    best_join = max(
        range(len(best_subs)),
        key=lambda j: (strength(best_subs[j] + [best_removed], graph), -j),
    )
    result = [list(s) for s in best_subs]
    result[best_join] = sorted(result[best_join] + [best_removed])
    return result


def refine_all(
    clusters: ClusterSet, graph: ThresholdedGraph, iterate: bool = False
) -> ClusterSet:
    """Replace every unstable cluster by its refinement.

    By default one pass is made; with iterate=True the pass repeats until
    no cluster is unstable.
    """
    current = [list(c) for c in clusters.clusters]
    while True:
        out: list[list[int]] = []
        changed = False
        for cluster in current:
            if len(cluster) > REFINE_SIZE_CAP:
                warnings.warn(
                    f"skipping refinement of cluster with {len(cluster)} records "
                    f"(cap {REFINE_SIZE_CAP})",
                    stacklevel=2,
                )
                out.append(cluster)
                continue
            if needs_refinement(cluster, graph):
                pieces = refine_cluster(cluster, graph)
                out.extend(pieces)
                # a refinement returning the cluster intact is a fixed point
                if len(pieces) > 1:
                    changed = True
            else:
                out.append(cluster)
        current = out
        if not iterate or not changed:
            break
    return ClusterSet.from_groups(current)


def write_clusters(clusters: ClusterSet, path: str) -> None:
    """Write 'record_index cluster_id' lines with dense 0-based cluster ids."""
    labels = clusters.labels()
    with open(path, "w", encoding="utf-8") as fh:
        for i, lab in enumerate(labels):
            fh.write(f"{i} {lab}\n")


def read_clusters(path: str) -> ClusterSet:
    """Read a cluster assignment file written by write_clusters."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            idx, lab = line.split()
            pairs.append((int(idx), lab))
    pairs.sort()
    if [i for i, _ in pairs] != list(range(len(pairs))):
        raise ValueError("cluster file does not cover records 0..n-1 exactly once")
    return ClusterSet.from_labels([lab for _, lab in pairs])
