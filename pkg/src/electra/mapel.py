"""Positionwise distance between elections, compass elections and 2-D maps.

Elections are compared through their frequency matrices (positions x
candidates).  The positionwise distance matches candidates between the two
elections so that the summed 1-D earth mover's distance between matched
columns is minimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Election, frequency_matrix

COMPASS_KINDS = ("identity", "uniformity", "antagonism", "stratification")
PATH_ALPHAS = (0.25, 0.5, 0.75)


@dataclass(frozen=True)
class CompassSpec:
    """A compass election, or the convex combination ``alpha*a + (1-alpha)*b``."""

    kind: str
    m: int
    other: str | None = None
    alpha: float = 1.0

    def __post_init__(self):
        for k in (self.kind, self.other):
            if k is not None and k not in COMPASS_KINDS:
                raise ValueError(f"unknown compass election {k!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.m < 1:
            raise ValueError("m must be positive")
        if "stratification" in (self.kind, self.other) and self.m % 2:
            raise ValueError("stratification needs an even number of candidates")

    @classmethod
    def path(cls, kind_a: str, kind_b: str, alpha: float, m: int) -> "CompassSpec":
        return cls(kind=kind_a, m=m, other=kind_b, alpha=alpha)

    @property
    def label(self) -> str:
        if self.other is None:
            return f"{self.kind}_{self.m}"
        return f"{self.kind}-{self.other}@{self.alpha:g}_{self.m}"


def _base_matrix(kind: str, m: int) -> np.ndarray:
    if kind == "identity":
        return np.eye(m)
    if kind == "uniformity":
        return np.full((m, m), 1.0 / m)
    if kind == "antagonism":
        F = np.zeros((m, m))
        for c in range(m):
            F[c, c] += 0.5
            F[m - 1 - c, c] += 0.5
        return F
    if kind == "stratification":
        h = m // 2
        F = np.zeros((m, m))
        F[:h, :h] = 1.0 / h
        F[h:, h:] = 1.0 / h
        return F
    raise ValueError(f"unknown compass election {kind!r}")


def compass_matrix(spec: CompassSpec) -> np.ndarray:
    """Frequency matrix of a compass election or a path point between two.

    For paths, the second endpoint's columns are first rearranged to best
    match the first endpoint, then the two matrices are mixed.
    """
    A = _base_matrix(spec.kind, spec.m)
    if spec.other is None:
        return A
    B = _base_matrix(spec.other, spec.m)
    B = B[:, optimal_matching(A, B)[1]]
    return spec.alpha * A + (1.0 - spec.alpha) * B


def emd_1d(p: np.ndarray, q: np.ndarray) -> float:
    """Earth mover's distance between two distributions over positions ``0..m-1``
    with unit distance between neighbouring positions."""
    return float(np.abs(np.cumsum(np.asarray(p) - np.asarray(q))).sum())


def emd_cost_matrix(F: np.ndarray, G: np.ndarray) -> np.ndarray:
    """``C[i, j]`` = EMD between column ``i`` of ``F`` and column ``j`` of ``G``."""
    cf = np.cumsum(F, axis=0)
    cg = np.cumsum(G, axis=0)
    return np.abs(cf[:, :, None] - cg[:, None, :]).sum(axis=0)


def optimal_matching(F: np.ndarray, G: np.ndarray) -> tuple[float, np.ndarray]:
    """Minimum summed column EMD and the matching ``sigma`` (column ``c`` of ``F``
    is matched to column ``sigma[c]`` of ``G``)."""
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    if F.shape != G.shape or F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise ValueError(f"frequency matrices differ in shape: {F.shape} vs {G.shape}")
    C = emd_cost_matrix(F, G)
    rows, cols = linear_sum_assignment(C)
    sigma = np.empty(len(rows), dtype=np.intp)
    sigma[rows] = cols
    return float(C[rows, cols].sum()), sigma


def _as_matrix(x) -> np.ndarray:
    if isinstance(x, Election):
        return frequency_matrix(x)
    if isinstance(x, CompassSpec):
        return compass_matrix(x)
    return np.asarray(x, dtype=float)


def positionwise_distance(F, G) -> float:
    """Positionwise distance between two elections or frequency matrices."""
    return optimal_matching(_as_matrix(F), _as_matrix(G))[0]


def diameter(m: int) -> float:
    """Closed-form distance between identity and uniformity, ``(m^2 - 1) / 3``."""
    return (m * m - 1) / 3


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple[str, ...]
    d: np.ndarray
    tags: tuple[str | None, ...] | None = None

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] != len(self.labels):
            raise ValueError("distance matrix shape does not match labels")
        if not np.allclose(d, d.T, atol=1e-9, rtol=0) or np.any(np.diag(d) != 0) or np.any(d < 0):
            raise ValueError("distance matrix must be symmetric, nonnegative, zero diagonal")

    def group_averages(self) -> dict[tuple[str, str], float]:
        """Average distance between elements of every pair of tags.

        Within one tag the average runs over distinct pairs.
        """
        if self.tags is None:
            return {}
        tags = np.array([t if t is not None else "" for t in self.tags], dtype=object)
        names = sorted({t for t in self.tags if t is not None})
        out = {}
        for i, a in enumerate(names):
            ia = np.flatnonzero(tags == a)
            for b in names[i:]:
                ib = np.flatnonzero(tags == b)
                block = self.d[np.ix_(ia, ib)]
                if a == b:
                    if len(ia) < 2:
                        continue
                    val = block[np.triu_indices(len(ia), 1)].mean()
                else:
                    val = block.mean()
                out[(a, b)] = float(val)
        return out


def compass_specs(m: int, paths: bool = True) -> list[CompassSpec]:
    """The four compass elections (stratification only for even ``m``) plus
    path points between every pair at ``alpha`` in 0.25, 0.5, 0.75."""
    kinds = [k for k in COMPASS_KINDS if not (k == "stratification" and m % 2)]
    specs = [CompassSpec(k, m) for k in kinds]
    if paths:
        for i, a in enumerate(kinds):
            for b in kinds[i + 1:]:
                specs += [CompassSpec.path(a, b, alpha, m) for alpha in PATH_ALPHAS]
    return specs


def distance_matrix(
    elections: Sequence,
    labels: Sequence[str] | None = None,
    tags: Sequence[str | None] | None = None,
    include_compass: bool = False,
) -> DistanceMatrix:
    """Pairwise positionwise distances.

    Parameters
    ----------
    elections : sequence of Election, CompassSpec or array
        All must have the same number of candidates.
    labels, tags : sequences, optional
        Identifiers and dataset tags, one per input.
    include_compass : bool
        Append the compass elections and path points (tagged ``compass``).
    """
    mats = [_as_matrix(x) for x in elections]
    if not mats:
        raise ValueError("no elections given")
    sizes = {M.shape for M in mats}
    if len(sizes) != 1:
        raise ValueError(f"elections have mixed numbers of candidates: {sorted(s[0] for s in sizes)}")
    labels = list(labels) if labels is not None else [f"e{i}" for i in range(len(mats))]
    tags = list(tags) if tags is not None else [None] * len(mats)
    if include_compass:
        m = mats[0].shape[0]
        for spec in compass_specs(m):
            mats.append(compass_matrix(spec))
            labels.append(spec.label)
            tags.append("compass")
    k = len(mats)
    cums = [np.cumsum(M, axis=0) for M in mats]
    d = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            C = np.abs(cums[i][:, :, None] - cums[j][:, None, :]).sum(axis=0)
            r, c = linear_sum_assignment(C)
            d[i, j] = d[j, i] = C[r, c].sum()
    return DistanceMatrix(tuple(labels), d, tuple(tags))


# --- Embedding -----------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddedMap:
    labels: tuple[str, ...]
    points: np.ndarray
    stress: float


def normalized_stress(points: np.ndarray, d: np.ndarray) -> float:
    """``sqrt(sum (|p_i - p_j| - d_ij)^2 / sum d_ij^2)`` over pairs ``i < j``."""
    iu = np.triu_indices(len(d), 1)
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((diff ** 2).sum(-1))[iu]
    target = np.asarray(d)[iu]
    denom = float((target ** 2).sum())
    if denom == 0.0:
        return float(np.sqrt((dist ** 2).sum()))
    return float(np.sqrt(((dist - target) ** 2).sum() / denom))


def embed_map(
    dm: DistanceMatrix | np.ndarray,
    iterations: int = 1000,
    seed: int | None = 0,
    repulsion: float = 0.05,
) -> EmbeddedMap:
    """Force-directed 2-D layout whose Euclidean distances track ``dm``.

    Every pair is joined by a spring pulling with force ``|p_i - p_j| - d_ij``;
    a ``1/|p_i - p_j|`` repulsion separates coincident points early on and
    fades with the temperature.  The temperature caps each step and cools
    geometrically over ``iterations``.
    """
    if isinstance(dm, DistanceMatrix):
        labels, d = dm.labels, np.asarray(dm.d, dtype=float)
    else:
        d = np.asarray(dm, dtype=float)
        labels = tuple(f"e{i}" for i in range(len(d)))
    k = len(d)
    rng = np.random.default_rng(seed)
    pts = rng.random((k, 2))
    if k < 2:
        return EmbeddedMap(tuple(labels), pts, 0.0)
    scale = float(d.max()) or 1.0
    t0 = scale
    t_end = 1e-9 * scale
    cool = (t_end / t0) ** (1.0 / max(iterations - 1, 1))
    t = t0
    lr = 1.0 / (2.0 * (k - 1))
    eye = np.eye(k, dtype=bool)
    for _ in range(iterations):
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff ** 2).sum(-1))
        dist[eye] = 1.0
        tiny = dist < 1e-12 * scale
        dist = np.where(tiny, 1e-12 * scale, dist)
        unit = diff / dist[:, :, None]
        spring = (dist - d)
        spring[eye] = 0.0
        push = repulsion * (t / t0) * scale * scale / dist
        push[eye] = 0.0
        force = ((push - spring)[:, :, None] * unit).sum(axis=1)
        step = lr * force
        norms = np.sqrt((step ** 2).sum(-1))
        over = norms > t
        step[over] *= (t / norms[over])[:, None]
        pts = pts + step
        t *= cool
    pts = pts - pts.mean(axis=0)
    return EmbeddedMap(tuple(labels), pts, normalized_stress(pts, d))


def classical_mds(d: np.ndarray, dim: int = 2) -> np.ndarray:
    """Torgerson scaling; exact for Euclidean-embeddable distance matrices."""
    d = np.asarray(d, dtype=float)
    k = len(d)
    J = np.eye(k) - np.full((k, k), 1.0 / k)
    B = -0.5 * J @ (d ** 2) @ J
    w, V = np.linalg.eigh(B)
    idx = np.argsort(w)[::-1][:dim]
    return V[:, idx] * np.sqrt(np.clip(w[idx], 0, None))
