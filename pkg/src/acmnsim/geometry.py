"""Physical link-distance assignment and distance-derived network geometry.

Distances are drawn from a Gaussian KDE fitted to the NSFNET link lengths
(truncated-resampled to stay above one span), optionally rescaled to a target
mean, and quantized to integer 80 km span counts. The normalized network
diameter D (max over node pairs of the km shortest-path distance divided by
its mean) parameterizes topology ellipticity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .topology import LogicalTopology

DEFAULT_SPAN_KM = 80.0


class GeometryError(ValueError):
    pass


class RejectionBudgetExhausted(GeometryError):
    """No distance realisation met the ellipticity target within the budget."""


@dataclass(frozen=True)
class DistancePdf:
    """Sampleable continuous density over link distances (Gaussian KDE)."""

    sample_points: tuple[float, ...]
    bandwidth: float
    min_km: float

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """i.i.d. draws; values <= min_km are resampled (truncation)."""
        out = np.empty(size)
        todo = size
        while todo:
            centers = rng.choice(self.sample_points, size=todo)
            vals = centers + self.bandwidth * rng.standard_normal(todo)
            ok = vals > self.min_km
            n_ok = int(ok.sum())
            out[size - todo:size - todo + n_ok] = vals[ok]
            todo -= n_ok
        return out


def fit_kde(samples, min_km: float = DEFAULT_SPAN_KM) -> DistancePdf:
    """Gaussian KDE with Silverman's rule-of-thumb bandwidth."""
    s = np.asarray(samples, dtype=float)
    if s.size < 2:
        raise GeometryError("need at least 2 samples to fit a density")
    if np.any(s <= 0):
        raise GeometryError("link distance samples must be positive")
    std = s.std(ddof=1)
    q75, q25 = np.percentile(s, [75, 25])
    spread = min(std, (q75 - q25) / 1.34)
    if spread <= 0:
        raise GeometryError("degenerate sample set (zero spread)")
    bw = 0.9 * spread * s.size ** (-0.2)
    return DistancePdf(tuple(float(x) for x in s), float(bw), float(min_km))


@dataclass(frozen=True)
class PhysicalTopology:
    logical: LogicalTopology
    link_km: tuple[float, ...]
    link_spans: tuple[int, ...]

    @property
    def mean_link_km(self) -> float:
        return float(np.mean(self.link_km))


@dataclass(frozen=True)
class EllipticityTarget:
    d_target: float
    tolerance: float = 0.02
    mean_node_pair_km: float = 3070.0

    def __post_init__(self):
        if self.d_target < 1.0:
            raise GeometryError("normalized diameter target must be >= 1")
        if self.tolerance <= 0:
            raise GeometryError("tolerance must be positive")


def spans_for(km: float, span_km: float = DEFAULT_SPAN_KM) -> int:
    """Quantize a link length to whole spans: nearest integer, 1-span floor."""
    return max(1, round(km / span_km))


def make_physical(t: LogicalTopology, link_km, span_km: float = DEFAULT_SPAN_KM) -> PhysicalTopology:
    km = tuple(float(x) for x in link_km)
    if len(km) != t.link_count:
        raise GeometryError("link_km does not match link count")
    if any(x <= 0 for x in km):
        raise GeometryError("all link distances must be positive")
    return PhysicalTopology(t, km, tuple(spans_for(x, span_km) for x in km))


def assign_distances(t: LogicalTopology, pdf: DistancePdf, seed: int,
                     span_km: float = DEFAULT_SPAN_KM) -> PhysicalTopology:
    """One i.i.d. distance draw per link; deterministic in seed."""
    rng = np.random.default_rng(seed)
    return make_physical(t, pdf.draw(rng, t.link_count), span_km)


def scale_to_mean(pt: PhysicalTopology, target_mean_km: float,
                  span_km: float = DEFAULT_SPAN_KM) -> PhysicalTopology:
    """Uniformly rescale link distances so their mean equals target_mean_km."""
    if target_mean_km <= 0:
        raise GeometryError("target mean must be positive")
    factor = target_mean_km / pt.mean_link_km
    return make_physical(pt.logical, [d * factor for d in pt.link_km], span_km)


def _pair_distances(pt: PhysicalTopology) -> np.ndarray:
    n = pt.logical.node_count
    rows = []
    cols = []
    vals = []
    for (a, b), d in zip(pt.logical.links, pt.link_km):
        rows += [a, b]
        cols += [b, a]
        vals += [d, d]
    m = csr_matrix((vals, (rows, cols)), shape=(n, n))
    sp = dijkstra(m, directed=False)
    iu = np.triu_indices(n, 1)
    d = sp[iu]
    if not np.all(np.isfinite(d)):
        raise GeometryError("graph is disconnected")
    return d


def mean_node_pair_km(pt: PhysicalTopology) -> float:
    return float(_pair_distances(pt).mean())


def normalized_diameter(pt: PhysicalTopology) -> float:
    """Max shortest-path km over node pairs divided by the mean over pairs."""
    d = _pair_distances(pt)
    return float(d.max() / d.mean())


def assign_with_ellipticity(
    t: LogicalTopology,
    target: EllipticityTarget,
    pdf: DistancePdf,
    seed: int,
    max_attempts: int = 100_000,
    span_km: float = DEFAULT_SPAN_KM,
) -> PhysicalTopology:
    """Rejection-sample a distance realisation with the requested diameter.

    Draws link distances from `pdf` until |D - d_target| <= tolerance, then
    rescales so the mean node-pair distance equals target.mean_node_pair_km
    (D is invariant under uniform scaling, so acceptance is preserved).
    Raises RejectionBudgetExhausted after max_attempts rejected draws.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        km = pdf.draw(rng, t.link_count)
        pt = make_physical(t, km, span_km)
        pair = _pair_distances(pt)
        d_norm = pair.max() / pair.mean()
        if abs(d_norm - target.d_target) <= target.tolerance:
            factor = target.mean_node_pair_km / pair.mean()
            return make_physical(t, km * factor, span_km)
    raise RejectionBudgetExhausted(
        f"no realisation with D={target.d_target}+-{target.tolerance} "
        f"in {max_attempts} attempts for {t.name}")
