"""Sampling experiments on actual coefficient sequences.

The countable side of the dichotomy comes from sample_and_cluster: sorted
moduli |mu_hat(r n)| split at gaps collapse into a handful of clusters that
match the predicted catalogue when r lies in the number field.  The interval
side comes from interval_fill_test: for generic real r the same moduli fill
a whole interval and the largest gap shrinks with the sample size.  The
remaining operations measure the real-line limit set, equidistribution of
scaled sequences, translated (complex) coefficients, and the decay of the
transform for non-Pisot bases.

All bulk evaluation uses the float64 fast path of the transform; reports at
scale carry a precise-mode spot validation so that heuristic errors cannot
silently reshape clusters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .errors import PrecisionExhaustedError
from .pisot import FieldElement, PisotNumber, RingElement, embed
from .transform import mu_hat, mu_hat_fast

# reports switch from per-point certified evaluation to the float64 path
# above this many samples
FAST_PATH_THRESHOLD = 10**4
# size of the precise-mode subsample that validates the fast path
SPOT_CHECK_SIZE = 10**3
# most witnesses kept per cluster in reports
MAX_WITNESSES = 10


@dataclass(frozen=True)
class Cluster:
    """One gap-separated group of retained sample values."""

    center: float
    min: float
    max: float
    count: int
    witnesses: tuple


@dataclass(frozen=True)
class ClusterReport:
    """Clustered moduli of sampled values, with optional candidate matching.

    matches holds one row per cluster: (cluster index, candidate id,
    |center - predicted|), with id None when no candidate lies within the
    matching tolerance.  empty_retention flags the legal outcome that no
    sample reached the floor eta.
    """

    r: float
    N: int
    eta: float
    gap: float
    n_min: int
    seed: int
    clusters: tuple
    matches: tuple
    empty_retention: bool


@dataclass(frozen=True)
class IntervalEstimate:
    """Range statistics of retained values: [lower, upper], the largest gap
    between sorted neighbours, and that gap relative to the range width."""

    lower: float
    upper: float
    count: int
    max_gap: float
    max_gap_rel: float


@dataclass(frozen=True)
class TranslatedReport:
    """Grid-hash clustering of complex translated coefficients, plus the
    angular-coverage statistic (occupied fraction of 64 direction bins at
    the modal radius band) that quantifies circle filling."""

    r: float
    gamma: float
    N: int
    eta: float
    seed: int
    cluster_count: int
    clusters: tuple
    coverage: float
    dominant_radius: float
    empty_retention: bool


@dataclass(frozen=True)
class BlockMaximum:
    """Largest |transform| over one dyadic index block [start, stop)."""

    k: int
    start: int
    stop: int
    value: float


def _as_real(x) -> float:
    if isinstance(x, (RingElement, FieldElement)):
        return float(embed(x if isinstance(x, FieldElement) else x.to_field(), 1))
    if isinstance(x, Fraction):
        return x.numerator / x.denominator
    return float(x)


def _values_for(P, r_val: float, ns: np.ndarray, eta: float) -> np.ndarray:
    """Transform values at r*n for the index array ns, fast path above the
    size threshold with a precise spot validation, per-point otherwise."""
    ts = r_val * ns.astype(np.float64)
    if len(ns) <= FAST_PATH_THRESHOLD:
        return np.array([float(mu_hat(P, float(t)).value) for t in ts])
    vals = mu_hat_fast(P, ts)
    idx = np.unique(np.linspace(0, len(ts) - 1, SPOT_CHECK_SIZE).astype(np.int64))
    tol = max(eta / 10, 1e-6) if eta > 0 else 1e-6
    worst = 0.0
    for i in idx:
        precise = float(mu_hat(P, float(ts[i])).value)
        worst = max(worst, abs(precise - float(vals[i])))
    if worst >= tol:
        raise PrecisionExhaustedError(
            f"fast-path spot check deviates by {worst:.3e}, over the "
            f"validation threshold {tol:.3e}"
        )
    return vals


def _gap_split(order: np.ndarray, sorted_vals: np.ndarray, gap: float):
    """Index groups of the sorted values, split where neighbours differ by
    more than gap."""
    groups = []
    start = 0
    for i in range(1, len(sorted_vals)):
        if sorted_vals[i] - sorted_vals[i - 1] > gap:
            groups.append((start, i))
            start = i
    groups.append((start, len(sorted_vals)))
    return groups


def sample_and_cluster(P: PisotNumber, r, N: int, eta: float,
                       gap: float = 1e-3, n_min: Optional[int] = None,
                       candidates: Optional[Sequence] = None,
                       match_tol: float = 1e-2, seed: int = 0) -> ClusterReport:
    """Cluster the retained moduli |mu_hat(r n)|, n_min <= n <= N.

    Only the tail n >= n_min (default N/2) enters, approximating limit
    points; values below eta are dropped; sorted values split at gaps
    larger than `gap`.  When a candidate list is given, each cluster is
    matched to the candidate of closest predicted value within match_tol.
    """
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    if gap <= 0:
        raise ValueError("gap must be positive")
    if n_min is None:
        n_min = N // 2
    if not 0 <= n_min < N:
        raise ValueError("need 0 <= n_min < N")
    r_val = _as_real(r)
    ns = np.arange(n_min, N + 1, dtype=np.int64)
    vals = np.abs(_values_for(P, r_val, ns, eta))

    keep = vals >= eta
    report = dict(r=r_val, N=N, eta=eta, gap=gap, n_min=n_min, seed=seed)
    if not keep.any():
        return ClusterReport(clusters=(), matches=(), empty_retention=True,
                             **report)
    kept_ns, kept_vals = ns[keep], vals[keep]
    order = np.argsort(kept_vals, kind="stable")
    sorted_vals = kept_vals[order]
    sorted_ns = kept_ns[order]

    clusters = []
    for a, b in _gap_split(order, sorted_vals, gap):
        members = sorted_ns[a:b]
        witnesses = tuple(int(n) for n in np.sort(members)[:MAX_WITNESSES])
        clusters.append(Cluster(
            center=float(np.mean(sorted_vals[a:b])),
            min=float(sorted_vals[a]),
            max=float(sorted_vals[b - 1]),
            count=int(b - a),
            witnesses=witnesses,
        ))

    matches = []
    if candidates is not None:
        for i, cluster in enumerate(clusters):
            best_id, best_dist = None, None
            for cand in candidates:
                dist = abs(cluster.center - float(cand.predicted))
                if best_dist is None or dist < best_dist:
                    best_id, best_dist = cand.id, dist
            if best_dist is not None and best_dist <= match_tol:
                matches.append((i, best_id, best_dist))
            else:
                matches.append((i, None, best_dist))

    return ClusterReport(clusters=tuple(clusters), matches=tuple(matches),
                         empty_retention=False, **report)


def _range_stats(values: np.ndarray) -> IntervalEstimate:
    values = np.sort(values)
    count = len(values)
    if count == 0:
        return IntervalEstimate(0.0, 0.0, 0, math.inf, math.inf)
    lower, upper = float(values[0]), float(values[-1])
    if count == 1:
        return IntervalEstimate(lower, upper, 1, 0.0, 0.0)
    max_gap = float(np.max(np.diff(values)))
    width = upper - lower
    rel = max_gap / width if width > 0 else 0.0
    return IntervalEstimate(lower, upper, count, max_gap, rel)


def interval_fill_test(P: PisotNumber, r, N: int,
                       eta: float = 0.0) -> IntervalEstimate:
    """Range and largest-gap statistics of |mu_hat(r n)| over n in [N/2, N].

    A small max_gap evidences interval filling (the generic-r regime); a
    large one evidences the sparse countable regime.
    """
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    r_val = _as_real(r)
    ns = np.arange(N // 2, N + 1, dtype=np.int64)
    vals = np.abs(_values_for(P, r_val, ns, eta))
    return _range_stats(vals[vals >= eta])


def estimate_J(theta, T: float = 1e4,
               grid_step: Optional[float] = None) -> IntervalEstimate:
    """Signed-value range of the transform on a uniform grid over [T/2, T].

    The grid step never exceeds 1/(4C) where C = 2 pi theta/(theta-1)
    bounds the derivative, so no swing between samples can be missed by
    more than a quarter period.
    """
    th = float(theta.theta) if isinstance(theta, PisotNumber) else float(theta)
    if th <= 1:
        raise ValueError("theta must exceed 1")
    c_bound = 2 * math.pi * th / (th - 1)
    cap = 1 / (4 * c_bound)
    if grid_step is None:
        grid_step = cap
    if not 0 < grid_step <= cap:
        raise ValueError(f"grid_step must lie in (0, {cap:.6g}]")
    ts = np.arange(T / 2, T, grid_step)
    vals = mu_hat_fast(theta, ts)
    return _range_stats(vals)


def discrepancy(alpha, x: Sequence) -> float:
    """Star discrepancy of {alpha * x_i mod 1} for an increasing sequence x.

    Integer sequences take an exact big-integer route (alpha as an exact
    binary fraction, residues by modular arithmetic), immune to the
    catastrophic rounding of alpha*x mod 1 for huge x.
    """
    n = len(x)
    if n == 0:
        raise ValueError("x must be non-empty")
    xs = list(x)
    for a, b in zip(xs, xs[1:]):
        if b <= a:
            raise ValueError("x must be strictly increasing")
    if all(isinstance(v, int) for v in xs):
        frac = Fraction(alpha)
        p, q = frac.numerator, frac.denominator
        u = np.sort(np.array([((p * v) % q) / q for v in xs], dtype=np.float64))
    else:
        u = np.sort(np.mod(float(alpha) * np.asarray(xs, dtype=np.float64), 1.0))
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(i / n - u, u - (i - 1) / n)))


def _grid_clusters(points: np.ndarray, cell: float):
    """Union-find over occupied grid cells (8-neighbour adjacency)."""
    keys = {}
    for pt in points:
        key = (math.floor(pt.real / cell), math.floor(pt.imag / cell))
        entry = keys.get(key)
        if entry is None:
            keys[key] = [pt, 1]
        else:
            entry[0] += pt
            entry[1] += 1

    parent = {k: k for k in keys}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for (a, b) in list(keys):
        for da in (-1, 0, 1):
            for db in (-1, 0, 1):
                other = (a + da, b + db)
                if other != (a, b) and other in keys:
                    ra, rb = find((a, b)), find(other)
                    if ra != rb:
                        parent[ra] = rb

    sums: dict = {}
    for k, (total, count) in keys.items():
        root = find(k)
        if root in sums:
            sums[root][0] += total
            sums[root][1] += count
        else:
            sums[root] = [total, count]
    out = [(total / count, count) for total, count in sums.values()]
    out.sort(key=lambda c: (-c[1], c[0].real, c[0].imag))
    return out


def translated_sample(P: PisotNumber, r, gamma, N: int, eta: float,
                      gap: float = 1e-3, n_min: Optional[int] = None,
                      seed: int = 0) -> TranslatedReport:
    """Cluster the complex translated values mu_hat(r n) e^(2 pi i gamma n).

    Clustering hashes points to a square grid of side `gap` and merges
    adjacent occupied cells; finitely many clusters point to the countable
    regime, while the angular-coverage statistic (fraction of 64 direction
    bins occupied within the modal radius band of 32) detects circle fill.
    """
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    if gap <= 0:
        raise ValueError("gap must be positive")
    if n_min is None:
        n_min = N // 2
    if not 0 <= n_min < N:
        raise ValueError("need 0 <= n_min < N")
    r_val = _as_real(r)
    g_val = _as_real(gamma)
    ns = np.arange(n_min, N + 1, dtype=np.int64)
    vals = _values_for(P, r_val, ns, eta)
    phases = np.exp(2j * np.pi * np.mod(g_val * ns.astype(np.float64), 1.0))
    points = vals * phases

    keep = np.abs(points) >= eta
    base = dict(r=r_val, gamma=g_val, N=N, eta=eta, seed=seed)
    if not keep.any():
        return TranslatedReport(cluster_count=0, clusters=(), coverage=0.0,
                                dominant_radius=0.0, empty_retention=True,
                                **base)
    pts = points[keep]
    clusters = _grid_clusters(pts, gap)

    radii = np.abs(pts)
    hist, edges = np.histogram(radii, bins=32)
    modal = int(np.argmax(hist))
    lo, hi = edges[modal], edges[modal + 1]
    band = pts[(radii >= lo) & (radii <= hi)]
    angles = np.angle(band)
    bins = np.clip(((angles + np.pi) / (2 * np.pi) * 64).astype(int), 0, 63)
    coverage = len(np.unique(bins)) / 64

    stored = tuple(((c.real, c.imag), count) for c, count in clusters)
    return TranslatedReport(cluster_count=len(clusters), clusters=stored,
                            coverage=float(coverage),
                            dominant_radius=float((lo + hi) / 2),
                            empty_retention=False, **base)


def decay_check(theta, N: int) -> tuple:
    """Per-dyadic-block maxima of |mu_hat(n)| for n in [2^k, 2^(k+1)) up
    to N; a decreasing trend witnesses decay (non-Pisot bases), a positive
    floor witnesses non-vanishing (Pisot bases)."""
    th = float(theta.theta) if isinstance(theta, PisotNumber) else float(theta)
    if th <= 1:
        raise ValueError("theta must exceed 1")
    if N < 2:
        raise ValueError("N must be at least 2")
    blocks = []
    k = 0
    while 2 ** (k + 1) - 1 <= N:
        ns = np.arange(2**k, 2 ** (k + 1), dtype=np.int64)
        vals = np.abs(mu_hat_fast(theta, ns.astype(np.float64)))
        blocks.append(BlockMaximum(k=k, start=2**k, stop=2 ** (k + 1),
                                   value=float(np.max(vals))))
        k += 1
    return tuple(blocks)
