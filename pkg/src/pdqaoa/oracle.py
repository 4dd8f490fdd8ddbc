"""Classical ground truth and evaluation metrics.

Exhaustive oracles (subset enumeration, full energy-table scans) validate the
penalty encoding end to end; the approximation ratio weighs sampled solution
sizes against the exact optimum, counting only samples that satisfy the
perfect-domination condition.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .bitstrings import string_to_vertex_set
from .graph import Graph
from .ising import EnergyTable

MAX_ENUM_VERTICES = 24
_CHUNK = 1 << 20


class UndefinedRatioError(ValueError):
    """No sample satisfies the perfect-domination condition."""


@dataclass(frozen=True)
class PdsVerdict:
    is_ds: bool
    is_pds: bool
    witness: tuple[int, int] | None = None  # (vertex, dominator count) for non-PDS

    def __post_init__(self) -> None:
        if self.is_pds and not self.is_ds:
            raise ValueError("a perfect dominating set is a dominating set")


@dataclass(frozen=True)
class RatioReport:
    ratio: float
    n_valid_samples: int
    n_total_samples: int
    opt_size: int


def check_pds(g: Graph, d: Iterable[int]) -> PdsVerdict:
    """Dominating / perfectly-dominating verdict for a vertex subset."""
    members = set()
    for v in d:
        if not (0 <= v < g.vertex_count):
            raise ValueError(f"vertex {v} out of range for {g.vertex_count} vertices")
        members.add(v)
    is_ds = True
    witness = None
    for v in range(g.vertex_count):
        if v in members:
            continue
        dominators = sum(1 for u in g.adjacency[v] if u in members)
        if dominators == 0:
            is_ds = False
        if dominators != 1 and witness is None:
            witness = (v, dominators)
    return PdsVerdict(is_ds=is_ds, is_pds=witness is None, witness=witness)


def brute_force_optimal_pds(g: Graph, max_vertices: int = MAX_ENUM_VERTICES) -> tuple[int, list[tuple[int, ...]]]:
    """Enumerate all 2^|V| subsets; return the minimum PDS size and every
    attaining set.  V itself is vacuously a PDS, so a solution always exists."""
    n = g.vertex_count
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    if n > max_vertices:
        raise ValueError(f"graph with {n} vertices exceeds enumeration limit {max_vertices}")
    neighbor_bits = [np.int64(sum(1 << u for u in g.adjacency[v])) for v in range(n)]
    best_size = n + 1
    best_masks: list[int] = []
    for start in range(0, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        ok = np.ones(masks.shape, dtype=bool)
        for v in range(n):
            in_set = (masks >> v) & 1
            dominators = np.zeros(masks.shape, dtype=np.int64)
            for u in g.adjacency[v]:
                dominators += (masks >> u) & 1
            ok &= (in_set == 1) | (dominators == 1)
        candidates = masks[ok]
        if candidates.size == 0:
            continue
        sizes = np.bitwise_count(candidates)
        local_min = int(sizes.min())
        if local_min < best_size:
            best_size = local_min
            best_masks = [int(m) for m in candidates[sizes == local_min]]
        elif local_min == best_size:
            best_masks.extend(int(m) for m in candidates[sizes == best_size])
    sets = sorted(tuple(v for v in range(n) if (mask >> v) & 1) for mask in best_masks)
    return best_size, sets


def brute_force_ground_states(table: EnergyTable, atol: float = 1e-9) -> tuple[float, list[int]]:
    """Exact global minimum of the energy table and all attaining indices."""
    minimum = float(table.energies.min())
    indices = np.flatnonzero(table.energies <= minimum + atol)
    return minimum, [int(i) for i in indices]


def approximation_ratio(
    counts: Mapping[str, int],
    g: Graph,
    opt_size: int,
    denominator: str = "valid",
) -> RatioReport:
    """opt_size divided by the count-weighted mean size of sampled sets that
    are perfect dominating sets; non-PDS samples are excluded.

    ``denominator="all"`` exposes the literal all-samples reading (which can
    push the ratio above 1); the default conditions on valid samples only.
    """
    if denominator not in ("valid", "all"):
        raise ValueError(f"denominator must be 'valid' or 'all', got {denominator!r}")
    n_total = 0
    n_valid = 0
    weighted_size = 0
    for bits, c in counts.items():
        if c < 0:
            raise ValueError(f"negative count for {bits!r}")
        n_total += c
        if c == 0:
            continue
        d = string_to_vertex_set(bits)
        if check_pds(g, d).is_pds:
            n_valid += c
            weighted_size += c * len(d)
    if n_valid == 0:
        raise UndefinedRatioError("no sampled bit string satisfies the PDS condition")
    denom_count = n_valid if denominator == "valid" else n_total
    mean_size = weighted_size / denom_count
    return RatioReport(
        ratio=opt_size / mean_size,
        n_valid_samples=n_valid,
        n_total_samples=n_total,
        opt_size=opt_size,
    )


def top_fraction_param_distribution(records: Sequence[Any], fraction: float, key: str) -> dict[Any, int]:
    """Frequency of each value of one parameter among the top-`fraction`
    records by approximation ratio (undefined ratios sort last; ties broken
    by (q, p1_mult, rate, max_evals, seed) for determinism)."""
    if not records:
        raise ValueError("no records")
    if not (0 < fraction <= 1):
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")

    def rank(r) -> tuple:
        defined = r.ratio is not None
        return (
            0 if defined else 1,
            -(r.ratio if defined else 0.0),
            r.q,
            r.p1_mult,
            r.rate,
            r.max_evals,
            r.seed,
        )

    ranked = sorted(records, key=rank)
    take = math.ceil(fraction * len(records))
    frequencies = Counter(getattr(r, key) for r in ranked[:take])
    return dict(sorted(frequencies.items()))
