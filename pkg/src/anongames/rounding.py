"""Rounding Bernoulli parameters to the 1/k grid with small total-variation error.

Probabilities are split into four regions by the cut ``c/k`` with
``c = floor(k**alpha)``:

* ``L``  = [0, c/k)          small values, rounded with a carried remainder so
  the region's total mass moves by at most 1/k;
* ``M1`` = [c/k, 1/2)        medium values, rounded per interval with no carry
  so that variance is matched too;
* ``M2`` = [1/2, 1 - c/k)    and ``H`` = [1 - c/k, 1] are handled by rounding
  the complements ``1 - p`` with the M1 and L procedures respectively.

When ``c/k >= 1/2`` (all k <= 16 at alpha = 3/4) the medium regions are empty
and L/H split at 1/2.

Values already on the grid (including 0 and 1) are passed through unchanged,
which gives idempotence and keeps the support of every q_i inside that of p_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

GRID_TOL = 1e-9

REGIONS = ("L", "M1", "M2", "H")


@dataclass(frozen=True)
class RoundingConfig:
    k: int
    alpha: float = 0.75
    # only enters the error analysis, never the procedure
    beta: float = 0.75

    def __post_init__(self) -> None:
        if int(self.k) != self.k or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k}")
        if not (0 < self.alpha < 1 and 0 < self.beta < 1):
            raise ValueError("alpha and beta must lie in (0, 1)")
        if self.alpha + self.beta <= 1:
            raise ValueError("alpha + beta must exceed 1")

    @property
    def cut(self) -> int:
        """``floor(k**alpha)``, guarded against float noise at perfect powers."""
        return math.floor(self.k**self.alpha + GRID_TOL)

    @property
    def degenerate(self) -> bool:
        """True when the medium regions are empty."""
        return 2 * self.cut >= self.k

    @property
    def small_intervals(self) -> int:
        """Number of 1/k intervals swept by the carry loop."""
        return min(self.cut, math.ceil(self.k / 2))


@dataclass
class IntervalAudit:
    """Bookkeeping for one interval ``[j/k, (j+1)/k)``.

    ``members`` are original indices; ``deltas`` their offsets ``p - j/k``
    (in complemented coordinates for the M2/H regions). ``carry_in`` is used by
    the L procedure, ``zeta`` by the medium procedure.
    """

    j: int
    members: list[int]
    deltas: list[float]
    total: float
    promoted: int
    carry_in: float | None = None
    zeta: float | None = None
    var_p: float | None = None
    var_q: float | None = None

    def to_dict(self) -> dict:
        out = {
            "j": self.j,
            "members": self.members,
            "deltas": self.deltas,
            "S": self.total,
            "m": self.promoted,
        }
        for key in ("carry_in", "zeta", "var_p", "var_q"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


@dataclass
class RegionWorkspace:
    region: str
    complemented: bool
    intervals: list[IntervalAudit] = field(default_factory=list)
    final_carry: float | None = None

    def to_dict(self) -> dict:
        out = {
            "region": self.region,
            "complemented": self.complemented,
            "intervals": [iv.to_dict() for iv in self.intervals],
        }
        if self.final_carry is not None:
            out["final_carry"] = self.final_carry
        return out


@dataclass
class RoundingResult:
    p: np.ndarray
    levels: np.ndarray  # q * k, as integers
    config: RoundingConfig
    region_of: list[str]
    workspaces: dict[str, RegionWorkspace]

    @property
    def q(self) -> np.ndarray:
        return self.levels / self.config.k

    def to_dict(self) -> dict:
        return {
            "k": self.config.k,
            "alpha": self.config.alpha,
            "beta": self.config.beta,
            "p": self.p.tolist(),
            "q": self.q.tolist(),
            "levels": self.levels.tolist(),
            "region_of": self.region_of,
            "workspaces": {name: ws.to_dict() for name, ws in self.workspaces.items()},
        }


def _on_grid(x: float, k: int) -> bool:
    a = x * k
    return abs(a - round(a)) <= GRID_TOL


def classify(p_i: float, config: RoundingConfig) -> str:
    if not 0.0 <= p_i <= 1.0:
        raise ValueError(f"probability out of range: {p_i}")
    k, c = config.k, config.cut
    if p_i < 0.5:
        if config.degenerate or math.floor(p_i * k + GRID_TOL) < c:
            return "L"
        return "M1"
    if config.degenerate or (1.0 - p_i) * k <= c + GRID_TOL:
        return "H"
    return "M2"


def _group_by_interval(items: Iterable[tuple[int, float]], k: int) -> dict[int, list[tuple[int, float]]]:
    groups: dict[int, list[tuple[int, float]]] = {}
    for idx, x in items:
        j = math.floor(x * k + GRID_TOL)
        groups.setdefault(j, []).append((idx, max(x - j / k, 0.0)))
    return groups


def _promote(members: list[tuple[int, float]], m: int) -> set[int]:
    # largest offset first, ties by ascending original index
    order = sorted(members, key=lambda item: (-item[1], item[0]))
    return {idx for idx, _ in order[:m]}


def round_small(
    items: Sequence[tuple[int, float]], config: RoundingConfig, region: str = "L", complemented: bool = False
) -> tuple[dict[int, int], RegionWorkspace]:
    """Carry rounding over the small-value intervals.

    ``items`` are ``(index, value)`` pairs with off-grid values below the cut.
    Returns the grid level chosen for each index and the audit workspace.
    """
    k = config.k
    top = config.small_intervals
    groups = _group_by_interval(items, k)
    if any(j >= top for j in groups):
        raise ValueError("round_small received a value outside the small-value region")
    ws = RegionWorkspace(region, complemented)
    levels: dict[int, int] = {}
    carry = 0.0
    for j in range(top):
        members = groups.get(j, [])
        total = carry + math.fsum(d for _, d in members)
        m = math.floor(total * k + GRID_TOL)
        if m > len(members):
            raise AssertionError(f"carry loop promoted {m} of {len(members)} members at j={j}")
        up = _promote(members, m)
        for idx, _ in members:
            levels[idx] = j + 1 if idx in up else j
        ws.intervals.append(
            IntervalAudit(j, [i for i, _ in members], [d for _, d in members], total, m, carry_in=carry)
        )
        carry = max(total - m / k, 0.0)
    ws.final_carry = carry
    return levels, ws


def round_medium(
    items: Sequence[tuple[int, float]], config: RoundingConfig, region: str = "M1", complemented: bool = False
) -> tuple[dict[int, int], RegionWorkspace]:
    """Per-interval rounding without carry for values in ``[c/k, 1/2]``."""
    k = config.k
    groups = _group_by_interval(items, k)
    if any(j < config.cut or j > k // 2 for j in groups):
        raise ValueError("round_medium received a value outside the medium region")
    ws = RegionWorkspace(region, complemented)
    levels: dict[int, int] = {}
    for j in sorted(groups):
        members = groups[j]
        deltas = [d for _, d in members]
        total = math.fsum(deltas)
        m = math.floor(total * k + GRID_TOL)
        up = _promote(members, m)
        var_p = var_q = 0.0
        for idx, d in members:
            lvl = j + 1 if idx in up else j
            levels[idx] = lvl
            x, y = j / k + d, lvl / k
            var_p += x * (1 - x)
            var_q += y * (1 - y)
        ws.intervals.append(
            IntervalAudit(j, [i for i, _ in members], deltas, total, m, zeta=total - m / k, var_p=var_p, var_q=var_q)
        )
    return levels, ws


def round_probabilities(p: Sequence[float], config: RoundingConfig) -> RoundingResult:
    p = np.asarray(p, dtype=float).reshape(-1)
    if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
        raise ValueError("probabilities must lie in [0, 1]")
    k = config.k
    region_of = [classify(float(x), config) for x in p]
    levels = np.zeros(p.size, dtype=np.int64)
    buckets: dict[str, list[tuple[int, float]]] = {r: [] for r in REGIONS}
    for i, (x, region) in enumerate(zip(p, region_of)):
        if _on_grid(x, k):
            levels[i] = round(x * k)
        elif region in ("L", "M1"):
            buckets[region].append((i, float(x)))
        else:
            buckets[region].append((i, 1.0 - float(x)))

    workspaces = {}
    for region, procedure, complemented in (
        ("L", round_small, False),
        ("M1", round_medium, False),
        ("M2", round_medium, True),
        ("H", round_small, True),
    ):
        chosen, ws = procedure(buckets[region], config, region, complemented)
        for idx, lvl in chosen.items():
            levels[idx] = k - lvl if complemented else lvl
        workspaces[region] = ws
    return RoundingResult(p, levels, config, region_of, workspaces)


def naive_round(p: Sequence[float], k: int) -> np.ndarray:
    """Nearest multiple of 1/k, ties rounded up."""
    p = np.asarray(p, dtype=float)
    return np.floor(p * k + 0.5 + GRID_TOL) / k
