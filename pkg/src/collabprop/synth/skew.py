"""Output concentration and aggregate-vs-individual propensity gaps."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..indicators import FORMS, CollabProfile, aggregate_propensity, group_stats
from ..roster import RANKS

TOP_SHARE_GRID = tuple(Fraction(k, 100) for k in (1, 5, 10, 20, 23, 30, 40, 50, 75, 100))


def top_share(outputs: Sequence[int], fraction) -> Fraction:
    """Share of total output produced by the most productive ``fraction`` of individuals.

    The Lorenz curve is interpolated linearly, so equal outputs give
    ``top_share == fraction`` exactly.
    """
    frac = Fraction(fraction) if not isinstance(fraction, float) else Fraction(str(fraction))
    values = sorted(outputs, reverse=True)
    total = sum(values)
    if not values or total == 0:
        raise ValueError("top_share needs positive total output")
    k_exact = frac * len(values)
    k = math.floor(k_exact)
    head = sum(values[:k])
    if k < len(values):
        head += (k_exact - k) * values[k]
    return Fraction(head, total)


@dataclass
class SkewReport:
    n: int
    top_shares: dict[Fraction, Fraction]
    gaps: dict[str, Fraction]
    aggregate: dict[str, Fraction]
    individual_mean: dict[str, Fraction]
    gaps_by_rank: dict[str, dict[str, Fraction]] = field(default_factory=dict)

    def share_at(self, fraction) -> Fraction:
        return self.top_shares[Fraction(fraction) if not isinstance(fraction, float)
                               else Fraction(str(fraction))]

    def to_dict(self) -> dict:
        return {
            "productive_academics": self.n,
            "top_share": {f"{float(k):.2f}": round(float(v), 6) for k, v in self.top_shares.items()},
            "aggregate": {k: round(float(v), 6) for k, v in self.aggregate.items()},
            "individual_mean": {k: round(float(v), 6) for k, v in self.individual_mean.items()},
            "gap": {k: round(float(v), 6) for k, v in self.gaps.items()},
            "gap_by_rank": {r: {k: round(float(v), 6) for k, v in g.items()}
                            for r, g in self.gaps_by_rank.items()},
        }


def _gaps(profiles):
    agg, ind, gap = {}, {}, {}
    for form in FORMS:
        agg[form.label] = aggregate_propensity(profiles, form)
        ind[form.label] = group_stats(profiles, form).mean
        gap[form.label] = abs(agg[form.label] - ind[form.label])
    return agg, ind, gap


def skew_report(roster, profiles: Sequence[CollabProfile] | dict,
                grid=TOP_SHARE_GRID) -> SkewReport:
    profiles = list(profiles.values()) if isinstance(profiles, dict) else list(profiles)
    if len(profiles) < 2:
        raise ValueError("skew_report needs at least two productive academics")
    outputs = [pr.p for pr in profiles]
    shares = {Fraction(g): top_share(outputs, g) for g in grid}
    agg, ind, gap = _gaps(profiles)
    by_rank = {}
    for rank in RANKS:
        members = [pr for pr in profiles
                   if pr.academic_id in roster and roster[pr.academic_id].rank is rank]
        if members:
            by_rank[rank.label] = _gaps(members)[2]
    return SkewReport(len(profiles), shares, gap, agg, ind, by_rank)
