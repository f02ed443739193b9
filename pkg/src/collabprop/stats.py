"""Mann-Whitney U rank-sum test with rank-based direction signs and star marks.

Two-sided throughout. Exact p-values come from the null distribution of U
(counted via the Gaussian binomial coefficient) when the smaller sample has
at most ``EXACT_MAX_N`` values and there are no ties; otherwise the normal
approximation with tie-corrected variance and a 0.5 continuity correction is
used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .roster import Rank

EXACT_MAX_N = 8
DEFAULT_STARS = (0.05, 0.01, 0.001)

COMPARISON_ORDER = (
    (Rank.FULL, Rank.ASSOCIATE),
    (Rank.ASSOCIATE, Rank.ASSISTANT),
    (Rank.ASSISTANT, Rank.FULL),
)


@dataclass(frozen=True)
class RankComparison:
    group_a: str
    group_b: str
    n_a: int
    n_b: int
    U: float | None
    p_value: float | None
    sign: str
    stars: str
    method: str = ""

    @property
    def computable(self) -> bool:
        return self.U is not None

    @property
    def cell(self) -> str:
        if not self.computable:
            return "n/a"
        return self.sign + self.stars

    @classmethod
    def not_computable(cls, group_a, group_b, n_a, n_b) -> "RankComparison":
        return cls(group_a, group_b, n_a, n_b, None, None, "", "", "not computable")


def midranks(values: Sequence) -> list[float]:
    """1-based ranks; tied values share the average of the ranks they span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j + 2) / 2
        for k in range(i, j + 1):
            ranks[order[k]] = r
        i = j + 1
    return ranks


def tie_sizes(values: Sequence) -> list[int]:
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return [t for t in counts.values() if t > 1]


@lru_cache(maxsize=256)
def u_distribution(n_a: int, n_b: int) -> tuple[int, ...]:
    """Number of rank arrangements giving U = 0..n_a*n_b under the null (no ties).

    Coefficients of the Gaussian binomial [n_a + n_b choose n_a]_q.
    """
    m, n = sorted((n_a, n_b))
    coeffs = [1]
    for i in range(1, m + 1):
        # multiply by (1 - q^(n+i)), then divide by (1 - q^i)
        shift = n + i
        grown = coeffs + [0] * shift
        for k in range(len(grown) - 1, shift - 1, -1):
            grown[k] -= grown[k - shift]
        for k in range(i, len(grown)):
            grown[k] += grown[k - i]
        coeffs = grown[: m * n + 1] if i == m else grown[: i * n + 1]
    return tuple(coeffs)


def exact_p_value(u: float, n_a: int, n_b: int) -> Fraction:
    dist = u_distribution(n_a, n_b)
    total = sum(dist)
    k = int(u)
    lower = Fraction(sum(dist[: k + 1]), total)
    upper = Fraction(sum(dist[k:]), total)
    return min(Fraction(1), 2 * min(lower, upper))


def normal_p_value(u: float, n_a: int, n_b: int, ties: Sequence[int]) -> float:
    big_n = n_a + n_b
    tie_term = sum(t ** 3 - t for t in ties) / (big_n * (big_n - 1)) if big_n > 1 else 0.0
    var = n_a * n_b / 12 * ((big_n + 1) - tie_term)
    diff = u - n_a * n_b / 2
    if var <= 0 or diff == 0:
        return 1.0
    z = (abs(diff) - 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2)))


def stars(p_value: float, thresholds: Sequence[float] = DEFAULT_STARS) -> str:
    """One star per threshold that ``p_value`` falls strictly below."""
    thresholds = tuple(thresholds)
    if not thresholds or any(not 0 < t < 1 for t in thresholds) or any(
            b >= a for a, b in zip(thresholds, thresholds[1:])):
        raise ValueError(f"star thresholds must be strictly decreasing in (0, 1): {thresholds}")
    return "*" * sum(p_value < t for t in thresholds)


def mann_whitney(a: Sequence, b: Sequence, group_a: str = "a", group_b: str = "b",
                 thresholds: Sequence[float] = DEFAULT_STARS) -> RankComparison:
    """Two-sided Mann-Whitney U test of ``a`` against ``b``.

    ``U`` is the statistic of ``a``. The sign compares U with its null
    expectation, so it follows ranks rather than means.
    """
    n_a, n_b = len(a), len(b)
    if not n_a or not n_b:
        raise ValueError("mann_whitney needs two non-empty samples")
    pooled = list(a) + list(b)
    ranks = midranks(pooled)
    u = sum(ranks[:n_a]) - n_a * (n_a + 1) / 2
    ties = tie_sizes(pooled)
    if min(n_a, n_b) <= EXACT_MAX_N and not ties:
        p = float(exact_p_value(u, n_a, n_b))
        method = "exact"
    else:
        p = normal_p_value(u, n_a, n_b, ties)
        method = "normal"
    mid = n_a * n_b / 2
    sign = "+" if u > mid else "-" if u < mid else "0"
    return RankComparison(group_a, group_b, n_a, n_b, u, p, sign, stars(p, thresholds), method)


def compare_ranks(values_by_rank: Mapping[Rank, Sequence],
                  thresholds: Sequence[float] = DEFAULT_STARS) -> list[RankComparison]:
    """Full vs Associate, Associate vs Assistant, Assistant vs Full, in that order."""
    out = []
    for ra, rb in COMPARISON_ORDER:
        va, vb = values_by_rank.get(ra, ()), values_by_rank.get(rb, ())
        if not va or not vb:
            out.append(RankComparison.not_computable(ra.label, rb.label, len(va), len(vb)))
        else:
            out.append(mann_whitney(va, vb, ra.label, rb.label, thresholds))
    return out
