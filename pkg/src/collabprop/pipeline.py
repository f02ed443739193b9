"""End-to-end analysis: filter, attribute, classify, profile, compare."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .classify import CollabFlags, classify
from .corpus import DEFAULT_DOC_TYPES, Corpus, filter_doc_types
from .indicators import FORMS, CollabProfile, Form, GroupStats, build_profile, group_stats
from .roster import RANKS, AttributionSet, Rank, Roster, SdsCoverage, sds_coverage_filter
from .stats import DEFAULT_STARS, RankComparison, compare_ranks

TOTAL = "Total"


class EmptyPopulationError(ValueError):
    pass


@dataclass
class Analysis:
    corpus: Corpus
    roster: Roster
    attributions: AttributionSet
    home_country: str
    included_sds: frozenset[str]
    coverage: dict[str, SdsCoverage]
    flags: dict[tuple[str, str], CollabFlags]
    profiles: dict[str, CollabProfile]
    stats: dict[tuple[Form, str, Rank], GroupStats | None] = field(default_factory=dict)
    comparisons: dict[tuple[Form, str], list[RankComparison]] = field(default_factory=dict)
    removed_doc_types: int = 0

    def included(self):
        return [a for a in self.roster if a.sds in self.included_sds]

    @property
    def udas(self) -> list[str]:
        return sorted({a.uda for a in self.included()})


def _classify_academic(job):
    academic, pubs, coauthors, home_country = job
    return academic.academic_id, [
        (pub.pub_id, classify(pub, academic, co, home_country)) for pub, co in zip(pubs, coauthors)
    ]


def compute_flags(corpus: Corpus, roster: Roster, attributions: AttributionSet,
                  academics, home_country: str, workers: int = 1
                  ) -> dict[tuple[str, str], CollabFlags]:
    jobs = []
    for a in academics:
        pub_ids = attributions.pubs_of(a.academic_id)
        pubs = [corpus[p] for p in pub_ids]
        coauthors = [[roster[x] for x in attributions.academics_on(p)] for p in pub_ids]
        jobs.append((a, pubs, coauthors, home_country))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_classify_academic, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_classify_academic(j) for j in jobs]
    flags = {}
    for aid, items in sorted(results, key=lambda r: r[0]):
        for pid, f in items:
            flags[aid, pid] = f
    return flags


def analyze(corpus: Corpus, roster: Roster, attributions: AttributionSet, *,
            home_country: str | None = None, sds_threshold=0.5,
            doc_types=DEFAULT_DOC_TYPES, star_thresholds: Sequence[float] = DEFAULT_STARS,
            workers: int = 1) -> Analysis:
    """Run the whole analysis on a parsed corpus, roster and attribution set.

    ``attributions`` may reference publications that the doc-type filter
    removes; they are dropped before productivity is evaluated.
    """
    home = home_country or corpus.home_country
    corpus, removed = filter_doc_types(corpus, doc_types)
    attributions = attributions.restrict(corpus)
    included_sds, coverage = sds_coverage_filter(roster, attributions, sds_threshold)
    if not included_sds:
        raise EmptyPopulationError("no included SDS")

    population = [a for a in roster if a.sds in included_sds]
    productive = [a for a in population if attributions.pubs_of(a.academic_id)]
    flags = compute_flags(corpus, roster, attributions, productive, home, workers)

    profiles = {}
    for a in sorted(productive, key=lambda a: a.academic_id):
        profiles[a.academic_id] = build_profile(
            a, (flags[a.academic_id, p] for p in attributions.pubs_of(a.academic_id)))

    result = Analysis(corpus, roster, attributions, home, included_sds, coverage, flags,
                      profiles, removed_doc_types=removed)
    by_group: dict[tuple[str, Rank], list[CollabProfile]] = {}
    for a in productive:
        pr = profiles[a.academic_id]
        by_group.setdefault((a.uda, a.rank), []).append(pr)
        by_group.setdefault((TOTAL, a.rank), []).append(pr)
    for members in by_group.values():
        members.sort(key=lambda pr: pr.academic_id)

    for form in FORMS:
        for uda in result.udas + [TOTAL]:
            values = {}
            for rank in RANKS:
                members = by_group.get((uda, rank), [])
                result.stats[form, uda, rank] = (
                    group_stats(members, form, (uda, rank)) if members else None)
                values[rank] = [pr.ratio(form) for pr in members]
            result.comparisons[form, uda] = compare_ranks(values, star_thresholds)
    return result
