"""Academic registry, publication attribution and SDS coverage filtering."""
from __future__ import annotations

import enum
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .corpus import Corpus, RecordError, iter_json_lines, org_key
from .names import given_initials, name_matches, parse_byline_name, surname_key

log = logging.getLogger(__name__)


class Rank(enum.Enum):
    FULL = "full"
    ASSOCIATE = "associate"
    ASSISTANT = "assistant"

    @property
    def label(self) -> str:
        return self.value.capitalize()

    @classmethod
    def parse(cls, token: str) -> "Rank":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown rank token {token!r}") from None


RANKS = (Rank.FULL, Rank.ASSOCIATE, Rank.ASSISTANT)


@dataclass(frozen=True)
class Academic:
    academic_id: str
    surname: str
    given_names: str
    rank: Rank
    sds: str
    uda: str
    university_id: str

    @property
    def university_key(self) -> str:
        return org_key(self.university_id)


class Roster:
    """Immutable academic registry keyed by ``academic_id`` (insertion order kept)."""

    def __init__(self, academics: Iterable[Academic] = ()):
        self._by_id: dict[str, Academic] = {}
        self.sds_to_uda: dict[str, str] = {}
        for a in academics:
            if a.academic_id in self._by_id:
                raise ValueError(f"duplicate academic_id {a.academic_id!r}")
            known = self.sds_to_uda.setdefault(a.sds, a.uda)
            if known != a.uda:
                raise ValueError(f"inconsistent SDS mapping: {a.sds} -> {known} and {a.uda}")
            self._by_id[a.academic_id] = a

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[Academic]:
        return iter(self._by_id.values())

    def __contains__(self, academic_id: str) -> bool:
        return academic_id in self._by_id

    def __getitem__(self, academic_id: str) -> Academic:
        return self._by_id[academic_id]


_ROSTER_FIELDS = ("id", "surname", "given", "rank", "sds", "uda", "university")


def academic_from_record(obj, lineno: int = 0) -> Academic:
    if not isinstance(obj, dict):
        raise RecordError(lineno, "malformed record: expected a JSON object")
    for key in _ROSTER_FIELDS:
        if not isinstance(obj.get(key), str):
            raise RecordError(lineno, f"malformed record: missing or non-string field {key!r}",
                              obj.get("id") if isinstance(obj.get("id"), str) else None)
    try:
        rank = Rank.parse(obj["rank"])
    except ValueError as exc:
        raise RecordError(lineno, str(exc), obj["id"]) from None
    return Academic(obj["id"], obj["surname"], obj["given"], rank, obj["sds"], obj["uda"],
                    obj["university"])


def academic_to_record(a: Academic) -> dict:
    return {"id": a.academic_id, "surname": a.surname, "given": a.given_names,
            "rank": a.rank.value, "sds": a.sds, "uda": a.uda, "university": a.university_id}


def scan_roster(stream) -> tuple[Roster, list[RecordError]]:
    academics: dict[str, Academic] = {}
    sds_uda: dict[str, str] = {}
    errors = []
    for lineno, obj in iter_json_lines(stream):
        if isinstance(obj, RecordError):
            errors.append(obj)
            continue
        try:
            a = academic_from_record(obj, lineno)
            if a.academic_id in academics:
                raise RecordError(lineno, "duplicate academic_id", a.academic_id)
            known = sds_uda.get(a.sds, a.uda)
            if known != a.uda:
                raise RecordError(lineno, f"inconsistent SDS mapping: {a.sds} -> {known} and {a.uda}",
                                  a.academic_id)
        except RecordError as exc:
            errors.append(exc)
            continue
        sds_uda[a.sds] = a.uda
        academics[a.academic_id] = a
    return Roster(academics.values()), errors


def load_roster(stream) -> Roster:
    roster, errors = scan_roster(stream)
    if errors:
        raise errors[0]
    return roster


class Provenance(enum.Enum):
    EXPLICIT = "explicit"
    MATCHED = "matched"


@dataclass(frozen=True)
class Link:
    academic_id: str
    pub_id: str
    provenance: Provenance
    position: int | None = None  # byline index, known only for matched links


class AttributionSet:
    """The author-publication matrix as a set of (academic_id, pub_id) links."""

    def __init__(self, links: Iterable[Link] = (), ambiguous: int = 0):
        self._links: dict[tuple[str, str], Link] = {}
        for link in links:
            self._links.setdefault((link.academic_id, link.pub_id), link)
        self.ambiguous = ambiguous
        by_pub = defaultdict(list)
        by_academic = defaultdict(list)
        for a, p in sorted(self._links):
            by_pub[p].append(a)
            by_academic[a].append(p)
        self._by_pub = {p: tuple(v) for p, v in by_pub.items()}
        self._by_academic = {a: tuple(v) for a, v in by_academic.items()}

    def __len__(self) -> int:
        return len(self._links)

    def __iter__(self) -> Iterator[Link]:
        return iter(self._links[k] for k in sorted(self._links))

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self._links

    def __eq__(self, other) -> bool:
        return isinstance(other, AttributionSet) and self.pairs() == other.pairs()

    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(self._links)

    def provenance(self, academic_id: str, pub_id: str) -> Provenance:
        return self._links[academic_id, pub_id].provenance

    def academics_on(self, pub_id: str) -> tuple[str, ...]:
        return self._by_pub.get(pub_id, ())

    def pubs_of(self, academic_id: str) -> tuple[str, ...]:
        return self._by_academic.get(academic_id, ())

    def restrict(self, corpus: Corpus) -> "AttributionSet":
        """Drop links to publications absent from ``corpus`` (e.g. after doc-type filtering)."""
        return AttributionSet((l for l in self if l.pub_id in corpus), self.ambiguous)


def scan_attributions(corpus: Corpus, roster: Roster, stream
                      ) -> tuple[AttributionSet, list[RecordError], int]:
    """Lenient read of an explicit link file. Returns (set, errors, duplicate count)."""
    links = []
    seen = set()
    errors = []
    duplicates = 0
    for lineno, obj in iter_json_lines(stream):
        if isinstance(obj, RecordError):
            errors.append(obj)
            continue
        if not (isinstance(obj, dict) and isinstance(obj.get("academic"), str)
                and isinstance(obj.get("pub"), str)):
            errors.append(RecordError(lineno, "malformed record: need string fields 'academic' and 'pub'"))
            continue
        a, p = obj["academic"], obj["pub"]
        missing = [f"academic_id {a!r}"] if a not in roster else []
        if p not in corpus:
            missing.append(f"pub_id {p!r}")
        if missing:
            errors.append(RecordError(
                lineno, f"unknown {' and '.join(missing)} in link ({a}, {p})"))
            continue
        if (a, p) in seen:
            duplicates += 1
            log.warning("line %d: duplicate link (%s, %s) ignored", lineno, a, p)
            continue
        seen.add((a, p))
        links.append(Link(a, p, Provenance.EXPLICIT))
    return AttributionSet(links), errors, duplicates


def attribute_explicit(corpus: Corpus, roster: Roster, stream) -> AttributionSet:
    attributions, errors, _ = scan_attributions(corpus, roster, stream)
    if errors:
        raise errors[0]
    return attributions


def _matches_university(pub, idxs, key: str) -> bool:
    return any(pub.addresses[i].identity == key for i in idxs)


def attribute_heuristic(corpus: Corpus, roster: Roster) -> AttributionSet:
    """Deterministic surname + initials + university matcher.

    A byline author is linked to an academic when the surname matches exactly
    after normalization, the byline initials prefix the academic's given-name
    initials, and the academic's university appears among the publication's
    addresses. Byline authors matching two or more academics are dropped and
    counted in ``ambiguous``.
    """
    by_surname: dict[str, list[Academic]] = defaultdict(list)
    for a in roster:
        by_surname[surname_key(a.surname)].append(a)

    links = {}
    ambiguous = 0
    for pub in corpus:
        all_idxs = range(len(pub.addresses))
        for pos, author in enumerate(pub.authors):
            parsed = parse_byline_name(author.name)
            if parsed is None:
                continue
            skey, initials = parsed
            hits = [a for a in by_surname.get(skey, ())
                    if given_initials(a.given_names)[:len(initials)] == initials
                    and _matches_university(pub, all_idxs, a.university_key)]
            if len(hits) > 1:
                ambiguous += 1
            elif hits:
                key = (hits[0].academic_id, pub.pub_id)
                if key not in links:
                    links[key] = Link(*key, Provenance.MATCHED, pos)
    return AttributionSet(links.values(), ambiguous)


def merge_attributions(explicit: AttributionSet, matched: AttributionSet,
                       corpus: Corpus, roster: Roster) -> AttributionSet:
    """Union of both sets; explicit links win on conflict.

    A matched link conflicts when its byline position is claimed by a
    different, explicitly linked academic whose name fits that position.
    """
    out = list(explicit)
    for link in matched:
        if (link.academic_id, link.pub_id) in explicit:
            continue
        if link.position is not None:
            name = corpus[link.pub_id].authors[link.position].name
            claimed = any(a != link.academic_id
                          and name_matches(name, roster[a].surname, roster[a].given_names)
                          for a in explicit.academics_on(link.pub_id))
            if claimed:
                continue
        out.append(link)
    return AttributionSet(out, matched.ambiguous)


@dataclass(frozen=True)
class SdsCoverage:
    sds: str
    staff_count: int
    productive_count: int
    included: bool

    @property
    def productive_fraction(self) -> Fraction | None:
        return Fraction(self.productive_count, self.staff_count) if self.staff_count else None


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def sds_coverage_filter(roster: Roster, attributions: AttributionSet, threshold=0.5
                        ) -> tuple[frozenset[str], dict[str, SdsCoverage]]:
    """Keep SDSs where at least ``threshold`` of the staff are productive (inclusive).

    ``attributions`` must already be restricted to the filtered corpus.
    """
    thr = _as_fraction(threshold)
    if not 0 <= thr <= 1:
        raise ValueError(f"sds threshold must lie in [0, 1], got {threshold}")
    staff = defaultdict(int)
    productive = defaultdict(int)
    for a in roster:
        staff[a.sds] += 1
        if attributions.pubs_of(a.academic_id):
            productive[a.sds] += 1
    report = {}
    for sds in sorted(staff):
        n = staff[sds]
        if n == 0:
            log.warning("SDS %s has no staff; excluded", sds)
            ok = False
        else:
            ok = Fraction(productive[sds], n) >= thr
        report[sds] = SdsCoverage(sds, n, productive[sds], ok)
    included = frozenset(s for s, c in report.items() if c.included)
    return included, report
