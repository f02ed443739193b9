"""Publication corpus: record parsing, validation and document-type filtering.

Records are JSON objects, one per line::

    {"id": "P1", "year": 2008, "type": "article",
     "authors": [{"name": "Rossi, M.", "addr": [0]}],
     "addresses": [{"org": "Univ A", "org_id": "UNIA", "country": "IT"}]}
"""
from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

DEFAULT_WINDOW = (2006, 2010)
DEFAULT_HOME_COUNTRY = "IT"
DEFAULT_DOC_TYPES = frozenset({"article", "review", "letter", "proceedings-paper"})

_COUNTRY_RE = re.compile(r"^[A-Z]{2}$")


class RecordError(ValueError):
    """A rejected input line. ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str, record_id: str | None = None):
        self.lineno = lineno
        self.message = message
        self.record_id = record_id
        where = f"line {lineno}"
        if record_id is not None:
            where += f" ({record_id})"
        super().__init__(f"{where}: {message}")


def org_key(name: str) -> str:
    return " ".join(name.split()).casefold()


@dataclass(frozen=True)
class Address:
    org_name: str
    country: str
    org_id: str | None = None

    def __post_init__(self):
        if not self.org_name.strip():
            raise ValueError("empty organization name")
        if not _COUNTRY_RE.match(self.country):
            raise ValueError(f"country must be an ISO alpha-2 code, got {self.country!r}")

    @property
    def identity(self) -> str:
        """Organization identity: ``org_id`` when present, else the normalized name."""
        return org_key(self.org_id if self.org_id else self.org_name)


@dataclass(frozen=True)
class BylineAuthor:
    name: str
    address_idxs: tuple[int, ...] = ()


@dataclass(frozen=True)
class Publication:
    pub_id: str
    year: int
    doc_type: str
    authors: tuple[BylineAuthor, ...]
    addresses: tuple[Address, ...]

    def __post_init__(self):
        if not self.authors:
            raise ValueError("publication has no authors")
        n = len(self.addresses)
        for a in self.authors:
            if len(set(a.address_idxs)) != len(a.address_idxs):
                raise ValueError(f"duplicate address index for author {a.name!r}")
            for i in a.address_idxs:
                if not 0 <= i < n:
                    raise ValueError(f"address index out of range: {i} (have {n} addresses)")


@dataclass(frozen=True)
class Corpus:
    publications: dict[str, Publication] = field(default_factory=dict)
    window: tuple[int, int] = DEFAULT_WINDOW
    home_country: str = DEFAULT_HOME_COUNTRY

    def __len__(self) -> int:
        return len(self.publications)

    def __iter__(self) -> Iterator[Publication]:
        return iter(self.publications.values())

    def __contains__(self, pub_id: str) -> bool:
        return pub_id in self.publications

    def __getitem__(self, pub_id: str) -> Publication:
        return self.publications[pub_id]

    @classmethod
    def from_publications(cls, pubs: Iterable[Publication], window=DEFAULT_WINDOW,
                          home_country=DEFAULT_HOME_COUNTRY) -> "Corpus":
        table: dict[str, Publication] = {}
        lo, hi = window
        for p in pubs:
            if p.pub_id in table:
                raise ValueError(f"duplicate pub_id {p.pub_id!r}")
            if not lo <= p.year <= hi:
                raise ValueError(f"{p.pub_id}: year {p.year} outside window {lo}-{hi}")
            table[p.pub_id] = p
        return cls(table, (lo, hi), home_country)


def _as_text_lines(stream) -> Iterator[str]:
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    elif isinstance(stream, str):
        stream = io.StringIO(stream)
    for line in stream:
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        yield line


def iter_json_lines(stream) -> Iterator[tuple[int, object]]:
    """Yield ``(lineno, value_or_error)`` for every non-blank line.

    Undecodable lines yield a :class:`RecordError` instead of raising so that
    lenient callers can account for every line.
    """
    for lineno, line in enumerate(_as_text_lines(stream), start=1):
        if not line.strip():
            continue
        try:
            yield lineno, json.loads(line)
        except json.JSONDecodeError as exc:
            yield lineno, RecordError(lineno, f"malformed line: {exc.msg}")


def _require(obj: dict, key: str, kind, lineno: int, rid=None):
    if key not in obj:
        raise RecordError(lineno, f"malformed record: missing field {key!r}", rid)
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise RecordError(lineno, f"malformed record: field {key!r} has wrong type", rid)
    return value


def publication_from_record(obj, lineno: int = 0) -> Publication:
    if not isinstance(obj, dict):
        raise RecordError(lineno, "malformed record: expected a JSON object")
    rid = _require(obj, "id", str, lineno)
    year = _require(obj, "year", int, lineno, rid)
    doc_type = _require(obj, "type", str, lineno, rid)
    raw_addrs = _require(obj, "addresses", list, lineno, rid)
    raw_authors = _require(obj, "authors", list, lineno, rid)

    addresses = []
    for a in raw_addrs:
        if not isinstance(a, dict):
            raise RecordError(lineno, "malformed record: address must be an object", rid)
        org = _require(a, "org", str, lineno, rid)
        country = _require(a, "country", str, lineno, rid)
        org_id = a.get("org_id")
        if org_id is not None and not isinstance(org_id, str):
            raise RecordError(lineno, "malformed record: org_id must be a string", rid)
        try:
            addresses.append(Address(" ".join(org.split()), country.strip().upper(), org_id))
        except ValueError as exc:
            raise RecordError(lineno, str(exc), rid) from None

    authors = []
    for a in raw_authors:
        if not isinstance(a, dict):
            raise RecordError(lineno, "malformed record: author must be an object", rid)
        name = _require(a, "name", str, lineno, rid)
        idxs = a.get("addr", [])
        if not isinstance(idxs, list) or not all(
                isinstance(i, int) and not isinstance(i, bool) for i in idxs):
            raise RecordError(lineno, "malformed record: addr must be a list of integers", rid)
        authors.append(BylineAuthor(name, tuple(idxs)))

    try:
        return Publication(rid, year, doc_type.strip().lower(), tuple(authors), tuple(addresses))
    except ValueError as exc:
        raise RecordError(lineno, str(exc), rid) from None


def scan_corpus(stream, window=DEFAULT_WINDOW, home_country=DEFAULT_HOME_COUNTRY
                ) -> tuple[Corpus, list[RecordError]]:
    """Lenient parse: returns the well-formed publications plus one error per rejected line."""
    lo, hi = window
    pubs: dict[str, Publication] = {}
    errors: list[RecordError] = []
    for lineno, obj in iter_json_lines(stream):
        if isinstance(obj, RecordError):
            errors.append(obj)
            continue
        try:
            pub = publication_from_record(obj, lineno)
            if pub.pub_id in pubs:
                raise RecordError(lineno, "duplicate pub_id", pub.pub_id)
            if not lo <= pub.year <= hi:
                raise RecordError(lineno, f"year {pub.year} outside window {lo}-{hi}", pub.pub_id)
        except RecordError as exc:
            errors.append(exc)
            continue
        pubs[pub.pub_id] = pub
    return Corpus(pubs, (lo, hi), home_country), errors


def parse_corpus(stream, window=DEFAULT_WINDOW, home_country=DEFAULT_HOME_COUNTRY) -> Corpus:
    """Strict parse; raises the first :class:`RecordError` encountered."""
    corpus, errors = scan_corpus(stream, window, home_country)
    if errors:
        raise errors[0]
    return corpus


def publication_to_record(pub: Publication) -> dict:
    addrs = []
    for a in pub.addresses:
        rec = {"org": a.org_name}
        if a.org_id is not None:
            rec["org_id"] = a.org_id
        rec["country"] = a.country
        addrs.append(rec)
    return {
        "id": pub.pub_id,
        "year": pub.year,
        "type": pub.doc_type,
        "authors": [{"name": a.name, "addr": list(a.address_idxs)} for a in pub.authors],
        "addresses": addrs,
    }


def dump_corpus(corpus: Corpus | Iterable[Publication], out: IO[str] | None = None) -> str:
    lines = [json.dumps(publication_to_record(p), ensure_ascii=False, separators=(",", ":"))
             for p in corpus]
    text = "".join(line + "\n" for line in lines)
    if out is not None:
        out.write(text)
    return text


def filter_doc_types(corpus: Corpus, allowlist: Iterable[str] = DEFAULT_DOC_TYPES
                     ) -> tuple[Corpus, int]:
    """Keep publications whose document type is allowed. Returns ``(corpus, removed)``."""
    allowed = {t.strip().lower() for t in allowlist}
    if not allowed:
        raise ValueError("doc-type allowlist must not be empty")
    kept = {k: p for k, p in corpus.publications.items() if p.doc_type in allowed}
    return Corpus(kept, corpus.window, corpus.home_country), len(corpus) - len(kept)
