import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collabprop.corpus import (Address, Corpus, RecordError, dump_corpus, filter_doc_types,
                               parse_corpus, scan_corpus)


def record(pid="P1", year=2008, doc="article", authors=None, addresses=None):
    return {
        "id": pid, "year": year, "type": doc,
        "authors": authors if authors is not None else [{"name": "Rossi, M.", "addr": [0]}],
        "addresses": addresses if addresses is not None else [
            {"org": "Univ A", "org_id": "UNIA", "country": "IT"}],
    }


def lines(*records):
    return "".join(json.dumps(r) + "\n" for r in records)


def test_empty_stream():
    c = parse_corpus(b"")
    assert len(c) == 0


def test_single_record_two_authors():
    rec = record(authors=[{"name": "Rossi, M.", "addr": [0]}, {"name": "Bianchi, L.", "addr": [0]}])
    c = parse_corpus(lines(rec))
    assert len(c) == 1
    pub = c["P1"]
    assert [a.address_idxs for a in pub.authors] == [(0,), (0,)]
    assert pub.addresses[0].identity == "unia"


def test_address_index_out_of_range_names_pub():
    rec = record(pid="PX", authors=[{"name": "Rossi, M.", "addr": [3]}],
                 addresses=[{"org": "A", "country": "IT"}, {"org": "B", "country": "US"}])
    with pytest.raises(RecordError, match="address index out of range") as exc:
        parse_corpus(lines(rec))
    assert "PX" in str(exc.value)


@pytest.mark.parametrize("bad, message", [
    ("{not json", "malformed line"),
    (json.dumps({"id": "P9", "year": 2008}), "missing field"),
    (json.dumps(record(year=2015)), "outside window"),
    (json.dumps(record(authors=[])), "no authors"),
    (json.dumps(record(addresses=[{"org": "X", "country": "ITA"}])), "ISO alpha-2"),
    (json.dumps(record(authors=[{"name": "R, M.", "addr": [0, 0]}])), "duplicate address index"),
])
def test_malformed_lines_carry_line_number(bad, message):
    text = lines(record("P0")) + bad + "\n"
    with pytest.raises(RecordError, match=message) as exc:
        parse_corpus(text)
    assert exc.value.lineno == 2


def test_duplicate_pub_id():
    with pytest.raises(RecordError, match="duplicate pub_id"):
        parse_corpus(lines(record("P1"), record("P1")))


def test_scan_accounts_for_every_line():
    text = lines(record("P1")) + "garbage\n" + lines(record("P1"), record("P2", year=1999), record("P3"))
    corpus, errors = scan_corpus(text)
    assert len(corpus) + len(errors) == 5
    assert [e.lineno for e in errors] == [2, 3, 4]


def test_org_identity_prefers_id_then_normalized_name():
    assert Address("Univ  of   Rome", "IT").identity == "univ of rome"
    assert Address("Whatever", "IT", "ROMA1").identity == "roma1"


def test_filter_doc_types():
    c = parse_corpus(lines(record("P1", doc="article"), record("P2", doc="editorial-material")))
    kept, removed = filter_doc_types(c, {"article"})
    assert list(kept.publications) == ["P1"] and removed == 1
    same, removed = filter_doc_types(c, {"article", "editorial-material"})
    assert same == c and removed == 0
    none, removed = filter_doc_types(filter_doc_types(c, {"editorial-material"})[0], {"article"})
    assert len(none) == 0 and removed == 1
    with pytest.raises(ValueError):
        filter_doc_types(c, set())


names = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=0x24F), min_size=1, max_size=12)
countries = st.sampled_from(["IT", "US", "DE", "FR"])


@st.composite
def publication_records(draw, pid):
    n_addr = draw(st.integers(0, 4))
    addresses = []
    for _ in range(n_addr):
        a = {"org": draw(st.sampled_from(["Univ A", "CNR", "MIT", "ETH"])), "country": draw(countries)}
        if draw(st.booleans()):
            a["org_id"] = draw(st.sampled_from(["UNIA", "UNIB", "X1"]))
        addresses.append(a)
    authors = [{"name": draw(names),
                "addr": draw(st.lists(st.integers(0, n_addr - 1), unique=True, max_size=n_addr))
                if n_addr else []}
               for _ in range(draw(st.integers(1, 4)))]
    return record(pid, draw(st.integers(2006, 2010)),
                  draw(st.sampled_from(["article", "review", "editorial-material", "letter"])),
                  authors, addresses)


@st.composite
def corpora_text(draw):
    n = draw(st.integers(0, 6))
    return lines(*[draw(publication_records(f"P{i}")) for i in range(n)])


@given(corpora_text())
@settings(max_examples=60)
def test_round_trip(text):
    c = parse_corpus(text)
    again = parse_corpus(dump_corpus(c))
    assert again == c
    assert list(again.publications) == list(c.publications)


@given(corpora_text(), st.sets(st.sampled_from(["article", "review", "letter", "editorial-material"]),
                               min_size=1))
@settings(max_examples=60)
def test_filter_idempotent(text, allow):
    c = parse_corpus(text)
    once, _ = filter_doc_types(c, allow)
    twice, removed = filter_doc_types(once, allow)
    assert twice == once and removed == 0


def test_corpus_is_frozen():
    c = Corpus.from_publications([])
    with pytest.raises(Exception):
        c.window = (2000, 2001)
