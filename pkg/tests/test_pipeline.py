"""Small fixture end to end, checked against the hand tabulation in EXPECTED.md."""
from fractions import Fraction

import pytest

from collabprop.classify import CollabFlags
from collabprop.indicators import Form
from collabprop.pipeline import TOTAL, EmptyPopulationError, analyze
from collabprop.report import table_staff
from collabprop.roster import Rank

EXPECTED_PROFILES = {
    "A01": (4, 3, 1, 2, 1),
    "A02": (3, 3, 1, 2, 0),
    "A03": (3, 2, 1, 2, 0),
    "A04": (3, 3, 2, 2, 1),
    "A05": (2, 1, 1, 0, 1),
    "A06": (3, 3, 2, 0, 1),
    "A07": (3, 2, 1, 1, 1),
}

# uda, rank -> pubs, staff, productive, collaborative
EXPECTED_TABLE1 = {
    ("PHY", Rank.FULL): (4, 1, 1, 1),
    ("PHY", Rank.ASSOCIATE): (3, 1, 1, 1),
    ("PHY", Rank.ASSISTANT): (3, 1, 1, 1),
    ("BIO", Rank.FULL): (3, 1, 1, 1),
    ("BIO", Rank.ASSOCIATE): (2, 1, 1, 1),
    ("BIO", Rank.ASSISTANT): (3, 1, 1, 1),
    ("MAT", Rank.FULL): (3, 1, 1, 1),
    ("MAT", Rank.ASSOCIATE): (0, 0, 0, 0),
    ("MAT", Rank.ASSISTANT): (0, 1, 0, 0),
    (TOTAL, Rank.FULL): (9, 3, 3, 3),
    (TOTAL, Rank.ASSOCIATE): (5, 2, 2, 2),
    (TOTAL, Rank.ASSISTANT): (6, 3, 2, 2),
}


@pytest.fixture(scope="module")
def result(small):
    return analyze(*small)


def counts(pr):
    return pr.p, pr.cp, pr.cip, pr.cedp, pr.cefp


def test_profiles_match_hand_tabulation(result):
    assert {aid: counts(pr) for aid, pr in result.profiles.items()} == EXPECTED_PROFILES
    a01 = result.profiles["A01"]
    assert (a01.C, a01.CI, a01.CED, a01.CEF) == (Fraction(3, 4), Fraction(1, 4),
                                                 Fraction(1, 2), Fraction(1, 4))


def test_editorial_removed_and_nonproductive_excluded(result):
    assert result.removed_doc_types == 1
    assert "P14" not in result.corpus
    assert "A09" not in result.profiles


def test_sds_coverage(result):
    cov = result.coverage
    assert (cov["FIS/01"].productive_count, cov["FIS/01"].staff_count) == (3, 3)
    assert cov["MAT/05"].productive_fraction == Fraction(1, 2) and cov["MAT/05"].included
    assert not cov["CHE/03"].included
    assert result.included_sds == {"FIS/01", "BIO/10", "MAT/05"}


def test_single_author_multi_affiliation_not_collaborative(result):
    assert result.flags["A01", "P01"] == CollabFlags()
    assert not result.flags["A03", "P05"].is_collab


def test_table1_counts_and_order(result):
    t = table_staff(result.corpus, result.roster, result.attributions, result.included_sds)
    got = {(r.uda, r.rank): (r.pubs_count, r.staff_total, r.productive_count,
                             r.collaborative_count) for r in t.records}
    assert got == EXPECTED_TABLE1
    assert [r[0] for r in t.rows[::3]] == ["BIO", "PHY", "MAT", TOTAL]
    full_total = got[TOTAL, Rank.FULL][0]
    assert full_total < sum(got[u, Rank.FULL][0] for u in ("PHY", "BIO", "MAT"))


def test_table1_percentages(result):
    t = table_staff(result.corpus, result.roster, result.attributions, result.included_sds)
    rows = {(r[0], r[1]): r for r in t.rows}
    assert rows[TOTAL, "Full"][3] == "64.3"
    assert rows["PHY", "Associate"][3] == "42.9"
    assert rows["MAT", "Associate"][7] == "n/a"
    assert rows[TOTAL, "Assistant"][7] == "66.7"


def test_group_stats_and_comparisons(result):
    st = result.stats[Form.C, TOTAL, Rank.FULL]
    assert st.n == 3 and st.mean == Fraction(29, 36)
    assert result.stats[Form.C, "MAT", Rank.ASSOCIATE] is None
    mat = result.comparisons[Form.C, "MAT"]
    assert [c.computable for c in mat] == [False, False, False]


def test_workers_do_not_change_results(small, result):
    par = analyze(*small, workers=2)
    assert par.profiles == result.profiles
    assert par.flags == result.flags
    assert par.stats == result.stats


def test_threshold_above_everything_is_empty(small):
    with pytest.raises(EmptyPopulationError, match="no included SDS"):
        analyze(*small, sds_threshold=1, doc_types={"editorial-material"})


def test_strict_threshold_drops_half_covered_sds(small):
    r = analyze(*small, sds_threshold=Fraction(51, 100))
    assert "MAT/05" not in r.included_sds
    assert "A07" not in r.profiles
