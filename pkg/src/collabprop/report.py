"""Staff/publication and propensity tables, rendered as CSV or Markdown."""
from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .classify import distinct_authors
from .corpus import Corpus
from .indicators import Form, GroupStats
from .roster import RANKS, AttributionSet, Rank, Roster
from .stats import COMPARISON_ORDER, RankComparison

TOTAL = "Total"
FORMATS = ("csv", "md")
TABLE_NUMBERS = {Form.C: 2, Form.CI: 3, Form.CED: 4, Form.CEF: 5}


def fmt_pct(value: Fraction | float | None) -> str:
    """Share in [0, 1] as a percentage with one decimal, rounding half to even."""
    if value is None:
        return "n/a"
    tenths = round(Fraction(value) * 1000)
    return f"{tenths // 10}.{tenths % 10}"


def fmt_ratio(value: Fraction, digits: int = 6) -> str:
    scaled = round(Fraction(value) * 10 ** digits)
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)
    records: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class StaffRow:
    uda: str
    rank: Rank
    pubs_count: int
    pubs_pct: Fraction | None
    staff_total: int
    staff_pct: Fraction | None
    productive_count: int
    productive_pct: Fraction | None
    collaborative_count: int
    collaborative_pct: Fraction | None


def _share(num: int, den: int) -> Fraction | None:
    return Fraction(num, den) if den else None


def table_staff(corpus: Corpus, roster: Roster, attributions: AttributionSet,
                included_sds=None) -> Table:
    """Staff, productive/collaborative staff and publications per UDA and rank.

    Publication counts are distinct publications with at least one author of
    that rank and UDA; the Total rows take the union across UDAs, so a
    publication co-authored across UDAs is counted once there. Pass
    ``included_sds=None`` for pre-filter figures.
    """
    staff = [a for a in roster if included_sds is None or a.sds in included_sds]
    pubs_by = defaultdict(set)       # (uda, rank) -> pub ids
    uda_pubs = defaultdict(set)      # uda -> pub ids
    headcount = defaultdict(lambda: [0, 0, 0])   # (uda, rank) -> staff, productive, collaborative
    for a in staff:
        pubs = [p for p in attributions.pubs_of(a.academic_id) if p in corpus]
        collaborative = any(len(distinct_authors(corpus[p])) >= 2 for p in pubs)
        for key in ((a.uda, a.rank), (TOTAL, a.rank)):
            pubs_by[key].update(pubs)
            c = headcount[key]
            c[0] += 1
            c[1] += bool(pubs)
            c[2] += collaborative
        uda_pubs[a.uda].update(pubs)
        uda_pubs[TOTAL].update(pubs)

    udas = sorted({a.uda for a in staff}, key=lambda u: (-len(uda_pubs[u]), u))
    table = Table("table1_staff", [
        "UDA", "Rank", "Publications", "Publications %", "Staff", "Staff %",
        "Productive", "Productive %", "Collaborative", "Collaborative %"])
    for uda in udas + [TOTAL]:
        uda_staff = sum(headcount[uda, r][0] for r in RANKS)
        for rank in RANKS:
            n_staff, n_prod, n_collab = headcount[uda, rank]
            n_pubs = len(pubs_by[uda, rank])
            row = StaffRow(uda, rank, n_pubs, _share(n_pubs, len(uda_pubs[uda])),
                           n_staff, _share(n_staff, uda_staff),
                           n_prod, _share(n_prod, n_staff), n_collab, _share(n_collab, n_staff))
            table.records.append(row)
            table.rows.append([
                uda, rank.label, str(n_pubs), fmt_pct(row.pubs_pct), str(n_staff),
                fmt_pct(row.staff_pct), str(n_prod), fmt_pct(row.productive_pct),
                str(n_collab), fmt_pct(row.collaborative_pct)])
    return table


@dataclass(frozen=True)
class PropensityRow:
    uda: str
    rank: Rank
    stats: GroupStats | None
    comparison: RankComparison


def _sort_key(uda: str, stats: Mapping) -> tuple:
    full = stats.get((uda, Rank.FULL))
    return (full is None, -(full.mean if full else 0), uda)


def table_propensity(form: Form, stats: Mapping[tuple[str, Rank], GroupStats | None],
                     comparisons: Mapping[str, Sequence[RankComparison]]) -> Table:
    """Mean, nil share and full share per (UDA, rank), plus rank comparisons.

    UDA blocks are sorted by descending Full-professor mean (ties by UDA code),
    with the Total block last. Each row carries the comparison of its rank
    against the next one in the Full/Associate/Assistant cycle.
    """
    label = form.label
    table = Table(f"table{TABLE_NUMBERS[form]}_{label}", [
        "UDA", "Rank", f"Mean {label}", f"{label} = 0%", f"{label} = 100%", "vs",
        "U Mann-Whitney"])
    udas = sorted((u for u in comparisons if u != TOTAL), key=lambda u: _sort_key(u, stats))
    if TOTAL in comparisons:
        udas.append(TOTAL)
    for uda in udas:
        comps = list(comparisons[uda])
        for rank, comp, (_, counterpart) in zip(RANKS, comps, COMPARISON_ORDER):
            st = stats.get((uda, rank))
            table.records.append(PropensityRow(uda, rank, st, comp))
            table.rows.append([
                uda, rank.label,
                fmt_pct(st.mean if st else None),
                fmt_pct(st.pct_zero if st else None),
                fmt_pct(st.pct_full if st else None),
                f"vs {counterpart.label}", comp.cell])
    return table


def propensity_table(analysis, form: Form) -> Table:
    stats = {(u, r): s for (f, u, r), s in analysis.stats.items() if f is form}
    comps = {u: c for (f, u), c in analysis.comparisons.items() if f is form}
    return table_propensity(form, stats, comps)


def profile_table(analysis) -> Table:
    table = Table("profiles", [
        "academic_id", "rank", "uda", "sds", "university", "p", "cp", "cip", "cedp", "cefp",
        "C", "CI", "CED", "CEF"])
    for aid, pr in analysis.profiles.items():
        a = analysis.roster[aid]
        table.records.append(pr)
        table.rows.append([
            aid, a.rank.value, a.uda, a.sds, a.university_id,
            *(str(x) for x in (pr.p, pr.cp, pr.cip, pr.cedp, pr.cefp)),
            *(fmt_ratio(x) for x in (pr.C, pr.CI, pr.CED, pr.CEF))])
    return table


def coverage_table(coverage) -> Table:
    table = Table("sds_coverage", ["SDS", "Staff", "Productive", "Productive %", "Included"])
    for sds, c in coverage.items():
        table.records.append(c)
        table.rows.append([sds, str(c.staff_count), str(c.productive_count),
                           fmt_pct(c.productive_fraction), "yes" if c.included else "no"])
    return table


def _markdown_cell(text: str) -> str:
    return text.replace("|", "\\|")


def export(table: Table, fmt: str = "csv") -> bytes:
    """Render ``table`` as UTF-8 CSV or a Markdown pipe table."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        writer.writerows(table.rows)
        return buf.getvalue().encode("utf-8")
    if fmt in ("md", "markdown"):
        lines = [f"> {note}" for note in table.notes]
        if lines:
            lines.append("")
        lines.append("| " + " | ".join(_markdown_cell(c) for c in table.columns) + " |")
        lines.append("|" + "|".join("---" for _ in table.columns) + "|")
        for row in table.rows:
            lines.append("| " + " | ".join(_markdown_cell(c) for c in row) + " |")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {fmt!r}; expected one of {FORMATS}")


def all_tables(analysis) -> list[Table]:
    tables = [table_staff(analysis.corpus, analysis.roster, analysis.attributions,
                          analysis.included_sds)]
    tables += [propensity_table(analysis, f) for f in TABLE_NUMBERS]
    return tables
