"""Per-academic collaboration profiles and group statistics.

Ratios are exact :class:`fractions.Fraction` values; rounding happens only
when reports are rendered.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .classify import CollabFlags
from .roster import Academic


class NonProductiveError(ValueError):
    pass


class Form(enum.Enum):
    """Collaboration form: (ratio name, count attribute, flag attribute)."""

    C = ("C", "cp", "is_collab")
    CI = ("CI", "cip", "intramural")
    CED = ("CED", "cedp", "extramural_domestic")
    CEF = ("CEF", "cefp", "extramural_international")

    def __init__(self, label, count_attr, flag_attr):
        self.label = label
        self.count_attr = count_attr
        self.flag_attr = flag_attr

    @classmethod
    def parse(cls, token: str) -> "Form":
        return cls[token.strip().upper()]


FORMS = (Form.C, Form.CI, Form.CED, Form.CEF)


@dataclass(frozen=True)
class CollabProfile:
    academic_id: str
    p: int
    cp: int
    cip: int
    cedp: int
    cefp: int

    def __post_init__(self):
        if self.p < 1:
            raise NonProductiveError(f"{self.academic_id}: profile undefined for p = {self.p}")
        if not (0 <= self.cp <= self.p and self.cip <= self.cp
                and self.cedp <= self.cp and self.cefp <= self.cp):
            raise ValueError(f"{self.academic_id}: inconsistent counts")

    def count(self, form: Form) -> int:
        return getattr(self, form.count_attr)

    def ratio(self, form: Form) -> Fraction:
        return Fraction(self.count(form), self.p)

    @property
    def C(self) -> Fraction:
        return self.ratio(Form.C)

    @property
    def CI(self) -> Fraction:
        return self.ratio(Form.CI)

    @property
    def CED(self) -> Fraction:
        return self.ratio(Form.CED)

    @property
    def CEF(self) -> Fraction:
        return self.ratio(Form.CEF)


def build_profile(academic: Academic | str, flags: Iterable[CollabFlags]) -> CollabProfile:
    """Tally the flags of every attributed publication (one entry per publication)."""
    aid = academic if isinstance(academic, str) else academic.academic_id
    p = cp = cip = cedp = cefp = 0
    for f in flags:
        p += 1
        cp += f.is_collab
        cip += f.intramural
        cedp += f.extramural_domestic
        cefp += f.extramural_international
    if p == 0:
        raise NonProductiveError(f"non-productive academic {aid}: no attributed publications")
    return CollabProfile(aid, p, cp, cip, cedp, cefp)


@dataclass(frozen=True)
class StaffStatus:
    productive: bool
    collaborative: bool


def classify_staff(academic: Academic | str, flags: Iterable[CollabFlags]) -> StaffStatus:
    flags = list(flags)
    return StaffStatus(bool(flags), any(f.is_collab for f in flags))


@dataclass(frozen=True)
class GroupStats:
    n: int
    mean: Fraction
    pct_zero: Fraction
    pct_full: Fraction
    key: tuple = ()


def _ratios(profiles: Iterable[CollabProfile], form: Form) -> list[Fraction]:
    return [pr.ratio(form) for pr in profiles]


def group_stats(profiles: Iterable[CollabProfile], form: Form = Form.C, key: tuple = ()) -> GroupStats:
    values = _ratios(profiles, form)
    if not values:
        raise ValueError("group_stats needs at least one profile")
    n = len(values)
    return GroupStats(
        n=n,
        mean=sum(values, Fraction(0)) / n,
        pct_zero=Fraction(sum(v == 0 for v in values), n),
        pct_full=Fraction(sum(v == 1 for v in values), n),
        key=key,
    )


def aggregate_propensity(profiles: Iterable[CollabProfile], form: Form = Form.C) -> Fraction:
    """Pooled estimator: total form count over total publications of the group."""
    profiles = list(profiles)
    total = sum(pr.p for pr in profiles)
    if total == 0:
        raise ValueError("aggregate propensity undefined: zero total publications")
    return Fraction(sum(pr.count(form) for pr in profiles), total)


def ratio_values(profiles: Sequence[CollabProfile], form: Form) -> list[Fraction]:
    return _ratios(profiles, form)
