"""Brute-force recount of every indicator, written independently of the pipeline.

Nothing here calls into ``classify``, ``indicators`` or ``names``: the
collaboration rules are restated from scratch so that agreement with the
pipeline means something. Only plain record fields are read from the inputs.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class OracleProfile:
    academic_id: str
    p: int
    cp: int
    cip: int
    cedp: int
    cefp: int

    @property
    def counts(self) -> tuple[int, int, int, int, int]:
        return (self.p, self.cp, self.cip, self.cedp, self.cefp)

    @property
    def ratios(self) -> tuple[Fraction, ...] | None:
        if self.p == 0:
            return None
        return tuple(Fraction(x, self.p) for x in (self.cp, self.cip, self.cedp, self.cefp))


def _org(addr) -> str:
    raw = addr.org_id if addr.org_id else addr.org_name
    return re.sub(r"\s+", " ", raw).strip().casefold()


def _plain(s: str) -> str:
    s = unicodedata.normalize("NFKD", s)
    return "".join(ch for ch in s if unicodedata.category(ch) != "Mn").casefold()


def _letters(s: str) -> list[str]:
    res = []
    for chunk in re.split(r"[\s.\-]+", s):
        if chunk == "":
            continue
        if chunk.isalpha() and chunk.isupper() and len(chunk) < 4:
            res += [_plain(ch) for ch in chunk]
        else:
            res.append(_plain(chunk[0]))
    return res


def _byline_is(name: str, surname: str, given: str) -> bool:
    text = re.sub(r"\s+", " ", name).strip()
    if "," in text:
        sur, given_part = text.split(",", 1)
    else:
        words = text.split(" ")
        cut = len(words)
        while cut > 1 and re.fullmatch(r"([A-Z]\.?-?)+", words[cut - 1]) \
                and len(re.sub(r"[.\-]", "", words[cut - 1])) < 4:
            cut -= 1
        sur, given_part = " ".join(words[:cut]), " ".join(words[cut:])
    inits = _letters(given_part)
    key = "".join(ch for ch in _plain(sur) if ch.isalnum())
    if not key or not inits:
        return False
    if key != "".join(ch for ch in _plain(surname) if ch.isalnum()):
        return False
    mine = [_plain(w[0]) for w in re.split(r"[\s.\-]+", given.strip()) if w]
    return mine[: len(inits)] == inits


def _forms(pub, me, on_pub, home_country) -> tuple[bool, bool, bool, bool]:
    names = {}
    for author in pub.authors:
        k = re.sub(r"\s+", " ", author.name).strip().casefold()
        names.setdefault(k, set()).update(author.address_idxs)
    if len(names) <= 1:
        return (False, False, False, False)

    my_org = re.sub(r"\s+", " ", me.university_id).strip().casefold()

    intra = False
    for other in on_pub:
        if other.academic_id != me.academic_id and \
                re.sub(r"\s+", " ", other.university_id).strip().casefold() == my_org:
            intra = True
    if not intra:
        at_my_org = [k for k, idxs in names.items() if any(_org(pub.addresses[i]) == my_org for i in idxs)]
        maybe_me = [k for k in names
                    if any(re.sub(r"\s+", " ", a.name).strip().casefold() == k
                           and _byline_is(a.name, me.surname, me.given_names) for a in pub.authors)]
        if len(at_my_org) > 1:
            intra = True
        elif len(at_my_org) == 1 and maybe_me and at_my_org[0] not in maybe_me:
            intra = True

    dom = False
    intl = False
    for addr in pub.addresses:
        if addr.country == home_country:
            if _org(addr) != my_org:
                dom = True
        else:
            intl = True
    return (True, intra, dom, intl)


def oracle_recount(roster, corpus, attributions, home_country: str = "IT"
                   ) -> dict[str, OracleProfile]:
    """Counts p, cp, cip, cedp, cefp for every roster academic (p may be 0)."""
    pairs = set(attributions.pairs() if hasattr(attributions, "pairs") else attributions)
    people = {a.academic_id: a for a in roster}
    on_pub: dict[str, list] = {}
    mine: dict[str, set] = {}
    for aid, pid in pairs:
        on_pub.setdefault(pid, []).append(people[aid])
        mine.setdefault(aid, set()).add(pid)

    out = {}
    for a in roster:
        p = cp = cip = cedp = cefp = 0
        my_pubs = mine.get(a.academic_id, set())
        for pub in corpus:
            if pub.pub_id not in my_pubs:
                continue
            collab, intra, dom, intl = _forms(pub, a, on_pub[pub.pub_id], home_country)
            p += 1
            cp += collab
            cip += intra
            cedp += dom
            cefp += intl
        out[a.academic_id] = OracleProfile(a.academic_id, p, cp, cip, cedp, cefp)
    return out


def compare_with_pipeline(oracle: dict[str, OracleProfile], profiles: dict,
                          population=None) -> list[str]:
    """Human-readable mismatches between oracle counts and pipeline profiles.

    ``population`` limits the check to the academics the pipeline analyzed
    (e.g. those in included SDSs); default is every academic the oracle saw.
    """
    problems = []
    for aid, pr in profiles.items():
        o = oracle.get(aid)
        mine = (pr.p, pr.cp, pr.cip, pr.cedp, pr.cefp)
        if o is None or o.counts != mine:
            problems.append(f"{aid}: pipeline {mine} vs oracle {o.counts if o else None}")
        elif o.ratios != (pr.C, pr.CI, pr.CED, pr.CEF):
            problems.append(f"{aid}: ratio mismatch")
    for aid, o in oracle.items():
        if population is not None and aid not in population:
            continue
        if aid not in profiles and o.p > 0:
            problems.append(f"{aid}: productive per oracle but missing from pipeline")
    return problems
