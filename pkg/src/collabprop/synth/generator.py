"""Seeded synthetic roster/corpus generator with known ground truth.

Randomness comes from numpy's PCG64 bit generator. Every academic draws from
its own stream seeded with ``(seed, academic index)``, so the output does not
depend on generation order.

Model, per academic: publication count ``p = floor(median * exp(sigma * Z))``;
an individual propensity ``theta_C ~ Beta`` with the group mean ``c``; per
form a share ``r_X ~ Beta`` with mean ``x / c`` and ``theta_X = theta_C * r_X``.
Each publication is collaborative with probability ``theta_C``; a
collaborative publication then gets, independently, an intramural colleague
(probability ``r_I``, colleague drawn in proportion to their own output), a domestic external organization (``r_D``) and a foreign
organization (``r_F``). A collaborative publication with none of these gets an
unaffiliated external co-author.
"""
from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ..corpus import (Address, BylineAuthor, Corpus, Publication,
                      dump_corpus)
from ..roster import (Academic, AttributionSet, Link, Provenance, Rank, Roster,
                      academic_to_record)

RNG_ALGORITHM = "numpy.random.PCG64"
EXCLUDED_DOC_TYPE = "editorial-material"
_RETAINED_DOC_TYPES = ("article", "article", "article", "review", "letter", "proceedings-paper")

_SURNAMES = (
    "Rossi", "Russo", "Ferrari", "Esposito", "Bianchi", "Romano", "Colombo", "Ricci",
    "Marino", "Greco", "Bruno", "Gallo", "Conti", "DeLuca", "Mancini", "Costa",
    "Giordano", "Rizzo", "Lombardi", "Moretti", "Barbieri", "Fontana", "Santoro",
    "Mariani", "Rinaldi", "Caruso", "Ferrara", "Galli", "Martini", "Leone",
)
_GIVEN = (
    "Maria", "Marco", "Giulia", "Luca", "Anna", "Paolo", "Sara", "Andrea", "Elena",
    "Giuseppe", "Chiara", "Francesco", "Laura", "Alessandro", "Valentina", "Stefano",
)


class GenerationError(ValueError):
    pass


@dataclass
class GroupConfig:
    uda: str
    rank: str
    staff: int
    median_pubs: float = 3.0
    sigma: float = 1.0
    c: float = 0.9
    ci: float = 0.5
    ced: float = 0.4
    cef: float = 0.2
    concentration: float = 4.0


@dataclass
class GenConfig:
    seed: int = 0
    groups: list[GroupConfig] = field(default_factory=list)
    universities: int = 10
    domestic_orgs: int = 20
    foreign_orgs: int = 30
    foreign_countries: tuple[str, ...] = ("US", "DE", "FR", "GB", "ES", "CH", "NL", "JP")
    window: tuple[int, int] = (2006, 2010)
    home_country: str = "IT"
    sds_per_uda: int = 2
    excluded_doc_share: float = 0.0
    comonotone: bool = False

    def validate(self) -> None:
        if not 0 <= self.seed < 2 ** 64:
            raise GenerationError("seed must be a 64-bit unsigned integer")
        if self.universities < 1 or self.sds_per_uda < 1:
            raise GenerationError("need at least one university and one SDS per UDA")
        if self.domestic_orgs < 1 or self.foreign_orgs < 1 or not self.foreign_countries:
            raise GenerationError("external organization pools must be non-empty")
        if self.home_country in self.foreign_countries:
            raise GenerationError("home country listed among foreign countries")
        if not 0 <= self.excluded_doc_share <= 1:
            raise GenerationError("excluded_doc_share must lie in [0, 1]")
        if self.window[0] > self.window[1]:
            raise GenerationError("window start after window end")
        for g in self.groups:
            Rank.parse(g.rank)
            if g.staff < 0 or g.median_pubs < 0 or g.sigma < 0 or g.concentration <= 0:
                raise GenerationError(f"{g.uda}/{g.rank}: counts and spreads must be >= 0")
            for name in ("c", "ci", "ced", "cef"):
                if not 0 <= getattr(g, name) <= 1:
                    raise GenerationError(f"{g.uda}/{g.rank}: {name} must lie in [0, 1]")
            if max(g.ci, g.ced, g.cef) > g.c:
                raise GenerationError(f"{g.uda}/{g.rank}: form targets must not exceed c")

    @classmethod
    def from_dict(cls, data: dict) -> "GenConfig":
        data = dict(data)
        defaults = data.pop("group_defaults", {})
        groups = [GroupConfig(**{**defaults, **g}) for g in data.pop("groups", [])]
        for key in ("window", "foreign_countries"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(groups=groups, **data)

    @classmethod
    def load(cls, path) -> "GenConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        d["foreign_countries"] = list(self.foreign_countries)
        return d


def demo_config(seed: int | None = None) -> GenConfig:
    """The shipped demo configuration (``data/demo_config.json``)."""
    text = resources.files("collabprop").joinpath("data/demo_config.json").read_text("utf-8")
    cfg = GenConfig.from_dict(json.loads(text))
    if seed is not None:
        cfg.seed = seed
    return cfg


@dataclass
class GroundTruth:
    realized: dict[str, tuple[int, int, int, int, int]]
    targets: dict[tuple[str, str], dict[str, float]]
    rng: str = RNG_ALGORITHM


@dataclass
class Dataset:
    roster: Roster
    corpus: Corpus
    attributions: AttributionSet
    truth: GroundTruth

    def write(self, directory) -> dict[str, Path]:
        """Write roster, corpus and explicit attributions as JSON-lines files."""
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        paths = {"roster": d / "roster.jsonl", "corpus": d / "corpus.jsonl",
                 "attributions": d / "attributions.jsonl"}
        paths["roster"].write_text("".join(
            json.dumps(academic_to_record(a), separators=(",", ":")) + "\n" for a in self.roster),
            encoding="utf-8")
        paths["corpus"].write_text(dump_corpus(self.corpus), encoding="utf-8")
        paths["attributions"].write_text("".join(
            json.dumps({"academic": l.academic_id, "pub": l.pub_id}, separators=(",", ":")) + "\n"
            for l in self.attributions), encoding="utf-8")
        return paths


def _alpha(n: int) -> str:
    out = ""
    while n:
        n, r = divmod(n - 1, 26)
        out = chr(ord("a") + r) + out
    return out


def _beta(rng, mean: float, concentration: float) -> float:
    if mean <= 0:
        return 0.0
    if mean >= 1:
        return 1.0
    return float(rng.beta(mean * concentration, (1 - mean) * concentration))


def _byline(a: Academic) -> str:
    return f"{a.surname}, {a.given_names[0]}."


def _pick_colleague(rng, focal: Academic, staff: list[Academic], weight: dict[str, int]) -> Academic:
    # Colleagues are drawn in proportion to their own drawn output, so that
    # co-authorship concentrates on productive people; uniform if all are zero.
    pool = [c for c in staff if c.academic_id != focal.academic_id]
    w = np.array([weight[c.academic_id] for c in pool], dtype=float)
    total = w.sum()
    if total == 0:
        return pool[int(rng.integers(len(pool)))]
    k = int(np.searchsorted(np.cumsum(w), rng.random() * total, side="right"))
    return pool[min(k, len(pool) - 1)]


def generate(config: GenConfig) -> Dataset:
    config.validate()
    master = np.random.Generator(np.random.PCG64(config.seed))
    home = config.home_country

    members = []   # (academic, group)
    idx = 0
    for g in config.groups:
        rank = Rank.parse(g.rank)
        for _ in range(g.staff):
            uni = int(master.integers(config.universities))
            sds = int(master.integers(config.sds_per_uda))
            surname = _SURNAMES[idx % len(_SURNAMES)] + _alpha(idx // len(_SURNAMES))
            a = Academic(f"A{idx:05d}", surname, _GIVEN[(idx * 7) % len(_GIVEN)], rank,
                         f"{g.uda}/{sds + 1:02d}", g.uda, f"UNI{uni + 1:03d}")
            members.append((a, g))
            idx += 1
    roster = Roster(a for a, _ in members)

    colleagues = defaultdict(list)
    for a, _ in members:
        colleagues[a.university_id].append(a)
    for a, g in members:
        if g.ci > 0 and len(colleagues[a.university_id]) < 2:
            raise GenerationError(
                f"intramural events requested for {a.academic_id} ({g.uda}/{g.rank}) but "
                f"{a.university_id} has no other academic")

    universities = {a.university_id: Address(f"University {a.university_id[3:]}", home,
                                             a.university_id) for a, _ in members}
    domestic = [Address(f"Domestic Institute {j + 1}", home, f"DOM{j + 1:03d}")
                for j in range(config.domestic_orgs)]
    foreign = [Address(f"Foreign Institute {j + 1}",
                       config.foreign_countries[j % len(config.foreign_countries)],
                       f"FOR{j + 1:03d}") for j in range(config.foreign_orgs)]

    # draw productivity and propensities per academic
    rngs, draws = [], []
    for i, (a, g) in enumerate(members):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([config.seed, i])))
        p = int(math.floor(g.median_pubs * math.exp(g.sigma * rng.standard_normal())))
        theta_c = _beta(rng, g.c, g.concentration)
        shares = tuple(_beta(rng, x / g.c, g.concentration) if g.c > 0 else 0.0
                       for x in (g.ci, g.ced, g.cef))
        rngs.append(rng)
        draws.append((p, theta_c, shares))

    if config.comonotone:
        by_group = defaultdict(list)
        for i, (_, g) in enumerate(members):
            by_group[id(g)].append(i)
        for idxs in by_group.values():
            by_p = sorted(idxs, key=lambda i: (draws[i][0], i))
            thetas = sorted((draws[i][1:] for i in idxs), key=lambda t: t[0])
            for i, t in zip(by_p, thetas):
                draws[i] = (draws[i][0],) + t

    weight = {a.academic_id: draws[i][0] for i, (a, _) in enumerate(members)}
    lo, hi = config.window
    pubs = []
    links = []
    truth = {a.academic_id: [0, 0, 0, 0, 0] for a, _ in members}
    for i, (a, g) in enumerate(members):
        rng = rngs[i]
        p, theta_c, (r_i, r_d, r_f) = draws[i]
        for k in range(p):
            pub_id = f"{a.academic_id}-{k + 1:03d}"
            year = int(rng.integers(lo, hi + 1))
            excluded = rng.random() < config.excluded_doc_share
            doc_type = EXCLUDED_DOC_TYPE if excluded else _RETAINED_DOC_TYPES[
                int(rng.integers(len(_RETAINED_DOC_TYPES)))]
            collab = rng.random() < theta_c
            intra = collab and rng.random() < r_i
            dom = collab and rng.random() < r_d
            intl = collab and rng.random() < r_f

            addresses = [universities[a.university_id]]
            authors = [BylineAuthor(_byline(a), (0,))]
            attributed = [a.academic_id]
            if intra:
                mate = _pick_colleague(rng, a, colleagues[a.university_id], weight)
                authors.append(BylineAuthor(_byline(mate), (0,)))
                attributed.append(mate.academic_id)
            if dom:
                addresses.append(domestic[int(rng.integers(len(domestic)))])
                authors.append(BylineAuthor(f"Extdom{pub_id}, J.", (len(addresses) - 1,)))
            if intl:
                addresses.append(foreign[int(rng.integers(len(foreign)))])
                authors.append(BylineAuthor(f"Extfor{pub_id}, K.", (len(addresses) - 1,)))
            if collab and not (intra or dom or intl):
                authors.append(BylineAuthor(f"Extgen{pub_id}, L.", ()))

            pubs.append(Publication(pub_id, year, doc_type, tuple(authors), tuple(addresses)))
            for aid in attributed:
                links.append(Link(aid, pub_id, Provenance.EXPLICIT))
                if not excluded:
                    t = truth[aid]
                    t[0] += 1
                    t[1] += collab
                    t[2] += intra
                    t[3] += dom
                    t[4] += intl

    corpus = Corpus.from_publications(pubs, config.window, home)
    targets = {(g.uda, Rank.parse(g.rank).value): {"C": g.c, "CI": g.ci, "CED": g.ced, "CEF": g.cef}
               for g in config.groups}
    return Dataset(roster, corpus, AttributionSet(links),
                   GroundTruth({k: tuple(v) for k, v in truth.items()}, targets))
