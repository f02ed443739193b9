"""Collaboration forms of one publication from the point of view of one academic."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

from .corpus import Publication
from .names import byline_key, name_matches
from .roster import Academic


class NotAttributedError(ValueError):
    pass


@dataclass(frozen=True)
class CollabFlags:
    is_collab: bool = False
    intramural: bool = False
    extramural_domestic: bool = False
    extramural_international: bool = False

    def __post_init__(self):
        if not self.is_collab and (self.intramural or self.extramural_domestic
                                   or self.extramural_international):
            raise ValueError("collaboration form set on a non-collaborative publication")


NONE = CollabFlags()


def distinct_authors(pub: Publication) -> dict[str, set[int]]:
    """Distinct byline authors mapped to the union of their address links."""
    out: dict[str, set[int]] = {}
    for author in pub.authors:
        out.setdefault(byline_key(author.name), set()).update(author.address_idxs)
    return out


def _other_linked_author(pub: Publication, focal: Academic, authors: dict[str, set[int]]) -> bool:
    # Byline authors linked to the focal university, excluding the focal academic.
    # When the focal byline position cannot be pinned down, one linked author
    # could be the focal academic, so two are needed.
    key = focal.university_key
    linked = {name for name, idxs in authors.items()
              if any(pub.addresses[i].identity == key for i in idxs)}
    if len(linked) >= 2:
        return True
    if not linked:
        return False
    candidates = {byline_key(a.name) for a in pub.authors
                  if name_matches(a.name, focal.surname, focal.given_names)}
    if not candidates:
        return False
    return not linked <= candidates


def classify(pub: Publication, focal: Academic, attributed: Collection[Academic],
             home_country: str = "IT") -> CollabFlags:
    """Collaboration flags of ``pub`` for ``focal``.

    ``attributed`` holds every roster academic linked to ``pub``, focal included.
    Forms are not exclusive: one publication can be intramural, domestic and
    international at once. Single-authored publications are never collaborations,
    whatever their number of addresses.
    """
    if all(a.academic_id != focal.academic_id for a in attributed):
        raise NotAttributedError(f"{focal.academic_id} is not attributed to {pub.pub_id}")

    authors = distinct_authors(pub)
    if len(authors) < 2:
        return NONE

    home = focal.university_key
    intramural = any(a.academic_id != focal.academic_id and a.university_key == home
                     for a in attributed) or _other_linked_author(pub, focal, authors)
    domestic = any(ad.country == home_country and ad.identity != home for ad in pub.addresses)
    international = any(ad.country != home_country for ad in pub.addresses)
    return CollabFlags(True, intramural, domestic, international)
