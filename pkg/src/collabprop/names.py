"""Byline name normalization and surname/initials matching."""
from __future__ import annotations

import re
import unicodedata

_SPLIT = re.compile(r"[\s.\-]+")
_INITIALS_TOKEN = re.compile(r"^(?:[A-Z]\.?-?)+$")


def fold(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c)).casefold()


def byline_key(name: str) -> str:
    """Key used to collapse repeated names within one byline."""
    return " ".join(name.split()).casefold()


def surname_key(surname: str) -> str:
    return "".join(c for c in fold(surname) if c.isalnum())


def _initials_of(part: str) -> tuple[str, ...]:
    out = []
    for piece in _SPLIT.split(part.strip()):
        if not piece:
            continue
        # "MA" style run of capitals: one initial per letter
        if piece.isupper() and len(piece) <= 3 and piece.isalpha():
            out.extend(fold(c) for c in piece)
        else:
            out.append(fold(piece[0]))
    return tuple(out)


def parse_byline_name(name: str) -> tuple[str, tuple[str, ...]] | None:
    """Split ``"Rossi, M.A."`` or ``"Rossi MA"`` into ``("rossi", ("m", "a"))``.

    Returns None when no surname or no initials can be found.
    """
    name = " ".join(name.split())
    if "," in name:
        surname, _, given = name.partition(",")
        initials = _initials_of(given)
    else:
        tokens = name.split(" ")
        k = len(tokens)
        while k > 1 and _INITIALS_TOKEN.match(tokens[k - 1]) and len(tokens[k - 1].replace(".", "").replace("-", "")) <= 3:
            k -= 1
        surname = " ".join(tokens[:k])
        initials = _initials_of(" ".join(tokens[k:]))
    skey = surname_key(surname)
    if not skey or not initials:
        return None
    return skey, initials


def given_initials(given_names: str) -> tuple[str, ...]:
    return tuple(fold(p[0]) for p in _SPLIT.split(given_names.strip()) if p)


def name_matches(byline_name: str, surname: str, given_names: str) -> bool:
    """True iff surnames agree and the byline initials prefix the given-name initials."""
    parsed = parse_byline_name(byline_name)
    if parsed is None:
        return False
    skey, initials = parsed
    if skey != surname_key(surname):
        return False
    full = given_initials(given_names)
    return full[:len(initials)] == initials
