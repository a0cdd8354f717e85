"""PACS code parsing.

A PACS code looks like ``05.45.-a``: two digits, a dot, two digits, then an
optional dot and a free-form suffix. Only the first two pairs (``05.45``) are
used as the subfield key.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import NewType

from .errors import MalformedPacs

SubfieldKey = NewType("SubfieldKey", str)

_PACS_RE = re.compile(r"(\d)(\d)\.(\d\d)(?:\.(\S*))?")
_KEY_RE = re.compile(r"\d\d\.\d\d")


@dataclass(frozen=True, slots=True)
class PacsCode:
    level1: str
    level2: str
    level3: str
    suffix: str = ""

    def __post_init__(self):
        if not _KEY_RE.fullmatch(self.level3):
            raise MalformedPacs(f"level-3 code must look like NN.NN, got {self.level3!r}")
        if not (self.level2 == self.level3[:2] and self.level1 == self.level2[0]):
            raise MalformedPacs(f"inconsistent levels {self.level1!r}/{self.level2!r}/{self.level3!r}")

    def __str__(self) -> str:
        return f"{self.level3}.{self.suffix}" if self.suffix else self.level3

    @property
    def key(self) -> SubfieldKey:
        return SubfieldKey(self.level3)


@lru_cache(maxsize=65536)
def parse_pacs(text: str) -> PacsCode:
    """Parse one PACS code such as ``"05.45.-a"`` or ``"12.38"``.

    Surrounding whitespace is ignored. The suffix after the second dot is kept
    verbatim. Raises :class:`MalformedPacs` for anything else.
    """
    if not isinstance(text, str):
        raise MalformedPacs(f"PACS code must be a string, got {type(text).__name__}")
    s = text.strip()
    if not s:
        raise MalformedPacs("empty PACS code")
    m = _PACS_RE.fullmatch(s)
    if m is None:
        raise MalformedPacs(f"malformed PACS code {text!r}")
    d1, d2, d34, suffix = m.groups()
    return PacsCode(level1=d1, level2=d1 + d2, level3=f"{d1}{d2}.{d34}", suffix=suffix or "")


def subfield_key(code: PacsCode | str) -> SubfieldKey:
    """Level-3 key of a code; strings are parsed first."""
    if isinstance(code, str):
        code = parse_pacs(code)
    return code.key


def is_subfield_key(text: str) -> bool:
    return isinstance(text, str) and _KEY_RE.fullmatch(text) is not None


def check_subfield_key(text: str) -> SubfieldKey:
    if not is_subfield_key(text):
        raise MalformedPacs(f"subfield key must look like NN.NN, got {text!r}")
    return SubfieldKey(text)
