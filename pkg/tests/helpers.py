"""Shared test helpers: a plain-text polynomial reader and proportionality."""

import re
from collections import Counter
from fractions import Fraction

from geoinv.multiindex import MultiIndex

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*((?:m\d+(?:\^\d+)?)+)")
_FACTOR = re.compile(r"m(\d+)(?:\^(\d+))?")


def parse_formula(text: str) -> dict[tuple, Fraction]:
    """Plain-text polynomial -> ``{factor-key: coefficient}``."""
    out: dict[tuple, Fraction] = {}
    pos = 0
    stripped = text.replace(" ", "")
    for m in _TERM.finditer(stripped):
        assert m.start() == pos, f"unparsed text near {stripped[pos:pos + 20]!r}"
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        factors = Counter()
        for f in _FACTOR.finditer(m.group(3)):
            factors[MultiIndex(int(d) for d in f.group(1))] += int(f.group(2) or 1)
        key = tuple(sorted(factors.items()))
        out[key] = out.get(key, Fraction(0)) + sign * coef
    assert pos == len(stripped), f"trailing text {stripped[pos:]!r}"
    return {k: v for k, v in out.items() if v}


def formula_vector(text: str, desc, columns=None) -> list[Fraction]:
    """Coefficient vector of a formula over `desc` (or a column subset)."""
    vec = [Fraction(0)] * len(desc)
    for key, c in parse_formula(text).items():
        vec[desc.position(key)] += c
    if columns is not None:
        return [vec[c] for c in columns]
    return vec


def proportional(a, b) -> bool:
    """True if a = t*b for some nonzero rational t."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    if len(a) != len(b) or not any(a) or not any(b):
        return False
    i = next(k for k, x in enumerate(b) if x)
    t = a[i] / b[i]
    return t != 0 and all(x == t * y for x, y in zip(a, b))
