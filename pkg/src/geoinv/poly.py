"""Evaluation and text serialization of invariant polynomials.

File grammar (version 1; see docs/format.md)::

    geoinv v1 dim=<n>
    <blank line>
    class=<scale|rotation|affine> d=<int> desc=[(p,k),...] planes=<mode>
    term <num>/<den> (e1,...,en)^<pow> (e1,...,en)^<pow> ...
    term ...
    <blank line>
    class=...

Records are separated by one blank line; the file ends with a newline.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegenerateCloud, InsufficientOrder, MalformedFile, UnsupportedVersion
from .invariants import KINDS, InvariantPolynomial
from .moments import MomentTable
from .multiindex import BasisDescriptor, MonomialEntry, MultiIndex

FORMAT_VERSION = 1
_HEADER = re.compile(r"^geoinv v(\d+) dim=(\d+)$")
_FACTOR = re.compile(r"^\((\d+(?:,\d+)*)\)\^(\d+)$")
_DESC = re.compile(r"^\[(\(\d+,\d+\)(?:,\(\d+,\d+\))*)\]$")
_COEF = re.compile(r"^(-?\d+)/(\d+)$")


def _check_table(inv: InvariantPolynomial, table: MomentTable):
    if inv.dimension != table.dimension:
        raise InsufficientOrder(f"{inv.dimension}D invariant against a {table.dimension}D table")
    if inv.max_order() > table.max_order:
        raise InsufficientOrder(
            f"invariant uses order {inv.max_order()}, table stops at {table.max_order}")
    mu0 = table.mu0
    if not mu0 > 0:
        raise DegenerateCloud(f"mu0 must be positive, got {mu0}")
    return mu0


def _term_values(inv: InvariantPolynomial, vals) -> list[float]:
    terms = []
    for entry, c in inv.terms:
        t = float(c)
        for idx, k in entry.factors:
            t *= vals[idx] ** k
        terms.append(t)
    return terms


def evaluate(inv: InvariantPolynomial, table: MomentTable) -> float:
    """Value of the invariant in double precision."""
    mu0 = _check_table(inv, table)
    terms = _term_values(inv, table.values)
    terms.sort(key=abs, reverse=True)
    return math.fsum(terms) / mu0 ** inv.denominator_power


def condition_number(inv: InvariantPolynomial, table: MomentTable) -> float:
    """``sum |term| / |sum term|``: the cancellation factor of one evaluation."""
    _check_table(inv, table)
    terms = _term_values(inv, table.values)
    total = abs(math.fsum(terms))
    mag = math.fsum(abs(t) for t in terms)
    return math.inf if total == 0 else mag / total


def evaluate_exact(inv: InvariantPolynomial, values: Mapping) -> Fraction:
    """Exact value over rational moments given as ``{index: number}``."""
    vals = {MultiIndex(k): Fraction(v) for k, v in values.items()}
    zero = MultiIndex((0,) * inv.dimension)
    total = Fraction(0)
    for entry, c in inv.terms:
        t = Fraction(c)
        for idx, k in entry.factors:
            if idx not in vals:
                raise InsufficientOrder(f"moment {tuple(idx)} missing")
            t *= vals[idx] ** k
        total += t
    if inv.denominator_power:
        mu0 = vals.get(zero)
        if mu0 is None or mu0 <= 0:
            raise DegenerateCloud("mu0 missing or not positive")
        total /= mu0 ** inv.denominator_power
    return total


def evaluate_vector(coefs: Sequence, desc: BasisDescriptor, values: Mapping) -> float:
    """``sum coefs[i] * desc[i]`` on a moment mapping, without any denominator."""
    terms = []
    for c, entry in zip(coefs, desc):
        if c:
            t = float(c)
            for idx, k in entry.factors:
                t *= values[idx] ** k
            terms.append(t)
    return math.fsum(terms)


def _fmt_index(idx) -> str:
    return "(" + ",".join(str(e) for e in idx) + ")"


def _fmt_desc(components) -> str:
    return "[" + ",".join(f"({p},{k})" for p, k in components) + "]"


def serialize(invs: Sequence[InvariantPolynomial], dim: int | None = None) -> bytes:
    """Deterministic text encoding; `dim` is required only for an empty list."""
    if invs:
        dims = {inv.dimension for inv in invs}
        if len(dims) != 1 or (dim is not None and dim not in dims):
            raise ValueError(f"mixed dimensions {sorted(dims)} in one file")
        dim = dims.pop()
    elif dim is None:
        raise ValueError("dimension required to serialize an empty list")
    lines = [f"geoinv v{FORMAT_VERSION} dim={dim}"]
    for inv in invs:
        lines.append("")
        lines.append(f"class={inv.kind} d={inv.denominator_power} "
                     f"desc={_fmt_desc(inv.components)} planes={inv.planes}")
        for entry, c in inv.terms:
            c = Fraction(c)
            factors = " ".join(f"{_fmt_index(idx)}^{k}" for idx, k in entry.factors)
            lines.append(f"term {c.numerator}/{c.denominator} {factors}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _parse_record_header(text: str, lineno: int):
    fields = {}
    for tok in text.split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise MalformedFile(f"expected key=value, got {tok!r}", line=lineno)
        if key in fields:
            raise MalformedFile("duplicate field", line=lineno, field=key)
        fields[key] = val
    for key in ("class", "d", "desc"):
        if key not in fields:
            raise MalformedFile("missing field", line=lineno, field=key)
    unknown = set(fields) - {"class", "d", "desc", "planes"}
    if unknown:
        raise MalformedFile("unknown field", line=lineno, field=sorted(unknown)[0])
    kind = fields["class"]
    if kind not in KINDS:
        raise MalformedFile(f"unknown class {kind!r}", line=lineno, field="class")
    if not fields["d"].isdigit():
        raise MalformedFile(f"bad value {fields['d']!r}", line=lineno, field="d")
    m = _DESC.match(fields["desc"])
    if not m:
        raise MalformedFile(f"bad value {fields['desc']!r}", line=lineno, field="desc")
    comps = tuple(tuple(int(x) for x in pair.strip("()").split(","))
                  for pair in re.findall(r"\(\d+,\d+\)", m.group(1)))
    planes = fields.get("planes", "none" if kind == "scale" else "fan")
    return kind, int(fields["d"]), comps, planes


def _parse_term(text: str, lineno: int, dim: int):
    toks = text.split()
    if len(toks) < 3:
        raise MalformedFile("term needs a coefficient and at least one factor", line=lineno)
    m = _COEF.match(toks[1])
    if not m:
        raise MalformedFile(f"bad coefficient {toks[1]!r}", line=lineno, field="coef")
    den = int(m.group(2))
    if den == 0:
        raise MalformedFile("zero denominator", line=lineno, field="coef")
    coef = Fraction(int(m.group(1)), den)
    if coef == 0:
        raise MalformedFile("zero coefficient", line=lineno, field="coef")
    factors = []
    for tok in toks[2:]:
        fm = _FACTOR.match(tok)
        if not fm:
            raise MalformedFile(f"bad factor {tok!r}", line=lineno, field="factor")
        idx = MultiIndex(int(e) for e in fm.group(1).split(","))
        if len(idx) != dim:
            raise MalformedFile(f"factor {tok!r} is not {dim}-dimensional", line=lineno, field="factor")
        power = int(fm.group(2))
        if power < 1:
            raise MalformedFile(f"non-positive power in {tok!r}", line=lineno, field="factor")
        factors.append((idx, power))
    return MonomialEntry(tuple(factors)), coef


def parse(data: bytes | str) -> list[InvariantPolynomial]:
    """Inverse of :func:`serialize`."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedFile("empty file", line=1)
    m = _HEADER.match(lines[0].strip())
    if not m:
        if lines[0].startswith("geoinv v"):
            raise UnsupportedVersion(f"unreadable header {lines[0]!r}", line=1)
        raise MalformedFile(f"bad header {lines[0]!r}", line=1)
    if int(m.group(1)) != FORMAT_VERSION:
        raise UnsupportedVersion(f"version {m.group(1)} (supported: {FORMAT_VERSION})", line=1)
    dim = int(m.group(2))
    if dim < 2:
        raise MalformedFile(f"dimension {dim} < 2", line=1, field="dim")

    out = []
    current = None

    def close(lineno):
        if current is None:
            return
        kind, d, comps, planes, terms, start = current
        if not terms:
            raise MalformedFile("record without terms", line=start)
        out.append(InvariantPolynomial(dim, kind, tuple(terms), d, comps, planes))

    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            close(lineno)
            current = None
            continue
        if line.startswith("class="):
            if current is not None:
                raise MalformedFile("records must be separated by a blank line", line=lineno)
            kind, d, comps, planes = _parse_record_header(line, lineno)
            current = (kind, d, comps, planes, [], lineno)
        elif line.startswith("term "):
            if current is None:
                raise MalformedFile("term outside a record", line=lineno)
            current[4].append(_parse_term(line, lineno, dim))
        else:
            raise MalformedFile(f"unexpected line {line!r}", line=lineno)
    close(len(lines))
    return out


def parse_dimension(data: bytes | str) -> int:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    m = _HEADER.match(text.split("\n", 1)[0].strip())
    if not m:
        raise MalformedFile("bad header", line=1)
    return int(m.group(2))
