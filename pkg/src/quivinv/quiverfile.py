"""Line-oriented quiver file format.

::

    # comment
    [vertices] 0 1
    [arrows]
    c: 0 -> 1
    e: 1 -> 0
    [dims]
    0 = 2
    1 = 2
    [K] 1
    [relations]
    g1 = f*c - e*d
    g2 = 1/2 d*e - c*f

Relation words are read right-to-left as composition (``f*c`` applies ``c``
first).  Coefficients are exact rationals ``p/q``.  Arrow and relation names
must match ``[A-Za-z_][A-Za-z0-9_]*``; vertex identifiers may be any
whitespace-free token.  A trivial-path factor is written ``triv(vertex)`` and
is rejected unless ``allow_trivial_terms`` is set.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .quiver import (
    AlgebraElement,
    Arrow,
    DimensionVector,
    Path,
    Presentation,
    Quiver,
    QuiverError,
    Relation,
    algebra_element,
    path_from_arrows,
    trivial_path,
)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ARROW_LINE = re.compile(r"(?P<name>\S+)\s*:\s*(?P<tail>\S+)\s*->\s*(?P<head>\S+)\Z")
_DIM_LINE = re.compile(r"(?P<vertex>\S+)\s*=\s*(?P<dim>\d+)\Z")
_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<triv>triv\(\s*(?P<vertex>[^)\s]+)\s*\))"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+\-*]))"
)

_SECTIONS = ("vertices", "arrows", "dims", "K", "relations")


class QuiverFileError(QuiverError):
    """Parse error carrying the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _split_sections(text: str) -> dict[str, list[tuple[int, str]]]:
    sections: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            close = line.find("]")
            if close < 0:
                raise QuiverFileError("unterminated section header", lineno)
            tag = line[1:close].strip()
            if tag not in _SECTIONS:
                raise QuiverFileError(f"unknown section [{tag}]", lineno)
            if tag in sections:
                raise QuiverFileError(f"duplicate section [{tag}]", lineno)
            sections[tag] = []
            current = tag
            rest = line[close + 1 :].strip()
            if rest:
                sections[tag].append((lineno, rest))
        else:
            if current is None:
                raise QuiverFileError("content before any section header", lineno)
            sections[current].append((lineno, line))
    return sections


def _tokenize_relation(expr: str, lineno: int) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise QuiverFileError(f"cannot tokenize relation near {expr[pos:pos+12]!r}", lineno)
        if m.group("number"):
            tokens.append(("number", m.group("number")))
        elif m.group("triv"):
            tokens.append(("triv", m.group("vertex")))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


def _parse_relation_element(
    quiver: Quiver, expr: str, lineno: int, allow_trivial: bool
) -> AlgebraElement:
    tokens = _tokenize_relation(expr, lineno)
    if not tokens:
        raise QuiverFileError("empty relation", lineno)
    # split into signed terms at top-level +/-
    terms: list[tuple[Fraction, list[tuple[str, str]]]] = []
    sign = Fraction(1)
    factors: list[tuple[str, str]] = []
    expecting_term = True

    def flush(line: int):
        if not factors:
            raise QuiverFileError("empty term in relation", line)
        terms.append((sign, list(factors)))
        factors.clear()

    for kind, value in tokens:
        if kind == "op" and value in "+-":
            if expecting_term and not factors:
                sign = sign * (-1 if value == "-" else 1)
                continue
            flush(lineno)
            sign = Fraction(-1 if value == "-" else 1)
            expecting_term = True
            continue
        if kind == "op":  # '*'
            if not factors:
                raise QuiverFileError("misplaced '*' in relation", lineno)
            continue
        factors.append((kind, value))
        expecting_term = False
    flush(lineno)

    built: list[tuple[Path, Fraction]] = []
    for tsign, tfactors in terms:
        coeff = tsign
        word: list[str] = []  # right-to-left factors as written
        trivial_at: str | None = None
        for pos, (kind, value) in enumerate(tfactors):
            if kind == "number":
                if pos != 0:
                    raise QuiverFileError("coefficient must lead its term", lineno)
                try:
                    coeff *= Fraction(value)
                except ZeroDivisionError:
                    raise QuiverFileError(f"zero denominator in {value!r}", lineno) from None
            elif kind == "triv":
                if value not in quiver.vertices:
                    raise QuiverFileError(f"unknown vertex {value!r} in triv()", lineno)
                trivial_at = value
            else:
                try:
                    quiver.arrow(value)
                except QuiverError:
                    raise QuiverFileError(f"unknown arrow {value!r}", lineno) from None
                word.append(value)
        if word:
            try:
                # written left-to-right as composition: reverse to traversal order
                path = path_from_arrows(quiver, list(reversed(word)))
            except QuiverError as exc:
                raise QuiverFileError(str(exc), lineno) from None
            if trivial_at is not None and trivial_at not in (path.head, path.tail):
                raise QuiverFileError("triv() factor off the path's endpoints", lineno)
        elif trivial_at is not None:
            path = trivial_path(trivial_at)
        else:
            raise QuiverFileError("term without arrows (use triv(v) for constants)", lineno)
        if path.is_trivial and not allow_trivial:
            raise QuiverFileError(
                "trivial-path term in relation (pass allow_trivial_terms to accept)", lineno
            )
        built.append((path, coeff))

    heads = {p.head for p, _ in built}
    tails = {p.tail for p, _ in built}
    if len(heads) != 1 or len(tails) != 1:
        raise QuiverFileError("mixed bigrading in relation", lineno)
    return algebra_element(quiver, heads.pop(), tails.pop(), built)


def parse_presentation(text: str, allow_trivial_terms: bool = False) -> Presentation:
    """Parse a quiver file into a validated presentation."""
    sections = _split_sections(text)
    for required in ("vertices", "dims"):
        if required not in sections:
            raise QuiverFileError(f"missing section [{required}]", 0)

    vertices: list[str] = []
    for lineno, line in sections["vertices"]:
        vertices.extend(line.split())
    if not vertices:
        raise QuiverFileError("no vertices declared", 0)

    arrows: list[Arrow] = []
    for lineno, line in sections.get("arrows", []):
        m = _ARROW_LINE.match(line)
        if not m:
            raise QuiverFileError("expected 'name: tail -> head'", lineno)
        name = m.group("name")
        if not _NAME_RE.match(name):
            raise QuiverFileError(f"bad arrow name {name!r}", lineno)
        if m.group("tail") not in vertices or m.group("head") not in vertices:
            raise QuiverFileError(f"unknown vertex in arrow {name}", lineno)
        arrows.append(Arrow(name, m.group("tail"), m.group("head")))
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except QuiverError as exc:
        raise QuiverFileError(str(exc), 0) from None

    dims: dict[str, int] = {}
    for lineno, line in sections["dims"]:
        m = _DIM_LINE.match(line)
        if not m:
            raise QuiverFileError("expected 'vertex = integer'", lineno)
        v = m.group("vertex")
        if v not in vertices:
            raise QuiverFileError(f"dimension for unknown vertex {v!r}", lineno)
        if v in dims:
            raise QuiverFileError(f"duplicate dimension for vertex {v!r}", lineno)
        dims[v] = int(m.group("dim"))
    try:
        dimvec = DimensionVector.of(quiver, dims)
    except QuiverError as exc:
        raise QuiverFileError(str(exc), 0) from None

    frozen: list[str] = []
    for lineno, line in sections.get("K", []):
        for tok in line.split():
            if tok not in vertices:
                raise QuiverFileError(f"frozen vertex {tok!r} not declared", lineno)
            frozen.append(tok)

    relations: list[Relation] = []
    for lineno, line in sections.get("relations", []):
        if "=" not in line:
            raise QuiverFileError("expected 'name = expression'", lineno)
        name, expr = line.split("=", 1)
        name = name.strip()
        if not _NAME_RE.match(name):
            raise QuiverFileError(f"bad relation name {name!r}", lineno)
        element = _parse_relation_element(quiver, expr.strip(), lineno, allow_trivial_terms)
        if element.is_zero:
            raise QuiverFileError(f"relation {name} is zero", lineno)
        relations.append(Relation(name, element))

    try:
        return Presentation(quiver, dimvec, frozenset(frozen), tuple(relations))
    except QuiverError as exc:
        raise QuiverFileError(str(exc), 0) from None


def load_presentation(path, allow_trivial_terms: bool = False) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_presentation(fh.read(), allow_trivial_terms)
