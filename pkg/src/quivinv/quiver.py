"""Quivers, dimension vectors, paths, and path-algebra elements.

Conventions: a path written ``f*c`` applies ``c`` first and ``f`` second, so
internally arrows are stored in traversal order ``(c, f)``.  A trivial path is
an empty arrow word based at a vertex.  All types are immutable values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class QuiverError(ValueError):
    """Structurally invalid quiver data (bad endpoints, duplicate ids, ...)."""


class ConnectivityWarning(UserWarning):
    """The quiver is not connected; nothing implemented requires it."""


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex identifiers")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow identifiers")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.tail not in vs or a.head not in vs:
                raise QuiverError(f"arrow {a.name}: undeclared endpoint {a.tail}->{a.head}")

    @cached_property
    def _arrow_by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def _arrow_index(self) -> dict[str, int]:
        return {a.name: k for k, a in enumerate(self.arrows)}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow_by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def arrow_index(self, name: str) -> int:
        """Declaration index of an arrow; fixes all deterministic orderings."""
        try:
            return self._arrow_index[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def arrows_from(self, vertex: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.tail == vertex)

    def is_connected(self) -> bool:
        """Connectivity of the underlying undirected graph."""
        if not self.vertices:
            return True
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.tail].add(a.head)
            adj[a.head].add(a.tail)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class DimensionVector:
    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for v, d in self.entries:
            if d < 0:
                raise QuiverError(f"negative dimension {d} at vertex {v}")

    @cached_property
    def _map(self) -> dict[str, int]:
        return dict(self.entries)

    def __getitem__(self, vertex: str) -> int:
        try:
            return self._map[vertex]
        except KeyError:
            raise QuiverError(f"no dimension for vertex {vertex!r}") from None

    @staticmethod
    def of(quiver: Quiver, dims: Mapping[str, int]) -> "DimensionVector":
        missing = [v for v in quiver.vertices if v not in dims]
        if missing:
            raise QuiverError(f"missing dimensions for vertices {missing}")
        extra = [v for v in dims if v not in quiver.vertices]
        if extra:
            raise QuiverError(f"dimensions for undeclared vertices {extra}")
        return DimensionVector(tuple((v, int(dims[v])) for v in quiver.vertices))


@dataclass(frozen=True)
class Path:
    """An arrow word in traversal order, or a trivial path (empty word).

    ``arrows[0]`` is applied first; tail and head are stored explicitly so
    they are total for trivial paths.  Use :func:`path_from_arrows` or
    :func:`trivial_path` to construct validated instances.
    """

    arrows: tuple[str, ...]
    tail: str
    head: str

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def is_cycle(self) -> bool:
        return self.head == self.tail

    @property
    def word(self) -> str:
        """Right-to-left composition word, e.g. ``ec`` for e after c."""
        if self.is_trivial:
            return f"triv({self.tail})"
        names = list(reversed(self.arrows))
        if all(len(n) == 1 for n in names):
            return "".join(names)
        return "*".join(names)

    def __str__(self) -> str:
        return self.word


def trivial_path(vertex: str) -> Path:
    return Path((), vertex, vertex)


def path_from_arrows(quiver: Quiver, arrows: Sequence[str]) -> Path:
    """Validated path from arrow names in traversal order."""
    if not arrows:
        raise QuiverError("a nontrivial path needs at least one arrow; use trivial_path")
    objs = [quiver.arrow(n) for n in arrows]
    for a, b in zip(objs, objs[1:]):
        if b.tail != a.head:
            raise QuiverError(f"non-composable word: {b.name} cannot follow {a.name}")
    return Path(tuple(arrows), objs[0].tail, objs[-1].head)


def path_from_word(quiver: Quiver, word: str) -> Path:
    """Parse a composition word (leftmost arrow applied last).

    Accepts ``*``-separated names, or a bare concatenation when every arrow
    name is a single character (``ec`` means e after c).
    """
    word = word.strip()
    if word.startswith("triv(") and word.endswith(")"):
        v = word[5:-1].strip()
        if v not in quiver.vertices:
            raise QuiverError(f"unknown vertex {v!r} in trivial path")
        return trivial_path(v)
    if "*" in word:
        names = [t.strip() for t in word.split("*")]
    else:
        names = list(word)
    if not names or any(not n for n in names):
        raise QuiverError(f"cannot parse path word {word!r}")
    return path_from_arrows(quiver, list(reversed(names)))


def compose(q: Path, p: Path) -> Path:
    """The composite qp (apply p first); trivial paths are identities."""
    if q.tail != p.head:
        raise QuiverError(f"non-composable: tail({q}) = {q.tail} != {p.head} = head({p})")
    if p.is_trivial:
        return q
    if q.is_trivial:
        return p
    return Path(p.arrows + q.arrows, p.tail, q.head)


def rotations(path: Path, quiver: Quiver) -> list[Path]:
    """All cyclic rotations of a nontrivial cycle."""
    if not path.is_cycle or path.is_trivial:
        raise QuiverError("rotations are defined for nontrivial cycles only")
    out = []
    arrs = path.arrows
    for k in range(len(arrs)):
        rot = arrs[k:] + arrs[:k]
        base = quiver.arrow(rot[0]).tail
        out.append(Path(rot, base, base))
    return out


def canonical_rotation(path: Path, quiver: Quiver) -> Path:
    """Lexicographically least rotation, by arrow declaration order."""
    return min(
        rotations(path, quiver),
        key=lambda p: tuple(quiver.arrow_index(n) for n in p.arrows),
    )


@dataclass(frozen=True)
class AlgebraElement:
    """A rational linear combination of paths sharing one head and one tail."""

    head: str
    tail: str
    terms: tuple[tuple[Path, Fraction], ...]

    def __post_init__(self):
        for p, c in self.terms:
            if p.head != self.head or p.tail != self.tail:
                raise QuiverError(
                    f"term {p} has endpoints {p.tail}->{p.head}, element is {self.tail}->{self.head}"
                )
            if c == 0:
                raise QuiverError("zero coefficient stored in algebra element")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def has_trivial_term(self) -> bool:
        return any(p.is_trivial for p, _ in self.terms)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for k, (p, c) in enumerate(self.terms):
            mag = abs(c)
            body = p.word if mag == 1 else f"{mag}*{p.word}"
            if k == 0:
                bits.append(body if c > 0 else f"-{body}")
            else:
                bits.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(bits)


def _path_sort_key(quiver: Quiver, p: Path):
    return (len(p.arrows), tuple(quiver.arrow_index(n) for n in p.arrows), p.tail)


def algebra_element(
    quiver: Quiver, head: str, tail: str, terms: Iterable[tuple[Path, Fraction]]
) -> AlgebraElement:
    """Normalized element: like terms combined, zeros dropped, canonical order."""
    acc: dict[Path, Fraction] = {}
    for p, c in terms:
        acc[p] = acc.get(p, Fraction(0)) + Fraction(c)
    kept = [(p, c) for p, c in acc.items() if c != 0]
    kept.sort(key=lambda pc: _path_sort_key(quiver, pc[0]))
    return AlgebraElement(head, tail, tuple(kept))


def element_of_path(p: Path) -> AlgebraElement:
    return AlgebraElement(p.head, p.tail, ((p, Fraction(1)),))


def sandwich(quiver: Quiver, u: Path, g: AlgebraElement, w: Path) -> AlgebraElement:
    """The element u*g*w (apply w first, then g, then u)."""
    if u.tail != g.head or w.head != g.tail:
        raise QuiverError("non-composable sandwich")
    return algebra_element(
        quiver, u.head, w.tail, ((compose(u, compose(p, w)), c) for p, c in g.terms)
    )


@dataclass(frozen=True)
class Relation:
    name: str
    element: AlgebraElement


@dataclass(frozen=True)
class Presentation:
    """A quiver with dimension vector, frozen-vertex set K, and relations."""

    quiver: Quiver
    dims: DimensionVector
    frozen_vertices: frozenset[str]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        bad = self.frozen_vertices - set(self.quiver.vertices)
        if bad:
            raise QuiverError(f"frozen vertices not in quiver: {sorted(bad)}")
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate relation names")
        taken = {a.name for a in self.quiver.arrows}
        for r in self.relations:
            if r.name in taken:
                raise QuiverError(f"relation name {r.name!r} clashes with an arrow name")
            if r.element.is_zero:
                raise QuiverError(f"relation {r.name} is zero")
        if not self.quiver.is_connected():
            warnings.warn("quiver is not connected", ConnectivityWarning, stacklevel=2)

    @property
    def unfrozen_vertices(self) -> frozenset[str]:
        return frozenset(self.quiver.vertices) - self.frozen_vertices

    def with_frozen(self, frozen: Iterable[str]) -> "Presentation":
        return Presentation(self.quiver, self.dims, frozenset(frozen), self.relations)

    def relation(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise QuiverError(f"unknown relation {name!r}")


def enumerate_paths(
    quiver: Quiver,
    tails: Iterable[str],
    heads: Iterable[str],
    max_len: int,
    include_trivial: bool = False,
) -> list[Path]:
    """All composable arrow words of length 1..max_len with the given endpoints.

    Deterministic order: by length, then lexicographically by arrow
    declaration order on the traversal sequence.  Trivial paths at vertices in
    tails & heads are prepended when requested.
    """
    if max_len < 0:
        raise QuiverError("max_len must be >= 0")
    tails = set(tails)
    heads = set(heads)
    out: list[Path] = []
    if include_trivial:
        for v in quiver.vertices:
            if v in tails and v in heads:
                out.append(trivial_path(v))
    level: list[Path] = [
        Path((a.name,), a.tail, a.head) for a in quiver.arrows if a.tail in tails
    ]
    for n in range(1, max_len + 1):
        out.extend(p for p in level if p.head in heads)
        if n < max_len:
            level = [
                Path(p.arrows + (a.name,), p.tail, a.head)
                for p in level
                for a in quiver.arrows_from(p.head)
            ]
    return out


def enumerate_cycles_in_k(quiver: Quiver, frozen: Iterable[str], max_len: int) -> list[Path]:
    """Cycles of length <= max_len traversing only arrows with both endpoints
    in the frozen set, one representative per rotation class (lexicographically
    least rotation).  Trivial paths are excluded."""
    if max_len < 1:
        raise QuiverError("max_len must be >= 1")
    frozen = set(frozen)
    inner = [a for a in quiver.arrows if a.tail in frozen and a.head in frozen]
    out: list[Path] = []
    seen: set[tuple[str, ...]] = set()
    level = [Path((a.name,), a.tail, a.head) for a in inner]
    inner_from: dict[str, list[Arrow]] = {}
    for a in inner:
        inner_from.setdefault(a.tail, []).append(a)
    for n in range(1, max_len + 1):
        for p in level:
            if p.is_cycle:
                canon = canonical_rotation(p, quiver)
                if canon.arrows not in seen:
                    seen.add(canon.arrows)
                    out.append(canon)
        if n < max_len:
            level = [
                Path(p.arrows + (a.name,), p.tail, a.head)
                for p in level
                for a in inner_from.get(p.head, ())
            ]
    return out


@dataclass(frozen=True)
class FramedQuiver:
    """The auxiliary quiver over K u {infinity} with dimension 1 at infinity.

    ``provenance`` maps each added arrow to its source arrow and column/row
    index; arrows of the original quiver with both endpoints in K keep their
    names and are absent from the map.
    """

    quiver: Quiver
    dims: DimensionVector
    infinity: str
    provenance: tuple[tuple[str, tuple[str, int]], ...]

    @cached_property
    def provenance_map(self) -> dict[str, tuple[str, int]]:
        return dict(self.provenance)

    def added_arrow(self, source: str, index: int) -> str:
        for name, (src, k) in self.provenance:
            if src == source and k == index:
                return name
        raise QuiverError(f"no framed arrow for ({source}, {index})")


def framed_quiver(pres: Presentation) -> FramedQuiver:
    """Framing construction: keep arrows inside K, replace each arrow crossing
    the frontier by a fan of column/row arrows through a new vertex."""
    q, v, K = pres.quiver, pres.dims, pres.frozen_vertices
    inf = "inf"
    while inf in q.vertices:
        inf += "'"
    s11 = [a for a in q.arrows if a.tail in K and a.head in K]
    s01 = [a for a in q.arrows if a.tail not in K and a.head in K]
    s10 = [a for a in q.arrows if a.tail in K and a.head not in K]
    arrows: list[Arrow] = list(s11)
    prov: list[tuple[str, tuple[str, int]]] = []
    taken = {a.name for a in s11}

    def fresh(base: str) -> str:
        name = base
        while name in taken:
            name += "'"
        taken.add(name)
        return name

    for b in s01:
        for j in range(1, v[b.tail] + 1):
            name = fresh(f"{b.name}_col{j}")
            arrows.append(Arrow(name, inf, b.head))
            prov.append((name, (b.name, j)))
    for c in s10:
        for i in range(1, v[c.head] + 1):
            name = fresh(f"{c.name}_row{i}")
            arrows.append(Arrow(name, c.tail, inf))
            prov.append((name, (c.name, i)))
    verts = tuple(x for x in q.vertices if x in K) + (inf,)
    fq = Quiver(verts, tuple(arrows))
    dims = DimensionVector(tuple((x, 1 if x == inf else v[x]) for x in verts))
    return FramedQuiver(fq, dims, inf, tuple(prov))


def augment_quiver(pres: Presentation) -> tuple[Quiver, dict[str, str]]:
    """Adjoin one arrow per relation, from the relation's tail to its head.

    Returns the augmented quiver and the map relation name -> new arrow name
    (relation names are reserved at construction, so they are used verbatim).
    """
    q = pres.quiver
    extra = [Arrow(r.name, r.element.tail, r.element.head) for r in pres.relations]
    return Quiver(q.vertices, q.arrows + tuple(extra)), {r.name: r.name for r in pres.relations}
