"""Kernel generators of the restriction map and invariant-ring presentations.

The kernel of restriction to the representation scheme is generated, inside
the invariant ring, by traces of cycles through one relation and contractions
of paths through one relation.  Both are enumerated as sandwiches u*g*w with
bounded outer path lengths.  A presentation of the invariant ring is obtained
by naming each enumerated generator with a fresh variable and eliminating the
arrow variables from the combined ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .groebner import ComputeBudget, Ideal, eliminate
from .invariants import (
    GeneratorEntry,
    GeneratorSet,
    element_matrix,
    lusztig_generators,
    rep_ideal,
    ring_for,
    trace_poly,
)
from .polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    Variable,
    fresh_var,
)
from .quiver import (
    AlgebraElement,
    Path,
    Presentation,
    QuiverError,
    compose,
    enumerate_paths,
    sandwich,
)


class NotExpressibleError(ValueError):
    """A polynomial could not be rewritten in the chosen generators."""


@dataclass(frozen=True)
class KernelGenerator:
    label: str
    kind: str  # "trace" | "contraction"
    u: Path
    relation: str
    w: Path
    i: int
    j: int
    element: AlgebraElement
    polynomial: Polynomial

    def to_jsonable(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "u": self.u.word,
            "relation": self.relation,
            "w": self.w.word,
            "i": self.i,
            "j": self.j,
            "polynomial": str(self.polynomial),
        }


def _sandwich_word(u: Path, relation: str, w: Path) -> str:
    parts = []
    if not u.is_trivial:
        parts.append(u.word)
    parts.append(relation)
    if not w.is_trivial:
        parts.append(w.word)
    return "*".join(parts)


def kernel_generators(
    pres: Presentation, max_u: int, max_w: int
) -> tuple[KernelGenerator, ...]:
    """Sandwiches u*g_k*w with |u| <= max_u, |w| <= max_w (trivial allowed).

    A sandwich whose endpoints agree at a frozen vertex yields a trace
    generator (one per rotation class of the outer cycle); a sandwich with
    both endpoints unfrozen yields contraction generators for all index
    pairs.  Zero polynomials are dropped.  Words through two or more relation
    factors are omitted: they are ideal combinations of the single-relation
    sandwiches listed here.
    """
    if max_u < 0 or max_w < 0:
        raise QuiverError("sandwich bounds must be >= 0")
    q = pres.quiver
    v = pres.dims
    K = pres.frozen_vertices
    Kc = pres.unfrozen_vertices
    out: list[KernelGenerator] = []
    seen_traces: set[tuple[int, tuple[str, ...]]] = set()
    for k, rel in enumerate(pres.relations):
        g = rel.element
        us = enumerate_paths(q, {g.head}, q.vertices, max_u, include_trivial=True)
        ws = enumerate_paths(q, q.vertices, {g.tail}, max_w, include_trivial=True)
        for u in us:
            for w in ws:
                base, other = u.head, w.tail
                if base == other and base in K:
                    outer = compose(w, u)  # the cycle with the relation cut out
                    dedup = (k, outer.arrows)
                    if dedup in seen_traces:
                        continue
                    seen_traces.add(dedup)
                    element = sandwich(q, u, g, w)
                    poly = trace_poly(pres, element)
                    if poly.is_zero:
                        continue
                    out.append(
                        KernelGenerator(
                            f"tr[{_sandwich_word(u, rel.name, w)}]",
                            "trace",
                            u,
                            rel.name,
                            w,
                            0,
                            0,
                            element,
                            poly,
                        )
                    )
                elif base in Kc and other in Kc:
                    element = sandwich(q, u, g, w)
                    mat = element_matrix(pres, element)
                    word = _sandwich_word(u, rel.name, w)
                    for i in range(1, v[base] + 1):
                        for j in range(1, v[other] + 1):
                            poly = mat[i - 1][j - 1]
                            if poly.is_zero:
                                continue
                            out.append(
                                KernelGenerator(
                                    f"x[{word};{i},{j}]",
                                    "contraction",
                                    u,
                                    rel.name,
                                    w,
                                    i,
                                    j,
                                    element,
                                    poly,
                                )
                            )
    return tuple(out)


# -- invariant-ring presentation ----------------------------------------------


@dataclass
class InvariantPresentation:
    """Fresh variables for the chosen generators, the combined defining ideal,
    and the elimination ideal expressing all relations among the generators."""

    presentation: Presentation
    generators: GeneratorSet
    combined_ring: PolynomialRing
    fresh_ring: PolynomialRing
    dictionary: tuple[tuple[Variable, GeneratorEntry], ...]
    defining_ideal: Ideal
    elimination_order: MonomialOrder
    elimination_ideal: Ideal

    def to_jsonable(self) -> dict:
        return {
            "dictionary": [
                {
                    "fresh": str(var),
                    "generator": entry.label,
                    "word": entry.word,
                    "kind": entry.kind,
                    "i": entry.i,
                    "j": entry.j,
                }
                for var, entry in self.dictionary
            ],
            "elimination_ideal": [str(p) for p in self.elimination_ideal.generators],
        }


def _fresh_variable(entry: GeneratorEntry) -> Variable:
    label = entry.word.replace("*", ".")
    if entry.kind == "trace":
        return fresh_var(f"tr.{label}", 0, 0)
    return fresh_var(label, entry.i, entry.j)


def _extend(poly: Polynomial, target: PolynomialRing) -> Polynomial:
    """Reinterpret a polynomial of a prefix ring inside the extended ring."""
    own = poly.ring.variables
    if target.variables[: len(own)] != own:
        raise QuiverError("polynomial ring is not a prefix of the combined ring")
    pad = target.nvars - len(own)
    return Polynomial(
        target, tuple((Monomial(m.exps + (0,) * pad), c) for m, c in poly.terms)
    )


def present_invariant_ring(
    pres: Presentation,
    max_len: int,
    select: Optional[Sequence[Union[Path, str]]] = None,
    budget: Optional[ComputeBudget] = None,
) -> InvariantPresentation:
    """Present the invariant ring on the generators up to the length bound.

    Builds the ideal (fresh variable - generator polynomial) plus the
    representation ideal in the combined ring, then eliminates every arrow
    variable.  The result is the ideal of relations among the chosen
    generators, valid on the representation scheme.
    """
    gens = lusztig_generators(pres, max_len, select)
    arrow_ring = ring_for(pres)
    fresh_vars = [_fresh_variable(e) for e in gens.entries]
    if len(set(fresh_vars)) != len(fresh_vars):
        raise QuiverError("fresh variable labels collide; rename arrows")
    combined = PolynomialRing(arrow_ring.variables + tuple(fresh_vars))
    defining: list[Polynomial] = []
    dictionary: list[tuple[Variable, GeneratorEntry]] = []
    for var, entry in zip(fresh_vars, gens.entries):
        defining.append(combined.var(var) - _extend(entry.polynomial, combined))
        dictionary.append((var, entry))
    for g in rep_ideal(pres).generators:
        defining.append(_extend(g, combined))
    defining_ideal = Ideal(combined, defining)
    order = MonomialOrder.block(range(arrow_ring.nvars))
    elim = eliminate(defining_ideal, list(range(arrow_ring.nvars)), budget)
    return InvariantPresentation(
        presentation=pres,
        generators=gens,
        combined_ring=combined,
        fresh_ring=elim.ring,
        dictionary=tuple(dictionary),
        defining_ideal=defining_ideal,
        elimination_order=order,
        elimination_ideal=elim,
    )


def rewrite_in_generators(
    f: Polynomial,
    presentation: InvariantPresentation,
    budget: Optional[ComputeBudget] = None,
) -> Polynomial:
    """Express an arrow-variable polynomial in the chosen generators.

    Reduces modulo the defining ideal under the arrow-eliminating block
    order; succeeds when the normal form involves fresh variables only (the
    identity then holds modulo the representation ideal), and raises
    :class:`NotExpressibleError` otherwise.
    """
    ip = presentation
    arrow_count = ip.combined_ring.nvars - ip.fresh_ring.nvars
    if f.ring != ip.combined_ring:
        f = _extend(f, ip.combined_ring)
    gb = ip.defining_ideal.groebner_basis(ip.elimination_order, budget)
    nf = gb.normal_form(f, budget)
    if any(i < arrow_count for i in nf.variables_used()):
        raise NotExpressibleError(
            f"not expressible at this bound: {f} reduces to {nf}"
        )
    retained = list(range(arrow_count, ip.combined_ring.nvars))
    return ip.fresh_ring.polynomial(
        [(Monomial(tuple(m.exps[i] for i in retained)), c) for m, c in nf.terms]
    )
