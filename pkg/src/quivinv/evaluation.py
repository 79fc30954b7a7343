"""Exact evaluation oracle: representation points, group action, invariance.

Everything is computed over exact rationals, so equality checks are literal
polynomial identities at points; there is no tolerance policy.  Randomness is
always seeded and the seeds are recorded in reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .polyring import ARROW, Polynomial, RingError
from .quiver import Path, Presentation, QuiverError, framed_quiver

Matrix = tuple[tuple[Fraction, ...], ...]


def matrix_of(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum((row[k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols))
        for row in a
    )


def mat_trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


class SingularMatrixError(ValueError):
    pass


def mat_inverse(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(a)
    work = [list(row) for row in a]
    inv = [list(row) for row in identity_matrix(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is not invertible")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


@dataclass(frozen=True)
class RepPoint:
    """One matrix per arrow, shaped v_head x v_tail."""

    matrices: tuple[tuple[str, Matrix], ...]

    @cached_property
    def _map(self) -> dict[str, Matrix]:
        return dict(self.matrices)

    def matrix(self, arrow: str) -> Matrix:
        return self._map[arrow]


@dataclass(frozen=True)
class GroupElement:
    """An invertible matrix (with exact inverse) per frozen vertex."""

    factors: tuple[tuple[str, Matrix, Matrix], ...]

    @cached_property
    def _map(self) -> dict[str, tuple[Matrix, Matrix]]:
        return {v: (g, ginv) for v, g, ginv in self.factors}

    def matrix(self, vertex: str, dim: int) -> Matrix:
        got = self._map.get(vertex)
        return got[0] if got else identity_matrix(dim)

    def inverse(self, vertex: str, dim: int) -> Matrix:
        got = self._map.get(vertex)
        return got[1] if got else identity_matrix(dim)


def rep_point(pres: Presentation, matrices: dict[str, Matrix]) -> RepPoint:
    v = pres.dims
    out = []
    for a in pres.quiver.arrows:
        m = matrix_of(matrices[a.name])
        if len(m) != v[a.head] or any(len(r) != v[a.tail] for r in m):
            raise QuiverError(f"matrix for {a.name} has wrong shape")
        out.append((a.name, m))
    return RepPoint(tuple(out))


def random_rep(pres: Presentation, seed: int) -> RepPoint:
    """Deterministic point with integer entries in [-5, 5]."""
    rng = random.Random(seed)
    v = pres.dims
    out = []
    for a in pres.quiver.arrows:
        m = tuple(
            tuple(Fraction(rng.randint(-5, 5)) for _ in range(v[a.tail]))
            for _ in range(v[a.head])
        )
        out.append((a.name, m))
    return RepPoint(tuple(out))


def random_group(pres: Presentation, seed: int, identity: bool = False) -> GroupElement:
    """Invertible integer matrices at the frozen vertices, with exact inverses."""
    rng = random.Random(seed)
    v = pres.dims
    factors = []
    for vertex in pres.quiver.vertices:
        if vertex not in pres.frozen_vertices:
            continue
        n = v[vertex]
        if identity:
            g = identity_matrix(n)
            factors.append((vertex, g, g))
            continue
        while True:
            g = tuple(
                tuple(Fraction(rng.randint(-5, 5)) for _ in range(n)) for _ in range(n)
            )
            try:
                ginv = mat_inverse(g)
            except SingularMatrixError:
                continue
            factors.append((vertex, g, ginv))
            break
    return GroupElement(tuple(factors))


def act(pres: Presentation, g: GroupElement, point: RepPoint) -> RepPoint:
    """Conjugation: each arrow matrix maps to g_head * B * g_tail^{-1}."""
    v = pres.dims
    out = []
    for a in pres.quiver.arrows:
        m = point.matrix(a.name)
        m = mat_mul(g.matrix(a.head, v[a.head]), m)
        m = mat_mul(m, g.inverse(a.tail, v[a.tail]))
        out.append((a.name, m))
    return RepPoint(tuple(out))


def eval_poly(f: Polynomial, pres: Presentation, point: RepPoint) -> Fraction:
    """Substitute matrix entries for arrow variables, exactly."""
    ring = f.ring
    cache: dict[int, Fraction] = {}

    def value(i: int) -> Fraction:
        got = cache.get(i)
        if got is None:
            var = ring.variables[i]
            if var.kind != ARROW:
                raise RingError(f"unknown variable {var} at evaluation")
            try:
                got = point.matrix(var.name)[var.row - 1][var.col - 1]
            except (KeyError, IndexError):
                raise RingError(f"unknown variable {var} at evaluation") from None
            cache[i] = got
        return got

    acc = Fraction(0)
    for m, c in f.terms:
        term = c
        for i, e in enumerate(m.exps):
            if e:
                term *= value(i) ** e
        acc += term
    return acc


def path_product(pres: Presentation, point: RepPoint, path: Path) -> Matrix:
    """Direct matrix product along a path: the evaluation oracle."""
    if path.is_trivial:
        return identity_matrix(pres.dims[path.tail])
    m = point.matrix(path.arrows[0])
    for name in path.arrows[1:]:
        m = mat_mul(point.matrix(name), m)
    return m


def framed_point(pres: Presentation, point: RepPoint) -> dict[str, Matrix]:
    """Image of a point under the framing identification.

    Arrows inside the frozen set keep their matrices; a crossing arrow into
    the set contributes its columns, one per added arrow, and a crossing arrow
    out of the set contributes its rows.
    """
    fq = framed_quiver(pres)
    out: dict[str, Matrix] = {}
    prov = fq.provenance_map
    for a in fq.quiver.arrows:
        if a.name not in prov:
            out[a.name] = point.matrix(a.name)
            continue
        source, index = prov[a.name]
        m = point.matrix(source)
        if a.tail == fq.infinity:  # column arrow
            out[a.name] = tuple((row[index - 1],) for row in m)
        else:  # row arrow
            out[a.name] = (m[index - 1],)
    return out


def framed_trace(pres: Presentation, framed_path: Path, point: RepPoint) -> Fraction:
    """Trace of the matrix product along a framed cycle at the framed point."""
    mats = framed_point(pres, point)
    fq = framed_quiver(pres)
    if framed_path.is_trivial:
        return Fraction(fq.dims[framed_path.tail])
    m = mats[framed_path.arrows[0]]
    for name in framed_path.arrows[1:]:
        m = mat_mul(mats[name], m)
    return mat_trace(m)


@dataclass
class CheckResult:
    name: str
    trials: int
    passed: bool
    witness: Optional[dict] = None

    def to_jsonable(self) -> dict:
        out = {"name": self.name, "trials": self.trials, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def check_invariance(
    f: Polynomial, pres: Presentation, trials: int, seed: int, name: str = "invariance"
) -> CheckResult:
    """Compare f at a point and at its translate by a random group element,
    exactly, over seeded trials; reports the first counterexample."""
    if trials < 1:
        raise QuiverError("trials must be >= 1")
    rng = random.Random(seed)
    for trial in range(trials):
        rep_seed = rng.randrange(2**31)
        grp_seed = rng.randrange(2**31)
        point = random_rep(pres, rep_seed)
        g = random_group(pres, grp_seed)
        lhs = eval_poly(f, pres, act(pres, g, point))
        rhs = eval_poly(f, pres, point)
        if lhs != rhs:
            return CheckResult(
                name,
                trials,
                False,
                {
                    "trial": trial,
                    "rep_seed": rep_seed,
                    "group_seed": grp_seed,
                    "moved": str(lhs),
                    "original": str(rhs),
                    "polynomial": str(f),
                },
            )
    return CheckResult(name, trials, True)
