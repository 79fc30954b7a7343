"""Exact multivariate polynomials over the rationals.

Variables are either matrix-entry variables attached to an arrow (printed
``x[a;i,j]``) or fresh variables (printed ``label[i,j]``).  Monomials store a
dense exponent tuple internally; the ``exponents`` view is sparse.  Terms are
kept sorted descending in the ring's ambient order, which also fixes the
canonical printed form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

ARROW = "arrow"
FRESH = "fresh"


class RingError(ValueError):
    """Ring mismatch or malformed polynomial data."""


@dataclass(frozen=True)
class Variable:
    kind: str
    name: str
    row: int
    col: int

    def __post_init__(self):
        if self.kind not in (ARROW, FRESH):
            raise RingError(f"unknown variable kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == ARROW:
            return f"x[{self.name};{self.row},{self.col}]"
        return f"{self.name}[{self.row},{self.col}]"


def arrow_var(name: str, row: int, col: int) -> Variable:
    return Variable(ARROW, name, row, col)


def fresh_var(name: str, row: int, col: int) -> Variable:
    return Variable(FRESH, name, row, col)


@dataclass(frozen=True)
class Monomial:
    exps: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def exponents(self) -> dict[int, int]:
        """Sparse view: variable index -> positive exponent."""
        return {i: e for i, e in enumerate(self.exps) if e}

    @property
    def is_one(self) -> bool:
        return not any(self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def divide(self, other: "Monomial") -> "Monomial":
        """Quotient self / other; other must divide self."""
        if not other.divides(self):
            raise RingError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))


def _degrevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """lex, degrevlex, or a block elimination order.

    A block order compares the front-block exponents first (by degrevlex
    restricted to the front variables), then the rest by the back scheme; any
    monomial involving a front variable therefore dominates every monomial in
    the remaining variables.
    """

    scheme: str
    front: frozenset[int] = frozenset()
    back: str = "degrevlex"

    def __post_init__(self):
        if self.scheme not in ("lex", "degrevlex", "block"):
            raise RingError(f"unknown order scheme {self.scheme!r}")
        if self.back not in ("lex", "degrevlex"):
            raise RingError(f"unknown back scheme {self.back!r}")
        if self.scheme != "block" and self.front:
            raise RingError("front block only makes sense for block orders")

    @staticmethod
    def lex() -> "MonomialOrder":
        return MonomialOrder("lex")

    @staticmethod
    def degrevlex() -> "MonomialOrder":
        return MonomialOrder("degrevlex")

    @staticmethod
    def block(front: Iterable[int], back: str = "degrevlex") -> "MonomialOrder":
        return MonomialOrder("block", frozenset(front), back)

    def key_function(self, nvars: int) -> Callable[[tuple[int, ...]], tuple]:
        """Key on exponent tuples; larger key means larger monomial."""
        if self.scheme == "lex":
            return lambda exps: exps
        if self.scheme == "degrevlex":
            return _degrevlex_key
        front = sorted(i for i in self.front if i < nvars)
        back = [i for i in range(nvars) if i not in self.front]
        front_rev = tuple(reversed(front))
        back_rev = tuple(reversed(back))
        if self.back == "degrevlex":

            def key(exps: tuple[int, ...]):
                return (
                    sum(exps[i] for i in front),
                    tuple(-exps[i] for i in front_rev),
                    sum(exps[i] for i in back),
                    tuple(-exps[i] for i in back_rev),
                )

        else:

            def key(exps: tuple[int, ...]):
                return (
                    sum(exps[i] for i in front),
                    tuple(-exps[i] for i in front_rev),
                    tuple(exps[i] for i in back),
                )

        return key

    def sort_key(self, nvars: int) -> Callable[[Monomial], tuple]:
        kf = self.key_function(nvars)
        return lambda m: kf(m.exps)


class PolynomialRing:
    """A polynomial ring with a fixed variable tuple and ambient order."""

    def __init__(self, variables: Iterable[Variable], ambient_order: MonomialOrder | None = None):
        self.variables: tuple[Variable, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise RingError("duplicate variables in ring")
        self.ambient_order = ambient_order or MonomialOrder.degrevlex()
        self.index: dict[Variable, int] = {v: i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)
        self._ambient_key = self.ambient_order.key_function(self.nvars)
        self._by_str = {str(v): i for i, v in enumerate(self.variables)}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolynomialRing)
            and self.variables == other.variables
            and self.ambient_order == other.ambient_order
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.ambient_order))

    def __repr__(self) -> str:
        return f"PolynomialRing({len(self.variables)} variables)"

    # -- construction -----------------------------------------------------

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero
        return Polynomial(self, ((Monomial((0,) * self.nvars), c),))

    def monomial(self, exponents: Mapping[int, int]) -> Monomial:
        exps = [0] * self.nvars
        for i, e in exponents.items():
            if not 0 <= i < self.nvars:
                raise RingError(f"variable index {i} out of range")
            if e < 0:
                raise RingError("negative exponent")
            exps[i] = e
        return Monomial(tuple(exps))

    def var(self, v: Variable | int) -> "Polynomial":
        i = v if isinstance(v, int) else self.index.get(v)
        if i is None or not 0 <= i < self.nvars:
            raise RingError(f"variable {v} not in ring")
        return Polynomial(self, ((self.monomial({i: 1}), Fraction(1)),))

    def polynomial(self, terms: Iterable[tuple[Monomial, Fraction]]) -> "Polynomial":
        """Normalize arbitrary (monomial, coefficient) pairs."""
        acc: dict[Monomial, Fraction] = {}
        for m, c in terms:
            if len(m.exps) != self.nvars:
                raise RingError("monomial has wrong number of variables")
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        kept = [(m, c) for m, c in acc.items() if c != 0]
        kept.sort(key=lambda mc: self._ambient_key(mc[0].exps), reverse=True)
        return Polynomial(self, tuple(kept))

    # -- printing and parsing ----------------------------------------------

    def format_monomial(self, m: Monomial) -> str:
        if m.is_one:
            return "1"
        bits = []
        for i, e in enumerate(m.exps):
            if e == 1:
                bits.append(str(self.variables[i]))
            elif e > 1:
                bits.append(f"{self.variables[i]}^{e}")
        return "*".join(bits)

    _VAR_RE = re.compile(r"(?P<name>[A-Za-z0-9_.']+)\[(?P<body>[^\]]*)\]")
    _NUM_RE = re.compile(r"\d+(?:/\d+)?")
    _EXP_RE = re.compile(r"\d+")

    def parse(self, text: str) -> "Polynomial":
        """Parse the canonical printed format (tolerant of whitespace)."""
        text = text.strip()
        if text in ("", "0"):
            return self.zero
        terms: list[tuple[Monomial, Fraction]] = []
        pos = 0
        sign = Fraction(1)
        pending_sign = False
        n = len(text)
        while pos < n:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            if text[pos] in "+-":
                if text[pos] == "-":
                    sign = -sign
                pending_sign = True
                pos += 1
                continue
            coeff = Fraction(1)
            exps: dict[int, int] = {}
            saw_factor = False
            while True:
                while pos < n and text[pos].isspace():
                    pos += 1
                vm = self._VAR_RE.match(text, pos)
                nm = self._NUM_RE.match(text, pos)
                if vm:
                    idx = self._by_str.get(vm.group(0))
                    if idx is None:
                        raise RingError(f"unknown variable {vm.group(0)!r}")
                    pos = vm.end()
                    e = 1
                    if pos < n and text[pos] == "^":
                        em = self._EXP_RE.match(text, pos + 1)
                        if not em:
                            raise RingError("missing exponent after '^'")
                        e = int(em.group(0))
                        pos = em.end()
                    exps[idx] = exps.get(idx, 0) + e
                    saw_factor = True
                elif nm:
                    coeff *= Fraction(nm.group(0))
                    pos = nm.end()
                    saw_factor = True
                else:
                    raise RingError(f"cannot parse polynomial near {text[pos:pos+16]!r}")
                while pos < n and text[pos].isspace():
                    pos += 1
                if pos < n and text[pos] == "*":
                    pos += 1
                    continue
                # adjacency is implicit multiplication: "1/2 x[c;1,1]"
                if pos < n and (self._VAR_RE.match(text, pos) or self._NUM_RE.match(text, pos)):
                    continue
                break
            if not saw_factor:
                raise RingError("empty term")
            terms.append((self.monomial(exps), sign * coeff))
            sign = Fraction(1)
            pending_sign = False
        if pending_sign:
            raise RingError("dangling sign at end of polynomial")
        return self.polynomial(terms)


class Polynomial:
    """Immutable polynomial; terms sorted descending in the ambient order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: tuple[tuple[Monomial, Fraction], ...]):
        self.ring = ring
        self.terms = terms

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_monomial(self) -> Monomial:
        if self.is_zero:
            raise RingError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            raise RingError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    @property
    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention."""
        if self.is_zero:
            return -1
        return max(m.degree for m, _ in self.terms)

    def variables_used(self) -> set[int]:
        used: set[int] = set()
        for m, _ in self.terms:
            for i, e in enumerate(m.exps):
                if e:
                    used.add(i)
        return used

    def coefficient(self, m: Monomial) -> Fraction:
        for mm, c in self.terms:
            if mm == m:
                return c
        return Fraction(0)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lc = self.leading_coefficient
        if lc == 1:
            return self
        return Polynomial(self.ring, tuple((m, c / lc) for m, c in self.terms))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingError("ring mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        self._check(other)
        return self.ring.polynomial(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero
            return Polynomial(self.ring, tuple((m, cc * c) for m, cc in self.terms))
        self._check(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 * m2
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return self.ring.polynomial(acc.items())

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative power")
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.terms))

    # -- printing -------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for k, (m, c) in enumerate(self.terms):
            mag = abs(c)
            if m.is_one:
                body = str(mag)
            elif mag == 1:
                body = self.ring.format_monomial(m)
            else:
                body = f"{mag}*{self.ring.format_monomial(m)}"
            if k == 0:
                bits.append(body if c > 0 else f"-{body}")
            else:
                bits.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(bits)

    def __repr__(self) -> str:
        return f"Polynomial({self})"
