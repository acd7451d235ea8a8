"""Exact sparse multivariate polynomials over the rationals, plus truncated
eps-jets on top of them.

Everything is immutable and pure.  Coefficients are `fractions.Fraction`,
monomials are sorted ``((variable_index, exponent), ...)`` tuples, and the
canonical printed form uses graded reverse lexicographic order over the
declared variable order, so ``parse_poly(str(p), p.varset) == p``.

There is no floating point anywhere in this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

__all__ = [
    "Polynomial",
    "Jet",
    "parse_poly",
    "jet_substitute",
    "PolyringError",
    "ParseError",
    "UnknownVariableError",
    "VarsetMismatchError",
    "MissingAssignmentError",
    "JetOrderError",
]

# A monomial: ((var_index, exponent), ...) with indices strictly increasing
# and exponents >= 1.  The empty tuple is the constant monomial.
Monomial = tuple[tuple[int, int], ...]


class PolyringError(Exception):
    """Base error for the polynomial layer."""


class ParseError(PolyringError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, pos: int | None = None) -> None:
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class UnknownVariableError(ParseError):
    """An identifier that is not in the declared variable set."""

    def __init__(self, name: str, pos: int | None = None) -> None:
        ParseError.__init__(self, f"unknown variable '{name}'", pos)
        self.name = name


class VarsetMismatchError(PolyringError):
    """Two operands do not share the same ordered variable set."""


class MissingAssignmentError(PolyringError):
    """A point or substitution does not cover every required variable."""


class JetOrderError(PolyringError):
    """Jet operands have incompatible truncation orders."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational scalar, got {type(x).__name__}")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out: list[tuple[int, int]] = []
    i = j = 0
    while i < len(a) and j < len(b):
        ia, ea = a[i]
        ib, eb = b[j]
        if ia == ib:
            out.append((ia, ea + eb))
            i += 1
            j += 1
        elif ia < ib:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Polynomial:
    """Sparse polynomial with Fraction coefficients over a fixed ordered varset."""

    __slots__ = ("varset", "terms", "_vidx")

    def __init__(self, varset: Sequence[str], terms: Mapping[Monomial, Fraction] | None = None,
                 *, _canonical: bool = False):
        object.__setattr__  # noqa: B018  (plain class; slots keep it lean)
        self.varset: tuple[str, ...] = tuple(varset)
        self._vidx: dict[str, int] | None = None
        if terms is None:
            self.terms: dict[Monomial, Fraction] = {}
            return
        if _canonical:
            self.terms = dict(terms)
            return
        n = len(self.varset)
        if len(set(self.varset)) != n:
            raise VarsetMismatchError("variable names must be distinct")
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            c = _as_fraction(coeff)
            if not c:
                continue
            prev = -1
            for idx, exp in mono:
                if not (0 <= idx < n):
                    raise PolyringError(f"variable index {idx} out of range")
                if exp <= 0:
                    raise PolyringError("exponents must be positive in sparse monomials")
                if idx <= prev:
                    raise PolyringError("monomial indices must be strictly increasing")
                prev = idx
            clean[tuple(mono)] = clean.get(tuple(mono), Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, varset: Sequence[str]) -> "Polynomial":
        return cls(varset, {}, _canonical=True)

    @classmethod
    def constant(cls, varset: Sequence[str], c) -> "Polynomial":
        c = _as_fraction(c)
        return cls(varset, {(): c} if c else {}, _canonical=True)

    @classmethod
    def variable(cls, varset: Sequence[str], name: str) -> "Polynomial":
        p = cls(varset, {}, _canonical=True)
        idx = p._index_of(name)
        p.terms = {((idx, 1),): Fraction(1)}
        return p

    # -- bookkeeping ---------------------------------------------------------

    def _index_map(self) -> dict[str, int]:
        if self._vidx is None:
            self._vidx = {name: i for i, name in enumerate(self.varset)}
        return self._vidx

    def _index_of(self, name: str) -> int:
        idx = self._index_map().get(name)
        if idx is None:
            raise UnknownVariableError(name)
        return idx

    def _check_varset(self, other: "Polynomial") -> None:
        if self.varset != other.varset:
            raise VarsetMismatchError(
                f"operands live over different variable sets: {self.varset} vs {other.varset}")

    def _new(self, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = Polynomial(self.varset, terms, _canonical=True)
        p._vidx = self._vidx
        return p

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {_mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def support(self) -> frozenset[str]:
        """Names of the variables that actually occur."""
        seen: set[str] = set()
        for mono in self.terms:
            for idx, _ in mono:
                seen.add(self.varset[idx])
        return frozenset(seen)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_varset(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return self._new(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return self._new({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return self._new({})
            return self._new({m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_varset(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m)
                s = ca * cb if s is None else s + ca * cb
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, exp: int) -> "Polynomial":
        if not isinstance(exp, int) or exp < 0:
            raise PolyringError("polynomial exponents must be nonnegative integers")
        result = Polynomial.constant(self.varset, 1)
        result._vidx = self._vidx
        base = self
        while exp:
            if exp & 1:
                result = result * base
            exp >>= 1
            if exp:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.varset == other.varset and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.varset, frozenset(self.terms.items())))

    # -- calculus ------------------------------------------------------------

    def partial(self, name: str) -> "Polynomial":
        """Exact partial derivative with respect to a named variable."""
        idx = self._index_of(name)
        out: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            for pos, (i, e) in enumerate(mono):
                if i != idx:
                    continue
                if e == 1:
                    nm = mono[:pos] + mono[pos + 1:]
                else:
                    nm = mono[:pos] + ((i, e - 1),) + mono[pos + 1:]
                s = out.get(nm)
                s = c * e if s is None else s + c * e
                if s:
                    out[nm] = s
                elif nm in out:
                    del out[nm]
                break
        return self._new(out)

    def _values_vector(self, point: Mapping[str, Fraction]) -> list[Fraction]:
        vals: list[Fraction] = []
        for name in self.varset:
            if name not in point:
                raise MissingAssignmentError(f"no value assigned to variable '{name}'")
            vals.append(_as_fraction(point[name]))
        return vals

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a point given as name -> rational; every variable needs a value."""
        vals = self._values_vector(point)
        total = Fraction(0)
        powcache: dict[tuple[int, int], Fraction] = {}
        for mono, c in self.terms.items():
            acc = c
            for idx, e in mono:
                p = powcache.get((idx, e))
                if p is None:
                    p = vals[idx] ** e
                    powcache[(idx, e)] = p
                acc *= p
                if not acc:
                    break
            total += acc
        return total

    def gradient_at(self, point: Mapping[str, Fraction]) -> list[Fraction]:
        """All partial derivatives evaluated at a point, in varset order.

        One sweep over the terms; much cheaper than evaluating each symbolic
        partial separately when the polynomial is large.
        """
        vals = self._values_vector(point)
        grad = [Fraction(0)] * len(self.varset)
        powcache: dict[tuple[int, int], Fraction] = {}

        def pw(idx: int, e: int) -> Fraction:
            if e == 0:
                return Fraction(1)
            p = powcache.get((idx, e))
            if p is None:
                p = vals[idx] ** e
                powcache[(idx, e)] = p
            return p

        for mono, c in self.terms.items():
            for pos, (idx, e) in enumerate(mono):
                part = c * e * pw(idx, e - 1)
                if not part:
                    continue
                for qos, (jdx, f) in enumerate(mono):
                    if qos == pos:
                        continue
                    part *= pw(jdx, f)
                    if not part:
                        break
                grad[idx] += part
        return grad

    # -- printing ------------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        n = len(self.varset)

        def key(item: tuple[Monomial, Fraction]):
            mono = item[0]
            exps = [0] * n
            for i, e in mono:
                exps[i] = e
            # grevlex-descending: higher degree first; ties broken so that the
            # reversed exponent vector is lexicographically smallest first.
            return (-_mono_degree(mono), tuple(reversed(exps)))

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for k, (mono, c) in enumerate(self._sorted_terms()):
            factors = [self.varset[i] if e == 1 else f"{self.varset[i]}^{e}"
                       for i, e in mono]
            mag = -c if c < 0 else c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if k == 0:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append((" + " if c > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<num>[0-9]+(?:/[0-9]+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:@[0-9]+)*)"
    r"|(?P<op>[+\-*^()])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}", pos)
        kind = m.lastgroup or "op"
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser for the grammar:

        expr   := term (("+" | "-") term)*
        term   := factor ("*" factor)*
        factor := "-" factor | power
        power  := atom ("^" INTEGER)?
        atom   := NUMBER | IDENT | "(" expr ")"

    ``^`` binds tightest, implicit multiplication is a syntax error, and
    number literals may be fractions ``a/b``.
    """

    def __init__(self, text: str, varset: Sequence[str]):
        self.tokens = _tokenize(text)
        self.text = text
        self.i = 0
        self.varset = tuple(varset)
        self._proto = Polynomial.zero(self.varset)

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        p = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def _expr(self) -> Polynomial:
        p = self._term()
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return p
            self._next()
            q = self._term()
            p = p + q if tok[1] == "+" else p - q

    def _term(self) -> Polynomial:
        p = self._factor()
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] != "*":
                return p
            self._next()
            p = p * self._factor()

    def _factor(self) -> Polynomial:
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "-":
            self._next()
            return -self._factor()
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self._next()
            etok = self._next()
            if etok[0] != "num" or "/" in etok[1]:
                raise ParseError("exponent must be a nonnegative integer", etok[2])
            return base ** int(etok[1])
        return base

    def _atom(self) -> Polynomial:
        tok = self._next()
        kind, value, pos = tok
        if kind == "num":
            return Polynomial.constant(self.varset, Fraction(value))
        if kind == "ident":
            if value not in self.varset:
                raise UnknownVariableError(value, pos)
            return Polynomial.variable(self.varset, value)
        if kind == "op" and value == "(":
            p = self._expr()
            closing = self._next()
            if closing[0] != "op" or closing[1] != ")":
                raise ParseError("expected ')'", closing[2])
            return p
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_poly(text: str, varset: Sequence[str]) -> Polynomial:
    """Parse canonical polynomial syntax over an ordered variable set."""
    return _Parser(text, varset).parse()


# ---------------------------------------------------------------------------
# truncated jets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Jet:
    """Truncated polynomial in a nilpotent parameter eps: eps^(order+1) = 0.

    ``coeffs[j]`` is the polynomial coefficient of eps^j.  All coefficients
    share one target variable set.
    """

    order: int
    coeffs: tuple[Polynomial, ...]

    def __post_init__(self):
        if self.order < 0:
            raise JetOrderError("jet order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise JetOrderError(
                f"a jet of order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coeffs)}")
        vs = self.coeffs[0].varset
        for c in self.coeffs[1:]:
            if c.varset != vs:
                raise VarsetMismatchError("jet coefficients must share one variable set")

    @property
    def varset(self) -> tuple[str, ...]:
        return self.coeffs[0].varset

    @classmethod
    def zero(cls, order: int, varset: Sequence[str]) -> "Jet":
        z = Polynomial.zero(varset)
        return cls(order, tuple([z] * (order + 1)))

    @classmethod
    def constant(cls, order: int, poly: Polynomial) -> "Jet":
        z = Polynomial.zero(poly.varset)
        return cls(order, (poly,) + tuple([z] * order))

    def _check(self, other: "Jet") -> None:
        if self.order != other.order:
            raise JetOrderError("jet orders differ")
        if self.varset != other.varset:
            raise VarsetMismatchError("jet variable sets differ")

    def __add__(self, other: "Jet") -> "Jet":
        self._check(other)
        return Jet(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Jet(self.order, tuple(c * other for c in self.coeffs))
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        z = Polynomial.zero(self.varset)
        out = [z] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return Jet(self.order, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, exp: int) -> "Jet":
        if not isinstance(exp, int) or exp < 0:
            raise PolyringError("jet exponents must be nonnegative integers")
        result = Jet.constant(self.order, Polynomial.constant(self.varset, 1))
        base = self
        while exp:
            if exp & 1:
                result = result * base
            exp >>= 1
            if exp:
                base = base * base
        return result


def jet_substitute(p: Polynomial, subst: Mapping[str, Jet], order: int) -> Jet:
    """Substitute a jet for every variable of ``p`` and truncate at eps^order.

    All jets must share ``order`` and a common target variable set, and every
    variable of ``p.varset`` must be assigned.
    """
    target: tuple[str, ...] | None = None
    for name in p.varset:
        jet = subst.get(name)
        if jet is None:
            raise MissingAssignmentError(f"no jet assigned to variable '{name}'")
        if jet.order != order:
            raise JetOrderError(
                f"jet for '{name}' has order {jet.order}, expected {order}")
        if target is None:
            target = jet.varset
        elif jet.varset != target:
            raise VarsetMismatchError("substitution jets must share one variable set")
    if target is None:
        # p has no variables at all; fall back to a bare constant jet.
        target = ()
    result = Jet.zero(order, target)
    one = Polynomial.constant(target, 1)
    powcache: dict[tuple[str, int], Jet] = {}
    for mono, c in p.terms.items():
        acc = Jet.constant(order, one * c)
        for idx, e in mono:
            name = p.varset[idx]
            key = (name, e)
            jp = powcache.get(key)
            if jp is None:
                jp = subst[name] ** e
                powcache[key] = jp
            acc = acc * jp
        result = result + acc
    return result
