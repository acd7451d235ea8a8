"""Finite-dimensional Lie algebras given by rational structure constants.

A `LieAlgebra` stores the brackets sparsely: only pairs i < j with a nonzero
bracket appear, each as a sparse coefficient vector over the basis.  On top of
that this module provides the Kirillov form and its exact rank, the randomized
index estimate, the magic number (dim + ind)/2, the Poisson bracket on the
symmetric algebra, invariance and regularity tests, and differentials of
polynomial functions at points of the dual space.

Points of the dual space are plain ``{basis_name: Fraction}`` mappings that
assign every basis name exactly once.  All operations are pure functions on
immutable data.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg, sampling
from .polyring import (
    MissingAssignmentError,
    Polynomial,
    UnknownVariableError,
)
from .report import FAIL, PASS, Check, Report

__all__ = [
    "LieAlgebra",
    "InvariantSet",
    "AlgebraError",
    "AlgebraFormatError",
    "HomogeneityError",
    "IndexEstimateError",
    "validate",
    "bracket_elements",
    "kirillov_matrix",
    "kirillov_rank_at",
    "generic_kirillov_rank",
    "index",
    "magic_number",
    "poisson_bracket",
    "poisson_bracket_at",
    "is_symmetric_invariant",
    "invariance_defect",
    "bracket_defect_against",
    "differential_at",
    "differential_matrix",
    "omega_test",
    "is_regular",
    "check_point",
]

BracketTable = dict[tuple[int, int], dict[int, Fraction]]
DualPoint = Mapping[str, Fraction]

class AlgebraError(Exception):
    """Base error for the Lie-algebra layer."""


class AlgebraFormatError(AlgebraError):
    """Structurally invalid algebra data (bad indices, names, rationals...)."""


class HomogeneityError(AlgebraError):
    """A supplied invariant is not homogeneous."""


class IndexEstimateError(AlgebraError):
    """The randomized rank estimate is inconsistent (parity failure)."""


@dataclass(frozen=True)
class LieAlgebra:
    """Immutable structure-constant presentation of a Lie algebra.

    ``brackets[(i, j)][k]`` with i < j is the coefficient of basis[k] in
    [basis[i], basis[j]]; antisymmetry is implicit in the storage.  ``grading``
    is attached by the truncated-current constructor and is None for plain
    algebras.
    """

    label: str
    basis: tuple[str, ...]
    brackets: BracketTable
    grading: object | None = None
    _vidx: dict[str, int] = field(init=False, compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_vidx", {b: i for i, b in enumerate(self.basis)})
        if len(self._vidx) != len(self.basis):
            raise AlgebraFormatError("basis names must be distinct")

    @classmethod
    def create(cls, label: str, basis: Sequence[str],
               entries: Mapping[tuple[int, int], Mapping[int, Fraction | int]],
               grading: object | None = None) -> "LieAlgebra":
        """Build from raw bracket entries, normalizing orientation and dropping zeros."""
        basis = tuple(basis)
        n = len(basis)
        table: BracketTable = {}
        for (i, j), coeffs in entries.items():
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraFormatError(f"bracket pair ({i}, {j}) out of range")
            if i == j:
                raise AlgebraFormatError(f"bracket pair ({i}, {i}) pairs an element with itself")
            sign = 1
            if i > j:
                i, j = j, i
                sign = -1
            vec: dict[int, Fraction] = {}
            for k, c in coeffs.items():
                if not (0 <= k < n):
                    raise AlgebraFormatError(f"bracket target index {k} out of range")
                c = Fraction(c) * sign
                if c:
                    vec[k] = vec.get(k, Fraction(0)) + c
            vec = {k: c for k, c in vec.items() if c}
            if not vec:
                continue
            if (i, j) in table:
                raise AlgebraFormatError(f"duplicate bracket entry for pair ({i}, {j})")
            table[(i, j)] = vec
        return cls(label=label, basis=basis, brackets=table, grading=grading)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, name: str) -> int:
        idx = self._vidx.get(name)
        if idx is None:
            raise UnknownVariableError(name)
        return idx

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """[basis[i], basis[j]] as a sparse coefficient vector, any orientation."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def variable(self, name: str) -> Polynomial:
        return Polynomial.variable(self.basis, name)

    def structure_equal(self, other: "LieAlgebra") -> bool:
        return self.basis == other.basis and self.brackets == other.brackets


def check_point(L: LieAlgebra, point: DualPoint) -> list[Fraction]:
    """Validate a dual point (exactly the basis names) and return its coordinate vector."""
    if set(point.keys()) != set(L.basis):
        missing = set(L.basis) - set(point.keys())
        extra = set(point.keys()) - set(L.basis)
        raise MissingAssignmentError(
            f"dual point must assign every basis name exactly once "
            f"(missing {sorted(missing)}, unexpected {sorted(extra)})")
    return [Fraction(point[b]) for b in L.basis]


def bracket_elements(L: LieAlgebra, x: Mapping[int, Fraction],
                     y: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Bracket of two elements given as sparse index -> coefficient vectors."""
    out: dict[int, Fraction] = {}
    for i, xi in x.items():
        if not xi:
            continue
        for j, yj in y.items():
            if not yj or i == j:
                continue
            if i < j:
                coeffs = L.brackets.get((i, j))
                s = xi * yj
            else:
                coeffs = L.brackets.get((j, i))
                s = -xi * yj
            if not coeffs:
                continue
            for k, c in coeffs.items():
                v = out.get(k, Fraction(0)) + s * c
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
    return out


def validate(L: LieAlgebra) -> Report:
    """Check the Jacobi identity on all basis triples (antisymmetry is structural)."""
    rep = Report(label=f"validate:{L.label}")
    t0 = time.perf_counter()
    n = L.dim
    violations = []
    count = 0
    for i, j, k in itertools.combinations(range(n), 3):
        count += 1
        res: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = L.bracket(b, c)
            for t, v in bracket_elements(L, {a: Fraction(1)}, inner).items():
                s = res.get(t, Fraction(0)) + v
                if s:
                    res[t] = s
                elif t in res:
                    del res[t]
        if res:
            violations.append({
                "triple": [L.basis[i], L.basis[j], L.basis[k]],
                "residual": {L.basis[t]: v for t, v in sorted(res.items())},
            })
    witness = {"triples_checked": count, "violation_count": len(violations),
               "violations": violations[:5]}
    rep.add(Check(name="jacobi", status=FAIL if violations else PASS,
                  paper_ref="plumbing", witness=witness,
                  elapsed=time.perf_counter() - t0))
    return rep


# ---------------------------------------------------------------------------
# Kirillov form, index, magic number
# ---------------------------------------------------------------------------

def kirillov_matrix(L: LieAlgebra, point: DualPoint) -> list[list[Fraction]]:
    """B(xi)_{ij} = <xi, [b_i, b_j]>, an antisymmetric dim x dim matrix."""
    vals = check_point(L, point)
    n = L.dim
    B = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), coeffs in L.brackets.items():
        s = Fraction(0)
        for k, c in coeffs.items():
            s += c * vals[k]
        if s:
            B[i][j] = s
            B[j][i] = -s
    return B


def kirillov_rank_at(L: LieAlgebra, point: DualPoint) -> int:
    return linalg.rank(kirillov_matrix(L, point))


def generic_kirillov_rank(L: LieAlgebra, trials: int = 5, seed: int = 0,
                          bound: int = sampling.DEFAULT_BOUND) -> int:
    """Max Kirillov rank over seeded random integer points (monotone in trials)."""
    best = 0
    for t in range(trials):
        pt = sampling.random_coords(L.basis, sampling.rng(seed, sampling.TAG_INDEX, t), bound)
        best = max(best, kirillov_rank_at(L, pt))
        if best == L.dim:
            break
    return best


def index(L: LieAlgebra, trials: int = 5, seed: int = 0) -> int:
    """ind L = dim L - max rank of the Kirillov form, estimated at random points.

    The estimate can only err upward (a random point may be non-generic), and
    more trials never increase the result.
    """
    return L.dim - generic_kirillov_rank(L, trials=trials, seed=seed)


def magic_number(L: LieAlgebra, trials: int = 5, seed: int = 0) -> int:
    """(dim + ind)/2; always an integer because the Kirillov form has even rank."""
    s = L.dim + index(L, trials=trials, seed=seed)
    if s % 2:
        raise IndexEstimateError("index estimate unreliable, increase trials")
    return s // 2


# ---------------------------------------------------------------------------
# Poisson structure on the symmetric algebra
# ---------------------------------------------------------------------------

def _check_over_basis(L: LieAlgebra, f: Polynomial) -> None:
    if f.varset != L.basis:
        raise AlgebraError(
            f"polynomial variables {f.varset} do not match the basis of {L.label}")


def poisson_bracket(L: LieAlgebra, f: Polynomial, g: Polynomial) -> Polynomial:
    """Linear Poisson bracket: {f,g} = sum c_ij^k b_k (df/db_i dg/db_j - df/db_j dg/db_i)."""
    _check_over_basis(L, f)
    _check_over_basis(L, g)
    df = [f.partial(b) for b in L.basis]
    dg = [g.partial(b) for b in L.basis]
    out = Polynomial.zero(L.basis)
    for (i, j), coeffs in L.brackets.items():
        cross = df[i] * dg[j] - df[j] * dg[i]
        if cross.is_zero:
            continue
        for k, c in coeffs.items():
            out = out + Polynomial.variable(L.basis, L.basis[k]) * (cross * c)
    return out


def _poisson_with_basis_var(L: LieAlgebra, df: list[Polynomial], t: int) -> Polynomial:
    # {f, b_t} with the partials of f precomputed.
    out = Polynomial.zero(L.basis)
    for (i, j), coeffs in L.brackets.items():
        if j == t:
            d = df[i]
        elif i == t:
            d = -df[j]
        else:
            continue
        if d.is_zero:
            continue
        for k, c in coeffs.items():
            out = out + Polynomial.variable(L.basis, L.basis[k]) * (d * c)
    return out


def poisson_bracket_at(L: LieAlgebra, f: Polynomial, g: Polynomial,
                       point: DualPoint) -> Fraction:
    """Value of {f,g} at a point without forming the symbolic bracket.

    Independent evaluation route used for sampled invariance checks; it only
    needs the two gradients at the point.
    """
    _check_over_basis(L, f)
    _check_over_basis(L, g)
    vals = check_point(L, point)
    gf = f.gradient_at(point)
    gg = g.gradient_at(point)
    total = Fraction(0)
    for (i, j), coeffs in L.brackets.items():
        cross = gf[i] * gg[j] - gf[j] * gg[i]
        if not cross:
            continue
        s = Fraction(0)
        for k, c in coeffs.items():
            s += c * vals[k]
        total += cross * s
    return total


def is_symmetric_invariant(L: LieAlgebra, f: Polynomial) -> bool:
    """Exact symbolic test that {f, b} = 0 for every basis element b."""
    _check_over_basis(L, f)
    df = [f.partial(b) for b in L.basis]
    for t in range(L.dim):
        if not _poisson_with_basis_var(L, df, t).is_zero:
            return False
    return True


def bracket_defect_against(L: LieAlgebra, f: Polynomial,
                           targets: Sequence[int]) -> tuple[str, Polynomial] | None:
    """First target basis element whose bracket with f is nonzero, with the bracket."""
    _check_over_basis(L, f)
    df = [f.partial(b) for b in L.basis]
    for t in targets:
        br = _poisson_with_basis_var(L, df, t)
        if not br.is_zero:
            return L.basis[t], br
    return None


def invariance_defect(L: LieAlgebra, f: Polynomial) -> tuple[str, Polynomial] | None:
    """First basis element whose bracket with f is nonzero, with the bracket."""
    return bracket_defect_against(L, f, range(L.dim))


# ---------------------------------------------------------------------------
# differentials, regularity, the singular-set test
# ---------------------------------------------------------------------------

def differential_at(f: Polynomial, point: DualPoint) -> list[Fraction]:
    """Gradient of f at a dual point, as an element of the algebra (varset order)."""
    return f.gradient_at(point)


def differential_matrix(polys: Sequence[Polynomial], point: DualPoint) -> list[list[Fraction]]:
    return [f.gradient_at(point) for f in polys]


@dataclass(frozen=True)
class InvariantSet:
    """A tuple of homogeneous polynomial invariants attached to an algebra."""

    algebra: LieAlgebra
    polys: tuple[Polynomial, ...]
    claimed_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        for f in self.polys:
            if f.varset != self.algebra.basis:
                raise AlgebraError(
                    f"invariant variables {f.varset} do not match the basis of "
                    f"{self.algebra.label}")
            if not f.is_homogeneous():
                raise HomogeneityError(f"invariant '{f}' is not homogeneous")
            if f.degree() < 1:
                raise AlgebraError("basic invariants must be non-constant")

    def __len__(self) -> int:
        return len(self.polys)

    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree() for f in self.polys)


def omega_test(fs: InvariantSet, point: DualPoint) -> bool:
    """True iff the differentials of the invariants are independent at the point."""
    if not fs.polys:
        raise AlgebraError("the singular-set test needs at least one invariant")
    return linalg.rank(differential_matrix(fs.polys, point)) == len(fs.polys)


def is_regular(L: LieAlgebra, point: DualPoint, known_index: int) -> bool:
    """True iff the coadjoint stabilizer at the point has the minimal dimension."""
    return kirillov_rank_at(L, point) == L.dim - known_index
