"""Truncated current algebras over a base Lie algebra.

`takiff(L, m)` builds the algebra L<m> on basis names `b@j` (b a base name,
j the grade, 0 <= j <= m) with bracket

    [a@i, b@j] = ([a, b]_base)@(i+j)   if i+j <= m, else 0.

Multi-current algebras iterate the construction left to right; names nest as
`b@j1@j2`.  The grading metadata always describes the outermost construction
step relative to its immediate base; earlier levels are visible only through
the nested names.

A dual point on L<m> can be handled either flat (one coordinate per graded
name) or as its component tuple (xi_0, ..., xi_m) of base dual points; xi_j
reads the grade-j coordinates.  `flatten_point` and `split_point` convert
between the two forms.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .liealg import AlgebraError, AlgebraFormatError, DualPoint, LieAlgebra, check_point

__all__ = [
    "TakiffGrading",
    "TakiffDualPoint",
    "takiff",
    "multi_current",
    "graded_name",
    "display_name",
    "nilpotent_ideal",
    "flatten_point",
    "split_point",
    "split_element",
    "ad_star",
    "coadjoint_apply",
    "coadjoint_apply_generic",
]

# components (xi_0, ..., xi_m), each a complete dual point on the base algebra
TakiffDualPoint = Sequence[DualPoint]


def graded_name(base: str, j: int) -> str:
    return f"{base}@{j}"


def display_name(name: str) -> str:
    """Collapse nested grade suffixes for display: b@1@0 -> b@[1,0]."""
    root, _, rest = name.partition("@")
    suffixes = rest.split("@") if rest else []
    if len(suffixes) < 2:
        return name
    return f"{root}@[{','.join(suffixes)}]"


@dataclass(frozen=True)
class TakiffGrading:
    """Grading metadata for one truncation step.

    grade_of and base_name_of are keyed by the graded basis names; base_name_of
    points back at the immediate base algebra's names.
    """

    base_dim: int
    depth: int
    grade_of: Mapping[str, int]
    base_name_of: Mapping[str, str]

    def __post_init__(self):
        counts = [0] * (self.depth + 1)
        for name, j in self.grade_of.items():
            if not (0 <= j <= self.depth):
                raise AlgebraFormatError(f"grade {j} of '{name}' out of range 0..{self.depth}")
            if name != graded_name(self.base_name_of[name], j):
                raise AlgebraFormatError(f"graded name '{name}' does not match its base name and grade")
            counts[j] += 1
        if set(self.grade_of) != set(self.base_name_of):
            raise AlgebraFormatError("grade_of and base_name_of must cover the same names")
        if any(c != self.base_dim for c in counts):
            raise AlgebraFormatError("every grade must contain exactly base_dim names")

    def to_dict(self) -> dict:
        return {
            "base_dim": self.base_dim,
            "depth": self.depth,
            "grade_of": dict(self.grade_of),
            "base_name_of": dict(self.base_name_of),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "TakiffGrading":
        return cls(base_dim=int(d["base_dim"]), depth=int(d["depth"]),
                   grade_of={k: int(v) for k, v in d["grade_of"].items()},
                   base_name_of=dict(d["base_name_of"]))


def _require_grading(L: LieAlgebra) -> TakiffGrading:
    if not isinstance(L.grading, TakiffGrading):
        raise AlgebraFormatError(f"algebra {L.label} carries no truncation grading")
    return L.grading


def takiff(L: LieAlgebra, m: int) -> LieAlgebra:
    """The truncated current algebra L<m> with grading metadata attached."""
    if m < 1:
        raise ValueError(f"truncation order must be >= 1, got {m}")
    n = L.dim
    basis = tuple(graded_name(b, j) for j in range(m + 1) for b in L.basis)
    entries: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), coeffs in L.brackets.items():
        for s in range(m + 1):
            for t in range(m + 1 - s):
                a_idx = s * n + i
                b_idx = t * n + j
                entries[(a_idx, b_idx)] = {(s + t) * n + k: c for k, c in coeffs.items()}
    grading = TakiffGrading(
        base_dim=n, depth=m,
        grade_of={graded_name(b, j): j for j in range(m + 1) for b in L.basis},
        base_name_of={graded_name(b, j): b for j in range(m + 1) for b in L.basis},
    )
    return LieAlgebra.create(f"{L.label}<{m}>", basis, entries, grading=grading)


def multi_current(L: LieAlgebra, degrees: Sequence[int]) -> LieAlgebra:
    """Iterated truncation ((L<m1>)<m2>)...<mr>, labelled L<m1,...,mr>."""
    if not degrees:
        raise ValueError("degree list must not be empty")
    cur = L
    for d in degrees:
        cur = takiff(cur, d)
    label = f"{L.label}<{','.join(str(d) for d in degrees)}>"
    return dataclasses.replace(cur, label=label)


def nilpotent_ideal(L: LieAlgebra) -> list[str]:
    """Basis names of positive grade; verified to span an ideal."""
    grading = _require_grading(L)
    ideal_idx = {i for i, b in enumerate(L.basis) if grading.grade_of[b] >= 1}
    for (i, j), coeffs in L.brackets.items():
        if i in ideal_idx or j in ideal_idx:
            outside = [L.basis[k] for k in coeffs if k not in ideal_idx]
            if outside:
                raise AlgebraError(
                    f"positive-grade span is not an ideal: [{L.basis[i]}, {L.basis[j]}] "
                    f"meets {outside}")
    return [b for b in L.basis if grading.grade_of[b] >= 1]


# ---------------------------------------------------------------------------
# dual points: flat form <-> component tuple
# ---------------------------------------------------------------------------

def _component_order(L: LieAlgebra) -> tuple[tuple[str, ...], int]:
    """Base names in basis order plus the depth, read from the grading."""
    grading = _require_grading(L)
    base_names = tuple(grading.base_name_of[b] for b in L.basis
                       if grading.grade_of[b] == 0)
    return base_names, grading.depth


def flatten_point(L: LieAlgebra, components: TakiffDualPoint) -> dict[str, Fraction]:
    """Assemble a dual point on L from its base components (xi_0..xi_m)."""
    base_names, m = _component_order(L)
    if len(components) != m + 1:
        raise AlgebraError(f"expected {m + 1} components, got {len(components)}")
    flat: dict[str, Fraction] = {}
    for j, comp in enumerate(components):
        if set(comp.keys()) != set(base_names):
            raise AlgebraError(f"component {j} must assign exactly the base names")
        for b in base_names:
            flat[graded_name(b, j)] = Fraction(comp[b])
    return flat


def split_point(L: LieAlgebra, point: DualPoint) -> list[dict[str, Fraction]]:
    """Inverse of flatten_point."""
    grading = _require_grading(L)
    check_point(L, point)
    comps: list[dict[str, Fraction]] = [{} for _ in range(grading.depth + 1)]
    for name in L.basis:
        comps[grading.grade_of[name]][grading.base_name_of[name]] = Fraction(point[name])
    return comps


def split_element(L: LieAlgebra, x: Mapping[str, Fraction]) -> list[dict[str, Fraction]]:
    """Split a sparse algebra element over graded names into base components x_0..x_m."""
    grading = _require_grading(L)
    comps: list[dict[str, Fraction]] = [{} for _ in range(grading.depth + 1)]
    for name, c in x.items():
        if name not in grading.grade_of:
            raise AlgebraError(f"'{name}' is not a graded basis name of {L.label}")
        if c:
            comps[grading.grade_of[name]][grading.base_name_of[name]] = Fraction(c)
    return comps


# ---------------------------------------------------------------------------
# coadjoint action
# ---------------------------------------------------------------------------

def ad_star(L: LieAlgebra, x: Mapping[str, Fraction], xi: DualPoint) -> dict[str, Fraction]:
    """Coadjoint action <ad*(x)xi, y> = -<xi, [x, y]> for sparse x, complete xi."""
    vals = check_point(L, xi)
    out = {b: Fraction(0) for b in L.basis}
    for name, c in x.items():
        i = L.index_of(name)
        if not c:
            continue
        for y in range(L.dim):
            if y == i:
                continue
            s = Fraction(0)
            for k, ck in L.bracket(i, y).items():
                s += ck * vals[k]
            if s:
                out[L.basis[y]] -= c * s
    return out


def coadjoint_apply(Lm: LieAlgebra, x: Mapping[str, Fraction],
                    components: TakiffDualPoint) -> list[dict[str, Fraction]]:
    """Componentwise coadjoint action on L<m>*: (ad*(x)xi)_t = sum_i ad*(x_i) xi_{t+i}.

    Works on the base components directly; the base algebra's brackets are read
    off the grade-0 block of Lm.  Must agree with coadjoint_apply_generic,
    which uses Lm's own structure constants.
    """
    grading = _require_grading(Lm)
    m = grading.depth
    if len(components) != m + 1:
        raise AlgebraError(f"expected {m + 1} components, got {len(components)}")
    base = _base_block(Lm)
    xs = split_element(Lm, x)
    out: list[dict[str, Fraction]] = []
    for t in range(m + 1):
        acc = {b: Fraction(0) for b in base.basis}
        for i in range(m + 1 - t):
            if not xs[i]:
                continue
            moved = ad_star(base, xs[i], components[t + i])
            for b, v in moved.items():
                acc[b] += v
        out.append(acc)
    return out


def coadjoint_apply_generic(Lm: LieAlgebra, x: Mapping[str, Fraction],
                            components: TakiffDualPoint) -> list[dict[str, Fraction]]:
    """Structure-constant route: flatten, act on Lm*, split back."""
    flat = flatten_point(Lm, components)
    return split_point(Lm, ad_star(Lm, x, flat))


def _base_block(Lm: LieAlgebra) -> LieAlgebra:
    """The grade-0 subalgebra of a graded algebra, as a plain LieAlgebra."""
    grading = _require_grading(Lm)
    base_names, _ = _component_order(Lm)
    n = len(base_names)
    pos = {graded_name(b, 0): i for i, b in enumerate(base_names)}
    entries: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), coeffs in Lm.brackets.items():
        bi, bj = Lm.basis[i], Lm.basis[j]
        if bi in pos and bj in pos:
            entries[(pos[bi], pos[bj])] = {
                pos[Lm.basis[k]]: c for k, c in coeffs.items()}
    return LieAlgebra.create(f"{Lm.label}:base", base_names, entries)
