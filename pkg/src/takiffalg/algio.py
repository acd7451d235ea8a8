"""JSON file formats for algebras and invariant families.

Algebra files:

    {
      "label": "sl2",
      "basis": ["e", "h", "f"],
      "brackets": [{"pair": [0, 1], "coeffs": {"e": "-2"}}, ...],
      "invariants": ["h^2 + 4*e*f"],
      "flags": {"no_proper_semiinvariants": true},
      "grading": {...}            # only on constructed truncations
    }

Pairs are 0-based indices into the basis; coefficients are keyed by target
basis name with rationals as "p/q" strings.  All emitted JSON is sorted and
newline-terminated so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .liealg import AlgebraFormatError, InvariantSet, LieAlgebra
from .polyring import parse_poly
from .raistauvel import InvariantFamily
from .takiff import TakiffGrading

__all__ = [
    "algebra_to_dict",
    "algebra_from_dict",
    "family_to_dict",
    "dump_json",
    "load_algebra_file",
    "write_algebra_file",
]


def _frac_str(x: Fraction) -> str:
    return str(x)


def algebra_to_dict(L: LieAlgebra, invariants: InvariantSet | None = None,
                    flags: Mapping[str, bool] | None = None) -> dict:
    brackets = []
    for (i, j) in sorted(L.brackets):
        coeffs = {L.basis[k]: _frac_str(c)
                  for k, c in sorted(L.brackets[(i, j)].items())}
        brackets.append({"pair": [i, j], "coeffs": coeffs})
    out = {
        "label": L.label,
        "basis": list(L.basis),
        "brackets": brackets,
        "invariants": [str(f) for f in invariants.polys] if invariants else [],
        "flags": dict(flags) if flags else {},
    }
    if isinstance(L.grading, TakiffGrading):
        out["grading"] = L.grading.to_dict()
    return out


def algebra_from_dict(d: Mapping) -> tuple[LieAlgebra, InvariantSet, dict]:
    """Parse an algebra file; raises AlgebraFormatError on malformed data."""
    try:
        label = d["label"]
        basis = list(d["basis"])
        raw_brackets = d["brackets"]
    except (KeyError, TypeError) as e:
        raise AlgebraFormatError(f"missing or malformed field: {e}") from e
    if not isinstance(label, str) or not basis or \
            not all(isinstance(b, str) for b in basis):
        raise AlgebraFormatError("'label' must be a string and 'basis' a list of names")
    name_idx = {b: i for i, b in enumerate(basis)}
    entries: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in raw_brackets:
        try:
            i, j = (int(x) for x in entry["pair"])
            coeffs = entry["coeffs"]
        except (KeyError, TypeError, ValueError) as e:
            raise AlgebraFormatError(f"malformed bracket entry {entry!r}") from e
        vec: dict[int, Fraction] = {}
        for name, val in coeffs.items():
            if name not in name_idx:
                raise AlgebraFormatError(f"bracket coefficient targets unknown name '{name}'")
            try:
                vec[name_idx[name]] = Fraction(str(val))
            except (ValueError, ZeroDivisionError) as e:
                raise AlgebraFormatError(f"bad rational '{val}' for '{name}'") from e
        if (i, j) in entries or (j, i) in entries:
            raise AlgebraFormatError(f"duplicate bracket entry for pair ({i}, {j})")
        entries[(i, j)] = vec
    grading = None
    if "grading" in d:
        try:
            grading = TakiffGrading.from_dict(d["grading"])
        except (KeyError, TypeError, ValueError) as e:
            raise AlgebraFormatError(f"malformed grading block: {e}") from e
    L = LieAlgebra.create(label, basis, entries, grading=grading)
    polys = tuple(parse_poly(s, L.basis) for s in d.get("invariants", []))
    fs = InvariantSet(algebra=L, polys=polys)
    flags = dict(d.get("flags", {}))
    return L, fs, flags


def family_to_dict(fam: InvariantFamily) -> dict:
    return {
        "label": fam.takiff_algebra.label,
        "m": fam.depth,
        "base": {
            "label": fam.base.algebra.label,
            "invariants": [str(f) for f in fam.base.polys],
            "degrees": list(fam.base.degrees()),
        },
        "family": [
            {"i": i, "j": j, "degree": F.degree(), "poly": str(F)}
            for i, j, F in fam.members()
        ],
    }


def dump_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def load_algebra_file(path: str | Path) -> tuple[LieAlgebra, InvariantSet, dict]:
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise AlgebraFormatError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(d, dict):
        raise AlgebraFormatError(f"{path} must contain a JSON object")
    return algebra_from_dict(d)


def write_algebra_file(path: str | Path, L: LieAlgebra,
                       invariants: InvariantSet | None = None,
                       flags: Mapping[str, bool] | None = None) -> None:
    dump_json(path, algebra_to_dict(L, invariants, flags))
