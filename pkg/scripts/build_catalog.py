#!/usr/bin/env python3
"""Regenerate the bundled example-catalog JSON files.

Each catalog entry is a definite Hermitian pencil together with its published
singularity configuration (eta, rho, sigma) and a definite point.  Entries are
stored as data so transcription fixes do not require code changes.

Run from the repository root:  python3 scripts/build_catalog.py
"""

from __future__ import annotations

import json
import pathlib
import sys

import sympy as sp

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from detquartic.pencil import HermitianPencil  # noqa: E402

X = sp.symbols("x0 x1 x2 x3")
OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "detquartic" / "data" / "catalog"


def parse_pencil(rows):
    """Rows of sympy-parseable linear forms -> four complex coefficient grids."""
    coeffs = [[[0j] * 4 for _ in range(4)] for _ in range(4)]
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            expr = sp.expand(sp.sympify(cell, locals={"I": sp.I, **{s.name: s for s in X}}))
            rem = expr
            for k, xk in enumerate(X):
                c = expr.coeff(xk, 1)
                rem = rem - c * xk
                coeffs[k][i][j] = complex(c)
            if sp.expand(rem) != 0:
                raise ValueError(f"entry ({i},{j}) = {cell!r} is not linear homogeneous")
    return coeffs


def entry_dict(name, rows_or_mats, e, claimed, notes=None, numeric=False):
    if numeric:
        coeffs = [[[complex(v) for v in row] for row in m] for m in rows_or_mats]
    else:
        coeffs = parse_pencil(rows_or_mats)
    d = {
        "name": name,
        "vars": 4,
        "coeffs": [
            [
                [{"re": f"{int(v.real)}", "im": f"{int(v.imag)}"} for v in row]
                for row in m
            ]
            for m in coeffs
        ],
    }
    if e is not None:
        d["definite_point"] = [str(v) for v in e]
    if claimed is not None:
        d["claimed"] = {"eta": claimed[0], "rho": claimed[1], "sigma": claimed[2]}
    d["source"] = "published example catalog"
    if notes:
        d["notes"] = notes
    return d


ENTRIES = []

# --- eta = 0 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.1/(0,0,0)", [
    ["x3", "x0", "x2+I*x1", "0"],
    ["x0", "x3", "x1", "x1-I*x2"],
    ["x2-I*x1", "x1", "2*x0+x3", "x1+x2"],
    ["0", "x1+I*x2", "x1+x2", "x3"],
], [0, 0, 0, 1], (0, 0, 0)))

# --- eta = 1 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.2/(1,1,1)", [
    ["x0+x3", "0", "x2+I*x1", "0"],
    ["0", "2*x0+x3", "x1", "x1-I*x2"],
    ["x2-I*x1", "x1", "x2+x3", "x1+x2"],
    ["0", "x1+I*x2", "x1+x2", "x3"],
], [0, 0, 0, 1], (1, 1, 1)))

ENTRIES.append(entry_dict("4.2/(1,1,0)", [
    ["x3", "x0", "x2+I*x1", "0"],
    ["x0", "x3", "x1", "x1-I*x2"],
    ["x2-I*x1", "x1", "x2+x3", "x1+x2"],
    ["0", "x1+I*x2", "x1+x2", "x3"],
], [0, 0, 0, 1], (1, 1, 0)))

# --- eta = 2 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.3/(2,2,2)", [
    ["x0+x1+x3", "0", "x2+I*x1", "0"],
    ["0", "2*x0+x1+x3", "x1", "x1-I*x2"],
    ["x2-I*x1", "x1", "2*x1+x3", "x1+x2"],
    ["0", "x1+I*x2", "x1+x2", "x1+x3"],
], [0, 0, 0, 1], (2, 2, 2)))

ENTRIES.append(entry_dict("4.3/(2,2,1)", [
    ["x1+x3", "x0", "x2+I*x1", "0"],
    ["x0", "x1+x3", "x1", "x1-I*x2"],
    ["x2-I*x1", "x1", "2*x1+x3", "x1+x2"],
    ["0", "x1+I*x2", "x1+x2", "x1+x3"],
], [0, 0, 0, 1], (2, 2, 1)))

ENTRIES.append(entry_dict("4.3/(2,2,0)", [
    ["x3", "x0", "x2", "x1"],
    ["x0", "x3", "0", "-I*x2"],
    ["x2", "0", "x3", "x2+I*x1"],
    ["x1", "I*x2", "x2-I*x1", "x3"],
], [0, 0, 0, 1], (2, 2, 0)))

ENTRIES.append(entry_dict("4.3/(2,0,0)", [
    ["2*x3", "x2", "x2+x3", "x0+I*x1"],
    ["x2", "x3", "x0+I*x1", "0"],
    ["x2+x3", "x0-I*x1", "x2+x3", "x2"],
    ["x0-I*x1", "0", "x2", "x2+x3"],
], [0, 0, 0, 1], (2, 0, 0)))

# --- eta = 3 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.4/(3,3,3)", [
    ["x0+x1+x2+x3", "x1+x2", "-x1+x2+I*x0", "I*x2"],
    ["x1+x2", "x0+2*x1+2*x2+x3", "x0-x1+x2", "x0+x1+x2"],
    ["-x1+x2-I*x0", "x0-x1+x2", "2*x0+x1+x2+x3", "x0+I*x2"],
    ["-I*x2", "x0+x1+x2", "x0-I*x2", "x0+x1+3*x2+x3"],
], [0, 0, 0, 1], (3, 3, 3)))

ENTRIES.append(entry_dict("4.4/(3,3,2)", [
    ["x0+x2+x3", "x0", "x0", "0"],
    ["x0", "2*x0+2*x2+x3", "x0", "x0-I*x1"],
    ["x0", "x0", "x0+x3", "x1"],
    ["0", "x0+I*x1", "x1", "x0+x3"],
], [0, 0, 0, 1], (3, 3, 2)))

ENTRIES.append(entry_dict("4.4/(3,3,1)", [
    ["x2+x3", "x0", "I*x2", "0"],
    ["x0", "x2+x3", "x2", "x2-I*x1"],
    ["-I*x2", "x2", "2*x2+x3", "x1+x2"],
    ["0", "x2+I*x1", "x1+x2", "x2+x3"],
], [0, 0, 0, 1], (3, 3, 1)))

ENTRIES.append(entry_dict("4.4/(3,3,0)", [
    ["x3", "x0", "x2", "0"],
    ["x0", "x3", "I*x2", "-I*x1"],
    ["x2", "-I*x2", "x2+x3", "x1"],
    ["0", "I*x1", "x1", "x3"],
], [0, 0, 0, 1], (3, 3, 0)))

ENTRIES.append(entry_dict("4.4/(3,1,1)", [
    ["x2+2*x3", "0", "x3+I*x2", "x0+I*x1"],
    ["0", "x2+x3", "x0+x2+I*x1", "x2"],
    ["x3-I*x2", "x0+x2-I*x1", "2*x2+x3", "x2"],
    ["x0-I*x1", "x2", "x2", "x2+x3"],
], [0, 0, 0, 1], (3, 1, 1)))

ENTRIES.append(entry_dict("4.4/(3,1,0)", [
    ["2*x3", "0", "x3", "x0+x2+I*x1"],
    ["0", "x3", "x0+I*x1", "x2"],
    ["x3", "x0-I*x1", "x3", "x2"],
    ["x0+x2-I*x1", "x2", "x2", "x3"],
], [0, 0, 0, 1], (3, 1, 0)))

# --- eta = 4 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.5/(4,4,4)", [
    [[1, 9, 24, 18], [9, -23, 0, -30], [24, 0, -36, 36], [18, -30, 36, 0]],
    [[1, 0, -3, 0], [0, 4, 0, 6], [-3, 0, 9, 0], [0, 6, 0, 9]],
    [[31, -9, -12 + 36j, -18], [-9, 43, 36, 42], [-12 - 36j, 36, 72, 0], [-18, 42, 0, 0]],
    [[2, 3, 6, 3j], [3, 2, 3, -3], [6, 3, -6, 3j], [-3j, -3, -3j, 0]],
], [0, 12, 0, 1], (4, 4, 4), numeric=True))

ENTRIES.append(entry_dict("4.5/(4,4,3)", [
    [[26, 0, 12, 18], [0, -4, 0, -6], [12, 0, -9, 9], [18, -6, 9, 0]],
    [[1, 0, -3, 0], [0, 4, 0, 6], [-3, 0, 9, 0], [0, 6, 0, 9]],
    [[-2, 0, -1 + 1j, -2], [0, 1, 1, 1], [-1 - 1j, 1, 2, 0], [-2, 1, 0, 0]],
    [[2, 3, 6, 3j], [3, 2, 3, -3], [6, 3, -6, 3j], [-3j, -3, -3j, 0]],
], [0, 4, 0, 3], (4, 4, 3), numeric=True,
    notes="published definite point misses a separator; read as [0:4:0:3] and verified"))

ENTRIES.append(entry_dict("4.5/(4,4,2)", [
    ["x0+x3", "x0", "x2", "0"],
    ["x0", "2*x0+x3", "I*x2", "-I*x1"],
    ["x2", "-I*x2", "x2+x3", "x1"],
    ["0", "I*x1", "x1", "x3"],
], [0, 0, 0, 1], (4, 4, 2)))

ENTRIES.append(entry_dict("4.5/(4,4,1)", [
    ["x0+2*x2-5*x3", "-x0+x2-2*x3", "x0+x3", "2*x0+I*x3"],
    ["-x0+x2-2*x3", "2*x1-2*x2+8*x3", "2*x1-2*x2+7*x3", "x1-x2+4*x3"],
    ["x0+x3", "2*x1-2*x2+7*x3", "2*x1-2*x2+7*x3", "x1+I*x3"],
    ["2*x0-I*x3", "x1-x2+4*x3", "x1-I*x3", "x2"],
], [0, 5, 32, 10], (4, 4, 1)))

ENTRIES.append(entry_dict("4.5/(4,4,0)", [
    ["x3", "x0", "x1+I*x2", "0"],
    ["x0", "x3", "0", "-I*x1"],
    ["x1-I*x2", "0", "x3", "x1+I*x2"],
    ["0", "I*x1", "x1-I*x2", "x3"],
], [0, 0, 0, 1], (4, 4, 0)))

ENTRIES.append(entry_dict("4.5/(4,2,2)", [
    ["-77*x1+x2", "27*x1", "-12*x1-3*x2", "x0+81*x1+I*x3"],
    ["27*x1", "-74*x1+4*x2", "x0+I*x3", "78*x1+6*x2"],
    ["-12*x1-3*x2", "x0-I*x3", "-45*x1+9*x2", "54*x1"],
    ["x0+81*x1-I*x3", "78*x1+6*x2", "54*x1", "9*x2"],
], [0, -1, 18, 1], (4, 2, 2)))

ENTRIES.append(entry_dict("4.5/(4,2,1)", [
    ["26*x1+x2", "0", "12*x1-3*x2", "x0+18*x1+I*x3"],
    ["0", "-4*x1+4*x2", "x0+I*x3", "-6*x1+6*x2"],
    ["12*x1-3*x2", "x0-I*x3", "-9*x1+9*x2", "9*x1"],
    ["x0+18*x1-I*x3", "-6*x1+6*x2", "9*x1", "9*x2"],
], [-45, 1, 201, 9], (4, 2, 1)))

ENTRIES.append(entry_dict("4.5/(4,0,0)", [
    ["2*x3", "x2", "x2+x3", "x0+I*x1"],
    ["x2", "x3", "x0+I*x1", "0"],
    ["x2+x3", "x0-I*x1", "x2+x3", "0"],
    ["x0-I*x1", "0", "0", "x3"],
], [0, 0, 0, 1], (4, 0, 0)))

# --- eta = 5 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.6/(5,5,3)", [
    ["x0+x3", "I*x0", "x2", "0"],
    ["-I*x0", "x0+x3", "I*x2", "-I*x1"],
    ["x2", "-I*x2", "x2+x3", "x1"],
    ["0", "I*x1", "x1", "x3"],
], [0, 0, 0, 1], (5, 5, 3)))

ENTRIES.append(entry_dict("4.6/(5,5,2)", [
    ["x0+x2+x3", "x0+x2", "x0-x2", "0"],
    ["x0+x2", "2*x0+2*x2+x3", "x0-x2", "x0+x2-I*x1"],
    ["x0-x2", "x0-x2", "x0+x2+x3", "x1"],
    ["0", "x0+x2+I*x1", "x1", "x0+x2+x3"],
], [0, 0, 0, 1], (5, 5, 2)))

ENTRIES.append(entry_dict("4.6/(5,5,1)", [
    ["x0+9*x1-x2-x3", "-x0+3*x1+x2-x3", "x0+I*x3", "2*x0"],
    ["-x0+3*x1+x2-x3", "x3", "x3", "x3"],
    ["x0-I*x3", "x3", "x1-x2+2*x3", "4*x1"],
    ["2*x0", "x3", "4*x1", "4*x2"],
], [0, 21, 22, 80], (5, 5, 1)))

# --- eta = 6 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.7/(6,6,4)", [
    ["x3", "x0", "x1", "0"],
    ["x0", "x3", "0", "-I*x1"],
    ["x1", "0", "x2+x3", "x1+I*x2"],
    ["0", "I*x1", "x1-I*x2", "x3"],
], [0, 0, 0, 1], (6, 6, 4)))

ENTRIES.append(entry_dict("4.7/(6,6,3)", [
    ["-x2+x3", "x0", "x1", "I*x2"],
    ["x0", "x0-x2+x3", "x1", "x0"],
    ["x1", "x1", "-x2+x3", "I*x2"],
    ["-I*x2", "x0", "-I*x2", "x3"],
], [0, 0, 1, 3], (6, 6, 3)))

# --- eta = 7 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.8/(7,7,5)", [
    ["x0+x3", "0", "x2", "0"],
    ["0", "x0+x3", "I*x2", "-I*x1"],
    ["x2", "-I*x2", "x2+x3", "x1"],
    ["0", "I*x1", "x1", "x3"],
], [0, 0, 0, 1], (7, 7, 5)))

ENTRIES.append(entry_dict("4.8/(7,7,4)", [
    ["-x2+x3", "x0-I*(x0+x2-x3)", "x1", "-x0+x3"],
    ["x0+I*(x0+x2-x3)", "-x0-x2+2*x3", "x1", "x0+I*(x0+x2-x3)"],
    ["x1", "x1", "x0", "x2"],
    ["-x0+x3", "x0-I*(x0+x2-x3)", "x2", "x3"],
], [1, 0, 0, 2], (7, 7, 4),
    notes="published (1,2) entry has a stray factor in the imaginary part; "
          "restored as the conjugate of the (2,1) entry"))

# --- eta = 8 ----------------------------------------------------------------
ENTRIES.append(entry_dict("4.9/(8,8,5)", [
    ["-x2+x3", "x0-I*(x0+x2-x3)", "x1", "-x0+x3"],
    ["x0+I*(x0+x2-x3)", "2*x0", "x1", "x0+I*(x0+x2-x3)"],
    ["x1", "x1", "x0", "x2"],
    ["-x0+x3", "x0-I*(x0+x2-x3)", "x2", "x3"],
], [1, 0, 0, 2], (8, 8, 5)))

ENTRIES.append(entry_dict("4.9/(8,8,4)", [
    ["2*x0+x3", "I*x0", "x2", "0"],
    ["-I*x0", "x0+x3", "I*x2", "-I*x1"],
    ["x2", "-I*x2", "x2+x3", "x1"],
    ["0", "I*x1", "x1", "x3"],
], [0, 0, 0, 1], (8, 8, 4)))

ENTRIES.append(entry_dict("4.9/(8,6,4)", [
    ["x0+x3", "0", "x2", "0"],
    ["0", "2*x0+x3", "I*x2", "-I*x1"],
    ["x2", "-I*x2", "x2+x3", "x1"],
    ["0", "I*x1", "x1", "x3"],
], [0, 0, 0, 1], (8, 6, 4)))

# --- the two-variable rank fixture -----------------------------------------
# The published display of this pencil is internally inconsistent (its
# determinant is x0^2*x1*(3*x1 - 4*x0), not identically zero, so the stated
# rank pattern fails).  The version below is the minimal repair (three cell
# edits) that restores the stated behaviour: rank 2 at [1:0] and [0:1],
# rank 3 at every other point of the line.
RANK_EXAMPLE = entry_dict("line/(rank2-pair)", [
    ["0", "x0-I*x0", "x1", "0"],
    ["x0+I*x0", "x0", "x1", "x0+I*x0"],
    ["x1", "x1", "x1", "x1"],
    ["0", "x0-I*x0", "x1", "0"],
], None, None,
    notes="two-variable pencil; rank 2 at [1:0] and [0:1], rank 3 elsewhere; "
          "repaired from a corrupted published display (see script comment)")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    names = set()
    for d in ENTRIES + [RANK_EXAMPLE]:
        assert d["name"] not in names, d["name"]
        names.add(d["name"])
        # invariant check on construction
        p = HermitianPencil.from_json_dict(d)
        if "definite_point" in d:
            from fractions import Fraction
            e = [Fraction(v) for v in d["definite_point"]]
            verdict = p.is_definite_at(e)
            if not verdict.is_definite:
                raise SystemExit(f"{d['name']}: not definite at stated point ({verdict})")
        fname = d["name"].replace("/", "_").replace("(", "").replace(")", "").replace(",", "-")
        path = OUT / f"{fname}.json"
        path.write_text(json.dumps(d, indent=2, sort_keys=True) + "\n")
        print("wrote", path.name)
    print(f"{len(ENTRIES)} catalog entries + 1 rank fixture")


if __name__ == "__main__":
    main()
