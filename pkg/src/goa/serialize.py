"""Bit-exact JSON/CSV file formats for designs.

The JSON container stores only integers, strings and "num/den" rational
strings, so a load/save round trip is byte identical.  CSV files carry one
run per line as comma-separated levels with no header.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .designs import Design, GeneratorMatrix, Group, GroupedDesign
from .errors import FileFormatError


def fraction_to_str(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def fraction_from_str(text: str) -> Fraction:
    try:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    except Exception as exc:
        raise FileFormatError(f"bad rational {text!r}") from exc


def grouped_to_dict(gd: GroupedDesign) -> dict:
    groups = []
    for grp in gd.groups:
        groups.append(
            {
                "columns": [int(c) for c in grp.columns],
                "claimed_strength": grp.claimed_strength,
                "verified_strength": grp.verified_strength,
                "wlp": list(grp.wlp) if grp.wlp is not None else None,
                "p": fraction_to_str(grp.p) if grp.p is not None else None,
            }
        )
    return {
        "s": gd.design.s,
        "runs": gd.design.runs,
        "cols": gd.design.cols,
        "claimed_t0": gd.claimed_t0,
        "verified_t0": gd.verified_t0,
        "groups": groups,
        "generator": gd.generator.matrix.tolist() if gd.generator is not None else None,
        "matrix": gd.design.matrix.tolist(),
        "origin": gd.design.origin,
    }


def grouped_from_dict(doc: dict) -> GroupedDesign:
    try:
        design = Design(doc["s"], np.array(doc["matrix"], dtype=np.int64), doc["origin"])
        if design.runs != doc["runs"] or design.cols != doc["cols"]:
            raise FileFormatError("matrix shape disagrees with runs/cols header")
        groups = []
        for g in doc["groups"]:
            groups.append(
                Group(
                    columns=[int(c) for c in g["columns"]],
                    claimed_strength=int(g["claimed_strength"]),
                    verified_strength=(
                        int(g["verified_strength"]) if g["verified_strength"] is not None else None
                    ),
                    wlp=tuple(g["wlp"]) if g["wlp"] is not None else None,
                    p=fraction_from_str(g["p"]) if g["p"] is not None else None,
                )
            )
        gen = None
        if doc.get("generator") is not None:
            gen = GeneratorMatrix(doc["s"], np.array(doc["generator"], dtype=np.int64))
        return GroupedDesign(
            design,
            groups,
            claimed_t0=int(doc["claimed_t0"]),
            verified_t0=(int(doc["verified_t0"]) if doc["verified_t0"] is not None else None),
            generator=gen,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"bad design document: {exc}") from exc


def dumps(gd: GroupedDesign) -> str:
    return json.dumps(grouped_to_dict(gd), separators=(",", ":")) + "\n"


def save_json(gd: GroupedDesign, path) -> None:
    Path(path).write_text(dumps(gd))


def load_json(path) -> GroupedDesign:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    return grouped_from_dict(doc)


def save_csv(design: Design, path) -> None:
    lines = [",".join(str(int(x)) for x in row) for row in design.matrix]
    Path(path).write_text("\n".join(lines) + "\n")


def load_csv(path, s: int) -> Design:
    rows = []
    try:
        for line in Path(path).read_text().splitlines():
            if not line.strip():
                continue
            rows.append([int(tok) for tok in line.split(",")])
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise FileFormatError(f"{path}: ragged or empty CSV")
    try:
        return Design(s, np.array(rows, dtype=np.int64), origin="external")
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def load_design_file(path, s: int | None = None) -> GroupedDesign:
    """Load either container; CSV needs the level count supplied."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        if s is None:
            raise FileFormatError("loading CSV requires the level count (--s)")
        return GroupedDesign(load_csv(path, s), [], claimed_t0=0)
    return load_json(path)


def real_to_dict(matrix: np.ndarray, origin: str, int_matrix: np.ndarray | None = None) -> dict:
    doc = {
        "runs": int(matrix.shape[0]),
        "cols": int(matrix.shape[1]),
        "real_matrix": [[float(x) for x in row] for row in matrix],
        "origin": origin,
    }
    if int_matrix is not None:
        doc["int_matrix"] = int_matrix.tolist()
    return doc


def save_real_json(matrix: np.ndarray, origin: str, path,
                   int_matrix: np.ndarray | None = None) -> None:
    doc = real_to_dict(matrix, origin, int_matrix)
    Path(path).write_text(json.dumps(doc, separators=(",", ":")) + "\n")


def save_real_csv(matrix: np.ndarray, path) -> None:
    lines = [",".join(repr(float(x)) for x in row) for row in matrix]
    Path(path).write_text("\n".join(lines) + "\n")
