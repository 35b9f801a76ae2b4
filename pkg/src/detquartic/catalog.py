"""Bundled catalog of example pencils with known (eta, rho, sigma) profiles."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

from .pencil import HermitianPencil


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    pencil: HermitianPencil
    definite_point: Optional[tuple]
    claimed: Optional[tuple]          # (eta, rho, sigma)
    notes: str = ""
    source: str = ""

    @property
    def is_surface(self) -> bool:
        """True for the quartic-surface entries (excludes line fixtures)."""
        return self.claimed is not None


def _parse(d: dict) -> CatalogEntry:
    pencil = HermitianPencil.from_json_dict(d)
    dp = d.get("definite_point")
    claimed = d.get("claimed")
    return CatalogEntry(
        name=d["name"],
        pencil=pencil,
        definite_point=tuple(Fraction(v) for v in dp) if dp else None,
        claimed=(claimed["eta"], claimed["rho"], claimed["sigma"]) if claimed else None,
        notes=d.get("notes", ""),
        source=d.get("source", ""),
    )


def load_catalog() -> list:
    """All bundled entries, sorted by name."""
    root = resources.files("detquartic").joinpath("data/catalog")
    entries = []
    for item in sorted(root.iterdir(), key=lambda p: p.name):
        if item.name.endswith(".json"):
            entries.append(_parse(json.loads(item.read_text())))
    return sorted(entries, key=lambda e: e.name)


def surface_entries() -> list:
    return [e for e in load_catalog() if e.is_surface]


def get_entry(key: str) -> CatalogEntry:
    """Look up by full name or by the bare '(eta,rho,sigma)' suffix."""
    matches = [
        e
        for e in load_catalog()
        if e.name == key or e.name.endswith("/" + key) or e.name.split("/")[-1] == key
    ]
    if not matches:
        raise KeyError(f"no catalog entry matches {key!r}")
    if len(matches) > 1:
        names = ", ".join(e.name for e in matches)
        raise KeyError(f"ambiguous catalog key {key!r}: {names}")
    return matches[0]
