"""Loader for the bundled reference spectra."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .model import ModelParams, StateIndex


@dataclass(frozen=True)
class ReferenceCell:
    """One published table cell: a state at one tensor strength."""

    symmetry: str
    state: StateIndex
    tensor_h: float
    label: str
    energies: tuple[float, ...]


@dataclass(frozen=True)
class QuotedEnergy:
    """An in-text quoted energy known not to satisfy the quantization condition."""

    symmetry: str
    state: StateIndex
    tensor_h: float
    energy: float


@dataclass(frozen=True)
class ReferenceData:
    mass: float
    c_sym: float
    alpha: float
    a_shape: float
    cells: tuple[ReferenceCell, ...]
    quoted: tuple[QuotedEnergy, ...]
    quoted_note: str

    def params(self, symmetry: str, tensor_h: float) -> ModelParams:
        return ModelParams(
            mass=self.mass,
            symmetry=symmetry,
            c_sym=self.c_sym,
            tensor_h=tensor_h,
            alpha=self.alpha,
            a_shape=self.a_shape,
        )

    def select(self, symmetry: Optional[str] = None) -> tuple[ReferenceCell, ...]:
        if symmetry is None:
            return self.cells
        return tuple(c for c in self.cells if c.symmetry == symmetry)


def load_reference() -> ReferenceData:
    """Parse data/reference_spectra.json into typed records."""
    raw = json.loads(
        resources.files("dirac_nu").joinpath("data/reference_spectra.json").read_text()
    )
    pars = raw["parameters"]
    cells: list[ReferenceCell] = []
    for symmetry in ("pseudospin", "spin"):
        for entry in raw[symmetry]:
            cells.append(
                ReferenceCell(
                    symmetry=symmetry,
                    state=StateIndex(n=entry["n"], kappa=entry["kappa"]),
                    tensor_h=float(entry["tensor_h"]),
                    label=entry["label"],
                    energies=tuple(float(e) for e in entry["energies"]),
                )
            )
    quoted: list[QuotedEnergy] = []
    block = raw["inconsistent_quoted"]
    for symmetry in ("pseudospin", "spin"):
        for entry in block.get(symmetry, ()):
            quoted.append(
                QuotedEnergy(
                    symmetry=symmetry,
                    state=StateIndex(n=entry["n"], kappa=entry["kappa"]),
                    tensor_h=float(entry["tensor_h"]),
                    energy=float(entry["energy"]),
                )
            )
    return ReferenceData(
        mass=float(pars["mass"]),
        c_sym=float(pars["c_sym"]),
        alpha=float(pars["alpha"]),
        a_shape=float(pars["a_shape"]),
        cells=tuple(cells),
        quoted=tuple(quoted),
        quoted_note=block["note"],
    )
