"""Diagnostics: approximation quality, potential shape, tensor sweeps."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import DomainError, SolverError
from .model import ModelParams, StateIndex, centrifugal_approx, eval_potential, eval_tensor, potential_coeffs
from .spectrum import (
    EnergyEquation,
    SolveOptions,
    check_doublet,
    negative_root,
    solve_spectrum,
)

DEFAULT_H_VALUES = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class ApproxReport:
    """Pointwise quality of the exponential 1/r^2 surrogate.

    Two variants are compared: the corrected surrogate with the model's C0
    and the uncorrected one with C0 = 0.  Relative errors are against the
    exact 1/r^2.
    """

    r: NDArray[np.float64]
    exact: NDArray[np.float64]
    approx: NDArray[np.float64]
    rel_err: NDArray[np.float64]
    approx_nocorr: NDArray[np.float64]
    rel_err_nocorr: NDArray[np.float64]
    max_rel_err: float
    r_at_max: float
    max_rel_err_nocorr: float


def approx_report(
    params: ModelParams,
    r_min: float = 1e-3,
    r_max: float = 10.0,
    n_points: int = 2000,
) -> ApproxReport:
    """Evaluate both surrogate variants on a log-spaced grid."""
    if not 0.0 < r_min < r_max:
        raise DomainError(f"need 0 < r_min < r_max, got {r_min!r}, {r_max!r}")
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points!r}")
    r = np.geomspace(r_min, r_max, n_points)
    exact = 1.0 / (r * r)
    approx = np.asarray(centrifugal_approx(params, r))
    nocorr = np.asarray(centrifugal_approx(replace(params, c0=0.0), r))
    rel = np.abs(approx - exact) / exact
    rel0 = np.abs(nocorr - exact) / exact
    i = int(np.argmax(rel))
    return ApproxReport(
        r=r,
        exact=exact,
        approx=approx,
        rel_err=rel,
        approx_nocorr=nocorr,
        rel_err_nocorr=rel0,
        max_rel_err=float(rel[i]),
        r_at_max=float(r[i]),
        max_rel_err_nocorr=float(np.max(rel0)),
    )


@dataclass(frozen=True)
class PotentialProfile:
    """Sampled well and tensor term, with the large-r asymptote."""

    r: NDArray[np.float64]
    v: NDArray[np.float64]
    u: NDArray[np.float64]
    asymptote: float


def potential_profile(params: ModelParams, r: NDArray[np.float64]) -> PotentialProfile:
    """Evaluate V(r) and U(r) on the given radii."""
    r = np.asarray(r, dtype=float)
    return PotentialProfile(
        r=r,
        v=np.asarray(eval_potential(params, r)),
        u=np.asarray(eval_tensor(params.tensor_h, r)),
        asymptote=potential_coeffs(params).v3,
    )


@dataclass(frozen=True)
class SweepRow:
    """One doublet at one tensor strength; error text when a solve fails."""

    tensor_h: float
    label_neg: str
    label_pos: str
    energy_neg: Optional[float]
    energy_pos: Optional[float]
    delta_e: Optional[float]
    error: str


@dataclass(frozen=True)
class SweepResult:
    """Tensor-strength sweep over a set of degenerate doublets."""

    symmetry: str
    h_values: tuple[float, ...]
    rows: tuple[SweepRow, ...]
    directions: tuple[str, ...]


def h_sweep(
    params: ModelParams,
    doublets: Sequence[tuple[StateIndex, StateIndex]],
    h_values: Sequence[float] = DEFAULT_H_VALUES,
    opts: SolveOptions = SolveOptions(),
) -> SweepResult:
    """Track each doublet's negative-root energies across tensor strengths.

    Solver failures (for example an empty window) are recorded in the row
    instead of aborting the sweep.  The direction summary states how each
    member moved between the first and last tensor strength.
    """
    if not doublets:
        raise DomainError("at least one doublet is required")
    if not h_values:
        raise DomainError("at least one tensor strength is required")

    rows: list[SweepRow] = []
    for state_neg, state_pos in doublets:
        check_doublet(params, state_neg, state_pos)
        for h in h_values:
            p = replace(params, tensor_h=float(h))
            label_neg = state_neg.spectroscopic_label(p.symmetry)
            label_pos = state_pos.spectroscopic_label(p.symmetry)
            try:
                e_neg = negative_root(solve_spectrum(EnergyEquation(p, state_neg), opts))
                e_pos = negative_root(solve_spectrum(EnergyEquation(p, state_pos), opts))
                rows.append(
                    SweepRow(
                        tensor_h=float(h),
                        label_neg=label_neg,
                        label_pos=label_pos,
                        energy_neg=e_neg,
                        energy_pos=e_pos,
                        delta_e=e_pos - e_neg,
                        error="",
                    )
                )
            except SolverError as exc:
                rows.append(
                    SweepRow(
                        tensor_h=float(h),
                        label_neg=label_neg,
                        label_pos=label_pos,
                        energy_neg=None,
                        energy_pos=None,
                        delta_e=None,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )

    directions: list[str] = []
    for state_neg, state_pos in doublets:
        pair_rows = [
            row
            for row in rows
            if row.label_neg == state_neg.spectroscopic_label(params.symmetry)
            and row.label_pos == state_pos.spectroscopic_label(params.symmetry)
            and not row.error
        ]
        if len(pair_rows) < 2:
            directions.append(
                f"{pair_rows[0].label_neg if pair_rows else state_neg}: insufficient data"
            )
            continue
        first, last = pair_rows[0], pair_rows[-1]

        def trend(a: float, b: float) -> str:
            if b > a:
                return "up"
            if b < a:
                return "down"
            return "flat"

        directions.append(
            f"{first.label_neg} moves {trend(first.energy_neg, last.energy_neg)}, "
            f"{first.label_pos} moves {trend(first.energy_pos, last.energy_pos)} "
            f"as H grows {first.tensor_h:g} -> {last.tensor_h:g}"
        )

    return SweepResult(
        symmetry=params.symmetry,
        h_values=tuple(float(h) for h in h_values),
        rows=tuple(rows),
        directions=tuple(directions),
    )
