"""Command-line interface.

Subcommands:

* ``solve``         energies of configured states
* ``table``         reproduce the bundled reference spectra with deviations
* ``wavefunction``  sample the spinor components of one state
* ``analyze``       approximation quality, potential profile, or tensor sweep

Configuration comes from (in increasing precedence) built-in defaults, a
JSON config file (``--config`` or the PSEUDOSPIN_CONFIG environment
variable), and command-line flags.  Unknown config keys are rejected by
name.  Output is CSV or JSON (``--format``), written to stdout or
``--out``; floats carry 12 significant digits and runs are
byte-deterministic.

Exit codes: 0 success, 2 usage or configuration error, 3 solver failure
(partial results are still written when possible).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Any, Optional, Sequence

import numpy as np

from .analysis import DEFAULT_H_VALUES, approx_report, h_sweep, potential_profile
from .errors import ConfigError, DomainError, SolverError
from .model import PSEUDOSPIN, SPIN, ModelParams, StateIndex
from .refdata import load_reference
from .spectrum import (
    NEGATIVE,
    POSITIVE,
    EnergyEquation,
    SolveOptions,
    solve_spectrum,
)
from .wavefn import (
    DECAYING,
    TERMINATING,
    default_grid,
    pseudospin_components,
    spin_limit_components,
)

_TABLE_ALIASES = {
    "pseudospin": PSEUDOSPIN,
    "spin": SPIN,
    # legacy spellings with the table number attached
    "pseudospin2": PSEUDOSPIN,
    "spin3": SPIN,
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration shared by all subcommands."""

    mass: float = 5.0
    symmetry: str = PSEUDOSPIN
    c_sym: float = 0.0
    tensor_h: float = 0.0
    alpha: float = 0.6
    a_shape: float = 5.0
    c0: float = 1.0 / 12.0
    strict_domain: bool = True
    assembly: Optional[str] = None
    states: tuple[tuple[int, int], ...] = ()
    doublets: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()
    h_values: tuple[float, ...] = DEFAULT_H_VALUES
    grid_points: int = 20001
    bisect_tol: float = 1e-12
    margin: Optional[float] = None
    branch: str = DECAYING
    wf_points: int = 2000
    r_min: float = 1e-4
    approx_r_min: float = 1e-3
    approx_r_max: float = 10.0
    approx_points: int = 2000
    profile_r_min: float = 1e-2
    profile_r_max: float = 10.0
    profile_points: int = 500
    format: str = "json"
    out: Optional[str] = None

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        for key in data:
            if key not in known:
                raise ConfigError(f"unknown config key: {key!r}")
        coerced = dict(data)
        if "states" in coerced:
            coerced["states"] = _coerce_states(coerced["states"])
        if "doublets" in coerced:
            coerced["doublets"] = _coerce_doublets(coerced["doublets"])
        if "h_values" in coerced:
            coerced["h_values"] = tuple(float(h) for h in coerced["h_values"])
        return cls(**coerced)


def _coerce_state(entry: Any) -> tuple[int, int]:
    if isinstance(entry, dict):
        try:
            return int(entry["n"]), int(entry["kappa"])
        except KeyError as exc:
            raise ConfigError(f"state entry missing key {exc}") from None
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return int(entry[0]), int(entry[1])
    raise ConfigError(f"cannot parse state entry {entry!r}")


def _coerce_states(raw: Any) -> tuple[tuple[int, int], ...]:
    if not isinstance(raw, (list, tuple)):
        raise ConfigError(f"states must be a list, got {raw!r}")
    return tuple(_coerce_state(e) for e in raw)


def _coerce_doublets(raw: Any) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    if not isinstance(raw, (list, tuple)):
        raise ConfigError(f"doublets must be a list, got {raw!r}")
    out = []
    for pair in raw:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ConfigError(f"doublet entry must pair two states, got {pair!r}")
        out.append((_coerce_state(pair[0]), _coerce_state(pair[1])))
    return tuple(out)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _jnum(x: Optional[float]) -> Optional[float]:
    if x is None:
        return None
    return float(format(float(x), ".12g"))


def _model_params(cfg: RunConfig) -> ModelParams:
    return ModelParams(
        mass=cfg.mass,
        symmetry=cfg.symmetry,
        c_sym=cfg.c_sym,
        tensor_h=cfg.tensor_h,
        alpha=cfg.alpha,
        a_shape=cfg.a_shape,
        c0=cfg.c0,
        strict_domain=cfg.strict_domain,
    )


def _solve_options(cfg: RunConfig) -> SolveOptions:
    return SolveOptions(
        grid_points=cfg.grid_points,
        bisect_tol=cfg.bisect_tol,
        margin=cfg.margin,
    )


def _params_payload(cfg: RunConfig, extra: Optional[dict[str, Any]] = None) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "mass": _jnum(cfg.mass),
        "symmetry": cfg.symmetry,
        "c_sym": _jnum(cfg.c_sym),
        "tensor_h": _jnum(cfg.tensor_h),
        "alpha": _jnum(cfg.alpha),
        "a_shape": _jnum(cfg.a_shape),
        "c0": _jnum(cfg.c0),
        "strict_domain": cfg.strict_domain,
        "assembly": cfg.assembly,
    }
    if extra:
        payload.update(extra)
    return payload


def _write_output(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(
    cfg: RunConfig,
    columns: Sequence[str],
    rows: Sequence[Sequence[str]],
    notes: Sequence[str],
    extra_params: Optional[dict[str, Any]] = None,
) -> str:
    params = _params_payload(cfg, extra_params)
    items = " ".join(f"{k}={v}" for k, v in params.items())
    lines = [f"# params: {items}"]
    lines.extend(f"# {note}" for note in notes)
    lines.append(",".join(columns))
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(
    cfg: RunConfig,
    records: Sequence[dict[str, Any]],
    notes: Sequence[str],
    extra_params: Optional[dict[str, Any]] = None,
) -> str:
    payload: dict[str, Any] = {
        "params": _params_payload(cfg, extra_params),
        "records": list(records),
    }
    if notes:
        payload["notes"] = list(notes)
    return json.dumps(payload, indent=2) + "\n"


def _opt(value: Optional[float]) -> str:
    return "" if value is None else _fmt(value)


def cmd_solve(cfg: RunConfig) -> int:
    """Solve every configured state; partial output plus exit 3 on failure."""
    if not cfg.states:
        raise ConfigError("no states configured; pass --n/--kappa or a states list")
    params = _model_params(cfg)
    opts = _solve_options(cfg)

    records: list[dict[str, Any]] = []
    failed = False
    for n, kappa in cfg.states:
        base: dict[str, Any] = {"n": n, "kappa": kappa, "H": _jnum(cfg.tensor_h)}
        try:
            state = StateIndex(n=n, kappa=kappa)
            eq = EnergyEquation(params, state, cfg.assembly)
            result = solve_spectrum(eq, opts)
            selected = result.selected
            record = dict(base)
            record["Lambda_or_Eta"] = _jnum(eq.q)
            record["spectroscopic_label"] = state.spectroscopic_label(params.symmetry)
            record["E_selected"] = _jnum(selected.energy) if selected else None
            record["E_all_real_roots"] = [_jnum(r.energy) for r in result.roots]
            record["residual"] = _jnum(selected.residual) if selected else None
            if result.selection_note:
                record["selection_note"] = result.selection_note
            records.append(record)
        except SolverError as exc:
            failed = True
            record = dict(base)
            record["error"] = f"{type(exc).__name__}: {exc}"
            records.append(record)

    if cfg.format == "csv":
        columns = [
            "n", "kappa", "H", "Lambda_or_Eta", "spectroscopic_label",
            "E_selected", "E_all_real_roots", "residual", "error",
        ]
        rows = []
        for rec in records:
            rows.append([
                str(rec["n"]),
                str(rec["kappa"]),
                _fmt(rec["H"]),
                _opt(rec.get("Lambda_or_Eta")),
                rec.get("spectroscopic_label", ""),
                _opt(rec.get("E_selected")),
                ";".join(_fmt(e) for e in rec.get("E_all_real_roots", [])),
                _opt(rec.get("residual")),
                rec.get("error", ""),
            ])
        text = _csv_text(cfg, columns, rows, [])
    else:
        text = _json_text(cfg, records, [])
    _write_output(cfg, text)
    return 3 if failed else 0


def cmd_table(cfg: RunConfig, which: str) -> int:
    """Recompute one reference table and report deviations.

    Reference cells list the negative root first and the positive root
    second when it exists; each printed value is matched to the computed
    root of the same sign class.  A missing computed counterpart leaves
    an em-dash in the deviation column and flips the exit code to 3.
    """
    symmetry = _TABLE_ALIASES.get(which)
    if symmetry is None:
        raise ConfigError(f"unknown table {which!r}; choose from {sorted(_TABLE_ALIASES)}")
    data = load_reference()

    records: list[dict[str, Any]] = []
    notes: list[str] = []
    failed = False
    for cell in data.select(symmetry):
        params = replace(
            data.params(symmetry, cell.tensor_h), strict_domain=cfg.strict_domain
        )
        try:
            eq = EnergyEquation(params, cell.state, cfg.assembly)
            result = solve_spectrum(eq, _solve_options(cfg))
            negatives = [r.energy for r in result.roots if r.sign_class == NEGATIVE]
            positives = [r.energy for r in result.roots if r.sign_class == POSITIVE]
        except SolverError as exc:
            failed = True
            for reference in cell.energies:
                records.append({
                    "n": cell.state.n,
                    "kappa": cell.state.kappa,
                    "H": _jnum(cell.tensor_h),
                    "label": cell.label,
                    "sign": NEGATIVE if reference < 0 else POSITIVE,
                    "E_reference": _jnum(reference),
                    "E_computed": None,
                    "deviation": None,
                    "error": f"{type(exc).__name__}: {exc}",
                })
            continue
        for reference in cell.energies:
            sign = NEGATIVE if reference < 0 else POSITIVE
            pool = negatives if sign == NEGATIVE else positives
            computed = min(pool) if pool else None
            if computed is None:
                failed = True
            records.append({
                "n": cell.state.n,
                "kappa": cell.state.kappa,
                "H": _jnum(cell.tensor_h),
                "label": cell.label,
                "sign": sign,
                "E_reference": _jnum(reference),
                "E_computed": _jnum(computed) if computed is not None else None,
                "deviation": _jnum(computed - reference) if computed is not None else None,
            })
        extra_neg = len(negatives) - sum(1 for e in cell.energies if e < 0)
        extra_pos = len(positives) - sum(1 for e in cell.energies if e > 0)
        if extra_neg > 0 or extra_pos > 0:
            notes.append(
                f"state n={cell.state.n} kappa={cell.state.kappa} H={cell.tensor_h:g}: "
                f"computed roots without reference counterpart "
                f"(negative: {extra_neg}, positive: {extra_pos})"
            )

    quoted = [q for q in data.quoted if q.symmetry == symmetry]
    if quoted:
        notes.append(data.quoted_note)
        for q in quoted:
            notes.append(
                f"quoted (not matched): n={q.state.n} kappa={q.state.kappa} "
                f"H={q.tensor_h:g} E={_fmt(q.energy)}"
            )

    extra = {"table_symmetry": symmetry, "reference_assembly": "reference"}
    if cfg.format == "csv":
        columns = ["n", "kappa", "H", "label", "sign", "E_reference", "E_computed", "deviation"]
        rows = []
        for rec in records:
            rows.append([
                str(rec["n"]),
                str(rec["kappa"]),
                _fmt(rec["H"]),
                rec["label"],
                rec["sign"],
                _fmt(rec["E_reference"]),
                _opt(rec.get("E_computed")),
                _fmt(rec["deviation"]) if rec.get("deviation") is not None else "—",
            ])
        text = _csv_text(cfg, columns, rows, notes, extra)
    else:
        text = _json_text(cfg, records, notes, extra)
    _write_output(cfg, text)
    return 3 if failed else 0


def cmd_wavefunction(cfg: RunConfig) -> int:
    """Sample the spinor pair of exactly one configured state."""
    if len(cfg.states) != 1:
        raise ConfigError(
            f"wavefunction needs exactly one state, got {len(cfg.states)}"
        )
    if cfg.branch not in (DECAYING, TERMINATING):
        raise ConfigError(f"unknown branch {cfg.branch!r}")
    params = _model_params(cfg)
    n, kappa = cfg.states[0]
    state = StateIndex(n=n, kappa=kappa)
    eq = EnergyEquation(params, state, cfg.assembly)
    try:
        result = solve_spectrum(eq, _solve_options(cfg))
        if result.selected is None:
            raise SolverError(
                f"no physical root for state (n={n}, kappa={kappa}): {result.selection_note}"
            )
        energy = result.selected.energy
        grid = default_grid(eq, energy, n_points=cfg.wf_points, r_min=cfg.r_min)
        if params.symmetry == PSEUDOSPIN:
            table = pseudospin_components(eq, energy, grid, cfg.branch)
        else:
            table = spin_limit_components(eq, energy, grid, cfg.branch)
    except SolverError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 3

    meta = {
        "n": n,
        "kappa": kappa,
        "branch": table.branch,
        "E": _jnum(table.energy),
        "norm_constant": _jnum(table.norm_constant),
        "node_count": table.node_count,
        "residual_norm": _jnum(table.residual_norm),
    }
    if cfg.format == "csv":
        params_d = _params_payload(cfg, {"n": n, "kappa": kappa, "branch": table.branch})
        items = " ".join(f"{k}={v}" for k, v in params_d.items())
        lines = [
            f"# params: {items}",
            f"# E = {_fmt(table.energy)}",
            f"# norm_constant = {_fmt(table.norm_constant)}",
            f"# node_count = {table.node_count}",
            f"# residual_norm = {_fmt(table.residual_norm)}",
            "r,G,F",
        ]
        for r, g, f in zip(table.r, table.g, table.f):
            lines.append(f"{_fmt(r)},{_fmt(g)},{_fmt(f)}")
        text = "\n".join(lines) + "\n"
    else:
        records = [
            {"r": _jnum(r), "G": _jnum(g), "F": _jnum(f)}
            for r, g, f in zip(table.r, table.g, table.f)
        ]
        text = _json_text(cfg, records, [], meta)
    _write_output(cfg, text)
    return 0


def _default_doublets(symmetry: str) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    if symmetry == PSEUDOSPIN:
        return (((1, -1), (1, 2)),)
    return (((0, -2), (0, 1)),)


def cmd_analyze(cfg: RunConfig, which: str) -> int:
    """Approximation report, potential profile, or tensor-strength sweep."""
    if which == "approx":
        params = _model_params(cfg)
        report = approx_report(params, cfg.approx_r_min, cfg.approx_r_max, cfg.approx_points)
        notes = [
            f"max_rel_err = {_fmt(report.max_rel_err)} at r = {_fmt(report.r_at_max)}",
            f"max_rel_err with c0 = 0: {_fmt(report.max_rel_err_nocorr)}",
        ]
        if cfg.format == "csv":
            rows = [
                [_fmt(r), _fmt(e), _fmt(a), _fmt(d)]
                for r, e, a, d in zip(report.r, report.exact, report.approx, report.rel_err)
            ]
            text = _csv_text(cfg, ["r", "exact", "approx", "rel_err"], rows, notes)
        else:
            records = [
                {"r": _jnum(r), "exact": _jnum(e), "approx": _jnum(a), "rel_err": _jnum(d)}
                for r, e, a, d in zip(report.r, report.exact, report.approx, report.rel_err)
            ]
            text = _json_text(cfg, records, notes)
        _write_output(cfg, text)
        return 0

    if which == "potential":
        params = _model_params(cfg)
        r = np.geomspace(cfg.profile_r_min, cfg.profile_r_max, cfg.profile_points)
        profile = potential_profile(params, r)
        notes = [f"asymptote V3 = {_fmt(profile.asymptote)}"]
        if cfg.format == "csv":
            rows = [
                [_fmt(rr), _fmt(v), _fmt(u)]
                for rr, v, u in zip(profile.r, profile.v, profile.u)
            ]
            text = _csv_text(cfg, ["r", "V", "U"], rows, notes)
        else:
            records = [
                {"r": _jnum(rr), "V": _jnum(v), "U": _jnum(u)}
                for rr, v, u in zip(profile.r, profile.v, profile.u)
            ]
            text = _json_text(cfg, records, notes)
        _write_output(cfg, text)
        return 0

    if which == "sweep":
        params = _model_params(cfg)
        pairs = cfg.doublets or _default_doublets(params.symmetry)
        doublets = [
            (StateIndex(*neg), StateIndex(*pos)) for neg, pos in pairs
        ]
        sweep = h_sweep(params, doublets, cfg.h_values, _solve_options(cfg))
        failed = any(row.error for row in sweep.rows)
        records: list[dict[str, Any]] = []
        for row in sweep.rows:
            for label, energy in ((row.label_neg, row.energy_neg), (row.label_pos, row.energy_pos)):
                records.append({
                    "H": _jnum(row.tensor_h),
                    "state": label,
                    "E_selected": _jnum(energy) if energy is not None else None,
                    "delta_E": _jnum(row.delta_e) if row.delta_e is not None else None,
                    **({"error": row.error} if row.error else {}),
                })
        notes = list(sweep.directions)
        if cfg.format == "csv":
            rows = [
                [
                    _fmt(rec["H"]),
                    rec["state"],
                    _opt(rec.get("E_selected")),
                    _opt(rec.get("delta_E")),
                ]
                for rec in records
            ]
            text = _csv_text(cfg, ["H", "state", "E_selected", "delta_E"], rows, notes)
        else:
            text = _json_text(cfg, records, notes)
        _write_output(cfg, text)
        return 3 if failed else 0

    raise ConfigError(f"unknown analyze target {which!r}; choose approx, potential, or sweep")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a JSON config file")
    common.add_argument("--mass", type=float)
    common.add_argument("--symmetry", choices=[PSEUDOSPIN, SPIN])
    common.add_argument("--c-sym", type=float, dest="c_sym")
    common.add_argument("--tensor-h", type=float, dest="tensor_h")
    common.add_argument("--alpha", type=float)
    common.add_argument("--a-shape", type=float, dest="a_shape")
    common.add_argument("--c0", type=float)
    common.add_argument(
        "--strict-domain",
        action=argparse.BooleanOptionalAction,
        dest="strict_domain",
        default=None,
    )
    common.add_argument("--assembly", choices=["reference", "strict"])
    common.add_argument("--n", type=int)
    common.add_argument("--kappa", type=int)
    common.add_argument("--grid-points", type=int, dest="grid_points")
    common.add_argument("--bisect-tol", type=float, dest="bisect_tol")
    common.add_argument("--margin", type=float)
    common.add_argument("--branch", choices=[DECAYING, TERMINATING])
    common.add_argument("--wf-points", type=int, dest="wf_points")
    common.add_argument("--r-min", type=float, dest="r_min")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out")

    parser = argparse.ArgumentParser(
        prog="dirac-nu",
        description="Bound states of an exponential-screened well with tensor coupling",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="energies of configured states")
    p_table = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    p_table.add_argument("--which", required=True, choices=sorted(_TABLE_ALIASES))
    sub.add_parser("wavefunction", parents=[common], help="sample one state's spinor pair")
    p_an = sub.add_parser("analyze", parents=[common], help="diagnostics")
    p_an.add_argument("--which", required=True, choices=["approx", "potential", "sweep"])
    return parser


_FLAG_KEYS = (
    "mass", "symmetry", "c_sym", "tensor_h", "alpha", "a_shape", "c0",
    "strict_domain", "assembly", "grid_points", "bisect_tol", "margin",
    "branch", "wf_points", "r_min", "format", "out",
)


def _config_from_namespace(ns: argparse.Namespace) -> RunConfig:
    data: dict[str, Any] = {}
    path = ns.config or os.environ.get("PSEUDOSPIN_CONFIG")
    if path:
        try:
            with open(path) as handle:
                data = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in config {path!r}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"config root must be an object, got {type(data).__name__}")
    cfg = RunConfig.from_dict(data)

    overrides: dict[str, Any] = {}
    for key in _FLAG_KEYS:
        value = getattr(ns, key, None)
        if value is not None:
            overrides[key] = value
    if (ns.n is None) != (ns.kappa is None):
        raise ConfigError("--n and --kappa must be given together")
    if ns.n is not None:
        overrides["states"] = ((ns.n, ns.kappa),)
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_namespace(ns)
        if ns.command == "solve":
            return cmd_solve(cfg)
        if ns.command == "table":
            return cmd_table(cfg, ns.which)
        if ns.command == "wavefunction":
            return cmd_wavefunction(cfg)
        if ns.command == "analyze":
            return cmd_analyze(cfg, ns.which)
        raise ConfigError(f"unknown command {ns.command!r}")
    except (ConfigError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SolverError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
