"""Acceptance gate: one test per shipping criterion, each printing a verdict line.

Every numeric target lives in the bundled reference data; tolerances are the
contract values, not what the implementation happens to achieve.
"""

import json
import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import eval_jacobi

from dirac_nu.analysis import approx_report
from dirac_nu.model import PSEUDOSPIN, SPIN, ModelParams, StateIndex
from dirac_nu.spectrum import (
    SolveOptions,
    build_equation,
    negative_root,
    quantization_function,
    solve_spectrum,
    spin_from_pseudospin_mapping,
    splitting_report,
)
from dirac_nu.wavefn import branch_functions, pseudospin_components, spin_limit_components, verify_ode

OPTS = SolveOptions()


def _report(criterion, detail):
    print(f"PASS {criterion}: {detail}")


def _solve_cell(ref, symmetry, cell, assembly=None):
    eq = build_equation(ref.params(symmetry, cell.tensor_h), cell.state, assembly)
    return eq, solve_spectrum(eq, OPTS)


def _match(reference_energy, roots, tol):
    hits = [r for r in roots if abs(r.energy - reference_energy) < tol]
    assert hits, f"no root within {tol} of {reference_energy}"
    return min(abs(r.energy - reference_energy) for r in hits)


def test_pseudospin_reference_table_reproduced(ref):
    t0 = time.perf_counter()
    worst = 0.0
    cells = ref.select(PSEUDOSPIN)
    count = 0
    for cell in cells:
        _, res = _solve_cell(ref, PSEUDOSPIN, cell)
        for e_ref in cell.energies:
            worst = max(worst, _match(e_ref, res.roots, 1e-6))
            count += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _report(
        "pseudospin table",
        f"{count} energies over {len(cells)} cells, worst deviation {worst:.3e}, {elapsed:.2f} s",
    )


def test_spin_reference_table_reproduced(ref):
    worst = 0.0
    count = 0
    cells = ref.select(SPIN)
    for cell in cells:
        _, res = _solve_cell(ref, SPIN, cell)
        for e_ref in cell.energies:
            worst = max(worst, _match(e_ref, res.roots, 1e-6))
            count += 1
    _report("spin table", f"{count} energies over {len(cells)} cells, worst deviation {worst:.3e}")


def test_residual_self_consistency(ref):
    worst_f = 0.0
    worst_ode = 0.0
    for symmetry in (PSEUDOSPIN, SPIN):
        for cell in ref.select(symmetry):
            eq, res = _solve_cell(ref, symmetry, cell)
            for root in res.roots:
                rel = abs(quantization_function(eq, root.energy)) / max(1.0, root.rhs_scale)
                assert rel < 1e-10
                worst_f = max(worst_f, rel)
                ode = verify_ode(eq, root.energy)
                assert ode < 1e-8
                worst_ode = max(worst_ode, ode)
    _report(
        "residual self-consistency",
        f"max |f|/max(1,|RHS|) = {worst_f:.3e}, max ODE residual = {worst_ode:.3e}",
    )


def test_h_zero_degeneracy_and_shift_invariance(ref):
    worst_doublet = 0.0
    pairs = 0
    for symmetry, partner in ((PSEUDOSPIN, lambda k: 1 - k), (SPIN, lambda k: -k - 1)):
        params = ref.params(symmetry, 0.0)
        for cell in ref.select(symmetry):
            if cell.tensor_h != 0.0 or cell.state.kappa >= 0:
                continue
            mate = StateIndex(cell.state.n, partner(cell.state.kappa))
            ra = solve_spectrum(build_equation(params, cell.state), OPTS)
            rb = solve_spectrum(build_equation(params, mate), OPTS)
            ea = [r.energy for r in ra.roots]
            eb = [r.energy for r in rb.roots]
            assert len(ea) == len(eb)
            gap = max(abs(a - b) for a, b in zip(ea, eb))
            assert gap < 1e-10
            worst_doublet = max(worst_doublet, gap)
            pairs += 1

    rng = random.Random(20260826)
    worst_shift = 0.0
    tuples = 0
    while tuples < 20:
        lam = rng.uniform(-4.0, -0.5) if rng.random() < 0.5 else rng.uniform(1.5, 5.0)
        k1, k2 = rng.sample([k for k in range(-6, 7) if k != 0], 2)
        n = rng.randrange(3)
        base = dict(mass=5.0, symmetry=PSEUDOSPIN, c_sym=0.0)
        r1 = solve_spectrum(
            build_equation(ModelParams(tensor_h=lam - k1, **base), StateIndex(n, k1)), OPTS
        )
        r2 = solve_spectrum(
            build_equation(ModelParams(tensor_h=lam - k2, **base), StateIndex(n, k2)), OPTS
        )
        e1 = [r.energy for r in r1.roots]
        e2 = [r.energy for r in r2.roots]
        assert len(e1) == len(e2)
        if e1:
            worst_shift = max(worst_shift, max(abs(a - b) for a, b in zip(e1, e2)))
            assert max(abs(a - b) for a, b in zip(e1, e2)) < 1e-10
        tuples += 1
    _report(
        "degeneracy and shift invariance",
        f"{pairs} doublets worst {worst_doublet:.3e}; {tuples} random tuples worst {worst_shift:.3e}",
    )


def test_tensor_splits_doublet_in_opposite_directions():
    params = ModelParams(mass=5.0, symmetry=PSEUDOSPIN, c_sym=0.0, tensor_h=1.0)
    rep = splitting_report(params, StateIndex(1, -1), StateIndex(1, 2), OPTS)
    assert rep.energy_neg < rep.baseline_neg < rep.energy_pos
    assert rep.direction_neg == -1 and rep.direction_pos == 1
    assert rep.delta_e == pytest.approx(0.319931821, abs=2e-6)
    _report(
        "opposite-direction splitting",
        f"{rep.label_neg} -> {rep.energy_neg:.9f}, {rep.label_pos} -> {rep.energy_pos:.9f}, "
        f"delta {rep.delta_e:.9f}",
    )


def test_limit_mapping_matches_direct_solve(ref):
    worst = 0.0
    checked = 0
    for cell in ref.select(SPIN):
        _, direct = _solve_cell(ref, SPIN, cell)
        source = build_equation(ref.params(PSEUDOSPIN, cell.tensor_h), cell.state)
        mapped = solve_spectrum(spin_from_pseudospin_mapping(source), OPTS)
        ed = [r.energy for r in direct.roots]
        em = [r.energy for r in mapped.roots]
        assert len(ed) == len(em)
        for a, b in zip(ed, em):
            assert abs(a - b) < 1e-8
            worst = max(worst, abs(a - b))
            checked += 1
    _report("limit mapping", f"{checked} mapped roots, worst gap {worst:.3e}")


def test_oracle_confirms_every_root(ref):
    confirmed = 0
    for symmetry in (PSEUDOSPIN, SPIN):
        for cell in ref.select(symmetry):
            _, res = _solve_cell(ref, symmetry, cell)
            assert res.oracle is not None
            assert len(res.oracle.survivors) == len(res.roots)
            for root in res.roots:
                assert root.method == "oracle-confirmed"
                gap = min(abs(root.energy - s) for s in res.oracle.survivors)
                assert gap < 1e3 * OPTS.bisect_tol
                confirmed += 1
    _report("oracle agreement", f"{confirmed} roots independently confirmed")


def test_wavefunction_normalization_nodes_and_derivative_order():
    worst_norm = 0.0
    for n in (0, 1, 2):
        params = ModelParams(mass=5.0, symmetry=PSEUDOSPIN, c_sym=0.0, tensor_h=1.0)
        eq = build_equation(params, StateIndex(n, -1))
        energy = negative_root(solve_spectrum(eq, OPTS))
        table = pseudospin_components(eq, energy)
        assert table.node_count == n

        bf = branch_functions(eq, energy)
        coef = table.norm_constant
        alpha = params.alpha

        def g_of(r):
            s = math.exp(-2.0 * alpha * r)
            return (
                coef
                * s**bf.s_exponent
                * (1.0 - s) ** bf.one_minus_exponent
                * eval_jacobi(bf.jacobi.n, bf.jacobi.a, bf.jacobi.b, 1.0 - 2.0 * s)
            )

        lam = eq.state.kappa + params.tensor_h
        denom = params.mass - energy + params.c_sym
        h = 1e-6

        def f_of(r):
            dg = (g_of(r + h) - g_of(r - h)) / (2 * h)
            return (dg - (lam / r) * g_of(r)) / denom

        total, _ = quad(lambda r: g_of(r) ** 2 + f_of(r) ** 2, 1e-8, table.r[-1], limit=300)
        assert total == pytest.approx(1.0, abs=1e-8)
        worst_norm = max(worst_norm, abs(total - 1.0))

    spin_params = ModelParams(mass=5.0, symmetry=SPIN, c_sym=0.0, tensor_h=1.0)
    spin_eq = build_equation(spin_params, StateIndex(0, -2))
    spin_energy = negative_root(solve_spectrum(spin_eq, OPTS))
    assert spin_limit_components(spin_eq, spin_energy).node_count == 0

    eq = build_equation(
        ModelParams(mass=5.0, symmetry=PSEUDOSPIN, c_sym=0.0, tensor_h=1.0), StateIndex(2, -1)
    )
    bf = branch_functions(eq, negative_root(solve_spectrum(eq, OPTS)))
    ss = np.linspace(0.15, 0.75, 13)
    errs = []
    for h in (1e-2, 5e-3, 2.5e-3):
        errs.append(max(abs((bf.value(s + h) - bf.value(s - h)) / (2 * h) - bf.d_ds(s)) for s in ss))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 1.9
    _report(
        "wavefunction properties",
        f"norm within {worst_norm:.3e}, nodes = n for n in 0..2, derivative order {min(orders):.3f}",
    )


def test_centrifugal_approximation_rated_error():
    params = ModelParams(mass=5.0, symmetry=PSEUDOSPIN, c_sym=0.0, tensor_h=0.0)
    rep = approx_report(params, r_min=1e-4, r_max=0.5 / (2.0 * params.alpha))
    assert rep.max_rel_err < 1e-3
    _report(
        "centrifugal approximation",
        f"max relative error {rep.max_rel_err:.3e} for 2*alpha*r <= 0.5",
    )


def test_cli_flags_unmatched_quoted_energies():
    proc = subprocess.run(
        [sys.executable, "-m", "dirac_nu.cli", "table", "--which", "pseudospin"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    notes = " ".join(doc.get("notes", []))
    assert "quoted" in notes
    quoted = [float(tok.split("E=")[1].split()[0]) for tok in doc["notes"] if "E=" in tok]
    assert quoted
    computed = [rec["E_computed"] for rec in doc["records"] if rec["E_computed"] is not None]
    for q in quoted:
        assert min(abs(q - c) for c in computed) > 1e-3
    _report(
        "quoted-value flagging",
        f"{len(quoted)} quoted energies reported and all differ from computed by > 1e-3",
    )
