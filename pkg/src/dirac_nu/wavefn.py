"""Spinor components, Jacobi evaluation, normalization, verification.

In the variable s = e^{-2 alpha r} the solved component of a bound state
factorizes as

    psi(s) = B_n s^{sigma nu} (1 - s)^{(1 + mu)/2}
             P_n^{(2 sigma nu, mu)}(1 - 2 s),

with nu = sqrt(c8) >= 0, mu = 2 sqrt(c9), and sigma = +-1 a branch sign:

* ``"decaying"`` (sigma = +1): normalizable, vanishes at both ends of the
  radial axis, carries the n interior nodes expected of the n-th state.
* ``"terminating"`` (sigma = -1): the branch singled out by the minus
  convention of the derived constants.  It solves the transformed equation
  exactly at a quantized energy but grows like s^{-nu} as r -> infinity.

The residual of the transformed equation therefore certifies an energy
only on the terminating branch, while decay and normalizability hold only
on the decaying branch; the pair of checks discriminates the two.

The unsolved partner component follows from the first-order coupling:
pseudospin  F = [dG/dr - ((kappa + H)/r) G] / (M - E + C_sym),
spin        G = [dF/dr + ((kappa + H)/r) F] / (M + E - C_sym).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import quad

from .errors import (
    DenominatorNearZero,
    DomainError,
    GridTooCoarse,
    NonNormalizable,
)
from .model import PSEUDOSPIN, SPIN, StateIndex
from .nu_core import NuProblem, derive_constants
from .spectrum import EnergyEquation, normal_form

DECAYING = "decaying"
TERMINATING = "terminating"
_BRANCHES = (DECAYING, TERMINATING)

# r_max is chosen so the decaying envelope s^nu has dropped to this level
DECAY_TARGET = 1e-12


@dataclass(frozen=True)
class JacobiSpec:
    """Degree and exponent pair of a Jacobi polynomial P_n^{(a, b)}."""

    n: int
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError(f"degree must be nonnegative, got {self.n!r}")
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("Jacobi exponents must be finite")


def jacobi_eval(spec: JacobiSpec, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate P_n^{(a, b)}(x) by the ascending three-term recurrence.

    Valid for arbitrary real exponents as long as the recurrence
    denominators 2k (k + a + b) (2k + a + b - 2) stay away from zero; the
    classical orthogonality range a, b > -1 is not required.
    """
    x = np.asarray(x, dtype=float)
    n, a, b = spec.n, spec.a, spec.b
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p_curr = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        denom = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
        if abs(denom) < 1e-12:
            raise DomainError(
                f"degenerate Jacobi recurrence at degree {k} for (a, b) = ({a!r}, {b!r})"
            )
        c_lin = (2.0 * k + a + b - 1.0)
        term = c_lin * ((2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * x + a * a - b * b)
        drop = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
        p_next = (term * p_curr - drop * p_prev) / denom
        p_prev, p_curr = p_curr, p_next
    return p_curr


def jacobi_deriv(spec: JacobiSpec, x: NDArray[np.float64], order: int = 1) -> NDArray[np.float64]:
    """Derivative d^m/dx^m P_n^{(a, b)}(x), via the degree-lowering identity.

    d/dx P_n^{(a, b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1, b+1)}.
    """
    if order < 0:
        raise DomainError(f"order must be nonnegative, got {order!r}")
    x = np.asarray(x, dtype=float)
    n, a, b = spec.n, spec.a, spec.b
    factor = 1.0
    for m in range(order):
        if n - m <= 0:
            return np.zeros_like(x)
        factor *= 0.5 * (n - m + a + m + b + m + 1.0)
    if order == 0:
        return jacobi_eval(spec, x)
    return factor * jacobi_eval(JacobiSpec(n - order, a + order, b + order), x)


@dataclass(frozen=True)
class BranchFunctions:
    """Analytic solved component of one state on one branch.

    Provides the function of s and its first two s-derivatives; everything
    downstream (radial derivatives, coupling, residuals) chains these.
    """

    branch: str
    nu: float
    mu: float
    s_exponent: float
    one_minus_exponent: float
    jacobi: JacobiSpec
    problem: NuProblem

    def value(self, s: NDArray[np.float64]) -> NDArray[np.float64]:
        s = np.asarray(s, dtype=float)
        x = 1.0 - 2.0 * s
        return (
            s ** self.s_exponent
            * (1.0 - s) ** self.one_minus_exponent
            * jacobi_eval(self.jacobi, x)
        )

    def d_ds(self, s: NDArray[np.float64]) -> NDArray[np.float64]:
        s = np.asarray(s, dtype=float)
        x = 1.0 - 2.0 * s
        p, t = self.s_exponent, self.one_minus_exponent
        u = s ** p
        v = (1.0 - s) ** t
        w = jacobi_eval(self.jacobi, x)
        wp = jacobi_deriv(self.jacobi, x)
        return (
            p * s ** (p - 1.0) * v * w
            - t * u * (1.0 - s) ** (t - 1.0) * w
            - 2.0 * u * v * wp
        )

    def d2_ds2(self, s: NDArray[np.float64]) -> NDArray[np.float64]:
        s = np.asarray(s, dtype=float)
        x = 1.0 - 2.0 * s
        p, t = self.s_exponent, self.one_minus_exponent
        u = s ** p
        du = p * s ** (p - 1.0)
        d2u = p * (p - 1.0) * s ** (p - 2.0)
        v = (1.0 - s) ** t
        dv = -t * (1.0 - s) ** (t - 1.0)
        d2v = t * (t - 1.0) * (1.0 - s) ** (t - 2.0)
        w = jacobi_eval(self.jacobi, x)
        dw = -2.0 * jacobi_deriv(self.jacobi, x)
        d2w = 4.0 * jacobi_deriv(self.jacobi, x, order=2)
        return (
            d2u * v * w + u * d2v * w + u * v * d2w
            + 2.0 * (du * dv * w + du * v * dw + u * dv * dw)
        )


def branch_functions(eq: EnergyEquation, energy: float, branch: str = DECAYING) -> BranchFunctions:
    """Build the solved component's analytic form at a given energy."""
    if branch not in _BRANCHES:
        raise DomainError(f"branch must be one of {_BRANCHES}, got {branch!r}")
    problem = normal_form(eq, energy)
    derived = derive_constants(problem)
    nu = derived.sqrt_c8
    mu = 2.0 * derived.sqrt_c9
    sigma = 1.0 if branch == DECAYING else -1.0
    if branch == DECAYING and nu <= 0.0:
        raise NonNormalizable(
            f"decay exponent nu = {nu!r} vanishes; no normalizable branch at E = {energy!r}"
        )
    return BranchFunctions(
        branch=branch,
        nu=nu,
        mu=mu,
        s_exponent=sigma * nu,
        one_minus_exponent=0.5 * (1.0 + mu),
        jacobi=JacobiSpec(n=eq.state.n, a=sigma * 2.0 * nu, b=mu),
        problem=problem,
    )


def default_grid(
    eq: EnergyEquation,
    energy: float,
    n_points: int = 2000,
    r_min: float = 1e-4,
) -> NDArray[np.float64]:
    """Log-spaced radial grid reaching far enough for the decaying tail.

    r_max satisfies e^{-2 alpha nu r_max} = DECAY_TARGET, so the decaying
    envelope is negligible at the last point.
    """
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points!r}")
    if r_min <= 0.0:
        raise DomainError(f"r_min must be positive, got {r_min!r}")
    derived = derive_constants(normal_form(eq, energy))
    nu = derived.sqrt_c8
    if nu <= 0.0:
        raise NonNormalizable(f"decay exponent vanishes at E = {energy!r}")
    r_max = math.log(1.0 / DECAY_TARGET) / (2.0 * eq.params.alpha * nu)
    if r_max <= r_min:
        raise DomainError(f"r_max = {r_max!r} does not exceed r_min = {r_min!r}")
    return np.geomspace(r_min, r_max, n_points)


def node_count_of(values: NDArray[np.float64]) -> int:
    """Interior sign changes, ignoring samples below 1e-12 of the peak."""
    values = np.asarray(values, dtype=float)
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        return 0
    keep = values[np.abs(values) > 1e-12 * peak]
    if keep.size < 2:
        return 0
    return int(np.count_nonzero(np.sign(keep[:-1]) != np.sign(keep[1:])))


@dataclass(frozen=True)
class WavefunctionTable:
    """Sampled spinor components for one state at one energy.

    ``g`` is the lower component and ``f`` the upper one, both scaled by
    ``norm_constant`` when it is set (joint normalization of the pair,
    integral of G^2 + F^2 over r equal to one).  ``node_count`` counts
    the interior nodes of the solved (dominant) component and
    ``residual_norm`` is the transformed-equation residual of this
    table's own branch; it is small only on the terminating branch.
    """

    state: StateIndex
    symmetry: str
    branch: str
    energy: float
    r: NDArray[np.float64]
    s: NDArray[np.float64]
    g: NDArray[np.float64]
    f: NDArray[np.float64]
    nu: float
    mu: float
    s_exponent: float
    one_minus_exponent: float
    norm_constant: Optional[float]
    node_count: Optional[int]
    residual_norm: Optional[float]

    @property
    def dominant(self) -> NDArray[np.float64]:
        """The solved component: G in the pseudospin limit, F in the spin one."""
        return self.g if self.symmetry == PSEUDOSPIN else self.f


def _check_grid(grid: NDArray[np.float64]) -> NDArray[np.float64]:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise DomainError("grid must be a 1-d array with at least two points")
    if np.any(grid <= 0.0) or np.any(np.diff(grid) <= 0.0):
        raise DomainError("grid must be strictly positive and increasing")
    return grid


def lower_component(
    eq: EnergyEquation,
    energy: float,
    grid: Optional[NDArray[np.float64]] = None,
    branch: str = DECAYING,
) -> WavefunctionTable:
    """Unnormalized lower component G of a pseudospin-limit state."""
    if eq.params.symmetry != PSEUDOSPIN:
        raise DomainError("lower_component expects a pseudospin-limit equation")
    bf = branch_functions(eq, energy, branch)
    r = _check_grid(default_grid(eq, energy) if grid is None else grid)
    s = np.exp(-2.0 * eq.params.alpha * r)
    g = bf.value(s)
    return WavefunctionTable(
        state=eq.state,
        symmetry=eq.params.symmetry,
        branch=branch,
        energy=energy,
        r=r,
        s=s,
        g=g,
        f=np.zeros_like(g),
        nu=bf.nu,
        mu=bf.mu,
        s_exponent=bf.s_exponent,
        one_minus_exponent=bf.one_minus_exponent,
        norm_constant=None,
        node_count=node_count_of(g),
        residual_norm=None,
    )


def _coupling_denominator(eq: EnergyEquation, energy: float) -> float:
    p = eq.params
    if p.symmetry == PSEUDOSPIN:
        denom = p.mass - energy + p.c_sym
    else:
        denom = p.mass + energy - p.c_sym
    if abs(denom) < 1e-8 * p.mass:
        raise DenominatorNearZero(
            f"coupling denominator {denom!r} below 1e-8 * mass at E = {energy!r}"
        )
    return denom


def _partner_from_solved(
    eq: EnergyEquation, energy: float, bf: BranchFunctions, r: NDArray[np.float64]
) -> NDArray[np.float64]:
    """First-order coupling applied to the analytic solved component.

    The radial derivative uses the chain rule d/dr = -2 alpha s d/ds on
    the analytic s-derivative; no finite differences anywhere.
    """
    p = eq.params
    denom = _coupling_denominator(eq, energy)
    shifted = eq.state.kappa + p.tensor_h
    s = np.exp(-2.0 * p.alpha * r)
    d_dr = -2.0 * p.alpha * s * bf.d_ds(s)
    if p.symmetry == PSEUDOSPIN:
        return (d_dr - (shifted / r) * bf.value(s)) / denom
    return (d_dr + (shifted / r) * bf.value(s)) / denom


def _joint_norm(
    eq: EnergyEquation, energy: float, bf: BranchFunctions, r_max: float
) -> float:
    """Normalization constant for the (G, F) pair on (0, r_max)."""
    p = eq.params
    denom = _coupling_denominator(eq, energy)
    shifted = eq.state.kappa + p.tensor_h

    def integrand(r: float) -> float:
        s = math.exp(-2.0 * p.alpha * r)
        solved = float(bf.value(s))
        d_dr = -2.0 * p.alpha * s * float(bf.d_ds(s))
        sign = -1.0 if p.symmetry == PSEUDOSPIN else 1.0
        partner = (d_dr + sign * (shifted / r) * solved) / denom
        return solved * solved + partner * partner

    integral, _ = quad(integrand, 0.0, r_max, limit=200, epsabs=1e-13, epsrel=1e-13)
    if not (math.isfinite(integral) and integral > 0.0):
        raise NonNormalizable(f"normalization integral = {integral!r}")
    return 1.0 / math.sqrt(integral)


def upper_component_from_lower(
    eq: EnergyEquation, lower: WavefunctionTable
) -> WavefunctionTable:
    """Complete a pseudospin table: derive F, then normalize the pair."""
    if eq.params.symmetry != PSEUDOSPIN:
        raise DomainError("upper_component_from_lower expects a pseudospin-limit equation")
    if lower.symmetry != PSEUDOSPIN:
        raise DomainError("lower table was not built in the pseudospin limit")
    bf = branch_functions(eq, lower.energy, lower.branch)
    f_raw = _partner_from_solved(eq, lower.energy, bf, lower.r)
    g_raw = bf.value(lower.s)
    norm = _joint_norm(eq, lower.energy, bf, float(lower.r[-1]))
    residual = verify_ode(eq, lower.energy, branch=lower.branch, grid=lower.r)
    return WavefunctionTable(
        state=lower.state,
        symmetry=lower.symmetry,
        branch=lower.branch,
        energy=lower.energy,
        r=lower.r,
        s=lower.s,
        g=norm * g_raw,
        f=norm * f_raw,
        nu=lower.nu,
        mu=lower.mu,
        s_exponent=lower.s_exponent,
        one_minus_exponent=lower.one_minus_exponent,
        norm_constant=norm,
        node_count=node_count_of(g_raw),
        residual_norm=residual,
    )


def spin_limit_components(
    eq: EnergyEquation,
    energy: float,
    grid: Optional[NDArray[np.float64]] = None,
    branch: str = DECAYING,
) -> WavefunctionTable:
    """Full spinor pair of a spin-limit state: solved F, derived G."""
    if eq.params.symmetry != SPIN:
        raise DomainError("spin_limit_components expects a spin-limit equation")
    bf = branch_functions(eq, energy, branch)
    r = _check_grid(default_grid(eq, energy) if grid is None else grid)
    s = np.exp(-2.0 * eq.params.alpha * r)
    f_raw = bf.value(s)
    g_raw = _partner_from_solved(eq, energy, bf, r)
    norm = _joint_norm(eq, energy, bf, float(r[-1]))
    residual = verify_ode(eq, energy, branch=branch, grid=r)
    return WavefunctionTable(
        state=eq.state,
        symmetry=eq.params.symmetry,
        branch=branch,
        energy=energy,
        r=r,
        s=s,
        g=norm * g_raw,
        f=norm * f_raw,
        nu=bf.nu,
        mu=bf.mu,
        s_exponent=bf.s_exponent,
        one_minus_exponent=bf.one_minus_exponent,
        norm_constant=norm,
        node_count=node_count_of(f_raw),
        residual_norm=residual,
    )


def pseudospin_components(
    eq: EnergyEquation,
    energy: float,
    grid: Optional[NDArray[np.float64]] = None,
    branch: str = DECAYING,
) -> WavefunctionTable:
    """Convenience wrapper: lower component then completion in one call."""
    return upper_component_from_lower(eq, lower_component(eq, energy, grid, branch))


def verify_ode(
    eq: EnergyEquation,
    energy: float,
    branch: str = TERMINATING,
    grid: Optional[NDArray[np.float64]] = None,
    min_interior: int = 50,
) -> float:
    """Max relative residual of the transformed equation on interior points.

    The solved component is plugged into

        psi'' + psi'/s + (-A s^2 + B s - C) / (s^2 (1 - s)^2) psi = 0

    and at each interior grid point the absolute residual is divided by
    the largest of the three term magnitudes.  At a true eigenvalue the
    terminating branch drives this below 1e-8; the decaying branch does
    not satisfy this equation and stays at order one, which is exactly
    what makes the (residual, decay) pair discriminate the branches.
    """
    bf = branch_functions(eq, energy, branch)
    r = _check_grid(default_grid(eq, energy) if grid is None else grid)
    s_all = np.exp(-2.0 * eq.params.alpha * r)
    s = s_all[1:-1]
    if s.size < min_interior:
        raise GridTooCoarse(
            f"{s.size} interior points < required {min_interior}"
        )
    problem = bf.problem
    psi = bf.value(s)
    dpsi = bf.d_ds(s)
    d2psi = bf.d2_ds2(s)
    rational = (
        (-problem.big_a * s * s + problem.big_b * s - problem.big_c)
        / (s * s * (1.0 - s) ** 2)
    )
    term1 = d2psi
    term2 = dpsi / s
    term3 = rational * psi
    residual = np.abs(term1 + term2 + term3)
    scale = np.maximum(np.abs(term1), np.maximum(np.abs(term2), np.abs(term3)))
    ok = scale > 0.0
    if not np.any(ok):
        raise GridTooCoarse("solved component vanished on every interior point")
    return float(np.max(residual[ok] / scale[ok]))


def decays_at_infinity(table: WavefunctionTable, rel_tol: float = 1e-6) -> bool:
    """Boundary-decay check: dominant component negligible at the far end."""
    dom = np.abs(table.dominant)
    peak = float(np.max(dom))
    if peak == 0.0:
        return True
    return float(dom[-1]) <= rel_tol * peak
