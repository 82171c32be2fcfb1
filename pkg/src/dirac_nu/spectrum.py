"""Energy quantization in the two exact symmetry limits.

For a state (n, kappa) the radial equation, after the substitution
s = e^{-2 alpha r} and the exponential centrifugal surrogate, lands in the
normal form of :mod:`.nu_core` with c1 = c2 = c3 = 1 and energy-dependent
(A, B, C).  Bound energies are roots of

    f(E) = (2 n + 1 + 2 sqrt(c9) - 2 sqrt(c8))^2 - 4 A

inside the window where the decay rate beta^2(E) is nonnegative.

Pseudospin limit (Sigma = C_sym constant, lower component solved):
    q      = Lambda = kappa + H
    g(E)   = E - M - C_sym
    b2(E)  = (M + E)(M - E + C_sym)
and physical bound states sit at negative E.

Spin limit (Delta = C_sym constant, upper component solved):
    q      = eta = kappa + H + 1
    g(E)   = M + E - C_sym
    b2(E)  = (M - E)(M + E - C_sym)
and physical bound states sit at positive E.

With w = g * scale / (4 alpha^2) and b = b2 / (4 alpha^2) the normal-form
coefficients are

    A = q (q - 1) C0 + w V1 + b
    B = q (q - 1) (2 C0 - 1) + 2 b - w V2
    C = q (q - 1) C0 + w V3 + b

Spin assembly conventions
-------------------------
Two conventions for the spin-limit coupling ``scale`` are supported:

* ``"reference"`` (default): scale = 4 alpha^2.  The potential terms enter
  as g * V_i instead of g * V_i / (4 alpha^2).  This convention reproduces
  the spin-limit reference spectra bundled with the package.
* ``"strict"``: scale = 1, the same dimensionally uniform coupling as the
  pseudospin limit.  It is the exact image of the pseudospin assembly
  under the symmetry-swap substitutions (Lambda -> eta, V -> -V, E -> -E,
  C_sym -> -C_sym).

At the bundled parameter set the two disagree by 2e-4 to 9e-3 fm^-1; the
distinction is deliberate and is pinned by the test suite.  The pseudospin
limit has a single assembly, named "strict".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from numpy.typing import NDArray

from .errors import (
    DegenerateLeadingCoefficient,
    DomainError,
    NegativeRadicand,
    NoPhysicalWindow,
    NoRootFound,
    OracleMismatch,
    WindowViolation,
)
from .model import (
    PSEUDOSPIN,
    SPIN,
    ModelParams,
    PotentialCoeffs,
    StateIndex,
    kappa_to_l_j,
    kappa_to_pseudo_l,
    potential_coeffs,
)
from .nu_core import RADICAND_CLAMP, NuProblem, derive_constants

ASSEMBLY_REFERENCE = "reference"
ASSEMBLY_STRICT = "strict"

NEGATIVE = "negative"
POSITIVE = "positive"

# relative tolerance used when matching the polynomial oracle to bisection
ORACLE_MATCH_FACTOR = 1e3

ArrayOrFloat = Union[float, NDArray[np.float64]]


@dataclass(frozen=True)
class EnergyEquation:
    """Quantization problem for one state in one symmetry limit.

    ``assembly`` selects the spin-limit coupling convention (see module
    docstring); the pseudospin limit accepts only "strict".  ``q`` is the
    tensor-shifted quantum number (Lambda or eta) cached at construction.
    """

    params: ModelParams
    state: StateIndex
    assembly: Optional[str] = None
    q: float = field(init=False)
    coeffs: PotentialCoeffs = field(init=False)

    def __post_init__(self) -> None:
        if self.params.symmetry == PSEUDOSPIN:
            resolved = self.assembly or ASSEMBLY_STRICT
            if resolved != ASSEMBLY_STRICT:
                raise DomainError(
                    f"pseudospin limit has a single assembly {ASSEMBLY_STRICT!r}, "
                    f"got {resolved!r}"
                )
            q = self.state.lam(self.params.tensor_h)
        else:
            resolved = self.assembly or ASSEMBLY_REFERENCE
            if resolved not in (ASSEMBLY_REFERENCE, ASSEMBLY_STRICT):
                raise DomainError(f"unknown assembly {resolved!r}")
            q = self.state.eta(self.params.tensor_h)
        object.__setattr__(self, "assembly", resolved)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", potential_coeffs(self.params))

    @property
    def scale(self) -> float:
        """Coupling scale multiplying g * V_i (see module docstring)."""
        if self.params.symmetry == SPIN and self.assembly == ASSEMBLY_REFERENCE:
            return 4.0 * self.params.alpha * self.params.alpha
        return 1.0

    @property
    def physical_sign(self) -> str:
        """Sign class of physically selected roots for this limit."""
        return NEGATIVE if self.params.symmetry == PSEUDOSPIN else POSITIVE

    def gamma(self, energy: ArrayOrFloat) -> ArrayOrFloat:
        """Linear factor g(E) coupling the potential."""
        p = self.params
        if p.symmetry == PSEUDOSPIN:
            return energy - p.mass - p.c_sym
        return p.mass + energy - p.c_sym

    def beta2(self, energy: ArrayOrFloat) -> ArrayOrFloat:
        """Quadratic decay-rate factor b2(E); nonnegative inside the window."""
        p = self.params
        if p.symmetry == PSEUDOSPIN:
            return (p.mass + energy) * (p.mass - energy + p.c_sym)
        return (p.mass - energy) * (p.mass + energy - p.c_sym)


def build_equation(
    params: ModelParams, state: StateIndex, assembly: Optional[str] = None
) -> EnergyEquation:
    """Convenience constructor mirroring EnergyEquation(params, state, assembly)."""
    return EnergyEquation(params=params, state=state, assembly=assembly)


def normal_form(eq: EnergyEquation, energy: float) -> NuProblem:
    """Assemble the normal-form coefficients at a trial energy."""
    p = eq.params
    c = eq.coeffs
    a2 = p.alpha * p.alpha
    ll = eq.q * (eq.q - 1.0)
    w = eq.gamma(energy) * eq.scale / (4.0 * a2)
    b = eq.beta2(energy) / (4.0 * a2)
    big_a = ll * p.c0 + w * c.v1 + b
    big_b = ll * (2.0 * p.c0 - 1.0) + 2.0 * b - w * c.v2
    big_c = ll * p.c0 + w * c.v3 + b
    return NuProblem(c1=1.0, c2=1.0, c3=1.0, big_a=big_a, big_b=big_b, big_c=big_c)


def search_window(eq: EnergyEquation, margin: Optional[float] = None) -> tuple[float, float]:
    """Open interval of trial energies with nonnegative decay rate.

    The decay-rate factor b2(E) is a downward parabola whose roots are the
    window edges; a small margin keeps the solver off the exact edges where
    the decay exponent vanishes.
    """
    p = eq.params
    eps = (1e-9 * p.mass) if margin is None else margin
    if eps <= 0.0:
        raise DomainError(f"margin must be positive, got {eps!r}")
    if p.symmetry == PSEUDOSPIN:
        lo, hi = -p.mass, p.mass + p.c_sym
    else:
        lo, hi = -p.mass + p.c_sym, p.mass
    lo, hi = lo + eps, hi - eps
    if not lo < hi:
        raise NoPhysicalWindow(
            f"no bound-state window: c_sym={p.c_sym!r} closes the interval "
            f"({lo!r}, {hi!r}) for mass {p.mass!r}"
        )
    return lo, hi


def _f_arrays(
    eq: EnergyEquation, energies: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Vectorized (f, 4 c8, 4 c9, 4 A) with NaN where a radicand is negative."""
    p = eq.params
    c = eq.coeffs
    a2 = p.alpha * p.alpha
    ll = eq.q * (eq.q - 1.0)
    n = eq.state.n

    g = eq.gamma(energies)
    b2 = eq.beta2(energies)
    w = g * (eq.scale / (4.0 * a2))
    b = b2 / (4.0 * a2)

    big_a = ll * p.c0 + w * c.v1 + b
    big_c = ll * p.c0 + w * c.v3 + b
    # c9 = 1/4 + A - B + C collapses to (q - 1/2)^2 + w * (V1 + V2 + V3)
    c9 = (eq.q - 0.5) ** 2 + w * c.total

    q8 = 4.0 * big_c
    q9 = 4.0 * c9
    q8 = np.where((q8 < 0.0) & (q8 >= -4.0 * RADICAND_CLAMP), 0.0, q8)
    q9 = np.where((q9 < 0.0) & (q9 >= -4.0 * RADICAND_CLAMP), 0.0, q9)

    with np.errstate(invalid="ignore"):
        f = (2.0 * n + 1.0 + np.sqrt(q9) - np.sqrt(q8)) ** 2 - 4.0 * big_a
    return f, q8, q9, 4.0 * big_a


def quantization_function(eq: EnergyEquation, energy: float) -> float:
    """f(E) at a single trial energy inside the search window.

    Raises WindowViolation outside the window and NegativeRadicand when a
    square-root argument is negative beyond the clamp tolerance.
    """
    lo, hi = search_window(eq)
    if not lo <= energy <= hi:
        raise WindowViolation(
            f"energy {energy!r} outside physical window ({lo!r}, {hi!r})"
        )
    f, q8, q9, _ = _f_arrays(eq, np.asarray([energy], dtype=float))
    if not np.isfinite(f[0]):
        which = "c8" if q8[0] < 0.0 else "c9"
        raise NegativeRadicand(which, float(q8[0] if which == "c8" else q9[0]) / 4.0)
    return float(f[0])


@dataclass(frozen=True)
class SolveOptions:
    """Knobs for the grid-plus-bisection root search."""

    grid_points: int = 20001
    bisect_tol: float = 1e-12
    max_iter: int = 200
    margin: Optional[float] = None
    oracle_check: bool = True

    def __post_init__(self) -> None:
        if self.grid_points < 3:
            raise DomainError(f"grid_points must be >= 3, got {self.grid_points!r}")
        if self.bisect_tol <= 0.0:
            raise DomainError(f"bisect_tol must be positive, got {self.bisect_tol!r}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter!r}")


@dataclass(frozen=True)
class EnergyRoot:
    """One root of the quantization condition.

    ``residual`` is |f(E)| after refinement; ``rhs_scale`` the matching
    |4 A(E)| used for relative comparisons; the two radicands are the
    square-root arguments 4 c8 and 4 c9 at the root.
    """

    energy: float
    sign_class: str
    residual: float
    rhs_scale: float
    radicand_c8: float
    radicand_c9: float
    method: str


@dataclass(frozen=True)
class OracleResult:
    """Companion-matrix roots of the radical-free eliminated polynomial.

    Squaring f(E) = 0 twice to clear the two square roots yields a degree-6
    polynomial in E; its roots are a superset of the true roots.  Spurious
    roots (artifacts of squaring, complex pairs, out-of-window reals) are
    reported but flagged.
    """

    all_roots: tuple[complex, ...]
    survivors: tuple[float, ...]
    spurious: tuple[complex, ...]
    coefficients: tuple[float, ...]
    degree: int


@dataclass(frozen=True)
class SpectrumResult:
    """All roots found for one state plus the physical selection."""

    state: StateIndex
    symmetry: str
    assembly: str
    window: tuple[float, float]
    roots: tuple[EnergyRoot, ...]
    selected: Optional[EnergyRoot]
    selection_note: str
    oracle: Optional[OracleResult]


def _bisect(eq: EnergyEquation, a: float, b: float, fa: float, fb: float,
            opts: SolveOptions) -> float:
    """Plain bisection; the grid guarantees fa and fb have opposite signs."""

    def f_of(x: float) -> float:
        val, _, _, _ = _f_arrays(eq, np.asarray([x], dtype=float))
        return float(val[0])

    for _ in range(opts.max_iter):
        mid = 0.5 * (a + b)
        if (b - a) <= opts.bisect_tol:
            return mid
        fm = f_of(mid)
        if not math.isfinite(fm):
            # radicand dipped below zero inside the bracket; shrink toward
            # the endpoint that still evaluates
            step = 0.25 * (b - a)
            mid_lo, mid_hi = mid - step, mid + step
            flo, fhi = f_of(mid_lo), f_of(mid_hi)
            if math.isfinite(flo):
                mid, fm = mid_lo, flo
            elif math.isfinite(fhi):
                mid, fm = mid_hi, fhi
            else:
                raise NoRootFound(
                    f"quantization function undefined inside bracket ({a!r}, {b!r})"
                )
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return 0.5 * (a + b)


def _radicand_boundaries(eq: EnergyEquation, lo: float, hi: float) -> list[float]:
    """Energies inside (lo, hi) where a radicand crosses zero.

    The radicands 4 c8 and 4 c9 are polynomials in E of degree <= 2, so
    the crossings are exact quadratic (or linear) roots.
    """
    q9, q8, _ = _poly_pieces(eq)
    out: list[float] = []
    for poly in (q8, q9):
        coeffs = np.asarray(poly, dtype=float)[::-1]
        nz = np.nonzero(coeffs != 0.0)[0]
        if nz.size == 0 or coeffs.size - nz[0] < 2:
            continue
        for z in np.roots(coeffs[nz[0]:]):
            if abs(z.imag) < 1e-9 * max(1.0, abs(z.real)) and lo < z.real < hi:
                out.append(float(z.real))
    return sorted(out)


def solve_spectrum(eq: EnergyEquation, opts: SolveOptions = SolveOptions()) -> SpectrumResult:
    """Locate every root of f in the physical window.

    A uniform scan with ``opts.grid_points`` samples brackets the sign
    changes (points with negative radicands are masked out); each bracket
    is refined by bisection to ``opts.bisect_tol``.  Extra samples are
    packed against the radicand zero crossings, where f can cross zero
    inside a sliver narrower than the uniform spacing.  When
    ``opts.oracle_check`` is on, the bisection roots are cross-checked
    against the eliminated-polynomial oracle and any unexplained mismatch
    raises OracleMismatch.
    """
    lo, hi = search_window(eq, opts.margin)
    grid = np.linspace(lo, hi, opts.grid_points)
    boundaries = _radicand_boundaries(eq, lo, hi)
    if boundaries:
        span = hi - lo
        offsets = span * np.array([10.0 ** -k for k in range(7, 13)])
        extra = np.concatenate([[b - offsets, b + offsets] for b in boundaries], axis=None)
        extra = extra[(extra > lo) & (extra < hi)]
        grid = np.unique(np.concatenate([grid, extra]))
    f, q8, q9, rhs = _f_arrays(eq, grid)
    valid = np.isfinite(f)

    fv = np.where(valid, f, np.nan)
    sign_change = (fv[:-1] * fv[1:]) < 0.0
    both_valid = valid[:-1] & valid[1:]
    bracket_lo = list(np.nonzero(sign_change & both_valid)[0])

    energies: list[float] = []
    for i in bracket_lo:
        root = _bisect(eq, float(grid[i]), float(grid[i + 1]), float(f[i]), float(f[i + 1]), opts)
        energies.append(root)
    # exact zeros on the grid (rare but cheap to honor)
    for i in np.nonzero(valid & (f == 0.0))[0]:
        e = float(grid[i])
        if not any(abs(e - r) <= opts.bisect_tol for r in energies):
            energies.append(e)
    energies.sort()

    roots: list[EnergyRoot] = []
    for e in energies:
        fe, q8e, q9e, rhse = _f_arrays(eq, np.asarray([e], dtype=float))
        roots.append(
            EnergyRoot(
                energy=e,
                sign_class=NEGATIVE if e < 0.0 else POSITIVE,
                residual=abs(float(fe[0])),
                rhs_scale=abs(float(rhse[0])),
                radicand_c8=float(q8e[0]),
                radicand_c9=float(q9e[0]),
                method="bisection",
            )
        )

    oracle: Optional[OracleResult] = None
    if opts.oracle_check:
        oracle = quartic_oracle(eq, window=(lo, hi))
        tol = ORACLE_MATCH_FACTOR * opts.bisect_tol
        confirmed: list[EnergyRoot] = []
        for r in roots:
            if any(abs(r.energy - s) <= tol for s in oracle.survivors):
                confirmed.append(replace(r, method="oracle-confirmed"))
            else:
                raise OracleMismatch(
                    f"bisection root {r.energy!r} has no oracle partner within {tol!r}; "
                    f"oracle survivors: {oracle.survivors!r}"
                )
        for s in oracle.survivors:
            if not any(abs(r.energy - s) <= tol for r in roots):
                raise OracleMismatch(
                    f"oracle root {s!r} was not found by bisection; "
                    f"bisection roots: {[r.energy for r in roots]!r}"
                )
        roots = confirmed

    wanted = eq.physical_sign
    candidates = [r for r in roots if r.sign_class == wanted]
    if candidates:
        selected: Optional[EnergyRoot] = min(candidates, key=lambda r: r.energy)
        note = ""
    else:
        selected = None
        masked = int(np.count_nonzero(~valid))
        note = (
            f"no {wanted} root in window ({lo!r}, {hi!r}); "
            f"{masked} of {grid.size} grid points had negative radicands"
        )

    return SpectrumResult(
        state=eq.state,
        symmetry=eq.params.symmetry,
        assembly=eq.assembly,
        window=(lo, hi),
        roots=tuple(roots),
        selected=selected,
        selection_note=note,
        oracle=oracle,
    )


def _poly_pieces(eq: EnergyEquation) -> tuple[NDArray, NDArray, NDArray]:
    """(Q9, Q8, R) = (4 c9, 4 c8, 4 A) as polynomial coefficient arrays in E.

    Coefficients are stored lowest degree first (numpy.polynomial order) and
    carry extended precision: the double squaring in the elimination
    amplifies coefficient roundoff into root shifts of order 1e-9, which
    double precision construction cannot keep below the matching tolerance.
    """
    p = eq.params
    c = eq.coeffs
    ld = np.longdouble
    alpha = ld(p.alpha)
    a2 = alpha * alpha
    q = ld(eq.q)
    ll = q * (q - 1.0)
    sc = ld(eq.scale) / a2
    mass, c_sym, c0 = ld(p.mass), ld(p.c_sym), ld(p.c0)
    v1, v3, total = ld(c.v1), ld(c.v3), ld(c.v1) + ld(c.v2) + ld(c.v3)

    if p.symmetry == PSEUDOSPIN:
        g = np.array([-(mass + c_sym), ld(1.0)])
        b2 = np.array([mass * (mass + c_sym), c_sym, ld(-1.0)])
    else:
        g = np.array([mass - c_sym, ld(1.0)])
        b2 = np.array([mass * (mass - c_sym), c_sym, ld(-1.0)])

    base = npoly.polyadd(np.array([4.0 * ll * c0]), b2 / a2)
    q9 = npoly.polyadd(np.array([(2.0 * q - 1.0) ** 2]), sc * total * g)
    q8 = npoly.polyadd(base, sc * v3 * g)
    rr = npoly.polyadd(base, sc * v1 * g)
    return q9, q8, rr


def quartic_oracle(
    eq: EnergyEquation,
    window: Optional[tuple[float, float]] = None,
    backsub_rel_tol: float = 1e-6,
) -> OracleResult:
    """Independent root finder: eliminate the radicals, then use np.roots.

    Writing W = 2n + 1, u = sqrt(4 c9), v = sqrt(4 c8) and R = 4 A, the
    condition (W + u - v)^2 = R implies, after isolating and squaring each
    radical in turn,

        S1 := W^2 + Q9 + Q8 - R            (linear in E: the b2 parts cancel)
        S1^2 + 4 W^2 Q9 - 4 W^2 Q8 - 4 Q9 Q8 = 4 W u (2 Q8 - S1)

    and squaring once more gives a polynomial of degree 6 whose real roots
    contain every true root.  Each candidate is filtered by back
    substitution into f; the rest are reported as spurious.
    """
    q9, q8, rr = _poly_pieces(eq)
    n = eq.state.n
    w = np.longdouble(2 * n + 1)
    w2 = np.array([w * w])

    s1 = npoly.polyadd(npoly.polyadd(w2, q9), npoly.polysub(q8, rr))
    bracket = npoly.polyadd(
        npoly.polysub(npoly.polymul(s1, s1), 4.0 * npoly.polymul(q9, q8)),
        npoly.polysub(4.0 * w * w * q9, 4.0 * w * w * q8),
    )
    rhs_sq = npoly.polymul(q9, npoly.polymul(
        npoly.polysub(2.0 * q8, s1), npoly.polysub(2.0 * q8, s1)))
    poly = npoly.polysub(npoly.polymul(bracket, bracket), 16.0 * w * w * rhs_sq)

    coeffs_ld = np.asarray(poly, dtype=np.longdouble)[::-1]  # high degree first
    scale = float(np.max(np.abs(coeffs_ld))) if coeffs_ld.size else 0.0
    if scale == 0.0:
        raise DegenerateLeadingCoefficient("eliminated polynomial is identically zero")
    keep = np.nonzero(np.abs(coeffs_ld) > 1e-12 * scale)[0]
    coeffs_ld = coeffs_ld[keep[0]:]
    degree = coeffs_ld.size - 1
    if degree < 1:
        raise DegenerateLeadingCoefficient(
            f"eliminated polynomial degenerated to degree {degree}"
        )

    # np.roots only handles double precision; its output seeds a Newton
    # polish against the extended precision coefficients (double rounding
    # of the coefficients alone shifts roots by ~1e-9 here)
    coeffs = coeffs_ld.astype(float)
    deriv_ld = np.polyder(coeffs_ld)

    def polish(z: complex) -> complex:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            return z  # clearly complex; spurious anyway, no polish needed
        x = np.longdouble(z.real)
        for _ in range(6):
            px = np.polyval(coeffs_ld, x)
            dx = np.polyval(deriv_ld, x)
            if dx == 0:
                break
            step = px / dx
            if abs(np.polyval(coeffs_ld, x - step)) <= abs(px):
                x = x - step
                if abs(step) < 1e-18 * max(1.0, abs(x)):
                    break
            else:
                break
        return complex(float(x), 0.0)

    all_roots = tuple(polish(complex(z)) for z in np.roots(coeffs))
    survivors: list[float] = []
    spurious: list[complex] = []
    for z in all_roots:
        if abs(z.imag) > 1e-8 * max(1.0, abs(z.real)):
            spurious.append(z)
            continue
        e = z.real
        if window is not None and not window[0] <= e <= window[1]:
            spurious.append(z)
            continue
        try:
            fe = quantization_function(eq, e)
        except (WindowViolation, NegativeRadicand):
            spurious.append(z)
            continue
        _, _, _, rhse = _f_arrays(eq, np.asarray([e], dtype=float))
        if abs(fe) <= backsub_rel_tol * max(1.0, abs(float(rhse[0]))):
            survivors.append(e)
        else:
            spurious.append(z)
    survivors.sort()

    return OracleResult(
        all_roots=all_roots,
        survivors=tuple(survivors),
        spurious=tuple(spurious),
        coefficients=tuple(float(x) for x in coeffs),
        degree=degree,
    )


def spin_from_pseudospin_mapping(
    eq: EnergyEquation, assembly: Optional[str] = None
) -> EnergyEquation:
    """Map a pseudospin equation to the spin limit.

    The symmetry swap replaces Lambda = kappa + H with eta = kappa + H + 1
    (the same shift as kappa -> kappa + 1), flips the sign of the symmetry
    constant, and flips the sign convention of (V, E); the state index is
    unchanged.  The mapped equation uses the requested assembly, default
    "reference".
    """
    if eq.params.symmetry != PSEUDOSPIN:
        raise DomainError("spin_from_pseudospin_mapping expects a pseudospin equation")
    params = replace(eq.params, symmetry=SPIN, c_sym=-eq.params.c_sym)
    return EnergyEquation(params=params, state=eq.state, assembly=assembly)


def pseudospin_from_spin_mapping(eq: EnergyEquation) -> EnergyEquation:
    """Inverse of :func:`spin_from_pseudospin_mapping`; round trips exactly."""
    if eq.params.symmetry != SPIN:
        raise DomainError("pseudospin_from_spin_mapping expects a spin equation")
    params = replace(eq.params, symmetry=PSEUDOSPIN, c_sym=-eq.params.c_sym)
    return EnergyEquation(params=params, state=eq.state, assembly=ASSEMBLY_STRICT)


def check_doublet(params: ModelParams, neg: StateIndex, pos: StateIndex) -> None:
    if neg.kappa >= 0 or pos.kappa <= 0:
        raise DomainError(
            f"doublet must pair kappa < 0 with kappa > 0, got {neg.kappa}, {pos.kappa}"
        )
    if params.symmetry == PSEUDOSPIN:
        if kappa_to_pseudo_l(neg.kappa) != kappa_to_pseudo_l(pos.kappa):
            raise DomainError(
                f"states {neg} and {pos} do not share a pseudo-orbital number"
            )
    else:
        if kappa_to_l_j(neg.kappa)[0] != kappa_to_l_j(pos.kappa)[0]:
            raise DomainError(f"states {neg} and {pos} do not share an orbital number")


@dataclass(frozen=True)
class SplittingReport:
    """Tensor-induced splitting of one degenerate doublet.

    Energies are the negative (hole-side) roots, which exist for every
    bundled state in both limits.  ``delta_e`` is E(kappa > 0 member)
    minus E(kappa < 0 member) at the report's tensor strength, and the
    directions are sign(E_H - E_0) per member.
    """

    tensor_h: float
    state_neg: StateIndex
    state_pos: StateIndex
    label_neg: str
    label_pos: str
    energy_neg: float
    energy_pos: float
    baseline_neg: float
    baseline_pos: float
    delta_e: float
    direction_neg: int
    direction_pos: int


def negative_root(result: SpectrumResult) -> float:
    hits = [r.energy for r in result.roots if r.sign_class == NEGATIVE]
    if not hits:
        raise NoRootFound(
            f"state {result.state} has no negative root; {result.selection_note}"
        )
    return min(hits)


def splitting_report(
    params: ModelParams,
    state_neg: StateIndex,
    state_pos: StateIndex,
    opts: SolveOptions = SolveOptions(),
) -> SplittingReport:
    """Quantify how the tensor term lifts a doublet degeneracy.

    Solves both members at the configured tensor strength and at H = 0.
    With H = 0 the two members are exactly degenerate; a nonzero H pushes
    them to opposite sides of the degenerate level.
    """
    check_doublet(params, state_neg, state_pos)
    params0 = replace(params, tensor_h=0.0)

    e_neg = negative_root(solve_spectrum(EnergyEquation(params, state_neg), opts))
    e_pos = negative_root(solve_spectrum(EnergyEquation(params, state_pos), opts))
    b_neg = negative_root(solve_spectrum(EnergyEquation(params0, state_neg), opts))
    b_pos = negative_root(solve_spectrum(EnergyEquation(params0, state_pos), opts))

    def direction(now: float, base: float) -> int:
        diff = now - base
        return 0 if diff == 0.0 else (1 if diff > 0.0 else -1)

    return SplittingReport(
        tensor_h=params.tensor_h,
        state_neg=state_neg,
        state_pos=state_pos,
        label_neg=state_neg.spectroscopic_label(params.symmetry),
        label_pos=state_pos.spectroscopic_label(params.symmetry),
        energy_neg=e_neg,
        energy_pos=e_pos,
        baseline_neg=b_neg,
        baseline_pos=b_pos,
        delta_e=e_pos - e_neg,
        direction_neg=direction(e_neg, b_neg),
        direction_pos=direction(e_pos, b_pos),
    )
