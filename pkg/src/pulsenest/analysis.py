"""Quantitative verification of composite-pulse error suppression.

Three layers of evidence are produced for any phase sequence:

* closed-form first/second-order error terms of the error propagator's
  generator (:func:`delta1`, :func:`delta2`),
* the numerically extracted Taylor series of that generator
  (:func:`generator_taylor`),
* the fitted scaling exponent of infidelity against error size
  (:func:`infidelity_order`) plus raw fidelity sweeps
  (:func:`fidelity_sweep`).

The error propagator itself can be built two independent ways for amplitude
errors: as the toggling-frame product of small rotations or as
U_ideal+ . V; they agree exactly and the agreement is part of the
self-check suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyWindowError, RouteMismatchError, StencilConditionError
from .precision import effective_digits, working
from .sequences import PhaseSequence, _as_applied, _as_toggling
from .su2 import AxisAngle, ErrorModel, Unitary2, _pulse, _rotation, principal_log

ERROR_KINDS = ("amplitude", "offresonance")

# Residual gate (log10 units): a fitted exponent is only rounded to an
# integer order when the line fit is at least this clean.
RESIDUAL_GATE = 0.05


def _check_kind(error_kind: str):
    if error_kind not in ERROR_KINDS:
        raise ValueError(f"error_kind must be one of {ERROR_KINDS}, got {error_kind!r}")


def _identity(ctx) -> Unitary2:
    return Unitary2(ctx.mpc(1, 0), ctx.mpc(0, 0), ctx.mpc(0, 0), ctx.mpc(1, 0))


def _propagator(ctx, phases, epsilon, f) -> Unitary2:
    out = _identity(ctx)
    for p in phases:
        out = _pulse(ctx, ctx.pi, p, epsilon, f) @ out
    return out


def _fidelity(u: Unitary2, v: Unitary2):
    t = (
        u.u00.conjugate() * v.u00
        + u.u10.conjugate() * v.u10
        + u.u01.conjugate() * v.u01
        + u.u11.conjugate() * v.u11
    )
    return abs(t) / 2


def error_propagator(
    seq: PhaseSequence, err: ErrorModel, digits=None, route: str = "auto"
) -> Unitary2:
    """Residual unitary multiplying the sequence's ideal propagator.

    Routes:

    * ``"toggling"``: product of rotations by epsilon*pi about the
      toggling-frame axes (amplitude errors only; the factorization is
      derived for them).
    * ``"direct"``: U_ideal+ . V with V the error-prone propagator; valid
      for any error model.
    * ``"auto"``: toggling when err.f == 0, direct otherwise.
    * ``"both"``: compute both, raise :class:`RouteMismatchError` if they
      disagree beyond roundoff (internal consistency check).

    For amplitude errors the two routes agree to working precision.
    """
    if route not in ("auto", "toggling", "direct", "both"):
        raise ValueError(f"unknown route {route!r}")
    if route in ("toggling", "both") and err.f != 0:
        raise ValueError("the toggling-frame factorization requires f = 0")
    if route == "auto":
        route = "toggling" if err.f == 0 else "direct"
    digits = digits if digits is not None else seq.digits
    seq = _as_applied(seq, digits)
    with working(digits) as ctx:
        toggled = direct = None
        if route in ("toggling", "both"):
            tog = _as_toggling(seq, digits)
            delta = ctx.mpf(err.epsilon) * ctx.pi
            toggled = _identity(ctx)
            for p in tog.phases:
                toggled = _rotation(ctx, delta, p) @ toggled
        if route in ("direct", "both"):
            ideal = _propagator(ctx, seq.phases, 0, 0)
            noisy = _propagator(ctx, seq.phases, err.epsilon, err.f)
            direct = ideal.dagger() @ noisy
        if route == "both":
            tol = 100 * len(seq) * ctx.mpf(10) ** (1 - effective_digits(digits))
            dev = toggled.max_diff(direct)
            if dev > tol:
                raise RouteMismatchError(
                    f"error-propagator routes disagree by {float(dev):.3e} "
                    f"(tolerance {float(tol):.3e}) for {seq.label or 'sequence'}"
                )
        return direct if toggled is None else toggled


def delta1(seq: PhaseSequence, digits=None) -> AxisAngle:
    """First-order error term per unit rotation error delta = epsilon*pi.

    Returns the xy-plane vector v = (sum cos phi'_j, sum sin phi'_j, 0) over
    the toggling-frame phases; the operator term is (delta/2) (v . sigma).
    Vanishing v means first-order amplitude errors are suppressed.
    """
    digits = digits if digits is not None else seq.digits
    tog = _as_toggling(seq, digits)
    with working(digits) as ctx:
        vx = sum(ctx.cos(ctx.mpf(p)) for p in tog.phases)
        vy = sum(ctx.sin(ctx.mpf(p)) for p in tog.phases)
        return AxisAngle(vx, vy, ctx.mpf(0))


def delta2(seq: PhaseSequence, digits=None):
    """Second-order error coefficient per unit delta^2.

    Returns s = -(1/4) sum_{j>k} sin(phi'_j - phi'_k); the operator term is
    delta^2 * s * sigma_z.  Zero for symmetric toggling-frame phases.
    """
    digits = digits if digits is not None else seq.digits
    tog = _as_toggling(seq, digits)
    with working(digits) as ctx:
        ps = [ctx.mpf(p) for p in tog.phases]
        total = ctx.mpf(0)
        for j in range(len(ps)):
            for k in range(j):
                total += ctx.sin(ps[j] - ps[k])
        return -total / 4


@dataclass(frozen=True)
class GeneratorSeries:
    """Taylor coefficients c_k of the error generator, k = 1..max_order.

    The error propagator is exp(-i (n(x) . sigma) / 2) with
    n(x) ~ sum_k c_k x^k around x = 0, where x is the amplitude fraction or
    the off-resonance fraction depending on ``error_kind``.  ``noise[k-1]``
    estimates the numerical uncertainty of c_k (stencil truncation plus
    roundoff); a coefficient is only meaningful when it clears that floor.
    """

    terms: tuple[AxisAngle, ...]
    noise: tuple[float, ...]
    error_kind: str
    digits: int
    stencil_h: float
    epsilon_ref: float = 0.0

    RESOLVE_FACTOR = 100.0

    @property
    def max_order(self) -> int:
        return len(self.terms)

    def term_magnitude(self, k: int) -> float:
        return float(self.terms[k - 1].magnitude())

    def resolved(self, k: int) -> bool:
        """True when c_k stands clear of its numerical noise floor."""
        return self.term_magnitude(k) > self.RESOLVE_FACTOR * self.noise[k - 1]

    def first_resolved_order(self) -> int | None:
        for k in range(1, self.max_order + 1):
            if self.resolved(k):
                return k
        return None

    def evaluate(self, x) -> AxisAngle:
        """Sum of the series at error size x (double precision)."""
        nx = ny = nz = 0.0
        for k, c in enumerate(self.terms, start=1):
            w = float(x) ** k
            nx += float(c.nx) * w
            ny += float(c.ny) * w
            nz += float(c.nz) * w
        return AxisAngle(nx, ny, nz)


def _stencil_coefficients(ctx, g_at, K, h):
    """Solve the parity-split Vandermonde systems for c_1..c_K.

    g_at maps integer m to the generator vector at x = m*h.  Odd and even
    parts of g are fitted separately: the odd part sees only odd powers and
    the even part only even powers, halving each system.
    """
    n_odd = (K + 1) // 2
    n_even = K // 2
    coeffs = [[ctx.mpf(0)] * 3 for _ in range(K)]

    def solve(powers, combine):
        if not powers:
            return
        size = len(powers)
        A = ctx.matrix(size, size)
        for i, m in enumerate(range(1, size + 1)):
            for j, k in enumerate(powers):
                A[i, j] = ctx.mpf(m) ** k
        cond = ctx.mnorm(A, 1) * ctx.mnorm(A**-1, 1)
        if cond > ctx.mpf(10) ** ctx.dps:
            raise StencilConditionError(
                f"stencil system condition ~{ctx.nstr(cond, 3)} exceeds 10^{ctx.dps}; "
                "reduce max_order or raise precision"
            )
        for comp in range(3):
            b = ctx.matrix([combine(m, comp) for m in range(1, size + 1)])
            sol = ctx.lu_solve(A, b)
            for j, k in enumerate(powers):
                coeffs[k - 1][comp] = sol[j] / h**k

    solve(
        [2 * j + 1 for j in range(n_odd)],
        lambda m, comp: (g_at[m][comp] - g_at[-m][comp]) / 2,
    )
    solve(
        [2 * j + 2 for j in range(n_even)],
        lambda m, comp: (g_at[m][comp] + g_at[-m][comp]) / 2,
    )
    return coeffs


def generator_taylor(
    seq: PhaseSequence, error_kind: str = "amplitude", max_order: int = 8, digits=None
) -> GeneratorSeries:
    """Extract c_1..c_max_order of the error generator numerically.

    The generator n(x) = -2i log(error propagator) is evaluated on the
    stencil x in {+-h, ..., +-M h} with h = 10^(-digits / (2 max_order)),
    and the Taylor coefficients come from exact solves of the parity-split
    Vandermonde systems.  A second stencil at a slightly larger h yields
    per-coefficient noise estimates.  Around 10*max_order digits are needed
    for the full set of coefficients to be meaningful.
    """
    _check_kind(error_kind)
    if not 1 <= max_order <= 12:
        raise ValueError(f"max_order must be in 1..12, got {max_order}")
    if digits is None:
        digits = max(40, 10 * max_order)
    # The stencil solve always runs in the arbitrary-precision context.
    digits = max(effective_digits(digits), 16)
    seq_applied = _as_applied(seq, max(digits, effective_digits(seq.digits)))
    n_pulses = len(seq_applied)
    # A few guard digits absorb roundoff from the pulse products themselves.
    with working(digits + 10) as ctx:
        phases = [ctx.mpf(p) for p in seq_applied.phases]
        ideal_dag = _propagator(ctx, phases, 0, 0).dagger()

        def g(x):
            if error_kind == "amplitude":
                noisy = _propagator(ctx, phases, x, 0)
            else:
                noisy = _propagator(ctx, phases, 0, x)
            return principal_log(ideal_dag @ noisy, digits=digits + 10)

        h = ctx.mpf(10) ** (-ctx.mpf(digits) / (2 * max_order))
        n_odd = (max_order + 1) // 2
        results = []
        for href in (h, h * ctx.mpf(10) ** ctx.mpf("0.25")):
            g_at = {}
            for m in range(1, n_odd + 1):
                g_at[m] = g(m * href)
                g_at[-m] = g(-m * href)
            results.append(_stencil_coefficients(ctx, g_at, max_order, href))
        primary, secondary = results
        terms = tuple(
            AxisAngle(float(c[0]), float(c[1]), float(c[2])) for c in primary
        )
        noise = []
        for k in range(1, max_order + 1):
            drift = max(
                abs(float(a - b)) for a, b in zip(primary[k - 1], secondary[k - 1])
            )
            roundoff = n_pulses * 10.0 ** (2 - digits) / float(h) ** k
            noise.append(drift + roundoff)
        return GeneratorSeries(
            terms=terms,
            noise=tuple(noise),
            error_kind=error_kind,
            digits=digits,
            stencil_h=float(h),
        )


@dataclass(frozen=True)
class OrderEstimate:
    """Fitted infidelity scaling 1 - F ~ coefficient * x^exponent.

    ``rounded_order`` is None unless the max log10 residual of the line fit
    beats :data:`RESIDUAL_GATE`; the residual itself is always reported.
    ``window`` is the (x_min, x_max) range of the points actually fitted.
    """

    exponent: float
    rounded_order: int | None
    coefficient: float
    window: tuple[float, float]
    residual: float
    npoints: int
    digits: int
    error_kind: str

    def as_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "rounded_order": self.rounded_order,
            "coefficient": self.coefficient,
            "window": list(self.window),
            "residual": self.residual,
            "precision": self.digits,
            "npoints": self.npoints,
            "error_kind": self.error_kind,
        }


def _line_fit(pts):
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    A = np.vstack([x, np.ones_like(x)]).T
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    residual = float(np.max(np.abs(A @ sol - y)))
    return float(sol[0]), float(sol[1]), residual


def _trimmed_fit(pts, min_points=5):
    """Least-squares line, dropping largest-x points until the gate passes."""
    pts = sorted(pts)
    while True:
        slope, intercept, residual = _line_fit(pts)
        if residual < RESIDUAL_GATE or len(pts) <= min_points:
            return slope, intercept, residual, pts
        pts = pts[:-1]


def _collect_ladder(ctx, infid_at, lo, hi, per_decade, x_start, max_steps):
    """Geometric descent in x, keeping points whose infidelity is in [lo, hi].

    max_steps caps the descent so precision-poisoned inputs (whose
    infidelity floors above lo and never exits the window) still terminate;
    such inputs are then caught by the residual gate.
    """
    pts = []
    ratio = ctx.mpf(10) ** (ctx.mpf(1) / per_decade)
    x = x_start
    for _ in range(max_steps):
        infid = infid_at(x)
        if infid <= 0 or infid < lo:
            break
        if infid <= hi:
            pts.append((float(ctx.log10(x)), float(ctx.log10(infid)), x))
        x /= ratio
    return pts


def infidelity_order(
    seq: PhaseSequence, error_kind: str = "amplitude", digits=None
) -> OrderEstimate:
    """Fit the scaling exponent of 1 - F(pi_0, sequence) against error size.

    Infidelity is sampled on a geometric ladder of error sizes and fitted
    with log-log least squares inside the window
    [10^(6-digits), 10^-4]: the lower bound keeps six digits above the
    roundoff floor.  A first coarse pass locates the scaling region; the
    fit is then refined on the lowest ~10 decades of infidelity, where the
    asymptotic slope is clean even for steep high-order sequences.
    """
    _check_kind(error_kind)
    digits = digits if digits is not None else seq.digits
    d = effective_digits(digits)
    seq_applied = _as_applied(seq, digits)
    with working(digits) as ctx:
        phases = [ctx.mpf(p) for p in seq_applied.phases]
        target = _rotation(ctx, ctx.pi, 0)

        def infid_at(x):
            if error_kind == "amplitude":
                v = _propagator(ctx, phases, x, 0)
            else:
                v = _propagator(ctx, phases, 0, x)
            return 1 - _fidelity(target, v)

        lo = ctx.mpf(10) ** (6 - d)
        hi = ctx.mpf(10) ** -4
        coarse = _collect_ladder(ctx, infid_at, lo, hi, 12, ctx.mpf("0.5"), max_steps=600)
        if len(coarse) < 3:
            raise EmptyWindowError(
                f"only {len(coarse)} infidelity samples fell in [1e{6 - d}, 1e-4] "
                f"at precision {d}; rerun with higher precision (the sequence's "
                "suppression order exceeds what this precision can resolve)"
            )
        slope0, _, _, _ = _trimmed_fit([(a, b) for a, b, _ in coarse])

        # Refine on the deepest decades: window top capped 10 infidelity
        # decades above the floor, ladder density scaled so ~12 points fit.
        refine_decades = 10
        hi2 = min(hi, lo * ctx.mpf(10) ** refine_decades)
        span_eps = refine_decades / max(slope0, 1.0)
        per_decade = min(max(int(math.ceil(12 / min(span_eps, 10))), 12), 400)
        x_top = max(x for _, _, x in coarse)
        max_steps = int(per_decade * (refine_decades + 4) / max(slope0, 1.0)) + 48
        fine = _collect_ladder(
            ctx, infid_at, lo, hi2, per_decade, x_top * ctx.mpf("1.2"), max_steps
        )
        if len(fine) >= 6:
            slope, intercept, residual, used = _trimmed_fit([(p[0], p[1]) for p in fine])
        else:
            slope, intercept, residual, used = _trimmed_fit([(a, b) for a, b, _ in coarse])
        window = (10.0 ** used[0][0], 10.0 ** used[-1][0])
        rounded = round(slope) if residual < RESIDUAL_GATE else None
        return OrderEstimate(
            exponent=slope,
            rounded_order=rounded,
            coefficient=10.0**intercept,
            window=window,
            residual=residual,
            npoints=len(used),
            digits=d,
            error_kind=error_kind,
        )


@dataclass(frozen=True)
class SweepResult:
    """Tabulated (epsilon, f, fidelity, infidelity) samples for export."""

    rows: tuple
    sequence_label: str


def fidelity_sweep(seq: PhaseSequence, eps_grid, f_grid=(0.0,), digits=None) -> SweepResult:
    """Fidelity against the target pi_0 over a grid of error parameters.

    One row per (epsilon, f) pair, epsilon-major, deterministic order.
    """
    eps_grid = list(eps_grid)
    f_grid = list(f_grid)
    if not eps_grid or not f_grid:
        raise ValueError("sweep grids must be non-empty")
    digits = digits if digits is not None else seq.digits
    seq_applied = _as_applied(seq, digits)
    with working(digits) as ctx:
        phases = [ctx.mpf(p) for p in seq_applied.phases]
        target = _rotation(ctx, ctx.pi, 0)
        rows = []
        for eps in eps_grid:
            for f in f_grid:
                fid = _fidelity(target, _propagator(ctx, phases, ctx.mpf(eps), ctx.mpf(f)))
                fid = min(fid, ctx.mpf(1))
                rows.append((eps, f, fid, 1 - fid))
    return SweepResult(rows=tuple(rows), sequence_label=seq.label)
