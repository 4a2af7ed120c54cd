"""Cross-module invariant suite behind the ``check`` command.

Each check returns a :class:`CheckResult`; the suite is deterministic
(fixed seeds, fixed ordering) so its console output is reproducible
byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import delta1, delta2, error_propagator, generator_taylor, infidelity_order
from .exceptions import EmptyWindowError
from .sequences import (
    Frame,
    PhaseSequence,
    fn_phases,
    from_toggling,
    is_antisymmetric,
    is_symmetric,
    sequence_propagator,
    to_toggling,
)
from .su2 import ErrorModel, compose, fidelity, make_rotation


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _random_antisymmetric(rng, length: int) -> PhaseSequence:
    # Odd length: phi_{N+1-j} = -phi_j forces a zero middle phase.
    half = rng.uniform(-math.pi, math.pi, size=length // 2)
    phases = list(half) + [0.0] + [-p for p in half[::-1]]
    return PhaseSequence(tuple(phases), Frame.APPLIED, "random-antisym")


def _random_symmetric_toggling(rng, length: int) -> PhaseSequence:
    half = rng.uniform(-math.pi, math.pi, size=(length + 1) // 2)
    phases = list(half) + list(half[: length // 2][::-1])
    return PhaseSequence(tuple(phases), Frame.TOGGLING, "random-sym-toggling")


def check_pi_commutation(n: int = 1000, tol: float = 1e-12, seed: int = 0) -> CheckResult:
    """theta_b pi_a = pi_a theta_{2a-b} entrywise, for random angles."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(n):
        theta, a, b = rng.uniform(-2 * math.pi, 2 * math.pi, size=3)
        lhs = compose([make_rotation(math.pi, a), make_rotation(theta, b)])
        rhs = compose([make_rotation(theta, 2 * a - b), make_rotation(math.pi, a)])
        worst = max(worst, float(lhs.max_diff(rhs)))
    return CheckResult(
        "pi_commutation_identity", worst <= tol, f"max entrywise dev {worst:.3e} over {n} triples"
    )


def check_toggling_roundtrip(n: int = 100, length: int = 9, tol: float = 1e-12,
                             seed: int = 1) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    for _ in range(n):
        seq = PhaseSequence(tuple(rng.uniform(-math.pi, math.pi, size=length)), Frame.APPLIED)
        back = from_toggling(to_toggling(seq))
        worst = max(
            worst, max(abs(a - b) for a, b in zip(seq.phases, back.phases))
        )
    return CheckResult(
        "toggling_roundtrip", worst <= tol, f"max roundtrip dev {worst:.3e} over {n} sequences"
    )


def check_antisymmetric_structure(n: int = 500, tol: float = 1e-12, seed: int = 2) -> CheckResult:
    """Antisymmetric phases: symmetric toggling frame and an ideal pi_0 gate."""
    rng = _rng(seed)
    target = make_rotation(math.pi, 0.0)
    worst_fid = 1.0
    all_flags = True
    for i in range(n):
        length = int(rng.integers(1, 6)) * 2 + 1  # odd lengths 3..11
        seq = _random_antisymmetric(rng, length)
        all_flags &= is_antisymmetric(seq)
        all_flags &= is_symmetric(to_toggling(seq))
        fid = fidelity(target, sequence_propagator(seq, ErrorModel()))
        worst_fid = min(worst_fid, float(fid))
    ok = all_flags and (1 - worst_fid) <= tol
    return CheckResult(
        "antisymmetric_structure",
        ok,
        f"predicates {'ok' if all_flags else 'VIOLATED'}, worst ideal fidelity 1-{1 - worst_fid:.3e}",
    )


def check_symmetric_delta2(n: int = 500, tol: float = 1e-12, seed: int = 3) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    for _ in range(n):
        length = int(rng.integers(2, 12))
        seq = _random_symmetric_toggling(rng, length)
        worst = max(worst, abs(float(delta2(seq))))
    return CheckResult(
        "symmetric_toggling_delta2", worst <= tol, f"max |delta2| {worst:.3e} over {n} sequences"
    )


def check_f1_delta1(tol: float = 1e-12) -> CheckResult:
    v = delta1(fn_phases(1))
    mag = float(v.magnitude())
    return CheckResult("f1_delta1_cancellation", mag <= tol, f"|delta1(F1)| = {mag:.3e}")


def check_route_equivalence(n: int = 100, tol: float = 1e-12, seed: int = 4) -> CheckResult:
    """Toggling-frame error factor vs U_ideal+ . V for random sequences."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(n):
        length = int(rng.integers(1, 8))
        seq = PhaseSequence(tuple(rng.uniform(-math.pi, math.pi, size=length)), Frame.APPLIED)
        for eps in (0.1, -0.1, 0.5, -0.5):
            err = ErrorModel(epsilon=eps)
            a = error_propagator(seq, err, route="toggling")
            b = error_propagator(seq, err, route="direct")
            worst = max(worst, float(a.max_diff(b)))
    return CheckResult(
        "error_propagator_routes", worst <= tol, f"max entrywise dev {worst:.3e} over {n} sequences"
    )


def check_delta_vs_taylor(n: int = 100, tol: float = 1e-9, seed: int = 5,
                          digits: int = 30) -> CheckResult:
    """Closed-form delta1/delta2 against numerically extracted c_1/c_2.

    Conventions: c_1 = pi * delta1 vector and c_2 = (0, 0, 2 pi^2 delta2).
    """
    rng = _rng(seed)
    worst = 0.0
    for _ in range(n):
        length = int(rng.integers(1, 8))
        seq = PhaseSequence(tuple(rng.uniform(-math.pi, math.pi, size=length)), Frame.APPLIED)
        series = generator_taylor(seq, "amplitude", max_order=2, digits=digits)
        v1 = delta1(seq)
        c1_pred = (math.pi * float(v1.nx), math.pi * float(v1.ny), 0.0)
        c2z_pred = 2 * math.pi**2 * float(delta2(seq))
        c1, c2 = series.terms[0], series.terms[1]
        dev = max(
            abs(c1.nx - c1_pred[0]),
            abs(c1.ny - c1_pred[1]),
            abs(c1.nz),
            abs(c2.nx),
            abs(c2.ny),
            abs(c2.nz - c2z_pred),
        )
        worst = max(worst, dev)
    return CheckResult(
        "delta_terms_vs_taylor", worst <= tol, f"max |analytic - numeric| {worst:.3e} over {n} sequences"
    )


def check_xy_confinement(digits: int = 60, max_order: int = 8,
                         rel_tol: float = 1e-10) -> CheckResult:
    """Resolvable generator terms of the first nested gate stay in the xy-plane."""
    series = generator_taylor(fn_phases(1, digits=digits), "amplitude",
                              max_order=max_order, digits=digits)
    worst = 0.0
    resolved = []
    for k in range(1, series.max_order + 1):
        if series.resolved(k):
            resolved.append(k)
            c = series.terms[k - 1]
            worst = max(worst, abs(c.nz) / series.term_magnitude(k))
    ok = bool(resolved) and worst <= rel_tol
    return CheckResult(
        "xy_plane_confinement",
        ok,
        f"resolved orders {resolved}, max relative z {worst:.3e}",
    )


def check_even_orders_vanish(n: int = 25, seed: int = 6, digits: int = 30,
                             tol: float = 1e-9) -> CheckResult:
    """c_2 vanishes entirely for random antisymmetric pi-sequences."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(n):
        length = int(rng.integers(1, 6)) * 2 + 1
        seq = _random_antisymmetric(rng, length)
        series = generator_taylor(seq, "amplitude", max_order=2, digits=digits)
        c2 = series.terms[1]
        worst = max(worst, abs(c2.nx), abs(c2.ny), abs(c2.nz))
    return CheckResult(
        "antisymmetric_even_orders", worst <= tol, f"max |c_2| component {worst:.3e} over {n} sequences"
    )


def check_offresonance_parity(digits: int = 50, seed: int = 7,
                              rel_tol: float = 1e-10) -> CheckResult:
    """Off-resonance error terms of a single pi pulse: even orders parallel
    to the pulse axis, odd orders perpendicular, all in the xy-plane."""
    rng = _rng(seed)
    worst = 0.0
    for phi in rng.uniform(-math.pi, math.pi, size=3):
        seq = PhaseSequence((float(phi),), Frame.APPLIED)
        series = generator_taylor(seq, "offresonance", max_order=6, digits=digits)
        cphi, sphi = math.cos(phi), math.sin(phi)
        for k in range(1, series.max_order + 1):
            if not series.resolved(k):
                continue
            c = series.terms[k - 1]
            mag = series.term_magnitude(k)
            parallel = c.nx * cphi + c.ny * sphi
            perp = -c.nx * sphi + c.ny * cphi
            off_component = abs(perp) if k % 2 == 0 else abs(parallel)
            worst = max(worst, off_component / mag, abs(c.nz) / mag)
    return CheckResult(
        "offresonance_parity_orientation",
        worst <= rel_tol,
        f"max relative misaligned component {worst:.3e}",
    )


def check_fn_order(n: int, digits=None) -> CheckResult:
    """Fitted infidelity order of the n-th nested gate equals 2 * 3^n."""
    name = f"fn_order_n{n}"
    expected = 2 * 3**n
    try:
        est = infidelity_order(fn_phases(n, digits=digits), "amplitude", digits=digits)
    except EmptyWindowError as exc:
        return CheckResult(name, True, f"skipped: {exc}", skipped=True)
    ok = est.rounded_order == expected
    return CheckResult(
        name,
        ok,
        f"exponent {est.exponent:.3f}, rounded {est.rounded_order}, "
        f"expected {expected}, residual {est.residual:.4f}",
    )


def run_all(orders=(), digits=None) -> list[CheckResult]:
    """Run the full invariant suite; ``orders`` adds scaling checks for F_n."""
    results = [
        check_pi_commutation(),
        check_toggling_roundtrip(),
        check_antisymmetric_structure(),
        check_symmetric_delta2(),
        check_f1_delta1(),
        check_route_equivalence(),
        check_delta_vs_taylor(),
        check_xy_confinement(),
        check_even_orders_vanish(),
        check_offresonance_parity(),
    ]
    for n in orders:
        results.append(check_fn_order(n, digits=digits))
    return results
