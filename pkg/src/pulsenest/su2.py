"""Precision-abstracted 2x2 unitary arithmetic for pi-pulse simulation.

Rotations follow the convention

    R(theta, phi) = exp(-i theta sigma_phi / 2)
                  = cos(theta/2) I - i sin(theta/2) sigma_phi,
    sigma_phi     = cos(phi) sigma_x + sin(phi) sigma_y,

with theta the rotation angle and phi the phase fixing the axis in the
xy-plane of the Bloch sphere.  Propagators are written with time running
right to left, so :func:`compose` places later pulses on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import AmbiguousRotationError
from .precision import is_finite_real, working


class AxisAngle(NamedTuple):
    """Rotation-generator vector n: the unitary is exp(-i (n . sigma) / 2)."""

    nx: float
    ny: float
    nz: float

    def magnitude(self):
        return (self.nx * self.nx + self.ny * self.ny + self.nz * self.nz) ** 0.5


@dataclass(frozen=True)
class ErrorModel:
    """Systematic pulse errors.

    epsilon: fractional amplitude error; every rotation angle is scaled
        by (1 + epsilon).
    f: fractional off-resonance error; adds f * sigma_z to the rotation
        generator, in units of the nominal control-field amplitude.

    (0, 0) is the error-free pulse.
    """

    epsilon: float = 0.0
    f: float = 0.0

    def __post_init__(self):
        if not is_finite_real(self.epsilon) or not is_finite_real(self.f):
            raise ValueError(
                f"error fractions must be finite, got epsilon={self.epsilon!r} f={self.f!r}"
            )


NO_ERROR = ErrorModel(0.0, 0.0)


class Unitary2(NamedTuple):
    """Immutable 2x2 unitary with complex entries in a single precision.

    Entries are plain ``complex`` in double mode and ``mpmath.mpc`` in
    high-precision mode; all methods are pure.
    """

    u00: complex
    u01: complex
    u10: complex
    u11: complex

    @classmethod
    def identity(cls) -> "Unitary2":
        return cls(1.0 + 0.0j, 0.0j, 0.0j, 1.0 + 0.0j)

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        a, b, c, d = self
        e, f, g, h = other
        return Unitary2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def dagger(self) -> "Unitary2":
        a, b, c, d = self
        return Unitary2(a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate())

    def trace(self):
        return self.u00 + self.u11

    def det(self):
        return self.u00 * self.u11 - self.u01 * self.u10

    def to_array(self) -> np.ndarray:
        """Entries as a numpy complex128 array (lossy in high-precision mode)."""
        return np.array(
            [[complex(self.u00), complex(self.u01)], [complex(self.u10), complex(self.u11)]]
        )

    def max_diff(self, other: "Unitary2"):
        """Largest entrywise absolute difference."""
        return max(abs(x - y) for x, y in zip(self, other))

    def unitarity_defect(self):
        """Largest entrywise deviation of U+ U from the identity."""
        return (self.dagger() @ self).max_diff(Unitary2.identity())


def _require_finite(**angles):
    for name, value in angles.items():
        if not is_finite_real(value):
            raise ValueError(f"{name} must be a finite real number, got {value!r}")


def _rotation(ctx, theta, phi) -> Unitary2:
    half = ctx.mpf(theta) / 2
    c, s = ctx.cos(half), ctx.sin(half)
    cp, sp = ctx.cos(ctx.mpf(phi)), ctx.sin(ctx.mpf(phi))
    # -i sin(theta/2) sigma_phi fills the off-diagonal; cos(theta/2) the diagonal.
    return Unitary2(
        ctx.mpc(c, 0),
        ctx.mpc(-s * sp, -s * cp),
        ctx.mpc(s * sp, -s * cp),
        ctx.mpc(c, 0),
    )


def _pulse(ctx, theta, phi, epsilon, f) -> Unitary2:
    if f == 0:
        return _rotation(ctx, ctx.mpf(theta) * (1 + ctx.mpf(epsilon)), phi)
    a = 1 + ctx.mpf(epsilon)
    fz = ctx.mpf(f)
    r = ctx.sqrt(a * a + fz * fz)
    half = ctx.mpf(theta) * r / 2
    c, s = ctx.cos(half), ctx.sin(half)
    nx = a * ctx.cos(ctx.mpf(phi)) / r
    ny = a * ctx.sin(ctx.mpf(phi)) / r
    nz = fz / r
    return Unitary2(
        ctx.mpc(c, -s * nz),
        ctx.mpc(-s * ny, -s * nx),
        ctx.mpc(s * ny, -s * nx),
        ctx.mpc(c, s * nz),
    )


def make_rotation(theta, phi, digits=None) -> Unitary2:
    """Ideal rotation by ``theta`` about the xy-plane axis at phase ``phi``."""
    _require_finite(theta=theta, phi=phi)
    with working(digits) as ctx:
        return _rotation(ctx, theta, phi)


def make_pulse(theta, phi, err: ErrorModel, digits=None) -> Unitary2:
    """Error-prone rotation: exp(-i (theta/2) [(1+epsilon) sigma_phi + f sigma_z]).

    With ``f = 0`` this takes the exact same code path as
    ``make_rotation(theta * (1 + epsilon), phi)``; with ``epsilon = f = 0``
    it reduces to the ideal rotation.
    """
    _require_finite(theta=theta, phi=phi)
    with working(digits) as ctx:
        return _pulse(ctx, theta, phi, err.epsilon, err.f)


def compose(pulses: Sequence[Unitary2], digits=None) -> Unitary2:
    """Product of unitaries given in application order (first applied first).

    Returns U_N ... U_2 U_1, the last-applied factor leftmost.
    """
    pulses = list(pulses)
    if not pulses:
        raise ValueError("compose requires at least one unitary")
    with working(digits):
        out = pulses[0]
        for u in pulses[1:]:
            out = u @ out
        return out


def fidelity(u: Unitary2, v: Unitary2, digits=None):
    """Propagator fidelity |tr(U+ V)| / 2; symmetric and global-phase invariant."""
    with working(digits):
        t = (
            u.u00.conjugate() * v.u00
            + u.u10.conjugate() * v.u10
            + u.u01.conjugate() * v.u01
            + u.u11.conjugate() * v.u11
        )
        return abs(t) / 2


def exp_generator(n: AxisAngle, digits=None) -> Unitary2:
    """Exponentiate a generator vector: exp(-i (n . sigma) / 2)."""
    with working(digits) as ctx:
        nx, ny, nz = (ctx.mpf(v) for v in n)
        mag = ctx.sqrt(nx * nx + ny * ny + nz * nz)
        if mag == 0:
            return Unitary2(ctx.mpc(1, 0), ctx.mpc(0, 0), ctx.mpc(0, 0), ctx.mpc(1, 0))
        c, s = ctx.cos(mag / 2), ctx.sin(mag / 2)
        ux, uy, uz = nx / mag, ny / mag, nz / mag
        return Unitary2(
            ctx.mpc(c, -s * uz),
            ctx.mpc(-s * uy, -s * ux),
            ctx.mpc(s * uy, -s * ux),
            ctx.mpc(c, s * uz),
        )


def principal_log(u: Unitary2, digits=None) -> AxisAngle:
    """Generator vector n with |n| < pi such that U = +-exp(-i (n . sigma) / 2).

    The branch is fixed by flipping the overall sign of U until
    Re tr(U) >= 0, which maps rotation angles into [0, pi).  A rotation at
    exactly pi has a well-defined axis but an ambiguous sign and raises
    :class:`AmbiguousRotationError`.

    Input must be special-unitary up to sign (det U = 1); a general global
    phase is rejected.
    """
    with working(digits) as ctx:
        det = u.det()
        if abs(det - 1) > ctx.mpf("1e-6"):
            raise ValueError(
                f"principal_log expects det U = 1 (got det = {complex(det):.6g}); "
                "strip any global phase first"
            )
        w = ((u.u00 + u.u11) / 2).real
        x = -((u.u01 + u.u10).imag) / 2
        y = ((u.u10 - u.u01).real) / 2
        z = -((u.u00 - u.u11).imag) / 2
        if w < 0:
            w, x, y, z = -w, -x, -y, -z
        vnorm = ctx.sqrt(x * x + y * y + z * z)
        # w = cos(angle/2): an angle of exactly pi leaves the generator sign
        # undetermined.
        if w <= ctx.mpf(10) ** (-(ctx.dps if hasattr(ctx, "dps") else 16) + 2):
            raise AmbiguousRotationError(
                "rotation angle is pi to working precision; the generator sign "
                "is undefined (perturb the input to pick a branch)"
            )
        if vnorm == 0:
            zero = ctx.mpf(0)
            return AxisAngle(zero, zero, zero)
        angle = 2 * ctx.atan2(vnorm, w)
        return AxisAngle(angle * x / vnorm, angle * y / vnorm, angle * z / vnorm)
