"""Phase-sequence algebra: pulse families, frame transforms, nesting.

A composite NOT gate is an ordered list of pi-pulse phases.  Two frames
matter: the *applied* frame (phases as programmed on the hardware) and the
*toggling* frame (phases seen by the error terms once the ideal pi pulses
are commuted out).  The transform between them,

    phi'_j = (-1)^(j+1) phi_j + sum_{k<j} (-1)^(k+1) 2 phi_k,

is affine and exactly invertible, so phases are stored as exact affine
values and never reduced mod 2pi (use :func:`normalize_phases` for an
explicit reduction).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from mpmath import mp

from .exceptions import FrameError, MalformedPhaseFileError
from .precision import (
    DOUBLE_DIGITS,
    effective_digits,
    format_scalar,
    is_finite_real,
    working,
)
from .su2 import ErrorModel, Unitary2, _pulse


class Frame(str, Enum):
    APPLIED = "applied"
    TOGGLING = "toggling"


@dataclass(frozen=True)
class PhaseSequence:
    """Ordered pi-pulse phases (first applied first) with a frame tag.

    ``digits`` records the precision the phases were computed at (None means
    machine double); operations default to it so high-precision sequences
    are never silently rounded.
    """

    phases: tuple
    frame: Frame = Frame.APPLIED
    label: str = ""
    digits: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(self.phases))
        object.__setattr__(self, "frame", Frame(self.frame))
        if len(self.phases) == 0:
            raise ValueError("a phase sequence must contain at least one pulse")

    def __len__(self) -> int:
        return len(self.phases)


@dataclass(frozen=True)
class FamilySpec:
    """Parameters selecting a built-in sequence family.

    family: "fn" (recursively nested five-pulse family), "symmetric5"
    (five-pulse symmetric sequence), or "custom" (phases supplied by file).
    """

    family: str
    n: int = 1
    sign: str = "+"
    branch: str = "upper"

    def build(self, digits=None) -> PhaseSequence:
        if self.family == "fn":
            return fn_phases(self.n, sign=self.sign, digits=digits)
        if self.family == "symmetric5":
            return symmetric5_phases(branch=self.branch, digits=digits)
        raise ValueError(f"cannot build family {self.family!r} (custom phases come from a file)")


def _require_frame(seq: PhaseSequence, frame: Frame, op: str):
    if seq.frame is not frame:
        raise FrameError(f"{op} requires a {frame.value}-frame sequence, got {seq.frame.value}")


def fn_phases(n: int, sign: str = "+", digits=None) -> PhaseSequence:
    """Applied-frame phases of the n-th nested five-pulse NOT gate (length 5^n).

    Level 0 is the bare pulse (0); each level wraps the previous one in the
    five-block pattern (3p + prev, p - prev, prev, -p - prev, -3p + prev)
    with p = +-arccos(-1/4).  The sign branch is arbitrary but must be used
    consistently; both are exposed.
    """
    if n < 0:
        raise ValueError(f"nesting depth must be >= 0, got {n}")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    with working(digits) as ctx:
        psi = ctx.acos(ctx.mpf(-1) / 4)
        if sign == "-":
            psi = -psi
        seq = [ctx.mpf(0)]
        for _ in range(n):
            seq = (
                [3 * psi + p for p in seq]
                + [psi - p for p in seq]
                + list(seq)
                + [-psi - p for p in seq]
                + [-3 * psi + p for p in seq]
            )
    label = f"F{n}" if sign == "+" else f"F{n}(-)"
    return PhaseSequence(tuple(seq), Frame.APPLIED, label, digits=digits)


def symmetric5_phases(branch: str = "upper", digits=None) -> PhaseSequence:
    """Applied-frame phases of the symmetric five-pulse NOT gate.

    Pattern (a, b, 2b - 2a, b, a) with the two consistent sign branches
    a = -2 arcsin((5/32)^(1/4)), b = 2a + arccos(-(1 + 2 cos a)/2)  (upper)
    a = +2 arcsin((5/32)^(1/4)), b = 2a - arccos(-(1 + 2 cos a)/2)  (lower).

    The pulse suppresses first- and second-order amplitude errors but its
    toggling-frame phases are antisymmetric, not symmetric, so nesting it
    does not cascade (a fourth-order generator term survives).
    """
    if branch not in ("upper", "lower"):
        raise ValueError(f"branch must be 'upper' or 'lower', got {branch!r}")
    with working(digits) as ctx:
        a = 2 * ctx.asin((ctx.mpf(5) / 32) ** (ctx.mpf(1) / 4))
        if branch == "upper":
            a = -a
            b = 2 * a + ctx.acos(-(1 + 2 * ctx.cos(a)) / 2)
        else:
            b = 2 * a - ctx.acos(-(1 + 2 * ctx.cos(a)) / 2)
        phases = (a, b, 2 * b - 2 * a, b, a)
    return PhaseSequence(phases, Frame.APPLIED, f"S5-{branch}", digits=digits)


def to_toggling(seq: PhaseSequence, digits=None) -> PhaseSequence:
    """Transform applied-frame phases into the toggling frame (same length)."""
    _require_frame(seq, Frame.APPLIED, "to_toggling")
    digits = digits if digits is not None else seq.digits
    with working(digits) as ctx:
        out = []
        acc = ctx.mpf(0)
        for j, p in enumerate(seq.phases, start=1):
            p = ctx.mpf(p)
            s = 1 if j % 2 == 1 else -1
            out.append(s * p + acc)
            acc += s * 2 * p
    return PhaseSequence(tuple(out), Frame.TOGGLING, seq.label, digits=digits)


def from_toggling(seq: PhaseSequence, digits=None) -> PhaseSequence:
    """Exact inverse of :func:`to_toggling`."""
    _require_frame(seq, Frame.TOGGLING, "from_toggling")
    digits = digits if digits is not None else seq.digits
    with working(digits) as ctx:
        out = []
        acc = ctx.mpf(0)
        for j, tp in enumerate(seq.phases, start=1):
            s = 1 if j % 2 == 1 else -1
            p = s * (ctx.mpf(tp) - acc)
            out.append(p)
            acc += s * 2 * p
    return PhaseSequence(tuple(out), Frame.APPLIED, seq.label, digits=digits)


def nest(outer: PhaseSequence, inner: PhaseSequence, digits=None) -> PhaseSequence:
    """Apply the outer phase pattern to the inner sequence in the toggling frame.

    Both sequences are converted to the toggling frame, every pairwise sum
    outer'_i + inner'_j is formed blockwise (outer index major), and the
    result is converted back to the applied frame.  Length multiplies.
    """
    if digits is None:
        cands = [d for d in (outer.digits, inner.digits) if d is not None]
        digits = max(cands) if cands else None
    t_out = _as_toggling(outer, digits)
    t_in = _as_toggling(inner, digits)
    with working(digits) as ctx:
        summed = tuple(ctx.mpf(a) + ctx.mpf(b) for a in t_out.phases for b in t_in.phases)
    label = f"nest({outer.label or '?'}, {inner.label or '?'})"
    tog = PhaseSequence(summed, Frame.TOGGLING, label, digits=digits)
    return from_toggling(tog, digits=digits)


def _as_toggling(seq: PhaseSequence, digits=None) -> PhaseSequence:
    if seq.frame is Frame.TOGGLING:
        return seq
    return to_toggling(seq, digits=digits)


def _as_applied(seq: PhaseSequence, digits=None) -> PhaseSequence:
    if seq.frame is Frame.APPLIED:
        return seq
    return from_toggling(seq, digits=digits)


def normalize_phases(seq: PhaseSequence) -> PhaseSequence:
    """Reduce every phase to (-pi, pi].  Destroys exact affine structure."""
    with working(seq.digits) as ctx:
        two_pi = 2 * ctx.pi
        out = []
        for p in seq.phases:
            r = ctx.mpf(p) % two_pi  # in [0, 2pi)
            if r > ctx.pi:
                r -= two_pi
            out.append(r)
    return replace(seq, phases=tuple(out))


def _wrapped_deviation(ctx, x):
    """Distance of x from the nearest multiple of 2pi."""
    two_pi = 2 * ctx.pi
    r = ctx.mpf(x) % two_pi
    return min(r, two_pi - r)


def is_antisymmetric(seq: PhaseSequence, tol=1e-9) -> bool:
    """True when phi_{N+1-j} = -phi_j (mod 2pi) for all j, within tol."""
    with working(seq.digits) as ctx:
        n = len(seq.phases)
        return all(
            _wrapped_deviation(ctx, seq.phases[j] + seq.phases[n - 1 - j]) <= tol
            for j in range(n)
        )


def is_symmetric(seq: PhaseSequence, tol=1e-9) -> bool:
    """True when phi_{N+1-j} = +phi_j (mod 2pi) for all j, within tol."""
    with working(seq.digits) as ctx:
        n = len(seq.phases)
        return all(
            _wrapped_deviation(ctx, seq.phases[j] - seq.phases[n - 1 - j]) <= tol
            for j in range(n)
        )


def sequence_propagator(seq: PhaseSequence, err: ErrorModel, digits=None) -> Unitary2:
    """Total propagator of the sequence as a train of error-prone pi pulses."""
    _require_frame(seq, Frame.APPLIED, "sequence_propagator")
    digits = digits if digits is not None else seq.digits
    with working(digits) as ctx:
        out = Unitary2(ctx.mpc(1, 0), ctx.mpc(0, 0), ctx.mpc(0, 0), ctx.mpc(1, 0))
        for p in seq.phases:
            out = _pulse(ctx, ctx.pi, p, err.epsilon, err.f) @ out
        return out


# ---------------------------------------------------------------------------
# Phase-file format: {"label": str, "frame": "applied"|"toggling",
#                     "phases_radians": [numbers]}; writers emit >= 17
# significant digits.  Extra keys (e.g. a "config" block) are permitted and
# ignored on read.
# ---------------------------------------------------------------------------


def dump_phase_file(seq: PhaseSequence, path, digits=None, config: dict | None = None) -> None:
    """Write a sequence as a JSON phase file with full-precision numbers."""
    digits = digits if digits is not None else seq.digits
    sig = max(effective_digits(digits), DOUBLE_DIGITS + 1)
    lines = ["{"]
    lines.append(f'  "label": {json.dumps(seq.label)},')
    lines.append(f'  "frame": {json.dumps(seq.frame.value)},')
    body = ",\n".join(f"    {format_scalar(p, sig)}" for p in seq.phases)
    comma = "," if config else ""
    lines.append(f'  "phases_radians": [\n{body}\n  ]{comma}')
    if config:
        cfg = json.dumps(config, indent=2, sort_keys=True)
        cfg = "\n".join("  " + ln for ln in cfg.splitlines())
        lines.append(f'  "config": {cfg.lstrip()}')
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_phase_file(path, digits=None) -> PhaseSequence:
    """Read a JSON phase file; with digits > 16 numbers parse at that precision."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedPhaseFileError(f"cannot read phase file {path}: {exc}") from exc
    d = effective_digits(digits)
    if d > DOUBLE_DIGITS:
        with mp.workdps(d):
            parse = lambda s: mp.mpf(s)  # noqa: E731
            try:
                doc = json.loads(text, parse_float=parse, parse_int=parse)
            except json.JSONDecodeError as exc:
                raise MalformedPhaseFileError(f"invalid JSON in {path}: {exc}") from exc
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedPhaseFileError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedPhaseFileError(f"{path}: expected a JSON object at top level")
    try:
        frame = Frame(doc["frame"])
        phases = doc["phases_radians"]
    except (KeyError, ValueError) as exc:
        raise MalformedPhaseFileError(f"{path}: missing or invalid field: {exc}") from exc
    if not isinstance(phases, list) or not phases:
        raise MalformedPhaseFileError(f"{path}: phases_radians must be a non-empty array")
    for p in phases:
        if isinstance(p, (str, bool)) or not is_finite_real(p):
            raise MalformedPhaseFileError(f"{path}: non-numeric phase entry {p!r}")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise MalformedPhaseFileError(f"{path}: label must be a string")
    return PhaseSequence(tuple(phases), frame, label, digits=digits)
