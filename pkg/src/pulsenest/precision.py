"""Working-precision plumbing shared by the numeric modules.

Two scalar modes are supported: machine doubles (the default, served by
mpmath's ``fp`` context, i.e. plain ``float``/``complex``) and
arbitrary-precision reals with a configurable number of significant decimal
digits (mpmath's ``mp`` context).  A computation binds one mode for its whole
duration via :func:`working`, so precision is never mixed silently inside a
single calculation.

The high-precision mode scopes mpmath's process-global precision, so use
process-based parallelism (not threads) when fanning out high-precision
work; double-mode computations carry no shared state at all.
"""

from __future__ import annotations

import contextlib
import math

from mpmath import fp, mp

# Machine doubles resolve ~15.95 significant decimal digits; requests at or
# below this run on the fast float context.
DOUBLE_DIGITS = 16

# Default for high-precision work when a caller asks for "high" without a
# number (deep nests need ~60 digits before their error terms surface).
HIGH_DIGITS = 60


def effective_digits(digits=None) -> int:
    """Resolve a ``digits`` argument to the decimal precision actually used."""
    if digits is None:
        return DOUBLE_DIGITS
    digits = int(digits)
    if digits < 1:
        raise ValueError(f"precision must be a positive digit count, got {digits}")
    return digits


@contextlib.contextmanager
def working(digits=None):
    """Yield the arithmetic context for ``digits`` significant decimals.

    ``None`` or anything <= 16 selects machine doubles (``mpmath.fp``);
    higher values bind ``mpmath.mp`` to that precision for the duration of
    the block.  The global mp state is restored on exit.
    """
    d = effective_digits(digits)
    if d <= DOUBLE_DIGITS:
        yield fp
    else:
        with mp.workdps(d):
            yield mp


def is_finite_real(x) -> bool:
    """True for finite real scalars (float, int, or mpf); False otherwise."""
    try:
        return math.isfinite(float(x))
    except (TypeError, ValueError, OverflowError):
        return False


def format_scalar(x, digits=None) -> str:
    """Round-trip-exact decimal rendering of a real scalar.

    Doubles use ``repr`` (shortest exact form, up to 17 significant digits);
    higher precisions render ``digits`` significant digits via mpmath.
    """
    d = effective_digits(digits)
    if d <= DOUBLE_DIGITS + 1:
        return repr(float(x))
    with mp.workdps(d):
        return mp.nstr(mp.mpf(x), d)
