"""Extended-precision reals.

Every log-domain quantity in the package is an ``mpmath.mpf`` evaluated at
``PRECISION_BITS`` bits (about 38 significant decimal digits).  The working
precision is set on the shared ``mpmath.mp`` context when this module is
imported.
"""

from __future__ import annotations

from mpmath import mp, mpf

PRECISION_BITS = 128
mp.prec = PRECISION_BITS

RealX = mpf

EULER_GAMMA = +mp.euler
EXP_GAMMA = mp.exp(mp.euler)
LOG2 = mp.log(2)
LOG3 = mp.log(3)
E = +mp.e

# log log 2 < 0; appears in the omega(n) >= k bounds
LOGLOG2 = mp.log(LOG2)


def to_realx(x) -> mpf:
    """Convert ints, strings, floats and mpf to the working precision."""
    return mpf(x)


def digits() -> int:
    """Significant decimal digits currently carried."""
    return mp.dps


def fmt(x, n: int = 20) -> str:
    """Stable decimal rendering used in reports and CSV output."""
    return mp.nstr(mpf(x), n, strip_zeros=False)
