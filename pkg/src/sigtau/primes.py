"""Prime tables, primorials and the explicit prime-bound helpers.

The sieve is segmented and stores odd numbers only, so a table up to
``HEAVY_LIMIT`` (just over 10**8) stays well under a few hundred MB.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from .errors import DomainError, RangeError
from .realx import EXP_GAMMA, LOG2, LOGLOG2

DEFAULT_LIMIT = 2_500_000
HEAVY_LIMIT = 10**8 + 100
SEGMENT_ODDS = 1 << 21

# index thresholds of the omega(n) >= k argument
K0 = 15985
K1 = 166000
K2 = 5761456  # pi(10**8) + 1

LAMBDA_FLOOR = mpf("0.9427")


def default_limit() -> int:
    env = os.environ.get("SIGTAU_SIEVE_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit``, as a strictly increasing int64 array."""

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def p(self, k: int) -> int:
        """The k-th prime, 1-indexed (p(1) == 2)."""
        if k < 1:
            raise DomainError(f"prime index must be >= 1, got {k}")
        if k > len(self.primes):
            raise RangeError(f"p_{k} is beyond the sieve limit {self.limit}")
        return int(self.primes[k - 1])

    def pi(self, x: float) -> int:
        """Number of primes <= x."""
        if x > self.limit:
            raise RangeError(f"pi({x}) is beyond the sieve limit {self.limit}")
        return int(np.searchsorted(self.primes, math.floor(x), side="right"))

    def upto(self, x: float) -> np.ndarray:
        return self.primes[: self.pi(x)]

    def index_of(self, p: int) -> int:
        """1-based index k with p_k == p."""
        k = self.pi(p)
        if k == 0 or self.primes[k - 1] != p:
            raise DomainError(f"{p} is not prime")
        return k

    def is_prime(self, n: int) -> bool:
        if n < 2:
            return False
        if n > self.limit:
            raise RangeError(f"{n} is beyond the sieve limit {self.limit}")
        k = int(np.searchsorted(self.primes, n))
        return k < len(self.primes) and self.primes[k] == n


def _small_primes(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(n) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return np.flatnonzero(flags)


def sieve(limit: int, segment_odds: int = SEGMENT_ODDS) -> PrimeTable:
    """Segmented odd-only sieve of Eratosthenes up to ``limit`` inclusive."""
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    base = _small_primes(math.isqrt(limit) + 1)[1:]  # odd base primes
    chunks = [np.array([2], dtype=np.int64)]
    # segment covers odd numbers low, low+2, ..., low + 2*(size-1)
    low = 3
    while low <= limit:
        size = min(segment_odds, (limit - low) // 2 + 1)
        high = low + 2 * size  # exclusive
        flags = np.ones(size, dtype=bool)
        for q in base:
            qq = q * q
            if qq >= high:
                break
            start = max(qq, -(-low // q) * q)
            if start % 2 == 0:
                start += q
            flags[(start - low) // 2 :: q] = False
        chunks.append(low + 2 * np.flatnonzero(flags).astype(np.int64))
        low = high
    return PrimeTable(limit, np.concatenate(chunks))


@functools.lru_cache(maxsize=4)
def table(limit: int | None = None) -> PrimeTable:
    """Shared, cached prime table (default limit covers p_{K1} = 2248723)."""
    return sieve(default_limit() if limit is None else limit)


def table_covering(x: int) -> PrimeTable:
    """A cached table whose limit is at least ``x``."""
    lim = default_limit()
    if x <= lim:
        return table(lim)
    if x <= HEAVY_LIMIT:
        return table(HEAVY_LIMIT)
    return table(int(x))


def primorial(k: int, pt: PrimeTable | None = None):
    """N_k = 2*3*...*p_k as a Factorization."""
    from .arith import Factorization

    if k < 1:
        raise DomainError(f"primorial index must be >= 1, got {k}")
    pt = pt or table()
    if k > len(pt):
        raise RangeError(f"primorial({k}) needs more than {len(pt)} primes")
    return Factorization(tuple((int(p), 1) for p in pt.primes[:k]))


def lambda_k(k: int, pt: PrimeTable | None = None) -> mpf:
    """lambda_k = log k + log log k - p_k / k."""
    if k < 2:
        raise ValueError(f"lambda_k needs k >= 2, got {k}")
    pt = pt or table()
    lk = mp.log(k)
    return lk + mp.log(lk) - mpf(pt.p(k)) / k


def lambda_k_min(k_lo: int, k_hi: int, pt: PrimeTable) -> tuple[int, float]:
    """(argmin, min) of lambda_k over k_lo <= k <= k_hi, in float64.

    The minimum is refined in extended precision at the argmin.
    """
    ks = np.arange(k_lo, k_hi + 1, dtype=np.float64)
    lk = np.log(ks)
    vals = lk + np.log(lk) - pt.primes[k_lo - 1 : k_hi].astype(np.float64) / ks
    j = int(np.argmin(vals))
    return k_lo + j, float(lambda_k(k_lo + j, pt))


def delta(k: int, pt: PrimeTable | None = None) -> mpf:
    pt = pt or table()
    pk = pt.p(k)
    if pk <= 10**8:
        return 2 / mp.sqrt(pk)
    return mpf("0.2") / mp.log(pk)


def beta(k: int) -> mpf:
    lk = mp.log(k)
    return (mp.log(lk) - LAMBDA_FLOOR) / lk


def eta(k: int) -> mpf:
    return -LOGLOG2 / mp.log(k * LOG2)


def delta_beta_eta_rho(k: int, pt: PrimeTable | None = None):
    """The four components (delta, beta, eta, rho) of the omega(n) = k bound.

    Only meaningful for k >= K0, where the nth-prime bound lambda_k >= 0.9427
    is available.
    """
    if k < K0:
        raise DomainError(f"bounds are only claimed for k >= {K0}, got {k}")
    pt = pt or table_covering(int(k * (math.log(k) + math.log(math.log(k)))) + 1)
    d, b, e = delta(k, pt), beta(k), eta(k)
    rho = EXP_GAMMA * (-LOGLOG2 + e + b + d)
    return d, b, e, rho


def delta_cap() -> mpf:
    """max(2/sqrt(p_{K0}), 0.2/log 10**8): delta(k) never exceeds this for k >= K0."""
    return max(2 / mp.sqrt(175939), mpf("0.2") / mp.log(mpf(10) ** 8))


def omega_bound_coefficient(k0: int = K0) -> tuple[mpf, mpf]:
    """Coefficients of the n/phi(n) <= C log log tau(n) bound for omega(n) >= k0.

    Returns (c_logk, c_loglogtau): the first bounds n/phi(n) by c_logk * log k,
    the second is 2.23 * (1 - log log 2 / log log 2**k0).
    """
    lk = mp.log(k0)
    c_logk = EXP_GAMMA * (1 + (mp.log(lk) + beta(k0) + mpf("0.01086")) / lk)
    c_tau = mpf("2.23") * (1 - LOGLOG2 / mp.log(k0 * LOG2))
    return c_logk, c_tau


__all__ = [
    "DEFAULT_LIMIT", "HEAVY_LIMIT", "K0", "K1", "K2", "PrimeTable", "sieve", "table",
    "table_covering", "primorial", "lambda_k", "lambda_k_min", "delta", "beta", "eta",
    "delta_beta_eta_rho", "delta_cap", "omega_bound_coefficient", "LOG2",
]
