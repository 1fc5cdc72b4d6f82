"""Factored integers and their log-domain arithmetic statistics.

Large integers never appear as Python ints here: every statistic of
``n = prod p**a`` is accumulated from per-prime logarithms and only
exponentiated at the end.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import numpy as np
from mpmath import mp, mpf

from .errors import DomainError
from .realx import EXP_GAMMA, E, LOG3

SMALL_SCAN_LIMIT = 10**7


@dataclass(frozen=True)
class Factorization:
    """``n = prod p**a`` as a tuple of (prime, exponent), primes increasing."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 1
        for p, a in self.factors:
            if p <= prev or a < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            prev = p

    @classmethod
    def from_mapping(cls, exps: Mapping[int, int]) -> "Factorization":
        return cls(tuple(sorted((int(p), int(a)) for p, a in exps.items() if a)))

    @classmethod
    def from_int(cls, n: int) -> "Factorization":
        return factorize_small(n)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def exponent(self, p: int) -> int:
        for q, a in self.factors:
            if q == p:
                return a
            if q > p:
                break
        return 0

    def __mul__(self, other: "Factorization") -> "Factorization":
        exps = self.as_dict()
        for p, a in other.factors:
            exps[p] = exps.get(p, 0) + a
        return Factorization.from_mapping(exps)

    def divides(self, other: "Factorization") -> bool:
        theirs = other.as_dict()
        return all(theirs.get(p, 0) >= a for p, a in self.factors)

    def value(self) -> int:
        """The integer itself; only sensible for moderate n."""
        return math.prod(p**a for p, a in self.factors)

    def tau(self) -> int:
        return math.prod(a + 1 for _, a in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def largest_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    def __str__(self) -> str:
        return render(self)


def render(f: Factorization, compress: bool = True, min_run: int = 4) -> str:
    """Render as ``2^8·3^5·…·P(17..113)``.

    With ``compress``, a run of at least ``min_run`` consecutive primes (as
    given by the factor list, which for champions has no gaps) sharing the
    same exponent is written ``P(a..b)`` or ``P(a..b)^e``.
    """
    if not f.factors:
        return "1"
    from .primes import table_covering

    parts = []
    facs = f.factors
    pt = table_covering(f.largest_prime) if compress else None
    i = 0
    while i < len(facs):
        p, a = facs[i]
        j = i
        if compress:
            k = pt.index_of(p)
            while (
                j + 1 < len(facs)
                and facs[j + 1][1] == a
                and facs[j + 1][0] == pt.p(k + (j + 1 - i))
            ):
                j += 1
        if compress and j - i + 1 >= min_run:
            q = facs[j][0]
            parts.append(f"P({p}..{q})" + (f"^{a}" if a > 1 else ""))
        else:
            for q, b in facs[i : j + 1]:
                parts.append(f"{q}^{b}" if b > 1 else f"{q}")
        i = j + 1
    return "·".join(parts)


def parse(text: str) -> Factorization:
    """Inverse of ``render`` (accepts ``·``, ``*`` or ``x`` as separators)."""
    from .primes import table_covering

    text = text.strip()
    if text == "1":
        return Factorization()
    exps: dict[int, int] = {}
    for tok in text.replace("*", "·").replace("×", "·").split("·"):
        tok = tok.strip()
        base, _, e = tok.partition("^")
        a = int(e) if e else 1
        if base.startswith("P("):
            lo, hi = (int(s) for s in base[2:-1].split(".."))
            pt = table_covering(hi)
            for p in pt.primes[pt.pi(lo - 1) : pt.pi(hi)]:
                exps[int(p)] = exps.get(int(p), 0) + a
        else:
            p = int(base)
            exps[p] = exps.get(p, 0) + a
    return Factorization.from_mapping(exps)


@dataclass(frozen=True)
class ArithStats:
    """log n, log tau(n), log(sigma(n)/n), log(n/phi(n)) and omega(n)."""

    log_n: mpf
    log_tau: mpf
    log_sigma_over_n: mpf
    log_n_over_phi: mpf
    omega: int

    @property
    def sigma_over_n(self) -> mpf:
        return mp.exp(self.log_sigma_over_n)

    @property
    def n_over_phi(self) -> mpf:
        return mp.exp(self.log_n_over_phi)

    @property
    def log_phi(self) -> mpf:
        return self.log_n - self.log_n_over_phi

    def __mul__(self, other: "ArithStats") -> "ArithStats":
        """Stats of a product of coprime integers."""
        return ArithStats(
            self.log_n + other.log_n,
            self.log_tau + other.log_tau,
            self.log_sigma_over_n + other.log_sigma_over_n,
            self.log_n_over_phi + other.log_n_over_phi,
            self.omega + other.omega,
        )


@functools.lru_cache(maxsize=None)
def _log(x: int) -> mpf:
    return mp.log(x)


@functools.lru_cache(maxsize=65536)
def log_sigma_ratio(p: int, a: int) -> mpf:
    """log(sigma(p^a)/p^a) = log((1 - p^-(a+1)) / (1 - 1/p))."""
    if a == 0:
        return mpf(0)
    return mp.log1p(-mpf(p) ** -(a + 1)) - mp.log1p(-mpf(1) / p)


def log_sigma_step(p: int, a: int) -> mpf:
    """log of sigma(p^a)/p^a divided by sigma(p^(a-1))/p^(a-1)."""
    return mp.log1p(-mpf(p) ** -(a + 1)) - mp.log1p(-mpf(p) ** -a)


def log_tau_step(a: int) -> mpf:
    """log((a+1)/a): the change in log tau when an exponent goes a-1 -> a."""
    return _log(a + 1) - _log(a)


def stats(f: Factorization) -> ArithStats:
    """Log-domain statistics of a factored integer."""
    ln, lt, ls, lp = [], [], [], []
    for p, a in f.factors:
        lgp = _log(p)
        ln.append(a * lgp)
        lt.append(_log(a + 1))
        ls.append(log_sigma_ratio(p, a))
        lp.append(-mp.log1p(-mpf(1) / p))
    return ArithStats(mp.fsum(ln), mp.fsum(lt), mp.fsum(ls), mp.fsum(lp), len(f.factors))


def f1(s: ArithStats) -> mpf:
    """sigma(n) / (n log log(3 tau(n))); needs tau(n) >= 2."""
    if s.log_tau <= 0:
        raise DomainError("f1 needs tau(n) >= 2")
    return s.sigma_over_n / mp.log(LOG3 + s.log_tau)


def f2(s: ArithStats) -> mpf:
    """sigma(n)/n - e^gamma log log(e tau(n)) - e^gamma log log log(e^e tau(n))."""
    return (
        s.sigma_over_n
        - EXP_GAMMA * mp.log1p(s.log_tau)
        - EXP_GAMMA * mp.log(mp.log(E + s.log_tau))
    )


# ---------------------------------------------------------------- small n

@functools.lru_cache(maxsize=4)
def _spf_table(size: int) -> np.ndarray:
    spf = np.zeros(size + 1, dtype=np.int32)
    for q in range(2, math.isqrt(size) + 1):
        if spf[q] == 0:
            block = spf[q * q :: q]
            block[block == 0] = q
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx  # primes and 0, 1
    return spf


def _spf_for(n: int, bound: int) -> np.ndarray:
    size = 1 << 16
    while size < n:
        size <<= 1
    return _spf_table(min(size, max(bound, n)))


def factorize_small(n: int, bound: int | None = None) -> Factorization:
    """Exact factorization via a smallest-prime-factor sieve."""
    bound = SMALL_SCAN_LIMIT if bound is None else bound
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n > bound:
        raise DomainError(f"{n} exceeds the small-scan bound {bound}")
    spf = _spf_for(n, bound)
    out: list[tuple[int, int]] = []
    while n > 1:
        p = int(spf[n])
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        out.append((p, a))
    return Factorization(tuple(out))


def phi_of(f: Factorization) -> int:
    return math.prod((p - 1) * p ** (a - 1) for p, a in f.factors)


def big_g(n: int) -> mpf:
    """G(n) = n/phi(n) - e^gamma log log phi(n)."""
    f = factorize_small(n)
    phi = phi_of(f)
    if phi < 2:
        raise DomainError(f"G({n}) undefined: phi = {phi}")
    return mpf(n) / phi - EXP_GAMMA * mp.log(mp.log(phi))


def c_k(k: int) -> mpf:
    """c_k = L (N_k/phi(N_k) - e^gamma L) with L = log log phi(N_k)."""
    from .primes import primorial

    if k < 4:
        raise DomainError(f"c_k is only used for k >= 4, got {k}")
    s = stats(primorial(k))
    L = mp.log(s.log_phi)
    return L * (s.n_over_phi - EXP_GAMMA * L)


def arrays(limit: int) -> dict[str, np.ndarray]:
    """Exact sigma(n), tau(n), phi(n) for 0 <= n <= limit as int64 arrays.

    sigma and tau come straight from divisor sums; index 0 is unused.
    """
    sigma = np.zeros(limit + 1, dtype=np.int64)
    tau = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        sigma[d::d] += d
        tau[d::d] += 1
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return {"sigma": sigma, "tau": tau, "phi": phi}


def iter_stats(ns: Iterable[int]) -> Iterator[tuple[int, ArithStats]]:
    for n in ns:
        yield n, stats(factorize_small(n))


def tau_ratio(n: Factorization, ref: Factorization) -> Fraction:
    return Fraction(n.tau(), ref.tau())
