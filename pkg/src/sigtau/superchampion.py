"""(sigma, tau)-superchampion numbers.

A number N is a superchampion of parameter eps when it maximizes
sigma(n) / (n tau(n)**eps).  The maximizer is built prime by prime: the
exponent of p is the largest a with psi(p, a) >= eps, and the sequence of
superchampions changes exactly when eps crosses one of the critical values
psi(p, a), multiplying the current champion by p.
"""

from __future__ import annotations

import bisect
import functools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from mpmath import mp, mpf

from . import primes as _primes
from .arith import ArithStats, Factorization, log_sigma_ratio, log_sigma_step, log_tau_step
from .errors import DomainError, RangeError, TieError
from .realx import LOG2, fmt

# |g1(e') - g1(e'')| below this counts as a tie (observed minimum gap is ~0.038)
TIE_G1 = mpf("1e-3")
# relative tolerance for "eps equals psi(p, a)"
EPS_REL_TOL = mpf("1e-30")

INF = mp.inf


@functools.lru_cache(maxsize=None)
def _log1p_inv(a: int) -> mpf:
    return mp.log1p(mpf(1) / a)


def psi(p: int, alpha: int) -> mpf:
    """Critical parameter at which raising v_p from alpha-1 to alpha pays off.

    psi(p, a) = log((p^(a+1) - 1) / (p^(a+1) - p)) / log(1 + 1/a), with
    psi(p, 0) = +inf.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if alpha == 0:
        return INF
    pa = mpf(p) ** (alpha + 1)
    return mp.log1p((p - 1) / (pa - p)) / _log1p_inv(alpha)


def theta(p: int, alpha: int, eps) -> mpf:
    """log(sigma(p^a)/p^a) - eps log tau(p^a); zero at a = 0."""
    if alpha == 0:
        return mpf(0)
    return log_sigma_ratio(p, alpha) - eps * mp.log(alpha + 1)


def g1(eps) -> mpf:
    """1/(2^eps - 1); maps psi(p, 1) back to p."""
    return 1 / mp.expm1(eps * LOG2)


def max_prime_for(eps) -> int:
    """Largest integer p with psi(p, 1) >= eps (up to rounding at the boundary)."""
    return int(mp.floor(g1(eps) * (1 + EPS_REL_TOL)))


def _near(a, b) -> bool:
    return abs(a - b) <= EPS_REL_TOL * abs(b)


def alpha_for(p: int, eps, with_tie: bool = False):
    """Exponent of p in the maximizer at parameter eps.

    Returns the largest a with psi(p, a) >= eps.  When eps equals psi(p, a)
    both a-1 and a maximize; with ``with_tie=True`` the result is the pair
    ``(a, tied)`` so callers can tell.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    if psi(p, 1) < eps and not _near(psi(p, 1), eps):
        return (0, False) if with_tie else 0
    hi = 2
    while psi(p, hi) >= eps:
        hi *= 2
    a = hi
    while psi(p, a) < eps and not _near(psi(p, a), eps):
        a -= 1
    if with_tie:
        return a, _near(psi(p, a), eps)
    return a


@dataclass(frozen=True)
class CriticalEpsilon:
    p: int
    alpha: int
    value: mpf = field(compare=False)

    @classmethod
    def of(cls, p: int, alpha: int) -> "CriticalEpsilon":
        return cls(p, alpha, psi(p, alpha))

    def __str__(self) -> str:
        return f"psi({self.p},{self.alpha})={fmt(self.value, 12)}"


@dataclass
class StreamReport:
    """Gap diagnostics for a critical stream."""

    eps_min: mpf
    count: int
    min_gap: mpf | None
    min_gap_pair: tuple[CriticalEpsilon, CriticalEpsilon] | None
    ties: list[tuple[CriticalEpsilon, CriticalEpsilon]]


def critical_stream(eps_min, pt: _primes.PrimeTable | None = None, report: bool = False):
    """All psi(p, a) >= eps_min, sorted strictly decreasing.

    With ``report=True`` returns ``(stream, StreamReport)``; the report lists
    consecutive values whose g1 images differ by less than ``TIE_G1``.
    """
    eps_min = mpf(eps_min)
    if eps_min <= 0:
        raise DomainError("eps_min must be positive")
    pmax = max_prime_for(eps_min)
    pt = pt or _primes.table_covering(pmax + 1)
    if pt.limit < pmax:
        raise RangeError(f"stream down to {eps_min} needs primes up to {pmax}")
    out: list[CriticalEpsilon] = []
    for p in pt.upto(pmax).tolist():
        a = 1
        v = psi(p, 1)
        if v < eps_min:
            break
        while v >= eps_min:
            out.append(CriticalEpsilon(p, a, v))
            a += 1
            v = psi(p, a)
    out.sort(key=lambda c: c.value, reverse=True)
    if not report:
        return out
    return out, _gap_report(out, eps_min)


def _gap_report(stream: Sequence[CriticalEpsilon], eps_min) -> StreamReport:
    ties = []
    best = None
    pair = None
    prev_g = None
    for i, c in enumerate(stream):
        # g1(psi(p, 1)) == p is an exact identity
        g = mpf(c.p) if c.alpha == 1 else g1(c.value)
        if prev_g is not None:
            gap = g - prev_g
            if gap < TIE_G1:
                ties.append((stream[i - 1], c))
            if best is None or gap < best:
                best, pair = gap, (c, stream[i - 1])
        prev_g = g
    return StreamReport(eps_min, len(stream), best, pair, ties)


@dataclass(frozen=True)
class SuperchampionRecord:
    """N^(i) with its parameter interval eps_hi >= eps >= eps_lo.

    ``levels[a-1]`` is the number of primes whose exponent in N is >= a; for
    a superchampion this determines the factorization.
    """

    index: int
    levels: tuple[int, ...]
    stats: ArithStats
    eps_hi: mpf
    eps_lo: mpf | None
    added: CriticalEpsilon | None

    @property
    def n(self) -> Factorization:
        return factorization_from_levels(self.levels)

    def render(self) -> str:
        return render_levels(self.levels)

    def exponent(self, p: int) -> int:
        if not self.levels:
            return 0
        k = _table_for(self.levels).pi(p)
        if k == 0 or _table_for(self.levels).p(k) != p:
            return 0
        return sum(1 for lv in self.levels if lv >= k)

    @property
    def largest_prime(self) -> int:
        if not self.levels:
            return 1
        return _table_for(self.levels).p(self.levels[0])

    def tau(self) -> int:
        return math.prod((a + 1) ** (hi - lo + 1) for lo, hi, a in _exponent_runs(self.levels))


def _exponent_runs(levels: tuple[int, ...]):
    """Yield (first_index, last_index, exponent) runs, 1-based prime indices."""
    top = len(levels)
    for a in range(top, 0, -1):
        hi = levels[a - 1]
        lo = levels[a] + 1 if a < top else 1
        if lo <= hi:
            yield lo, hi, a


def _table_for(levels: tuple[int, ...]) -> _primes.PrimeTable:
    pt = _primes.table()
    if levels and levels[0] > len(pt):
        pt = _primes.table(_primes.HEAVY_LIMIT)
    return pt


def factorization_from_levels(levels: tuple[int, ...]) -> Factorization:
    if not levels:
        return Factorization()
    pt = _table_for(levels)
    out = []
    for lo, hi, a in _exponent_runs(levels):
        out.extend((int(p), a) for p in pt.primes[lo - 1 : hi])
    return Factorization(tuple(out))


def render_levels(levels: tuple[int, ...], min_run: int = 4) -> str:
    """``2^8·3^5·…·P(17..113)`` straight from levels, in O(len(levels))."""
    if not levels:
        return "1"
    pt = _table_for(levels)
    parts = []
    for lo, hi, a in _exponent_runs(levels):
        if hi - lo + 1 >= min_run:
            parts.append(f"P({pt.p(lo)}..{pt.p(hi)})" + (f"^{a}" if a > 1 else ""))
        else:
            for k in range(lo, hi + 1):
                parts.append(f"{pt.p(k)}^{a}" if a > 1 else f"{pt.p(k)}")
    return "·".join(parts)


class SuperchampionSequence(Sequence[SuperchampionRecord]):
    """N^(0) = 1, N^(1) = 2, ... down to parameter ``eps_min``.

    Records are built on demand from cumulative log-domain sums, so the
    ~166k-step sequence needed for the f2 maximum stays compact.
    """

    def __init__(self, stream: list[CriticalEpsilon], eps_min, report: StreamReport | None = None):
        self.stream = stream
        self.eps_min = mpf(eps_min)
        self.report = report
        self._values = [c.value for c in stream]
        n = len(stream) + 1
        zero = mpf(0)
        self._log_n = [zero] * n
        self._log_tau = [zero] * n
        self._log_sig = [zero] * n
        self._log_nphi = [zero] * n
        self._omega = [0] * n
        self._levels: list[tuple[int, ...]] = [()] * n
        exps: dict[int, int] = {}
        index_of: dict[int, int] = {}
        next_k = 1
        levels: list[int] = []
        ln = lt = ls = lp = zero
        omega = 0
        for i, c in enumerate(stream, start=1):
            p, a = c.p, exps.get(c.p, 0) + 1
            if a != c.alpha:
                raise AssertionError(f"stream out of order at {c}")
            exps[p] = a
            ln += mp.log(p)
            lt += log_tau_step(a)
            ls += log_sigma_step(p, a)
            if a == 1:
                lp -= mp.log1p(-mpf(1) / p)
                omega += 1
                index_of[p] = next_k
                next_k += 1
            k = index_of[p]
            if a > len(levels):
                levels.append(k)
            else:
                levels[a - 1] = k
            self._log_n[i], self._log_tau[i] = ln, lt
            self._log_sig[i], self._log_nphi[i] = ls, lp
            self._omega[i] = omega
            self._levels[i] = tuple(levels)

    def __len__(self) -> int:
        return len(self.stream) + 1

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        st = ArithStats(self._log_n[i], self._log_tau[i], self._log_sig[i], self._log_nphi[i], self._omega[i])
        hi = INF if i == 0 else self._values[i - 1]
        lo = self._values[i] if i < len(self._values) else None
        added = self.stream[i - 1] if i else None
        return SuperchampionRecord(i, self._levels[i], st, hi, lo, added)

    def __iter__(self) -> Iterator[SuperchampionRecord]:
        return (self[i] for i in range(len(self)))

    def stats(self, i: int) -> ArithStats:
        return ArithStats(self._log_n[i], self._log_tau[i], self._log_sig[i], self._log_nphi[i], self._omega[i])

    def index_of_eps(self, eps) -> int:
        """Index i >= 1 with eps_i == eps (within tolerance), else -1."""
        j = self._bisect(mpf(eps))
        for cand in (j - 1, j):
            if 0 <= cand < len(self._values) and _near(self._values[cand], eps):
                return cand + 1
        return -1

    def _bisect(self, eps) -> int:
        # number of stream values strictly greater than eps
        neg = _NegView(self._values)
        return bisect.bisect_left(neg, -eps)

    def n_eps(self, eps) -> tuple[SuperchampionRecord, SuperchampionRecord]:
        """(N_eps^-, N_eps^+): smallest and largest superchampion of parameter eps."""
        eps = mpf(eps)
        if eps <= 0:
            raise DomainError("eps must be positive")
        i = self.index_of_eps(eps)
        if i > 0:
            return self[i - 1], self[i]
        if eps < self._values[-1]:
            raise RangeError(f"eps={eps} is below the generated range (eps_min={self.eps_min})")
        j = self._bisect(eps)
        rec = self[j]
        return rec, rec

    def index_plus(self, eps) -> int:
        return self.n_eps(eps)[1].index

    def index_for_psi(self, p: int, alpha: int = 1) -> int:
        """Index of the record created by psi(p, alpha)."""
        i = self.index_of_eps(psi(p, alpha))
        if i < 0 or self.stream[i - 1].p != p:
            raise RangeError(f"psi({p},{alpha}) not in the generated stream")
        return i


class _NegView:
    __slots__ = ("xs",)

    def __init__(self, xs):
        self.xs = xs

    def __len__(self):
        return len(self.xs)

    def __getitem__(self, i):
        return -self.xs[i]


def generate_sequence(eps_min, pt: _primes.PrimeTable | None = None) -> SuperchampionSequence:
    """Superchampions N^(0), N^(1), ... for parameters down to ``eps_min``.

    Raises TieError if two critical values are too close to order safely.
    """
    stream, rep = critical_stream(eps_min, pt, report=True)
    if rep.ties:
        lines = ", ".join(f"{a} ~ {b}" for a, b in rep.ties[:5])
        raise TieError(f"{len(rep.ties)} near-coincident critical values: {lines}", rep.ties)
    return SuperchampionSequence(stream, eps_min, rep)


@functools.lru_cache(maxsize=4)
def sequence_to_prime(p: int) -> SuperchampionSequence:
    """Cached sequence down to eps_min = psi(p, 1), i.e. through N^+ at that parameter."""
    return generate_sequence(psi(p, 1))


def maximizer(eps) -> Factorization:
    """Direct construction of N_eps^+ from alpha_for, independent of the stream."""
    eps = mpf(eps)
    pmax = max_prime_for(eps)
    exps = {}
    for p in _primes.table_covering(pmax + 1).upto(pmax).tolist():
        a = alpha_for(p, eps)
        if a == 0:
            break
        exps[p] = a
    return Factorization.from_mapping(exps)
