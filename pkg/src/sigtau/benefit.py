"""The benefit method.

At a parameter eps with maximizer N, the benefit of n is how far n falls
short of N in log(sigma(n) / (n tau(n)**eps)).  It splits into non-negative
per-prime terms, so every n with benefit <= B can be listed by a bounded
depth-first search over exponent deviations from N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from mpmath import mp, mpf

from . import primes as _primes
from .arith import ArithStats, Factorization, f1 as _f1, log_sigma_ratio, stats
from .errors import DomainError
from .realx import LOG2, LOG3, fmt
from .superchampion import (
    SuperchampionSequence,
    alpha_for,
    max_prime_for,
    sequence_to_prime,
)

# slack when comparing a benefit with its budget; covers exact ties at eps_i
BEN_TOL = mpf("1e-30")

# sup f1 <= 2.59791 (the f1 maximum is 2.5979074...)
F1_SUP = mpf("2.59791")
# (211/212) f1(M3) = 2.580303...: below this nu(x) is infinite
CENSUS_FLOOR = mpf("2.5804")
# prime whose psi(p, 1) ends the records needed for f1 (p_{15985})
F1_LAST_PRIME = 175939


def ben_p(p: int, beta: int, alpha: int, eps) -> mpf:
    """Benefit contribution of prime p when n has exponent beta and N has alpha."""
    if beta == alpha:
        return mpf(0)
    return (
        mp.log1p(-mpf(p) ** -(alpha + 1))
        - mp.log1p(-mpf(p) ** -(beta + 1))
        - eps * (mp.log(alpha + 1) - mp.log(beta + 1))
    )


@dataclass(frozen=True)
class BenefitQuery:
    """Enumerate {n : ben(n) <= budget} relative to ``reference`` at ``eps``."""

    eps: mpf
    reference: Factorization
    budget: mpf
    ref_stats: ArithStats = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "eps", mpf(self.eps))
        object.__setattr__(self, "budget", mpf(self.budget))
        if self.budget < 0:
            raise ValueError("budget must be >= 0")
        if self.budget >= self.eps * LOG2:
            raise ValueError(
                f"budget {fmt(self.budget, 8)} must be < eps log 2 = {fmt(self.eps * LOG2, 8)}"
            )
        _check_maximizer(self.reference, self.eps)
        object.__setattr__(self, "ref_stats", stats(self.reference))

    @classmethod
    def at_index(cls, seq: SuperchampionSequence, i: int, budget) -> "BenefitQuery":
        """Query at eps = eps_i with reference N^(i) (N^(i-1) maximizes too)."""
        if not 1 <= i < len(seq):
            raise IndexError(f"no critical value eps_{i} in the generated sequence")
        rec = seq[i]
        return cls(rec.eps_hi, rec.n, budget)

    def alpha(self, p: int) -> int:
        return self.reference.exponent(p)


def _check_maximizer(ref: Factorization, eps) -> None:
    pmax = max_prime_for(eps)
    exps = ref.as_dict()
    if ref.factors and ref.largest_prime > pmax:
        raise ValueError("reference has a prime factor too large for eps")
    for p in _primes.table_covering(pmax + 1).upto(pmax).tolist():
        a, tied = alpha_for(p, eps, with_tie=True)
        got = exps.get(p, 0)
        if got != a and not (tied and got == a - 1):
            raise ValueError(f"reference is not a maximizer at eps: v_{p} = {got}, expected {a}")


@dataclass(frozen=True)
class BenefitHit:
    n: Factorization
    ben: mpf
    f1: mpf
    tau_ratio: Fraction
    deviation: tuple[tuple[int, int], ...] = ()

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return self.n.factors

    def ratio_str(self) -> str:
        """n / N as ``2·127·131`` or ``1/113``."""
        return render_deviation(self.deviation)

    @property
    def log_n(self) -> mpf:
        return stats(self.n).log_n


def render_deviation(dev: Iterable[tuple[int, int]]) -> str:
    num, den = [], []
    for p, d in dev:
        side = num if d > 0 else den
        side.append(f"{p}^{abs(d)}" if abs(d) > 1 else f"{p}")
    top = "·".join(num) if num else "1"
    if not den:
        return top
    bottom = "·".join(den)
    return f"{top}/({bottom})" if len(den) > 1 else f"{top}/{bottom}"


def ben(n: Factorization, query: BenefitQuery) -> mpf:
    """Sum of ben_p over primes where n and the reference differ."""
    ne, re = n.as_dict(), query.reference.as_dict()
    return mp.fsum(
        ben_p(p, ne.get(p, 0), re.get(p, 0), query.eps)
        for p in sorted(set(ne) | set(re))
        if ne.get(p, 0) != re.get(p, 0)
    )


def ben_direct(n: Factorization, query: BenefitQuery) -> mpf:
    """log(sigma(N)/(N tau(N)^eps)) - log(sigma(n)/(n tau(n)^eps)) from whole-number stats."""
    s, r = stats(n), query.ref_stats
    return (r.log_sigma_over_n - s.log_sigma_over_n) - query.eps * (r.log_tau - s.log_tau)


def cutoff_prime(eps, budget) -> int:
    """Largest p with eps log 2 - log(1 + 1/p) <= budget."""
    t = eps * LOG2 - budget
    return int(mp.floor(1 / mp.expm1(t) * (1 + mpf("1e-30"))))


@dataclass
class _Option:
    beta: int
    cost: mpf
    d_sig: mpf
    d_tau: mpf


def _options(p: int, alpha: int, eps, budget) -> list[_Option]:
    """Exponents beta with ben_p <= budget, cheapest first."""
    limit = budget + BEN_TOL
    base_sig = log_sigma_ratio(p, alpha)
    lt_a = mp.log(alpha + 1)
    opts = [_Option(alpha, mpf(0), mpf(0), mpf(0))]
    for step in (-1, 1):
        b = alpha + step
        while b >= 0:
            c = ben_p(p, b, alpha, eps)
            if c > limit:
                break
            opts.append(_Option(b, c, log_sigma_ratio(p, b) - base_sig, mp.log(b + 1) - lt_a))
            b += step
    opts.sort(key=lambda o: (o.cost, abs(o.beta - alpha)))
    return opts


def enumerate_budget(query: BenefitQuery, min_f1=None) -> list[BenefitHit]:
    """Every n >= 1 with ben(n) <= query.budget, sorted by f1 descending.

    ``min_f1`` drops hits with f1(n) < min_f1 (and n = 1) without changing
    the search.
    """
    eps, budget = query.eps, query.budget
    p0 = cutoff_prime(eps, budget)
    top = max(p0, query.reference.largest_prime)
    ref = query.reference.as_dict()
    plist = _primes.table_covering(top + 1).upto(top).tolist()
    per_prime = []
    for p in plist:
        a = ref.get(p, 0)
        opts = _options(p, a, eps, budget)
        if len(opts) > 1:
            per_prime.append((p, a, opts))
    # most expensive deviations first: they prune the most
    per_prime.sort(key=lambda t: -t[2][1].cost)
    rs = query.ref_stats
    limit = budget + BEN_TOL
    thresh = None if min_f1 is None else mpf(min_f1)
    hits: list[BenefitHit] = []
    chosen: list[tuple[int, _Option]] = []

    def emit(total, d_sig, d_tau):
        lt = rs.log_tau + d_tau
        if lt <= 0:
            return  # n = 1
        val = mp.exp(rs.log_sigma_over_n + d_sig) / mp.log(LOG3 + lt)
        if thresh is not None and val < thresh:
            return
        exps = dict(ref)
        ratio = Fraction(1)
        dev = []
        for p, o in chosen:
            a = ref.get(p, 0)
            exps[p] = o.beta
            ratio *= Fraction(o.beta + 1, a + 1)
            dev.append((p, o.beta - a))
        dev.sort()
        hits.append(BenefitHit(Factorization.from_mapping(exps), total, val, ratio, tuple(dev)))

    def dfs(j, total, d_sig, d_tau):
        if j == len(per_prime):
            emit(total, d_sig, d_tau)
            return
        p, a, opts = per_prime[j]
        for o in opts:
            t = total + o.cost
            if t > limit:
                break
            if o.beta != a:
                chosen.append((p, o))
                dfs(j + 1, t, d_sig + o.d_sig, d_tau + o.d_tau)
                chosen.pop()
            else:
                dfs(j + 1, t, d_sig, d_tau)

    dfs(0, mpf(0), mpf(0), mpf(0))
    hits.sort(key=lambda h: (-h.f1, h.n.factors))
    return hits


@dataclass
class CensusResult:
    threshold: mpf
    count: int
    windows: list[int]
    hits: list[BenefitHit]


def census_windows(seq: SuperchampionSequence, x, last: int | None = None) -> list[tuple[int, mpf]]:
    """Critical indices i whose neighbouring records N^(i-1), N^(i) can bracket n with f1(n) >= x.

    Returns (i, budget) pairs with budget = log(max(f1(N^(i-1)), f1(N^(i))) / x).
    Any n with tau(N^(i-1)) <= tau(n) <= tau(N^(i)) and f1(n) >= x has
    benefit at most that budget at eps_i.
    """
    x = mpf(x)
    last = len(seq) - 1 if last is None else last
    vals = [None] + [_f1(seq.stats(i)) for i in range(1, last + 1)]
    out = []
    for i in range(2, last + 1):
        m = max(vals[i - 1], vals[i])
        if m >= x:
            out.append((i, mp.log(m / x)))
    return out


def nu_census(x, seq: SuperchampionSequence | None = None, keep_hits: bool = False) -> CensusResult:
    """Number of n >= 2 with f1(n) >= x."""
    x = mpf(x)
    if x <= CENSUS_FLOOR:
        raise DomainError(f"nu(x) is infinite or intractable for x <= {CENSUS_FLOOR}")
    seq = seq or sequence_to_prime(F1_LAST_PRIME)
    last = seq.index_for_psi(F1_LAST_PRIME)
    seen: dict[tuple, BenefitHit] = {}
    windows = census_windows(seq, x, last)
    for i, budget in windows:
        q = BenefitQuery.at_index(seq, i, budget)
        for h in enumerate_budget(q, min_f1=x):
            seen.setdefault(h.key, h)
    hits = sorted(seen.values(), key=lambda h: (-h.f1, h.n.factors))
    return CensusResult(x, len(hits), [i for i, _ in windows], hits if keep_hits else [])


def exceptions(seq: SuperchampionSequence | None = None, indices: Iterable[int] = range(45, 51),
               threshold="2.597", budget=None) -> list[BenefitHit]:
    """n with f1(n) > threshold found within benefit log(2.6/2.597) at eps_i, i in ``indices``."""
    seq = seq or sequence_to_prime(F1_LAST_PRIME)
    thr = mpf(threshold)
    B = mp.log(mpf("2.6") / thr) if budget is None else mpf(budget)
    seen: dict[tuple, BenefitHit] = {}
    for i in indices:
        for h in enumerate_budget(BenefitQuery.at_index(seq, i, B), min_f1=thr):
            if h.f1 > thr:
                seen.setdefault(h.key, h)
    return sorted(seen.values(), key=lambda h: (-h.f1, h.n.factors))


def relative_to(hit: BenefitHit, ref: Factorization) -> tuple[str, Fraction]:
    """(n/ref rendered, tau(n)/tau(ref)) for table output against a fixed reference."""
    ne, re = hit.n.as_dict(), ref.as_dict()
    dev = [(p, ne.get(p, 0) - re.get(p, 0)) for p in sorted(set(ne) | set(re))]
    dev = [(p, d) for p, d in dev if d]
    return render_deviation(dev), Fraction(hit.n.tau(), ref.tau())
