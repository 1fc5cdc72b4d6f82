import pytest

from sigtau import arith, benefit, superchampion


@pytest.fixture(scope="session")
def seq():
    """Records through N^+ at psi(175939, 1)."""
    return superchampion.sequence_to_prime(benefit.F1_LAST_PRIME)


@pytest.fixture(scope="session")
def small():
    """Exact sigma, tau, phi for n <= 10**6."""
    return arith.arrays(10**6)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def trial_factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_trial(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))
