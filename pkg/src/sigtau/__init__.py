"""Extremal values of sigma(n)/n against tau(n) and n/phi(n).

Modules: ``primes`` (tables and prime bounds), ``arith`` (factored integers
and log-domain statistics), ``superchampion`` (the (sigma, tau)-champion
sequence), ``benefit`` (bounded enumeration near a champion), ``verify``
(reproduction pipelines) and ``cli``.
"""

from .arith import ArithStats, Factorization, f1, f2, parse, render, stats
from .errors import DomainError, RangeError, TieError
from .realx import RealX

__all__ = [
    "ArithStats", "Factorization", "f1", "f2", "parse", "render", "stats",
    "DomainError", "RangeError", "TieError", "RealX",
]
__version__ = "0.1.0"
