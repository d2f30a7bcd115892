"""Trial-division factorization for printing counts."""

from __future__ import annotations

DEFAULT_PRIME_BOUND = 1 << 20


def factorize(value: int, bound: int = DEFAULT_PRIME_BOUND) -> tuple[list[tuple[int, int]], int]:
    """Split ``value`` into prime powers with primes ``<= bound``.

    Returns ``(factors, tail)``. ``tail`` is 1 when the factorization is
    complete; otherwise it is the unfactored cofactor, all of whose prime
    factors exceed ``bound`` (it may itself be prime).
    """
    if value < 1:
        raise ValueError(f"can only factor positive integers, got {value}")
    factors = []
    rest = value
    p = 2
    while p * p <= rest:
        if p > bound:
            return factors, rest
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return factors, 1


def format_factors(factors: list[tuple[int, int]], tail: int = 1) -> str:
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in factors]
    if tail != 1:
        parts.append(f"[{tail}]")
    return "·".join(parts) if parts else "1"
