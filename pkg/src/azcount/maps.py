"""Structure maps on formal sums: reverse, expansion, contraction, and the
middle and central contractions used for the two-axis symmetric count.

Each map rewrites a fixed window of bits by a small lookup table and passes
the other bits through. Tables are keyed by the window's bits in reading
order (first bit first); an empty image list means the term is annihilated.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import ContractViolation
from .formal import BitString, FormalSum, LinearMap, compose, compose_all

LocalTable = Mapping[tuple[int, ...], Sequence[tuple[int, ...]]]

EXPANSION_TABLE: LocalTable = {
    (0, 0): [(0, 0), (1, 1)],
    (0, 1): [(0, 1)],
    (1, 0): [(1, 0)],
    (1, 1): [(1, 1)],
}

# first two bits -> one bit; (0, 1) annihilates
CONTRACTION_FIRST: LocalTable = {
    (0, 0): [(1,)],
    (1, 1): [(1,)],
    (1, 0): [(0,)],
    (0, 1): [],
}

# last two bits -> one bit; (1, 0) annihilates
CONTRACTION_LAST: LocalTable = {
    (0, 0): [(1,)],
    (1, 1): [(1,)],
    (0, 1): [(0,)],
    (1, 0): [],
}

MIDDLE_CONTRACTION: LocalTable = {
    (1, 1, 1): [(1, 1)],
    (1, 0, 0): [(1, 1)],
    (0, 0, 1): [(1, 1)],
    (0, 1, 1): [(0, 1)],
    (1, 1, 0): [(1, 0)],
    (0, 0, 0): [(0, 1), (1, 0)],
    (0, 1, 0): [(0, 0)],
    (1, 0, 1): [],
}

CENTRAL_CONTRACTION: LocalTable = {
    (0, 1): [(1,)],
    (1, 0): [(1,)],
    (1, 1): [(0,)],
    (0, 0): [],
}


def _pack(bits: Sequence[int]) -> int:
    return sum(b << i for i, b in enumerate(bits))


def window_map(length: int, start: int, table: LocalTable, name: str = "") -> LinearMap:
    """Rewrite bits ``start .. start+w-1`` (0-based) of a length-``length`` string via ``table``."""
    widths_in = {len(k) for k in table}
    widths_out = {len(v) for images in table.values() for v in images}
    if len(widths_in) != 1 or len(widths_out) > 1:
        raise ContractViolation("local table must have uniform window widths")
    w_in = widths_in.pop()
    w_out = widths_out.pop() if widths_out else 0
    if start < 0 or start + w_in > length:
        raise ContractViolation(f"window {start}..{start + w_in - 1} outside length {length}")
    out_length = length - w_in + w_out
    packed = {_pack(k): [_pack(v) for v in images] for k, images in table.items()}
    low = (1 << start) - 1
    win = (1 << w_in) - 1
    zero = FormalSum.zero(out_length)

    def rule(s: BitString) -> FormalSum:
        images = packed[(s.mask >> start) & win]
        if not images:
            return zero
        head = s.mask & low
        tail = (s.mask >> (start + w_in)) << (start + w_out)
        acc: dict[int, int] = {}
        for img in images:
            m = head | (img << start) | tail
            acc[m] = acc.get(m, 0) + 1
        return FormalSum(out_length, acc)

    return LinearMap(length, out_length, rule, name)


def reverse_map(n: int) -> LinearMap:
    """Bitwise complement on strings of length ``n``."""
    if n < 1:
        raise ContractViolation(f"reverse map needs n >= 1, got {n}")
    return LinearMap(n, n, lambda s: FormalSum.basis(s.complement()), f"R_{n}")


def basic_expansion(i: int, n: int) -> LinearMap:
    """Expansion at the adjacent pair (i, i+1), with 1-based ``i`` in ``1..n-1``."""
    if not 1 <= i <= n - 1:
        raise ContractViolation(f"basic expansion index {i} outside 1..{n - 1}")
    return window_map(n, i - 1, EXPANSION_TABLE, f"E^{i}_{n}")


def expansion(n: int) -> LinearMap:
    """``E^{n-1} ∘ ... ∘ E^1`` (pair 1 expanded first)."""
    if n < 2:
        raise ContractViolation(f"expansion needs n >= 2, got {n}")
    m = compose_all(*(basic_expansion(i, n) for i in range(n - 1, 0, -1)))
    return LinearMap(m.in_length, m.out_length, m.rule, f"E_{n}")


def contraction(n: int) -> LinearMap:
    """Length ``n`` -> ``n - 2``: contract the first pair, then the last pair."""
    if n < 4:
        raise ContractViolation(f"contraction needs n >= 4, got {n}")
    first = window_map(n, 0, CONTRACTION_FIRST)
    last = window_map(n - 1, n - 3, CONTRACTION_LAST)
    m = compose(last, first)
    return LinearMap(n, n - 2, m.rule, f"K_{n}")


def middle_contraction(n: int) -> LinearMap:
    """Length ``2n + 1`` -> ``2n``: rewrite bits n, n+1, n+2 (1-based)."""
    if n < 1:
        raise ContractViolation(f"middle contraction needs n >= 1, got {n}")
    return window_map(2 * n + 1, n - 1, MIDDLE_CONTRACTION, f"mK_{n}")


def central_contraction(n: int) -> LinearMap:
    """Length ``2n`` -> ``2n - 1``: merge bits n, n+1 (1-based) into one."""
    if n < 1:
        raise ContractViolation(f"central contraction needs n >= 1, got {n}")
    return window_map(2 * n, n - 1, CENTRAL_CONTRACTION, f"cK_{n}")
