"""The matching algebra ``M = Z<y, n> / (y^2 = y, n^2 = 0, yn = ny = n)``.

Elements of ``M^{⊗k}`` are stored as :class:`~azcount.formal.FormalSum` of
length ``k`` under the valuation ``y -> 1``, ``n -> 0``: bit 1 in slot ``i``
means the ``i``-th distinguished vertex is left free (deleted), bit 0 means it
is matched inside the graph. Slot indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ContractViolation
from .formal import FormalSum, tensor_concat

AlgebraTensor = FormalSum

Y = 1
N = 0


@dataclass(frozen=True)
class AlgebraElement:
    """``y_coeff * y + n_coeff * n``."""

    y_coeff: int = 0
    n_coeff: int = 0

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.y_coeff + other.y_coeff, self.n_coeff + other.n_coeff)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return algebra_mul(self, other)


def algebra_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.y_coeff * b.y_coeff, a.y_coeff * b.n_coeff + a.n_coeff * b.y_coeff)


def tensor(words: Sequence[str] | str, *more: str) -> AlgebraTensor:
    """Build a tensor from words over ``{'y', 'n'}``: ``tensor('yy', 'nn')`` is ``y⊗y + n⊗n``.

    A repeated word adds up its coefficient.
    """
    if isinstance(words, str):
        words = [words, *more]
    if not words:
        raise ContractViolation("need at least one word")
    k = len(words[0])
    acc: dict[int, int] = {}
    for w in words:
        if len(w) != k or set(w) - {"y", "n"}:
            raise ContractViolation(f"bad word {w!r}")
        mask = sum(1 << i for i, ch in enumerate(w) if ch == "y")
        acc[mask] = acc.get(mask, 0) + 1
    return FormalSum(k, acc)


def words(a: AlgebraTensor) -> dict[str, int]:
    """Inverse of :func:`tensor`: ``{word: coefficient}``."""
    return {"".join("y" if (m >> i) & 1 else "n" for i in range(a.length)): c for m, c in a.items()}


def _check_indices(idx: Sequence[int], k: int, label: str):
    if any(i < 0 or i >= k for i in idx):
        raise ContractViolation(f"{label} index out of range 0..{k - 1}: {list(idx)}")
    if any(x >= y for x, y in zip(idx, idx[1:])):
        raise ContractViolation(f"{label} indices must be strictly increasing: {list(idx)}")


def interior_multiply(a: AlgebraTensor, b: AlgebraTensor, I: Sequence[int], J: Sequence[int]) -> AlgebraTensor:
    """Multiply slot ``I[r]`` of ``a`` with slot ``J[r]`` of ``b``.

    Slots of ``a`` stay in place (paired ones hold the product); the unpaired
    slots of ``b`` are appended in their original order.
    """
    I, J = list(I), list(J)
    if len(I) != len(J):
        raise ContractViolation(f"|I| = {len(I)} but |J| = {len(J)}")
    _check_indices(I, a.length, "I")
    _check_indices(J, b.length, "J")
    rest = [j for j in range(b.length) if j not in set(J)]
    out_len = a.length + len(rest)
    if out_len == 0:
        raise ContractViolation("interior product has no slots left")
    pairs = list(zip(I, J))
    acc: dict[int, int] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = ma
            dead = False
            for i, j in pairs:
                x = (ma >> i) & 1
                z = (mb >> j) & 1
                if not x and not z:  # n * n = 0
                    dead = True
                    break
                if not z:  # y * n = n
                    m &= ~(1 << i)
            if dead:
                continue
            for pos, j in enumerate(rest):
                if (mb >> j) & 1:
                    m |= 1 << (a.length + pos)
            acc[m] = acc.get(m, 0) + ca * cb
    return FormalSum(out_len, acc)


def fibonacci_element(k: int) -> AlgebraTensor:
    """State sum of the ``k``-vertex path with every vertex distinguished."""
    if k < 1:
        raise ContractViolation(f"k must be >= 1, got {k}")
    if k == 1:
        # a lone vertex cannot be matched internally
        return tensor("y")
    y, nn = tensor("y"), tensor("nn")
    prev2, prev1 = tensor("y"), tensor("yy", "nn")
    for _ in range(3, k + 1):
        prev2, prev1 = prev1, tensor_concat(prev1, y) + tensor_concat(prev2, nn)
    return prev1


def transfer(a: AlgebraTensor) -> AlgebraTensor:
    """State sum after hanging a pendant edge on every distinguished vertex."""
    full = (1 << a.length) - 1
    return a.map_keys(lambda m: m ^ full)


def connected_sum_count(a: AlgebraTensor, b: AlgebraTensor) -> int:
    """Perfect matchings of the graph glued along all distinguished vertices."""
    if a.length != b.length:
        raise ContractViolation(f"arity mismatch: {a.length} vs {b.length}")
    full = (1 << a.length) - 1
    bt = b.terms
    return sum(c * bt.get(m ^ full, 0) for m, c in a.terms.items())


def undistinguish(a: AlgebraTensor, slot: int) -> AlgebraTensor:
    """Make slot ``slot`` an ordinary vertex: keep the states where it is matched, drop the slot."""
    if not 0 <= slot < a.length:
        raise ContractViolation(f"slot {slot} out of range 0..{a.length - 1}")
    if a.length == 1:
        raise ContractViolation("cannot drop the only slot")
    low = (1 << slot) - 1
    acc = {}
    for m, c in a.terms.items():
        if not (m >> slot) & 1:
            acc[(m & low) | ((m >> (slot + 1)) << slot)] = c
    return FormalSum(a.length - 1, acc)


def permute_slots(a: AlgebraTensor, order: Sequence[int]) -> AlgebraTensor:
    """Reorder slots: slot ``p`` of the result is slot ``order[p]`` of ``a``."""
    if sorted(order) != list(range(a.length)):
        raise ContractViolation(f"not a permutation of 0..{a.length - 1}: {list(order)}")

    def move(m: int) -> int:
        return sum(((m >> src) & 1) << dst for dst, src in enumerate(order))

    return a.map_keys(move)
