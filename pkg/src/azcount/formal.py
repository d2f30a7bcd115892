"""Bit strings and sparse integer formal sums over them.

A :class:`BitString` of length ``k`` is a basis element of the free abelian
group on ``{0,1}^k``; a :class:`FormalSum` is an element of that group.

Bit order: position 1 (the first bit, written leftmost) is the least
significant bit of the packed mask, so ``binary_value`` is
``sum(bit_i * 2**(i-1))``. Python-level indices into a bit string are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import ContractViolation

MAX_LENGTH = 64


@dataclass(frozen=True)
class BitString:
    mask: int
    length: int

    def __post_init__(self):
        if not 1 <= self.length <= MAX_LENGTH:
            raise ContractViolation(f"bit string length {self.length} outside 1..{MAX_LENGTH}")
        if not 0 <= self.mask < (1 << self.length):
            raise ContractViolation(f"mask {self.mask} does not fit in {self.length} bits")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitString:
        mask = 0
        length = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ContractViolation(f"bit {i} is {b!r}, expected 0 or 1")
            mask |= b << i
            length += 1
        return cls(mask, length)

    @classmethod
    def parse(cls, text: str) -> BitString:
        """Parse ``'1001'`` with the first character as the first bit."""
        if not text or set(text) - {"0", "1"}:
            raise ContractViolation(f"not a bit string: {text!r}")
        return cls.from_bits(int(c) for c in text)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.length))

    @property
    def weight(self) -> int:
        return bin(self.mask).count("1")

    def __len__(self):
        return self.length

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.mask >> i) & 1

    def __str__(self):
        return "".join("1" if (self.mask >> i) & 1 else "0" for i in range(self.length))

    def __repr__(self):
        return f"BitString('{self}')"

    def complement(self) -> BitString:
        return BitString(self.mask ^ ((1 << self.length) - 1), self.length)

    def binary_value(self) -> int:
        return self.mask

    def reversed(self) -> BitString:
        return BitString(reverse_mask(self.mask, self.length), self.length)

    def concat(self, other: BitString) -> BitString:
        return BitString(self.mask | (other.mask << self.length), self.length + other.length)


def complement(s: BitString) -> BitString:
    return s.complement()


def binary_value(s: BitString) -> int:
    return s.binary_value()


def reverse_mask(mask: int, length: int) -> int:
    out = 0
    for i in range(length):
        if (mask >> i) & 1:
            out |= 1 << (length - 1 - i)
    return out


def mask_str(mask: int, length: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(length))


Key = Union[BitString, str, int]


class FormalSum:
    """Finite integer combination of bit strings of one fixed length.

    Stored sparsely as ``{mask: coefficient}`` with zero coefficients dropped.
    Iteration yields ``(BitString, coefficient)`` pairs in ascending mask order.
    """

    __slots__ = ("length", "_terms")

    def __init__(self, length: int, terms: Mapping[int, int] | None = None):
        if not 1 <= length <= MAX_LENGTH:
            raise ContractViolation(f"formal sum length {length} outside 1..{MAX_LENGTH}")
        self.length = length
        clean = {}
        if terms:
            top = 1 << length
            for mask, c in terms.items():
                if not 0 <= mask < top:
                    raise ContractViolation(f"mask {mask} does not fit in {length} bits")
                if c:
                    clean[mask] = int(c)
        self._terms = clean

    @classmethod
    def _trusted(cls, length: int, terms: dict[int, int]) -> FormalSum:
        # terms must already be canonical (no zeros, masks in range)
        obj = cls.__new__(cls)
        obj.length = length
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, length: int) -> FormalSum:
        return cls(length)

    @classmethod
    def basis(cls, s: BitString, coeff: int = 1) -> FormalSum:
        return cls(s.length, {s.mask: coeff})

    @classmethod
    def from_strings(cls, terms: Mapping[str, int], length: int | None = None) -> FormalSum:
        """Build from ``{'0011': 1, '1001': 2}``; ``length`` is needed only when empty."""
        acc: dict[int, int] = {}
        for text, c in terms.items():
            s = BitString.parse(text)
            if length is None:
                length = s.length
            elif s.length != length:
                raise ContractViolation(f"key {text!r} has length {s.length}, expected {length}")
            acc[s.mask] = acc.get(s.mask, 0) + c
        if length is None:
            raise ContractViolation("length is required for an empty formal sum")
        return cls(length, acc)

    @property
    def terms(self) -> Mapping[int, int]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[int, int]]:
        """``(mask, coefficient)`` pairs sorted by mask."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[BitString, int]]:
        for mask, c in self.items():
            yield BitString(mask, self.length), c

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _key(self, key: Key) -> int:
        if isinstance(key, str):
            key = BitString.parse(key)
        if isinstance(key, BitString):
            if key.length != self.length:
                raise ContractViolation(f"key of length {key.length} for a sum of length {self.length}")
            return key.mask
        return key

    def __getitem__(self, key: Key) -> int:
        return self._terms.get(self._key(key), 0)

    def __contains__(self, key: Key) -> bool:
        return self._key(key) in self._terms

    def _check_same(self, other: FormalSum):
        if not isinstance(other, FormalSum):
            return NotImplemented
        if other.length != self.length:
            raise ContractViolation(f"length mismatch: {self.length} vs {other.length}")
        return None

    def __add__(self, other: FormalSum) -> FormalSum:
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for mask, c in other._terms.items():
            v = acc.get(mask, 0) + c
            if v:
                acc[mask] = v
            else:
                del acc[mask]
        return FormalSum._trusted(self.length, acc)

    def __neg__(self) -> FormalSum:
        return FormalSum._trusted(self.length, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: FormalSum) -> FormalSum:
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> FormalSum:
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return FormalSum.zero(self.length)
        return FormalSum._trusted(self.length, {m: c * k for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.length == other.length and self._terms == other._terms

    def __hash__(self):
        return hash((self.length, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"FormalSum({self.length}, 0)"
        body = " + ".join(
            f"{mask_str(m, self.length)}" if c == 1 else f"{c}*{mask_str(m, self.length)}"
            for m, c in self.items()
        )
        return f"FormalSum({self.length}, {body})"

    def map_keys(self, fn: Callable[[int], int], length: int | None = None) -> FormalSum:
        """Push every key through a mask-level function (need not be injective)."""
        out_len = self.length if length is None else length
        acc: dict[int, int] = {}
        for mask, c in self._terms.items():
            k = fn(mask)
            acc[k] = acc.get(k, 0) + c
        return FormalSum(out_len, acc)

    def to_strings(self) -> dict[str, int]:
        return {mask_str(m, self.length): c for m, c in self.items()}


def accumulate(length: int, pairs: Iterable[tuple[int, int]]) -> FormalSum:
    """Sum ``(mask, coefficient)`` pairs into a canonical formal sum."""
    acc: dict[int, int] = {}
    for mask, c in pairs:
        acc[mask] = acc.get(mask, 0) + c
    return FormalSum(length, acc)


@dataclass(frozen=True)
class LinearMap:
    """Additive extension of a basis rule ``BitString -> FormalSum``."""

    in_length: int
    out_length: int
    rule: Callable[[BitString], FormalSum]
    name: str = ""

    def __call__(self, x: BitString | FormalSum) -> FormalSum:
        if isinstance(x, FormalSum):
            return apply_linear(self, x)
        if x.length != self.in_length:
            raise ContractViolation(f"{self.name or 'map'} expects length {self.in_length}, got {x.length}")
        out = self.rule(x)
        if out.length != self.out_length:
            raise ContractViolation(f"{self.name or 'map'} rule produced length {out.length}, expected {self.out_length}")
        return out

    @classmethod
    def from_table(cls, in_length: int, out_length: int, table: Mapping[int, FormalSum], name: str = "") -> LinearMap:
        """Map given by a complete ``{mask: image}`` table; missing masks annihilate."""
        frozen = dict(table)
        zero = FormalSum.zero(out_length)
        return cls(in_length, out_length, lambda s: frozen.get(s.mask, zero), name)


def identity(k: int) -> LinearMap:
    return LinearMap(k, k, FormalSum.basis, f"Id_{k}")


def apply_linear(m: LinearMap, v: FormalSum) -> FormalSum:
    if v.length != m.in_length:
        raise ContractViolation(f"{m.name or 'map'} expects length {m.in_length}, got {v.length}")
    acc: dict[int, int] = {}
    for mask, c in v.terms.items():
        image = m(BitString(mask, v.length))
        for k, d in image.terms.items():
            acc[k] = acc.get(k, 0) + c * d
    return FormalSum(m.out_length, acc)


def compose(m2: LinearMap, m1: LinearMap) -> LinearMap:
    """``m2 ∘ m1``: apply ``m1`` first."""
    if m1.out_length != m2.in_length:
        raise ContractViolation(f"cannot compose: {m1.name or 'map'} outputs length {m1.out_length}, "
                                f"{m2.name or 'map'} expects {m2.in_length}")
    name = f"{m2.name}∘{m1.name}" if m1.name and m2.name else ""
    return LinearMap(m1.in_length, m2.out_length, lambda s: apply_linear(m2, m1(s)), name)


def compose_all(*maps: LinearMap) -> LinearMap:
    """``compose_all(f, g, h) == f ∘ g ∘ h`` (``h`` applied first)."""
    if not maps:
        raise ContractViolation("compose_all needs at least one map")
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def tensor_concat(a: FormalSum, b: FormalSum) -> FormalSum:
    shift = a.length
    acc = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            acc[ma | (mb << shift)] = ca * cb
    return FormalSum(a.length + b.length, acc)


def tensor_of_maps(*maps: LinearMap) -> LinearMap:
    """``f ⊗ g ⊗ ...`` acting on consecutive blocks of a bit string."""
    if not maps:
        raise ContractViolation("tensor_of_maps needs at least one map")
    in_len = sum(m.in_length for m in maps)
    out_len = sum(m.out_length for m in maps)

    def rule(s: BitString) -> FormalSum:
        result = None
        offset = 0
        for m in maps:
            block = BitString((s.mask >> offset) & ((1 << m.in_length) - 1), m.in_length)
            offset += m.in_length
            image = m(block)
            result = image if result is None else tensor_concat(result, image)
        return result

    name = "⊗".join(m.name for m in maps) if all(m.name for m in maps) else ""
    return LinearMap(in_len, out_len, rule, name)
