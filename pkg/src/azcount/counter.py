"""Coefficient tables for the diagonal and two-axis symmetric recursions,
their norms, and the counts built on them.

Two families of tables are computed:

* ``C`` (``c_table(n)``): length ``2n``, defined by
  ``C_n = C_{n-1} ∘ R_{2n-2} ∘ E_{2n-2} ∘ K_{2n}`` from ``C_1``.
* ``Cprime`` (``cprime_table(n)``): length ``2n+1``, defined by
  ``C'_{n+2} = C'_n ∘ (R_n ⊗ id ⊗ R_n) ∘ cK_{n+1} ∘ (E_{n+1} ⊗ E_{n+1}) ∘ mK_{n+1} ∘ K_{2n+5}``
  from ``C'_1`` and ``C'_2``.

Tables are built by pushing the previous table through the transposed
pipeline, so each intermediate term is touched once. The literal per-string
evaluators (``*_pullback``) compose the forward maps from :mod:`azcount.maps`
and are kept as an independent check.

A key's bit ``i`` (1-based, written ``i``-th from the left) corresponds to the
``i``-th distinguished vertex of the oracle graphs: top to bottom along the
cut column for ``C``, down the left column then along the bottom row for
``Cprime``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional

from . import maps
from .errors import ConsistencyError, ContractViolation, InvariantError, ResourceLimitError
from .factor import DEFAULT_PRIME_BOUND, factorize
from .formal import BitString, FormalSum, compose_all, identity, mask_str, reverse_mask, tensor_of_maps

FAMILY_C = "C"
FAMILY_CPRIME = "Cprime"

# 4**n keys allowed up to 2**DEFAULT_MAX_TABLE_BITS
DEFAULT_MAX_TABLE_BITS = 26


class SymmetryClass(str, enum.Enum):
    UNRESTRICTED = "unrestricted"
    DIAGONAL = "diagonal"
    DIAGONAL_ANTIDIAGONAL = "diagonal_antidiagonal"


class Source(str, enum.Enum):
    RECURSION = "recursion"
    ORACLE = "oracle"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CoeffTable:
    family: str
    n: int
    table: FormalSum

    def __post_init__(self):
        if self.family not in (FAMILY_C, FAMILY_CPRIME):
            raise ContractViolation(f"unknown table family {self.family!r}")
        want = 2 * self.n if self.family == FAMILY_C else 2 * self.n + 1
        if self.table.length != want:
            raise ContractViolation(f"{self.family} table of order {self.n} must have length {want}")
        bad = [(m, c) for m, c in self.table.terms.items() if c <= 0]
        if bad:
            m, c = min(bad)
            raise InvariantError(f"{self.family}_{self.n} has non-positive coefficient {c} at {mask_str(m, want)}")

    @property
    def length(self) -> int:
        return self.table.length

    def __len__(self):
        return len(self.table)

    def __getitem__(self, key) -> int:
        return self.table[key]

    def export_rows(self) -> list[dict[str, str]]:
        """Support entries as ``{'bits', 'coeff'}`` records, ordered by the bit string read as a binary numeral."""
        rows = [(mask_str(m, self.length), c) for m, c in self.table.terms.items()]
        rows.sort()
        return [{"bits": bits, "coeff": str(c)} for bits, c in rows]


# -- transposed pushforward ---------------------------------------------------

def _preimages(table: maps.LocalTable) -> dict[int, list[int]]:
    """Invert a local table: packed output window -> packed input windows (with multiplicity)."""
    inv: dict[int, list[int]] = {}
    for src, images in table.items():
        s = sum(b << i for i, b in enumerate(src))
        for img in images:
            t = sum(b << i for i, b in enumerate(img))
            inv.setdefault(t, []).append(s)
    return inv


_EXPANSION_PRE = _preimages(maps.EXPANSION_TABLE)
_FIRST_PRE = _preimages(maps.CONTRACTION_FIRST)
_LAST_PRE = _preimages(maps.CONTRACTION_LAST)
_MIDDLE_PRE = _preimages(maps.MIDDLE_CONTRACTION)
_CENTRAL_PRE = _preimages(maps.CENTRAL_CONTRACTION)


def _pull_window(f: dict[int, int], start: int, w_in: int, w_out: int, pre: dict[int, list[int]]) -> dict[int, int]:
    """Transpose of a window map applied to the coefficient vector ``f``."""
    low = (1 << start) - 1
    wmask = (1 << w_out) - 1
    out: dict[int, int] = {}
    get = out.get
    for y, c in f.items():
        srcs = pre.get((y >> start) & wmask)
        if not srcs:
            continue
        base = (y & low) | ((y >> (start + w_out)) << (start + w_in))
        for s in srcs:
            x = base | (s << start)
            out[x] = get(x, 0) + c
    return out


def _pull_expansion(f: dict[int, int], offset: int, length: int) -> dict[int, int]:
    # E = E^{L-1} ∘ ... ∘ E^1, so the transpose applies E^{L-1} first
    for i in range(length - 1, 0, -1):
        f = _pull_window(f, offset + i - 1, 2, 2, _EXPANSION_PRE)
    return f


def _pull_contraction(f: dict[int, int], length: int) -> dict[int, int]:
    """Transpose of K_length (output length ``length - 2``)."""
    f = _pull_window(f, length - 3, 2, 1, _LAST_PRE)
    return _pull_window(f, 0, 2, 1, _FIRST_PRE)


def _next_c(prev: dict[int, int], n: int) -> dict[int, int]:
    m = 2 * n - 2
    full = (1 << m) - 1
    f = {y ^ full: c for y, c in prev.items()}
    f = _pull_expansion(f, 0, m)
    return _pull_contraction(f, 2 * n)


def _next_cprime(prev: dict[int, int], n: int) -> dict[int, int]:
    """C'_{n+2} from C'_n."""
    flip = ((1 << (2 * n + 1)) - 1) ^ (1 << n)
    f = {y ^ flip: c for y, c in prev.items()}
    f = _pull_window(f, n, 2, 1, _CENTRAL_PRE)
    f = _pull_expansion(f, 0, n + 1)
    f = _pull_expansion(f, n + 1, n + 1)
    f = _pull_window(f, n, 3, 2, _MIDDLE_PRE)
    return _pull_contraction(f, 2 * n + 5)


def _drop_zeros(f: dict[int, int]) -> dict[int, int]:
    return {k: v for k, v in f.items() if v}


C1 = {"00": 1, "11": 1}
CPRIME1 = {"111": 1, "100": 1, "001": 1}
CPRIME2 = {"00101": 1, "10100": 1, "10111": 1, "11101": 1, "10001": 2}

_c_cache: dict[int, CoeffTable] = {}
_cprime_cache: dict[int, CoeffTable] = {}


def _guard(n: int, max_table_bits: int):
    if n < 1:
        raise ContractViolation(f"order must be >= 1, got {n}")
    if 2 * n > max_table_bits:
        raise ResourceLimitError(f"order {n} needs 4**{n} keys, above the 2**{max_table_bits} budget")


def c_table(n: int, max_table_bits: int = DEFAULT_MAX_TABLE_BITS) -> CoeffTable:
    _guard(n, max_table_bits)
    if not _c_cache:
        _c_cache[1] = CoeffTable(FAMILY_C, 1, FormalSum.from_strings(C1))
    k = max(i for i in _c_cache if i <= n)
    while k < n:
        k += 1
        f = _next_c(dict(_c_cache[k - 1].table.terms), k)
        _c_cache[k] = CoeffTable(FAMILY_C, k, FormalSum(2 * k, _drop_zeros(f)))
    return _c_cache[n]


def cprime_table(n: int, max_table_bits: int = DEFAULT_MAX_TABLE_BITS) -> CoeffTable:
    _guard(n, max_table_bits)
    if not _cprime_cache:
        _cprime_cache[1] = CoeffTable(FAMILY_CPRIME, 1, FormalSum.from_strings(CPRIME1))
        _cprime_cache[2] = CoeffTable(FAMILY_CPRIME, 2, FormalSum.from_strings(CPRIME2))
    if n not in _cprime_cache:
        prev = cprime_table(n - 2, max_table_bits)
        f = _next_cprime(dict(prev.table.terms), n - 2)
        _cprime_cache[n] = CoeffTable(FAMILY_CPRIME, n, FormalSum(2 * n + 1, _drop_zeros(f)))
    return _cprime_cache[n]


def clear_cache():
    _c_cache.clear()
    _cprime_cache.clear()


# -- literal evaluators --------------------------------------------------------

def _evaluate(prev: FormalSum, image: FormalSum) -> int:
    return sum(c * prev[mask] for mask, c in image.terms.items())


def c_table_pullback(n: int) -> CoeffTable:
    """``C_n`` by evaluating ``C_{n-1}(R(E(K(ε))))`` for every ``ε``."""
    if n < 1:
        raise ContractViolation(f"order must be >= 1, got {n}")
    if n == 1:
        return CoeffTable(FAMILY_C, 1, FormalSum.from_strings(C1))
    prev = c_table_pullback(n - 1).table
    m = 2 * n - 2
    step = compose_all(maps.reverse_map(m), maps.expansion(m), maps.contraction(2 * n))
    values = {}
    for mask in range(1 << (2 * n)):
        values[mask] = _evaluate(prev, step(BitString(mask, 2 * n)))
    return CoeffTable(FAMILY_C, n, FormalSum(2 * n, values))


def cprime_table_pullback(n: int) -> CoeffTable:
    """``C'_n`` by evaluating the displayed composite on every string."""
    if n < 1:
        raise ContractViolation(f"order must be >= 1, got {n}")
    if n == 1:
        return CoeffTable(FAMILY_CPRIME, 1, FormalSum.from_strings(CPRIME1))
    if n == 2:
        return CoeffTable(FAMILY_CPRIME, 2, FormalSum.from_strings(CPRIME2))
    k = n - 2
    prev = cprime_table_pullback(k).table
    flanks = tensor_of_maps(maps.reverse_map(k), identity(1), maps.reverse_map(k))
    step = compose_all(
        flanks,
        maps.central_contraction(k + 1),
        tensor_of_maps(maps.expansion(k + 1), maps.expansion(k + 1)),
        maps.middle_contraction(k + 1),
        maps.contraction(2 * k + 5),
    )
    length = 2 * n + 1
    values = {}
    for mask in range(1 << length):
        values[mask] = _evaluate(prev, step(BitString(mask, length)))
    return CoeffTable(FAMILY_CPRIME, n, FormalSum(length, values))


# -- norms and counts ------------------------------------------------------------

def norm_lk(t: CoeffTable, k: int) -> int:
    """Sum of k-th powers of the coefficients (no root taken)."""
    if t.family != FAMILY_C:
        raise ContractViolation("norm_lk is defined on C tables")
    if k < 1:
        raise ContractViolation(f"k must be positive, got {k}")
    return sum(c ** k for _, c in t.table.items())


def norm_half(t: CoeffTable) -> int:
    """Coefficient sum with entries whose middle bit is 1 counted twice."""
    if t.family != FAMILY_CPRIME:
        raise ContractViolation("norm_half is defined on Cprime tables")
    mid = 1 << t.n
    return sum(c * 2 if m & mid else c for m, c in t.table.items())


@dataclass(frozen=True)
class CountReport:
    symmetry_class: SymmetryClass
    order: int
    count: int
    source: Source
    factorization: Optional[tuple[tuple[int, int], ...]] = None
    composite_tail: Optional[int] = None

    def __post_init__(self):
        if self.factorization is not None:
            prod = self.composite_tail or 1
            for p, e in self.factorization:
                prod *= p ** e
            if prod != self.count:
                raise InvariantError(f"factorization of {self.count} multiplies out to {prod}")

    def as_record(self) -> dict:
        rec = {
            "symmetry_class": self.symmetry_class.value,
            "order": self.order,
            "count": str(self.count),
            "source": self.source.value,
        }
        if self.factorization is not None:
            rec["factorization"] = [{"prime": str(p), "exponent": e} for p, e in self.factorization]
            if self.composite_tail is not None:
                rec["composite_tail"] = str(self.composite_tail)
        return rec


def aztec_closed_form(n: int) -> int:
    return 2 ** (n * (n + 1) // 2)


def count_value(symmetry_class: SymmetryClass, n: int,
                max_table_bits: int = DEFAULT_MAX_TABLE_BITS) -> tuple[int, Source]:
    symmetry_class = SymmetryClass(symmetry_class)
    if n < 1:
        raise ContractViolation(f"order must be >= 1, got {n}")
    if symmetry_class is SymmetryClass.UNRESTRICTED:
        value = norm_lk(c_table(n, max_table_bits), 2)
        if value != aztec_closed_form(n):
            raise ConsistencyError(f"sum of squares of C_{n} is {value}, closed form gives {aztec_closed_form(n)}")
        return value, Source.RECURSION
    if symmetry_class is SymmetryClass.DIAGONAL:
        return norm_lk(c_table(n, max_table_bits), 1), Source.RECURSION
    if n == 1:
        # the 2x2 square: both tilings are fixed by the whole group
        return 2, Source.CLOSED_FORM
    return norm_half(cprime_table(n - 1, max_table_bits)), Source.RECURSION


def count(symmetry_class: SymmetryClass, n: int, factored: bool = False,
          max_table_bits: int = DEFAULT_MAX_TABLE_BITS,
          prime_bound: int = DEFAULT_PRIME_BOUND) -> CountReport:
    symmetry_class = SymmetryClass(symmetry_class)
    value, source = count_value(symmetry_class, n, max_table_bits)
    if not factored:
        return CountReport(symmetry_class, n, value, source)
    factors, tail = factorize(value, prime_bound)
    return CountReport(symmetry_class, n, value, source, tuple(factors), tail if tail != 1 else None)


def sequence(symmetry_class: SymmetryClass, start: int, stop: int, factored: bool = False,
             max_table_bits: int = DEFAULT_MAX_TABLE_BITS) -> list[CountReport]:
    if not 1 <= start <= stop:
        raise ContractViolation(f"need 1 <= from <= to, got {start}..{stop}")
    return [count(symmetry_class, n, factored, max_table_bits) for n in range(start, stop + 1)]


# -- support laws ------------------------------------------------------------------

@dataclass(frozen=True)
class SupportReport:
    n: int
    support_size: int
    bound: int
    all_mod3: bool
    all_even_weight: bool

    @property
    def ok(self) -> bool:
        return self.support_size <= self.bound and self.all_mod3 and self.all_even_weight


def support_report(n: int, max_table_bits: int = DEFAULT_MAX_TABLE_BITS) -> SupportReport:
    t = c_table(n, max_table_bits)
    keys = t.table.terms.keys()
    rep = SupportReport(
        n=n,
        support_size=len(keys),
        bound=4 ** n // 3 + 1,
        all_mod3=all(m % 3 == 0 for m in keys),
        all_even_weight=all(bin(m).count("1") % 2 == 0 for m in keys),
    )
    if not rep.ok:
        raise InvariantError(f"support law violated for C_{n}: {rep}")
    return rep


def max_coefficient(n: int, max_table_bits: int = DEFAULT_MAX_TABLE_BITS) -> int:
    return max(c for _, c in c_table(n, max_table_bits).table.items())


def reversal_symmetric(t: CoeffTable) -> bool:
    """Whether reading every key backwards leaves the table unchanged."""
    terms = t.table.terms
    return all(terms.get(reverse_mask(m, t.length)) == c for m, c in terms.items())


def first_mismatch(a: Mapping[int, int], b: Mapping[int, int], length: int) -> Optional[tuple[str, int, int]]:
    """Smallest bit pattern (as written) where two coefficient maps differ."""
    diffs = [mask_str(m, length) for m in set(a) | set(b) if a.get(m, 0) != b.get(m, 0)]
    if not diffs:
        return None
    bits = min(diffs)
    m = BitString.parse(bits).mask
    return bits, a.get(m, 0), b.get(m, 0)


__all__ = [
    "CoeffTable", "CountReport", "SupportReport", "SymmetryClass", "Source",
    "c_table", "cprime_table", "c_table_pullback", "cprime_table_pullback",
    "norm_lk", "norm_half", "count", "count_value", "sequence", "support_report",
    "max_coefficient", "reversal_symmetric", "aztec_closed_form", "first_mismatch",
    "FAMILY_C", "FAMILY_CPRIME", "DEFAULT_MAX_TABLE_BITS", "clear_cache",
]
