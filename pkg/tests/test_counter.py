import pytest

from azcount import counter
from azcount.counter import (
    CoeffTable,
    CountReport,
    Source,
    SymmetryClass,
    c_table,
    c_table_pullback,
    count,
    cprime_table,
    cprime_table_pullback,
    max_coefficient,
    norm_half,
    norm_lk,
    reversal_symmetric,
    sequence,
    support_report,
)
from azcount.errors import ContractViolation, InvariantError, ResourceLimitError
from azcount.formal import FormalSum

ALL = SymmetryClass.UNRESTRICTED
DIAG = SymmetryClass.DIAGONAL
DAD = SymmetryClass.DIAGONAL_ANTIDIAGONAL


def test_base_tables():
    assert c_table(1).table.to_strings() == {"00": 1, "11": 1}
    assert cprime_table(1).table.to_strings() == {"111": 1, "100": 1, "001": 1}
    assert cprime_table(2).table.to_strings() == {
        "00101": 1, "10100": 1, "10111": 1, "11101": 1, "10001": 2,
    }


def test_c2_matches_illustration():
    assert c_table(2).table.to_strings() == {"0000": 1, "0011": 1, "1001": 2, "1100": 1, "1111": 1}


def test_norms_small():
    assert norm_lk(c_table(2), 1) == 6
    assert norm_lk(c_table(2), 2) == 8
    assert norm_lk(c_table(3), 1) == 24
    assert norm_half(cprime_table(1)) == 4
    assert norm_half(cprime_table(2)) == 10
    assert norm_half(cprime_table(3)) == 28


def test_norms_of_empty_tables():
    assert norm_lk(CoeffTable("C", 2, FormalSum.zero(4)), 1) == 0
    assert norm_half(CoeffTable("Cprime", 2, FormalSum.zero(5))) == 0


def test_norm_family_checks():
    with pytest.raises(ContractViolation):
        norm_lk(cprime_table(1), 1)
    with pytest.raises(ContractViolation):
        norm_half(c_table(1))
    with pytest.raises(ContractViolation):
        norm_lk(c_table(1), 0)


def test_coeff_table_validation():
    with pytest.raises(ContractViolation):
        CoeffTable("C", 2, FormalSum.zero(5))
    with pytest.raises(ContractViolation):
        CoeffTable("D", 1, FormalSum.zero(2))
    with pytest.raises(InvariantError):
        CoeffTable("C", 1, FormalSum.from_strings({"00": -1}))


@pytest.mark.parametrize("cls, n, value", [(ALL, 4, 1024), (DIAG, 7, 190912), (DAD, 7, 1848), (DAD, 1, 2)])
def test_count_examples(cls, n, value):
    assert count(cls, n).count == value


def test_dad_order_one_is_a_constant():
    assert count(DAD, 1).source is Source.CLOSED_FORM
    assert count(DAD, 2).source is Source.RECURSION


@pytest.mark.parametrize("cls, values", [
    (DIAG, [2, 6, 24, 132, 1048, 11960, 190912]),
    (ALL, [2, 8, 64, 1024, 32768]),
    (DAD, [2, 4, 10, 28, 96, 384]),
])
def test_sequences(cls, values):
    assert [r.count for r in sequence(cls, 1, len(values))] == values


def test_sequence_bounds():
    with pytest.raises(ContractViolation):
        sequence(DIAG, 3, 2)
    with pytest.raises(ContractViolation):
        count(DIAG, 0)


def test_unrestricted_mismatch_is_loud(monkeypatch):
    real = counter.c_table

    def doctored(n, max_table_bits=counter.DEFAULT_MAX_TABLE_BITS):
        t = real(n, max_table_bits)
        return CoeffTable("C", n, t.table + FormalSum.basis(next(iter(t.table))[0]))

    monkeypatch.setattr(counter, "c_table", doctored)
    with pytest.raises(counter.ConsistencyError):
        count(ALL, 3)


def test_factored_count():
    r = count(DIAG, 6, factored=True)
    assert r.factorization == ((2, 3), (5, 1), (13, 1), (23, 1))
    assert r.composite_tail is None


def test_composite_tail_when_bound_is_small():
    r = count(DIAG, 6, factored=True, prime_bound=5)
    assert r.factorization == ((2, 3), (5, 1))
    assert r.composite_tail == 299


def test_count_report_checks_product():
    with pytest.raises(InvariantError):
        CountReport(DIAG, 2, 6, Source.RECURSION, ((2, 1), (5, 1)))


@pytest.mark.parametrize("n, size, bound", [(1, 2, 2), (2, 5, 6)])
def test_support_report_examples(n, size, bound):
    rep = support_report(n)
    assert (rep.support_size, rep.bound) == (size, bound)
    assert rep.all_mod3 and rep.all_even_weight


def test_support_report_n3():
    rep = support_report(3)
    assert rep.support_size <= 22 and rep.all_mod3


def test_support_report_raises_on_violation(monkeypatch):
    monkeypatch.setattr(counter, "c_table", lambda n, b=0: CoeffTable("C", 1, FormalSum.from_strings({"10": 1})))
    with pytest.raises(InvariantError):
        support_report(1)


def test_max_coefficient_small():
    assert [max_coefficient(n) for n in (1, 2, 3)] == [1, 2, 6]


@pytest.mark.parametrize("n", range(1, 6))
def test_reversal_and_parity_c(n):
    t = c_table(n)
    assert reversal_symmetric(t)
    assert all(bin(m).count("1") % 2 == 0 for m in t.table.terms)
    assert all(m % 3 == 0 for m in t.table.terms)


@pytest.mark.parametrize("n", range(1, 6))
def test_reversal_and_parity_cprime(n):
    t = cprime_table(n)
    assert reversal_symmetric(t)
    want = (n + 1) * (n + 2) // 2 % 2
    assert all(bin(m).count("1") % 2 == want for m in t.table.terms)


@pytest.mark.parametrize("n", range(1, 5))
def test_pushforward_equals_pullback(n):
    assert c_table(n).table == c_table_pullback(n).table
    assert cprime_table(n).table == cprime_table_pullback(n).table


def test_table_budget_guard():
    with pytest.raises(ResourceLimitError):
        c_table(5, max_table_bits=8)
    with pytest.raises(ResourceLimitError):
        cprime_table(5, max_table_bits=8)
    assert len(c_table(4, max_table_bits=8)) > 0


def test_export_rows():
    rows = c_table(2).export_rows()
    assert [r["bits"] for r in rows] == ["0000", "0011", "1001", "1100", "1111"]
    assert [r["coeff"] for r in rows] == ["1", "1", "2", "1", "1"]


def test_first_mismatch():
    a = c_table(2).table.terms
    b = dict(a)
    b[9] = 5  # 1001
    b[3] = 0  # 1100
    assert counter.first_mismatch(a, b, 4) == ("1001", 2, 5)
    assert counter.first_mismatch(a, dict(a), 4) is None


def test_cache_is_transparent():
    before = c_table(4).table
    counter.clear_cache()
    assert c_table(4).table == before
