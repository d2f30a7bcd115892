"""Layer-by-layer cross-checks of the recursions against the oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import counter, oracle
from .counter import SymmetryClass
from .errors import InvariantError, ResourceLimitError
from .formal import FormalSum


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_record(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class LayerReport:
    n: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, bool(passed), detail))

    def equal(self, name: str, expected, actual):
        ok = expected == actual
        self.add(name, ok, f"{actual}" if ok else f"expected {expected}, got {actual}")

    def as_record(self) -> dict:
        return {"n": self.n, "passed": self.passed, "checks": [c.as_record() for c in self.checks]}


PULLBACK_MAX = 4


def _table_diff(report: LayerReport, name: str, table: FormalSum, other: FormalSum,
                labels: tuple[str, str] = ("recursion", "oracle")):
    if table.length != other.length:
        report.add(name, False, f"lengths differ: {table.length} vs {other.length}")
        return
    diff = counter.first_mismatch(table.terms, other.terms, table.length)
    if diff is None:
        report.add(name, True, f"{len(table)} support entries agree")
    else:
        bits, ours, theirs = diff
        report.add(name, False, f"first mismatch at {bits}: {labels[0]} {ours}, {labels[1]} {theirs}")


def _weighted(ss: FormalSum, middle: int) -> int:
    return sum(2 * c if (m >> middle) & 1 else c for m, c in ss.items())


def verify_layer(n: int, limits: oracle.OracleLimits = oracle.DEFAULT_LIMITS, workers: int = 1,
                 enumerate_tilings: bool | None = None) -> LayerReport:
    """Compare the order-``n`` tables and counts with brute force.

    ``enumerate_tilings`` defaults to whether full tiling enumeration fits
    ``limits``; state-sum checks always run.
    """
    rep = LayerReport(n)
    c = counter.c_table(n)
    mc = oracle.state_sum(oracle.mc_graph(n), limits, workers)
    _table_diff(rep, "c_table_vs_mc_state_sum", c.table, mc)

    l1 = counter.norm_lk(c, 1)
    l2 = counter.norm_lk(c, 2)
    rep.equal("l2_closed_form", counter.aztec_closed_form(n), l2)
    rep.equal("l1_vs_mc_coefficient_sum", sum(v for _, v in mc.items()), l1)
    rep.equal("l2_vs_mc_square_sum", sum(v * v for _, v in mc.items()), l2)

    if n >= 2:
        cp = counter.cprime_table(n - 1)
        omc = oracle.state_sum(oracle.omc_graph(n), limits, workers)
        _table_diff(rep, "cprime_table_vs_omc_state_sum", cp.table, omc)
        lhalf = counter.norm_half(cp)
        rep.equal("lhalf_vs_omc_weighted_sum", _weighted(omc, n - 1), lhalf)
    else:
        lhalf = counter.count_value(SymmetryClass.DIAGONAL_ANTIDIAGONAL, 1)[0]

    rep.add("c_reversal_symmetry", counter.reversal_symmetric(c))
    if n >= 2:
        rep.add("cprime_reversal_symmetry", counter.reversal_symmetric(cp))
    if n <= PULLBACK_MAX:
        _table_diff(rep, "c_pushforward_vs_pullback", c.table, counter.c_table_pullback(n).table,
                    ("pushforward", "pullback"))
        if n >= 2:
            _table_diff(rep, "cprime_pushforward_vs_pullback", cp.table, counter.cprime_table_pullback(n - 1).table,
                        ("pushforward", "pullback"))

    try:
        sup = counter.support_report(n)
        rep.add("support_laws", True, f"support {sup.support_size} <= {sup.bound}, mod 3 and parity hold")
    except InvariantError as exc:
        rep.add("support_laws", False, str(exc))

    if enumerate_tilings is None:
        enumerate_tilings = oracle.within_matching_limit(n, limits)
    if enumerate_tilings:
        try:
            every, diag, dad = oracle.invariant_counts(n, [[], ["t"], ["t", "r2"]], limits)
        except ResourceLimitError as exc:
            rep.add("tiling_enumeration", False, str(exc))
        else:
            rep.equal("l2_vs_enumeration", every, l2)
            rep.equal("l1_vs_enumeration", diag, l1)
            rep.equal("lhalf_vs_enumeration", dad, lhalf)
    return rep


def verify_range(n_max: int, limits: oracle.OracleLimits = oracle.DEFAULT_LIMITS, workers: int = 1,
                 enumerate_max: int = 5) -> list[LayerReport]:
    """Run :func:`verify_layer` for ``1..n_max``, capped by the state-sum guard.

    Tiling enumeration runs up to ``enumerate_max`` (and within ``limits``).
    """
    top = min(n_max, limits.max_distinguished // 2)
    reports = []
    for n in range(1, top + 1):
        enum_ok = n <= enumerate_max and oracle.within_matching_limit(n, limits)
        reports.append(verify_layer(n, limits, workers, enumerate_tilings=enum_ok))
    return reports
