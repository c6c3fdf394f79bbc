"""Cross-check matrix behind ``freegen verify``.

Every number coming out of the recurrence engine is compared against the
walk oracles, and the cumulant paths are compared against each other.  The
engine is a parameter so a deliberately broken one can be injected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .cumulants import (
    cumulants_to_moments,
    moments_to_cumulants,
    moments_to_cumulants_fast,
    r_transform_from_moments,
)
from .errors import OracleBudgetError
from .nc import catalan, lattice_limit
from .oracle import DEFAULT_ORACLE_BUDGET, closed_walk_count, exhaustive_expansion
from .recurrence import expand_power
from .serialize import expansion_plain
from .series import WordLengthExpansion, invariant_violations, sphere_size

Engine = Callable[[int, int], WordLengthExpansion]

ERRATA_LABEL = "paper errata (mass-conservation violation)"

# G^8 at N = 2 exactly as printed in the worked example.
PRINTED_G8 = {8: 1, 6: 22, 4: 202, 2: 744, 0: 1316}

EXHAUSTIVE_MAX_ORDER = 10


@dataclass
class Check:
    name: str
    scope: str
    passed: bool = True
    detail: str = ""

    def fail(self, detail: str) -> None:
        if self.passed:
            self.passed = False
            self.detail = detail

    def to_data(self) -> dict:
        return {
            "name": self.name,
            "scope": self.scope,
            "status": "PASS" if self.passed else "FAIL",
            "detail": self.detail,
        }


@dataclass
class Report:
    n_generators: int
    max_order: int
    checks: list[Check] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)
    errata: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> str | None:
        for c in self.checks:
            if not c.passed:
                return f"{c.name}: {c.detail}"
        return None

    def to_data(self) -> dict:
        return {
            "n_generators": self.n_generators,
            "max_order": self.max_order,
            "status": "PASS" if self.passed else "FAIL",
            "first_failure": self.first_failure,
            "checks": [c.to_data() for c in self.checks],
            "summary": list(self.summary),
            "errata": self.errata,
        }

    def to_plain(self) -> str:
        lines = [f"verify N={self.n_generators} max_order={self.max_order}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            tail = f"  ({c.detail})" if c.detail else ""
            lines.append(f"{status}  {c.name}  [{c.scope}]{tail}")
        lines.append("")
        lines.extend(self.summary)
        lines.append("")
        lines.append("errata:")
        for entry in self.errata.get("entries", []):
            lines.append(
                f"  {entry['symbol']}: printed {entry['printed']}, computed "
                f"{entry['computed']}  {entry['label']}"
            )
        for key in ("printed_mass", "computed_mass", "expected_mass"):
            lines.append(f"  {key} = {self.errata[key]}")
        lines.append(f"  closed_walk_count(2, 8) = {self.errata['closed_walk_p0_8']}")
        for note in self.errata.get("notes", []):
            lines.append(f"  note: {note}")
        lines.append("")
        lines.append("status: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"


def _moments(engine: Engine, N: int, L: int) -> list[int]:
    return [engine(N, n)[0] if n % 2 == 0 else 0 for n in range(1, L + 1)]


def errata_section(engine: Engine = expand_power) -> tuple[Check, dict]:
    """Compare the printed G^8 (N = 2) against the computed one."""
    computed = engine(2, 8)
    expected = 4**8
    printed_mass = sum(c * sphere_size(2, length) for length, c in PRINTED_G8.items())
    computed_mass = computed.mass(2)
    walk = closed_walk_count(2, 8)
    entries = []
    for length, symbol in ((2, "p_2^8"), (0, "p_0^8")):
        if PRINTED_G8[length] != computed[length]:
            entries.append({
                "symbol": symbol,
                "printed": str(PRINTED_G8[length]),
                "computed": str(computed[length]),
                "label": ERRATA_LABEL,
            })
    q1_3 = engine(2, 3)[1]
    q1_5 = engine(2, 5)[1]
    p2_4 = engine(2, 4)[2]
    notes = [
        f"q_1^3 = (2N-1)+(2N)^2 would give {3 + 4 ** 2}; computed q_1^3 = {q1_3} = (2N-1)+2N",
        f"q_1^5 = 3p_2^4+p_2^4 would give {4 * p2_4}; computed q_1^5 = {q1_5} = 3p_2^4+p_0^4",
    ]
    data = {
        "entries": entries,
        "printed_mass": str(printed_mass),
        "computed_mass": str(computed_mass),
        "expected_mass": str(expected),
        "closed_walk_p0_8": str(walk),
        "notes": notes,
    }
    check = Check("printed-g8-errata", "N=2 n=8")
    if printed_mass == expected:
        check.fail(f"printed expansion unexpectedly conserves mass ({printed_mass})")
    elif computed_mass != expected:
        check.fail(f"computed mass {computed_mass} != {expected}")
    elif walk != computed[0]:
        check.fail(f"closed_walk_count(2, 8) = {walk} != computed p_0^8 = {computed[0]}")
    elif {e["symbol"] for e in entries} != {"p_2^8", "p_0^8"}:
        check.fail("computed values coincide with the printed ones")
    return check, data


def _published_fixtures(engine: Engine, limit: int, report: Report) -> None:
    check = Check("published-fixtures", "N=2")
    e8 = engine(2, 8)
    expectations = [
        ("p_0^2", engine(2, 2)[0], 4),
        ("q_1^3", engine(2, 3)[1], 7),
        ("p_6^8", e8[6], 22),
        ("p_4^8", e8[4], 202),
        ("leading G^8", e8[8], 1),
    ]
    m = _moments(engine, 2, 6)
    paths = {"recursion": r_transform_from_moments(m, 6, "recursion")}
    if limit >= 6:
        paths["lattice"] = r_transform_from_moments(m, 6, "lattice", limit)
    for method, series in paths.items():
        expectations.append((f"k_4 ({method})", series.coefficient(4), -4))
        expectations.append((f"k_6 ({method})", series.coefficient(6), 8))
    for name, got, want in expectations:
        if got != want:
            check.fail(f"{name} = {got}, expected {want}")
    report.checks.append(check)
    rec = paths["recursion"]
    report.summary.append(f"p_0^2 = {engine(2, 2)[0]}  (N=2)")
    report.summary.append(f"k_4 = {rec.coefficient(4)}  (N=2)")
    report.summary.append(f"k_6 = {rec.coefficient(6)}  (N=2)")


def run_verification(
    N: int = 2,
    max_order: int = 10,
    *,
    limit: int | None = None,
    budget: int = DEFAULT_ORACLE_BUDGET,
    workers: int = 1,
    engine: Engine = expand_power,
) -> Report:
    limit = lattice_limit() if limit is None else limit
    report = Report(N, max_order)
    checks = report.checks

    inv = Check("expansion-invariants", f"N={N} n=0..{max_order}")
    for n in range(max_order + 1):
        problems = invariant_violations(engine(N, n), N)
        if problems:
            inv.fail(f"n={n}: {problems[0]}")
            break
    checks.append(inv)

    top = min(max_order, EXHAUSTIVE_MAX_ORDER)
    exh = Check("recurrence-vs-exhaustive", f"N={N} n=0..{top}")
    for n in range(top + 1):
        try:
            oracle = exhaustive_expansion(N, n, budget)
        except OracleBudgetError:
            exh.scope = f"N={N} n=0..{n - 1} (oracle budget reached)"
            break
        got = engine(N, n)
        if got != oracle:
            diff = next(ell for ell in oracle.lengths() if got[ell] != oracle[ell])
            exh.fail(f"n={n} length {diff}: engine {got[diff]} != oracle {oracle[diff]}")
            break
    checks.append(exh)

    walk = Check("moment-vs-closed-walk", f"N={N} even n<={max_order}")
    for n in range(0, max_order + 1, 2):
        got, want = engine(N, n)[0], closed_walk_count(N, n)
        if got != want:
            walk.fail(f"n={n}: engine {got} != closed walk {want}")
            break
    checks.append(walk)

    m = _moments(engine, N, max_order)
    odd = Check("odd-moments-vanish", f"N={N} odd n<={max_order}")
    for n in range(1, max_order + 1, 2):
        if engine(N, n)[0] != 0:
            odd.fail(f"n={n}: tau(G^n) = {engine(N, n)[0]}")
            break
    checks.append(odd)

    fast = moments_to_cumulants_fast(m, max_order)
    L = min(max_order, limit)
    paths = Check("lattice-vs-recursion", f"N={N} n<={L}")
    lattice_k = moments_to_cumulants(m, L, limit=limit, workers=workers)
    for n in range(1, L + 1):
        if lattice_k[n] != fast[n]:
            paths.fail(f"k_{n}: lattice {lattice_k[n]} != recursion {fast[n]}")
            break
    checks.append(paths)

    even = Check("even-block-sum-vs-full-lattice", f"N={N} n<={L}")
    restricted = r_transform_from_moments(m, L, "lattice", limit, workers)
    for n in range(1, L + 1):
        if restricted.coefficient(n) != lattice_k[n]:
            even.fail(
                f"a_{n}: even-block sum {restricted.coefficient(n)} != full sum {lattice_k[n]}"
            )
            break
    checks.append(even)

    odd_k = Check("odd-cumulants-vanish", f"N={N} odd n<={max_order}")
    for n in range(1, max_order + 1, 2):
        if fast[n] != 0:
            odd_k.fail(f"k_{n} = {fast[n]}")
            break
    checks.append(odd_k)

    closed = Check("closed-form-cumulants", f"N={N} even n<={max_order}")
    for n in range(2, max_order + 1, 2):
        half = n // 2
        want = 2 * N * (-1) ** (half - 1) * catalan(half - 1)
        if fast[n] != want:
            closed.fail(f"k_{n} = {fast[n]}, closed form gives {want}")
            break
    checks.append(closed)

    trip = Check("moment-cumulant-round-trip", f"N={N} n<={L}")
    back = cumulants_to_moments(lattice_k, L, limit=limit, workers=workers)
    if list(back) != m[:L]:
        n = next(i for i in range(L) if back.values[i] != m[i]) + 1
        trip.fail(f"m_{n}: round trip {back[n]} != {m[n - 1]}")
    checks.append(trip)

    _published_fixtures(engine, limit, report)
    errata_check, report.errata = errata_section(engine)
    checks.append(errata_check)

    for n in range(2, min(max_order, 8) + 1, 2):
        report.summary.append(f"k_{n} (N={N}) = {fast[n]}")
    e8 = engine(2, 8)
    report.summary.append("G^8 (N=2): " + expansion_plain(e8).strip().split(" = ", 1)[1])
    return report
