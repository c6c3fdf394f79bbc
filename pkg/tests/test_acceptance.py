"""Exit criteria.  One test per criterion; conftest prints a PASS/FAIL line each.

All comparisons are exact integer equality.  Timed sections start from
cold caches.
"""

import json
import random
import subprocess
import sys
import time

import pytest

from freegen import clear_caches
from freegen.cli import main
from freegen.cumulants import (
    cumulants_to_moments,
    moments_to_cumulants,
    moments_to_cumulants_fast,
    r_transform_G,
)
from freegen.nc import (
    NoncrossingPartition,
    catalan,
    enumerate_by_block_type,
    enumerate_nc,
    kreweras_complement,
    leq,
    mobius_recursive,
    mobius_to_top,
)
from freegen.oracle import closed_walk_count, exhaustive_expansion
from freegen.recurrence import expand_power, moment, moment_sequence, moment_series
from freegen.series import sphere_size


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_reference_moments():
    clear_caches()
    with Timer() as t:
        p0_2 = moment(2, 2)
        g8 = expand_power(2, 8)
        g3 = expand_power(2, 3)
    assert p0_2 == 4
    assert (g8[8], g8[6], g8[4]) == (1, 22, 202)
    assert g3[1] == 7
    assert t.elapsed < 1e-3, f"{t.elapsed * 1e3:.3f} ms"


def test_criterion_02_reference_r_transform():
    clear_caches()
    with Timer() as t:
        lattice = r_transform_G(2, 6, "lattice")
        recursion = r_transform_G(2, 6, "recursion")
        prop_sum = moments_to_cumulants(moment_sequence(2, 6), 6)
    expected = (0, 4, 0, -4, 0, 8)
    assert lattice.coefficients == expected
    assert recursion.coefficients == expected
    assert prop_sum.values == expected
    # k_4 = -2 (p_0^2)^2 + p_0^4 = -32 + 28
    assert -2 * moment(2, 2) ** 2 + moment(2, 4) == -4
    # k_6 = 7 (p_0^2)^3 - |NC_{2,4}(6)| p_0^2 p_0^4 + p_0^6 = 448 - 672 + 232
    terms = (7 * 4**3, len(enumerate_by_block_type(6, [2, 4])) * 4 * 28, moment(2, 6))
    assert terms == (448, 672, 232)
    assert t.elapsed < 1.0


def test_criterion_03_errata_detection(capsys):
    clear_caches()
    with Timer() as t:
        code = main(["verify", "--n-generators", "2", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    errata = json.loads(out)["data"]["errata"]
    by_symbol = {e["symbol"]: e for e in errata["entries"]}
    assert (by_symbol["p_2^8"]["printed"], by_symbol["p_2^8"]["computed"]) == ("744", "958")
    assert (by_symbol["p_0^8"]["printed"], by_symbol["p_0^8"]["computed"]) == ("1316", "2092")
    assert all(e["label"] == "paper errata (mass-conservation violation)" for e in by_symbol.values())
    assert errata["printed_mass"] == "62192"
    assert errata["computed_mass"] == errata["expected_mass"] == str(4**8)
    assert errata["closed_walk_p0_8"] == "2092"
    # the checksum itself, recomputed here
    printed = {8: 1, 6: 22, 4: 202, 2: 744, 0: 1316}
    assert sum(c * sphere_size(2, ell) for ell, c in printed.items()) == 62192
    assert closed_walk_count(2, 8) == 2092
    assert t.elapsed < 1.0, f"{t.elapsed:.3f} s"


def test_criterion_04_oracle_equivalence():
    clear_caches()
    with Timer() as t:
        for N in (1, 2, 3):
            for n in range(11):
                assert expand_power(N, n) == exhaustive_expansion(N, n), (N, n)
        for N in (1, 2, 3, 4):
            for n in range(0, 25, 2):
                assert moment(N, n) == closed_walk_count(N, n), (N, n)
    assert t.elapsed < 60.0


def test_criterion_05_evenness():
    for N in (1, 2, 3):
        moments = moment_series(N, 15)
        cumulants = r_transform_G(N, 15, "recursion")
        full_lattice = moments_to_cumulants(moment_sequence(N, 12), 12)
        for n in range(1, 16, 2):
            assert moments.coefficient(n) == 0
            assert moment(N, n) == 0
            assert cumulants.coefficient(n) == 0
            if n <= 12:
                assert full_lattice[n] == 0


def test_criterion_06_lattice_integrity():
    clear_caches()
    with Timer() as t:
        for n in range(1, 11):
            lattice = enumerate_nc(n)
            assert len(lattice) == catalan(n)
            for pi in lattice:
                assert len(pi) + len(kreweras_complement(pi)) == n + 1
        for n in range(1, 9):
            lattice = enumerate_nc(n)
            mu = {}
            for pi in lattice:
                mu[pi] = mobius_to_top(pi)
                assert mu[pi] == mobius_recursive(pi)
            for pi in lattice:
                total = sum(mu[s] for s in lattice if leq(pi, s))
                assert total == (1 if pi == NoncrossingPartition.top(n) else 0)
        assert len(enumerate_by_block_type(6, [2, 4])) == 6
    assert t.elapsed < 120.0


def test_criterion_07_transform_coherence():
    rng = random.Random(20261015)
    for _ in range(200):
        m = [rng.randint(-10**6, 10**6) for _ in range(8)]
        k = moments_to_cumulants(m, 8)
        assert cumulants_to_moments(k, 8).values == tuple(m)
        assert moments_to_cumulants_fast(m, 8) == k
    for N in (1, 2, 3):
        m = moment_sequence(N, 12)
        assert moments_to_cumulants(m, 8) == moments_to_cumulants_fast(m, 8)
        even_only = r_transform_G(N, 12, "lattice")
        unrestricted = moments_to_cumulants(m, 12)
        assert even_only.coefficients == unrestricted.values


def test_criterion_08_closed_form():
    for N in (1, 2, 3):
        for method in ("lattice", "recursion"):
            a = r_transform_G(N, 12, method)
            for n in range(1, 7):
                assert a.coefficient(2 * n) == 2 * N * (-1) ** (n - 1) * catalan(n - 1)
    anchored = r_transform_G(2, 6)
    assert (anchored.coefficient(2), anchored.coefficient(4), anchored.coefficient(6)) == (4, -4, 8)


def test_criterion_09_performance():
    clear_caches()
    with Timer() as t_moments:
        moment_series(2, 200)
    with Timer() as t_fast:
        r_transform_G(2, 60, "recursion")
    clear_caches()
    with Timer() as t_lattice:
        k = moments_to_cumulants(moment_sequence(2, 12), 12)
        a = r_transform_G(2, 12, "lattice")
    assert k.values == a.coefficients
    print(f"moments(200) {t_moments.elapsed:.3f}s  fast(60) {t_fast.elapsed:.3f}s  "
          f"lattice(12) {t_lattice.elapsed:.3f}s")
    assert t_moments.elapsed < 1.0
    assert t_fast.elapsed < 5.0
    assert t_lattice.elapsed < 120.0


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "freegen", *args], capture_output=True, check=True
    ).stdout


@pytest.mark.parametrize("args", [
    ("moments", "--n-generators", "3", "--max-order", "40"),
    ("cumulants", "--n-generators", "2", "--max-order", "12"),
    ("cumulants", "--n-generators", "2", "--max-order", "30"),
    ("nc", "--size", "8", "--mobius"),
    ("nc", "--size", "10", "--even", "--format", "json", "--mobius"),
])
def test_criterion_10_determinism(args):
    first = _cli(*args)
    assert first
    assert _cli(*args) == first
    assert _cli(*args, "--threads", "1") == first
    assert _cli(*args, "--threads", "4") == first
