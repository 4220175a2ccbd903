"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Each test records a one-line PASS/FAIL verdict; ``conftest.py`` prints them
at the end of the run.  ``python tests/test_acceptance.py`` runs the same
checks without pytest.
"""

import time

import numpy as np

from scalefield.cli import main
from scalefield.config import parse_config
from scalefield.convergence import CONVERGENCE_CASES, DEFAULT_STEPS
from scalefield.suites import (
    SUITES,
    convergence_rows,
    curl_rows,
    field_axiom_rows,
    map_law_rows,
    reduce_rows,
    relativization_rows,
    rotation_rows,
    su2_rows,
    u1_rows,
    witness_rows,
    _selected,
    CURL_LATTICE,
    DEFAULT_GAMMA,
    DEFAULT_PHI,
)
from scalefield import bundle as B

SEED = 20240101
VERDICTS = {}


def record(n, title, ok, elapsed, limit, detail):
    ok = bool(ok and elapsed < limit)
    VERDICTS[n] = f"{'PASS' if ok else 'FAIL'} criterion {n:>2} {title}: {detail}; {elapsed:.2f} s (limit {limit} s)"
    return ok


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _check_rows(rows):
    worst = max(r[2] for r in rows)
    return all(r[4] for r in rows), worst


def test_criterion_01_field_axioms():
    rows, dt = timed(lambda: field_axiom_rows(np.random.default_rng(SEED), 1000, 1000, 1e-12))
    ok, worst = _check_rows(rows)
    names = {r[0] for r in rows}
    assert {"field.add_associative", "field.mul_commutative", "field.distributive",
            "field.mul_identity", "field.mul_inverse", "field.unit_is_t_over_s"} <= names
    assert record(1, "field axioms", ok, dt, 5, f"max rel err {worst:.2e} over 1000x1000")


def test_criterion_02_map_laws():
    rows, dt = timed(lambda: map_law_rows(np.random.default_rng(SEED + 1), 1000, 1e-12))
    ok, worst = _check_rows(rows)
    assert record(2, "Z/W map laws", ok, dt, 1, f"max rel err {worst:.2e} over 1000 triples")


def test_criterion_03_relativization_exact():
    rows, dt = timed(lambda: relativization_rows(np.random.default_rng(SEED + 2), 1000))
    ok, worst = _check_rows(rows)
    assert record(3, "relativization invariance", ok, dt, 1, f"{int(worst)} bitwise mismatches in 1000")


def test_criterion_04_witnesses():
    rows, dt = timed(lambda: witness_rows(np.random.default_rng(SEED + 3), 1000, 1e-12))
    ok, _ = _check_rows(rows)
    ratio = rows[0][2]
    miss = int(rows[1][2])
    assert record(4, "non-commutation witnesses", ok, dt, 1, f"ratio err {ratio:.2e}, {miss} misclassified")


def test_criterion_05_convergence():
    tol = parse_config("", "convergence").tolerances
    names = sorted(CONVERGENCE_CASES)
    (rows, orders), dt = timed(lambda: convergence_rows(names, DEFAULT_STEPS, tol))
    dims = {CONVERGENCE_CASES[n].dim for n in names}
    ok = len(names) >= 6 and {1, 2} <= dims and all(r[-1] for r in rows)
    assert record(
        5, "discrete-continuum convergence", ok, dt, 30,
        f"{len(names)} configs, orders in [{min(orders):.4f}, {max(orders):.4f}]",
    )


def test_criterion_06_curl():
    def work():
        lat = B.build_lattice(*CURL_LATTICE)
        assert lat.sizes == (64, 64) and lat.spacing == (0.05, 0.05)
        return (
            curl_rows(lat, _selected((), DEFAULT_GAMMA, 2), "Gamma", 5.0)
            + curl_rows(lat, _selected((), DEFAULT_PHI, 2), "Delta", 5.0),
            rotation_rows(lat),
        )

    (rows, rot), dt = timed(work)
    ok = all(r[-1] for r in rows) and len(rows) == 2 * len(B.FIELD_CATALOG)
    worst = max(r[4] / r[5] if r[5] else (0.0 if r[4] == 0 else np.inf) for r in rows)
    flagged = rot[0][-1]
    assert record(6, "gradient integrability", ok and flagged, dt, 10, f"worst curl/bound {worst:.3f}, rotation curl {rot[0][4]:.3f}")


def test_criterion_07_reduction():
    cfg = parse_config("", "reduce-check")
    rows, dt = timed(lambda: reduce_rows(cfg))
    worst = max(max(r[3], r[4], r[5]) for r in rows)
    ok = all(r[-1] for r in rows) and cfg.reduce_cases == 100
    assert record(7, "reduction to standard form", ok, dt, 5, f"max diff {worst:.2e} over 100 configs x 100 sites")


def test_criterion_08_su2_covariance():
    cfg = parse_config("", "gauge-check")
    rows, dt = timed(lambda: su2_rows(cfg))
    cov = [r for r in rows if r[0] == "su2_covariance"]
    worst = max(r[5] for r in cov)
    ok = all(r[-1] for r in rows) and cfg.gauge_seeds == 100 and cfg.gauge_sites == 100
    assert record(8, "SU(2) covariance", ok and worst <= 1e-10, dt, 30, f"max residual {worst:.2e} over {len(cfg.gauge_maps)} maps x 100 seeds x 100 sites")


def test_criterion_09_u1():
    cfg = parse_config("", "gauge-check")
    rows, dt = timed(lambda: u1_rows(cfg))
    worst = max(r[5] for r in rows)
    kinds = {r[0] for r in rows}
    ok = all(r[-1] for r in rows) and kinds == {"u1_roundtrip", "u1_constant_identity"}
    assert record(9, "U(1) transform consistency", ok and worst <= 1e-12, dt, 1, f"max deviation {worst:.2e}")


def test_criterion_10_determinism(tmp_path):
    def work():
        same = True
        for command in SUITES:
            for fmt in ("csv", "json"):
                dirs = [tmp_path / f"{command}-{fmt}-{k}" for k in (0, 1)]
                codes = [main([command, "--seed", "7", "--format", fmt, "--out", str(d)]) for d in dirs]
                files = [sorted(p.name for p in d.iterdir()) for d in dirs]
                same &= codes == [0, 0] and files[0] == files[1] and all(
                    (dirs[0] / f).read_bytes() == (dirs[1] / f).read_bytes() for f in files[0]
                )
        return same

    same, dt = timed(work)
    detail = f"{len(SUITES)} commands x 2 formats run twice, outputs {'byte-identical' if same else 'differ'}"
    assert record(10, "CLI determinism", same, dt, 60, detail)


if __name__ == "__main__":
    import pathlib
    import sys
    import tempfile

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                if "tmp_path" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                    fn(pathlib.Path(tempfile.mkdtemp()))
                else:
                    fn()
            except AssertionError:
                failed += 1
    for n in sorted(VERDICTS):
        print(VERDICTS[n])
    sys.exit(1 if failed else 0)
