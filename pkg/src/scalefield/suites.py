"""Property suites behind each CLI command.

Every suite takes a validated :class:`RunConfig` and returns a
:class:`Report`.  All randomness flows from ``np.random.default_rng(seed)``
(or child streams spawned from the same seed), and rows are produced in a
fixed order, so equal configs give equal reports.
"""

from __future__ import annotations

import numpy as np

from . import bundle as B
from . import covariant as C
from . import gauge as G
from .config import RunConfig
from .convergence import CONVERGENCE_CASES, fit_order
from .report import Report
from .scalars import (
    BaseNumber,
    RelStructure,
    ScaledValue,
    canonical,
    conjugation_paths,
    rel_ops,
    revaluate,
    scale_then_multiply_mismatch,
    valuate,
    w_map,
    z_compose,
)
from .vectors import rel_vector_ops

EPS = np.finfo(float).eps

CHECK_COLUMNS = ("check", "cases", "max_error", "tolerance", "passed")


# --------------------------------------------------------------------------
# random draws


def random_levels(rng: np.random.Generator, n: int) -> np.ndarray:
    """Complex levels with ``|log s| <= 3`` (uniform in the log-disc)."""
    r = 3.0 * np.sqrt(rng.uniform(0, 1, n))
    ang = rng.uniform(-np.pi, np.pi, n)
    return np.exp(r * np.cos(ang) + 1j * r * np.sin(ang))


def random_values(rng: np.random.Generator, n: int) -> np.ndarray:
    """Nonzero complex values with log-uniform modulus in ``[e^-3, e^3]``."""
    return np.exp(rng.uniform(-3, 3, n) + 1j * rng.uniform(-np.pi, np.pi, n))


def _rel(lhs, rhs, scale) -> float:
    return float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs)) / np.asarray(scale)))


def _check_row(name, cases, err, tol):
    err = float(err)
    return (name, int(cases), err, float(tol), bool(err <= tol))


def _summarize(report: Report, error_col: str = "max_error", extra=None) -> Report:
    passed = report.column("passed")
    errs = [e for e in report.column(error_col) if np.isfinite(e)] if report.rows else []
    report.summary = {
        "cases": len(passed),
        "passed": sum(passed),
        "failed": len(passed) - sum(passed),
        "max_error": float(max(errs)) if errs else 0.0,
    }
    if extra:
        report.summary.update(extra)
    return report


# --------------------------------------------------------------------------
# axioms


def field_axiom_rows(rng, pairs: int, triples: int, tol: float) -> list:
    """Field identities of the relativized operations, worst relative error per identity."""
    s_all = random_levels(rng, pairs)
    t_all = random_levels(rng, pairs)
    worst: dict[str, float] = {}

    def note(name, err):
        worst[name] = max(worst.get(name, 0.0), err)

    for s, t in zip(s_all, t_all):
        ops = rel_ops(s, t)
        x, y, z = (random_values(rng, triples) for _ in range(3))
        ax, ay, az = np.abs(x), np.abs(y), np.abs(z)
        note("add_associative", _rel(ops.add(ops.add(x, y), z), ops.add(x, ops.add(y, z)), ax + ay + az))
        note("add_commutative", _rel(ops.add(x, y), ops.add(y, x), ax + ay))
        xy_z = ops.mul(ops.mul(x, y), z)
        note("mul_associative", _rel(xy_z, ops.mul(x, ops.mul(y, z)), np.abs(xy_z)))
        xy = ops.mul(x, y)
        note("mul_commutative", _rel(xy, ops.mul(y, x), np.abs(xy)))
        xz = ops.mul(x, z)
        note("distributive", _rel(ops.mul(x, ops.add(y, z)), ops.add(xy, xz), np.abs(xy) + np.abs(xz)))
        note("add_identity", _rel(ops.add(ops.zero, x), x, ax))
        note("add_inverse", _rel(ops.add(x, ops.neg(x)), ops.zero, ax))
        note("mul_identity", _rel(ops.mul(ops.unit, x), x, ax))
        note("mul_inverse", _rel(ops.mul(x, ops.inv(x)), ops.unit, abs(ops.unit)))
        # the unit is the level-s image of the level-t one
        one_t = revaluate(s, t, ScaledValue(1, t)).v
        note("unit_is_t_over_s", abs(ops.unit - one_t) / abs(one_t))
        # operations on representatives reproduce level-t arithmetic
        q = t / s
        note("mul_homomorphism", _rel(ops.mul(q * x, q * y), q * (x * y), np.abs(q * x * y)))
        note("inv_homomorphism", _rel(ops.inv(q * x), q / x, np.abs(q / x)))
        note("conj_homomorphism", _rel(ops.conj(q * x), q * np.conj(x), np.abs(q * x)))
    return [_check_row(f"field.{k}", pairs * triples, v, tol) for k, v in worst.items()]


def map_law_rows(rng, n: int, tol: float) -> list:
    """Z-transitivity via independently transported operations, and W laws."""
    s_all, t_all, u_all = (random_levels(rng, n) for _ in range(3))
    vals = random_values(rng, 3 * n).reshape(n, 3)
    labels = random_values(rng, n)
    worst: dict[str, float] = {}

    def note(name, err):
        worst[name] = max(worst.get(name, 0.0), float(err))

    for (s, t, u), (x, y, z), b in zip(zip(s_all, t_all, u_all), vals, labels):
        chained = z_compose(rel_ops(s, t), rel_ops(t, u))
        direct = rel_ops(s, u)
        note("z_transitive.unit", abs(chained.unit - direct.unit) / abs(direct.unit))
        for op in ("add", "mul"):
            a = getattr(chained, op)(x, y)
            d = getattr(direct, op)(x, y)
            note(f"z_transitive.{op}", abs(a - d) / max(abs(d), abs(x) + abs(y)))
        note("z_transitive.inv", abs(chained.inv(z) - direct.inv(z)) / abs(direct.inv(z)))
        note("z_transitive.conj", abs(chained.conj(z) - direct.conj(z)) / abs(direct.conj(z)))
        back = z_compose(rel_ops(s, t), rel_ops(t, s))
        note("z_inverse", max(abs(back.unit - 1), abs(back.mul(x, y) - x * y) / abs(x * y)))
        a_u = ScaledValue(x, u)
        two = revaluate(s, t, revaluate(t, u, a_u)).v
        one = revaluate(s, u, a_u).v
        note("z_transitive.revaluate", abs(two - one) / abs(one))

        base = BaseNumber(b)
        note("w_transitive", abs(w_map(s, t, w_map(t, u, base)).label - w_map(s, u, base).label) / abs(w_map(s, u, base).label))
        note("w_invertible", abs(w_map(t, s, w_map(s, t, base)).label - b) / abs(b))
        kept = valuate(s, w_map(s, t, base)).v
        note("w_preserves_value", abs(kept - valuate(t, base).v) / abs(kept))
    return [_check_row(f"maps.{k}", n, v, tol) for k, v in worst.items()]


def relativization_rows(rng, n: int) -> list:
    """``canonical`` is unchanged, bit for bit, when both levels are rescaled."""
    alpha, t, s = (random_levels(rng, n) for _ in range(3))
    mismatches = 0
    for a, tt, ss in zip(alpha, t, s):
        base = RelStructure(tt, ss)
        moved = base.rescaled(a)
        c0, c1 = canonical(base), canonical(moved)
        if repr(c0) != repr(c1) or base != moved:
            mismatches += 1
    return [_check_row("relativization.exact_invariance", n, mismatches, 0.0)]


def witness_rows(rng, n: int, tol: float) -> list:
    """Order-of-operations witnesses: product ratio and conjugation paths."""
    s_all = random_levels(rng, n)
    q_all = random_levels(rng, n)
    # a third of the cases get a real ratio t/s (of either sign)
    real = np.arange(n) % 3 == 0
    q_all[real] = np.abs(q_all[real]) * rng.choice([-1.0, 1.0], real.sum())
    a_all, b_all = random_values(rng, n), random_values(rng, n)
    ratio_err = 0.0
    misclassified = 0
    for s, q, a, b, is_real in zip(s_all, q_all, a_all, b_all, real):
        t = s * q
        first, second = scale_then_multiply_mismatch(s, t, ScaledValue(a, t), ScaledValue(b, t))
        ratio_err = max(ratio_err, abs(second / first - t / s) / abs(t / s))
        c1, c2 = conjugation_paths(s, t, ScaledValue(a, t))
        differ = abs(c1 - c2) > 1e-9 * abs(c1)
        expected = abs((t / s).imag) > 1e-9 * abs(t / s)
        misclassified += differ != expected
        if is_real and expected:
            misclassified += 1
    return [
        _check_row("witness.mul_order_ratio", n, ratio_err, tol),
        _check_row("witness.conj_paths_iff_complex_ratio", n, misclassified, 0.0),
    ]


def vector_axiom_rows(rng, pairs: int, per_pair: int, dim: int, tol: float) -> list:
    s_all, t_all = random_levels(rng, pairs), random_levels(rng, pairs)
    worst: dict[str, float] = {}

    def note(name, err):
        worst[name] = max(worst.get(name, 0.0), float(err))

    for s, t in zip(s_all, t_all):
        vo = rel_vector_ops(s, t, dim)
        so = vo.scalars
        a, b = random_values(rng, per_pair)[:, None], random_values(rng, per_pair)[:, None]
        x = random_values(rng, per_pair * dim).reshape(per_pair, dim)
        y = random_values(rng, per_pair * dim).reshape(per_pair, dim)
        nx = np.linalg.norm(x, axis=-1)[:, None]
        lhs = vo.smul(so.mul(a, b), x)
        note("vector.smul_compatible", _rel(lhs, vo.smul(a, vo.smul(b, x)), np.abs(lhs)))
        note("vector.smul_unit", _rel(vo.smul(so.unit, x), x, nx))
        d1 = vo.smul(a, vo.add(x, y))
        note("vector.distributive", _rel(d1, vo.add(vo.smul(a, x), vo.smul(a, y)), np.abs(vo.smul(a, x)) + np.abs(vo.smul(a, y))))
        d2 = vo.smul(so.add(a, b), x)
        note("vector.scalar_distributive", _rel(d2, vo.add(vo.smul(a, x), vo.smul(b, x)), np.abs(vo.smul(a, x)) + np.abs(vo.smul(b, x))))
        # |a v| = |a| |v| read through the relativized tables
        nav = vo.norm(vo.smul(a, x))
        expect = so.mul(so.abs(a[:, 0]), vo.norm(x))
        note("vector.norm_homogeneous", _rel(nav, expect, np.abs(expect)))
        # representatives: (q a) acting on (q v) is q (a v)
        q = vo.q
        note("vector.rep_homomorphism", _rel(vo.smul(q * a, q * x), q * (a * x), np.abs(q * a * x)))
    return [_check_row(k, pairs * per_pair, v, tol) for k, v in worst.items()]


def run_axioms(cfg: RunConfig) -> Report:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tolerances
    report = Report("axioms", CHECK_COLUMNS)
    rows = (
        field_axiom_rows(rng, cfg.pairs, cfg.triples, tol["field_axioms"])
        + map_law_rows(rng, cfg.triples, tol["map_laws"])
        + relativization_rows(rng, cfg.triples)
        + witness_rows(rng, cfg.triples, tol["noncommutation"])
        + vector_axiom_rows(rng, 100, 100, 3, tol["vector_axioms"])
    )
    for r in rows:
        report.add(*r)
    return _summarize(report)


# --------------------------------------------------------------------------
# scale demo


def run_scale_demo(cfg: RunConfig) -> Report:
    s, t, a, b = cfg.s, cfg.t, cfg.a, cfg.b
    q = t / s
    report = Report("scale-demo", ("quantity", "re", "im", "expected_re", "expected_im", "abs_error", "passed"))
    first, second = scale_then_multiply_mismatch(s, t, ScaledValue(a, t), ScaledValue(b, t))
    c1, c2 = conjugation_paths(s, t, ScaledValue(a, t))
    # expected values by direct evaluation of the level-s representatives
    entries = [
        ("level_s", s, s),
        ("level_t", t, t),
        ("unit_of_t_in_s", rel_ops(s, t).unit, q),
        ("a_in_s", revaluate(s, t, ScaledValue(a, t)).v, q * a),
        ("b_in_s", revaluate(s, t, ScaledValue(b, t)).v, q * b),
        ("multiply_then_scale", first, q * (a * b)),
        ("scale_then_multiply", second, (q * a) * (q * b)),
        ("order_ratio", second / first if first else complex("nan"), q),
        ("conjugate_then_scale", c1, q * a.conjugate()),
        ("scale_then_conjugate", c2, (q * a).conjugate()),
        ("conjugation_gap", c2 - c1, (q.conjugate() - q) * a.conjugate()),
    ]
    tol = cfg.tolerances["noncommutation"]
    for name, got, want in entries:
        got, want = complex(got), complex(want)
        err = abs(got - want)
        ok = err <= tol * max(1.0, abs(want))
        report.add(name, got.real, got.imag, want.real, want.imag, err, bool(ok))
    return _summarize(report, "abs_error", {"ratio_re": float(q.real), "ratio_im": float(q.imag)})


# --------------------------------------------------------------------------
# convergence


CONVERGENCE_COLUMNS = (
    "config", "mu", "h", "error", "discrete_re", "discrete_im",
    "continuum_re", "continuum_im", "order", "linear_model_ok", "passed",
)


def convergence_rows(names, steps, tol) -> tuple[list, list]:
    from .convergence import run_case

    lo, hi, factor = tol["order_low"], tol["order_high"], tol["linear_model_factor"]
    rows, orders = [], []
    for name in names:
        case = CONVERGENCE_CASES[name]
        for mu in case.directions:
            res = run_case(case, mu, steps)
            order, _ = fit_order(res.steps, res.errors)
            c = res.errors[0] / res.steps[0]
            linear_ok = bool(res.errors[-1] <= factor * c * res.steps[-1])
            ok = bool(lo <= order <= hi and linear_ok)
            orders.append(order)
            for h, e, d, k in zip(res.steps, res.errors, res.discrete, res.continuum):
                rows.append((name, mu, float(h), float(e), d.real, d.imag, k.real, k.imag, float(order), linear_ok, ok))
    return rows, orders


def run_convergence(cfg: RunConfig) -> Report:
    names = list(cfg.configs) if cfg.configs else sorted(CONVERGENCE_CASES)
    rows, orders = convergence_rows(names, cfg.steps, cfg.tolerances)
    report = Report("convergence", CONVERGENCE_COLUMNS)
    for r in rows:
        report.add(*r)
    # one study per (config, mu); a study fails as a whole
    studies = {(r[0], r[1]): r[-1] for r in rows}
    report.summary = {
        "cases": len(studies),
        "passed": sum(studies.values()),
        "failed": len(studies) - sum(studies.values()),
        "max_error": float(max((r[3] for r in rows), default=0.0)),
        "min_order": float(min(orders)) if orders else float("nan"),
        "max_order": float(max(orders)) if orders else float("nan"),
    }
    return report


# --------------------------------------------------------------------------
# curl diagnostic

CURL_LATTICE = (2, (64, 64), (0.05, 0.05))

# defaults sized for the 64 x 64, h = 0.05 box [0, 3.15]^2
DEFAULT_GAMMA = {
    "constant": {"value": 0.7},
    "linear": {"slope": (0.4, -0.6), "offset": 0.1},
    "quadratic": {"curvature": (0.3, -0.2), "cross": 0.25},
    "gaussian": {"amp": 0.8, "center": (1.6, 1.5), "width": 0.6},
    "plane_wave": {"k": (1.3, 0.7), "amp": 0.5, "phase": 0.2},
}
DEFAULT_PHI = {
    "constant": {"value": -0.4},
    "linear": {"slope": (-0.25, 0.5)},
    "quadratic": {"curvature": (-0.15, 0.35), "cross": -0.4},
    "gaussian": {"amp": -0.5, "center": (1.2, 2.0), "width": 0.45},
    "plane_wave": {"k": (-0.6, 2.1), "amp": 0.3, "phase": 1.1},
}


def _lattice(cfg: RunConfig, default) -> B.Lattice:
    if cfg.lattice_dim is None:
        return B.build_lattice(*default)
    return B.build_lattice(cfg.lattice_dim, cfg.lattice_sizes, cfg.lattice_spacing)


def _selected(selections, defaults, dim):
    if not selections:
        return [(name, B.catalog_field(name, dim, **defaults[name])) for name in defaults]
    out = []
    for sel in selections:
        params = {**defaults.get(sel.name, {}), **sel.kwargs} if dim == 2 else sel.kwargs
        out.append((sel.label, B.catalog_field(sel.name, dim, **params)))
    return out


def curl_bound(field: B.AnalyticField, grads, spacing, factor: float) -> float:
    """``factor h^2 M4`` plus a rounding floor.

    ``M4`` bounds the third derivatives of the gradient components.  The
    floor covers the cancellation in two central differences,
    ``(|g(x+h)| + |g(x-h)|) eps / (2h)`` each, with a safety factor of 8.
    """
    h = max(spacing)
    gmax = max(float(np.max(np.abs(g))) for g in grads)
    return factor * h * h * field.deriv_bound(4) + 16.0 * EPS * gmax / min(spacing)


def curl_rows(lattice: B.Lattice, fields, role: str, factor: float) -> list:
    rows = []
    d = lattice.dim
    for label, f in fields:
        grads = [B.sample_gradient(lattice, f, mu) for mu in range(d)]
        bound = curl_bound(f, grads, lattice.spacing, factor)
        for mu in range(d):
            for nu in range(mu + 1, d):
                curl = float(np.max(np.abs(C.curl_grid(grads, lattice.spacing, mu, nu))))
                rows.append((role, label, mu, nu, curl, float(bound), bool(curl <= bound)))
    return rows


def rotation_rows(lattice: B.Lattice) -> list:
    """``B = (-y, x)`` is not a gradient: its curl is 2 everywhere and must be flagged."""
    if lattice.dim < 2:
        return []
    x = lattice.coords()
    vf = [-x[..., 1], x[..., 0]] + [np.zeros(lattice.sizes)] * (lattice.dim - 2)
    curl = C.curl_grid(vf, lattice.spacing, 0, 1)
    worst = float(np.max(np.abs(curl - 2.0)))
    return [("B_rotation", "(-y,x)", 0, 1, float(np.max(np.abs(curl))), 2.0, bool(worst <= 1e-9))]


def run_curl(cfg: RunConfig) -> Report:
    lattice = _lattice(cfg, CURL_LATTICE)
    factor = cfg.tolerances["curl_factor"]
    report = Report("curl-diagnostic", ("role", "field", "mu", "nu", "max_curl", "bound", "passed"))
    rows = (
        curl_rows(lattice, _selected(cfg.gamma, DEFAULT_GAMMA, lattice.dim), "Gamma", factor)
        + curl_rows(lattice, _selected(cfg.phi, DEFAULT_PHI, lattice.dim), "Delta", factor)
        + rotation_rows(lattice)
    )
    for r in rows:
        report.add(*r)
    _summarize(report, "max_curl")
    # the rotation example is meant to have a large curl
    report.summary["max_error"] = max((r[4] for r in rows if r[0] != "B_rotation"), default=0.0)
    return report


# --------------------------------------------------------------------------
# gauge covariance

GAUGE_LATTICE = (2, (16, 16), (0.1, 0.1))
GAUGE_COLUMNS = ("check", "gauge_map", "seed", "site", "mu", "residual", "tolerance", "passed")

U1_THETAS = {
    "constant": lambda d: B.constant(d, 0.9),
    "linear": lambda d: B.linear(d, np.linspace(0.7, -0.3, d), 0.2),
    "gaussian": lambda d: B.gaussian(d, 1.4, 0.5, 0.6),
    "plane_wave": lambda d: B.plane_wave(d, np.linspace(1.1, 2.0, d), 0.8, 0.4),
}


def _site_label(site) -> str:
    return ":".join(str(int(i)) for i in site)


def su2_rows(cfg: RunConfig) -> list:
    lattice = _lattice(cfg, GAUGE_LATTICE) if cfg.lattice_dim else B.build_lattice(
        cfg.gauge_dim, (16,) * cfg.gauge_dim, (0.1,) * cfg.gauge_dim
    )
    dim = lattice.dim
    tol = cfg.tolerances["covariance"]
    catalog = G.gauge_map_catalog(dim)
    maps = [(name, catalog[name]) for name in cfg.gauge_maps]
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.gauge_seeds)
    rows = {name: [] for name, _ in maps}
    unit_defect = {name: 0.0 for name, _ in maps}
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        psi, sf, cf, gc = G.random_setup(rng, dim, use_E=cfg.use_E)
        sites = G.random_sites(rng, lattice, cfg.gauge_sites)
        x = lattice.position(sites)
        for name, gmap in maps:
            unit_defect[name] = max(unit_defect[name], G.check_su2(gmap(x)))
            for mu in range(dim):
                res = G.covariance_residual(psi, sf, cf, gc, gmap, x, mu)
                i = int(np.argmax(res))
                r = float(res[i])
                rows[name].append(("su2_covariance", name, k, _site_label(sites[i]), mu, r, tol, bool(r <= tol)))
    out = []
    for name, _ in maps:
        out.extend(rows[name])
        d = unit_defect[name]
        out.append(("su2_unitarity", name, -1, "all", -1, d, G.UNITARITY_TOL * 10, bool(d <= G.UNITARITY_TOL * 10)))
    return out


def u1_rows(cfg: RunConfig) -> list:
    """Round trip ``U`` then ``U^+`` restores ``E``; a constant phase changes nothing."""
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(cfg.gauge_seeds + 1)[-1])
    dim = cfg.gauge_dim
    lattice = B.build_lattice(dim, (16,) * dim, (0.1,) * dim)
    x = lattice.position(lattice.interior_sites())
    tol = cfg.tolerances["u1"]
    g1 = float(rng.uniform(0.5, 2.0))
    E = [G.random_real_field(rng, dim)(x) for _ in range(dim)]
    out = []
    for name, make in U1_THETAS.items():
        gmap = G.u1_phase(make(dim), name=f"u1_{name}")
        U = gmap(x)
        for mu in range(dim):
            dU = gmap.d(x, mu)
            once = G.u1_transform(E[mu], U, dU, g1)
            back = G.u1_transform(once, np.conj(U), np.conj(dU), g1)
            r = float(np.max(np.abs(back - E[mu])))
            out.append(("u1_roundtrip", gmap.name, 0, "all", mu, r, tol, bool(r <= tol)))
            if name == "constant":
                r = float(np.max(np.abs(once - E[mu])))
                out.append(("u1_constant_identity", gmap.name, 0, "all", mu, r, tol, bool(r <= tol)))
    return out


def run_gauge(cfg: RunConfig) -> Report:
    report = Report("gauge-check", GAUGE_COLUMNS)
    for r in su2_rows(cfg) + u1_rows(cfg):
        report.add(*r)
    return _summarize(report, "residual")


# --------------------------------------------------------------------------
# reduction to the standard form


def reduce_rows(cfg: RunConfig) -> list:
    dim = cfg.gauge_dim
    lattice = B.build_lattice(dim, (16,) * dim, (0.1,) * dim)
    tol = cfg.tolerances["reduction"]
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.reduce_cases)
    sf = B.ScalingField(B.zero_field(dim))
    cf = B.ConnectionField([B.zero_field(dim) for _ in range(dim)])
    rows = []
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        psi, _, _, gc = G.random_setup(rng, dim, use_E=True)
        x = lattice.position(G.random_sites(rng, lattice, 100))
        for mu in range(dim):
            total = G.reduce_to_standard(psi, gc, x, mu)
            # term by term: the identity part is exactly i g1 E, the boson part is shared
            coef = G.scaling_coefficient(sf, cf, gc, x, mu)
            ident = float(np.max(np.abs(coef - 1j * gc.couplings.g1 * gc.E_at(x, mu))))
            full = G.full_covariant_derivative(psi, sf, cf, gc, x, mu)
            deriv = full - coef[..., None] * psi(x) - 0.5j * gc.couplings.g * np.einsum(
                "...ab,...b->...a", G.alpha_dot_tau(gc.alpha_at(x, mu)), psi(x)
            )
            grad = float(np.max(np.abs(deriv - psi.d(x, mu))))
            err = max(total, ident, grad)
            rows.append(("standard_form", k, mu, total, ident, grad, tol, bool(err <= tol)))
    # everything switched off leaves the plain derivative
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(cfg.reduce_cases + 1)[-1])
    psi, _, _, _ = G.random_setup(rng, dim)
    x = lattice.position(lattice.interior_sites())
    gc0 = G.GaugeConfig.zero(dim, use_E=True)
    for mu in range(dim):
        err = float(np.max(np.abs(G.full_covariant_derivative(psi, sf, cf, gc0, x, mu) - psi.d(x, mu))))
        rows.append(("plain_derivative", -1, mu, err, 0.0, 0.0, tol, bool(err <= tol)))
    return rows


def run_reduce(cfg: RunConfig) -> Report:
    report = Report("reduce-check", ("case", "seed", "mu", "max_diff", "identity_term_diff", "derivative_term_diff", "tolerance", "passed"))
    for r in reduce_rows(cfg):
        report.add(*r)
    return _summarize(report, "max_diff")


SUITES = {
    "axioms": run_axioms,
    "scale-demo": run_scale_demo,
    "convergence": run_convergence,
    "curl-diagnostic": run_curl,
    "gauge-check": run_gauge,
    "reduce-check": run_reduce,
}


def run(cfg: RunConfig) -> Report:
    return SUITES[cfg.command](cfg)
