"""Discrete-versus-continuum convergence studies for the covariant derivatives.

Each configuration pairs a discrete (limit-definition) derivative with its
closed form on a handful of probe sites.  The error at step ``h`` is the
largest deviation over probes and components; the observed order is the
least-squares slope of ``log error`` against ``log h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bundle as B
from . import covariant as C
from .scalars import canonical

DEFAULT_STEPS = (1e-2, 5e-3, 2.5e-3)
ORDER_WINDOW = (0.9, 1.1)
LINEAR_MODEL_FACTOR = 10.0


@dataclass(frozen=True)
class ConvergenceCase:
    name: str
    dim: int
    directions: tuple[int, ...]
    probes: np.ndarray
    # (positions, mu, h) -> values; (positions, mu) -> values
    discrete: Callable
    continuum: Callable


@dataclass(frozen=True)
class ConvergenceResult:
    name: str
    mu: int
    steps: tuple[float, ...]
    errors: tuple[float, ...]
    discrete: tuple[complex, ...]
    continuum: tuple[complex, ...]
    order: float
    constant: float

    @property
    def order_ok(self) -> bool:
        lo, hi = ORDER_WINDOW
        return lo <= self.order <= hi

    @property
    def linear_model_ok(self) -> bool:
        # linear model err ~ c h with c taken from the coarsest step
        c = self.errors[0] / self.steps[0]
        return self.errors[-1] <= LINEAR_MODEL_FACTOR * c * self.steps[-1]

    @property
    def passed(self) -> bool:
        return self.order_ok and self.linear_model_ok


def fit_order(steps, errors) -> tuple[float, float]:
    """Least-squares fit of ``err = c h^p``; returns ``(p, c)``."""
    steps = np.asarray(steps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if np.any(errors <= 0):
        return float("nan"), 0.0
    p, logc = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(p), float(np.exp(logc))


def _probe_grid(lattice: B.Lattice, stride: int) -> np.ndarray:
    sites = lattice.interior_sites()[::stride]
    return lattice.position(sites)


def _section_pair(sec, cf, which):
    def disc(xs, mu, h):
        fn = {
            "position": lambda x: C.d_section_pos_discrete(sec, cf, x, mu, h),
            "level": lambda x: C.d_section_level_discrete(sec, x, mu, h),
            "total": lambda x: C.d_section_discrete(sec, cf, x, mu, h),
        }[which]
        return np.array([canonical(fn(x)) for x in xs])

    def cont(xs, mu):
        fn = {
            "position": lambda x: C.d_section_pos_continuum(sec, cf, x, mu),
            "level": lambda x: C.d_section_level_continuum(sec, x, mu),
            "total": lambda x: C.d_section_continuum(sec, cf, x, mu),
        }[which]
        return np.array([fn(x).value for x in xs])

    return disc, cont


def _scalar_pair(psi, sf, cf):
    return (
        lambda xs, mu, h: C.d_scalar_discrete(psi, sf, cf, xs, mu, h),
        lambda xs, mu: C.d_scalar_continuum(psi, sf, cf, xs, mu),
    )


def _vector_pair(psi, sf, cf):
    return (
        lambda xs, mu, h: C.d_vector_discrete(psi, sf, cf, xs, mu, h),
        lambda xs, mu: C.d_vector_continuum(psi, sf, cf, xs, mu),
    )


def _cases() -> dict[str, ConvergenceCase]:
    lat1 = B.build_lattice(1, [16], [0.1])
    lat2 = B.build_lattice(2, [8, 8], [0.15, 0.15])
    p1 = _probe_grid(lat1, 3)
    p2 = _probe_grid(lat2, 5)
    cases = {}

    def add(name, dim, probes, pair):
        disc, cont = pair
        cases[name] = ConvergenceCase(name, dim, tuple(range(dim)), probes, disc, cont)

    # 1-D, constant connection; error is exactly (e^{zh}-1)/h - z
    sf = B.ScalingField(B.linear(1, 0.3))
    cf = B.ConnectionField.constant(1, 0.1, 0.2)
    add("section_position_1d", 1, p1, _section_pair(B.Section(sf, lat1), cf, "position"))

    sf = B.ScalingField(B.gaussian(1, 0.5, 0.4, 0.8), B.plane_wave(1, 1.5, 0.7))
    add("section_level_1d", 1, p1, _section_pair(B.Section(sf, lat1), cf, "level"))

    sf = B.ScalingField(B.quadratic(2, [0.3, -0.2], 0.25), B.linear(2, [0.4, -0.6]))
    cf = B.ConnectionField(
        [B.linear(2, [0.2, 0.1], 0.3), B.constant(2, -0.4)],
        [B.gaussian(2, 0.5, [0.5, 0.5], 0.6), B.plane_wave(2, [1.0, 0.5], 0.3)],
    )
    add("section_total_2d", 2, p2, _section_pair(B.Section(sf, lat2, 1.5 - 0.5j), cf, "total"))

    sf = B.ScalingField(B.linear(1, 0.3))
    cf = B.ConnectionField.constant(1, 0.1, 0.2)
    psi = B.plane_wave(1, 2.0, complex_valued=True)
    add("scalar_plane_wave_1d", 1, p1, _scalar_pair(psi, sf, cf))

    sf = B.ScalingField(B.gaussian(2, 0.6, [0.4, 0.6], 0.7), B.plane_wave(2, [0.8, -1.1], 0.5))
    cf = B.ConnectionField(
        [B.plane_wave(2, [0.5, 0.9], 0.3), B.linear(2, [-0.2, 0.1])],
        [B.constant(2, 0.25), B.gaussian(2, -0.4, [0.3, 0.2], 0.9)],
    )
    psi = B.gaussian(2, 1.2, [0.5, 0.4], 0.6) + B.plane_wave(2, [1.3, 0.7], 0.5, 0.2, complex_valued=True)
    add("scalar_gaussian_2d", 2, p2, _scalar_pair(psi, sf, cf))

    sf = B.ScalingField(B.quadratic(2, [0.2, 0.35], -0.3), B.linear(2, [0.15, 0.25]))
    cf = B.ConnectionField.constant(2, [0.3, -0.2], [0.1, 0.4])
    psi = B.quadratic(2, [0.7, -0.4], 0.5, 1.0)
    add("scalar_quadratic_2d", 2, p2, _scalar_pair(psi, sf, cf))

    sf = B.ScalingField(B.plane_wave(2, [0.9, 0.4], 0.4), B.gaussian(2, 0.3, [0.2, 0.7], 0.8))
    cf = B.ConnectionField(
        [B.gaussian(2, 0.4, [0.6, 0.3], 0.7), B.constant(2, 0.2)],
        [B.linear(2, [0.3, -0.1]), B.constant(2, -0.3)],
    )
    psi_v = B.VectorField(
        (
            B.plane_wave(2, [1.1, -0.6], 0.9, complex_valued=True),
            B.gaussian(2, 0.8, [0.4, 0.5], 0.5) + B.linear(2, [0.5, 0.2], 0.3),
        )
    )
    add("vector_mixed_2d", 2, p2, _vector_pair(psi_v, sf, cf))

    sf = B.ScalingField(B.gaussian(1, 0.4, 0.7, 0.6), kind="real")
    cf = B.ConnectionField([B.plane_wave(1, 1.2, 0.3)], kind="real")
    psi = B.plane_wave(1, 1.7, 1.0, 0.3)
    add("scalar_real_kind_1d", 1, p1, _scalar_pair(psi, sf, cf))

    return cases


CONVERGENCE_CASES = _cases()


def run_case(case: ConvergenceCase, mu: int, steps=DEFAULT_STEPS) -> ConvergenceResult:
    cont = np.asarray(case.continuum(case.probes, mu))
    errors, disc_vals, cont_vals = [], [], []
    for h in steps:
        disc = np.asarray(case.discrete(case.probes, mu, h))
        diff = np.abs(disc - cont)
        worst = np.unravel_index(np.argmax(diff), diff.shape)
        errors.append(float(diff[worst]))
        disc_vals.append(complex(disc[worst]))
        cont_vals.append(complex(cont[worst]))
    order, const = fit_order(steps, errors)
    return ConvergenceResult(
        case.name, mu, tuple(steps), tuple(errors), tuple(disc_vals), tuple(cont_vals), order, const
    )


def run_study(names=None, steps=DEFAULT_STEPS) -> list[ConvergenceResult]:
    names = sorted(CONVERGENCE_CASES) if names is None else list(names)
    out = []
    for name in names:
        case = CONVERGENCE_CASES[name]
        for mu in case.directions:
            out.append(run_case(case, mu, steps))
    return out
