"""Covariant derivatives of sections and of scalar/vector valued fields.

Two versions of each derivative live here.  The discrete ones follow the
limit definitions literally: transport the neighbour at ``x + h e_mu`` back to
``x`` and take a forward difference.  The continuum ones are the closed forms
built from exact gradients, e.g. ``(d_mu + A_mu + i B_mu + Gamma_mu + i Delta_mu) psi``.
Their difference is ``O(h)``; see :mod:`scalefield.convergence`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .bundle import AnalyticField, ConnectionField, ScalingField, Section, VectorField
from .scalars import RelStructure, ScalingError, canonical, struct_add, struct_scale

Part = Literal["position", "level", "total"]


@dataclass(frozen=True)
class CovariantResult:
    """A derivative coefficient together with where it lives.

    ``level`` is ``f`` at the evaluation point: results at ``x`` are values in
    the level-``f(x)`` structure.
    """

    value: complex
    site: tuple
    level: complex
    part: Part

    def __complex__(self):
        return complex(self.value)


def _shift(x, mu: int, h: float) -> np.ndarray:
    x = np.array(x, dtype=float)
    x[..., mu] += h
    return x


def _site(x) -> tuple:
    return tuple(float(c) for c in np.ravel(x))


def conn_coeff(cf: ConnectionField, x, mu: int, h: float):
    """Transport factor ``w(x, x + h e_mu) = exp((A_mu(x) + i B_mu(x)) h)``."""
    w = np.exp(cf.coefficient(x, mu) * h)
    if cf.kind == "real":
        w = w.real
    return w


# --------------------------------------------------------------------------
# structure-valued sections


def d_section_pos_discrete(sec: Section, cf: ConnectionField, x, mu: int, h: float) -> RelStructure:
    """Position derivative of a section from its limit definition.

    The neighbour structure is carried back to ``x`` as ``w S^f_f`` and the
    difference quotient is formed with structure arithmetic, giving
    ``S^{f (w - 1)/h}_f``.
    """
    here = sec.value(x)
    w = complex(conn_coeff(cf, x, mu, h))
    moved = struct_scale(w.real if sec.kind == "real" else w, here)
    return struct_scale(1.0 / h, struct_add(moved, here, sign=-1))


def d_section_level_discrete(sec: Section, x, mu: int, h: float) -> RelStructure:
    """Level derivative: the structure at level ``f(x + h e_mu)`` is relativized to
    ``f(x)`` and differenced against ``S^f_f``; the quotient uses the step ``h``.
    """
    here = sec.value(x)
    f_x = complex(sec.level_at(x))
    f_next = complex(sec.level_at(_shift(x, mu, h)))
    if sec.kind == "real":
        f_x, f_next = f_x.real, f_next.real
    moved = RelStructure(f_next, f_x, sec.kind)
    return struct_scale(1.0 / h, struct_add(moved, here, sign=-1))


def d_section_discrete(sec: Section, cf: ConnectionField, x, mu: int, h: float) -> RelStructure:
    return struct_add(
        d_section_pos_discrete(sec, cf, x, mu, h), d_section_level_discrete(sec, x, mu, h)
    )


def d_section_pos_continuum(sec: Section, cf: ConnectionField, x, mu: int) -> CovariantResult:
    coef = complex(cf.coefficient(x, mu))
    return CovariantResult(coef, _site(x), complex(sec.level_at(x)), "position")


def d_section_level_continuum(sec: Section | ScalingField, x, mu: int) -> CovariantResult:
    """``(d_mu f)/f = Gamma_mu + i Delta_mu`` from exact gradients.

    Accepts a section or a bare scaling field (a section with factor 1).
    """
    if isinstance(sec, ScalingField):
        sec = Section(sec)
    coef = complex(sec.scaling.log_grad(x, mu))
    return CovariantResult(coef, _site(x), complex(sec.level_at(x)), "level")


def d_section_continuum(sec: Section, cf: ConnectionField, x, mu: int) -> CovariantResult:
    pos = d_section_pos_continuum(sec, cf, x, mu)
    lev = d_section_level_continuum(sec, x, mu)
    return CovariantResult(pos.value + lev.value, pos.site, pos.level, "total")


def d_product_section(secS: Section, secV: Section, cf: ConnectionField, x, mu: int, h: float | None = None):
    """Leibniz pair for the scalar-times-vector section.

    Returns ``(D_S Psi_S x Psi_V, Psi_S x D_V Psi_V)`` as structures relative to
    ``f(x)``; both factors share the scaling field so both coefficients equal
    ``A + iB + Gamma + i Delta``.  With ``h`` given the discrete definition is
    used for each factor.
    """
    if secS.scaling is not secV.scaling or secS.factor != secV.factor:
        raise ScalingError("scalar and vector sections must share one scaling field")
    if h is not None:
        return d_section_discrete(secS, cf, x, mu, h), d_section_discrete(secV, cf, x, mu, h)
    out = []
    for sec in (secS, secV):
        coef = d_section_continuum(sec, cf, x, mu).value
        here = sec.value(x)
        out.append(struct_scale(coef.real if sec.kind == "real" else coef, here))
    return tuple(out)


# --------------------------------------------------------------------------
# scalar and vector valued fields


def transport_ratio(sf: ScalingField, cf: ConnectionField, x, mu: int, h: float):
    """``t/s`` with ``t = w f(x + h e_mu)`` and ``s = f(x)``."""
    x = np.asarray(x, dtype=float)
    return conn_coeff(cf, x, mu, h) * sf(_shift(x, mu, h)) / sf(x)


def d_scalar_discrete(psi: AnalyticField, sf: ScalingField, cf: ConnectionField, x, mu: int, h: float):
    """``[(t/s) psi(x + h e_mu) - psi(x)] / h``."""
    x = np.asarray(x, dtype=float)
    ratio = transport_ratio(sf, cf, x, mu, h)
    return (ratio * psi(_shift(x, mu, h)) - psi(x)) / h


def scalar_connection(sf: ScalingField, cf: ConnectionField, x, mu: int):
    """``A_mu + i B_mu + Gamma_mu + i Delta_mu`` at ``x``."""
    return cf.coefficient(x, mu) + sf.log_grad(x, mu)


def d_scalar_continuum(psi: AnalyticField, sf: ScalingField, cf: ConnectionField, x, mu: int):
    x = np.asarray(x, dtype=float)
    return psi.d(x, mu) + scalar_connection(sf, cf, x, mu) * psi(x)


def d_vector_discrete(psi: VectorField, sf: ScalingField, cf: ConnectionField, x, mu: int, h: float):
    x = np.asarray(x, dtype=float)
    ratio = transport_ratio(sf, cf, x, mu, h)[..., None]
    return (ratio * psi(_shift(x, mu, h)) - psi(x)) / h


def d_vector_continuum(psi: VectorField, sf: ScalingField, cf: ConnectionField, x, mu: int):
    """Componentwise scalar covariant derivative, shape ``(..., N)``."""
    x = np.asarray(x, dtype=float)
    return psi.d(x, mu) + scalar_connection(sf, cf, x, mu)[..., None] * psi(x)


def scalar_results(psi, sf: ScalingField, cf: ConnectionField, positions, mu: int) -> list[CovariantResult]:
    """Continuum derivative at each position, tagged with its level ``f(x)``."""
    positions = np.asarray(positions, dtype=float)
    vals = d_scalar_continuum(psi, sf, cf, positions, mu)
    levels = sf(positions)
    return [
        CovariantResult(complex(v), _site(p), complex(lev), "total")
        for v, p, lev in zip(vals, positions, levels)
    ]


# --------------------------------------------------------------------------
# integrability diagnostic


def _central(grid: np.ndarray, axis: int, h: float) -> np.ndarray:
    """Central difference on interior points of ``axis`` (other axes trimmed too)."""
    d = grid.ndim
    fwd = [slice(1, -1)] * d
    bwd = [slice(1, -1)] * d
    fwd[axis] = slice(2, None)
    bwd[axis] = slice(None, -2)
    return (grid[tuple(fwd)] - grid[tuple(bwd)]) / (2 * h)


def curl_grid(vf, spacing, mu: int, nu: int) -> np.ndarray:
    """``d_mu v_nu - d_nu v_mu`` by central differences on interior sites."""
    if mu == nu:
        raise ValueError("curl needs two distinct directions")
    return _central(np.asarray(vf[nu]), mu, spacing[mu]) - _central(np.asarray(vf[mu]), nu, spacing[nu])


def curl_check(vf, spacing, site, mu: int, nu: int) -> float:
    """Curl component at one interior site (index tuple)."""
    vf = [np.asarray(v) for v in vf]
    shape = vf[0].shape
    if not all(0 < i < n - 1 for i, n in zip(site, shape)):
        raise IndexError(f"site {tuple(site)} is not interior")
    curl = curl_grid(vf, spacing, mu, nu)
    return float(np.real(curl[tuple(i - 1 for i in site)]))


__all__ = [
    "CovariantResult",
    "canonical",
    "conn_coeff",
    "curl_check",
    "curl_grid",
    "d_product_section",
    "d_scalar_continuum",
    "d_scalar_discrete",
    "d_section_continuum",
    "d_section_discrete",
    "d_section_level_continuum",
    "d_section_level_discrete",
    "d_section_pos_continuum",
    "d_section_pos_discrete",
    "d_vector_continuum",
    "d_vector_discrete",
    "scalar_connection",
    "scalar_results",
    "transport_ratio",
]
