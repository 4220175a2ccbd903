"""SU(2) x scaling covariant derivative and the gauge transformation laws.

The derivative acting on a two-component field is

    D_mu psi = (d_mu + g_a A_mu + i g_b B_mu + g_g Gamma_mu + i g_d Delta_mu
                + [i g_1 E_mu] + (i g / 2) alpha^j_mu tau_j) psi

with the bracketed U(1) term present only when the separate ``E`` field is
switched on.  Under a local SU(2) map ``U`` the boson fields move as

    alpha'.tau = U (alpha.tau) U^+ + (2i/g) (d_mu U) U^+

while ``A, B, Gamma, Delta`` (multiples of the identity) stay put.  Gauge maps
carry exact derivatives; finite-difference derivatives of ``U`` would hide
covariance violations behind truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bundle as B
from .bundle import AnalyticField, ConnectionField, ScalingField, VectorField

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
IDENTITY = np.eye(2, dtype=complex)

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-12


class GaugeError(ValueError):
    """A gauge map or transformed field violates unitarity/Hermiticity."""


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


def alpha_dot_tau(alpha) -> np.ndarray:
    """``alpha^j tau_j`` for ``alpha`` of shape ``(..., 3)``."""
    return np.einsum("...j,jab->...ab", np.asarray(alpha, dtype=complex), PAULI)


def pauli_components(m) -> np.ndarray:
    """``1/2 tr(tau_j M)`` for each generator, shape ``(..., 3)``."""
    return 0.5 * np.einsum("jab,...ba->...j", PAULI, m)


# --------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class Couplings:
    g_a: float = 1.0
    g_b: float = 1.0
    g_g: float = 1.0
    g_d: float = 1.0
    g: float = 1.0
    g1: float = 1.0

    def __post_init__(self):
        for name in ("g_a", "g_b", "g_g", "g_d", "g", "g1"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"coupling {name} must be a positive real, got {v}")


@dataclass(frozen=True)
class GaugeConfig:
    """Boson fields ``alpha[j][mu]`` (j = 0, 1, 2), optional ``E[mu]`` and couplings."""

    alpha: tuple
    E: tuple | None = None
    couplings: Couplings = field(default_factory=Couplings)
    use_E: bool = False

    def __post_init__(self):
        alpha = tuple(tuple(row) for row in self.alpha)
        if len(alpha) != 3:
            raise ValueError("alpha needs three generator components")
        dim = len(alpha[0])
        if any(len(row) != dim for row in alpha):
            raise ValueError("alpha rows need one field per direction")
        if any(a.complex_valued for row in alpha for a in row):
            raise ValueError("alpha components must be real fields")
        object.__setattr__(self, "alpha", alpha)
        if self.E is not None:
            E = tuple(self.E)
            if len(E) != dim:
                raise ValueError("E needs one field per direction")
            object.__setattr__(self, "E", E)

    @property
    def dim(self) -> int:
        return len(self.alpha[0])

    @classmethod
    def zero(cls, dim: int, couplings: Couplings | None = None, use_E: bool = False) -> GaugeConfig:
        z = B.zero_field(dim)
        return cls(
            tuple(tuple(z for _ in range(dim)) for _ in range(3)),
            tuple(z for _ in range(dim)),
            couplings or Couplings(),
            use_E,
        )

    def alpha_at(self, x, mu: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.stack([np.asarray(self.alpha[j][mu](x), dtype=float) for j in range(3)], axis=-1)

    def E_at(self, x, mu: int):
        x = np.asarray(x, dtype=float)
        if self.E is None:
            return np.zeros(x.shape[:-1])
        return self.E[mu](x)


# --------------------------------------------------------------------------
# covariant derivative


def scaling_coefficient(sf: ScalingField, cf: ConnectionField, gc: GaugeConfig, x, mu: int):
    """Identity-proportional part: ``g_a A + i g_b B + g_g Gamma + i g_d Delta [+ i g1 E]``."""
    c = gc.couplings
    x = np.asarray(x, dtype=float)
    coef = (
        c.g_a * cf.A[mu](x)
        + 1j * c.g_b * cf.B[mu](x)
        + c.g_g * sf.Gamma(x, mu)
        + 1j * c.g_d * sf.Delta(x, mu)
    )
    if gc.use_E:
        coef = coef + 1j * c.g1 * gc.E_at(x, mu)
    return coef


def apply_derivative(psi_val, psi_grad, coef, alpha, g: float) -> np.ndarray:
    """``d psi + coef psi + (i g/2) alpha.tau psi`` from pointwise data."""
    psi_val = np.asarray(psi_val, dtype=complex)
    boson = np.einsum("...ab,...b->...a", alpha_dot_tau(alpha), psi_val)
    return np.asarray(psi_grad) + np.asarray(coef)[..., None] * psi_val + 0.5j * g * boson


def full_covariant_derivative(psi: VectorField, sf: ScalingField, cf: ConnectionField, gc: GaugeConfig, x, mu: int):
    if psi.n != 2:
        raise ValueError("the SU(2) derivative acts on two-component fields")
    x = np.asarray(x, dtype=float)
    return apply_derivative(
        psi(x), psi.d(x, mu), scaling_coefficient(sf, cf, gc, x, mu), gc.alpha_at(x, mu), gc.couplings.g
    )


def standard_covariant_derivative(psi: VectorField, gc: GaugeConfig, x, mu: int):
    """``(d + i g1 E + (i g/2) alpha.tau) psi`` with the generator matrix
    written out by components rather than taken from :data:`PAULI`."""
    x = np.asarray(x, dtype=float)
    a = gc.alpha_at(x, mu)
    a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2]
    p = psi(x)
    p0, p1 = p[..., 0], p[..., 1]
    m_p0 = a3 * p0 + (a1 - 1j * a2) * p1
    m_p1 = (a1 + 1j * a2) * p0 - a3 * p1
    g = gc.couplings.g
    e = 1j * gc.couplings.g1 * gc.E_at(x, mu)
    dp = psi.d(x, mu)
    return np.stack(
        [dp[..., 0] + e * p0 + 0.5j * g * m_p0, dp[..., 1] + e * p1 + 0.5j * g * m_p1], axis=-1
    )


def reduce_to_standard(psi: VectorField, gc: GaugeConfig, x, mu: int) -> float:
    """Largest deviation between the full derivative at ``f = 1, A = B = 0`` (``E``
    switched on) and the standard gauge-theory form."""
    dim = gc.dim
    sf = ScalingField(B.zero_field(dim))
    cf = ConnectionField([B.zero_field(dim) for _ in range(dim)])
    gc_e = GaugeConfig(gc.alpha, gc.E, gc.couplings, use_E=True)
    full = full_covariant_derivative(psi, sf, cf, gc_e, x, mu)
    std = standard_covariant_derivative(psi, gc_e, x, mu)
    return float(np.max(np.abs(full - std))) if np.size(full) else 0.0


# --------------------------------------------------------------------------
# gauge maps


@dataclass(frozen=True)
class GaugeMap:
    """A local gauge transformation with exact derivatives.

    ``U(x)`` has shape ``(..., 2, 2)`` for SU(2) and ``(...)`` for U(1).
    """

    name: str
    group: str
    dim: int
    U: Callable
    dU: Callable

    def __call__(self, x):
        return self.U(np.asarray(x, dtype=float))

    def d(self, x, mu: int):
        return self.dU(np.asarray(x, dtype=float), mu)


def _unit_axis(axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(n)
    if n.shape != (3,) or norm == 0:
        raise ValueError("axis must be a nonzero 3-vector")
    return n / norm


def su2_axis(theta: AnalyticField, axis=(0, 0, 1), name: str = "su2_axis") -> GaugeMap:
    """``U = exp(i theta(x) n.tau) = cos(theta) 1 + i sin(theta) n.tau``."""
    nt = alpha_dot_tau(_unit_axis(axis))

    def U(x):
        th = np.asarray(theta(x), dtype=float)[..., None, None]
        return np.cos(th) * IDENTITY + 1j * np.sin(th) * nt

    def dU(x, mu):
        dth = np.asarray(theta.d(x, mu), dtype=float)[..., None, None]
        return 1j * dth * (nt @ U(x))

    return GaugeMap(name, "SU2", theta.dim, U, dU)


def su2_product(first: GaugeMap, second: GaugeMap, name: str = "su2_product") -> GaugeMap:
    if first.dim != second.dim:
        raise ValueError("maps on different dimensions")
    return GaugeMap(
        name,
        "SU2",
        first.dim,
        lambda x: first.U(x) @ second.U(x),
        lambda x, mu: first.dU(x, mu) @ second.U(x) + first.U(x) @ second.dU(x, mu),
    )


def u1_phase(theta: AnalyticField, name: str = "u1_phase") -> GaugeMap:
    """``U = exp(i theta(x))``."""
    return GaugeMap(
        name,
        "U1",
        theta.dim,
        lambda x: np.exp(1j * theta(x)),
        lambda x, mu: 1j * theta.d(x, mu) * np.exp(1j * theta(x)),
    )


def _catalog(dim: int) -> dict[str, GaugeMap]:
    first = np.eye(dim)[0]
    maps = {
        "identity": su2_axis(B.zero_field(dim), name="identity"),
        "constant": su2_axis(B.constant(dim, 0.7), (1.0, -2.0, 0.5), name="constant"),
        "axis3_linear": su2_axis(B.linear(dim, 0.5 * first), name="axis3_linear"),
        "tilted_gaussian": su2_axis(
            B.gaussian(dim, 1.2, 0.6, 0.7), (1.0, 1.0, 1.0), name="tilted_gaussian"
        ),
    }
    maps["two_axis_product"] = su2_product(
        su2_axis(B.plane_wave(dim, np.linspace(1.3, 0.4, dim), 0.9, 0.2), (1, 0, 0)),
        su2_axis(B.linear(dim, np.linspace(-0.6, 0.8, dim), 0.1), (0, 1, 0)),
        name="two_axis_product",
    )
    return maps


GAUGE_MAP_NAMES = ("identity", "constant", "axis3_linear", "tilted_gaussian", "two_axis_product")


def gauge_map_catalog(dim: int) -> dict[str, GaugeMap]:
    return _catalog(dim)


# --------------------------------------------------------------------------
# transformation laws


def u1_transform(E, U, dU, g1: float):
    """``E' = U^+ E U + (1/g1) U^+ d_mu U`` for unit-modulus ``U``.

    Implemented as written, with the conjugation kept so the expression
    carries over to matrix-valued fields; for a phase it is a pure shift.
    """
    U = np.asarray(U, dtype=complex)
    if np.any(np.abs(np.abs(U) - 1) > UNITARITY_TOL):
        raise GaugeError("U(1) gauge map must have unit modulus")
    Ud = np.conj(U)
    return Ud * np.asarray(E) * U + (1.0 / g1) * Ud * np.asarray(dU)


def su2_transform(alpha, U, dU, g: float, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Transformed boson components ``alpha'_j = 1/2 tr(tau_j M)``.

    ``M = U (alpha.tau) U^+ + (2i/g) (d U) U^+`` must be Hermitian and
    traceless; otherwise ``U`` and ``dU`` are inconsistent and
    :class:`GaugeError` is raised.
    """
    U = np.asarray(U, dtype=complex)
    Ud = dagger(U)
    M = U @ alpha_dot_tau(alpha) @ Ud + (2j / g) * (np.asarray(dU) @ Ud)
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if M.size and np.max(np.abs(M - dagger(M))) > tol * scale:
        raise GaugeError("transformed boson matrix is not Hermitian")
    if M.size and np.max(np.abs(np.trace(M, axis1=-2, axis2=-1))) > tol * scale:
        raise GaugeError("transformed boson matrix is not traceless")
    return np.real(pauli_components(M))


def check_su2(U, tol: float = UNITARITY_TOL) -> float:
    """Largest deviation of ``U U^+ = 1`` and ``det U = 1``."""
    U = np.asarray(U, dtype=complex)
    unit = np.max(np.abs(U @ dagger(U) - IDENTITY))
    det = np.max(np.abs(np.linalg.det(U) - 1))
    return float(max(unit, det))


def transformed_config(gc: GaugeConfig, gmap: GaugeMap, x, mu: int) -> np.ndarray:
    return su2_transform(gc.alpha_at(x, mu), gmap(x), gmap.d(x, mu), gc.couplings.g)


def covariance_residual(psi: VectorField, sf: ScalingField, cf: ConnectionField, gc: GaugeConfig, gmap: GaugeMap, x, mu: int):
    """``|D'_mu psi' - U D_mu psi|`` with ``psi' = U psi`` and transformed bosons.

    The scaling connections and ``E`` are left unchanged; they are multiples of
    the identity and commute with SU(2).
    """
    if gmap.group != "SU2":
        raise GaugeError("covariance_residual needs an SU(2) map")
    x = np.asarray(x, dtype=float)
    U = gmap(x)
    dU = gmap.d(x, mu)
    psi_val = psi(x)
    psi_grad = psi.d(x, mu)
    coef = scaling_coefficient(sf, cf, gc, x, mu)
    g = gc.couplings.g

    before = apply_derivative(psi_val, psi_grad, coef, gc.alpha_at(x, mu), g)
    new_val = np.einsum("...ab,...b->...a", U, psi_val)
    new_grad = np.einsum("...ab,...b->...a", dU, psi_val) + np.einsum("...ab,...b->...a", U, psi_grad)
    new_alpha = su2_transform(gc.alpha_at(x, mu), U, dU, g)
    after = apply_derivative(new_val, new_grad, coef, new_alpha, g)
    return np.linalg.norm(after - np.einsum("...ab,...b->...a", U, before), axis=-1)


# --------------------------------------------------------------------------
# random smooth configurations


def random_real_field(rng: np.random.Generator, dim: int) -> AnalyticField:
    return (
        B.gaussian(dim, rng.normal(0, 0.6), rng.uniform(0, 1.5, dim), rng.uniform(0.5, 1.2))
        + B.plane_wave(dim, rng.uniform(-2, 2, dim), rng.normal(0, 0.5), rng.uniform(0, 2 * np.pi))
        + B.linear(dim, rng.normal(0, 0.3, dim), rng.normal(0, 0.3))
    )


def random_complex_field(rng: np.random.Generator, dim: int) -> AnalyticField:
    amp = complex(rng.normal(), rng.normal())
    return B.gaussian(dim, 1.0, rng.uniform(0, 1.5, dim), rng.uniform(0.5, 1.2)).scaled(amp) + B.plane_wave(
        dim, rng.uniform(-2, 2, dim), rng.uniform(0.2, 1.0), rng.uniform(0, 2 * np.pi), complex_valued=True
    )


def random_setup(rng: np.random.Generator, dim: int, use_E: bool = True):
    """Random smooth ``(psi, sf, cf, gc)`` with random positive couplings."""
    psi = VectorField((random_complex_field(rng, dim), random_complex_field(rng, dim)))
    sf = ScalingField(random_real_field(rng, dim), random_real_field(rng, dim))
    cf = ConnectionField(
        [random_real_field(rng, dim) for _ in range(dim)],
        [random_real_field(rng, dim) for _ in range(dim)],
    )
    couplings = Couplings(*rng.uniform(0.5, 2.0, 6))
    gc = GaugeConfig(
        tuple(tuple(random_real_field(rng, dim) for _ in range(dim)) for _ in range(3)),
        tuple(random_real_field(rng, dim) for _ in range(dim)),
        couplings,
        use_E,
    )
    return psi, sf, cf, gc


def random_sites(rng: np.random.Generator, lattice: B.Lattice, n: int) -> np.ndarray:
    """``n`` distinct interior sites (index array), sorted canonically."""
    sites = lattice.interior_sites()
    pick = rng.choice(len(sites), size=min(n, len(sites)), replace=False)
    return sites[np.sort(pick)]


__all__ = [
    "Couplings",
    "GAUGE_MAP_NAMES",
    "GaugeConfig",
    "GaugeError",
    "GaugeMap",
    "IDENTITY",
    "PAULI",
    "alpha_dot_tau",
    "anticommutator",
    "check_su2",
    "commutator",
    "covariance_residual",
    "dagger",
    "full_covariant_derivative",
    "gauge_map_catalog",
    "pauli_components",
    "random_setup",
    "random_sites",
    "reduce_to_standard",
    "scaling_coefficient",
    "standard_covariant_derivative",
    "su2_axis",
    "su2_product",
    "su2_transform",
    "transformed_config",
    "u1_phase",
    "u1_transform",
]
