"""Flat-space lattice model of the bundle: sites, fields, sections.

Positions are float arrays whose last axis has length ``dim``; every field in
this module evaluates on arrays of positions of any leading shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import hermite_e

from .scalars import Kind, RelStructure, ScalingError, check_kind


class LatticeError(ValueError):
    pass


# --------------------------------------------------------------------------
# lattice


@dataclass(frozen=True)
class Lattice:
    """Regular grid with open boundaries, ``origin + index * spacing``."""

    dim: int
    sizes: tuple[int, ...]
    spacing: tuple[float, ...]
    origin: tuple[float, ...] = None

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or not 1 <= self.dim <= 4:
            raise LatticeError(f"dim must be 1..4, got {self.dim!r}")
        sizes = tuple(int(n) for n in self.sizes)
        spacing = tuple(float(h) for h in self.spacing)
        if len(sizes) != self.dim or len(spacing) != self.dim:
            raise LatticeError("sizes and spacing need one entry per dimension")
        if any(n < 4 for n in sizes):
            raise LatticeError(f"every size must be >= 4, got {sizes}")
        if any(not np.isfinite(h) or h <= 0 for h in spacing):
            raise LatticeError(f"spacing must be positive, got {spacing}")
        origin = (0.0,) * self.dim if self.origin is None else tuple(map(float, self.origin))
        if len(origin) != self.dim:
            raise LatticeError("origin needs one entry per dimension")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "origin", origin)

    @property
    def n_sites(self) -> int:
        return int(np.prod(self.sizes))

    @property
    def n_interior(self) -> int:
        return int(np.prod([n - 2 for n in self.sizes]))

    def coords(self) -> np.ndarray:
        """Site positions, shape ``(*sizes, dim)``."""
        axes = [o + h * np.arange(n) for o, h, n in zip(self.origin, self.spacing, self.sizes)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    def position(self, site) -> np.ndarray:
        site = np.asarray(site)
        return np.asarray(self.origin) + site * np.asarray(self.spacing)

    def interior_mask(self) -> np.ndarray:
        mask = np.zeros(self.sizes, dtype=bool)
        mask[tuple(slice(1, -1) for _ in self.sizes)] = True
        return mask

    def is_interior(self, site) -> bool:
        return all(0 < i < n - 1 for i, n in zip(site, self.sizes))

    def interior_sites(self) -> np.ndarray:
        """Indices of interior sites in C order, shape ``(n_interior, dim)``."""
        return np.argwhere(self.interior_mask())


def build_lattice(dim, sizes, spacing, origin=None) -> Lattice:
    return Lattice(dim, tuple(sizes), tuple(spacing), None if origin is None else tuple(origin))


# --------------------------------------------------------------------------
# analytic fields


def _gaussian_derivative_sups(max_order: int = 8) -> np.ndarray:
    # sup_u |d^n/du^n exp(-u^2/2)| = sup |He_n(u)| exp(-u^2/2), sampled densely
    u = np.linspace(-14.0, 14.0, 280_001)
    w = np.exp(-0.5 * u * u)
    out = []
    for n in range(max_order + 1):
        c = np.zeros(n + 1)
        c[n] = 1.0
        out.append(np.max(np.abs(hermite_e.hermeval(u, c)) * w))
    return np.array(out) * 1.001


_GAUSS_SUP = _gaussian_derivative_sups()


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for i in range(n + 1):
        for rest in _compositions(n - i, parts - 1):
            yield (i,) + rest


@dataclass(frozen=True)
class AnalyticField:
    """A scalar field with its exact gradient.

    ``bounds[n]`` is an upper bound on ``|partial^alpha value|`` over all of
    space for every multi-index of order ``n`` (orders missing from the
    mapping are unbounded).  ``zero`` marks the identically-zero field.
    """

    name: str
    dim: int
    value: Callable[[np.ndarray], np.ndarray]
    grad: Callable[[np.ndarray, int], np.ndarray]
    bounds: dict = field(default_factory=dict)
    zero: bool = False
    complex_valued: bool = False

    def __call__(self, x):
        return self.value(np.asarray(x, dtype=float))

    def d(self, x, mu: int):
        if not 0 <= mu < self.dim:
            raise IndexError(f"direction {mu} outside 0..{self.dim - 1}")
        return self.grad(np.asarray(x, dtype=float), mu)

    def deriv_bound(self, order: int) -> float:
        return self.bounds.get(order, np.inf)

    def __add__(self, other: AnalyticField) -> AnalyticField:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        keys = set(self.bounds) & set(other.bounds)
        return AnalyticField(
            f"{self.name}+{other.name}",
            self.dim,
            lambda x: self.value(x) + other.value(x),
            lambda x, mu: self.grad(x, mu) + other.grad(x, mu),
            {k: self.bounds[k] + other.bounds[k] for k in keys},
            zero=self.zero and other.zero,
            complex_valued=self.complex_valued or other.complex_valued,
        )

    def scaled(self, c) -> AnalyticField:
        c_abs = abs(c)
        return AnalyticField(
            f"{c}*{self.name}",
            self.dim,
            lambda x: c * self.value(x),
            lambda x, mu: c * self.grad(x, mu),
            {k: c_abs * b for k, b in self.bounds.items()},
            zero=self.zero or c == 0,
            complex_valued=self.complex_valued or isinstance(c, complex),
        )

    __rmul__ = scaled


def _vec(v, dim, name) -> np.ndarray:
    if np.isscalar(v):
        v = [v] * dim
    v = np.asarray(v, dtype=float)
    if v.shape != (dim,):
        raise ValueError(f"{name} needs {dim} entries, got {v.tolist()}")
    return v


def constant(dim: int, value: float = 0.0) -> AnalyticField:
    value = complex(value) if isinstance(value, complex) else float(value)
    bounds = {0: abs(value), **{n: 0.0 for n in range(1, 9)}}
    return AnalyticField(
        "constant",
        dim,
        lambda x: np.full(x.shape[:-1], value),
        lambda x, mu: np.zeros(x.shape[:-1]),
        bounds,
        zero=value == 0,
        complex_valued=isinstance(value, complex),
    )


def zero_field(dim: int) -> AnalyticField:
    return constant(dim, 0.0)


def linear(dim: int, slope=1.0, offset: float = 0.0) -> AnalyticField:
    """``slope . x + offset``."""
    k = _vec(slope, dim, "slope")
    bounds = {1: float(np.max(np.abs(k))), **{n: 0.0 for n in range(2, 9)}}
    return AnalyticField(
        "linear",
        dim,
        lambda x: x @ k + offset,
        lambda x, mu: np.full(x.shape[:-1], k[mu]),
        bounds,
        zero=not np.any(k) and offset == 0,
    )


def quadratic(dim: int, curvature=0.5, cross: float = 0.0, offset: float = 0.0) -> AnalyticField:
    """``sum_mu c_mu x_mu^2 + cross * x_0 x_1 + offset`` (cross term needs dim >= 2)."""
    c = _vec(curvature, dim, "curvature")
    if dim < 2:
        cross = 0.0

    def value(x):
        out = (x * x) @ c + offset
        if cross:
            out = out + cross * x[..., 0] * x[..., 1]
        return out

    def grad(x, mu):
        g = 2 * c[mu] * x[..., mu]
        if cross and mu in (0, 1):
            g = g + cross * x[..., 1 - mu]
        return g

    bounds = {2: float(max(np.max(2 * np.abs(c)), abs(cross))), **{n: 0.0 for n in range(3, 9)}}
    return AnalyticField("quadratic", dim, value, grad, bounds)


def gaussian(dim: int, amp: float = 1.0, center=0.0, width: float = 1.0) -> AnalyticField:
    """``amp * exp(-|x - center|^2 / (2 width^2))``."""
    c = _vec(center, dim, "center")
    width = float(width)
    if width <= 0:
        raise ValueError("gaussian width must be positive")

    def value(x):
        r = x - c
        return amp * np.exp(-0.5 * np.sum(r * r, axis=-1) / width**2)

    def grad(x, mu):
        return -(x[..., mu] - c[mu]) / width**2 * value(x)

    bounds = {}
    for n in range(len(_GAUSS_SUP)):
        best = max(np.prod(_GAUSS_SUP[list(comp)]) for comp in _compositions(n, dim))
        bounds[n] = abs(amp) * float(best) / width**n
    return AnalyticField("gaussian", dim, value, grad, bounds)


def plane_wave(
    dim: int, k=1.0, amp: float = 1.0, phase: float = 0.0, complex_valued: bool = False
) -> AnalyticField:
    """``amp * cos(k.x + phase)``, or ``amp * exp(i(k.x + phase))`` when complex."""
    kv = _vec(k, dim, "k")
    kmax = float(np.max(np.abs(kv)))
    bounds = {n: abs(amp) * kmax**n for n in range(9)}
    if complex_valued:
        return AnalyticField(
            "plane_wave",
            dim,
            lambda x: amp * np.exp(1j * (x @ kv + phase)),
            lambda x, mu: 1j * kv[mu] * amp * np.exp(1j * (x @ kv + phase)),
            bounds,
            complex_valued=True,
        )
    return AnalyticField(
        "plane_wave",
        dim,
        lambda x: amp * np.cos(x @ kv + phase),
        lambda x, mu: -kv[mu] * amp * np.sin(x @ kv + phase),
        bounds,
    )


FIELD_CATALOG: dict[str, Callable[..., AnalyticField]] = {
    "constant": constant,
    "linear": linear,
    "quadratic": quadratic,
    "gaussian": gaussian,
    "plane_wave": plane_wave,
}


def catalog_field(name: str, dim: int, **params) -> AnalyticField:
    try:
        factory = FIELD_CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown field {name!r}; known: {sorted(FIELD_CATALOG)}") from None
    return factory(dim, **params)


@dataclass(frozen=True)
class VectorField:
    """An ``N``-component field built from scalar :class:`AnalyticField` parts."""

    components: tuple[AnalyticField, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("vector field needs at least one component")
        if len({c.dim for c in comps}) != 1:
            raise ValueError("components live on different dimensions")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @property
    def n(self) -> int:
        return len(self.components)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.stack([np.asarray(c(x), dtype=complex) for c in self.components], axis=-1)

    def d(self, x, mu: int):
        x = np.asarray(x, dtype=float)
        return np.stack([np.asarray(c.d(x, mu), dtype=complex) for c in self.components], axis=-1)


def sample_field(lattice: Lattice, af) -> np.ndarray:
    """Evaluate a field at every site; shape ``sizes`` (or ``(*sizes, N)``)."""
    return np.asarray(af(lattice.coords()))


def sample_gradient(lattice: Lattice, af, mu: int) -> np.ndarray:
    return np.asarray(af.d(lattice.coords(), mu))


# --------------------------------------------------------------------------
# scaling and connection fields


class ScalingField:
    """Fiber-level assignment ``f(x) = exp(gamma(x) + i phi(x))``."""

    def __init__(self, gamma: AnalyticField, phi: AnalyticField | None = None, kind: Kind = "complex"):
        check_kind(kind)
        self.gamma = gamma
        self.phi = zero_field(gamma.dim) if phi is None else phi
        if self.phi.dim != gamma.dim:
            raise ValueError("gamma and phi live on different dimensions")
        if kind == "real" and not self.phi.zero:
            raise ScalingError("real-kind scaling fields need phi identically 0")
        self.kind = kind

    @classmethod
    def constant(cls, dim: int, level=1.0, kind: Kind = "complex") -> ScalingField:
        level = complex(level)
        if level == 0:
            raise ScalingError("scaling field cannot take the value 0")
        phi = zero_field(dim) if np.angle(level) == 0 else constant(dim, float(np.angle(level)))
        return cls(constant(dim, float(np.log(abs(level)))), phi, kind)

    @property
    def dim(self) -> int:
        return self.gamma.dim

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(self.gamma(x) + 1j * self.phi(x))

    def Gamma(self, x, mu: int):
        return self.gamma.d(x, mu)

    def Delta(self, x, mu: int):
        return self.phi.d(x, mu)

    def log_grad(self, x, mu: int):
        """``(d_mu f) / f = Gamma_mu + i Delta_mu``."""
        return self.Gamma(x, mu) + 1j * self.Delta(x, mu)

    def is_constant(self, lattice: Lattice) -> bool:
        f = sample_field(lattice, self)
        return bool(np.all(f == f.flat[0]))


class ConnectionField:
    """Per-direction real fields ``A_mu`` and ``B_mu``."""

    def __init__(self, A: Sequence[AnalyticField], B: Sequence[AnalyticField] | None = None, kind: Kind = "complex"):
        check_kind(kind)
        A = tuple(A)
        dim = len(A)
        if dim == 0 or any(a.dim != dim for a in A):
            raise ValueError("A needs one field per direction on a dim-dimensional space")
        B = tuple(zero_field(dim) for _ in range(dim)) if B is None else tuple(B)
        if len(B) != dim or any(b.dim != dim for b in B):
            raise ValueError("B needs one field per direction")
        if kind == "real" and not all(b.zero for b in B):
            raise ScalingError("real-kind connections need B identically 0")
        self.A = A
        self.B = B
        self.kind = kind

    @classmethod
    def constant(cls, dim: int, A=0.0, B=0.0, kind: Kind = "complex") -> ConnectionField:
        A = _vec(A, dim, "A")
        B = _vec(B, dim, "B")
        return cls([constant(dim, a) for a in A], [constant(dim, b) for b in B], kind)

    @property
    def dim(self) -> int:
        return len(self.A)

    def coefficient(self, x, mu: int):
        """``A_mu(x) + i B_mu(x)``."""
        x = np.asarray(x, dtype=float)
        return self.A[mu](x) + 1j * self.B[mu](x)

    def grids(self, lattice: Lattice):
        return (
            [sample_field(lattice, a) for a in self.A],
            [sample_field(lattice, b) for b in self.B],
        )


# --------------------------------------------------------------------------
# sections


@dataclass(frozen=True, eq=False)
class Section:
    """Structure-valued section: the level-``factor * f(x)`` structure at ``x``."""

    scaling: ScalingField
    lattice: Lattice | None = None
    factor: complex = 1.0

    def __post_init__(self):
        factor = complex(self.factor)
        if factor == 0:
            raise ScalingError("section factor 0 is the empty structure")
        object.__setattr__(self, "factor", factor)

    @property
    def kind(self) -> Kind:
        return self.scaling.kind

    def level_at(self, x):
        return self.factor * self.scaling(x)

    def value(self, x) -> RelStructure:
        """``S^{f(x)}_{f(x)}`` at a single position ``x``."""
        lev = complex(self.level_at(x))
        if self.kind == "real":
            lev = lev.real
        return RelStructure(lev, lev, self.kind)


def level_of(sec: Section, site) -> complex:
    """Level of the section at lattice site ``site`` (an index tuple)."""
    if sec.lattice is None:
        raise LatticeError("section has no lattice attached")
    return complex(sec.level_at(sec.lattice.position(site)))


def group_act(u, sec: Section) -> Section:
    """Structure-group action: every level multiplied by ``u``."""
    u = complex(u)
    if u == 0:
        raise ScalingError("0 is not in the structure group")
    if sec.kind == "real" and (u.imag != 0 or u.real < 0):
        raise ScalingError("real-kind sections only admit positive real group elements")
    return Section(sec.scaling, sec.lattice, sec.factor * u)


def transition_element(s, s_new) -> complex:
    """The unique group element carrying level ``s`` to ``s_new``."""
    s = complex(s)
    if s == 0 or complex(s_new) == 0:
        raise ScalingError("levels must be nonzero")
    return complex(s_new) / s


def interior_positions(lattice: Lattice, sites=None) -> np.ndarray:
    sites = lattice.interior_sites() if sites is None else np.asarray(sites)
    return lattice.position(sites)


__all__ = [
    "AnalyticField",
    "ConnectionField",
    "FIELD_CATALOG",
    "Lattice",
    "LatticeError",
    "ScalingField",
    "Section",
    "VectorField",
    "build_lattice",
    "catalog_field",
    "constant",
    "gaussian",
    "group_act",
    "interior_positions",
    "level_of",
    "linear",
    "plane_wave",
    "quadratic",
    "sample_field",
    "sample_gradient",
    "transition_element",
    "zero_field",
]
