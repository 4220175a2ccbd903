"""Scaled normed vector spaces.

The level-``s`` vector space takes its scalars from the level-``s`` scalar
structure, so a scalar and a vector only combine when their levels agree.
Norms are Euclidean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scalars import (
    Kind,
    LevelMismatchError,
    RelOps,
    ScaledValue,
    ScalingError,
    check_level,
)


@dataclass(frozen=True, eq=False)
class ScaledVector:
    """Vector value ``v_s``: component array read at ``level``."""

    comps: np.ndarray
    level: complex
    kind: Kind = "complex"

    def __post_init__(self):
        object.__setattr__(self, "level", check_level(self.level, self.kind))
        comps = np.array(self.comps, dtype=complex).reshape(-1)
        if self.kind == "real" and np.any(comps.imag != 0):
            raise ScalingError("real-kind vector with complex components")
        comps.flags.writeable = False
        object.__setattr__(self, "comps", comps)

    @property
    def dim(self) -> int:
        return self.comps.shape[0]

    def _check(self, other: ScaledVector):
        if other.level != self.level or other.kind != self.kind:
            raise LevelMismatchError(
                f"vectors at levels {self.level} and {other.level} cannot be combined"
            )
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} != {other.dim}")

    def __add__(self, other: ScaledVector) -> ScaledVector:
        self._check(other)
        return ScaledVector(self.comps + other.comps, self.level, self.kind)

    def __sub__(self, other: ScaledVector) -> ScaledVector:
        self._check(other)
        return ScaledVector(self.comps - other.comps, self.level, self.kind)

    def __eq__(self, other):
        if not isinstance(other, ScaledVector):
            return NotImplemented
        return (
            self.level == other.level
            and self.kind == other.kind
            and np.array_equal(self.comps, other.comps)
        )

    __hash__ = None


def zero_vector(dim: int, level, kind: Kind = "complex") -> ScaledVector:
    return ScaledVector(np.zeros(dim), level, kind)


def valuate_vector(s, base_comps, kind: Kind = "complex") -> ScaledVector:
    """Value at level ``s`` of the base-set vector named by its level-1 components."""
    s = check_level(s, kind)
    comps = np.asarray(base_comps, dtype=complex) / s
    if kind == "real":
        comps = comps.real
    return ScaledVector(comps, s, kind)


def revaluate_vector(s, t, v_t: ScaledVector) -> ScaledVector:
    s = check_level(s, v_t.kind)
    t = check_level(t, v_t.kind)
    if v_t.level != t:
        raise LevelMismatchError(f"vector is at level {v_t.level}, expected {t}")
    return ScaledVector((t / s) * v_t.comps, s, v_t.kind)


def v_scalar_mul(a: ScaledValue, v: ScaledVector) -> ScaledVector:
    if a.level != v.level or a.kind != v.kind:
        raise LevelMismatchError(
            f"scalar at level {a.level} cannot multiply a vector at level {v.level}"
        )
    return ScaledVector(a.v * v.comps, v.level, v.kind)


def v_norm(v: ScaledVector) -> ScaledValue:
    """Euclidean norm as a value (zero imaginary part) at the vector's level."""
    return ScaledValue(float(np.linalg.norm(v.comps)), v.level, v.kind)


class RelVectorOps:
    """Level-``t`` vector operations acting on level-``s`` representatives.

    A vector value ``v`` is represented by ``(t/s) v``.  Scalars use the
    representatives of :class:`RelOps` with the same pair of levels.
    """

    def __init__(self, sup, sub, dim: int, kind: Kind = "complex"):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.scalars = RelOps(sup, sub, kind)
        self.sup = self.scalars.sup
        self.sub = self.scalars.sub
        self.q = self.scalars.q
        self.dim = dim
        self.kind = kind

    def rep(self, comps):
        return self.q * np.asarray(comps, dtype=complex)

    def add(self, x, y):
        return np.asarray(x) + np.asarray(y)

    def smul(self, a, x):
        return (a / self.q) * np.asarray(x)

    def norm(self, x):
        """Representative of ``|v|_t`` given the representative of ``v``."""
        return (self.q / abs(self.q)) * np.linalg.norm(np.asarray(x), axis=-1)


def rel_vector_ops(s, t, dim: int, kind: Kind = "complex") -> RelVectorOps:
    return RelVectorOps(t, s, dim, kind)


def w_vector_map(s, t, base_comps) -> np.ndarray:
    """Value preserving map on base vectors: ``t v -> s v``."""
    s = check_level(s)
    t = check_level(t)
    return (s / t) * np.asarray(base_comps, dtype=complex)


def wsv_map(s, t, pair: tuple[ScaledValue, ScaledVector]):
    """Carry a (scalar, vector) pair from level ``t`` to level ``s`` keeping values.

    Both members move together; a pair whose members sit at different levels
    is rejected.
    """
    a, v = pair
    if a.level != v.level or a.kind != v.kind:
        raise LevelMismatchError("scalar and vector of a pair must share a level")
    t = check_level(t, a.kind)
    s = check_level(s, a.kind)
    if a.level != t:
        raise LevelMismatchError(f"pair is at level {a.level}, expected {t}")
    return ScaledValue(a.v, s, a.kind), ScaledVector(v.comps, s, v.kind)
