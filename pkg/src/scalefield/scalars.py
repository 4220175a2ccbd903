"""Scaled real and complex number structures.

A base-set element is named by its value in the unscaled structure (level 1).
In the structure at level ``s`` the element named ``b`` has value ``b / s``, so
the element ``s * a`` carries the value ``a_s``.  Everything else in this
module follows from that convention:

* :func:`valuate` / :func:`revaluate` are the value maps,
* :class:`RelOps` is the operation table of the level-``t`` structure written
  on level-``s`` representatives (the number preserving Z map),
* :func:`w_map` is the value preserving, number changing W map,
* :class:`RelStructure` is the structure label ``S^t_s`` with its linear
  arithmetic, kept in exact rational form so that relabelling both indices by
  a common factor leaves its canonical ratio bit-for-bit unchanged.

The arithmetic in :class:`RelOps` is written with plain operators, so every
method accepts numpy arrays as well as Python scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Literal

import numpy as np

Kind = Literal["real", "complex"]
KINDS = ("real", "complex")

REL_TOL = 1e-12
ABS_FLOOR = 1e-300


class ScalingError(ValueError):
    """Base class for violations of the scaled-structure contracts."""


class EmptyStructureError(ScalingError):
    """A zero level (the empty structure) was used where a structure is needed."""


class LevelMismatchError(ScalingError):
    """Values or vectors from different levels were combined."""


class CombinationError(ScalingError):
    """Relativized structures with different subscripts were combined."""


def check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def check_level(s, kind: Kind = "complex") -> complex:
    """Validate a level and return it as a Python complex."""
    check_kind(kind)
    s = complex(s)
    if s == 0:
        raise EmptyStructureError("level 0 is the empty structure")
    if kind == "real" and (s.imag != 0 or s.real < 0):
        raise ScalingError(f"real-kind levels must be positive reals, got {s}")
    return s


def rel_close(a, b, rtol: float = REL_TOL, scale=None) -> bool:
    """Relative comparison with an absolute floor of 1e-300.

    ``scale`` overrides the magnitude the error is measured against; pass
    the size of the summands when the compared quantities may cancel.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if scale is None:
        scale = np.maximum(np.abs(a), np.abs(b))
    return bool(np.all(np.abs(a - b) <= rtol * np.maximum(scale, ABS_FLOOR)))


# --------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class BaseNumber:
    """An element of the base set, labelled by its level-1 value."""

    label: complex

    def __post_init__(self):
        object.__setattr__(self, "label", complex(self.label))


@dataclass(frozen=True)
class ScaledValue:
    """A value ``a_s``: the number ``v`` read inside the structure at ``level``.

    Arithmetic is defined only between values at the same level.
    """

    v: complex
    level: complex
    kind: Kind = "complex"

    def __post_init__(self):
        object.__setattr__(self, "level", check_level(self.level, self.kind))
        v = complex(self.v)
        if self.kind == "real" and v.imag != 0:
            raise ScalingError(f"real-kind value has imaginary part: {v}")
        object.__setattr__(self, "v", v)

    def _same_level(self, other: ScaledValue) -> None:
        if not isinstance(other, ScaledValue):
            raise TypeError(f"cannot combine ScaledValue with {type(other).__name__}")
        if other.level != self.level or other.kind != self.kind:
            raise LevelMismatchError(
                f"values at levels {self.level} and {other.level} must be "
                "transported to a common level before combining"
            )

    def _new(self, v) -> ScaledValue:
        return ScaledValue(v, self.level, self.kind)

    def __add__(self, other):
        self._same_level(other)
        return self._new(self.v + other.v)

    def __sub__(self, other):
        self._same_level(other)
        return self._new(self.v - other.v)

    def __mul__(self, other):
        self._same_level(other)
        return self._new(self.v * other.v)

    def __truediv__(self, other):
        self._same_level(other)
        if other.v == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._new(self.v / other.v)

    def __neg__(self):
        return self._new(-self.v)

    def __lt__(self, other):
        self._same_level(other)
        if self.kind != "real":
            raise TypeError("complex values are not ordered")
        return self.v.real < other.v.real

    def inverse(self) -> ScaledValue:
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._new(1 / self.v)

    def conj(self) -> ScaledValue:
        return self._new(self.v.conjugate())


def valuate(s, b: BaseNumber, kind: Kind = "complex") -> ScaledValue:
    """Value of base element ``b`` inside the structure at level ``s``.

    >>> valuate(2, BaseNumber(6)).v
    (3+0j)
    """
    s = check_level(s, kind)
    v = b.label / s
    if kind == "real":
        v = complex(v.real, 0.0)
    return ScaledValue(v, s, kind)


def revaluate(s, t, a_t: ScaledValue) -> ScaledValue:
    """Express the level-``t`` value ``a_t`` in the level-``s`` structure."""
    s = check_level(s, a_t.kind)
    t = check_level(t, a_t.kind)
    if a_t.level != t:
        raise LevelMismatchError(f"input is at level {a_t.level}, expected {t}")
    if s == t:
        return a_t
    return ScaledValue((t / s) * a_t.v, s, a_t.kind)


def w_map(s, t, b: BaseNumber) -> BaseNumber:
    """Value preserving map sending the element ``t*a`` to ``s*a``."""
    s = check_level(s)
    t = check_level(t)
    if s == t:
        return b
    return BaseNumber((s / t) * b.label)


# --------------------------------------------------------------------------
# relativized operation tables


class RelOps:
    """Operations of the level-``t`` structure acting on level-``s`` representatives.

    A level-``t`` value ``a`` is represented in the level-``s`` structure by
    ``(t/s) a``.  With ``q = t/s`` the operations that reproduce level-``t``
    arithmetic on representatives are

    ========  =========================
    add       ``x + y``
    mul       ``x * y / q``
    inv       ``q**2 / x``
    conj      ``(q / conj(q)) * conj(x)``
    unit      ``q``
    ========  =========================
    """

    def __init__(self, sup, sub, kind: Kind = "complex"):
        self.kind = kind
        self.sup = check_level(sup, kind)
        self.sub = check_level(sub, kind)
        self.q = self.sup / self.sub
        self._rq = self.sub / self.sup

    def __repr__(self):
        return f"RelOps(sup={self.sup}, sub={self.sub}, kind={self.kind!r})"

    @property
    def unit(self) -> complex:
        return self.q

    @property
    def zero(self) -> complex:
        return 0j

    def rep(self, a):
        """Representative of a level-``t`` value (given as a plain number)."""
        return self.q * a

    def unrep(self, x):
        return self._rq * x

    def add(self, x, y):
        return x + y

    def sub_(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return self._rq * (x * y)

    def inv(self, x):
        if np.any(np.asarray(x) == 0):
            raise ZeroDivisionError("relativized inverse of 0")
        return self.q * self.q / x

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def conj(self, x):
        if self.kind == "real":
            return x
        return (self.q / np.conj(self.q)) * np.conj(x)

    def abs(self, x):
        """Relativized modulus: representative of ``|a|`` read at level ``t``."""
        return (self.q / np.abs(self.q)) * np.abs(x)

    def lt(self, x, y):
        if self.kind != "real":
            raise TypeError("complex structures carry no order")
        return np.real(x) < np.real(y)


def rel_ops(s, t, kind: Kind = "complex") -> RelOps:
    """Operation table of the level-``t`` structure relativized to level ``s``."""
    return RelOps(t, s, kind)


class TransportedOps:
    """An operation table carried to new representatives by the Z map.

    ``inner`` acts on level-``m`` representatives; ``outer = rel_ops(s, m)``
    converts those to level-``s`` representatives.  Each operation here is
    the conjugate ``rep . op . unrep`` and does not use the closed forms of
    :class:`RelOps`, so it serves as an independent check of Z-transitivity.
    """

    def __init__(self, outer: RelOps, inner: RelOps):
        if outer.sup != inner.sub:
            raise CombinationError(
                f"cannot chain relativizations: outer starts at {outer.sup}, "
                f"inner ends at {inner.sub}"
            )
        self.outer = outer
        self.inner = inner
        self.kind = inner.kind
        self.sup = inner.sup
        self.sub = outer.sub

    def _to(self, x):
        return self.outer.rep(x)

    def _from(self, x):
        return self.outer.unrep(x)

    @property
    def unit(self):
        return self._to(self.inner.unit)

    @property
    def zero(self):
        return self._to(self.inner.zero)

    def add(self, x, y):
        return self._to(self.inner.add(self._from(x), self._from(y)))

    def mul(self, x, y):
        return self._to(self.inner.mul(self._from(x), self._from(y)))

    def inv(self, x):
        return self._to(self.inner.inv(self._from(x)))

    def conj(self, x):
        return self._to(self.inner.conj(self._from(x)))

    def lt(self, x, y):
        return self.inner.lt(self._from(x), self._from(y))


def z_compose(outer: RelOps, inner: RelOps) -> TransportedOps:
    """Relativize ``inner`` (``S^u_t``) further to level ``s`` via ``outer`` (``S^t_s``)."""
    return TransportedOps(outer, inner)


# --------------------------------------------------------------------------
# order of operations


def scale_then_multiply_mismatch(s, t, a_t: ScaledValue, b_t: ScaledValue):
    """Both orders of "multiply" and "move to level s".

    Returns ``(multiply first, scale first)``.  The second differs from the
    first by the factor ``t/s``.
    """
    first = revaluate(s, t, a_t * b_t)
    second = revaluate(s, t, a_t) * revaluate(s, t, b_t)
    return first.v, second.v


def conjugation_paths(s, t, a_t: ScaledValue):
    """Both orders of "conjugate" and "move to level s".

    Returns ``(conjugate first, scale first)``; they agree iff ``t/s`` is real
    (or ``a_t`` is zero).
    """
    first = revaluate(s, t, a_t.conj())
    second = revaluate(s, t, a_t).conj()
    return first.v, second.v


# --------------------------------------------------------------------------
# exact complex rationals for structure labels


@dataclass(frozen=True)
class ExactComplex:
    """A complex number with rational parts; floats convert without rounding."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, z) -> ExactComplex:
        if isinstance(z, ExactComplex):
            return z
        if isinstance(z, Fraction):
            return cls(z, Fraction(0))
        if isinstance(z, (int, np.integer)):
            return cls(Fraction(int(z)), Fraction(0))
        if not isinstance(z, Number) and not isinstance(z, np.generic):
            raise TypeError(f"not a number: {z!r}")
        z = complex(z)
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            raise ValueError(f"non-finite structure label {z}")
        return cls(Fraction(z.real), Fraction(z.imag))

    def __add__(self, o):
        o = ExactComplex.of(o)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = ExactComplex.of(o)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, o):
        o = ExactComplex.of(o)
        return ExactComplex(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = ExactComplex.of(o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return ExactComplex(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


# --------------------------------------------------------------------------
# relativized structure labels


class RelStructure:
    """The structure label ``S^sup_sub``.

    Labels compare equal when their canonical ratios ``sup/sub`` agree, the
    invariance under relabelling ``(t, s) -> (a t, a s)``.  ``sup == 0`` is the
    empty structure.  Both indices are stored exactly.
    """

    __slots__ = ("_sup", "_sub", "kind")

    def __init__(self, sup, sub, kind: Kind = "complex"):
        check_kind(kind)
        sup = ExactComplex.of(sup)
        sub = ExactComplex.of(sub)
        if not sub:
            raise EmptyStructureError("relativized structure with subscript 0")
        if kind == "real" and (sup.im or sub.im or sub.re < 0):
            raise ScalingError("real-kind structures need real indices and positive subscript")
        self._sup = sup
        self._sub = sub
        self.kind = kind

    @property
    def sup(self) -> complex:
        return complex(self._sup)

    @property
    def sub(self) -> complex:
        return complex(self._sub)

    @property
    def is_empty(self) -> bool:
        return not self._sup

    def _ratio(self) -> ExactComplex:
        return self._sup / self._sub

    def canonical(self) -> complex:
        return canonical(self)

    def __eq__(self, other):
        if not isinstance(other, RelStructure):
            return NotImplemented
        return self.kind == other.kind and self._ratio() == other._ratio()

    def __hash__(self):
        return hash((self.kind, self._ratio()))

    def __repr__(self):
        return f"RelStructure(sup={self.sup}, sub={self.sub}, kind={self.kind!r})"

    def __add__(self, other):
        return struct_add(self, other)

    def __sub__(self, other):
        return struct_add(self, other, sign=-1)

    def __rmul__(self, w):
        return struct_scale(w, self)

    def rescaled(self, alpha) -> RelStructure:
        """Multiply both indices by ``alpha`` (the relabelling freedom)."""
        alpha = ExactComplex.of(alpha)
        if not alpha:
            raise EmptyStructureError("relabelling factor 0")
        return RelStructure(self._sup * alpha, self._sub * alpha, self.kind)


def struct_add(a: RelStructure, b: RelStructure, sign: int = 1) -> RelStructure:
    """``S^t_s +- S^u_s = S^(t+-u)_s``; subscripts must agree exactly."""
    if a.kind != b.kind:
        raise CombinationError("cannot combine real and complex structures")
    if a._sub != b._sub:
        raise CombinationError(
            f"structures with subscripts {a.sub} and {b.sub} cannot be combined"
        )
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    sup = a._sup + b._sup if sign == 1 else a._sup - b._sup
    return RelStructure(sup, a._sub, a.kind)


def struct_scale(w, a: RelStructure) -> RelStructure:
    """``w S^t_s = S^(t w)_s``.  ``w = 0`` gives the empty structure."""
    w = ExactComplex.of(w)
    if a.kind == "real" and w.im:
        raise ScalingError("real-kind structures only scale by reals")
    return RelStructure(a._sup * w, a._sub, a.kind)


def canonical(a: RelStructure) -> complex:
    """The ratio ``sup/sub``, rounded once from its exact value.

    The empty structure has canonical value 0.
    """
    if a.is_empty:
        return 0j
    return complex(a._ratio())


def empty_structure(sub=1, kind: Kind = "complex") -> RelStructure:
    return RelStructure(0, sub, kind)
