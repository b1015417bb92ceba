"""
Parametric second-skin facade built from folding square elements.

The skin is a grid of modules. A module is one of three activation types
holding 1, 2x2 or 4x4 square elements, and every element folds outward
about a horizontal hinge on its top edge. The fold angle is 0 when the
element lies flat against the glazing (closed) and pi/2 when it stands
perpendicular to it (open).

Flat vector ordering, used by :func:`encode`/:func:`decode` and the JSON
format: modules in row-major grid order, then each module's elements as
R1, R2, ..., Rn. Inside a module the labels run down the columns, so for a
2x2 module ``R1 R3 / R2 R4`` (see :meth:`FacadeGenotype.matrix`).
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .solar import SunState

__all__ = [
    "ModuleType",
    "FacadeLayout",
    "FacadeGenotype",
    "FOLD_LIMIT",
    "DEFAULT_BOUNDS",
    "genotype_dims",
    "decode",
    "encode",
    "element_direct_block",
    "facade_shading",
]

# quarter turn; the mechanical range is quoted as 0..1.57 rad
FOLD_LIMIT = math.pi / 2
DEFAULT_BOUNDS = (0.50, 1.57)


class ModuleType(enum.Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3

    @property
    def side(self) -> int:
        return {1: 1, 2: 2, 3: 4}[self.value]

    @property
    def elements(self) -> int:
        return self.side**2

    @classmethod
    def parse(cls, value) -> "ModuleType":
        if isinstance(value, ModuleType):
            return value
        text = str(value).strip().lower().removeprefix("type")
        try:
            return cls(int(text))
        except ValueError:
            raise ValueError(f"unknown module type {value!r}; use 1, 2 or 3") from None


@dataclass(frozen=True)
class FacadeLayout:
    grid_rows: int = 4
    grid_cols: int = 4
    module_types: tuple[ModuleType, ...] = field(default=(ModuleType.TYPE3,) * 16)
    facade_width: float = 7.0
    facade_height: float = 8.0
    facade_azimuth: float = 180.0

    def __post_init__(self):
        types = tuple(ModuleType.parse(t) for t in self.module_types)
        object.__setattr__(self, "module_types", types)
        if self.grid_rows < 1 or self.grid_cols < 1:
            raise ValueError("grid dimensions must be positive")
        if len(types) != self.grid_rows * self.grid_cols:
            raise ValueError(
                f"{len(types)} module types given for a {self.grid_rows}x{self.grid_cols} grid"
            )
        if not (self.facade_width > 0 and self.facade_height > 0):
            raise ValueError("facade width and height must be positive")

    @classmethod
    def uniform(cls, rows: int, cols: int, module_type=ModuleType.TYPE3, **kwargs) -> "FacadeLayout":
        return cls(rows, cols, (ModuleType.parse(module_type),) * (rows * cols), **kwargs)

    @property
    def n_modules(self) -> int:
        return self.grid_rows * self.grid_cols

    def element_weights(self) -> np.ndarray:
        """Area fraction of the skin covered by each element, in flat order."""
        return np.concatenate([
            np.full(t.elements, 1.0 / (self.n_modules * t.elements)) for t in self.module_types
        ])

    def to_dict(self) -> dict:
        return {
            "grid_rows": self.grid_rows,
            "grid_cols": self.grid_cols,
            "module_types": [t.value for t in self.module_types],
            "facade_width": self.facade_width,
            "facade_height": self.facade_height,
            "facade_azimuth": self.facade_azimuth,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FacadeLayout":
        return cls(
            int(d["grid_rows"]),
            int(d["grid_cols"]),
            tuple(ModuleType.parse(t) for t in d["module_types"]),
            float(d.get("facade_width", 7.0)),
            float(d.get("facade_height", 8.0)),
            float(d.get("facade_azimuth", 180.0)),
        )


def _check_bounds(bounds) -> tuple[float, float]:
    lo, hi = float(bounds[0]), float(bounds[1])
    if not 0.0 <= lo < hi <= FOLD_LIMIT:
        raise ValueError(f"fold-angle bounds {bounds} must satisfy 0 <= min < max <= pi/2")
    return lo, hi


@dataclass(frozen=True, eq=False)
class FacadeGenotype:
    """Fold angles of every element, grouped per module."""

    layout: FacadeLayout
    angles: tuple[np.ndarray, ...]
    bounds: tuple[float, float] = DEFAULT_BOUNDS

    def __post_init__(self):
        lo, hi = _check_bounds(self.bounds)
        object.__setattr__(self, "bounds", (lo, hi))
        if len(self.angles) != self.layout.n_modules:
            raise ValueError(f"expected {self.layout.n_modules} modules, got {len(self.angles)}")
        frozen = []
        for i, (a, t) in enumerate(zip(self.angles, self.layout.module_types)):
            a = np.array(a, dtype=float).ravel()
            if a.size != t.elements:
                raise ValueError(f"module {i} is {t.name} with {t.elements} elements, got {a.size}")
            if np.any(a < lo) or np.any(a > hi):
                raise ValueError(f"module {i} has angles outside [{lo}, {hi}]")
            a.setflags(write=False)
            frozen.append(a)
        object.__setattr__(self, "angles", tuple(frozen))

    def __eq__(self, other):
        if not isinstance(other, FacadeGenotype):
            return NotImplemented
        return (self.layout == other.layout and self.bounds == other.bounds
                and all(np.array_equal(a, b) for a, b in zip(self.angles, other.angles)))

    def flat(self) -> np.ndarray:
        return np.concatenate(self.angles)

    def matrix(self, module: int) -> np.ndarray:
        """Fold-angle matrix of one module, R1 top-left and labels running down columns."""
        side = self.layout.module_types[module].side
        return self.angles[module].reshape(side, side, order="F")

    def to_dict(self) -> dict:
        return {
            "layout": self.layout.to_dict(),
            "bounds": list(self.bounds),
            "angles": [float(v) for v in self.flat()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "FacadeGenotype":
        layout = FacadeLayout.from_dict(d["layout"])
        return decode(d["angles"], layout, tuple(d.get("bounds", DEFAULT_BOUNDS)))

    @classmethod
    def from_json(cls, text: str) -> "FacadeGenotype":
        return cls.from_dict(json.loads(text))

    @classmethod
    def constant(cls, layout: FacadeLayout, angle: float, bounds=None) -> "FacadeGenotype":
        """Every element at ``angle``; bounds default to the whole fold range."""
        bounds = (0.0, FOLD_LIMIT) if bounds is None else bounds
        return decode(np.full(genotype_dims(layout), angle), layout, bounds)


def genotype_dims(layout: FacadeLayout) -> int:
    """Number of fold angles, i.e. the optimizer's dimensionality."""
    return sum(t.elements for t in layout.module_types)


def decode(vector: Sequence[float], layout: FacadeLayout, bounds=DEFAULT_BOUNDS) -> FacadeGenotype:
    vector = np.asarray(vector, dtype=float).ravel()
    n = genotype_dims(layout)
    if vector.size != n:
        raise ValueError(f"vector has {vector.size} entries, layout needs {n}")
    splits = np.cumsum([t.elements for t in layout.module_types])[:-1]
    return FacadeGenotype(layout, tuple(np.split(vector, splits)), tuple(bounds))


def encode(genotype: FacadeGenotype) -> np.ndarray:
    return genotype.flat()


def element_direct_block(angle, profile_angle):
    """
    Fraction of an element's cell shaded from the direct beam.

    A top-hinged unit panel folded out by ``angle`` casts a shadow of depth
    ``cos(angle) + sin(angle) * tan(profile_angle)`` cell heights, clipped to
    ``[0, 1]``. Accepts scalars or broadcastable arrays.

    Parameters
    ----------
    angle : float or ndarray
        Fold angle in ``[0, pi/2]``.
    profile_angle : float or ndarray
        Solar profile angle on the facade, in ``(-pi/2, pi/2)``.
    """
    angle = np.asarray(angle, dtype=float)
    profile_angle = np.asarray(profile_angle, dtype=float)
    if np.any(np.abs(profile_angle) >= math.pi / 2):
        raise ValueError("profile angle must lie in (-pi/2, pi/2); the sun is behind the facade")
    block = np.clip(np.cos(angle) + np.sin(angle) * np.tan(profile_angle), 0.0, 1.0)
    return float(block) if block.ndim == 0 else block


def facade_shading(genotype: FacadeGenotype, sun: SunState) -> tuple[float, float]:
    """
    Area-weighted (direct, diffuse) blocking fractions of the whole skin.

    Diffuse blocking is the mean of ``cos(angle)``. When the sun is below
    the horizon or behind the facade no beam reaches the skin and the
    direct fraction is reported as 0.
    """
    angles = genotype.flat()
    w = genotype.layout.element_weights()
    diffuse = float(np.clip(w @ np.cos(angles), 0.0, 1.0))
    if not sun.in_front:
        return 0.0, diffuse
    direct = float(np.clip(w @ element_direct_block(angles, sun.profile_angle), 0.0, 1.0))
    return direct, diffuse
