"""Floating-point model of the Moebius gyrogroup on the open complex unit disk.

Addition is ``a + b = (a + b) / (1 + conj(a) b)`` (the standard Moebius
addition; imported from the gyrogroup literature). Gyrations are computed
from the gyrator identity and cross-checked against the closed form
``gyr[a, b]c = (1 + a conj(b)) / (1 + conj(a) b) * c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "DEFAULT_RADIUS",
    "DEFAULT_SEED",
    "DiskPoint",
    "SampleReport",
    "corrupted_add",
    "m_add",
    "m_check_axioms",
    "m_coadd",
    "m_gyr",
    "m_gyr_closed",
    "m_neg",
    "sample_disk",
]

DEFAULT_SEED = 20170621
DEFAULT_RADIUS = 0.95
BOUNDARY_TOL = 1e-12

Add = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DiskPoint:
    re: float
    im: float

    def __post_init__(self):
        if not (np.isfinite(self.re) and np.isfinite(self.im)):
            raise ValueError("disk point must be finite")
        if self.re * self.re + self.im * self.im >= 1.0:
            raise ValueError(f"{complex(self.re, self.im)} is not inside the unit disk")

    def __complex__(self):
        return complex(self.re, self.im)

    @classmethod
    def of(cls, z: complex) -> "DiskPoint":
        z = complex(z)
        return cls(z.real, z.imag)


def _z(x):
    if isinstance(x, DiskPoint):
        return complex(x)
    return np.asarray(x, dtype=complex) if np.ndim(x) else complex(x)


def _wrap(z, like):
    return DiskPoint.of(z) if isinstance(like, DiskPoint) else z


def m_add(a, b):
    """Moebius addition; accepts DiskPoint, complex scalars or arrays."""
    za, zb = _z(a), _z(b)
    if not (np.all(np.isfinite(za)) and np.all(np.isfinite(zb))):
        raise ValueError("non-finite input")
    out = (za + zb) / (1 + np.conj(za) * zb)
    if np.any(np.abs(out) >= 1 + BOUNDARY_TOL):
        raise ValueError("result left the disk; inputs are outside the sampling domain")
    return _wrap(out, a)


def m_neg(a):
    return _wrap(-_z(a), a)


def m_gyr(a, b, c, add: Add | None = None):
    """Definitional gyration ``-(a + b) + (a + (b + c))``."""
    add = add or _raw_add
    za, zb, zc = _z(a), _z(b), _z(c)
    out = add(-add(za, zb), add(za, add(zb, zc)))
    return _wrap(out, c)


def m_gyr_closed(a, b, c):
    za, zb, zc = _z(a), _z(b), _z(c)
    return _wrap((1 + za * np.conj(zb)) / (1 + np.conj(za) * zb) * zc, c)


def m_coadd(a, b, add: Add | None = None):
    """Cooperation ``a [+] b = a + gyr[a, -b]b``."""
    add = add or _raw_add
    za, zb = _z(a), _z(b)
    return _wrap(add(za, m_gyr(za, -zb, zb, add)), a)


def _raw_add(a, b):
    return (a + b) / (1 + np.conj(a) * b)


def corrupted_add(a, b):
    """Negative control: Moebius addition with the denominator dropped."""
    return a + b


def sample_disk(rng: np.random.Generator, count: int, radius: float = DEFAULT_RADIUS) -> np.ndarray:
    """Uniform samples from the closed disk ``|z| <= radius``."""
    r = radius * np.sqrt(rng.random(count))
    theta = rng.random(count) * 2 * np.pi
    return r * np.exp(1j * theta)


@dataclass
class SampleReport:
    samples: int
    tolerance: float
    max_residual: dict[str, float] = field(default_factory=dict)

    @property
    def pass_(self) -> bool:
        return all(v <= self.tolerance for v in self.max_residual.values())

    def failing(self) -> list[str]:
        return [k for k, v in self.max_residual.items() if not v <= self.tolerance]

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "pass": self.pass_,
        }


def _res(x, y) -> float:
    d = np.abs(np.asarray(x) - np.asarray(y))
    if not np.all(np.isfinite(d)):
        return float("inf")
    return float(d.max()) if d.size else 0.0


def m_check_axioms(
    sample_count: int = 10_000,
    seed: int = DEFAULT_SEED,
    tolerance: float = 1e-9,
    radius: float = DEFAULT_RADIUS,
    add: Add | None = None,
    points: Optional[tuple] = None,
) -> SampleReport:
    """Residuals of the gyrogroup identities on sampled points.

    ``points`` may supply explicit ``(a, b, c, d)`` arrays instead of
    sampling. ``add`` swaps in another operation (used for negative controls).
    """
    if sample_count < 1 or tolerance <= 0:
        raise ValueError("need sample_count >= 1 and tolerance > 0")
    add = add or _raw_add
    if points is None:
        rng = np.random.default_rng(seed)
        a, b, c, d = (sample_disk(rng, sample_count, radius) for _ in range(4))
    else:
        a, b, c, d = (np.atleast_1d(np.asarray(p, dtype=complex)) for p in points)
        sample_count = len(a)

    def gyr(x, y, z):
        return m_gyr(x, y, z, add)

    def neg(x):
        return -x

    zero = np.zeros_like(a)
    ab = add(a, b)
    r = {}
    r["closure"] = max(0.0, float(np.max(np.abs(ab))) - 1.0) if np.all(np.isfinite(ab)) else float("inf")
    r["two-sided-identity"] = max(_res(add(zero, a), a), _res(add(a, zero), a))
    r["two-sided-inverse"] = max(_res(add(neg(a), a), zero), _res(add(a, neg(a)), zero))
    g_abc = gyr(a, b, c)
    r["gyr-closed-form"] = _res(g_abc, m_gyr_closed(a, b, c))
    r["gyr-modulus"] = _res(np.abs(g_abc), np.abs(c))
    r["gyroautomorphism"] = _res(gyr(a, b, add(c, d)), add(g_abc, gyr(a, b, d)))
    r["left-gyroassociative"] = _res(add(a, add(b, c)), add(ab, g_abc))
    r["right-gyroassociative"] = _res(add(ab, c), add(a, add(b, gyr(b, a, c))))
    r["left-loop"] = _res(g_abc, gyr(ab, b, c))
    r["right-loop"] = _res(g_abc, gyr(a, add(b, a), c))
    r["left-cancellation"] = _res(add(neg(a), add(a, b)), b)
    r["gyrocommutative"] = _res(ab, gyr(a, b, add(b, a)))

    def coadd(x, y):
        return add(x, gyr(x, neg(y), y))

    r["right-cancellation-I"] = _res(coadd(add(b, neg(a)), a), b)
    r["right-cancellation-II"] = _res(add(coadd(b, neg(a)), a), b)
    return SampleReport(sample_count, tolerance, r)
