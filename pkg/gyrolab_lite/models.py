"""
Continuous gyrogroups: the Möbius disk and the Einstein ball (c = 1).

Kernels work on numpy arrays (complex for the disk, shape (..., 3) for the
ball) so the identity sampler evaluates whole chunks at once. The point
classes wrap single elements and enforce the open-domain constraint.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Tuple, Union

import mpmath
import numpy as np
import sympy

from .exceptions import ModelDomainError
from .workers import run_ordered

logger = logging.getLogger(__name__)

DEFAULT_RADIUS_CAP = 0.999
DEFAULT_CHUNK_SIZE = 1000
DUAL_PATH_DIGITS = 30


class ModelKind(str, Enum):
    MOBIUS = "mobius"
    EINSTEIN = "einstein"


@dataclass(frozen=True)
class DiskPoint:
    re: float
    im: float

    def __post_init__(self) -> None:
        if self.re * self.re + self.im * self.im >= 1.0:
            raise ModelDomainError(f"({self.re}, {self.im}) is outside the open unit disk")

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(float(np.real(z)), float(np.imag(z)))

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class BallPoint:
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if self.x * self.x + self.y * self.y + self.z * self.z >= 1.0:
            raise ModelDomainError(f"({self.x}, {self.y}, {self.z}) is outside the open unit ball")

    @classmethod
    def from_array(cls, v: np.ndarray) -> "BallPoint":
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def value(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __abs__(self) -> float:
        return float(np.linalg.norm(self.value))


# ---------------------------------------------------------------------------
# Array kernels
# ---------------------------------------------------------------------------

def mobius_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a + b) / (1 + np.conj(a) * b)


def mobius_gyr_closed(a: np.ndarray, b: np.ndarray, z: np.ndarray) -> np.ndarray:
    return (1 + a * np.conj(b)) / (1 + np.conj(a) * b) * z


def _dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.sum(u * v, axis=-1, keepdims=True)


def _gamma(u: np.ndarray) -> np.ndarray:
    r = np.sqrt(_dot(u, u))
    return 1.0 / np.sqrt((1.0 - r) * (1.0 + r))


def einstein_add(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    gu = _gamma(u)
    uv = _dot(u, v)
    return (u + v / gu + (gu / (1 + gu)) * uv * u) / (1 + uv)


def einstein_gyr_closed(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """gyr[u,v]w = w + (A u + B v) / D with D = γ_u γ_v (1 + u·v) + 1."""
    gu, gv = _gamma(u), _gamma(v)
    uv, uw, vw = _dot(u, v), _dot(u, w), _dot(v, w)
    A = (-(gu * gu / (gu + 1)) * (gv - 1) * uw
         + gu * gv * vw
         + 2 * (gu * gu * gv * gv / ((gu + 1) * (gv + 1))) * uv * vw)
    B = -(gv / (gv + 1)) * (gu * (gv + 1) * uw + (gu - 1) * gv * vw)
    D = gu * gv * (1 + uv) + 1
    return w + (A * u + B * v) / D


class GyroModel:
    """Vectorized operations of a continuous gyrogroup."""

    kind: ModelKind
    dim: int

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def neg(self, a: np.ndarray) -> np.ndarray:
        return -a

    def gyr(self, a: np.ndarray, b: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Gyrator identity ⊖(a⊕b)⊕(a⊕(b⊕z))."""
        return self.add(self.neg(self.add(a, b)), self.add(a, self.add(b, z)))

    def norm(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def zero(self, size: int) -> np.ndarray:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, size: int, radius_cap: float) -> np.ndarray:
        raise NotImplementedError

    def codiff(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """a⊟b = a⊖gyr[a,b]b."""
        return self.add(a, self.neg(self.gyr(a, b, b)))


def _rejection_sample(rng: np.random.Generator, size: int, dim: int, radius_cap: float) -> np.ndarray:
    out = np.empty((0, dim))
    while len(out) < size:
        draw = rng.uniform(-radius_cap, radius_cap, size=(2 * (size - len(out)) + 8, dim))
        keep = draw[np.einsum("ij,ij->i", draw, draw) < radius_cap * radius_cap]
        out = np.concatenate([out, keep])
    return out[:size]


class MobiusDisk(GyroModel):
    kind = ModelKind.MOBIUS
    dim = 2

    def add(self, a, b):
        return mobius_add(a, b)

    def gyr(self, a, b, z):
        return mobius_gyr_closed(a, b, z)

    def norm(self, a):
        return np.abs(a)

    def zero(self, size):
        return np.zeros(size, dtype=complex)

    def sample(self, rng, size, radius_cap):
        pts = _rejection_sample(rng, size, 2, radius_cap)
        return pts[:, 0] + 1j * pts[:, 1]


class EinsteinBall(GyroModel):
    kind = ModelKind.EINSTEIN
    dim = 3

    def add(self, a, b):
        return einstein_add(a, b)

    def gyr(self, a, b, z):
        return einstein_gyr_closed(a, b, z)

    def norm(self, a):
        return np.linalg.norm(a, axis=-1)

    def zero(self, size):
        return np.zeros((size, 3))

    def sample(self, rng, size, radius_cap):
        return _rejection_sample(rng, size, 3, radius_cap)


MODELS: Dict[ModelKind, GyroModel] = {
    ModelKind.MOBIUS: MobiusDisk(),
    ModelKind.EINSTEIN: EinsteinBall(),
}


def get_model(kind: Union[ModelKind, str]) -> GyroModel:
    return MODELS[ModelKind(kind)]


# ---------------------------------------------------------------------------
# Point-level operations
# ---------------------------------------------------------------------------

def mobius_op(a: DiskPoint, b: DiskPoint) -> DiskPoint:
    """a⊕b = (a+b)/(1+āb)."""
    return DiskPoint.from_complex(complex(mobius_add(np.complex128(a.value), np.complex128(b.value))))


def mobius_gyr(a: DiskPoint, b: DiskPoint, z: DiskPoint) -> DiskPoint:
    """Closed form: the unimodular factor (1+ab̄)/(1+āb) times z."""
    return DiskPoint.from_complex(complex(mobius_gyr_closed(
        np.complex128(a.value), np.complex128(b.value), np.complex128(z.value))))


def _mp_mobius_add(a: mpmath.mpc, b: mpmath.mpc) -> mpmath.mpc:
    return (a + b) / (1 + mpmath.conj(a) * b)


def mobius_gyr_via_identity(a: DiskPoint, b: DiskPoint, z: DiskPoint) -> DiskPoint:
    """Gyrator identity evaluated in mpmath at DUAL_PATH_DIGITS significant digits."""
    with mpmath.workdps(DUAL_PATH_DIGITS):
        ma, mb, mz = (mpmath.mpc(p.re, p.im) for p in (a, b, z))
        r = _mp_mobius_add(-_mp_mobius_add(ma, mb), _mp_mobius_add(ma, _mp_mobius_add(mb, mz)))
        return DiskPoint(float(r.real), float(r.imag))


def einstein_op(u: BallPoint, v: BallPoint) -> BallPoint:
    """Einstein velocity addition with c = 1."""
    return BallPoint.from_array(einstein_add(u.value, v.value))


def einstein_gyr(u: BallPoint, v: BallPoint, w: BallPoint) -> BallPoint:
    """Closed-form Einstein gyration."""
    return BallPoint.from_array(einstein_gyr_closed(u.value, v.value, w.value))


def _mp_einstein_add(u: List[mpmath.mpf], v: List[mpmath.mpf]) -> List[mpmath.mpf]:
    uu = mpmath.fsum(x * x for x in u)
    uv = mpmath.fsum(x * y for x, y in zip(u, v))
    gu = 1 / mpmath.sqrt(1 - uu)
    k = gu / (1 + gu) * uv
    return [(x + y / gu + k * x) / (1 + uv) for x, y in zip(u, v)]


def _mp_einstein_gyr(u: List[mpmath.mpf], v: List[mpmath.mpf], w: List[mpmath.mpf]) -> List[mpmath.mpf]:
    neg_uv = [-x for x in _mp_einstein_add(u, v)]
    return _mp_einstein_add(neg_uv, _mp_einstein_add(u, _mp_einstein_add(v, w)))


def einstein_gyr_via_identity(u: BallPoint, v: BallPoint, w: BallPoint) -> BallPoint:
    """Gyrator identity evaluated in mpmath at DUAL_PATH_DIGITS significant digits."""
    with mpmath.workdps(DUAL_PATH_DIGITS):
        mu, mv, mw = ([mpmath.mpf(x) for x in (p.x, p.y, p.z)] for p in (u, v, w))
        r = _mp_einstein_gyr(mu, mv, mw)
        return BallPoint(*(float(x) for x in r))


def exact_mobius_op(a: Any, b: Any) -> sympy.Expr:
    """Exact a⊕b for sympy-representable complex numbers (e.g. Rational, I)."""
    a, b = sympy.sympify(a), sympy.sympify(b)
    return sympy.nsimplify(sympy.simplify((a + b) / (1 + sympy.conjugate(a) * b)))


def exact_einstein_parallel(p: Any, q: Any) -> sympy.Expr:
    """Speed of two parallel velocities p, q: (p+q)/(1+pq)."""
    p, q = sympy.sympify(p), sympy.sympify(q)
    return sympy.simplify((p + q) / (1 + p * q))


# ---------------------------------------------------------------------------
# Identity sampler
# ---------------------------------------------------------------------------

IDENTITY_NAMES: Tuple[str, ...] = (
    "1_involution",
    "2_left_cancellation",
    "3_gyrator_identity",
    "4_gyrosum_inversion",
    "5_left_cancellation_with_gyration",
    "6_even_property",
    "7_inversive_symmetry",
    "codiff_self",
    "right_cancellation",
    "g4",
    "norm_preservation",
)


def evaluate_identities(model: GyroModel, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> Dict[str, np.ndarray]:
    """Per-sample residuals of every identity on aligned point arrays."""
    add, neg, gyr, norm = model.add, model.neg, model.gyr, model.norm

    def dist(x, y):
        return norm(x - y)

    ab = add(a, b)
    g_ab_c = gyr(a, b, c)
    return {
        "1_involution": dist(neg(neg(a)), a),
        "2_left_cancellation": dist(add(neg(a), ab), b),
        "3_gyrator_identity": dist(add(a, add(b, c)), add(ab, g_ab_c)),
        "4_gyrosum_inversion": dist(neg(ab), gyr(a, b, add(neg(b), neg(a)))),
        "5_left_cancellation_with_gyration": dist(
            add(add(neg(a), b), gyr(neg(a), b, add(neg(b), c))), add(neg(a), c)),
        "6_even_property": dist(g_ab_c, gyr(neg(a), neg(b), c)),
        "7_inversive_symmetry": dist(gyr(a, b, gyr(b, a, c)), c),
        "codiff_self": norm(model.codiff(a, a)),
        "right_cancellation": dist(add(model.codiff(b, a), a), b),
        "g4": dist(gyr(ab, b, c), g_ab_c),
        "norm_preservation": np.abs(norm(g_ab_c) - norm(c)),
    }


def _mobius_dual_path(a: np.ndarray, b: np.ndarray, z: np.ndarray) -> np.ndarray:
    closed = mobius_gyr_closed(a, b, z)
    out = np.empty(len(a))
    with mpmath.workdps(DUAL_PATH_DIGITS):
        for i in range(len(a)):
            ma, mb, mz = (mpmath.mpc(complex(p[i])) for p in (a, b, z))
            r = _mp_mobius_add(-_mp_mobius_add(ma, mb), _mp_mobius_add(ma, _mp_mobius_add(mb, mz)))
            out[i] = float(abs(mpmath.mpc(complex(closed[i])) - r))
    return out


def _einstein_dual_path(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    closed = einstein_gyr_closed(u, v, w)
    out = np.empty(len(u))
    with mpmath.workdps(DUAL_PATH_DIGITS):
        for i in range(len(u)):
            mu, mv, mw = ([mpmath.mpf(float(x)) for x in p[i]] for p in (u, v, w))
            r = _mp_einstein_gyr(mu, mv, mw)
            out[i] = float(mpmath.sqrt(mpmath.fsum((mpmath.mpf(float(c)) - x) ** 2 for c, x in zip(closed[i], r))))
    return out


DUAL_PATHS = {
    ModelKind.MOBIUS: _mobius_dual_path,
    ModelKind.EINSTEIN: _einstein_dual_path,
}


@dataclass
class ResidualEntry:
    name: str
    max_residual: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return bool(self.max_residual < self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "ok": self.ok, "max_residual": self.max_residual, "tolerance": self.tolerance}


@dataclass
class ModelIdentityReport:
    model: ModelKind
    samples: int
    seed: int
    entries: List[ResidualEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def __getitem__(self, name: str) -> ResidualEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model.value,
            "samples": self.samples,
            "seed": self.seed,
            "identities": [e.to_dict() for e in self.entries],
        }


def _sample_chunk(task: Tuple[str, np.random.SeedSequence, int, float]) -> Dict[str, float]:
    kind, seq, size, radius_cap = task
    model = get_model(kind)
    rng = np.random.default_rng(seq)
    a, b, c = (model.sample(rng, size, radius_cap) for _ in range(3))
    residuals = {k: float(np.max(v)) for k, v in evaluate_identities(model, a, b, c).items()}
    residuals["dual_path"] = float(np.max(DUAL_PATHS[model.kind](a, b, c)))
    return residuals


def model_identity_sampler(
    model: Union[ModelKind, str],
    samples: int,
    tol: float = 1e-9,
    seed: int = 0,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    radius_cap: float = DEFAULT_RADIUS_CAP,
    dual_path_tol: float = 1e-12,
) -> ModelIdentityReport:
    """Max residual per identity over seeded uniform samples from the disk or ball.

    Samples are split into fixed-size chunks, each with its own spawned seed,
    so the report does not depend on the worker count.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    kind = ModelKind(model)
    sizes = [min(chunk_size, samples - start) for start in range(0, samples, chunk_size)]
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = [(kind.value, seq, size, radius_cap) for seq, size in zip(seqs, sizes)]
    logger.info(f"Sampling {samples} {kind.value} triples in {len(tasks)} chunks")
    chunks = run_ordered(_sample_chunk, tasks, workers)

    names = list(IDENTITY_NAMES) + ["dual_path"]
    entries = [
        ResidualEntry(name, max(c[name] for c in chunks), dual_path_tol if name == "dual_path" else tol)
        for name in names
    ]
    report = ModelIdentityReport(kind, samples, seed, entries)
    for e in entries:
        if not e.ok:
            logger.warning(f"{kind.value}: {e.name} max residual {e.max_residual:.3e} >= {e.tolerance:.0e}")
    return report
