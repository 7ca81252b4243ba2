"""The classical Hopf bundle S^7 -> S^4 at q = 1 and its charge.

S^4 is charted by stereographic projection from the pole x = -1,

    x = (1 - |u|^2) / (1 + |u|^2),  (alpha, beta) = 2 (u1 + i u2, u3 + i u4) / (1 + |u|^2),

and carries the orientation -du1 du2 du3 du4, for which the second Chern
form is -3/(8 pi^2) times the volume form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm, qmc

from .errors import ErrorCode, HopfqError, ValidationError
from .logging import logger
from .models import ChernReport, GaugeReport
from .ncalg import NCMatrix, NCPoly

UNIT_TOL = 1e-12
VOL_S4 = 8 * math.pi**2 / 3
ORIENTATION = -1
BATCH = 1 << 16

D = np.diag([1.0, -1.0, 1.0, 1.0]).astype(complex)

_PERMUTATIONS = [
    (perm, 1 if sum(perm[i] > perm[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0 else -1)
    for perm in itertools.permutations(range(4))
]


@dataclass(frozen=True)
class S7Point:
    z: np.ndarray

    def __post_init__(self) -> None:
        z = np.asarray(self.z, dtype=complex)
        if z.shape != (4,):
            raise ValidationError(f"a point of S^7 has 4 complex coordinates, got shape {z.shape}")
        norm2 = float(np.sum(np.abs(z) ** 2))
        if abs(norm2 - 1.0) > UNIT_TOL:
            raise ValidationError(f"|z|^2 = {norm2!r} is not 1")
        object.__setattr__(self, "z", z)

    @classmethod
    def random(cls, rng: np.random.Generator) -> S7Point:
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        return cls(z / np.linalg.norm(z))


@dataclass(frozen=True)
class S4Point:
    x: float
    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2 + self.x**2
        if abs(total - 1.0) > UNIT_TOL:
            raise ValidationError(f"|alpha|^2 + |beta|^2 + x^2 = {total!r} is not 1")


def su2(w1: complex, w2: complex) -> np.ndarray:
    """((w1, w2), (-conj w2, conj w1))."""
    return np.array([[w1, w2], [-np.conj(w2), np.conj(w1)]], dtype=complex)


def random_su2(rng: np.random.Generator) -> np.ndarray:
    w = rng.normal(size=2) + 1j * rng.normal(size=2)
    w = w / np.linalg.norm(w)
    return su2(w[0], w[1])


def act(z: S7Point, w: np.ndarray) -> S7Point:
    """Right diagonal action z . w of SU(2) on S^7."""
    block = np.zeros((4, 4), dtype=complex)
    block[:2, :2] = w
    block[2:, 2:] = w
    return S7Point(z.z @ block)


def hopf_map(z: S7Point) -> S4Point:
    z1, z2, z3, z4 = z.z
    x = abs(z1) ** 2 + abs(z2) ** 2 - abs(z3) ** 2 - abs(z4) ** 2
    alpha = 2 * (z1 * np.conj(z3) + z2 * np.conj(z4))
    beta = 2 * (-z1 * z4 + z2 * z3)
    return S4Point(float(x), complex(alpha), complex(beta))


def frame(z: S7Point) -> np.ndarray:
    """The 4x2 frame with orthonormal columns."""
    z1, z2, z3, z4 = z.z
    c = np.conj
    return np.array([[z1, z2], [-c(z2), c(z1)], [z3, z4], [-c(z4), c(z3)]], dtype=complex)


def _projection(x: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Batched p(x, alpha, beta), shape (..., 4, 4)."""
    c = np.conj
    zero = np.zeros_like(alpha)
    rows = [
        [1 + x, zero, alpha, beta],
        [zero, 1 + x, -c(beta), c(alpha)],
        [c(alpha), -beta, 1 - x, zero],
        [c(beta), alpha, zero, 1 - x],
    ]
    return 0.5 * np.stack([np.stack(r, axis=-1) for r in rows], axis=-2).astype(complex)


def classical_projection(pt: S4Point) -> np.ndarray:
    return _projection(np.asarray(pt.x), np.asarray(pt.alpha), np.asarray(pt.beta))


def projection_defects(p: np.ndarray) -> dict[str, float]:
    """|p^2 - p|, |p - p*| and |tr p - 2| in max norm."""
    return {
        "idempotent": float(np.abs(p @ p - p).max()),
        "selfadjoint": float(np.abs(p - p.conj().T).max()),
        "trace": float(abs(np.trace(p) - 2)),
    }


# Chart and Chern forms


def chart_to_sphere(u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    r2 = np.sum(u**2, axis=-1)
    s = 2.0 / (1.0 + r2)
    return (1.0 - r2) / (1.0 + r2), s * (u[..., 0] + 1j * u[..., 1]), s * (u[..., 2] + 1j * u[..., 3])


def sphere_to_chart(points: np.ndarray) -> np.ndarray:
    """Inverse stereographic map for rows (x, Re alpha, Im alpha, Re beta, Im beta)."""
    return points[:, 1:] / (1.0 + points[:, :1])


def chart_projection(u: np.ndarray) -> np.ndarray:
    return _projection(*chart_to_sphere(u))


def _derivatives(u: np.ndarray, h: float) -> list[np.ndarray]:
    """Central differences dp/du_i, i = 1..4."""
    out = []
    for i in range(4):
        step = np.zeros(4)
        step[i] = h
        out.append((chart_projection(u + step) - chart_projection(u - step)) / (2 * h))
    return out


def _trace(m: np.ndarray) -> np.ndarray:
    return np.trace(m, axis1=-2, axis2=-1)


def chern_densities(u: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Per point: max_ij |tr(p [d_i p, d_j p])| and the u-density of tr(p (dp)^4)."""
    p = chart_projection(u)
    dp = _derivatives(u, h)
    c1 = np.zeros(u.shape[0])
    for i, j in itertools.combinations(range(4), 2):
        comm = dp[i] @ dp[j] - dp[j] @ dp[i]
        c1 = np.maximum(c1, np.abs(_trace(p @ comm)))
    four = np.zeros(u.shape[0], dtype=complex)
    for perm, sign in _PERMUTATIONS:
        a, b, c, d = (dp[k] for k in perm)
        four += sign * _trace(p @ a @ b @ c @ d)
    return c1, ORIENTATION * four.real


def volume_density(u: np.ndarray) -> np.ndarray:
    """Round volume of S^4 in the chart, 16 / (1 + |u|^2)^4."""
    return 16.0 / (1.0 + np.sum(u**2, axis=-1)) ** 4


def sphere_samples(n: int, seed: int) -> np.ndarray:
    """n quasi-random points uniform on S^4 (Sobol through normal quantiles)."""
    sobol = qmc.Sobol(d=5, scramble=True, seed=seed)
    chunks = []
    remaining = n
    while remaining > 0:
        block = sobol.random(BATCH)[: min(BATCH, remaining)]
        chunks.append(block)
        remaining -= block.shape[0]
    cube = np.clip(np.concatenate(chunks), 1e-12, 1 - 1e-12)
    g = norm.ppf(cube)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def chern_numbers(samples: int = 2_000_000, fd_step: float = 1e-4, seed: int = 42, *, pole_guard: float = 1e-6) -> ChernReport:
    """c_2 = -1/(8 pi^2) int tr(p (dp)^4), sampled uniformly on S^4.

    Each sample contributes vol(S^4) * density / volume_density; points within
    ``pole_guard`` of the excluded pole are rejected.
    """
    if samples < 1:
        raise ValidationError("samples must be positive")
    points = sphere_samples(samples, seed)
    keep = 1.0 + points[:, 0] > pole_guard
    rejected = int((~keep).sum())
    u_all = sphere_to_chart(points[keep])
    ratios = []
    c1_max = 0.0
    for start in range(0, u_all.shape[0], BATCH):
        u = u_all[start : start + BATCH]
        c1, four = chern_densities(u, fd_step)
        c1_max = max(c1_max, float(c1.max(initial=0.0)))
        ratios.append(four / volume_density(u))
    ratio = np.concatenate(ratios) if ratios else np.zeros(0)
    # rejected points contribute zero
    weight = ratio.size / samples if samples else 0.0
    integral = VOL_S4 * float(ratio.mean()) * weight if ratio.size else 0.0
    stderr = VOL_S4 * float(ratio.std()) / math.sqrt(max(ratio.size, 1)) / (8 * math.pi**2)
    c2 = -integral / (8 * math.pi**2)
    logger.debug(f"c2 = {c2:.6f} +/- {stderr:.2e} from {ratio.size} samples ({rejected} rejected)")
    return ChernReport(
        samples=samples,
        fd_step=fd_step,
        seed=seed,
        c1_max_residual=c1_max,
        c2_value=c2,
        c2_stderr=stderr,
        rejected_samples=rejected,
    )


def analytic_c2() -> float:
    """-3/(8 pi^2) vol(S^4)."""
    return -3 / (8 * math.pi**2) * VOL_S4


def rotation_residual(points: int = 8, seed: int = 0, h: float = 1e-4) -> float:
    """Relative change of the tr(p (dp)^4) density under random rotations of u."""
    rng = np.random.default_rng(seed)
    u = rng.normal(size=(points, 4))
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    _, before = chern_densities(u, h)
    _, after = chern_densities(u @ q.T, h)
    return float(np.max(np.abs(before - after) / np.maximum(np.abs(before), 1e-300)))


# The q = 1 limit of the quantum projection


@dataclass(frozen=True)
class Renaming:
    """x_i = sign_i * z_perm(i), conjugated where ``conj`` is set."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    conj: tuple[bool, ...]

    def apply(self, z: np.ndarray) -> dict[str, complex]:
        values: dict[str, complex] = {}
        for i in range(4):
            zi = z[self.perm[i]]
            xi = self.signs[i] * (np.conj(zi) if self.conj[i] else zi)
            values[f"x{i + 1}"] = complex(xi)
            values[f"xb{i + 1}"] = complex(np.conj(xi))
        return values

    def __str__(self) -> str:
        parts = []
        for i in range(4):
            z = f"z{self.perm[i] + 1}"
            z = f"conj({z})" if self.conj[i] else z
            parts.append(("-" if self.signs[i] < 0 else "") + z)
        return "x = (" + ", ".join(parts) + ")"


def renamings() -> list[Renaming]:
    """Signed permutations of z with optional conjugation: 24 * 16 * 16 candidates."""
    return [
        Renaming(perm, signs, conj)
        for perm in itertools.permutations(range(4))
        for signs in itertools.product((1, -1), repeat=4)
        for conj in itertools.product((False, True), repeat=4)
    ]


def evaluate_at_q1(e: NCPoly, values: dict[str, complex]) -> complex:
    """Commutative image at q = 1 evaluated at numeric generator values."""
    total = 0j
    for word, c in e.commutative_image(1, "exact").items():
        term = complex(float(c))
        for g in word:
            term *= values[g]
        total += term
    return total


def quantum_projection_at_q1(p: NCMatrix, values: dict[str, complex]) -> np.ndarray:
    return np.array([[evaluate_at_q1(e, values) for e in row] for row in p.rows], dtype=complex)


def q1_gauge_check(p: NCMatrix, points: int = 20, seed: int = 42, tol: float = 1e-12) -> GaugeReport:
    """Find the renaming with D p_classical D = p|_{q=1} and certify it at ``points`` random z."""
    rng = np.random.default_rng(seed)
    zs = [S7Point.random(rng) for _ in range(points)]
    targets = [D @ classical_projection(hopf_map(z)) @ D for z in zs]
    best: tuple[float, Renaming | None] = (math.inf, None)
    tried = 0
    for candidate in renamings():
        tried += 1
        dev = float(np.abs(quantum_projection_at_q1(p, candidate.apply(zs[0].z)) - targets[0]).max())
        if dev < best[0]:
            best = (dev, candidate)
        if dev > tol:
            continue
        worst = max(
            float(np.abs(quantum_projection_at_q1(p, candidate.apply(z.z)) - target).max())
            for z, target in zip(zs, targets, strict=True)
        )
        if worst <= tol:
            t_dev = max(
                abs(evaluate_at_q1(p.entry(2, 2), candidate.apply(z.z)) - (1 + hopf_map(z).x) / 2) for z in zs
            )
            logger.debug(f"renaming {candidate} after {tried} candidates")
            return GaugeReport(
                renaming=str(candidate),
                candidates_tried=tried,
                points=points,
                max_deviation=worst,
                t_affine=f"t = (1 + x)/2 to {t_dev:.1e}",
            )
    raise HopfqError(
        ErrorCode.NO_RENAMING_FOUND,
        f"no renaming makes D p D agree with p at q = 1 (best {best[1]}, deviation {best[0]:.3e})",
        {"best": str(best[1]), "deviation": best[0]},
    )


def frame_checks(points: int = 10, seed: int = 42) -> dict[str, float]:
    """v* v = 1, v v* = p(hopf_map(z)), v(z . w) = v(z) w and hopf_map(z . w) = hopf_map(z)."""
    rng = np.random.default_rng(seed)
    worst = {"orthonormal": 0.0, "projection": 0.0, "equivariant": 0.0, "invariant": 0.0, "defects": 0.0}
    for _ in range(points):
        z = S7Point.random(rng)
        w = random_su2(rng)
        v = frame(z)
        pt = hopf_map(z)
        p = classical_projection(pt)
        moved = act(z, w)
        image = hopf_map(moved)
        worst["orthonormal"] = max(worst["orthonormal"], float(np.abs(v.conj().T @ v - np.eye(2)).max()))
        worst["projection"] = max(worst["projection"], float(np.abs(v @ v.conj().T - p).max()))
        worst["equivariant"] = max(worst["equivariant"], float(np.abs(frame(moved) - v @ w).max()))
        worst["invariant"] = max(
            worst["invariant"],
            abs(image.x - pt.x), abs(image.alpha - pt.alpha), abs(image.beta - pt.beta),
        )
        worst["defects"] = max(worst["defects"], *projection_defects(p).values())
    return worst

