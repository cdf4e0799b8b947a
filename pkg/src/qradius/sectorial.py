"""Classification of matrices whose q-numerical range sits in a sector.

The sector with half-angle alpha is {z : Re z > 0, |Im z| <= tan(alpha) Re z}.
A matrix is q-sectorial when W_q(A) is contained in some such sector; the
smallest admissible alpha is its index. Estimates here work on the outer
boundary polygon, so the returned index over-estimates the true one, which is
the conservative direction for every downstream sector-hypothesis bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg, qrange
from .config import TOL
from .errors import GenerationFailed, NotHermitian, PredicateUnmet, QOutOfRange
from .qrange import QParam, as_qparam

ALPHA_MARGIN = 1e-3  # safety margin added to reported indices for bound checks


@dataclass(frozen=True)
class SectorParams:
    alpha: float

    def __post_init__(self):
        if not (0.0 <= self.alpha < math.pi / 2):
            raise ValueError("alpha must lie in [0, pi/2)")


@dataclass(frozen=True)
class SectorialVerdict:
    is_q_sectorial: bool
    alpha_estimate: Optional[float]
    min_real_part: float
    witness: complex

    @property
    def alpha_conservative(self) -> Optional[float]:
        if self.alpha_estimate is None:
            return None
        return min(self.alpha_estimate + ALPHA_MARGIN, math.pi / 2 - 1e-9)


def sector_membership(z: complex, p: SectorParams) -> bool:
    """Exact predicate: Re z > 0 and |Im z| <= tan(alpha) Re z.

    Evaluated in angle form (atan2(|Im|, Re) <= alpha), which is the same
    predicate but keeps boundary rays like 1+i at alpha = pi/4 inside.
    """
    z = complex(z)
    return z.real > 0 and math.atan2(abs(z.imag), z.real) <= p.alpha


def _max_angle_on_ellipse(e: qrange.EllipseDisc) -> float:
    """max over the ellipse boundary of atan2(|Im z|, Re z); requires Re > 0."""
    if e.semi_axis_x == 0.0 and e.semi_axis_y == 0.0:
        return abs(math.atan2(abs(e.center_y), e.center_x))

    def g(t: float) -> float:
        z = e.boundary(t)
        return math.atan2(abs(z.imag), z.real)

    ts = np.linspace(0.0, math.pi, 4096)  # symmetric about the real axis
    zs = e.boundary(ts)
    vals = np.arctan2(np.abs(zs.imag), zs.real)
    k = int(np.argmax(vals))
    step = math.pi / 4095
    lo, hi = max(0.0, ts[k] - step), min(math.pi, ts[k] + step)
    invphi = (math.sqrt(5) - 1) / 2
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    gc, gd = g(c), g(d)
    for _ in range(60):
        if gc >= gd:
            hi, d, gd = d, c, gc
            c = hi - invphi * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + invphi * (hi - lo)
            gd = g(d)
    return max(float(vals.max()), gc, gd)


def hermitian_q_sectorial_test(A, q) -> SectorialVerdict:
    """Closed-form verdict for Hermitian A and real q in (0, 1).

    Sectorial iff q (l1 + ln) > |l1 - ln|; the index is the maximal opening
    angle seen from the origin along the closed-form ellipse boundary.
    """
    A = linalg.as_matrix(A)
    if not linalg.is_hermitian(A):
        raise NotHermitian("Hermitian classification needs a Hermitian matrix")
    qp = as_qparam(q)
    if abs(qp.q.imag) > 1e-14 or not (0.0 < qp.q.real < 1.0):
        raise QOutOfRange("Hermitian criterion requires real q in (0, 1)")
    qv = qp.q.real
    vals = linalg.hermitian_eigenvalues(A)
    l1, ln = float(vals[0]), float(vals[-1])
    if qv * (l1 + ln) > abs(l1 - ln):
        e = qrange.hermitian_qrange_ellipse(A, qp)
        alpha = _max_angle_on_ellipse(e)
        return SectorialVerdict(True, alpha, min_real_part=e.center_x - e.semi_axis_x,
                                witness=complex(e.boundary(0.0)) if e.semi_axis_x == 0 else _angle_witness(e, alpha))
    # leftmost point of the ellipse certifies the failure
    e_center = qv * (l1 + ln) / 2
    a = (l1 - ln) / 2
    return SectorialVerdict(False, None, min_real_part=e_center - a, witness=complex(e_center - a, 0.0))


def _angle_witness(e: qrange.EllipseDisc, alpha: float) -> complex:
    ts = np.linspace(0.0, math.pi, 4096)
    zs = e.boundary(ts)
    vals = np.arctan2(np.abs(zs.imag), zs.real)
    return complex(zs[int(np.argmax(vals))])


def sectorial_index_estimate(A, q, m: int = qrange.DEFAULT_DIRECTIONS,
                             restarts: int = qrange.DEFAULT_RESTARTS, seed: int = 0,
                             max_iter: int = qrange.MAX_ITER) -> SectorialVerdict:
    """Verdict from the outer boundary polygon of W_q(A).

    Declares sectorial only when every vertex has Re > sep AND the support in
    direction pi is below -sep (two independent right-half-plane certificates).
    The index is the max of atan2(|Im|, Re) over the outer vertices, an upper
    estimate of the true index that shrinks as m grows.
    """
    A = linalg.as_matrix(A)
    qp = as_qparam(q)
    poly = qrange.boundary_polygon(A, qp, m=m, restarts=restarts, seed=seed, max_iter=max_iter)
    verts = poly.vertices
    res = verts.real
    k_min = int(np.argmin(res))
    min_re = float(res[k_min])
    h_pi = float(qrange.support_function(A, qp, math.pi, restarts=restarts, seed=seed)) if len(poly.directions) % 2 \
        else float(poly.support_values[0])
    if len(poly.directions) % 2 == 0:
        h_pi = float(poly.support_values[len(poly.directions) // 2])
    if min_re <= TOL.sep or h_pi >= -TOL.sep:
        witness = complex(verts[k_min])
        return SectorialVerdict(False, None, min_real_part=min_re, witness=witness)
    angles = np.arctan2(np.abs(verts.imag), res)
    k = int(np.argmax(angles))
    return SectorialVerdict(True, float(angles[k]), min_real_part=min_re, witness=complex(verts[k]))


def closure_suite(A, B, q, lam1: float, lam2: float, m: int = 96, restarts: int = 8,
                  seed: int = 0) -> dict:
    """Numerical checks of the closure properties of the q-sectorial class.

    Verifies that the transpose, the entrywise conjugate, the adjoint, and the
    positive combination lam1 A + lam2 B stay sectorial, with indices within
    2e-2 of the reference (transpose/conjugate/adjoint) or below it (sum).
    """
    A = linalg.as_matrix(A)
    B = linalg.as_matrix(B)
    qp = as_qparam(q)
    if lam1 <= 0 or lam2 <= 0:
        raise ValueError("combination weights must be positive")
    va = sectorial_index_estimate(A, qp, m=m, restarts=restarts, seed=seed)
    vb = sectorial_index_estimate(B, qp, m=m, restarts=restarts, seed=seed + 1)
    if not (va.is_q_sectorial and vb.is_q_sectorial):
        raise PredicateUnmet("both inputs must be q-sectorial")
    alpha = max(va.alpha_estimate, vb.alpha_estimate)
    checks = {}
    transforms = {
        "transpose": A.T.copy(),
        "conjugate": A.conj(),
        "adjoint": A.conj().T.copy(),
        "positive_combination": lam1 * A + lam2 * B,
    }
    for name, mat in transforms.items():
        v = sectorial_index_estimate(mat, qp, m=m, restarts=restarts, seed=seed + 2)
        ok = v.is_q_sectorial and v.alpha_estimate <= alpha + 2e-2
        checks[name] = {"sectorial": v.is_q_sectorial, "alpha": v.alpha_estimate, "passed": bool(ok)}
    return {"alpha_reference": alpha, "checks": checks,
            "all_passed": all(c["passed"] for c in checks.values())}


def random_q_sectorial(dim: int, q, target_alpha: float, seed: int = 0,
                       m: int = 24, restarts: int = 4, final_m: int = 64,
                       final_restarts: int = 8) -> tuple[np.ndarray, SectorialVerdict]:
    """Generate a q-sectorial matrix with index near target_alpha.

    Shape c I + eps B: the identity shift keeps the range to the right while
    eps inflates it, so the index grows continuously from 0 and bisection on
    eps terminates. Returns (matrix, verdict at verification settings).
    """
    if not (0.0 < target_alpha < math.pi / 2):
        raise ValueError("target_alpha must lie in (0, pi/2)")
    qp = as_qparam(q)
    B = linalg.random_matrix(dim, seed)
    B /= max(1.0, linalg.spectral_norm(B))
    c = 1.0

    def index_at(eps: float) -> Optional[float]:
        v = sectorial_index_estimate(c * np.eye(dim) + eps * B, qp, m=m,
                                     restarts=restarts, seed=seed, max_iter=150)
        return v.alpha_estimate if v.is_q_sectorial else None

    lo_band, hi_band = target_alpha - 0.1, target_alpha + 0.05
    steps = 0
    eps_lo, a_lo = 0.0, index_at(0.0)
    if a_lo is None:
        raise GenerationFailed("base point c*I is not sectorial for this q")
    eps_hi = 0.1
    a_hi = None
    best = (abs(a_lo - target_alpha), 0.0)
    while steps < 60:
        steps += 1
        a = index_at(eps_hi)
        if a is None or a > hi_band:
            a_hi = a
            break
        best = min(best, (abs(a - target_alpha), eps_hi))
        if lo_band <= a <= hi_band:
            eps_lo = eps_hi
            a_lo = a
            break
        eps_lo, a_lo = eps_hi, a
        eps_hi *= 2.0
    else:
        raise GenerationFailed("growth phase exhausted the step budget")

    eps_star = None
    if lo_band <= a_lo <= hi_band:
        eps_star = eps_lo
    else:
        while steps < 60:
            steps += 1
            mid = 0.5 * (eps_lo + eps_hi)
            a = index_at(mid)
            if a is None or a > hi_band:
                eps_hi = mid
                continue
            best = min(best, (abs(a - target_alpha), mid))
            if lo_band <= a <= hi_band:
                eps_star = mid
                break
            eps_lo, a_lo = mid, a
        if eps_star is None:
            eps_star = best[1]

    # verify at reporting settings; back off eps if the finer polygon disagrees
    for _ in range(5):
        mat = c * np.eye(dim) + eps_star * B
        verdict = sectorial_index_estimate(mat, qp, m=final_m, restarts=final_restarts, seed=seed)
        if verdict.is_q_sectorial:
            return mat, verdict
        eps_star *= 0.8
    raise GenerationFailed("verification kept failing after shrinking eps")
