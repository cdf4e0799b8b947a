"""q-numerical radius and q-numerical range geometry.

For unit x and any unit z orthogonal to x, y = conj(q) x + sqrt(1-|q|^2) z is
exactly the set of admissible second vectors, and <Tx, y> sweeps the disc of
radius sqrt(1-|q|^2) * sqrt(||Tx||^2 - |<Tx,x>|^2) centered at q <Tx,x>. The
search over (x, z, phase) therefore reduces to the unit sphere in x alone:

    f(x)      = |q| |<Tx,x>| + s sqrt(max(0, ||Tx||^2 - |<Tx,x>|^2))
    h_theta(x) = Re(e^{-i theta} q <Tx,x>) + s sqrt(...)

whose suprema are the q-numerical radius and the support function of the
q-numerical range. Both are maximized by a multi-start projected gradient
ascent with batched central-difference gradients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import DEFAULT_DIRECTIONS, DEFAULT_RESTARTS, FD_STEP, GAIN_TOL, MAX_ITER
from .errors import DimTooSmall, NotHermitian, NotUnit, QOutOfRange


@dataclass(frozen=True)
class QParam:
    """Parameter q in the closed unit disc, q != 0; caches |q| and sqrt(1-|q|^2)."""

    q: complex
    modulus: float = field(init=False)
    s: float = field(init=False)

    def __post_init__(self):
        m = abs(complex(self.q))
        if not (0.0 < m <= 1.0 + 1e-12):
            raise QOutOfRange(f"|q| must lie in (0, 1], got {m}")
        m = min(m, 1.0)
        object.__setattr__(self, "q", complex(self.q))
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "s", math.sqrt(max(0.0, 1.0 - m * m)))


def as_qparam(q) -> QParam:
    if isinstance(q, QParam):
        return q
    if isinstance(q, str):
        parts = q.split(",")
        if len(parts) == 2:
            return QParam(complex(float(parts[0]), float(parts[1])))
        return QParam(complex(float(q)))
    return QParam(complex(q))


@dataclass(frozen=True)
class EllipseDisc:
    """Elliptical disc with axes parallel to the coordinate axes."""

    center_x: float
    center_y: float
    semi_axis_x: float
    semi_axis_y: float

    def __post_init__(self):
        if self.semi_axis_x < 0 or self.semi_axis_y < 0:
            raise ValueError("semi-axes must be non-negative")

    def contains(self, x: float, y: float, tol: float = 1e-12) -> bool:
        dx, dy = x - self.center_x, y - self.center_y
        if self.semi_axis_x <= tol or self.semi_axis_y <= tol:
            # degenerate: segment or point
            ax = max(self.semi_axis_x, 0.0)
            ay = max(self.semi_axis_y, 0.0)
            return abs(dx) <= ax + tol and abs(dy) <= ay + tol
        return (dx / self.semi_axis_x) ** 2 + (dy / self.semi_axis_y) ** 2 <= 1 + tol

    def boundary(self, t):
        t = np.asarray(t, dtype=float)
        return (self.center_x + self.semi_axis_x * np.cos(t)) + 1j * (self.center_y + self.semi_axis_y * np.sin(t))


@dataclass(frozen=True)
class BoundaryPolygon:
    """Outer polygonal approximation of the q-numerical range."""

    q: QParam
    directions: np.ndarray
    support_values: np.ndarray
    vertices: np.ndarray

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) == 1


# --- batched objective and ascent --------------------------------------------


def _objective(T: np.ndarray, X: np.ndarray, qp: QParam, thetas=None) -> np.ndarray:
    """Evaluate the reduced objective at X row-wise, normalizing each row.

    thetas=None gives the radius objective; an array of per-row angles gives
    the support objective in those directions.
    """
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    Xn = X / norms
    TX = Xn @ T.T
    t1 = np.einsum("ij,ij->i", Xn.conj(), TX)
    n2 = np.einsum("ij,ij->i", TX.conj(), TX).real
    # the extra 16-ulp deadband keeps sqrt from amplifying roundoff when the
    # orthogonal component is exactly zero (eigenvectors, multiples of I)
    r = np.sqrt(np.maximum(0.0, n2 - np.abs(t1) ** 2 - 16 * np.finfo(float).eps * n2))
    if thetas is None:
        return qp.modulus * np.abs(t1) + qp.s * r
    return (np.exp(-1j * thetas) * qp.q * t1).real + qp.s * r


def _ascend(T: np.ndarray, qp: QParam, starts: np.ndarray, thetas=None,
            max_iter: int = MAX_ITER, gain_tol: float = GAIN_TOL, h: float = FD_STEP):
    """Projected gradient ascent from every start row; returns (values, unit rows).

    Gradients are central differences over the 2n real coordinates, evaluated
    in one batch; each accepted step renormalizes to the sphere. A row stops
    when its objective gain falls below gain_tol or backtracking exhausts.
    """
    n = T.shape[0]
    X = starts / np.linalg.norm(starts, axis=1, keepdims=True)
    f = _objective(T, X, qp, thetas)
    B = len(X)
    eta = np.full(B, 1.0 / max(1.0, float(np.linalg.norm(T))))
    active = np.ones(B, dtype=bool)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Xa = X[idx]
        m = idx.size
        P = np.tile(Xa[:, None, :], (1, 4 * n, 1))
        for j in range(n):
            P[:, 4 * j + 0, j] += h
            P[:, 4 * j + 1, j] -= h
            P[:, 4 * j + 2, j] += 1j * h
            P[:, 4 * j + 3, j] -= 1j * h
        tha = None if thetas is None else np.repeat(thetas[idx], 4 * n)
        fp = _objective(T, P.reshape(m * 4 * n, n), qp, tha).reshape(m, 4 * n)
        D = (fp[:, 0::4] - fp[:, 1::4]) / (2 * h) + 1j * (fp[:, 2::4] - fp[:, 3::4]) / (2 * h)

        fa = f[idx]
        ea = eta[idx].copy()
        fnew = fa.copy()
        Xnew = Xa.copy()
        accepted = np.zeros(m, dtype=bool)
        for _bt in range(30):
            trial = np.flatnonzero(~accepted)
            if trial.size == 0:
                break
            Xt = Xa[trial] + ea[trial, None] * D[trial]
            tht = None if thetas is None else thetas[idx][trial]
            ft = _objective(T, Xt, qp, tht)
            good = ft > fa[trial]
            gi = trial[good]
            Xnew[gi] = Xt[good]
            fnew[gi] = ft[good]
            accepted[gi] = True
            ea[trial[~good]] *= 0.5

        Xnew /= np.linalg.norm(Xnew, axis=1, keepdims=True)
        X[idx] = Xnew
        f[idx] = fnew
        eta[idx] = np.minimum(ea * 1.5, 1e6)
        active[idx[(fnew - fa) < gain_tol]] = False
    return f, X


def _random_starts(n: int, count: int, seed: int, tag: int) -> np.ndarray:
    g = linalg.rng(seed, 0x57A7, tag)
    return g.standard_normal((count, n)) + 1j * g.standard_normal((count, n))


def _warm_starts(T: np.ndarray) -> np.ndarray:
    """Deterministic starts from the extreme eigenvectors of the Hermitian parts.

    For Hermitian T the radius maximizer lies in the span of the extreme
    eigenvectors, so these place at least one start inside the right basin.
    """
    re, im = linalg.hermitian_parts(T)
    outs = []
    for hpart in (re, im):
        _, vecs = np.linalg.eigh(hpart)
        v1, vn = vecs[:, -1], vecs[:, 0]
        outs.extend([v1, vn, (v1 + vn) / math.sqrt(2), (v1 - vn) / math.sqrt(2)])
    return np.asarray(outs)


# --- public operations --------------------------------------------------------


def reduced_objective(T, q, x) -> float:
    """f(x) = |q| |<Tx,x>| + sqrt(1-|q|^2) sqrt(max(0, ||Tx||^2 - |<Tx,x>|^2)).

    The supremum of f over unit x equals the q-numerical radius: for fixed x
    the admissible <Tx, y> fill a disc whose farthest point from the origin
    aligns the two phases.
    """
    T = linalg.as_matrix(T)
    qp = as_qparam(q)
    xv = np.asarray(x, dtype=complex).ravel()
    if T.shape[0] < 2:
        raise DimTooSmall("reduced objective needs dim >= 2; use |q| |T[0,0]| at dim 1")
    if xv.shape[0] != T.shape[0]:
        raise NotUnit(f"vector length {xv.shape[0]} does not match dim {T.shape[0]}")
    nrm = float(np.linalg.norm(xv))
    if abs(nrm - 1.0) > 1e-10:
        raise NotUnit(f"||x|| = {nrm} is not 1 within 1e-10")
    return float(_objective(T, xv[None, :], qp)[0])


def q_numerical_radius(T, q, restarts: int = DEFAULT_RESTARTS, seed: int = 0):
    """Estimate w_q(T) by multi-start ascent; returns (value, witness x).

    The value is f at a feasible unit vector, hence a certified lower bound
    of w_q(T). For |q| = 1 the disc term vanishes and the estimate is taken
    at the best rotated-Hermitian eigenvector, matching the classical radius.
    """
    T = linalg.as_matrix(T)
    qp = as_qparam(q)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = T.shape[0]
    if n == 1:
        return qp.modulus * abs(complex(T[0, 0])), np.ones(1, dtype=complex)
    if qp.s == 0.0:
        x = linalg.top_rotated_eigenvector(T)
        return float(_objective(T, x[None, :], qp)[0]), x
    starts = np.vstack([_random_starts(n, restarts, seed, 1), _warm_starts(T)])
    f, X = _ascend(T, qp, starts)
    k = int(np.argmax(f))
    return float(f[k]), X[k]


def q_radius_bruteforce(T, q, trials: int, seed: int = 0) -> float:
    """Sampling lower bound: max |<Tx, y>| over random admissible pairs.

    Each trial draws a random unit x, a random unit z orthogonalized against
    x, and a uniform phase psi, forming y = conj(q) x + s e^{i psi} z.
    """
    T = linalg.as_matrix(T)
    qp = as_qparam(q)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = T.shape[0]
    if n < 2:
        raise DimTooSmall("sampling oracle needs dim >= 2")
    g = linalg.rng(seed, 0xB01)
    best = 0.0
    for lo in range(0, trials, 200_000):  # chunked to bound memory
        k = min(200_000, trials - lo)
        X = g.standard_normal((k, n)) + 1j * g.standard_normal((k, n))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        Z = g.standard_normal((k, n)) + 1j * g.standard_normal((k, n))
        inner = np.einsum("ij,ij->i", Z.conj(), X)  # <x, z>
        Z = Z - np.conj(inner)[:, None] * X
        zn = np.linalg.norm(Z, axis=1, keepdims=True)
        zn[zn == 0] = 1.0
        Z /= zn
        psi = g.uniform(0.0, 2 * math.pi, k)
        TX = X @ T.T
        t1 = np.einsum("ij,ij->i", X.conj(), TX)
        t2 = np.einsum("ij,ij->i", Z.conj(), TX)
        vals = np.abs(qp.q * t1 + qp.s * np.exp(-1j * psi) * t2)
        best = max(best, float(vals.max()))
    return best


def _support_batch(T, qp: QParam, thetas: np.ndarray, restarts: int, seed: int,
                   max_iter: int = MAX_ITER) -> np.ndarray:
    """Support values h(theta_k) of W_q(T), one ascent batch over all angles."""
    n = T.shape[0]
    if n == 1:
        return (np.exp(-1j * thetas) * qp.q * complex(T[0, 0])).real
    m = len(thetas)
    rand = _random_starts(n, m * restarts, seed, 2).reshape(m, restarts, n)
    # one warm start per direction: top eigenvector of Re(e^{i(arg q - theta)} T)
    phases = np.exp(1j * (np.angle(qp.q) - thetas))
    warm = np.empty((m, 1, n), dtype=complex)
    for k in range(m):
        r = (phases[k] * T + np.conj(phases[k]) * T.conj().T) / 2
        _, vecs = np.linalg.eigh(r)
        warm[k, 0] = vecs[:, -1]
    shared = _warm_starts(T)[None, :, :].repeat(m, axis=0)
    starts = np.concatenate([rand, warm, shared], axis=1)
    per = starts.shape[1]
    th = np.repeat(thetas, per)
    f, _ = _ascend(T, qp, starts.reshape(m * per, n), thetas=th, max_iter=max_iter)
    return f.reshape(m, per).max(axis=1)


def support_function(T, q, theta: float, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> float:
    """h(theta) = sup over W_q(T) of Re(e^{-i theta} z)."""
    T = linalg.as_matrix(T)
    qp = as_qparam(q)
    return float(_support_batch(T, qp, np.array([float(theta)]), restarts, seed)[0])


def _clip_halfplanes(thetas: np.ndarray, hs: np.ndarray, scale: float) -> np.ndarray:
    """Vertices of the intersection of {Re(e^{-i theta_k} z) <= h_k}.

    Halfplanes are inflated by a hair so that zero-width ranges (segments)
    survive as thin slivers instead of collapsing to an empty intersection;
    the inflation keeps the polygon an outer approximation.
    """
    L = 2.0 * (scale + 1.0)
    hs = hs + 1e-7 * max(1.0, scale)
    poly = [complex(-L, -L), complex(L, -L), complex(L, L), complex(-L, L)]
    for theta, hval in zip(thetas, hs):
        cx, cy = math.cos(theta), math.sin(theta)
        out: list[complex] = []
        for i, p in enumerate(poly):
            qv = poly[(i + 1) % len(poly)]
            dp = cx * p.real + cy * p.imag - hval
            dq = cx * qv.real + cy * qv.imag - hval
            if dp <= 0:
                out.append(p)
            if (dp < 0 < dq) or (dq < 0 < dp):
                t = dp / (dp - dq)
                out.append(p + t * (qv - p))
        poly = out
        if not poly:
            break
    # drop near-duplicate consecutive vertices
    cleaned: list[complex] = []
    for p in poly:
        if not cleaned or abs(p - cleaned[-1]) > 1e-12 * L:
            cleaned.append(p)
    if len(cleaned) > 1 and abs(cleaned[0] - cleaned[-1]) <= 1e-12 * L:
        cleaned.pop()
    return np.asarray(cleaned, dtype=complex)


def boundary_polygon(T, q, m: int = DEFAULT_DIRECTIONS, restarts: int = DEFAULT_RESTARTS,
                     seed: int = 0, max_iter: int = MAX_ITER) -> BoundaryPolygon:
    """Outer polygon of W_q(T) from m support directions.

    A single point (degenerate range) yields a 1-vertex polygon located by
    least squares from the support values.
    """
    T = linalg.as_matrix(T)
    qp = as_qparam(q)
    if m < 8:
        raise ValueError("m must be at least 8")
    thetas = np.linspace(0.0, 2 * math.pi, m, endpoint=False)
    hs = _support_batch(T, qp, thetas, restarts, seed, max_iter=max_iter)
    scale = max(1.0, float(np.abs(hs).max()))
    widths = hs + hs[(np.arange(m) + m // 2) % m]
    if float(widths.max()) <= 1e-6 * scale:
        a = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
        center, *_ = np.linalg.lstsq(a, hs, rcond=None)
        verts = np.array([complex(center[0], center[1])])
    else:
        verts = _clip_halfplanes(thetas, hs, scale)
        if len(verts) == 0:
            a = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
            center, *_ = np.linalg.lstsq(a, hs, rcond=None)
            verts = np.array([complex(center[0], center[1])])
    return BoundaryPolygon(q=qp, directions=thetas, support_values=hs, vertices=verts)


def hermitian_qrange_ellipse(A, q) -> EllipseDisc:
    """Closed-form W_q of a Hermitian matrix: an axis-aligned elliptical disc.

    Center (q (l1 + ln)/2, 0), semi-axes (l1 - ln)/2 and
    sqrt(1 - q^2) (l1 - ln)/2, with l1 >= ... >= ln the eigenvalues.
    """
    A = linalg.as_matrix(A)
    if not linalg.is_hermitian(A):
        raise NotHermitian("closed-form range needs a Hermitian matrix")
    qp = as_qparam(q)
    if abs(qp.q.imag) > 1e-14 or not (0.0 < qp.q.real < 1.0):
        raise QOutOfRange("closed form requires real q in (0, 1)")
    qv = qp.q.real
    vals = linalg.hermitian_eigenvalues(A)
    l1, ln = float(vals[0]), float(vals[-1])
    half = (l1 - ln) / 2
    return EllipseDisc(center_x=qv * (l1 + ln) / 2, center_y=0.0,
                       semi_axis_x=half, semi_axis_y=math.sqrt(1 - qv * qv) * half)


def ellipse_max_modulus(e: EllipseDisc) -> float:
    """max |z| over the elliptical disc, by grid scan plus golden refinement."""
    if e.semi_axis_x == 0.0 and e.semi_axis_y == 0.0:
        return math.hypot(e.center_x, e.center_y)

    def g(t: float) -> float:
        return math.hypot(e.center_x + e.semi_axis_x * math.cos(t),
                          e.center_y + e.semi_axis_y * math.sin(t))

    ts = np.linspace(0.0, 2 * math.pi, 2048, endpoint=False)
    vals = np.abs(e.boundary(ts))
    k = int(np.argmax(vals))
    step = 2 * math.pi / 2048
    lo, hi = ts[k] - step, ts[k] + step
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
