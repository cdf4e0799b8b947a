"""Catalog of q-numerical radius inequalities evaluated numerically.

Every entry is an (applicability predicate, LHS, RHS) triple over one or more
matrices, a q parameter, and optionally a convex gauge and a sector angle.
Chain entries carry one link per adjacent comparison; the reported outcome is
the tightest link, and "holds" means every link clears the hard slack floor.

Radius values are certified lower bounds (ascent plus sampling maximum), so
upper-bound checks are conservative; in positions where an under-estimated
radius could flag a false violation, the same maximum-of-lower-bounds value
is used together with the soft warning floor.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linalg, orlicz, qrange
from .config import ESTIMATOR_SAMPLES, TOL
from .errors import ArityMismatch, DivisionDomain, PredicateUnmet
from .orlicz import ComplementaryPair, OrliczFn, builtin, complementary, hermite_hadamard_integral
from .qrange import QParam, as_qparam


@dataclass(frozen=True)
class BoundSpec:
    id: str
    description: str
    requires: str       # none | normal | square_zero | q_real_01 | q_sectorial |
                        # q_sectorial_pair | sectorial_q1 | sectorial_q1_im_dominant |
                        # contraction_middle | equality_premise
    arity: int          # 0 means "one or more" (operator sums)
    orlicz_dependent: bool
    kind: str           # lower | upper | two_sided | chain | equality
    power: int          # the radius power the links are stated at (0: not comparable)


@dataclass(frozen=True)
class Link:
    name: str
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        # an infinite rhs always dominates, even when the lhs overflowed too:
        # the comparison is then beyond float range, not violated
        if math.isinf(self.rhs) and self.rhs > 0:
            return math.inf
        return self.rhs - self.lhs


@dataclass(frozen=True)
class BoundOutcome:
    id: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    warn: bool
    inputs_digest: str
    links: tuple[Link, ...]


class Estimator:
    """Shared radius/norm evaluation with content-addressed caching.

    The q-radius estimate is max(multi-start ascent, sampling oracle): both
    are certified lower bounds of the true value, so their maximum is too.
    """

    def __init__(self, seed: int = 0, restarts: int = qrange.DEFAULT_RESTARTS,
                 sampler_trials: int = ESTIMATOR_SAMPLES):
        self.seed = seed
        self.restarts = restarts
        self.sampler_trials = sampler_trials
        self._wq: dict = {}
        self._w: dict = {}
        self._norm: dict = {}
        self._imsup: dict = {}

    @staticmethod
    def _key(m: np.ndarray) -> bytes:
        return m.shape[0].to_bytes(4, "little") + hashlib.sha256(np.ascontiguousarray(m).tobytes()).digest()

    def wq(self, T: np.ndarray, qp: QParam) -> float:
        k = (self._key(T), qp.q)
        if k not in self._wq:
            val, _ = qrange.q_numerical_radius(T, qp, restarts=self.restarts, seed=self.seed)
            if T.shape[0] >= 2 and self.sampler_trials > 0 and qp.s > 0:
                val = max(val, qrange.q_radius_bruteforce(T, qp, self.sampler_trials, seed=self.seed))
            self._wq[k] = val
        return self._wq[k]

    def w(self, T: np.ndarray) -> float:
        k = self._key(T)
        if k not in self._w:
            self._w[k] = linalg.classical_numerical_radius(T)
        return self._w[k]

    def norm(self, T: np.ndarray) -> float:
        k = self._key(T)
        if k not in self._norm:
            self._norm[k] = linalg.spectral_norm(T)
        return self._norm[k]

    def im_sup(self, T: np.ndarray, qp: QParam) -> float:
        """sup |Im z| over W_q(T) = max of the support in directions +-pi/2."""
        k = (self._key(T), qp.q)
        if k not in self._imsup:
            hs = qrange._support_batch(T, qp, np.array([math.pi / 2, 3 * math.pi / 2]),
                                       self.restarts, self.seed)
            self._imsup[k] = float(hs.max())
        return self._imsup[k]


_CATALOG: list[BoundSpec] = [
    BoundSpec("L1a", "operator-norm sandwich |q|/2 ||T|| <= w_q <= ||T||", "none", 1, False, "two_sided", 1),
    BoundSpec("L1b", "normal-operator sandwich |q| ||T|| <= w_q <= ||T||", "normal", 1, False, "two_sided", 1),
    BoundSpec("L2", "lower norm bound q/(2(2-q^2)) ||T|| for real q in (0,1)", "q_real_01", 1, False, "two_sided", 1),
    BoundSpec("L3", "two-sided ||T*T+TT*|| sandwich on w_q^2", "q_real_01", 1, False, "two_sided", 2),
    BoundSpec("L4", "upper bound via (||T|| + ||T^2||^(1/2))^2", "q_real_01", 1, False, "upper", 2),
    BoundSpec("L5", "square-zero upper bound (1 - 3q^2/4 + q sqrt(1-q^2)) ||T||^2", "square_zero_q01", 1, False, "upper", 2),
    BoundSpec("T1", "gauge chain through the interpolated Cartesian-sum norm", "none", 1, True, "chain", 1),
    BoundSpec("R1", "power-gauge specialization of the interpolation chain", "none", 1, True, "chain", 1),
    BoundSpec("C1", "two-sided ||T*T+TT*|| sandwich with coefficient (2-q^2+2sqrt2 q s)/2", "none", 1, False, "two_sided", 2),
    BoundSpec("T2", "gauge bound for the radius of an operator sum", "none", 0, True, "upper", 2),
    BoundSpec("Q1", "upper bound |q|^2 w^2 + (1-|q|^2+|q|s) ||T||^2", "none", 1, False, "upper", 2),
    BoundSpec("Q2", "square-zero refinement chained through the classical-radius bound", "square_zero", 1, False, "chain", 2),
    BoundSpec("T3", "gauge chain for the radius of a triple product", "none", 3, True, "chain", 1),
    BoundSpec("C3a", "power-gauge chain for the triple product", "none", 3, True, "chain", 1),
    BoundSpec("C3b", "linear-gauge upper bound for the triple product", "none", 3, False, "upper", 1),
    BoundSpec("C3c", "upper bound for the radius of T^2", "none", 1, False, "upper", 1),
    BoundSpec("C3d", "triple-product chain with a contractive middle factor", "contraction_middle", 3, True, "chain", 1),
    BoundSpec("S1", "gauge bound on the imaginary extent inside a sector", "q_sectorial", 1, True, "upper", 1),
    BoundSpec("S2", "imaginary-part norm bound for sectorial matrices", "q_sectorial", 1, False, "upper", 1),
    BoundSpec("S3", "gauge chain on half the Cartesian-sum norm, sectorial case", "q_sectorial", 1, True, "chain", 2),
    BoundSpec("S4", "power-gauge specialization of the sectorial chain", "q_sectorial", 1, True, "chain", 2),
    BoundSpec("S5", "sectorial lower bound |q|^4 ||AA*+A*A|| / (2(|q|^2+(|q| sin a + 2s)^2))", "q_sectorial", 1, False, "lower", 2),
    BoundSpec("S6", "norm bound ||A|| <= (|q|+|q| sin a + 2s)/|q|^2 w_q", "q_sectorial", 1, False, "upper", 1),
    BoundSpec("S7a", "sectorial lower bound with the ||Im||^2 - ||Re||^2 correction", "q_sectorial", 1, False, "lower", 2),
    BoundSpec("S7b", "sectorial lower bound with the ||Im|| - ||Re|| correction", "q_sectorial", 1, False, "lower", 1),
    BoundSpec("S8", "classical sectorial sandwich ||A||/(1+sin a) <= w <= ||A||", "sectorial_q1", 1, False, "two_sided", 1),
    BoundSpec("S9", "classical sectorial lower bound ||A*A+AA*||/(4 sin^2 a)", "sectorial_q1_im_dominant", 1, False, "lower", 2),
    BoundSpec("K1", "gauge-pair bound for generalized commutators", "q_sectorial", 4, True, "upper", 1),
    BoundSpec("K2", "quadratic-gauge bound for generalized commutators", "q_sectorial", 4, False, "upper", 1),
    BoundSpec("K3", "commutator bound with identity outer factors", "q_sectorial", 2, False, "upper", 1),
    BoundSpec("K4", "two-sided-role commutator bound min(mu1, mu2)", "q_sectorial_pair", 2, False, "upper", 1),
    BoundSpec("K5", "classical commutator bound 2 sqrt(1+sin^2 a) ||B|| w(A)", "sectorial_q1", 2, False, "upper", 1),
    BoundSpec("C2", "equality case: rotation-invariant gauge values coincide", "equality_premise", 1, True, "equality", 0),
]

_BY_ID = {s.id: s for s in _CATALOG}


def catalog() -> list[BoundSpec]:
    """The complete, fixed-order list of bound specifications."""
    return list(_CATALOG)


def _digest(mats: Sequence[np.ndarray], qp: QParam, f: Optional[OrliczFn], alpha) -> str:
    h = hashlib.sha256()
    for m in mats:
        h.update(m.shape[0].to_bytes(4, "little"))
        h.update(np.ascontiguousarray(m).tobytes())
    h.update(repr(qp.q).encode())
    h.update((f.label if f is not None else "-").encode())
    h.update(repr(float(alpha) if alpha is not None else None).encode())
    return h.hexdigest()[:16]


def _power_exponent(f: Optional[OrliczFn], r: Optional[float]) -> float:
    if r is not None:
        return float(r)
    if f is not None and f.name in ("power", "power_over_p") and f.param is not None:
        return float(f.param)
    return 2.0


def _nsum(est: Estimator, T: np.ndarray) -> float:
    """||T*T + TT*||."""
    return est.norm(T.conj().T @ T + T @ T.conj().T)


def _require(cond: bool, msg: str):
    if not cond:
        raise PredicateUnmet(msg)


def _check_requires(spec: BoundSpec, mats, qp: QParam, alpha, est: Estimator):
    req = spec.requires
    if req == "none" or req == "equality_premise":
        return
    if req == "normal":
        _require(linalg.is_normal(mats[0]), "matrix is not normal")
    elif req == "q_real_01":
        _require(abs(qp.q.imag) <= 1e-14 and 0.0 < qp.q.real < 1.0 - 1e-12,
                 "requires real q strictly inside (0, 1)")
    elif req in ("square_zero", "square_zero_q01"):
        t = mats[0]
        _require(est.norm(t @ t) <= 1e-10 * max(1.0, est.norm(t) ** 2), "T^2 is not zero")
        if req == "square_zero_q01":
            _require(abs(qp.q.imag) <= 1e-14 and 0.0 < qp.q.real < 1.0 - 1e-12,
                     "requires real q strictly inside (0, 1)")
    elif req in ("q_sectorial", "q_sectorial_pair"):
        _require(alpha is not None and 0.0 <= alpha < math.pi / 2, "needs a sector angle alpha in [0, pi/2)")
    elif req in ("sectorial_q1", "sectorial_q1_im_dominant"):
        _require(alpha is not None and 0.0 <= alpha < math.pi / 2, "needs a sector angle alpha in [0, pi/2)")
        _require(abs(qp.modulus - 1.0) <= 1e-12, "stated at |q| = 1 only")
        if req == "sectorial_q1_im_dominant":
            re, im = linalg.hermitian_parts(mats[0])
            _require(alpha > 0.0, "needs alpha != 0")
            _require(est.norm(re) <= est.norm(im) + 1e-12, "needs ||Re(A)|| <= ||Im(A)||")
    elif req == "contraction_middle":
        _require(est.norm(mats[1]) <= 1.0 + 1e-12, "middle factor must be a contraction")
    else:  # pragma: no cover
        raise PredicateUnmet(f"unknown predicate {req}")


def _triple_terms(est: Estimator, T, R, S, qp: QParam):
    m1 = est.norm(R) * est.norm(S.conj().T @ S + T @ T.conj().T)
    cq = qp.s + math.sqrt(2 * qp.modulus * qp.s)
    m2 = est.norm(R) * est.norm(S) * est.norm(T)
    return m1, cq, m2


def _commutator_pair(A, F1, F2, sign: int):
    return A @ F1 + sign * (F2 @ A)


def evaluate(bound_id: str, matrices: Sequence, q, f: Optional[OrliczFn] = None,
             alpha: Optional[float] = None, est: Optional[Estimator] = None,
             r: Optional[float] = None) -> BoundOutcome:
    """Evaluate one catalog inequality on concrete inputs.

    matrices are passed in statement order (e.g. (T, R, S) for the triple
    product, (A, X, B, Y) for generalized commutators). Sector entries take
    the caller-supplied alpha, normally the conservative estimate from the
    sectorial classifier.
    """
    if bound_id not in _BY_ID:
        raise KeyError(f"unknown bound id {bound_id!r}")
    spec = _BY_ID[bound_id]
    mats = [linalg.as_matrix(m) for m in matrices]
    qp = as_qparam(q)
    est = est or Estimator()
    if spec.arity == 0:
        if len(mats) < 1:
            raise ArityMismatch(f"{bound_id} needs at least one matrix")
    elif len(mats) != spec.arity:
        raise ArityMismatch(f"{bound_id} takes {spec.arity} matrices, got {len(mats)}")
    _check_requires(spec, mats, qp, alpha, est)

    qm, s = qp.modulus, qp.s
    phi = f if f is not None else (builtin("power", 2) if spec.orlicz_dependent else None)
    links: list[Link] = []

    if bound_id in ("L1a", "L1b", "L2", "L3", "C1", "S8"):
        T = mats[0]
        wq = est.wq(T, qp)
        nt = est.norm(T)
        if bound_id == "L1a":
            links = [Link("lower", qm / 2 * nt, wq), Link("upper", wq, nt)]
        elif bound_id == "L1b":
            links = [Link("lower", qm * nt, wq), Link("upper", wq, nt)]
        elif bound_id == "L2":
            qv = qp.q.real
            links = [Link("lower", qv / (2 * (2 - qv * qv)) * nt, wq), Link("upper", wq, nt)]
        elif bound_id == "L3":
            qv = qp.q.real
            n2 = _nsum(est, T)
            links = [Link("lower", qv * qv / (4 * (2 - qv * qv) ** 2) * n2, wq ** 2),
                     Link("upper", wq ** 2, (qv + 2 * math.sqrt(1 - qv * qv)) ** 2 / 2 * n2)]
        elif bound_id == "C1":
            n2 = _nsum(est, T)
            links = [Link("lower", qm * qm / 4 * n2, wq ** 2),
                     Link("upper", wq ** 2, (2 - qm * qm + 2 * math.sqrt(2) * qm * s) / 2 * n2)]
        else:  # S8
            links = [Link("lower", nt / (1 + math.sin(alpha)), wq), Link("upper", wq, nt)]

    elif bound_id == "L4":
        T = mats[0]
        qv = qp.q.real
        nt = est.norm(T)
        nt2 = math.sqrt(est.norm(T @ T))
        rhs = qv * qv / 2 * (nt + nt2) ** 2 + (1 - qv * qv + qv * math.sqrt(1 - qv * qv)) * nt ** 2
        links = [Link("main", est.wq(T, qp) ** 2, rhs)]

    elif bound_id == "L5":
        T = mats[0]
        qv = qp.q.real
        rhs = (1 - 0.75 * qv * qv + qv * math.sqrt(1 - qv * qv)) * est.norm(T) ** 2
        links = [Link("main", est.wq(T, qp) ** 2, rhs)]

    elif bound_id in ("T1", "R1"):
        T = mats[0]
        nroot = math.sqrt(_nsum(est, T))
        a, b = math.sqrt(2) * qm * nroot, 2 * s * nroot
        if bound_id == "T1":
            mid = hermite_hadamard_integral(phi, a, b)
            links = [Link("link1", float(phi(est.wq(T, qp))), mid),
                     Link("link2", mid, (float(phi(a)) + float(phi(b))) / 2)]
        else:
            rr = _power_exponent(f, r)
            pw = builtin("power", rr)
            mid = hermite_hadamard_integral(pw, a, b)
            rhs = 2 ** (rr / 2 - 1) * (qm ** rr + 2 ** (rr / 2) * s ** rr) * nroot ** rr
            links = [Link("link1", est.wq(T, qp) ** rr, mid), Link("link2", mid, rhs)]

    elif bound_id == "T2":
        tsum = mats[0].copy()
        for m in mats[1:]:
            if m.shape != tsum.shape:
                raise ArityMismatch("summands must share a dimension")
            tsum += m
        n = len(mats)
        coef = 1 - qm * qm + qm * s
        terms = [float(phi(n * n * (qm * qm * est.w(m) ** 2 + coef * est.norm(m) ** 2))) for m in mats]
        links = [Link("main", float(phi(est.wq(tsum, qp) ** 2)), sum(terms) / n)]

    elif bound_id == "Q1":
        T = mats[0]
        rhs = qm * qm * est.w(T) ** 2 + (1 - qm * qm + qm * s) * est.norm(T) ** 2
        links = [Link("main", est.wq(T, qp) ** 2, rhs)]

    elif bound_id == "Q2":
        T = mats[0]
        mid = qm * qm * est.w(T) ** 2 + (1 - qm * qm + qm * s) * est.norm(T) ** 2
        rhs = (1 - 0.75 * qm * qm + qm * s) * est.norm(T) ** 2
        links = [Link("link1", est.wq(T, qp) ** 2, mid), Link("link2", mid, rhs)]

    elif bound_id in ("T3", "C3a", "C3b", "C3d"):
        T, R, S = mats
        m1, cq, m2 = _triple_terms(est, T, R, S, qp)
        prod = T @ R @ S
        wqp = est.wq(prod, qp)
        if bound_id == "T3":
            a, b = qm * m1, 2 * cq * m2
            mid = hermite_hadamard_integral(phi, a, b)
            links = [Link("link1", float(phi(wqp)), mid),
                     Link("link2", mid, (float(phi(a)) + float(phi(b))) / 2)]
        elif bound_id == "C3a":
            rr = _power_exponent(f, r)
            pw = builtin("power", rr)
            a, b = qm * m1, 2 * cq * m2
            mid = hermite_hadamard_integral(pw, a, b)
            nr = est.norm(R)
            ns2, nt2 = est.norm(S) ** 2, est.norm(T) ** 2
            rhs = nr ** rr / 2 * (qm ** rr * est.norm(S.conj().T @ S + T @ T.conj().T) ** rr
                                  + 2 ** rr * cq ** rr * ns2 ** (rr / 2) * nt2 ** (rr / 2))
            links = [Link("link1", wqp ** rr, mid), Link("link2", mid, rhs)]
        elif bound_id == "C3b":
            links = [Link("main", wqp, (qm * m1 + 2 * cq * m2) / 2)]
        else:  # C3d: contraction middle factor pulled out of the gauge
            nr = est.norm(R)
            a1 = qm * est.norm(S.conj().T @ S + T @ T.conj().T)
            b1 = 2 * cq * est.norm(S) * est.norm(T)
            mid = nr * hermite_hadamard_integral(phi, a1, b1)
            links = [Link("link1", float(phi(wqp)), mid),
                     Link("link2", mid, nr / 2 * (float(phi(a1)) + float(phi(b1))))]

    elif bound_id == "C3c":
        T = mats[0]
        cq = qp.s + math.sqrt(2 * qm * qp.s)
        rhs = 0.5 * (qm * _nsum(est, T) + 2 * cq * est.norm(T) ** 2)
        links = [Link("main", est.wq(T @ T, qp), rhs)]

    elif bound_id == "S1":
        A = mats[0]
        links = [Link("main", float(phi(est.im_sup(A, qp))),
                      math.sin(alpha) * float(phi(est.wq(A, qp))))]

    elif bound_id == "S2":
        A = mats[0]
        _, im = linalg.hermitian_parts(A)
        coef = math.sin(alpha) / qm + 2 * s / (qm * qm)
        links = [Link("main", est.norm(im), coef * est.wq(A, qp))]

    elif bound_id in ("S3", "S4"):
        A = mats[0]
        wq = est.wq(A, qp)
        x = _nsum(est, A) / 2
        calpha = math.sin(alpha) / qm + 2 * s / (qm * qm)
        a, b = 2 * wq * wq / (qm * qm), 2 * calpha ** 2 * wq * wq
        if bound_id == "S3":
            mid = hermite_hadamard_integral(phi, a, b)
            links = [Link("link1", float(phi(x)), mid),
                     Link("link2", mid, (float(phi(a)) + float(phi(b))) / 2)]
        else:
            rr = _power_exponent(f, r)
            pw = builtin("power", rr)
            mid = hermite_hadamard_integral(pw, a, b)
            rhs = 2 ** (rr - 1) * (wq ** (2 * rr) / qm ** (2 * rr) + calpha ** (2 * rr) * wq ** (2 * rr))
            links = [Link("link1", x ** rr, mid), Link("link2", mid, rhs)]

    elif bound_id == "S5":
        A = mats[0]
        denom = 2 * (qm * qm + (qm * math.sin(alpha) + 2 * s) ** 2)
        links = [Link("main", qm ** 4 * _nsum(est, A) / denom, est.wq(A, qp) ** 2)]

    elif bound_id == "S6":
        A = mats[0]
        coef = (qm + qm * math.sin(alpha) + 2 * s) / (qm * qm)
        links = [Link("main", est.norm(A), coef * est.wq(A, qp))]

    elif bound_id in ("S7a", "S7b"):
        A = mats[0]
        re, im = linalg.hermitian_parts(A)
        nre, nim = est.norm(re), est.norm(im)
        coef = qm * qm / (qm * math.sin(alpha) + 2 * s)
        if bound_id == "S7a":
            inner = _nsum(est, A) / 4 + (nim ** 2 - nre ** 2) / 2
            links = [Link("main", coef ** 2 * inner, est.wq(A, qp) ** 2)]
        else:
            inner = est.norm(A) / 2 + (nim - nre) / 2
            links = [Link("main", coef * inner, est.wq(A, qp))]

    elif bound_id == "S9":
        A = mats[0]
        links = [Link("main", _nsum(est, A) / (4 * math.sin(alpha) ** 2), est.wq(A, qp) ** 2)]

    elif bound_id in ("K1", "K2"):
        A, X, B, Y = mats
        wq = est.wq(A, qp)
        xb, by = est.norm(X @ B), est.norm(B @ Y)
        mx = max(xb, by)
        if bound_id == "K1":
            pair = complementary(phi)
            calpha = math.sin(alpha) / qm + 2 * s / (qm * qm)
            inner = (float(pair.phi(wq / qm)) + float(pair.psi(wq / qm))
                     + float(pair.phi(calpha * wq)) + float(pair.psi(calpha * wq)))
            core = 2 * qm * mx * math.sqrt(max(0.0, inner))
        else:
            core = 2 / qm * mx * math.sqrt(qm * qm + (qm * math.sin(alpha) + 2 * s) ** 2) * wq
        for name, sign in (("plus", 1), ("minus", -1)):
            g = A @ (X @ B) + sign * ((B @ Y) @ A)
            links.append(Link(name, est.wq(g, qp), core + s * est.norm(g)))

    elif bound_id in ("K3", "K4", "K5"):
        A, B = mats
        root = math.sqrt(qm * qm + (qm * math.sin(alpha) + 2 * s) ** 2)
        for name, sign in (("plus", 1), ("minus", -1)):
            g = linalg.commutator(A, B, sign)
            wg = est.wq(g, qp)
            if bound_id == "K3":
                rhs = 2 / qm * est.norm(B) * root * est.wq(A, qp) + s * est.norm(g)
            elif bound_id == "K4":
                mu1 = 2 / qm * est.norm(B) * root * est.wq(A, qp) + s * est.norm(g)
                mu2 = 2 / qm * est.norm(A) * root * est.wq(B, qp) + s * est.norm(g)
                rhs = min(mu1, mu2)
            else:  # K5 at |q| = 1
                rhs = 2 * math.sqrt(1 + math.sin(alpha) ** 2) * est.norm(B) * est.wq(A, qp)
            links.append(Link(name, wg, rhs))

    elif bound_id == "C2":
        T = mats[0]
        n2 = _nsum(est, T)
        wq2 = est.wq(T, qp) ** 2
        target = qm * qm / 4 * n2
        if abs(wq2 - target) > 1e-6 * max(1.0, target):
            raise PredicateUnmet(f"equality premise off by {abs(wq2 - target):.3e}")
        ref = float(phi(target))
        dev = 0.0
        for theta in np.linspace(0.0, 2 * math.pi, 16, endpoint=False):
            rot = np.exp(1j * theta) * T
            re, im = linalg.hermitian_parts(rot)
            v1 = float(phi(qm * qm * est.norm(re) ** 2))
            v2 = float(phi(qm * qm * est.norm(im) ** 2))
            dev = max(dev, abs(v1 - ref), abs(v2 - ref), abs(v1 - v2))
        links = [Link("main", dev, 1e-6 * max(1.0, abs(ref)))]

    else:  # pragma: no cover
        raise KeyError(bound_id)

    tight = min(links, key=lambda ln: ln.slack)
    slack = tight.slack
    return BoundOutcome(
        id=bound_id, lhs=tight.lhs, rhs=tight.rhs, slack=slack,
        holds=bool(slack >= TOL.slack_floor),
        warn=bool(TOL.slack_soft <= slack < TOL.slack_floor),
        inputs_digest=_digest(mats, qp, phi, alpha), links=tuple(links),
    )


def tightness(outcome: BoundOutcome) -> float:
    """lhs / rhs, clamped below at 0; ranks how sharp the instance was."""
    if outcome.rhs <= 0:
        raise DivisionDomain(f"rhs = {outcome.rhs} is not positive")
    return max(0.0, outcome.lhs / outcome.rhs)


def _side_value(outcome: BoundOutcome, side: str) -> float:
    named = {ln.name: ln for ln in outcome.links}
    if side == "upper":
        ln = named.get("upper") or named.get("main") or outcome.links[-1]
        return ln.rhs
    if side == "lower":
        ln = named.get("lower") or named.get("main") or outcome.links[0]
        return ln.lhs
    raise ValueError("side must be 'upper' or 'lower'")


def compare_bounds(id_a: str, id_b: str, cases: Sequence[dict], side: str,
                   f: Optional[OrliczFn] = None, est: Optional[Estimator] = None) -> dict:
    """Instance-wise ordering of two bounds on shared inputs.

    side='upper' compares right-hand sides (smaller wins); side='lower'
    compares left-hand sides (larger wins). Each case supplies at least
    {'matrices': [...], 'q': ...} and optionally alpha/f/r. Bounds stated at
    different radius powers are lifted to a common power before comparison.
    """
    est = est or Estimator()
    pa, pb = _BY_ID[id_a].power, _BY_ID[id_b].power
    if pa < 1 or pb < 1:
        raise ValueError(f"{id_a} and {id_b} are not order-comparable")
    common = max(pa, pb)
    rows = []
    wins_a = wins_b = ties = 0
    for case in cases:
        kwargs = {"f": case.get("f", f), "alpha": case.get("alpha"), "r": case.get("r"), "est": est}
        oa = evaluate(id_a, case["matrices"], case["q"], **kwargs)
        ob = evaluate(id_b, case["matrices"], case["q"], **kwargs)
        va, vb = _side_value(oa, side) ** (common / pa), _side_value(ob, side) ** (common / pb)
        if math.isclose(va, vb, rel_tol=1e-12, abs_tol=1e-12):
            winner = "tie"
            ties += 1
        elif (va < vb) == (side == "upper"):
            winner = id_a
            wins_a += 1
        else:
            winner = id_b
            wins_b += 1
        rows.append({"value_a": va, "value_b": vb, "winner": winner})
    return {"id_a": id_a, "id_b": id_b, "side": side, "wins_a": wins_a,
            "wins_b": wins_b, "ties": ties, "rows": rows}
