"""Convex gauge functions with kernel representation and complementary pairs.

A gauge here is a continuous, convex, increasing φ on [0, ∞) with φ(0) = 0,
φ > 0 on (0, ∞) and φ(t) → ∞. It admits φ(t) = ∫_0^t γ(u) du for a
non-decreasing kernel γ; the right inverse η(v) = sup{u : γ(u) <= v} builds
the complementary function ψ(s) = ∫_0^s η(v) dv, and the pair satisfies
Young's inequality uv <= φ(u) + ψ(v) with equality on v = γ(u).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import Unbounded, UnknownName

# equality-locus and positivity checks are exercised on this grid
STANDARD_GRID = (0.1, 0.5, 1.0, 2.0, 10.0)

_INVERSE_CAP = 1e12
_SIMPSON_NODES = 1025


@dataclass(frozen=True)
class OrliczFn:
    """Named convex gauge; ``phi`` accepts scalars or numpy arrays."""

    name: str
    phi: Callable
    kernel_fn: Optional[Callable] = None
    complementary_name: Optional[str] = None
    submultiplicative: bool = False
    param: Optional[float] = None

    def __call__(self, t):
        return self.phi(t)

    @property
    def label(self) -> str:
        return self.name if self.param is None else f"{self.name}:{self.param:g}"


@dataclass(frozen=True)
class ComplementaryPair:
    phi: OrliczFn
    psi: OrliczFn
    numeric: bool


def _power(p: float) -> OrliczFn:
    if p < 1:
        raise UnknownName(f"power exponent must be >= 1, got {p}")
    return OrliczFn("power", lambda t: np.power(t, p),
                    kernel_fn=lambda u: p * np.power(u, p - 1) if p != 1 else np.ones_like(np.asarray(u, dtype=float)),
                    submultiplicative=True, param=p)


def _power_over_p(p: float) -> OrliczFn:
    if p <= 1:
        raise UnknownName(f"power_over_p exponent must be > 1, got {p}")
    return OrliczFn("power_over_p", lambda t: np.power(t, p) / p,
                    kernel_fn=lambda u: np.power(u, p - 1),
                    complementary_name="power_over_p", param=p)


def _power_log(p: float) -> OrliczFn:
    if p <= 0:
        raise UnknownName(f"power_log exponent must be > 0, got {p}")
    return OrliczFn("power_log", lambda t: np.power(t, p) * np.log1p(t),
                    kernel_fn=lambda u: p * np.power(u, p - 1) * np.log1p(u) + np.power(u, p) / (1 + np.asarray(u, dtype=float)),
                    param=p)


def _quiet(fn):
    """Evaluate with overflow silenced: fast-growing gauges saturate to inf."""

    def wrapped(t):
        with np.errstate(over="ignore"):
            return fn(t)

    return wrapped


_EXP_MINUS_ONE = OrliczFn("exp_minus_one", _quiet(np.expm1), kernel_fn=_quiet(np.exp))
_EXP_MINUS_T_MINUS_ONE = OrliczFn("exp_minus_t_minus_one",
                                  _quiet(lambda t: np.expm1(t) - np.asarray(t, dtype=float)),
                                  kernel_fn=_quiet(np.expm1), complementary_name="entropy")
_EXP_SQUARE = OrliczFn("exp_square", _quiet(lambda t: np.expm1(np.square(t))),
                       kernel_fn=_quiet(lambda u: 2 * np.asarray(u, dtype=float) * np.exp(np.square(u))))
# (1+s)log(1+s) - s: closed-form complement of exp_minus_t_minus_one; reachable
# through complementary(), not through builtin().
_ENTROPY = OrliczFn("entropy", lambda s: (1 + np.asarray(s, dtype=float)) * np.log1p(s) - np.asarray(s, dtype=float),
                    kernel_fn=lambda v: np.log1p(v), complementary_name="exp_minus_t_minus_one")

_PARAMETRIC = {"power": (_power, 2.0), "power_over_p": (_power_over_p, 2.0), "power_log": (_power_log, 1.0)}
_FIXED = {"exp_minus_one": _EXP_MINUS_ONE, "exp_minus_t_minus_one": _EXP_MINUS_T_MINUS_ONE, "exp_square": _EXP_SQUARE}

BUILTIN_NAMES = tuple(sorted(_PARAMETRIC) + sorted(_FIXED))


def builtin(name: str, param: float | None = None) -> OrliczFn:
    """Look up a named gauge; ``name`` may carry its parameter as "name:p"."""
    if ":" in name:
        if param is not None:
            raise UnknownName("parameter given both inline and as argument")
        name, _, ptxt = name.partition(":")
        try:
            param = float(ptxt)
        except ValueError:
            raise UnknownName(f"bad parameter {ptxt!r} in {name}:{ptxt}") from None
    if name in _FIXED:
        if param is not None:
            raise UnknownName(f"{name} takes no parameter")
        return _FIXED[name]
    if name in _PARAMETRIC:
        factory, default = _PARAMETRIC[name]
        return factory(default if param is None else param)
    raise UnknownName(f"unknown function {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def kernel(f: OrliczFn, u: float) -> float:
    """γ(u); closed form when the gauge carries one, else a finite difference."""
    if u < 0:
        raise ValueError("kernel argument must be >= 0")
    if f.kernel_fn is not None:
        return float(f.kernel_fn(u))
    h = max(1e-6, 1e-6 * u)
    if u >= h:
        return float((f.phi(u + h) - f.phi(u - h)) / (2 * h))
    return float((f.phi(u + h) - f.phi(u)) / h)  # one-sided at the left endpoint


def right_inverse(f: OrliczFn, v: float) -> float:
    """η(v) = sup{u : γ(u) <= v}, by bisection on the monotone kernel."""
    if v < 0:
        raise ValueError("right_inverse argument must be >= 0")
    gamma = lambda u: kernel(f, u)
    if gamma(0.0) > v:
        return 0.0
    hi = 1.0
    while gamma(hi) <= v:
        hi *= 2.0
        if hi > _INVERSE_CAP:
            raise Unbounded(f"kernel of {f.label} stays <= {v} up to {_INVERSE_CAP:g}")
    lo = 0.0 if hi == 1.0 else hi / 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gamma(mid) <= v:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def _integrate_inverse(f: OrliczFn, s: float, tol: float = 1e-9) -> float:
    """∫_0^s η by composite Simpson, refined until the change is below tol.

    Substituting v = s u^2 regularizes the fractional-power behavior that
    kernel inverses show near zero (e.g. η = sqrt for the cubic gauge).
    """
    if s == 0.0:
        return 0.0
    n = 64
    prev = None
    for _ in range(8):
        us = np.linspace(0.0, 1.0, n + 1)
        ys = np.array([right_inverse(f, float(s * u * u)) * 2 * s * u for u in us])
        h = 1.0 / n
        val = h / 3 * (ys[0] + ys[-1] + 4 * ys[1:-1:2].sum() + 2 * ys[2:-1:2].sum())
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return float(val)
        prev = val
        n *= 2
    return float(val)


def complementary(f: OrliczFn) -> ComplementaryPair:
    """Complementary pair; closed form where registered, else numeric ψ."""
    if f.name == "power_over_p":
        p = f.param
        return ComplementaryPair(f, _power_over_p(p / (p - 1)), numeric=False)
    if f.name == "exp_minus_t_minus_one":
        return ComplementaryPair(f, _ENTROPY, numeric=False)
    if f.name == "entropy":
        return ComplementaryPair(f, _EXP_MINUS_T_MINUS_ONE, numeric=False)

    def psi_scalar(s: float) -> float:
        return _integrate_inverse(f, float(s))

    def psi(s):
        arr = np.asarray(s, dtype=float)
        if arr.ndim == 0:
            return psi_scalar(float(arr))
        return np.array([psi_scalar(float(v)) for v in arr.ravel()]).reshape(arr.shape)

    psi_fn = OrliczFn(f"conjugate({f.label})", psi, kernel_fn=lambda v: right_inverse(f, float(v)))
    return ComplementaryPair(f, psi_fn, numeric=True)


def hermite_hadamard_integral(f: OrliczFn, a: float, b: float) -> float:
    """∫_0^1 φ(ta + (1-t)b) dt via composite Simpson on a fixed 1025-node grid."""
    if a < 0 or b < 0:
        raise ValueError("endpoints must be >= 0")
    t = np.linspace(0.0, 1.0, _SIMPSON_NODES)
    with np.errstate(over="ignore"):  # fast-growing gauges saturate to inf
        y = np.asarray(f.phi(t * a + (1 - t) * b), dtype=float)
        h = 1.0 / (_SIMPSON_NODES - 1)
        return float(h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum()))


def young_check(pair: ComplementaryPair, u: float, v: float) -> tuple[float, float, float]:
    """(lhs, rhs, slack) for uv <= φ(u) + ψ(v)."""
    if u < 0 or v < 0:
        raise ValueError("arguments must be >= 0")
    lhs = u * v
    rhs = float(pair.phi(u)) + float(pair.psi(v))
    return lhs, rhs, rhs - lhs


def jensen_mean_check(f: OrliczFn, values) -> tuple[float, float]:
    """(φ(mean), mean of φ): the convex-mean comparison."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("values must be non-empty")
    if (arr < 0).any():
        raise ValueError("values must be >= 0")
    return float(f.phi(arr.mean())), float(np.mean(np.asarray(f.phi(arr), dtype=float)))


def validate_gauge(f: OrliczFn, grid=STANDARD_GRID) -> None:
    """Assert the defining properties on the standard grid; raises on failure."""
    if abs(float(f.phi(0.0))) > 1e-12:
        raise ValueError(f"{f.label}: phi(0) != 0")
    vals = [float(f.phi(t)) for t in grid]
    if any(v <= 0 for v in vals):
        raise ValueError(f"{f.label}: phi must be positive on the grid")
    ts = sorted(grid)
    vs = [float(f.phi(t)) for t in ts]
    if any(v2 <= v1 for v1, v2 in zip(vs, vs[1:])):
        raise ValueError(f"{f.label}: phi must be increasing")
    # finite-difference convexity on consecutive grid triples
    for t1, t2, t3 in zip(ts, ts[1:], ts[2:]):
        s12 = (f.phi(t2) - f.phi(t1)) / (t2 - t1)
        s23 = (f.phi(t3) - f.phi(t2)) / (t3 - t2)
        if s23 < s12 - 1e-9:
            raise ValueError(f"{f.label}: convexity fails on ({t1},{t2},{t3})")
    for mu in (0.0, 0.25, 0.5, 1.0):
        for t in grid:
            if float(f.phi(mu * t)) > mu * float(f.phi(t)) + 1e-12:
                raise ValueError(f"{f.label}: phi(mu t) <= mu phi(t) fails at mu={mu}, t={t}")
    if not float(f.phi(1e3)) > float(f.phi(1.0)):
        raise ValueError(f"{f.label}: growth sanity fails")
