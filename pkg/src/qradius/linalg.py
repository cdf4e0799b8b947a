"""Complex dense linear algebra primitives.

Conventions: matrices are square ``numpy`` arrays of ``complex128``; the
inner product is linear in the first argument, ``<u, v> = v.conj() @ u``.
All randomness flows through :func:`rng`, a counter-based (Philox) stream
keyed by an explicit integer seed, so identical seeds reproduce bit-identical
results on every platform.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .config import TOL
from .errors import DimensionMismatch, MatrixFormatError, NotHermitian


def as_matrix(a) -> np.ndarray:
    """Validate and return a finite square complex matrix."""
    m = np.ascontiguousarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise MatrixFormatError("matrix entries must be finite")
    return m


def rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox generator for (seed, stream...); the stream ints separate uses."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((int(seed),) + tuple(int(s) for s in stream))))


def hermitian_parts(a) -> tuple[np.ndarray, np.ndarray]:
    """Cartesian decomposition: (A + A*)/2 and (A - A*)/(2i), both Hermitian."""
    m = as_matrix(a)
    re = (m + m.conj().T) / 2
    im = (m - m.conj().T) / 2j
    return re, im


def is_hermitian(a, tol: float = TOL.eigen) -> bool:
    m = as_matrix(a)
    return float(np.abs(m - m.conj().T).max()) <= tol


def hermitian_eigenvalues(a) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    m = as_matrix(a)
    dev = float(np.abs(m - m.conj().T).max())
    if dev > TOL.eigen:
        raise NotHermitian(f"max |A - A*| = {dev:.3e} exceeds {TOL.eigen}")
    vals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return vals[::-1].copy()


def spectral_norm(a) -> float:
    """Largest singular value, via the Hermitian eigensolve of A*A."""
    m = as_matrix(a)
    g = m.conj().T @ m
    top = float(np.linalg.eigvalsh((g + g.conj().T) / 2)[-1])
    return math.sqrt(max(0.0, top))


def _rotated_sup(m: np.ndarray, angles: int) -> tuple[float, float]:
    """(max over θ of λ_max(Re(e^{iθ}A)), argmax θ): grid scan plus golden section."""

    def g(theta: float) -> float:
        r = (np.exp(1j * theta) * m + np.exp(-1j * theta) * m.conj().T) / 2
        return float(np.linalg.eigvalsh(r)[-1])

    thetas = np.linspace(0.0, 2 * np.pi, angles, endpoint=False)
    vals = [g(t) for t in thetas]
    k = int(np.argmax(vals))
    step = 2 * np.pi / angles
    lo, hi = thetas[k] - step, thetas[k] + step
    invphi = (math.sqrt(5) - 1) / 2
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    gc, gd = g(c), g(d)
    for _ in range(70):
        if gc >= gd:
            hi, d, gd = d, c, gc
            c = hi - invphi * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + invphi * (hi - lo)
            gd = g(d)
    candidates = [(vals[k], thetas[k]), (gc, c), (gd, d)]
    best = max(candidates, key=lambda p: p[0])
    return best


def classical_numerical_radius(a, angles: int = 256) -> float:
    """max over unit x of |<Ax, x>|.

    Scans λ_max(Re(e^{iθ}A)) on a uniform θ-grid, then refines around the
    best angle by golden-section search. Accuracy ~1e-8 at the default grid.
    """
    m = as_matrix(a)
    if angles < 64:
        raise ValueError("angles must be at least 64")
    return _rotated_sup(m, angles)[0]


def top_rotated_eigenvector(a, angles: int = 256) -> np.ndarray:
    """Unit eigenvector attaining λ_max(Re(e^{iθ}A)) at the refined best angle."""
    m = as_matrix(a)
    _, theta = _rotated_sup(m, angles)
    r = (np.exp(1j * theta) * m + np.exp(-1j * theta) * m.conj().T) / 2
    _, v = np.linalg.eigh(r)
    return np.asarray(v[:, -1], dtype=complex)


def random_matrix(dim: int, seed: int) -> np.ndarray:
    """dim x dim matrix with i.i.d. standard-normal real and imaginary parts."""
    if dim < 1:
        raise DimensionMismatch("dim must be >= 1")
    g = rng(seed, 0xA11CE)
    return g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))


def random_hermitian(dim: int, seed: int) -> np.ndarray:
    m = random_matrix(dim, seed)
    return (m + m.conj().T) / 2


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Unitary from the QR orthonormalization of a random matrix."""
    q, r = np.linalg.qr(random_matrix(dim, seed))
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_normal_matrix(dim: int, seed: int) -> np.ndarray:
    """Normal matrix U diag(c) U* with random complex spectrum."""
    u = random_unitary(dim, seed)
    g = rng(seed, 0x0DD)
    d = g.standard_normal(dim) + 1j * g.standard_normal(dim)
    return u @ np.diag(d) @ u.conj().T


def random_square_zero(dim: int, seed: int) -> np.ndarray:
    """Nonzero T with T^2 = 0 (strictly upper block form)."""
    if dim < 2:
        raise DimensionMismatch("square-zero construction needs dim >= 2")
    k = dim // 2
    g = rng(seed, 0x50)
    x = g.standard_normal((k, dim - k)) + 1j * g.standard_normal((k, dim - k))
    t = np.zeros((dim, dim), dtype=complex)
    t[:k, k:] = x
    return t


def commutator(a, b, sign: int = -1) -> np.ndarray:
    """AB + sign*BA; sign=-1 is the commutator, +1 the anti-commutator."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"shapes {ma.shape} and {mb.shape} differ")
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    return ma @ mb + sign * (mb @ ma)


def is_normal(a, tol: float = 1e-10) -> bool:
    m = as_matrix(a)
    d = m @ m.conj().T - m.conj().T @ m
    scale = max(1.0, float(np.abs(m).max()) ** 2)
    return float(np.abs(d).max()) <= tol * scale


# --- JSON interchange format -------------------------------------------------
#
# {"dim": n, "entries": [[re, im], ...]} with dim*dim pairs in row-major order.


def _reject_constant(token: str):
    raise MatrixFormatError(f"non-finite entry {token!r} not allowed")


def matrix_from_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise MatrixFormatError('expected {"dim": n, "entries": [[re, im], ...]}')
    dim = obj["dim"]
    entries = obj["entries"]
    if not isinstance(dim, int) or dim < 1:
        raise MatrixFormatError("dim must be a positive integer")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise MatrixFormatError(f"expected {dim * dim} entries, got {len(entries) if isinstance(entries, list) else 'non-list'}")
    flat = np.empty(dim * dim, dtype=complex)
    for i, pair in enumerate(entries):
        if (not isinstance(pair, list)) or len(pair) != 2 or not all(isinstance(v, (int, float)) for v in pair):
            raise MatrixFormatError(f"entry {i} must be a [re, im] pair of numbers")
        if not (math.isfinite(pair[0]) and math.isfinite(pair[1])):
            raise MatrixFormatError(f"entry {i} is not finite")
        flat[i] = complex(pair[0], pair[1])
    return flat.reshape(dim, dim)


def matrix_to_json(a) -> str:
    m = as_matrix(a)
    entries = [[float(z.real), float(z.imag)] for z in m.ravel()]
    return json.dumps({"dim": int(m.shape[0]), "entries": entries})


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(Path(path).read_text())


def save_matrix(a, path) -> None:
    Path(path).write_text(matrix_to_json(a) + "\n")
