"""Seeded verification campaigns, figure series, and fixed-example regression.

Campaign cells are evaluated in a fixed order and keyed deterministically, so
a report depends only on its configuration; the generation timestamp is kept
in a single field to make the rest byte-comparable across runs.
"""

from __future__ import annotations

import datetime
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import bounds, linalg, qrange, sectorial
from .config import TOL
from .errors import ConfigError, GenerationFailed, PredicateUnmet, UnknownFigure
from .orlicz import builtin
from .qrange import QParam

REPORT_SCHEMA = "qradius-campaign-report/1"

ALL_BOUND_IDS = tuple(s.id for s in bounds.catalog())
DEFAULT_PHI = ("power:2", "exp_minus_one", "power_over_p:2")
ALPHA_TARGETS = (0.2, 0.5, 0.8, 1.1, 1.4)

# Fixed 2x2 complex Gaussian sample. The reference constants below reproduce
# the original computation on it: Frobenius norms and entrywise real/imaginary
# parts (not the operator-norm Hermitian-part quantities used by the bounds).
GAUSSIAN_EXAMPLE = np.array([[0.4889 + 0.2939j, 0.7269 + 0.8884j],
                             [1.0347 - 0.7873j, -0.3034 - 1.1471j]])
GAUSSIAN_C1 = 3.4433
GAUSSIAN_C2 = 2.1623

EXAMPLE_A1 = np.array([[2.5, -0.5], [-0.5, 2.5]], dtype=complex)
EXAMPLE_A2 = np.array([[4.0, -3.0], [-3.0, 4.0]], dtype=complex)
JORDAN2 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 1
    dims: tuple = (2, 3, 4, 5, 6)
    q_grid: tuple = (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)
    trials: int = 200
    bound_ids: tuple = ALL_BOUND_IDS
    phi_names: tuple = DEFAULT_PHI
    out_path: Optional[str] = None

    def __post_init__(self):
        if not self.dims or any(d < 1 for d in self.dims):
            raise ConfigError("dims must be a non-empty list of positive integers")
        if not self.q_grid:
            raise ConfigError("q_grid must be non-empty")
        if any(not (0.0 < q <= 1.0) for q in self.q_grid):
            raise ConfigError("q values must lie in (0, 1]")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.bound_ids:
            raise ConfigError("bound_ids must be non-empty")
        known = set(ALL_BOUND_IDS)
        bad = [b for b in self.bound_ids if b not in known]
        if bad:
            raise ConfigError(f"unknown bound ids: {', '.join(bad)}")
        if not self.phi_names:
            raise ConfigError("phi_names must be non-empty")
        for name in self.phi_names:
            builtin(name)  # raises UnknownName

    def to_json(self) -> str:
        d = asdict(self)
        d["dims"] = list(self.dims)
        d["q_grid"] = list(self.q_grid)
        d["bound_ids"] = list(self.bound_ids)
        d["phi_names"] = list(self.phi_names)
        return json.dumps(d, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CampaignConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid config JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        kwargs = {}
        for key in ("seed", "trials", "out_path"):
            if key in d:
                kwargs[key] = d[key]
        for key in ("dims", "q_grid", "bound_ids", "phi_names"):
            if key in d:
                kwargs[key] = tuple(d[key])
        unknown = set(d) - {"seed", "dims", "q_grid", "trials", "bound_ids", "phi_names", "out_path"}
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**kwargs)


@dataclass(frozen=True)
class FigureData:
    figure_id: str
    grid_name: str
    grid: np.ndarray
    columns: dict

    def __post_init__(self):
        if any(len(col) != len(self.grid) for col in self.columns.values()):
            raise ValueError("columns must match the grid length")
        if not np.all(np.diff(self.grid) > 0):
            raise ValueError("grid must be strictly increasing")


def _coeff_l3_upper(q):
    return (q + 2 * np.sqrt(1 - q * q)) ** 2 / 2


def _coeff_c1_upper(q):
    return (2 - q * q + 2 * q * np.sqrt(2 * (1 - q * q))) / 2


def _bd_curves(q, sin_alpha):
    root = q * sin_alpha + 2 * np.sqrt(1 - q * q)
    bd1 = GAUSSIAN_C1 * q ** 4 / (q * q + root ** 2)
    bd2 = GAUSSIAN_C2 * q ** 4 / root ** 2
    return bd1, bd2


def figure_data(figure_id: str) -> FigureData:
    """Data series behind the comparison figures.

    fig1: the two upper-bound coefficients on ||T*T+TT*||, over q in (0,1).
    fig4: cos(a) versus 1/(1+sin(a)) over a in [0, pi/2).
    fig5/fig6: the two sectorial lower-bound curves for the fixed Gaussian
    example, at sin(a) = 0.5 and 0.9.
    """
    if figure_id == "fig1":
        q = np.arange(1, 200) / 200.0
        return FigureData("fig1", "q", q, {"f_L3": _coeff_l3_upper(q), "f_C1": _coeff_c1_upper(q)})
    if figure_id == "fig4":
        a = np.linspace(0.0, math.pi / 2, 200, endpoint=False)
        return FigureData("fig4", "alpha", a,
                          {"cos_alpha": np.cos(a), "inv_one_plus_sin": 1.0 / (1.0 + np.sin(a))})
    if figure_id in ("fig5", "fig6"):
        q = np.arange(1, 200) / 200.0
        sin_alpha = 0.5 if figure_id == "fig5" else 0.9
        bd1, bd2 = _bd_curves(q, sin_alpha)
        return FigureData(figure_id, "q", q, {"bd1": bd1, "bd2": bd2})
    raise UnknownFigure(f"unknown figure id {figure_id!r}; known: fig1, fig4, fig5, fig6")


def fig4_crossover() -> float:
    """The angle where cos(a)(1+sin(a)) = 1, by bisection."""
    g = lambda a: math.cos(a) * (1 + math.sin(a)) - 1.0
    lo, hi = 0.5, 1.4
    if not (g(lo) > 0 > g(hi)):
        raise RuntimeError("crossover bracket lost")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def serialize_figure_csv(fd: FigureData) -> str:
    cols = list(fd.columns)
    lines = [",".join([fd.grid_name] + cols)]
    for i in range(len(fd.grid)):
        row = [format(float(fd.grid[i]), ".17g")]
        row += [format(float(fd.columns[c][i]), ".17g") for c in cols]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def parse_figure_csv(text: str, figure_id: str = "parsed") -> FigureData:
    lines = [ln for ln in text.splitlines() if ln]
    header = lines[0].split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    cols = {name: data[:, k + 1] for k, name in enumerate(header[1:])}
    return FigureData(figure_id, header[0], data[:, 0], cols)


def serialize_boundary_csv(poly: qrange.BoundaryPolygon) -> str:
    lines = ["theta,h,vertex_re,vertex_im"]
    m = len(poly.directions)
    for k in range(m):
        row = [format(float(poly.directions[k]), ".17g"), format(float(poly.support_values[k]), ".17g")]
        if k < len(poly.vertices):
            row += [format(float(poly.vertices[k].real), ".17g"), format(float(poly.vertices[k].imag), ".17g")]
        else:
            row += ["", ""]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


# --- campaign ------------------------------------------------------------------


def _sum_groups(count: int):
    """Deterministic (start, length) groups cycling lengths 1, 2, 3."""
    groups, i, k = [], 0, 0
    while i < count:
        n = 1 + k % 3
        if i + n > count:
            n = count - i
        groups.append((i, n))
        i += n
        k += 1
    return groups


def _build_pools(cfg: CampaignConfig):
    pools = {"generic": [], "square_zero": [], "normal": [], "sectorial": {}, "imag_dominant": []}
    for i in range(cfg.trials):
        dim = cfg.dims[i % len(cfg.dims)]
        pools["generic"].append(linalg.random_matrix(dim, (cfg.seed << 8) + i))
    for j, dim in enumerate(d for d in cfg.dims if d >= 2):
        for k in range(2):
            pools["square_zero"].append(linalg.random_square_zero(dim, (cfg.seed << 8) + 7000 + 2 * j + k))
            pools["normal"].append(linalg.random_normal_matrix(dim, (cfg.seed << 8) + 8000 + 2 * j + k))
    sect_dims = [d for d in cfg.dims if 2 <= d <= 4] or [d for d in cfg.dims if d >= 2]
    needs_sect = any(bounds._BY_ID[b].requires in
                     ("q_sectorial", "q_sectorial_pair", "sectorial_q1", "sectorial_q1_im_dominant")
                     for b in cfg.bound_ids)
    if needs_sect and sect_dims:
        for qi, qv in enumerate(cfg.q_grid):
            cells = []
            for ai, target in enumerate(ALPHA_TARGETS):
                dim = sect_dims[ai % len(sect_dims)]
                for attempt in range(3):
                    try:
                        mat, verdict = sectorial.random_q_sectorial(
                            dim, qv, target, seed=(cfg.seed << 8) + 9000 + 100 * qi + 10 * ai + attempt)
                        cells.append((mat, verdict))
                        break
                    except GenerationFailed:
                        continue
            pools["sectorial"][qv] = cells
    if needs_sect and any(abs(qv - 1.0) <= 1e-12 for qv in cfg.q_grid):
        for k, scale in enumerate((1.2, 1.8, 2.5)):
            h = linalg.random_hermitian(2 + k % 2, (cfg.seed << 8) + 9900 + k)
            h /= linalg.spectral_norm(h)
            mat = np.eye(h.shape[0], dtype=complex) + 1j * scale * h
            verdict = sectorial.sectorial_index_estimate(mat, QParam(1.0), m=64, restarts=8,
                                                         seed=(cfg.seed << 8) + 9950 + k)
            if verdict.is_q_sectorial:
                pools["imag_dominant"].append((mat, verdict))
    return pools


def _campaign_cases(bid: str, qv: float, pools, phis):
    """Yield (matrices, f, alpha) tuples for one (bound, q) cell."""
    spec = bounds._BY_ID[bid]
    generic = pools["generic"]
    by_dim: dict = {}
    for m in generic:
        by_dim.setdefault(m.shape[0], []).append(m)
    fs = phis if spec.orlicz_dependent else [None]
    at_q1 = abs(qv - 1.0) <= 1e-12

    def same_dim_picks(a, idx, count):
        group = by_dim.get(a.shape[0], [])
        if len(group) < count:
            return None
        return [group[(3 * idx + j) % len(group)] for j in range(count)]

    for f in fs:
        if spec.requires in ("none", "q_real_01", "equality_premise") and spec.arity == 1:
            for m in generic:
                yield [m], f, None
            if spec.requires == "equality_premise":
                yield [np.zeros((2, 2), dtype=complex)], f, None
        elif bid == "T2":
            for group in by_dim.values():
                for start, count in _sum_groups(len(group)):
                    yield group[start:start + count], f, None
        elif spec.arity == 3:
            for group in by_dim.values():
                for i in range(0, len(group) - 2, 3):
                    t, rm, sm = group[i], group[i + 1], group[i + 2]
                    if spec.requires == "contraction_middle":
                        rm = rm / max(1.0, linalg.spectral_norm(rm)) * 0.9
                    yield [t, rm, sm], f, None
        elif spec.requires == "normal":
            for m in pools["normal"]:
                yield [m], f, None
        elif spec.requires in ("square_zero", "square_zero_q01"):
            for m in pools["square_zero"]:
                yield [m], f, None
        elif spec.requires == "q_sectorial":
            cells = pools["sectorial"].get(qv, [])
            for idx, (a, verdict) in enumerate(cells):
                alpha = verdict.alpha_conservative
                if spec.arity == 1:
                    yield [a], f, alpha
                elif spec.arity == 2:  # K3: the second factor is unrestricted
                    picks = same_dim_picks(a, idx, 1)
                    if picks:
                        yield [a] + picks, f, alpha
                else:  # K1 / K2: outer factors from the generic pool
                    picks = same_dim_picks(a, idx, 3)
                    if picks:
                        yield [a] + picks, f, alpha
        elif spec.requires == "q_sectorial_pair":
            cells = pools["sectorial"].get(qv, [])
            for idx, (a, va) in enumerate(cells):
                for jdx in range(idx + 1, len(cells)):
                    b, vb = cells[jdx]
                    if a.shape == b.shape:
                        alpha = max(va.alpha_conservative, vb.alpha_conservative)
                        yield [a, b], f, alpha
                        yield [b, a], f, alpha
        elif spec.requires == "sectorial_q1" and at_q1:
            cells = pools["sectorial"].get(qv, []) + pools["imag_dominant"]
            for idx, (a, verdict) in enumerate(cells):
                alpha = verdict.alpha_conservative
                if spec.arity == 1:
                    yield [a], None, alpha
                else:  # K5
                    picks = same_dim_picks(a, idx, 1)
                    if picks:
                        yield [a] + picks, None, alpha
        elif spec.requires == "sectorial_q1_im_dominant" and at_q1:
            for a, verdict in pools["imag_dominant"]:
                yield [a], None, verdict.alpha_conservative


def run_campaign(cfg: CampaignConfig) -> dict:
    """Evaluate the configured bounds over seeded instance pools.

    Returns the report dict; writes it as JSON to cfg.out_path when set.
    Deterministic for a fixed config apart from the generated_at field.
    """
    est = bounds.Estimator(seed=cfg.seed)
    phis = [builtin(name) for name in cfg.phi_names]
    pools = _build_pools(cfg)

    results = []
    for bid in [s.id for s in bounds.catalog() if s.id in set(cfg.bound_ids)]:
        trials = violations = warnings = skipped = 0
        min_slack = math.inf
        tight_sum, tight_n = 0.0, 0
        for qv in cfg.q_grid:
            for mats, f, alpha in _campaign_cases(bid, qv, pools, phis):
                try:
                    out = bounds.evaluate(bid, mats, qv, f=f, alpha=alpha, est=est)
                except PredicateUnmet:
                    skipped += 1
                    continue
                trials += 1
                min_slack = min(min_slack, out.slack)
                if out.slack < TOL.slack_soft:
                    violations += 1
                elif out.slack < TOL.slack_floor:
                    warnings += 1
                if out.rhs > 0:
                    tight_sum += bounds.tightness(out)
                    tight_n += 1
        results.append({
            "bound_id": bid,
            "trials": trials,
            "violations": violations,
            "warnings": warnings,
            "min_slack": None if trials == 0 else min_slack,
            "mean_tightness": None if tight_n == 0 else tight_sum / tight_n,
            "skipped": skipped,
        })

    report = {
        "schema": REPORT_SCHEMA,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": json.loads(cfg.to_json()),
        "pools": {
            "generic": len(pools["generic"]),
            "square_zero": len(pools["square_zero"]),
            "normal": len(pools["normal"]),
            "sectorial": sum(len(v) for v in pools["sectorial"].values()),
            "imag_dominant": len(pools["imag_dominant"]),
        },
        "results": results,
    }
    report["pools"]["total_matrices"] = sum(
        v for k, v in report["pools"].items())
    if cfg.out_path:
        write_report(report, cfg.out_path)
    return report


def write_report(report: dict, path) -> None:
    Path(path).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")


def validate_report(report: dict) -> None:
    """Structural check of the campaign report schema; raises on violation."""
    if report.get("schema") != REPORT_SCHEMA:
        raise ConfigError("unknown report schema")
    for key in ("generated_at", "config", "pools", "results"):
        if key not in report:
            raise ConfigError(f"report missing {key!r}")
    for row in report["results"]:
        for key in ("bound_id", "trials", "violations", "warnings", "min_slack", "mean_tightness"):
            if key not in row:
                raise ConfigError(f"result row missing {key!r}")


# --- fixed-example regression ----------------------------------------------------


def _entry(name, expected, actual, tol):
    if isinstance(expected, (list, tuple)):
        diff = max(abs(e - a) for e, a in zip(expected, actual)) if len(expected) == len(actual) else math.inf
        passed = len(expected) == len(actual) and diff <= tol
    elif isinstance(expected, bool):
        passed = expected == actual
    else:
        passed = abs(expected - actual) <= tol
    return {"name": name, "expected": expected, "actual": actual, "tol": tol, "passed": bool(passed)}


def paper_examples_regression(seed: int = 1) -> list[dict]:
    """The fixed worked-example suite; every entry must pass."""
    entries = []
    entries.append(_entry("eigenvalues_A1", [3.0, 2.0],
                          [float(v) for v in linalg.hermitian_eigenvalues(EXAMPLE_A1)], 1e-10))
    entries.append(_entry("eigenvalues_A2", [7.0, 1.0],
                          [float(v) for v in linalg.hermitian_eigenvalues(EXAMPLE_A2)], 1e-10))
    entries.append(_entry("eigenvalues_identity3", [1.0, 1.0, 1.0],
                          [float(v) for v in linalg.hermitian_eigenvalues(np.eye(3, dtype=complex))], 1e-12))
    entries.append(_entry("sectorial_A1_at_half", True,
                          sectorial.hermitian_q_sectorial_test(EXAMPLE_A1, 0.5).is_q_sectorial, 0))
    entries.append(_entry("sectorial_A2_at_half", False,
                          sectorial.hermitian_q_sectorial_test(EXAMPLE_A2, 0.5).is_q_sectorial, 0))
    e1 = qrange.hermitian_qrange_ellipse(EXAMPLE_A1, 0.5)
    entries.append(_entry("ellipse_A1", [1.25, 0.5, math.sqrt(3) / 4],
                          [e1.center_x, e1.semi_axis_x, e1.semi_axis_y], 1e-12))
    e2 = qrange.hermitian_qrange_ellipse(EXAMPLE_A2, 0.5)
    entries.append(_entry("ellipse_A2", [2.0, 3.0, 1.5 * math.sqrt(3)],
                          [e2.center_x, e2.semi_axis_x, e2.semi_axis_y], 1e-12))
    a = GAUSSIAN_EXAMPLE
    m = a @ a.conj().T + a.conj().T @ a
    c1 = float(np.linalg.norm(m, "fro")) / 2
    c2 = float(np.linalg.norm(m, "fro")) / 4 + (np.linalg.norm(a.imag, "fro") ** 2
                                                - np.linalg.norm(a.real, "fro") ** 2) / 2
    entries.append(_entry("gaussian_constant_c1", GAUSSIAN_C1, c1, 5e-4))
    entries.append(_entry("gaussian_constant_c2", GAUSSIAN_C2, float(c2), 5e-4))
    rid, _ = qrange.q_numerical_radius(np.eye(2, dtype=complex), 0.5, seed=seed)
    entries.append(_entry("radius_identity_q_half", 0.5, rid, 1e-12))
    rj, _ = qrange.q_numerical_radius(JORDAN2, 0.5, seed=seed)
    entries.append(_entry("radius_jordan_q_half", math.sqrt(3) / 4 + 0.5, rj, 1e-3))
    entries.append(_entry("classical_radius_jordan", 0.5,
                          linalg.classical_numerical_radius(JORDAN2), 1e-8))
    return entries
