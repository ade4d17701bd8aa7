"""Command-line driver: build surrogates, run sweeps, tabulate estimators.

Subcommands
-----------
build      build one surrogate and write a JSON artifact
sweep      sample-count sweep; CSV of per-pole matching errors
estimate   residual estimator comparison table over a parameter grid
greedy     greedy sample refinement; history CSV plus final artifact
nodes      dump the sample nodes for each sweep step

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 refinement budget exhausted.  All outputs are deterministic for a fixed
config and seed except the wall_ms timing column.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import os
import struct
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import (
    AtPoleError,
    ConfigError,
    DimensionMismatchError,
    NodePointError,
    SingularSystemError,
)
from .estimators import (
    calibrate,
    greedy_refine,
    residual_direct,
    residual_estimator_calibrated,
    residual_estimator_linear,
    residual_separable,
)
from .interpolant import MRIConfig, RationalInterpolant, build, pole_matching_error
from .polybasis import ChebyshevSegmentBasis, PolyCoeffs, ShiftedMonomialBasis, eval_poly
from .sampling import (
    Disk,
    SampleSet,
    Segment,
    capacity,
    fejer_nodes,
    green_potential,
    quasi_random_nodes,
    region_center,
)
from .snapshots import EuclideanInner, WeightedInner, orthonormalize
from .testbeds import (
    MeromorphicMap,
    eval_meromorphic,
    fom_affine,
    helmholtz_1d_fom,
    pod_pole_baseline,
    quadratic_pencil_resonances,
    random_normal_fom,
    normal_fom_from_eigenvalues,
    random_orthogonal_map,
    solve_fom,
    sort_poles_by_center,
)

SWEEP_COLUMNS = [
    "S", "N", "pole_index", "true_pole_re", "true_pole_im",
    "pole_error", "sigma_min", "max_rel_err", "wall_ms",
]
ESTIMATE_COLUMNS = ["mu_re", "mu_im", "exact", "separable", "linear_est", "calibrated_est", "status"]
GREEDY_COLUMNS = ["iteration", "S", "mu_re", "mu_im", "estimator_max", "exact_residual"]
NODES_COLUMNS = ["S", "node_index", "node_re", "node_im", "omega_prime_re", "omega_prime_im"]


# ---------------------------------------------------------------------------
# configuration

@dataclass
class ExperimentConfig:
    fom: dict
    region: dict
    sampling: str = "fejer"
    s_range: list = field(default_factory=lambda: [2, 2])
    n_policy: dict = field(default_factory=lambda: {"kind": "diagonal"})
    basis: str = "auto"
    seed: int = 0
    out_dir: str = "out"
    eval_grid: int = 50
    estimate_grid: int = 101
    mu_prime: list | None = None
    pod_baseline: bool = False
    pole_margin: float = 0.0
    tol: float = 1e-6
    max_samples: int = 40
    candidates: int = 200
    inner: str = "euclidean"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        missing = {"fom", "region"} - set(data)
        if missing:
            raise ConfigError(f"missing required config fields: {sorted(missing)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.sampling not in ("fejer", "quasi-random"):
            raise ConfigError(f"unknown sampling strategy {self.sampling!r}")
        if self.basis not in ("auto", "monomial", "chebyshev"):
            raise ConfigError(f"unknown basis {self.basis!r}")
        if self.inner not in ("euclidean", "energy"):
            raise ConfigError(f"unknown inner product {self.inner!r}")
        if not (isinstance(self.s_range, (list, tuple)) and len(self.s_range) == 2):
            raise ConfigError("s_range must be [lo, hi]")
        if int(self.s_range[0]) < 1:
            raise ConfigError("s_range values must be >= 1")
        kind = self.n_policy.get("kind")
        if kind not in ("fixed", "diagonal"):
            raise ConfigError("n_policy.kind must be 'fixed' or 'diagonal'")
        if kind == "fixed" and int(self.n_policy.get("value", -1)) < 0:
            raise ConfigError("n_policy.value must be >= 0")
        if self.region.get("kind") not in ("disk", "segment"):
            raise ConfigError("region.kind must be 'disk' or 'segment'")
        if self.fom.get("kind") not in ("normal-eigen", "helmholtz-1d", "meromorphic", "snapshot-file"):
            raise ConfigError(f"unknown fom kind {self.fom.get('kind')!r}")
        if int(self.seed) < 0:
            raise ConfigError("seed must be a nonnegative integer")


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    return ExperimentConfig.from_dict(data)


def _as_complex(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    return complex(float(pair[0]), float(pair[1]))


def region_from_config(cfg: ExperimentConfig):
    spec = cfg.region
    if spec["kind"] == "disk":
        return Disk(center=_as_complex(spec.get("center", 0.0)), radius=float(spec["radius"]))
    return Segment(a=_as_complex(spec["a"]), b=_as_complex(spec["b"]))


def basis_factory_from_config(cfg: ExperimentConfig, region):
    choice = cfg.basis
    if choice == "auto":
        choice = "chebyshev" if isinstance(region, Segment) else "monomial"
    if choice == "chebyshev":
        if not isinstance(region, Segment):
            raise ConfigError("chebyshev basis requires a segment region")
        return lambda deg: ChebyshevSegmentBasis(a=region.a, b=region.b, max_degree=deg)
    center = region_center(region)
    return lambda deg: ShiftedMonomialBasis(center=center, max_degree=deg)


class FomHandle:
    """Uniform access to solves, true poles and the operator of a config FOM."""

    def __init__(self, cfg: ExperimentConfig):
        spec = cfg.fom
        kind = spec["kind"]
        self.kind = kind
        self.op = None
        self.fom = None
        self.snapshot_table = None
        if kind == "normal-eigen":
            if "eigenvalues" in spec:
                lam = np.array([_as_complex(p) for p in spec["eigenvalues"]])
                fom = normal_fom_from_eigenvalues(lam, seed=int(cfg.seed))
            else:
                n = int(spec.get("n", 100))
                box = tuple(spec.get("box", (-5.0, 5.0, -5.0, 5.0)))
                fom = random_normal_fom(n, box, seed=int(cfg.seed))
            self.fom = fom
            self.op = fom_affine(fom)
            self.dim = fom.dim
            self.true_poles = fom.eigenvalues
            self.solve = lambda mu: solve_fom(fom, mu)
        elif kind == "helmholtz-1d":
            op = helmholtz_1d_fom(
                m=int(spec.get("m", 60)),
                eta=float(spec.get("eta", 0.5)),
                rho=float(spec.get("rho", 1.0)),
                stiffness=spec.get("stiffness", 25.0),
                length=float(spec.get("length", 1.0)),
            )
            self.op = op
            self.dim = op.n
            self.true_poles = quadratic_pencil_resonances(op)
            self.solve = op.solve
        elif kind == "meromorphic":
            poles = np.array([_as_complex(p) for p in spec["poles"]])
            if "residues" in spec:
                res = np.array([[_as_complex(x) for x in row] for row in spec["residues"]]).T
                mmap = MeromorphicMap(poles=poles, residues=res, orthogonal=bool(spec.get("orthogonal", False)))
            else:
                n = int(spec.get("n", max(8, poles.size)))
                norms = spec.get("residue_norms")
                mmap = random_orthogonal_map(n, poles, norms=norms, seed=int(cfg.seed))
            self.fom = mmap
            self.dim = mmap.dim
            self.true_poles = mmap.poles
            self.solve = lambda mu: eval_meromorphic(mmap, mu)
        else:  # snapshot-file
            path = spec["path"]
            nodes = np.array([_as_complex(p) for p in spec["nodes"]])
            n, S, table = read_snapshot_container(path)
            if S != nodes.size:
                raise ConfigError("snapshot file column count does not match node list")
            self.dim = n
            self.snapshot_table = (nodes, table)
            self.true_poles = None
            self.solve = None

    def inner_for(self, cfg: ExperimentConfig):
        if cfg.inner == "euclidean":
            return EuclideanInner(self.dim)
        if self.kind != "helmholtz-1d":
            raise ConfigError("energy inner product is only defined for helmholtz-1d")
        return WeightedInner(self.op.F[0])


# ---------------------------------------------------------------------------
# snapshot container: uint64 n, uint64 S (little-endian), then n*S
# complex128 values in column-major order, little-endian.

def write_snapshot_container(path: str, snapshots) -> None:
    X = np.asarray(snapshots, dtype=complex)
    if X.ndim != 2:
        raise DimensionMismatchError("snapshots must be an (n, S) array")
    n, S = X.shape
    with open(path, "wb") as fh:
        fh.write(struct.pack("<QQ", n, S))
        fh.write(np.asfortranarray(X).astype("<c16").tobytes(order="F"))


def read_snapshot_container(path: str):
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) != 16:
            raise ConfigError("snapshot file too short for its header")
        n, S = struct.unpack("<QQ", header)
        payload = fh.read()
    expected = 16 * n * S
    if len(payload) != expected:
        raise ConfigError(f"snapshot payload is {len(payload)} bytes, expected {expected}")
    table = np.frombuffer(payload, dtype="<c16").reshape((n, S), order="F").copy()
    return int(n), int(S), table


# ---------------------------------------------------------------------------
# shared helpers

def _fmt(x) -> str:
    return repr(float(x))


def _write_csv(path: str, columns, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(row)


def _nodes_for(cfg: ExperimentConfig, region, S: int) -> SampleSet:
    if cfg.sampling == "fejer":
        return fejer_nodes(region, S)
    return quasi_random_nodes(region, S, skip=0)


def _n_for(cfg: ExperimentConfig, S: int) -> int:
    if cfg.n_policy["kind"] == "diagonal":
        return S - 1
    return int(cfg.n_policy["value"])


def _build_for(cfg: ExperimentConfig, handle: FomHandle, region, S: int):
    samples = _nodes_for(cfg, region, S)
    if handle.snapshot_table is not None:
        nodes, table = handle.snapshot_table
        samples = SampleSet(nodes)
        if S != len(samples):
            raise ConfigError("snapshot-file runs fix S to the stored column count")
        snaps = table
    else:
        snaps = np.column_stack([handle.solve(mu) for mu in samples.nodes])
    N = _n_for(cfg, S)
    if N > S - 1:
        raise ConfigError(f"n_policy gives N={N} but S={S} allows at most N={S - 1}")
    basis_factory = basis_factory_from_config(cfg, region)
    config = MRIConfig(N=N, basis=basis_factory(max(N, 1)))
    interp = build(snaps, handle.inner_for(cfg), samples, config)
    return interp, snaps


def tracked_poles(cfg: ExperimentConfig, region, poles) -> np.ndarray:
    """True poles inside the region (within the configured margin), sorted by
    distance from the region center."""
    p = np.atleast_1d(np.asarray(poles, dtype=complex))
    cap = capacity(region)
    inside = green_potential(region, p) <= cap * (1.0 + 1e-9 + float(cfg.pole_margin))
    return sort_poles_by_center(p[inside], region_center(region))


def _eval_grid(cfg: ExperimentConfig, region) -> np.ndarray:
    pts = quasi_random_nodes(region, int(cfg.eval_grid), skip=1000).nodes
    return pts


def _estimate_grid(cfg: ExperimentConfig, region) -> np.ndarray:
    count = int(cfg.estimate_grid)
    if isinstance(region, Segment):
        t = np.linspace(0.0, 1.0, count)
        return complex(region.a) + (complex(region.b) - complex(region.a)) * t
    c, r = complex(region.center), float(region.radius)
    return c + r * np.linspace(-1.0, 1.0, count)


def _candidate_grid(cfg: ExperimentConfig, region) -> np.ndarray:
    count = int(cfg.candidates)
    if isinstance(region, Segment):
        t = (np.arange(count) + 0.5) / count
        return complex(region.a) + (complex(region.b) - complex(region.a)) * t
    c, r = complex(region.center), float(region.radius)
    per_axis = int(np.ceil(np.sqrt(count * 4.0 / np.pi)))
    line = np.linspace(-1.0, 1.0, per_axis)
    X, Y = np.meshgrid(line, line)
    pts = (X + 1j * Y).ravel()
    return c + r * pts[np.abs(pts) <= 1.0 - 1e-12]


def interpolant_to_dict(interp: RationalInterpolant, snapshots) -> dict:
    basis = interp.config.basis
    if isinstance(basis, ShiftedMonomialBasis):
        basis_spec = {"kind": "monomial", "center": [basis.center.real, basis.center.imag],
                      "max_degree": basis.max_degree}
    else:
        basis_spec = {"kind": "chebyshev", "a": [complex(basis.a).real, complex(basis.a).imag],
                      "b": [complex(basis.b).real, complex(basis.b).imag],
                      "max_degree": basis.max_degree}
    finite, n_inf = interp.poles()
    X = np.asarray(snapshots, dtype=complex)
    return {
        "format": "mrinterp-artifact-v1",
        "N": interp.config.N,
        "basis": basis_spec,
        "nodes": [[z.real, z.imag] for z in interp.samples.nodes],
        "denominator": [[c.real, c.imag] for c in interp.q.coeffs],
        "sigma_min": interp.sigma_min,
        "sigma_gap": interp.sigma_gap,
        "poles": [[z.real, z.imag] for z in finite],
        "poles_at_infinity": int(n_inf),
        "snapshots": {
            "kind": "inline",
            "n": int(X.shape[0]),
            "data": [[[z.real, z.imag] for z in X[:, j]] for j in range(X.shape[1])],
        },
    }


def interpolant_from_dict(data: dict, inner=None) -> RationalInterpolant:
    if data.get("format") != "mrinterp-artifact-v1":
        raise ConfigError("not a recognized surrogate artifact")
    bs = data["basis"]
    if bs["kind"] == "monomial":
        basis = ShiftedMonomialBasis(center=_as_complex(bs["center"]), max_degree=int(bs["max_degree"]))
    else:
        basis = ChebyshevSegmentBasis(a=_as_complex(bs["a"]), b=_as_complex(bs["b"]),
                                      max_degree=int(bs["max_degree"]))
    nodes = np.array([_as_complex(p) for p in data["nodes"]])
    samples = SampleSet(nodes)
    snaps = np.column_stack(
        [np.array([_as_complex(p) for p in col]) for col in data["snapshots"]["data"]]
    )
    inner = EuclideanInner(snaps.shape[0]) if inner is None else inner
    snap = orthonormalize(inner, snaps)
    from .interpolant import build_gramian_factor  # local to avoid cycle at import time

    config = MRIConfig(N=int(data["N"]), basis=basis)
    factor = build_gramian_factor(snap, samples, config)
    q = PolyCoeffs(basis, np.array([_as_complex(p) for p in data["denominator"]]))
    qnode = np.atleast_1d(np.asarray(eval_poly(q, samples.nodes), dtype=complex))
    return RationalInterpolant(
        samples=samples, snap=snap, config=config, q=q, qnode=qnode,
        factor=factor, sigma_min=float(data["sigma_min"]), sigma_gap=float(data["sigma_gap"]),
    )


# ---------------------------------------------------------------------------
# subcommands

def cmd_build(cfg: ExperimentConfig, out_dir: str) -> int:
    region = region_from_config(cfg)
    handle = FomHandle(cfg)
    S = int(cfg.s_range[1])
    interp, snaps = _build_for(cfg, handle, region, S)
    artifact = interpolant_to_dict(interp, snaps)
    path = os.path.join(out_dir, "surrogate.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(artifact, fh, indent=1, sort_keys=True)
    print(f"built surrogate: S={S} N={interp.config.N} sigma_min={interp.sigma_min:.3e} "
          f"sigma_gap={interp.sigma_gap:.3e} poles={len(artifact['poles'])} -> {path}")
    return 0


def _sweep_one(cfg, handle, region, tracked, S):
    t0 = time.perf_counter()
    try:
        interp, _ = _build_for(cfg, handle, region, S)
        approx, _ = interp.poles()
        errors = (
            pole_matching_error(tracked, approx)
            if tracked.size and approx.size
            else np.full(tracked.shape, np.nan)
        )
        max_rel = np.nan
        if handle.solve is not None:
            rels = []
            for mu in _eval_grid(cfg, region):
                try:
                    u = handle.solve(mu)
                except (SingularSystemError, AtPoleError):
                    continue
                nrm = np.linalg.norm(u)
                if nrm > 0:
                    rels.append(np.linalg.norm(interp.evaluate(mu) - u) / nrm)
            if rels:
                max_rel = float(np.max(rels))
        sigma = interp.sigma_min
        N = interp.config.N
    except (ValueError, np.linalg.LinAlgError):
        errors = np.full(tracked.shape, np.nan)
        sigma, max_rel, N = np.nan, np.nan, _n_for(cfg, S)
    wall = (time.perf_counter() - t0) * 1e3
    rows = []
    for k, lam in enumerate(tracked):
        rows.append([S, N, k, _fmt(lam.real), _fmt(lam.imag),
                     _fmt(errors[k]), _fmt(sigma), _fmt(max_rel), _fmt(wall)])
    return rows


def cmd_sweep(cfg: ExperimentConfig, out_dir: str, threads: int) -> int:
    region = region_from_config(cfg)
    handle = FomHandle(cfg)
    if handle.snapshot_table is not None:
        raise ConfigError("sweep needs a solvable fom, not a snapshot file")
    tracked = tracked_poles(cfg, region, handle.true_poles)
    lo, hi = int(cfg.s_range[0]), int(cfg.s_range[1])
    if cfg.n_policy["kind"] == "fixed" and lo <= hi and lo < int(cfg.n_policy["value"]) + 1:
        raise ConfigError(
            f"sweep start S={lo} is below N+1={int(cfg.n_policy['value']) + 1}"
        )
    svals = list(range(lo, hi + 1))
    if threads > 1 and len(svals) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda S: _sweep_one(cfg, handle, region, tracked, S), svals))
    else:
        chunks = [_sweep_one(cfg, handle, region, tracked, S) for S in svals]
    rows = [row for chunk in chunks for row in chunk]
    path = os.path.join(out_dir, "sweep.csv")
    _write_csv(path, SWEEP_COLUMNS, rows)
    print(f"sweep: S={lo}..{hi}, {len(rows)} rows, {tracked.size} tracked poles -> {path}")
    if cfg.pod_baseline:
        pod_rows = []
        inner = handle.inner_for(cfg)
        A = handle.fom.A if handle.kind == "normal-eigen" else None
        if A is None:
            raise ConfigError("pod_baseline is only defined for normal-eigen foms")
        for S in svals:
            t0 = time.perf_counter()
            N = _n_for(cfg, S)
            try:
                samples = _nodes_for(cfg, region, S)
                snaps = np.column_stack([handle.solve(mu) for mu in samples.nodes])
                ritz = pod_pole_baseline(snaps, inner, N, A)
                errors = (
                    pole_matching_error(tracked, ritz)
                    if tracked.size and ritz.size
                    else np.full(tracked.shape, np.nan)
                )
            except (ValueError, np.linalg.LinAlgError):
                errors = np.full(tracked.shape, np.nan)
            wall = (time.perf_counter() - t0) * 1e3
            for k, lam in enumerate(tracked):
                pod_rows.append([S, N, k, _fmt(lam.real), _fmt(lam.imag),
                                 _fmt(errors[k]), _fmt(np.nan), _fmt(np.nan), _fmt(wall)])
        pod_path = os.path.join(out_dir, "sweep_pod.csv")
        _write_csv(pod_path, SWEEP_COLUMNS, pod_rows)
        print(f"pod baseline -> {pod_path}")
    return 0


def cmd_estimate(cfg: ExperimentConfig, out_dir: str, interp_path: str | None) -> int:
    region = region_from_config(cfg)
    handle = FomHandle(cfg)
    if handle.op is None:
        raise ConfigError("estimate needs an operator fom (normal-eigen or helmholtz-1d)")
    if interp_path:
        with open(interp_path, "r", encoding="utf-8") as fh:
            interp = interpolant_from_dict(json.load(fh), inner=None)
    else:
        interp, _ = _build_for(cfg, handle, region, int(cfg.s_range[1]))
    grid = _estimate_grid(cfg, region)
    if cfg.mu_prime is not None:
        mu_prime = _as_complex(cfg.mu_prime)
    else:
        shape = np.array([abs(v) for v in np.atleast_1d(
            np.asarray([interp.denominator(m) for m in grid]))])
        interiors = [m for m in grid
                     if np.min(np.abs(m - interp.samples.nodes)) > 1e-8]
        mu_prime = min(interiors, key=lambda m: abs(abs(interp.denominator(m)) - np.median(shape)))
    try:
        const = calibrate(handle.op, interp, mu_prime)
    except (NodePointError, AtPoleError) as exc:
        raise ConfigError(f"calibration point unusable: {exc}") from exc
    rows = []
    for mu in grid:
        exact = residual_direct(handle.op, interp, mu)
        sep = residual_separable(handle.op, interp, mu)
        lin = (residual_estimator_linear(handle.op, interp, mu)
               if handle.op.linear_in_mu else np.nan)
        cal = residual_estimator_calibrated(interp, mu, const)
        _, near = interp.evaluate_info(mu)
        status = "near-pole" if near else "ok"
        rows.append([_fmt(mu.real), _fmt(mu.imag), _fmt(exact), _fmt(sep),
                     _fmt(lin), _fmt(cal), status])
    path = os.path.join(out_dir, "estimate.csv")
    _write_csv(path, ESTIMATE_COLUMNS, rows)
    print(f"estimate: {len(rows)} grid points, calibrated at mu'={mu_prime} -> {path}")
    return 0


def cmd_greedy(cfg: ExperimentConfig, out_dir: str, tol: float | None) -> int:
    region = region_from_config(cfg)
    handle = FomHandle(cfg)
    if handle.op is None:
        raise ConfigError("greedy needs an operator fom (normal-eigen or helmholtz-1d)")
    tol = float(cfg.tol) if tol is None else float(tol)
    S0 = int(cfg.s_range[0])
    if S0 < 2:
        raise ConfigError("greedy needs at least 2 initial samples")
    samples = _nodes_for(cfg, region, S0)
    snaps = np.column_stack([handle.solve(mu) for mu in samples.nodes])
    basis_factory = basis_factory_from_config(cfg, region)
    n_policy = "diagonal" if cfg.n_policy["kind"] == "diagonal" else int(cfg.n_policy["value"])
    result = greedy_refine(
        handle.op, handle.inner_for(cfg), samples, snaps,
        _candidate_grid(cfg, region), tol, int(cfg.max_samples),
        basis_factory, n_policy=n_policy,
    )
    rows = [[i, s, _fmt(mu.real), _fmt(mu.imag), _fmt(em), _fmt(ex)]
            for i, (s, mu, em, ex) in enumerate(result.history)]
    hist_path = os.path.join(out_dir, "greedy_history.csv")
    _write_csv(hist_path, GREEDY_COLUMNS, rows)
    artifact = interpolant_to_dict(result.interp, result.snapshots)
    art_path = os.path.join(out_dir, "surrogate.json")
    with open(art_path, "w", encoding="utf-8") as fh:
        json.dump(artifact, fh, indent=1, sort_keys=True)
    state = "converged" if result.converged else "budget exhausted"
    print(f"greedy: {state} at S={len(result.samples)}, history -> {hist_path}, artifact -> {art_path}")
    return 0 if result.converged else 4


def cmd_nodes(cfg: ExperimentConfig, out_dir: str) -> int:
    region = region_from_config(cfg)
    lo, hi = int(cfg.s_range[0]), int(cfg.s_range[1])
    rows = []
    for S in range(lo, hi + 1):
        samples = _nodes_for(cfg, region, S)
        for j, (z, w) in enumerate(zip(samples.nodes, samples.omega_prime)):
            rows.append([S, j, _fmt(z.real), _fmt(z.imag), _fmt(w.real), _fmt(w.imag)])
    path = os.path.join(out_dir, "nodes.csv")
    _write_csv(path, NODES_COLUMNS, rows)
    print(f"nodes: S={lo}..{hi}, {len(rows)} rows -> {path}")
    return 0


# ---------------------------------------------------------------------------
# entry point

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mrinterp",
                                description="rational surrogates for parametric solution maps")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("build", "build one surrogate and write its artifact"),
        ("sweep", "sweep the sample count; per-pole error CSV"),
        ("estimate", "tabulate residual estimators over a grid"),
        ("greedy", "greedy sample refinement"),
        ("nodes", "dump sample nodes per sweep step"),
    ]:
        q = sub.add_parser(name, help=help_text)
        q.add_argument("--config", required=True, help="path to a JSON experiment config")
        q.add_argument("--seed", type=int, default=None, help="override the config seed")
        q.add_argument("--out", default=None, help="output directory (default: config out_dir)")
        q.add_argument("--threads", type=int, default=None,
                       help="worker threads for sweeps (default: MRI_THREADS or 1)")
        q.add_argument("--tol", type=float, default=None, help="override the config tolerance")
        if name == "estimate":
            q.add_argument("--interp", default=None, help="reuse a surrogate artifact instead of rebuilding")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("seed must be a nonnegative integer")
            cfg.seed = int(args.seed)
        out_dir = args.out if args.out is not None else cfg.out_dir
        os.makedirs(out_dir, exist_ok=True)
        threads = args.threads
        if threads is None:
            threads = int(os.environ.get("MRI_THREADS", "1"))
        if threads < 1:
            raise ConfigError("threads must be >= 1")
        if args.command == "build":
            return cmd_build(cfg, out_dir)
        if args.command == "sweep":
            return cmd_sweep(cfg, out_dir, threads)
        if args.command == "estimate":
            return cmd_estimate(cfg, out_dir, args.interp)
        if args.command == "greedy":
            return cmd_greedy(cfg, out_dir, args.tol)
        return cmd_nodes(cfg, out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SingularSystemError, AtPoleError, NodePointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
