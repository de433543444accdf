"""Floating-point density-matrix sampler for necessity checks.

Random mixed states of prescribed rank are drawn as GG*/tr(GG*) with G a
complex Gaussian rectangle, margins come from partial traces, and spectra
from a cyclic Jacobi eigensolver.  Every generated inequality must hold on
every sampled state; the report records the worst slack seen.

Randomness: PCG64 (O'Neill's permuted congruential generator, the 64-bit
variant shipped by numpy) seeded through SeedSequence, which gives
splittable per-trial streams.  Normals use Box-Muller on the raw uniforms
so the byte stream is reproducible across platforms.

The Jacobi sweep is the only hot loop; it is compiled with numba when
available and falls back to the identical pure-Python version when the
QMARGINAL_NO_NUMBA environment variable is set (or numba is missing).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .engine import InequalitySystem, MarginalInequality
from .spectra import SystemFormat

HERMITIAN_TOL = 1e-12
OFFDIAG_TOL = 1e-13
RANK_TOL = 1e-8


def _use_numba() -> bool:
    if os.environ.get("QMARGINAL_NO_NUMBA"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _jacobi_sweeps(a):
    """Cyclic Jacobi for a Hermitian matrix, in place; returns the matrix.

    Each rotation zeroes one off-diagonal pair; sweeps repeat until the
    off-diagonal Frobenius norm drops below OFFDIAG_TOL.
    """
    n = a.shape[0]
    for _ in range(60):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if math.sqrt(2.0 * off) < OFFDIAG_TOL:
            break
        for p in range(n):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = 0.5 * math.atan2(2.0 * mag, aqq - app)
                c = math.cos(theta)
                s = math.sin(theta)
                # unitary U: U[p,p]=c, U[p,q]=s, U[q,p]=-s*conj(phase),
                # U[q,q]=c*conj(phase); apply A <- U* A U
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s * np.conj(phase) * aiq
                    a[i, q] = s * aip + c * np.conj(phase) * aiq
                for i in range(n):
                    api = a[p, i]
                    aqi = a[q, i]
                    a[p, i] = c * api - s * phase * aqi
                    a[q, i] = s * api + c * phase * aqi
    return a


if _use_numba():
    import numba

    _jacobi_kernel = numba.njit(cache=True)(_jacobi_sweeps)
else:
    _jacobi_kernel = _jacobi_sweeps


def hermitian_spectrum(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, descending, by cyclic Jacobi."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    a = _jacobi_kernel(m.copy())
    values = np.sort(np.real(np.diag(a)))[::-1]
    return values


def random_density(dim: int, rank: int, seed) -> np.ndarray:
    """Random density matrix GG*/tr with G a dim x rank complex Gaussian.

    `seed` may be an integer or a numpy SeedSequence; a fixed seed gives a
    bit-identical matrix.
    """
    if not 1 <= rank <= dim:
        raise ValueError(f"rank {rank} out of range for dimension {dim}")
    g = _complex_normals(dim * rank, seed).reshape(dim, rank)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _complex_normals(count: int, seed) -> np.ndarray:
    """Standard complex normals via Box-Muller on PCG64 uniforms."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    bits = np.random.Generator(np.random.PCG64(seed))
    u1 = bits.random(count)
    u2 = bits.random(count)
    u3 = bits.random(count)
    u4 = bits.random(count)
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    re = radius * np.cos(2.0 * math.pi * u2)
    radius = np.sqrt(-2.0 * np.log1p(-u3))
    im = radius * np.cos(2.0 * math.pi * u4)
    return (re + 1j * im) / math.sqrt(2.0)


def partial_trace(rho: np.ndarray, format: SystemFormat,
                  keep: Sequence[int]) -> np.ndarray:
    """Trace out all factors not listed in keep."""
    dims = format.dims
    total = 1
    for d in dims:
        total *= d
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (total, total):
        raise ValueError(
            f"state dimension {rho.shape} does not match format {dims}")
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must be nonempty")
    if any(c < 0 or c >= len(dims) for c in keep):
        raise ValueError("keep indices out of range")
    tensor = rho.reshape(dims + dims)
    r = len(dims)
    for c in reversed(range(r)):
        if c in keep:
            continue
        live = tensor.ndim // 2
        tensor = np.trace(tensor, axis1=c, axis2=c + live)
        # later kept axes shift down by one; keep is sorted so only the
        # indices above c move
        keep = [k if k < c else k - 1 for k in keep]
    side = 1
    for k in range(tensor.ndim // 2):
        side *= tensor.shape[k]
    return tensor.reshape(side, side)


def numerical_rank(matrix: np.ndarray) -> int:
    return int(np.sum(hermitian_spectrum(matrix) > RANK_TOL))


@dataclass
class StateSample:
    seed: object
    format: SystemFormat
    rank: int
    composite_spectrum: np.ndarray
    margin_spectra: list[np.ndarray]


def sample_state(format: SystemFormat, rank: int, seed) -> StateSample:
    dim = format.composite_dim
    rho = random_density(dim, rank, seed)
    margins = [partial_trace(rho, format, [c]) for c in range(format.rank)]
    return StateSample(
        seed=seed, format=format, rank=rank,
        composite_spectrum=hermitian_spectrum(rho),
        margin_spectra=[hermitian_spectrum(m) for m in margins])


def _float_slack(ineq: MarginalInequality, sample: StateSample) -> float:
    rhs = float(np.dot(ineq.composite_coeffs, sample.composite_spectrum))
    lhs = 0.0
    for block, spec in zip(ineq.component_coeffs, sample.margin_spectra):
        lhs += float(np.dot(block, spec))
    return rhs - lhs


def necessity_trial(system: InequalitySystem, format: SystemFormat,
                    trials: int, seed: int, tol: float = 1e-9) -> dict:
    """Evaluate every inequality on `trials` random states.

    Ranks cycle through 1..dim so pure and nearly-degenerate states are
    covered.  Returns a JSON-ready report; the contract is that the maximum
    violation (negative slack) stays within tol.
    """
    if system.format != format:
        raise ValueError("system format does not match")
    dim = format.composite_dim
    root = np.random.SeedSequence(seed)
    streams = root.spawn(trials)
    worst = [math.inf] * len(system.inequalities)
    worst_trial = [-1] * len(system.inequalities)
    threads = int(os.environ.get("QMARGINAL_THREADS", "1") or "1")

    def run(t: int) -> list[float]:
        sample = sample_state(format, t % dim + 1, streams[t])
        return [_float_slack(iq, sample) for iq in system.inequalities]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(run, range(trials)))
    else:
        rows = [run(t) for t in range(trials)]
    for t, slacks in enumerate(rows):
        for i, s in enumerate(slacks):
            if s < worst[i]:
                worst[i] = s
                worst_trial[i] = t
    max_violation = max(0.0, -min(worst)) if worst else 0.0
    return {
        "format": "x".join(str(d) for d in format.dims),
        "trials": trials,
        "seed": seed,
        "generator": "PCG64",
        "tolerance": tol,
        "inequalities": len(system.inequalities),
        "max_violation": max_violation,
        "compatible": max_violation <= tol,
        "worst_slack_per_inequality": [
            {"index": i, "slack": worst[i], "trial": worst_trial[i]}
            for i in range(len(worst))],
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2)
