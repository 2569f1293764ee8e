"""Fixed-step RK4 simulation of the plant/observer pair and of the error system.

Quaternion states are flattened to real vectors ``[w1, x1, y1, z1, w2, ...]``
and the dynamics are assembled once as a real affine map ``z' = M z + c``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DivergenceError
from .hmatrix import QMatrix
from .quat import Quat, qmul
from .realization import StateSpace

__all__ = ["SimConfig", "SimTrace", "rk4", "simulate_observer", "simulate_error", "write_csv", "decay_rate"]


@dataclass(frozen=True)
class SimConfig:
    t_end: float = 10.0
    dt: float = 1e-3
    u: Optional[Quat] = None
    x0: Optional[Sequence[Quat]] = None
    xhat0: Optional[Sequence[Quat]] = None

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_end < self.dt:
            raise ValueError("t_end must be at least one step")

    @property
    def steps(self) -> int:
        return int(round(self.t_end / self.dt))

    def input(self) -> Quat:
        return Quat() if self.u is None else Quat.coerce(self.u)


@dataclass
class SimTrace:
    """Time series; ``x``/``xhat`` have shape ``(steps + 1, n, 4)``, ``y`` ``(steps + 1, 4)``."""

    times: np.ndarray
    x: np.ndarray
    xhat: np.ndarray
    y: np.ndarray
    err_norm: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def error(self) -> np.ndarray:
        return self.x - self.xhat


def rk4(f: Callable[[float, np.ndarray], np.ndarray], z0: np.ndarray, dt: float, steps: int) -> np.ndarray:
    """Classical RK4; returns the ``(steps + 1, dim)`` state history."""
    out = np.empty((steps + 1, z0.size))
    z = np.array(z0, dtype=float)
    out[0] = z
    t = 0.0
    # overflow is reported as DivergenceError below, not as a warning
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps):
            k1 = f(t, z)
            k2 = f(t + 0.5 * dt, z + 0.5 * dt * k1)
            k3 = f(t + 0.5 * dt, z + 0.5 * dt * k2)
            k4 = f(t + dt, z + dt * k3)
            z = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(z)):
                raise DivergenceError(k + 1)
            t = (k + 1) * dt
            out[k + 1] = z
    return out


def _as_state(values, n: int) -> np.ndarray:
    if values is None:
        return np.zeros((n, 4))
    arr = np.array([Quat.coerce(v).to_array() for v in values])
    if arr.shape != (n, 4):
        raise ValueError(f"initial state must have {n} entries")
    return arr


def simulate_observer(sys: StateSpace, L: QMatrix, cfg: SimConfig) -> SimTrace:
    """Plant ``x' = A x + B u`` with Luenberger observer
    ``xhat' = A xhat + B u + L (y - C xhat - D u)``, ``y = C x + D u``.
    """
    n = sys.n
    if L.shape != (n, 1):
        raise ValueError(f"L must be {n}x1, got {L.shape}")
    u = cfg.input()
    A = sys.A.real_left()
    LC = (L @ sys.C).real_left()
    M = np.block([[A, np.zeros_like(A)], [LC, A - LC]])
    bu = qmul(sys.B.data[:, 0, :], u.to_array()).reshape(-1)
    c = np.concatenate([bu, bu])

    z0 = np.concatenate([_as_state(cfg.x0, n).reshape(-1), _as_state(cfg.xhat0, n).reshape(-1)])
    hist = rk4(lambda t, z: M @ z + c, z0, cfg.dt, cfg.steps)

    x = hist[:, : 4 * n].reshape(-1, n, 4)
    xhat = hist[:, 4 * n:].reshape(-1, n, 4)
    y = qmul(sys.C.data[0][None, :, :], x).sum(axis=1) + qmul(sys.D.to_array(), u.to_array())
    err = np.sqrt(np.sum((x - xhat) ** 2, axis=(1, 2)))
    times = np.arange(cfg.steps + 1) * cfg.dt
    return SimTrace(times=times, x=x, xhat=xhat, y=y, err_norm=err)


def simulate_error(A_obs: QMatrix, e0: Sequence[Quat], cfg: SimConfig) -> SimTrace:
    """``e' = A_obs e``; the trace stores ``e`` in ``x`` and zeros in ``xhat``."""
    if not A_obs.is_square:
        raise ValueError("error dynamics matrix must be square")
    n = A_obs.rows
    M = A_obs.real_left()
    hist = rk4(lambda t, z: M @ z, _as_state(e0, n).reshape(-1), cfg.dt, cfg.steps)
    e = hist.reshape(-1, n, 4)
    times = np.arange(cfg.steps + 1) * cfg.dt
    return SimTrace(
        times=times, x=e, xhat=np.zeros_like(e), y=np.zeros((len(times), 4)),
        err_norm=np.sqrt(np.sum(e ** 2, axis=(1, 2))), meta={"error_only": True},
    )


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(trace: SimTrace, path, error_only: bool = False) -> Path:
    """Write ``t, x{i}_{w|x|y|z}, xhat{i}_{...}, err_norm`` (or ``e{i}_*`` when error_only)."""
    path = Path(path)
    n = trace.x.shape[1]
    comps = "wxyz"
    if error_only:
        header = ["t"] + [f"e{i + 1}_{c}" for i in range(n) for c in comps] + ["err_norm"]
    else:
        header = (
            ["t"]
            + [f"x{i + 1}_{c}" for i in range(n) for c in comps]
            + [f"xhat{i + 1}_{c}" for i in range(n) for c in comps]
            + ["err_norm"]
        )
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for k, t in enumerate(trace.times):
            if error_only:
                row = [t, *trace.error[k].reshape(-1), trace.err_norm[k]]
            else:
                row = [t, *trace.x[k].reshape(-1), *trace.xhat[k].reshape(-1), trace.err_norm[k]]
            w.writerow([_fmt(v) for v in row])
    return path


def decay_rate(times: np.ndarray, err_norm: np.ndarray, t_from: float, t_to: float) -> float:
    """Least-squares slope of ``-log(err_norm)`` over ``[t_from, t_to]``."""
    mask = (times >= t_from - 1e-12) & (times <= t_to + 1e-12) & (err_norm > 0)
    slope, _ = np.polyfit(times[mask], np.log(err_norm[mask]), 1)
    return float(-slope)
