"""Tolerance settings, overridable through the ``HOBSERVE_TOL`` environment variable.

``HOBSERVE_TOL`` takes comma-separated ``name=value`` pairs, e.g.
``HOBSERVE_TOL="algebra=1e-8,spectral=1e-5"``.  A bare number sets ``algebra``.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    algebra: float = 1e-9       # entrywise agreement of exact algebraic results
    spectral: float = 1e-6      # class agreement of spectra
    annihilation: float = 1e-8  # relative residual of a(A_o) under left substitution
    agreement: float = 1e-8     # relative gain agreement between design methods
    rounded: float = 5e-3       # comparison with reference values given to 2-3 digits

    def as_dict(self) -> dict:
        return asdict(self)


def from_env(env=None) -> Tolerances:
    env = os.environ if env is None else env
    raw = env.get("HOBSERVE_TOL", "").strip()
    tol = Tolerances()
    if not raw:
        return tol
    names = {f.name for f in fields(Tolerances)}
    updates = {}
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" in part:
            key, value = (s.strip() for s in part.split("=", 1))
        else:
            key, value = "algebra", part
        if key not in names:
            raise ValueError(f"HOBSERVE_TOL: unknown tolerance {key!r}")
        v = float(value)
        if not v > 0:
            raise ValueError(f"HOBSERVE_TOL: {key} must be positive")
        updates[key] = v
    return replace(tol, **updates)
