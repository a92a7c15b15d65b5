"""Conformal capacity, equipotential curves and quasiconformal distortion bounds."""

import json as _json

from ._capq import (
    BETA0,
    CapqError,
    Field,
    MapChain,
    bound,
    bound_kinds,
    collar,
    elliptic_K,
    elliptic_K_prime,
    groetzsch_mu,
    jacobi_sn,
    normalize_spec,
    radial_distance,
    solve_modulus_equation,
    teichmuller_ring_modulus,
)
from ._capq import analyze as _analyze
from ._capq import solve as _solve

__all__ = [
    "BETA0",
    "CapqError",
    "Field",
    "MapChain",
    "analyze",
    "bound",
    "bound_kinds",
    "collar",
    "elliptic_K",
    "elliptic_K_prime",
    "groetzsch_mu",
    "jacobi_sn",
    "normalize_spec",
    "radial_distance",
    "solve",
    "solve_modulus_equation",
    "teichmuller_ring_modulus",
]


def _spec_text(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def solve(spec, tolerance=1e-10):
    """Solve the extremal potential. `spec` is a spec dict or JSON string."""
    return _solve(_spec_text(spec), tolerance)


def analyze(spec, levels=(), compare=()):
    """Run the full pipeline and return the report as a dict."""
    return _json.loads(_analyze(_spec_text(spec), list(levels), list(compare)))
