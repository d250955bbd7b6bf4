"""Feasibility caps, overridable through STRUCTSPACE_* environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return int(raw)


@dataclass(frozen=True)
class Caps:
    """Resource limits for the expensive enumerative paths.

    max_order          largest group order a loader will materialize
    spin_cap           largest module cardinality p**d the spinning test accepts
    gl_scan_cap        largest matrix count p**(d*d) the GL(d, p) scan accepts
    eager_space_limit  point count above which closed families are kept lazy
    """

    max_order: int = 10_000
    spin_cap: int = 2 ** 16
    gl_scan_cap: int = 2 ** 16
    eager_space_limit: int = 20


def load_caps() -> Caps:
    """Read caps from the environment, falling back to the defaults."""
    return Caps(
        max_order=_env_int("STRUCTSPACE_MAX_ORDER", Caps.max_order),
        spin_cap=_env_int("STRUCTSPACE_SPIN_CAP", Caps.spin_cap),
        gl_scan_cap=_env_int("STRUCTSPACE_GL_SCAN_CAP", Caps.gl_scan_cap),
        eager_space_limit=_env_int("STRUCTSPACE_EAGER_SPACE_LIMIT", Caps.eager_space_limit),
    )


CAPS = load_caps()
