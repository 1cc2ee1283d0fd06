"""Backend selection and packing for the hot composite-evaluation kernel.

The inner loop of every node solve evaluates a sum of quadratic+cubic models
composed with coupling matrices, plus an optional quadratic objective folded
in as an identity-coupled entry. ``ModelStack`` packs such a sum into flat
arrays once per solve; ``stack_eval`` is dispatched to the compiled Cython
backend when the extension built, else to the numpy reference backend.

Set ``TREESWEEP_PURE_PYTHON=1`` to force the reference backend.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernel_ref

_BACKENDS = {"python": _kernel_ref}
try:
    from . import _speedups  # type: ignore[attr-defined]

    _BACKENDS["cython"] = _speedups
except ImportError:  # extension not built; fall back silently
    _speedups = None

if os.environ.get("TREESWEEP_PURE_PYTHON"):
    BACKEND = "python"
else:
    BACKEND = "cython" if "cython" in _BACKENDS else "python"


def backend() -> str:
    """Name of the backend selected at import time."""
    return BACKEND


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_impl(name: str | None = None):
    """Backend module by name (default: the selected one)."""
    return _BACKENDS[BACKEND if name is None else name]


class ModelStack:
    """Flat-array packing of entries ``(S, H, g, sigma, anchor, const)``.

    Each entry contributes ``0.5 p'Hp + g'p + sigma*||p - anchor||^3 + const``
    with ``p = S y``. Entries with ``S = I`` embed plain quadratics.
    """

    def __init__(self, n: int, entries):
        self.n = int(n)
        s_rows, hflat, g_all, a_all = [], [], [], []
        poff, hoff = [0], [0]
        sig, consts = [], []
        for S, H, g, sigma, anchor, const in entries:
            S = np.ascontiguousarray(S, dtype=np.float64)
            k = S.shape[0]
            if S.shape[1] != self.n:
                raise ValueError(f"entry width {S.shape[1]} != {self.n}")
            s_rows.append(S)
            hflat.append(np.ascontiguousarray(H, dtype=np.float64).reshape(k * k))
            g_all.append(np.asarray(g, dtype=np.float64).reshape(k))
            a_all.append(np.asarray(anchor, dtype=np.float64).reshape(k))
            poff.append(poff[-1] + k)
            hoff.append(hoff[-1] + k * k)
            sig.append(float(sigma))
            consts.append(float(const))
        empty = np.zeros(0, dtype=np.float64)
        self.S = np.vstack(s_rows) if s_rows else np.zeros((0, self.n))
        self.S = np.ascontiguousarray(self.S, dtype=np.float64)
        self.hflat = np.concatenate(hflat) if hflat else empty
        self.g = np.concatenate(g_all) if g_all else empty
        self.anchor = np.concatenate(a_all) if a_all else empty
        self.poff = np.asarray(poff, dtype=np.intp)
        self.hoff = np.asarray(hoff, dtype=np.intp)
        self.sigma = np.asarray(sig, dtype=np.float64)
        self.consts = np.asarray(consts, dtype=np.float64)

    def eval(self, y: np.ndarray, order: int = 2, impl=None):
        """(value, grad, hess) at ``y``; grad/hess are None below ``order``."""
        if self.poff.shape[0] == 1:  # no entries
            n = self.n
            return (
                0.0,
                np.zeros(n) if order >= 1 else None,
                np.zeros((n, n)) if order >= 2 else None,
            )
        mod = get_impl() if impl is None else get_impl(impl)
        y = np.ascontiguousarray(y, dtype=np.float64)
        return mod.stack_eval(
            self.S, self.hflat, self.hoff, self.poff, self.g,
            self.anchor, self.sigma, self.consts, y, int(order),
        )
