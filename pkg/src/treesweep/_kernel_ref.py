"""Pure-numpy reference backend for stacked model evaluation.

Semantics of ``stack_eval`` (mirrored exactly by the compiled backend):
given M entries, entry m with coupling rows ``S_m`` (k_m x n), curvature
``H_m`` (k_m x k_m), linear part ``g_m``, cubic weight ``sigma_m >= 0``,
anchor ``a_m`` and constant ``c_m``, and a point ``y``:

    p_m   = S_m @ y,  d_m = p_m - a_m
    value = sum_m  0.5 p_m.H_m.p_m + g_m.p_m + sigma_m*||d_m||^3 + c_m
    grad  = sum_m  S_m^T (H_m p_m + g_m + 3 sigma_m ||d_m|| d_m)
    hess  = sum_m  S_m^T (H_m + 3 sigma_m (||d_m|| I + d_m d_m^T/||d_m||)) S_m

At ``d_m = 0`` the cubic contributions to gradient and Hessian vanish.
"""

from __future__ import annotations

import numpy as np


def stack_eval(S, hflat, hoff, poff, g, anchor, sigma, consts, y, order):
    """Evaluate the stacked composite at ``y``.

    order 0 returns (value, None, None); 1 adds the gradient; 2 the Hessian.
    """
    n = S.shape[1]
    m_count = poff.shape[0] - 1
    p = S @ y
    value = 0.0
    grad_p = np.zeros(p.shape[0]) if order >= 1 else None
    hess = np.zeros((n, n)) if order >= 2 else None
    for m in range(m_count):
        lo, hi = poff[m], poff[m + 1]
        k = hi - lo
        H = hflat[hoff[m]:hoff[m + 1]].reshape(k, k)
        pm = p[lo:hi]
        gm = g[lo:hi]
        Hp = H @ pm
        value += 0.5 * float(pm @ Hp) + float(gm @ pm) + consts[m]
        d = pm - anchor[lo:hi]
        nd = float(np.linalg.norm(d))
        sg = sigma[m]
        if sg > 0.0 and nd > 0.0:
            value += sg * nd ** 3
        if order >= 1:
            grad_p[lo:hi] = Hp + gm
            if sg > 0.0 and nd > 0.0:
                grad_p[lo:hi] += (3.0 * sg * nd) * d
        if order >= 2:
            A = H.copy()
            if sg > 0.0 and nd > 0.0:
                A += 3.0 * sg * (nd * np.eye(k) + np.outer(d, d) / nd)
            Sm = S[lo:hi]
            hess += Sm.T @ A @ Sm
    grad = S.T @ grad_p if order >= 1 else None
    return value, grad, hess
