"""Closed-form single-edge optima, achieving states, and product ratio bounds.

Two coefficient conventions coexist and are easy to mix up, so both get an
entry point:

* lemma level: H = alpha XX + beta YY + gamma ZZ (no identity), where
  OPT(H) = max(|alpha-beta|+gamma, |alpha+beta|-gamma) and
  OPT_prod(H) = max(|alpha|,|beta|,|gamma|);
* Heisenberg level: edge terms I - alpha XX - beta YY - gamma ZZ, whose
  product ratio bound plugs the negated coefficients into the lemma forms.

The Heisenberg-level bound is what reports quote.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EdgeOptimum",
    "edge_opt",
    "edge_opt_prod",
    "edge_opt_states",
    "product_ratio_bound",
]

_INV_SQRT2 = 1 / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class EdgeOptimum:
    """Closed-form optima of one edge with explicit achieving states.

    achieving_entangled is the two-qubit amplitude vector (a, b, c, d) over
    basis |00>, |01>, |10>, |11| attaining opt for alpha XX + beta YY +
    gamma ZZ; achieving_product is a pair of single-qubit amplitude pairs
    attaining opt_prod. ratio_bound is the Heisenberg-level product ratio
    bound for the same coefficient triple.
    """

    opt: float
    opt_prod: float
    ratio_bound: float
    achieving_entangled: np.ndarray
    achieving_product: tuple[np.ndarray, np.ndarray]


def edge_opt(alpha: float, beta: float, gamma: float) -> float:
    """max eigenvalue of alpha XX + beta YY + gamma ZZ."""
    return max(abs(alpha - beta) + gamma, abs(alpha + beta) - gamma)


def edge_opt_prod(alpha: float, beta: float, gamma: float) -> float:
    """best product-state value of alpha XX + beta YY + gamma ZZ."""
    return max(abs(alpha), abs(beta), abs(gamma))


def product_ratio_bound(alpha: float, beta: float, gamma: float) -> float:
    """Ratio bound (1+opt_prod)/(1+opt) for the edge I - aXX - bYY - gZZ.

    The identity-included optima are 1 + (lemma forms at negated
    coefficients); negating flips the sign of gamma inside edge_opt, giving
    the denominator max(|alpha-beta|-gamma, |alpha+beta|+gamma). For {0,1}^3
    triples with r active axes this is 2/(1+r).
    """
    num = 1 + edge_opt_prod(alpha, beta, gamma)
    den = 1 + max(abs(alpha - beta) - gamma, abs(alpha + beta) + gamma)
    return num / den


def edge_opt_states(alpha: float, beta: float, gamma: float) -> EdgeOptimum:
    """Optima together with the explicit states of the case analysis."""
    s = _INV_SQRT2
    phi_val = abs(alpha - beta) + gamma
    psi_val = abs(alpha + beta) - gamma
    if phi_val >= psi_val:
        # (|00> +/- |11>)/sqrt(2): values alpha-beta+gamma / beta-alpha+gamma
        ent = np.array([s, 0, 0, s if alpha >= beta else -s], dtype=complex)
    else:
        # (|01> +/- |10>)/sqrt(2): values alpha+beta-gamma / -alpha-beta-gamma
        ent = np.array([0, s, s if alpha >= -beta else -s, 0], dtype=complex)

    mags = (abs(alpha), abs(beta), abs(gamma))
    axis = mags.index(max(mags))
    if axis == 0:
        q1 = np.array([s, s], dtype=complex)
        q2 = np.array([s, s if alpha >= 0 else -s], dtype=complex)
    elif axis == 1:
        q1 = np.array([1j * s if beta >= 0 else -1j * s, s], dtype=complex)
        q2 = np.array([1j * s, s], dtype=complex)
    else:
        q1 = np.array([1, 0], dtype=complex)
        q2 = np.array([1, 0] if gamma >= 0 else [0, 1], dtype=complex)

    return EdgeOptimum(
        opt=edge_opt(alpha, beta, gamma),
        opt_prod=edge_opt_prod(alpha, beta, gamma),
        ratio_bound=product_ratio_bound(alpha, beta, gamma),
        achieving_entangled=ent,
        achieving_product=(q1, q2),
    )
