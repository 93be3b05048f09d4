"""Classical and quantum entropies, relative entropies, mutual information, distances.

Everything is computed in nats; converting to bits is left to the output
layer. The 0·log 0 = 0 convention applies throughout, and eigenvalues below
SUPPORT_CUTOFF count as outside the support for relative entropies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matfun import hermitize
from .states import root_fidelity

__all__ = [
    "EntropyOrder",
    "VON_NEUMANN",
    "classical_entropy",
    "shannon",
    "vn_entropy",
    "relative_entropy",
    "mutual_information_classical",
    "quantum_mutual_information",
    "jsd",
    "entropic_distance",
    "transmission_distance",
]

SUPPORT_CUTOFF = 1e-12


@dataclass(frozen=True)
class EntropyOrder:
    """Entropy family selector: kind in {"shannon", "renyi", "tsallis"} and order q > 0.

    q = 1 routes renyi/tsallis to the Shannon/von Neumann limit.
    """

    kind: str = "shannon"
    q: float = 1.0

    def __post_init__(self):
        if self.kind not in ("shannon", "renyi", "tsallis"):
            raise ValueError(f"unknown entropy kind {self.kind!r}")
        if self.q <= 0:
            raise ValueError("entropy order q must be positive")

    @classmethod
    def renyi(cls, q: float) -> "EntropyOrder":
        return cls("renyi", q)

    @classmethod
    def tsallis(cls, q: float) -> "EntropyOrder":
        return cls("tsallis", q)

    @property
    def is_limit(self) -> bool:
        return self.kind == "shannon" or self.q == 1.0


VON_NEUMANN = EntropyOrder()


def _clean_probs(p, tol: float = 1e-10) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if p.min(initial=0.0) < -1e-14:
        raise ValueError(f"negative probability {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    if abs(p.sum() - 1.0) > tol:
        raise ValueError(f"probabilities sum to {p.sum()}, not 1")
    return p


def shannon(p) -> float:
    """Shannon entropy -sum p log p in nats."""
    p = _clean_probs(p)
    p = p[p > 0.0]
    return float(-(p * np.log(p)).sum())


def classical_entropy(p, order: EntropyOrder = VON_NEUMANN) -> float:
    """Shannon / Rényi / Tsallis entropy of a probability vector, in nats.

    Weights below SUPPORT_CUTOFF are treated as exact zeros; this matters
    for orders q < 1 where numerical noise would otherwise contribute.
    """
    p = _clean_probs(p)
    p = p[p > SUPPORT_CUTOFF]
    if order.is_limit:
        return float(-(p * np.log(p)).sum())
    power = float((p**order.q).sum())
    if order.kind == "renyi":
        return math.log(power) / (1.0 - order.q)
    return (1.0 - power) / (order.q - 1.0)


def vn_entropy(rho: np.ndarray, order: EntropyOrder = VON_NEUMANN) -> float:
    """Entropy of a density matrix = classical entropy of its spectrum."""
    w = np.linalg.eigvalsh(hermitize(np.asarray(rho, dtype=complex)))
    w = np.clip(w, 0.0, None)
    s = w.sum()
    if s > 0:
        w = w / s
    return classical_entropy(w, order)


def _log_psd(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh(hermitize(np.asarray(rho, dtype=complex)))
    w = np.clip(w, 0.0, None)
    return w, v, v @ np.diag([math.log(x) if x > SUPPORT_CUTOFF else 0.0 for x in w]) @ v.conj().T


def _power_psd(rho: np.ndarray, a: float) -> np.ndarray:
    w, v = np.linalg.eigh(hermitize(np.asarray(rho, dtype=complex)))
    w = np.clip(w, 0.0, None)
    pw = np.array([x**a if x > SUPPORT_CUTOFF else 0.0 for x in w])
    return (v * pw) @ v.conj().T


def relative_entropy(
    rho1: np.ndarray, rho2: np.ndarray, order: EntropyOrder = VON_NEUMANN
) -> float:
    """Relative entropy D(rho1 || rho2); von Neumann, Tsallis or Rényi version.

    Returns math.inf when the support of rho1 is not contained in the
    support of rho2 (von Neumann case).
    """
    rho1 = np.asarray(rho1, dtype=complex)
    rho2 = np.asarray(rho2, dtype=complex)
    if rho1.shape != rho2.shape:
        raise ValueError("states must share a dimension")
    if order.is_limit:
        w2, v2, log2 = _log_psd(rho2)
        # support check: weight of rho1 on the kernel of rho2
        kernel = v2[:, w2 <= SUPPORT_CUTOFF]
        if kernel.size and np.trace(kernel.conj().T @ rho1 @ kernel).real > 1e-10:
            return math.inf
        _, _, log1 = _log_psd(rho1)
        return float(np.trace(rho1 @ (log1 - log2)).real)
    q = order.q
    cross = float(np.trace(_power_psd(rho1, q) @ _power_psd(rho2, 1.0 - q)).real)
    if order.kind == "tsallis":
        # (tr rho1^q rho2^{1-q} - 1)/(q - 1): recovers the von Neumann
        # relative entropy as q -> 1 and is nonnegative
        return (cross - 1.0) / (q - 1.0)
    if cross <= 0.0:
        return math.inf
    return math.log(cross) / (q - 1.0)


def mutual_information_classical(joint: np.ndarray) -> float:
    """H(X) + H(Y) - H(X,Y) of a joint probability matrix."""
    joint = np.asarray(joint, dtype=float)
    if joint.min(initial=0.0) < -1e-14:
        raise ValueError("joint distribution has a negative entry")
    joint = np.clip(joint, 0.0, None)
    if abs(joint.sum() - 1.0) > 1e-10:
        raise ValueError("joint distribution must sum to 1")
    hx = shannon(joint.sum(axis=1))
    hy = shannon(joint.sum(axis=0))
    hxy = shannon(joint.ravel())
    return hx + hy - hxy


def quantum_mutual_information(rho12: np.ndarray, dims: tuple[int, int]) -> float:
    """S(rho1) + S(rho2) - S(rho12) of a bipartite state."""
    from .matfun import partial_trace

    d1, d2 = dims
    rho12 = np.asarray(rho12, dtype=complex)
    if rho12.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"state shape {rho12.shape} does not match dims {dims}")
    s1 = vn_entropy(partial_trace(rho12, dims, 2))
    s2 = vn_entropy(partial_trace(rho12, dims, 1))
    return s1 + s2 - vn_entropy(rho12)


def jsd(dists, weights=None) -> float:
    """Jensen-Shannon divergence of k distributions with weights alpha_nu.

    H(sum alpha_nu P_nu) - sum alpha_nu H(P_nu); uniform weights by default.
    """
    dists = [np.asarray(p, dtype=float) for p in dists]
    k = len(dists)
    if weights is None:
        weights = np.full(k, 1.0 / k)
    weights = _clean_probs(weights)
    mix = sum(a * p for a, p in zip(weights, dists))
    return shannon(mix) - sum(a * shannon(p) for a, p in zip(weights, dists))


def entropic_distance(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """sqrt of the entropy of the minimal 2×2 correlation matrix at lambda = 1/2."""
    f = root_fidelity(rho1, rho2)
    sigma = np.array([[1.0, f], [f, 1.0]]) / 2.0
    return math.sqrt(max(vn_entropy(sigma), 0.0))


def transmission_distance(p, q) -> float:
    """sqrt of the Jensen-Shannon divergence between two distributions."""
    return math.sqrt(max(jsd([np.asarray(p, float), np.asarray(q, float)]), 0.0))
