"""Holevo quantity and its upper/lower bounds: correlation, Gram, fidelity and
layered matrices, Lindblad-style comparisons, the estimation hierarchy, and the
two-pure-one-mixed qubit geometry.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .channels import Channel, correlation_from_kraus, ensemble_from_channel
from .entropy import EntropyOrder, VON_NEUMANN, relative_entropy, shannon, vn_entropy
from .matfun import hermitize, psd_sqrt, sqrt_product
from .states import assert_state, from_bloch, root_fidelity

__all__ = [
    "Ensemble",
    "BoundReport",
    "TripleGeometry",
    "holevo",
    "correlation_matrix",
    "correlation_from_ensemble",
    "theorem1_check",
    "info_gain_check",
    "concat_bound_check",
    "composition_map_entropy_lower",
    "LindbladReport",
    "lindblad_check",
    "sigma_min_two",
    "fidelity_matrix",
    "hierarchy",
    "holevo_mutual_check",
    "triple_from_params",
    "fidelity_sum_identity",
    "symmetric_triple_check",
    "symmetric_triple_eigenvalues",
    "conjecture_fuzz",
    "find_indefinite_gram",
]


@dataclass(frozen=True)
class Ensemble:
    """Probability vector paired with density matrices of a common dimension."""

    probs: np.ndarray
    states: list

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        states = [np.asarray(s, dtype=complex) for s in self.states]
        if len(probs) != len(states):
            raise ValueError("probs and states must have equal length")
        if probs.min(initial=0.0) < -1e-14 or abs(probs.sum() - 1.0) > 1e-10:
            raise ValueError("probs must be a probability vector")
        dim = states[0].shape[0]
        for s in states:
            if s.shape != (dim, dim):
                raise ValueError("all states must share a dimension")
        object.__setattr__(self, "probs", np.clip(probs, 0.0, None))
        object.__setattr__(self, "states", states)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]

    def average(self) -> np.ndarray:
        return sum(p * s for p, s in zip(self.probs, self.states))

    def validate(self, tol: float = 1e-10) -> "Ensemble":
        for s in self.states:
            assert_state(s, tol)
        return self


def holevo(e: Ensemble, order: EntropyOrder = VON_NEUMANN) -> float:
    """Holevo quantity of an ensemble.

    von Neumann: S(sum p rho) - sum p S(rho). Tsallis order a: the average
    relative Tsallis entropy to the mean. Rényi order q: the printed form
    log tr (sum p rho^q)^{1/q} / (q - 1).
    """
    if order.is_limit:
        return vn_entropy(e.average()) - sum(
            p * vn_entropy(s) for p, s in zip(e.probs, e.states)
        )
    if order.kind == "tsallis":
        avg = e.average()
        return sum(
            p * relative_entropy(s, avg, order) for p, s in zip(e.probs, e.states)
        )
    # Rényi
    q = order.q
    mix = sum(p * _psd_power(s, q) for p, s in zip(e.probs, e.states))
    val = float(np.trace(_psd_power(mix, 1.0 / q)).real)
    return math.log(val) / (q - 1.0)


def _psd_power(rho: np.ndarray, a: float) -> np.ndarray:
    w, v = np.linalg.eigh(hermitize(np.asarray(rho, dtype=complex)))
    w = np.clip(w, 0.0, None)
    pw = np.array([x**a if x > 1e-15 else 0.0 for x in w])
    return (v * pw) @ v.conj().T


def correlation_matrix(rho: np.ndarray, kraus, tol: float = 1e-9) -> np.ndarray:
    """Correlation matrix sigma_ij = tr K^i rho K^j† of a POVM acting on rho."""
    kraus = [np.asarray(k, dtype=complex) for k in kraus]
    n = kraus[0].shape[1]
    ident = sum(k.conj().T @ k for k in kraus)
    if np.abs(ident - np.eye(n)).max() > tol:
        raise ValueError("Kraus operators do not resolve the identity")
    return correlation_from_kraus(kraus, rho)


def correlation_from_ensemble(e: Ensemble, unitaries) -> np.ndarray:
    """Gram-type correlation matrix sqrt(p_i p_j) tr sqrt(rho_i) sqrt(rho_j) U_j† U_i."""
    us = [np.asarray(u, dtype=complex) for u in unitaries]
    if len(us) != len(e):
        raise ValueError("need one unitary per state")
    roots = [psd_sqrt(s) for s in e.states]
    k = len(e)
    sigma = np.empty((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            sigma[i, j] = math.sqrt(e.probs[i] * e.probs[j]) * np.trace(
                roots[i] @ roots[j] @ us[j].conj().T @ us[i]
            )
    return hermitize(sigma)


def theorem1_check(
    rho: np.ndarray, kraus, slack: float = 1e-9
) -> tuple[float, float, float, bool]:
    """The chain chi <= S(sigma) <= H(P) for a measurement ensemble.

    Returns (chi, s_sigma, h_p, ok).
    """
    sigma = correlation_matrix(rho, kraus)
    phi = Channel(kraus)
    e = ensemble_from_channel(phi, rho)
    chi = holevo(e)
    s_sigma = vn_entropy(sigma)
    h_p = shannon(np.diag(sigma).real / np.trace(sigma).real)
    ok = chi <= s_sigma + slack and s_sigma <= h_p + slack
    return chi, s_sigma, h_p, ok


def info_gain_check(rho: np.ndarray, kraus, slack: float = 1e-9) -> bool:
    """Average output entropy does not exceed the input entropy."""
    e = ensemble_from_channel(Channel(kraus), rho)
    avg = sum(p * vn_entropy(s) for p, s in zip(e.probs, e.states))
    return avg <= vn_entropy(rho) + slack


def concat_bound_check(
    phi1: Channel, phi2: Channel, rho: np.ndarray, slack: float = 1e-9
) -> tuple[bool, bool]:
    """Both concatenation bounds for the Holevo quantity of a two-step process.

    First: S(Phi2 Phi1(rho)) - sum p S(Phi2(rho_i)) <= S(Phi1(rho)) - sum p S(rho_i).
    Second: the same left side is bounded by the exchange entropy of the
    composed channel at rho. Returns (first_ok, second_ok).
    """
    e = ensemble_from_channel(phi1, rho)
    lhs = vn_entropy(phi2.apply(phi1.apply(rho))) - sum(
        p * vn_entropy(phi2.apply(s)) for p, s in zip(e.probs, e.states)
    )
    rhs1 = vn_entropy(phi1.apply(rho)) - sum(
        p * vn_entropy(s) for p, s in zip(e.probs, e.states)
    )
    composed = phi2.compose(phi1)
    sigma_ii = vn_entropy(correlation_from_kraus(composed.kraus, rho))
    return lhs <= rhs1 + slack, lhs <= sigma_ii + slack


def composition_map_entropy_lower(phi1: Channel, phi2: Channel) -> float:
    """Lower bound on the map entropy of phi2∘phi1 (always nonnegative).

    MAX{ S(Phi2 Phi1(rho*)) - sum p_i S(Phi2(rho_i)),  S_map(Phi1) + Delta }
    with rho* maximally mixed and Delta = S(Phi2 Phi1(rho*)) - S(Phi1(rho*)).
    """
    from .channels import map_entropy

    n = phi1.in_dim
    rho_star = np.eye(n, dtype=complex) / n
    e = ensemble_from_channel(phi1, rho_star)
    out = vn_entropy(phi2.apply(phi1.apply(rho_star)))
    first = out - sum(p * vn_entropy(phi2.apply(s)) for p, s in zip(e.probs, e.states))
    delta = out - vn_entropy(phi1.apply(rho_star))
    return max(first, map_entropy(phi1) + delta)


@dataclass(frozen=True)
class LindbladReport:
    s_in: float
    s_out: float
    s_exchange: float
    chi: float
    lower_slack: float  # S(sigma) - |S(rho') - S(rho)|
    upper_slack: float  # S(rho') + S(rho) - S(sigma)
    chi_slack: float  # S(sigma) + S(rho') - S(rho) - chi

    @property
    def ok(self) -> bool:
        return min(self.lower_slack, self.upper_slack, self.chi_slack) >= -1e-9


def lindblad_check(rho: np.ndarray, phi: Channel) -> LindbladReport:
    """Slack report for |S(rho')-S(rho)| <= S(sigma) <= S(rho')+S(rho) and the
    three-state bound chi <= S(sigma) + S(rho') - S(rho)."""
    from .channels import exchange_entropy

    s_in = vn_entropy(rho)
    s_out = vn_entropy(phi.apply(rho))
    s_ex = exchange_entropy(phi, rho)
    chi = holevo(ensemble_from_channel(phi, rho))
    return LindbladReport(
        s_in=s_in,
        s_out=s_out,
        s_exchange=s_ex,
        chi=chi,
        lower_slack=s_ex - abs(s_out - s_in),
        upper_slack=s_out + s_in - s_ex,
        chi_slack=s_ex + s_out - s_in - chi,
    )


def sigma_min_two(rho1: np.ndarray, rho2: np.ndarray, lam: float) -> np.ndarray:
    """Minimal-entropy 2×2 correlation matrix for a two-state ensemble."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must be in [0, 1]")
    off = math.sqrt(lam * (1.0 - lam)) * root_fidelity(rho1, rho2)
    return np.array([[lam, off], [off, 1.0 - lam]])


def _root_fidelity_matrix(e: Ensemble) -> np.ndarray:
    k = len(e)
    rf = np.ones((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            rf[i, j] = rf[j, i] = root_fidelity(e.states[i], e.states[j])
    return rf


def fidelity_matrix(e: Ensemble, variant: str = "G", b: float | None = None) -> np.ndarray:
    """Auxiliary k×k matrices bounding the Holevo quantity.

    variant "G": sqrt(p_i p_j) sqrt(F_ij) (the conjectured bound; PSD for k=3,
    possibly indefinite for k>3). "G/b": off-diagonals divided by b (>= 2 in
    general, >= sqrt(3) for qubits). "F-squared": sqrt(p_i p_j) F_ij, a bound
    for qubit or pure-state ensembles. "layered": root fidelities on the
    first off-diagonal, chained products beyond (a true correlation matrix,
    needs invertible states; singular ones are regularized).
    """
    p_outer = np.sqrt(np.outer(e.probs, e.probs))
    off = ~np.eye(len(e), dtype=bool)
    if variant == "G":
        return p_outer * _root_fidelity_matrix(e)
    if variant == "G/b":
        if b is None:
            b = 2.0 if e.dim > 2 else math.sqrt(3.0)
        min_b = math.sqrt(3.0) if e.dim == 2 else 2.0
        if b < min_b - 1e-12:
            raise ValueError(f"b must be at least {min_b} for dimension {e.dim}")
        g = p_outer * _root_fidelity_matrix(e)
        g[off] /= b
        return g
    if variant == "F-squared":
        if e.dim != 2 and not all(
            np.trace(s @ s).real > 1.0 - 1e-10 for s in e.states
        ):
            raise ValueError("F-squared variant needs qubit or pure ensembles")
        return p_outer * _root_fidelity_matrix(e) ** 2
    if variant == "layered":
        return _layered_matrix(e)
    raise ValueError(f"unknown variant {variant!r}")


def _layered_matrix(e: Ensemble, eps: float = 1e-9) -> np.ndarray:
    """Correlation matrix with root fidelities on the tridiagonal.

    sigma_ij for j > i+1 is the chained product
    tr sqrt(rho_j rho_{j-1}) rho_{j-1}^{-1} ... rho_{i+1}^{-1} sqrt(rho_{i+1} rho_i),
    using the square-root-of-a-product convention for each factor.
    """
    k = len(e)
    states = []
    for s in e.states:
        if np.linalg.eigvalsh(hermitize(s)).min() <= 1e-10:
            n = s.shape[0]
            s = (1 - eps) * s + eps * np.eye(n) / n
        states.append(s)
    rf = _root_fidelity_matrix(e)
    sigma = np.diag(e.probs).astype(complex)
    for i in range(k - 1):
        val = math.sqrt(e.probs[i] * e.probs[i + 1]) * rf[i, i + 1]
        sigma[i, i + 1] = sigma[i + 1, i] = val
    invs = [np.linalg.inv(s) for s in states]
    for i in range(k):
        for j in range(i + 2, k):
            chain = sqrt_product(states[j], states[j - 1])
            for m in range(j - 1, i, -1):
                chain = chain @ invs[m] @ sqrt_product(states[m], states[m - 1])
            val = math.sqrt(e.probs[i] * e.probs[j]) * np.trace(chain)
            sigma[i, j] = val
            sigma[j, i] = np.conj(val)
    return hermitize(sigma)


@dataclass
class BoundReport:
    """Named entropies/bounds for one ensemble, in nats.

    On the normalized scale ((x - chi)/(H(P) - chi)) chi maps to 0 and h_p
    to 1; `normalized` records which scale the numbers are on.
    """

    chi: float
    s_sigma: float
    s_gram: float
    s_fid: float
    s_fid_b: float
    s_fid_sq: float
    s_layered: float
    h_p: float
    normalized: bool = False
    violations: dict = field(default_factory=dict)

    _JSON_FIELDS = ("chi", "s_sigma", "s_gram", "s_fid", "s_fid_b", "s_fid_sq", "s_layered", "h_p")

    def to_json(self) -> str:
        data = {name: getattr(self, name) for name in self._JSON_FIELDS}
        data["normalized"] = self.normalized
        return json.dumps(data)


def hierarchy(e: Ensemble, b: float = math.sqrt(3.0), slack: float = 1e-9) -> BoundReport | None:
    """Normalized bound report for a k=3 qubit ensemble; None if H(P) = chi.

    Reported on the scale with chi at 0 and H(P) at 1. s_sigma and s_gram
    both refer to the canonical purification Gram matrix (identity
    unitaries).
    """
    if len(e) != 3 or e.dim != 2:
        raise ValueError("hierarchy is defined for k=3 qubit ensembles")
    chi = holevo(e)
    h_p = shannon(e.probs)
    if h_p - chi < 1e-10:
        return None
    gram = correlation_from_ensemble(e, [np.eye(2)] * 3)
    s_gram = vn_entropy(gram)
    s_fid = vn_entropy(fidelity_matrix(e, "G"))
    s_fid_b = vn_entropy(fidelity_matrix(e, "G/b", b=b))
    s_fid_sq = vn_entropy(fidelity_matrix(e, "F-squared"))
    s_layered = vn_entropy(fidelity_matrix(e, "layered"))
    norm = lambda x: (x - chi) / (h_p - chi)
    violations = {"conjecture": bool(chi > s_fid + slack)}
    return BoundReport(
        chi=0.0,
        s_sigma=norm(s_gram),
        s_gram=norm(s_gram),
        s_fid=norm(s_fid),
        s_fid_b=norm(s_fid_b),
        s_fid_sq=norm(s_fid_sq),
        s_layered=norm(s_layered),
        h_p=1.0,
        normalized=True,
        violations=violations,
    )


def holevo_mutual_check(
    e: Ensemble, povm_kraus, slack: float = 1e-9
) -> tuple[float, float, bool]:
    """Holevo theorem: accessible mutual information <= chi.

    The joint distribution is p(x, y) = p_x tr K^y† K^y rho_x.
    """
    from .entropy import mutual_information_classical

    kraus = [np.asarray(k, dtype=complex) for k in povm_kraus]
    n = e.dim
    ident = sum(k.conj().T @ k for k in kraus)
    if np.abs(ident - np.eye(n)).max() > 1e-9:
        raise ValueError("POVM does not resolve the identity")
    effects = [k.conj().T @ k for k in kraus]
    joint = np.array(
        [[p * np.trace(eff @ s).real for eff in effects] for p, s in zip(e.probs, e.states)]
    )
    joint = np.clip(joint, 0.0, None)
    joint /= joint.sum()
    mi = mutual_information_classical(joint)
    chi = holevo(e)
    return mi, chi, mi <= chi + slack


# -- two pure + one mixed qubit geometry --------------------------------------


@dataclass(frozen=True)
class TripleGeometry:
    """Two pure and one mixed qubit state with a prescribed barycenter.

    a is the Bloch length of the average state, b the length of the mixed
    state's Bloch vector, alpha the angle between them, and beta the
    rotation of the pure pair around the axis through their midpoint. The
    named points are Bloch vectors: B the mixed state, C the midpoint of
    the pure pair, D/E the unrotated pure pair, F/G the rotated pair (the
    states actually used).
    """

    a: float
    b: float
    alpha: float
    beta: float
    point_b: np.ndarray
    point_c: np.ndarray
    point_d: np.ndarray
    point_e: np.ndarray
    point_f: np.ndarray
    point_g: np.ndarray

    @property
    def states(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(rho1 pure, rho2 pure, rho3 mixed)."""
        return from_bloch(self.point_f), from_bloch(self.point_g), from_bloch(self.point_b)

    def ensemble(self) -> Ensemble:
        return Ensemble(np.full(3, 1.0 / 3.0), list(self.states))

    def pairwise_fidelities(self) -> tuple[float, float, float]:
        """(F12, F13, F23) between the two pure states and the mixed one.

        Uses the exact pure-state form (1 + x·y)/2: the first factor of each
        pair is pure by construction, so the mixed-state correction vanishes
        identically (evaluating sqrt(1 - |x|²) numerically would instead
        contribute a sqrt(machine epsilon) error).
        """
        f, g, bb = self.point_f, self.point_g, self.point_b
        return (
            0.5 * (1.0 + float(f @ g)),
            0.5 * (1.0 + float(f @ bb)),
            0.5 * (1.0 + float(g @ bb)),
        )


def _rotation_about(axis: np.ndarray, beta: float) -> np.ndarray:
    # Rodrigues formula
    k = axis / np.linalg.norm(axis)
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + math.sin(beta) * kx + (1 - math.cos(beta)) * (kx @ kx)


def triple_from_params(a: float, b: float, alpha: float, beta: float) -> TripleGeometry:
    """Construct the two-pure-one-mixed triple with average Bloch vector a(0,0,1).

    The mixed state sits at OB = b(0, sin alpha, cos alpha); the midpoint of
    the pure pair is OC = (3 OA - OB)/2, the pure states make the angle
    gamma = arccos |OC| with OC, and beta rotates them around OC.
    """
    if not (0.0 <= alpha <= math.pi and 0.0 <= beta <= math.pi):
        raise ValueError("angles must lie in [0, pi]")
    if not (0.0 <= b <= 1.0):
        raise ValueError("b must lie in [0, 1]")
    oc_len = 0.5 * math.sqrt(9 * a * a - 6 * a * b * math.cos(alpha) + b * b)
    if oc_len > 1.0 + 1e-12:
        raise ValueError(f"|OC| = {oc_len:.6f} exceeds 1: no pure pair exists")
    oa = np.array([0.0, 0.0, a])
    ob = b * np.array([0.0, math.sin(alpha), math.cos(alpha)])
    oc = 0.5 * (3 * oa - ob)
    oc_len = min(oc_len, 1.0)
    if oc_len > 1e-14:
        c_hat = oc / np.linalg.norm(oc)
    else:
        c_hat = np.array([0.0, 0.0, 1.0])
    # unit vector orthogonal to c_hat in the y-z plane (the plane of OA, OB)
    u0 = np.array([0.0, c_hat[2], -c_hat[1]])
    if np.linalg.norm(u0) < 1e-14:
        u0 = np.array([0.0, 1.0, 0.0])
    u0 /= np.linalg.norm(u0)
    # cos(gamma) = |OC| directly, avoiding an acos/cos round trip
    cos_g = oc_len
    sin_g = math.sqrt(max(1.0 - oc_len * oc_len, 0.0))
    od = cos_g * c_hat + sin_g * u0
    oe = cos_g * c_hat - sin_g * u0
    rot = _rotation_about(c_hat, beta) if oc_len > 1e-14 else _rotation_about(np.array([0.0, 0.0, 1.0]), beta)
    of, og = rot @ od, rot @ oe
    return TripleGeometry(
        a=a, b=b, alpha=alpha, beta=beta,
        point_b=ob, point_c=oc, point_d=od, point_e=oe, point_f=of, point_g=og,
    )


def fidelity_sum_identity(triple: TripleGeometry) -> float:
    """|F12 + F13 + F23 - (9 tr rhobar² - tr rho3² - 2)/2| for the triple."""
    f12, f13, f23 = triple.pairwise_fidelities()
    tr_bar = 0.5 * (1.0 + triple.a**2)
    tr_mixed = 0.5 * (1.0 + triple.b**2)
    return abs(f12 + f13 + f23 - 0.5 * (9 * tr_bar - tr_mixed - 2.0))


def symmetric_triple_eigenvalues(f12: float, f13: float, f23: float) -> np.ndarray:
    """Closed-form eigenvalues of the uniform-probability root-fidelity matrix.

    Roots of (1/3 - x)³ + p (1/3 - x) + q with p = -(F12+F13+F23)/9 and
    q = 2 sqrt(F12 F13 F23)/27, by the trigonometric cubic formula.
    """
    p = -(f12 + f13 + f23) / 9.0
    q = 2.0 * math.sqrt(max(f12 * f13 * f23, 0.0)) / 27.0
    if p >= 0.0:  # all fidelities zero: matrix is I/3
        return np.full(3, 1.0 / 3.0)
    amp = 2.0 * math.sqrt(-p / 3.0)
    arg = (3.0 * q / (2.0 * p)) * math.sqrt(3.0 / -p)
    theta = math.acos(min(max(arg, -1.0), 1.0)) / 3.0
    lams = [1.0 / 3.0 - amp * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
    return np.sort(lams)


def symmetric_triple_check(f: float, b: float, slack: float = 1e-9) -> tuple[float, float, bool]:
    """Two-pure-one-mixed bound chi <= S(G) on the symmetric (beta = alpha = 0) family.

    G has off-corner |2F - 1|/b; at b = 0 the entry is defined by the limit
    (F must equal 1/2 there). Returns (chi, s_G, ok).
    """
    if not 0.0 <= b <= 1.0:
        raise ValueError("b must lie in [0, 1]")
    if not 0.5 * (1 - b) - 1e-12 <= f <= 0.5 * (1 + b) + 1e-12:
        raise ValueError(f"F = {f} outside [{(1-b)/2}, {(1+b)/2}]")
    if b <= 1e-12:
        if abs(2 * f - 1.0) > 1e-12:
            raise ValueError("b = 0 requires F = 1/2")
        corner = 0.0
    else:
        corner = abs(2 * f - 1.0) / b
    g = np.array([[1.0, math.sqrt(f), corner], [math.sqrt(f), 1.0, math.sqrt(f)], [corner, math.sqrt(f), 1.0]]) / 3.0
    s_g = vn_entropy(g)
    a = (b + 2 * (2 * f - 1.0) / b) / 3.0 if b > 1e-12 else 0.0
    a = min(abs(a), 1.0)
    chi = vn_entropy(np.diag([(1 + a) / 2, (1 - a) / 2])) - vn_entropy(
        np.diag([(1 + b) / 2, (1 - b) / 2])
    ) / 3.0
    return chi, s_g, chi <= s_g + slack


# -- Monte Carlo drivers -------------------------------------------------------


def conjecture_fuzz(k: int, n: int, trials: int, seed: int) -> dict:
    """Count violations of chi <= S(root-fidelity matrix) on random ensembles."""
    from .sampling import random_ensemble, stream_rng

    violations = 0
    max_excess = -math.inf
    for t in range(trials):
        e = random_ensemble(k, n, stream_rng(seed, t))
        excess = holevo(e) - vn_entropy(fidelity_matrix(e, "G"))
        max_excess = max(max_excess, excess)
        if excess > 1e-9:
            violations += 1
    return {"trials": trials, "violations": violations, "max_excess": max_excess, "seed": seed}


def find_indefinite_gram(
    k: int = 4, trials: int = 1000, seed: int = 0, dim: int = 3
) -> tuple[np.ndarray, float] | None:
    """Search random pure ensembles for an indefinite root-fidelity matrix.

    Returns (matrix, min eigenvalue) of the first instance with an
    eigenvalue below -1e-10, or None.
    """
    from .sampling import random_pure_state, stream_rng
    from .states import pure_state

    for t in range(trials):
        rng = stream_rng(seed, t)
        states = [pure_state(random_pure_state(dim, rng)) for _ in range(k)]
        e = Ensemble(np.full(k, 1.0 / k), states)
        g = fidelity_matrix(e, "G")
        min_eig = float(np.linalg.eigvalsh(g).min())
        if min_eig < -1e-10:
            return g, min_eig
    return None
