"""One-qubit channel families and the (map entropy, minimal output entropy) plane.

Pauli channels, depolarizing channels and the closed relation between their
Rényi-2 entropies, numerical minimal-output-entropy and maximal-output-norm
optimizers, the subadditive sandwich, the additivity-region predicate, and
the transformations preserving the minimal output entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .channels import Channel, InvalidChannelError, is_cptp, map_entropy
from .entropy import EntropyOrder, VON_NEUMANN, classical_entropy, vn_entropy
from .states import PAULI

__all__ = [
    "pauli_channel",
    "tetrahedron_edges",
    "depolarizing",
    "smin_from_smap",
    "min_output_entropy",
    "ScatterPoint",
    "scatter",
    "pauli_edge_curves",
    "SandwichReport",
    "sandwich_check",
    "renyi2_lower",
    "additivity_region",
    "preserve_smin",
    "max_output_2norm",
]

_SIGMA = (np.eye(2, dtype=complex),) + PAULI


def pauli_channel(p) -> Channel:
    """Bistochastic qubit channel sum p_i sigma_i rho sigma_i."""
    p = np.asarray(p, dtype=float)
    if p.shape != (4,) or p.min() < -1e-14 or abs(p.sum() - 1.0) > 1e-10:
        raise ValueError("need 4 nonnegative weights summing to 1")
    kraus = [math.sqrt(w) * s for w, s in zip(np.clip(p, 0, None), _SIGMA) if w > 0]
    return Channel(kraus)


def tetrahedron_edges() -> dict:
    """Parametrized weight families along the asymmetric-tetrahedron edges.

    Vertices A = (1,0,0,0), B = (1/2,1/2,0,0), C = (1/3,1/3,1/3,0),
    D = (1/4,1/4,1/4,1/4). AB are dephasing channels, BD classical
    bistochastic maps, AD and CD depolarizing families. Each entry maps
    t in [0, 1] to a weight vector.
    """
    verts = {
        "A": np.array([1.0, 0.0, 0.0, 0.0]),
        "B": np.array([0.5, 0.5, 0.0, 0.0]),
        "C": np.array([1 / 3, 1 / 3, 1 / 3, 0.0]),
        "D": np.array([0.25, 0.25, 0.25, 0.25]),
    }

    def edge(u, v):
        return lambda t: (1.0 - t) * verts[u] + t * verts[v]

    return {"AB": edge("A", "B"), "BD": edge("B", "D"), "AD": edge("A", "D"), "CD": edge("C", "D")}


def depolarizing(n: int, s: float) -> Channel:
    """Channel rho -> (1-s) rho + s I/n."""
    if not 0.0 <= s <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    kraus = [math.sqrt(1.0 - s) * np.eye(n, dtype=complex)] if s < 1.0 else []
    root = math.sqrt(s / n)
    if s > 0.0:
        for i in range(n):
            for j in range(n):
                e = np.zeros((n, n), dtype=complex)
                e[i, j] = root
                kraus.append(e)
    return Channel(kraus)


def smin_from_smap(s_map: float, n: int) -> float:
    """Minimal output Rényi-2 entropy of the depolarizing channel with map entropy s_map.

    -log((1 + n exp(-s_map))/(n + 1)): increases from 0 at s_map = 0 to
    log n at s_map = 2 log n.
    """
    if not -1e-12 <= s_map <= 2.0 * math.log(n) + 1e-12:
        raise ValueError(f"s_map = {s_map} outside [0, {2 * math.log(n)}]")
    return -math.log((1.0 + n * math.exp(-s_map)) / (n + 1.0))


# -- minimal output entropy ---------------------------------------------------


def _fibonacci_sphere(count: int) -> np.ndarray:
    """Deterministic quasi-uniform points on the unit sphere."""
    i = np.arange(count)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    z = 1.0 - 2.0 * (i + 0.5) / count
    r = np.sqrt(1.0 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _entropy_of_probs(p: np.ndarray, order: EntropyOrder) -> np.ndarray:
    p = np.clip(p, 0.0, 1.0)
    if order.is_limit:
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(p > 0, -p * np.log(np.where(p > 0, p, 1.0)), 0.0)
        return terms.sum(axis=-1)
    power = (np.where(p > 0, p, 0.0) ** order.q).sum(axis=-1)
    if order.kind == "renyi":
        return np.log(power) / (1.0 - order.q)
    return (1.0 - power) / (order.q - 1.0)


def _bloch_affine(phi: Channel) -> tuple[np.ndarray, np.ndarray]:
    """(W, kappa) with Bloch_out = W Bloch_in + kappa for a qubit channel."""
    if phi.in_dim != 2 or phi.out_dim != 2:
        raise ValueError("Bloch form needs a qubit channel")
    kappa = np.array([np.trace(phi.apply(np.eye(2) / 2) @ s).real for s in PAULI])
    w = np.empty((3, 3))
    for j, sj in enumerate(PAULI):
        out = phi.apply(sj / 2)
        for i, si in enumerate(PAULI):
            w[i, j] = np.trace(out @ si).real
    return w, kappa


def _qubit_pure(theta: float, phi_angle: float) -> np.ndarray:
    psi = np.array([math.cos(theta / 2), complex(math.cos(phi_angle), math.sin(phi_angle)) * math.sin(theta / 2)])
    return np.outer(psi, psi.conj())


def min_output_entropy(
    phi: Channel,
    order: EntropyOrder = VON_NEUMANN,
    grid: int = 20000,
    refine: bool = True,
    seed: int = 0,
) -> tuple[float, np.ndarray]:
    """Minimal output entropy over pure inputs and the minimizing state.

    The minimum of a concave function over states sits on the pure states.
    Qubits use a deterministic Fibonacci sphere grid (vectorized through the
    Bloch affine form) plus Nelder-Mead refinement; other dimensions use a
    seeded random probe set plus refinement of the best candidates.
    """
    n = phi.in_dim
    if n == 2:
        w, kappa = _bloch_affine(phi)

        def radius_entropy(r):
            out = w @ r + kappa
            rad = min(np.linalg.norm(out), 1.0)
            return float(_entropy_of_probs(np.array([(1 + rad) / 2, (1 - rad) / 2]), order))

        pts = _fibonacci_sphere(grid)
        out = pts @ w.T + kappa
        radii = np.linalg.norm(out, axis=1)
        probs = np.stack([(1 + radii) / 2, (1 - radii) / 2], axis=1)
        ent = _entropy_of_probs(probs, order)
        best = int(np.argmin(ent))
        value = float(ent[best])
        x, y, z = pts[best]
        theta0 = math.acos(min(max(z, -1.0), 1.0))
        phi0 = math.atan2(y, x)
        if refine:

            def objective(angles):
                th, ph = angles
                r = np.array(
                    [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]
                )
                return radius_entropy(r)

            res = scipy.optimize.minimize(
                objective, [theta0, phi0], method="Nelder-Mead",
                options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 400},
            )
            if res.fun < value:
                value = float(res.fun)
                theta0, phi0 = res.x
        return value, _qubit_pure(theta0, phi0)

    # generic small dimension: seeded probes + local refinement
    from .sampling import random_pure_state, stream_rng

    rng = stream_rng(seed, 0)
    candidates = []
    best_val, best_vec = math.inf, None
    for _ in range(max(grid // 10, 500)):
        v = random_pure_state(n, rng)
        val = vn_entropy(phi.apply(np.outer(v, v.conj())), order)
        candidates.append((val, v))
        if val < best_val:
            best_val, best_vec = val, v
    if refine:
        candidates.sort(key=lambda t: t[0])
        for val, v in candidates[:3]:
            x0 = np.concatenate([v.real, v.imag])

            def objective(x):
                vec = x[:n] + 1j * x[n:]
                norm = np.linalg.norm(vec)
                if norm < 1e-12:
                    return math.log(n)
                vec = vec / norm
                return vn_entropy(phi.apply(np.outer(vec, vec.conj())), order)

            res = scipy.optimize.minimize(
                objective, x0, method="Nelder-Mead",
                options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 2000},
            )
            if res.fun < best_val:
                best_val = float(res.fun)
                vec = res.x[:n] + 1j * res.x[n:]
                best_vec = vec / np.linalg.norm(vec)
    return best_val, np.outer(best_vec, best_vec.conj())


@dataclass(frozen=True)
class ScatterPoint:
    s_map: float
    s_min: float
    q: float
    tag: str


def scatter(channels, q: float, tags=None, grid: int = 20000) -> list[ScatterPoint]:
    """(S_q^map, S_q^min) pairs for a family of channels."""
    order = EntropyOrder.renyi(q) if q != 1.0 else VON_NEUMANN
    if tags is None:
        tags = [f"chan{i}" for i in range(len(channels))]
    points = []
    for phi, tag in zip(channels, tags):
        s_map = map_entropy(phi, order)
        s_min, _ = min_output_entropy(phi, order, grid=grid)
        points.append(ScatterPoint(s_map=s_map, s_min=max(s_min, 0.0), q=q, tag=tag))
    return points


def pauli_edge_curves(q: float, samples: int = 400) -> dict:
    """Sampled (s_map, s_min) curves along the AB, BD, AD tetrahedron edges.

    For Pauli channels both coordinates have closed forms: the Choi is
    diagonal in the Bell basis with the weight vector as spectrum, and the
    output at a Bloch vector r has radius |W r|.
    """
    order = EntropyOrder.renyi(q) if q != 1.0 else VON_NEUMANN
    edges = tetrahedron_edges()
    curves = {}
    for name in ("AB", "BD", "AD"):
        ts = np.linspace(0.0, 1.0, samples)
        pts = []
        for t in ts:
            w = edges[name](t)
            s_map = classical_entropy(w, order)
            # eta_i = w0 + w_i - (other two); minimal entropy at the largest |eta|
            eta = np.array(
                [
                    w[0] + w[1] - w[2] - w[3],
                    w[0] + w[2] - w[1] - w[3],
                    w[0] + w[3] - w[1] - w[2],
                ]
            )
            r = np.abs(eta).max()
            s_min = classical_entropy([(1 + r) / 2, (1 - r) / 2], order)
            pts.append((s_map, s_min))
        curves[name] = np.array(pts)
    return curves


# -- sandwich and additivity region -------------------------------------------


def _max_entangled(n: int) -> np.ndarray:
    vec = np.zeros(n * n, dtype=complex)
    vec[:: n + 1] = 1.0 / math.sqrt(n)
    return np.outer(vec, vec.conj())


@dataclass(frozen=True)
class SandwichReport:
    middle_vn: float
    middle_tsallis2: float
    lower_vn: float
    upper_vn: float
    lower_tsallis2: float
    upper_tsallis2: float
    renyi2_lower: float
    middle_renyi2: float

    @property
    def ok(self) -> bool:
        slack = 1e-9
        return (
            self.lower_vn <= self.middle_vn + slack
            and self.middle_vn <= self.upper_vn + slack
            and self.lower_tsallis2 <= self.middle_tsallis2 + slack
            and self.middle_tsallis2 <= self.upper_tsallis2 + slack
            and self.renyi2_lower <= self.middle_renyi2 + slack
        )


def sandwich_check(phi1: Channel, phi2: Channel) -> SandwichReport:
    """|S_map(1) - S_map(2)| <= S((Phi1 ⊗ Phi2)(phi+)) <= S_map(1) + S_map(2).

    Checked for the von Neumann and Tsallis-2 entropies (both subadditive),
    together with the Rényi-2 rewrite of the lower bound.
    """
    if phi1.in_dim != phi2.in_dim:
        raise ValueError("sandwich needs channels of equal dimension")
    state = phi1.tensor(phi2).apply(_max_entangled(phi1.in_dim))
    t2 = EntropyOrder.tsallis(2.0)
    r2 = EntropyOrder.renyi(2.0)
    m1v, m2v = map_entropy(phi1), map_entropy(phi2)
    m1t, m2t = map_entropy(phi1, t2), map_entropy(phi2, t2)
    return SandwichReport(
        middle_vn=vn_entropy(state),
        middle_tsallis2=vn_entropy(state, t2),
        lower_vn=abs(m1v - m2v),
        upper_vn=m1v + m2v,
        lower_tsallis2=abs(m1t - m2t),
        upper_tsallis2=m1t + m2t,
        renyi2_lower=renyi2_lower(phi1, phi2),
        middle_renyi2=vn_entropy(state, r2),
    )


def renyi2_lower(phi1: Channel, phi2: Channel) -> float:
    """-log(1 - |exp(-S2_map(1)) - exp(-S2_map(2))|), the Rényi-2 lower bound."""
    r2 = EntropyOrder.renyi(2.0)
    gap = abs(math.exp(-map_entropy(phi1, r2)) - math.exp(-map_entropy(phi2, r2)))
    return -math.log(1.0 - gap) if gap < 1.0 else math.inf


def additivity_region(phi1: Channel, phi2: Channel) -> bool:
    """Whether the map-entropy pair falls in the conjectured additivity region.

    1 - ((MN+1)/(MN)) |e^{-S1} - e^{-S2}| <= e^{-(S1+S2)} with S_i the
    Rényi-2 map entropies and N, M the channel dimensions.
    """
    r2 = EntropyOrder.renyi(2.0)
    s1 = map_entropy(phi1, r2)
    s2 = map_entropy(phi2, r2)
    return additivity_region_values(s1, s2, phi1.in_dim, phi2.in_dim)


def additivity_region_values(s1: float, s2: float, n: int, m: int) -> bool:
    nm = n * m
    return 1.0 - (nm + 1.0) / nm * abs(math.exp(-s1) - math.exp(-s2)) <= math.exp(-(s1 + s2)) + 1e-12


# -- minimal-output-entropy preserving transformations -------------------------


def _phi_ellipsoid(eta) -> np.ndarray:
    e1, e2, e3 = eta
    return np.array(
        [
            [1.0, 0.0, 0.0, 1.0 - e3],
            [0.0, (e1 + e2) / 2, (e1 - e2) / 2, 0.0],
            [0.0, (e1 - e2) / 2, (e1 + e2) / 2, 0.0],
            [0.0, 0.0, 0.0, e3],
        ],
        dtype=complex,
    )


def _phi_rotation(p: float) -> np.ndarray:
    s = math.sqrt(p * (1.0 - p))
    return np.array(
        [
            [p, -s, -s, 1.0 - p],
            [s, p, p - 1.0, -s],
            [s, p - 1.0, p, -s],
            [1.0 - p, s, s, p],
        ],
        dtype=complex,
    )


def _phi_direction(p: float, t: float, n: float) -> np.ndarray:
    lo = math.sqrt((1.0 - p) / p)
    hi = math.sqrt(p / (1.0 - p))
    return 0.5 * np.array(
        [
            [lo * t, -t, -t, hi * t],
            [1j * lo * n, -1j * n, -1j * n, 1j * hi * n],
            [-1j * lo * n, 1j * n, 1j * n, -1j * hi * n],
            [-lo * t, t, t, -hi * t],
        ],
        dtype=complex,
    )


def preserve_smin(phi1: Channel, eta, t: float, n: float, p: float, tol: float = 1e-9) -> Channel:
    """Transform a qubit channel without changing its minimal output entropy.

    Builds Phi1 · R · E(eta) · Rᵀ + D(t, n) where R rotates the north pole to
    the minimizer rho_p, E squeezes the Bloch ball onto an ellipsoid tangent
    at the north pole, and D tilts the ellipsoid axes. The caller supplies p,
    the diagonal parameter of Phi1's (real, positive off-diagonal) minimizer.
    Raises InvalidChannelError (with the Choi eigenvalue) if the requested
    parameters leave the CP cone.
    """
    if phi1.in_dim != 2 or phi1.out_dim != 2:
        raise ValueError("preserve_smin acts on qubit channels")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rot = _phi_rotation(p)
    s = phi1.superoperator @ rot @ _phi_ellipsoid(eta) @ rot.T
    if t != 0.0 or n != 0.0:
        # the axis tilt has 1/sqrt(p(1-p)) factors, so it needs an interior minimizer
        if not 0.0 < p < 1.0:
            raise ValueError("a nonzero axis tilt needs p strictly inside (0, 1)")
        s = s + _phi_direction(p, t, n)
    report = is_cptp(s, tol)
    if not report.ok:
        raise InvalidChannelError(
            f"transformed map is not CPTP (min Choi eigenvalue {report.min_choi_eig:.3e}, "
            f"TP residual {report.tp_residual:.3e})"
        )
    return Channel.from_superoperator(s, tol=tol)


# -- maximal output 2-norm ------------------------------------------------------


def max_output_2norm(phi: Channel, starts: int = 8, seed: int = 0, extra_starts=None) -> float:
    """Maximum over pure inputs of the largest singular value of the output.

    Multi-start Nelder-Mead over the pure-state manifold, seeded and
    deterministic; accurate to about 1e-6 for the desk-scale dimensions
    used here. extra_starts adds caller-chosen initial vectors (e.g. a
    product of single-channel maximizers) to the start list.
    """
    from .sampling import random_pure_state, stream_rng

    n = phi.in_dim

    def value(vec: np.ndarray) -> float:
        rho = np.outer(vec, vec.conj())
        return float(np.linalg.svd(phi.apply(rho), compute_uv=False)[0])

    rng = stream_rng(seed, 0)
    probes = [random_pure_state(n, rng) for _ in range(max(starts * 40, 320))]
    for i in range(n):
        e = np.zeros(n, dtype=complex)
        e[i] = 1.0
        probes.append(e)
    scored = sorted(((value(v), i) for i, v in enumerate(probes)), reverse=True)
    best = scored[0][0]
    start_vecs = [probes[i] for _, i in scored[:starts]]
    if extra_starts is not None:
        start_vecs.extend(np.asarray(v, dtype=complex) for v in extra_starts)
    for v in start_vecs:
        x0 = np.concatenate([v.real, v.imag])

        def objective(x):
            vec = x[:n] + 1j * x[n:]
            norm = np.linalg.norm(vec)
            if norm < 1e-12:
                return 0.0
            return -value(vec / norm)

        res = scipy.optimize.minimize(
            objective, x0, method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 1500, "maxfev": 2500},
        )
        best = max(best, -float(res.fun))
    return best
