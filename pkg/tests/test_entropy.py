import math

import numpy as np
import pytest

from chanent import entropy
from chanent.entropy import EntropyOrder
from chanent.matfun import kron
from chanent.sampling import dirichlet, hs_random_density, stream_rng
from chanent.states import pure_state


class TestClassicalEntropy:
    def test_uniform(self):
        for k in (2, 3, 5):
            assert abs(entropy.classical_entropy(np.full(k, 1 / k)) - math.log(k)) < 1e-12

    def test_delta(self):
        p = np.array([1.0, 0.0, 0.0])
        for order in (EntropyOrder(), EntropyOrder.renyi(2), EntropyOrder.tsallis(0.5)):
            assert abs(entropy.classical_entropy(p, order)) < 1e-12

    def test_q_to_one_limit_benign_vector(self):
        # Rényi gap is |q-1|·var(ln p)/2, below 1e-6 for a near-uniform
        # spectrum; the Tsallis gap carries an extra H²/2 and is of order
        # 1e-4 at the same offset
        p = np.array([0.27, 0.26, 0.24, 0.23])
        shannon = entropy.classical_entropy(p)
        for eps in (1e-4, -1e-4):
            val = entropy.classical_entropy(p, EntropyOrder.renyi(1 + eps))
            assert abs(val - shannon) < 1e-6
            val_t = entropy.classical_entropy(p, EntropyOrder.tsallis(1 + eps))
            assert abs(val_t - shannon) < 1e-3

    def test_q_to_one_taylor_rate(self):
        # first-order convergence: Rényi slope var(ln p)/2, Tsallis slope
        # E[ln² p]/2 = (var + H²)/2; factor-2 slack on each
        rng = stream_rng(20, 0)
        for _ in range(50):
            p = dirichlet(4, rng)
            p = p[p > 1e-12]
            shannon = entropy.classical_entropy(p)
            second = float((p * np.log(p) ** 2).sum())
            var = second - shannon**2
            for eps in (1e-4, -1e-4):
                val_r = entropy.classical_entropy(p, EntropyOrder.renyi(1 + eps))
                assert abs(val_r - shannon) <= abs(eps) * var + 1e-9
                val_t = entropy.classical_entropy(p, EntropyOrder.tsallis(1 + eps))
                assert abs(val_t - shannon) <= abs(eps) * second + 1e-9

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            EntropyOrder.renyi(0.0)


class TestVnEntropy:
    def test_pure(self):
        assert abs(entropy.vn_entropy(np.diag([1.0, 0.0]))) < 1e-12

    def test_maximally_mixed(self):
        assert abs(entropy.vn_entropy(np.eye(3) / 3) - math.log(3)) < 1e-12

    def test_matches_spectrum(self):
        rho = hs_random_density(4, stream_rng(20, 1))
        w = np.linalg.eigvalsh(rho)
        assert abs(entropy.vn_entropy(rho) - entropy.classical_entropy(np.clip(w, 0, None))) < 1e-10


class TestRelativeEntropy:
    def test_zero_on_identical(self):
        rho = hs_random_density(2, stream_rng(21, 0))
        for order in (EntropyOrder(), EntropyOrder.renyi(0.5), EntropyOrder.tsallis(1.5)):
            assert abs(entropy.relative_entropy(rho, rho, order)) < 1e-10

    def test_infinite_on_disjoint_support(self):
        a = np.diag([1.0, 0.0]).astype(complex)
        b = np.diag([0.0, 1.0]).astype(complex)
        assert entropy.relative_entropy(a, b) == math.inf

    def test_holevo_identity(self):
        # chi = sum p_i D(rho_i, rho_bar)
        from chanent.bounds import Ensemble, holevo

        rng = stream_rng(21, 1)
        probs = dirichlet(3, rng)
        sts = [hs_random_density(2, rng) for _ in range(3)]
        e = Ensemble(probs, sts)
        avg = e.average()
        lhs = sum(p * entropy.relative_entropy(s, avg) for p, s in zip(probs, sts))
        assert abs(lhs - holevo(e)) < 1e-10


class TestMutualInformation:
    def test_product(self):
        joint = np.outer([0.3, 0.7], [0.4, 0.6])
        assert abs(entropy.mutual_information_classical(joint)) < 1e-12

    def test_perfect_correlation(self):
        joint = np.eye(3) / 3
        assert abs(entropy.mutual_information_classical(joint) - math.log(3)) < 1e-12

    def test_bounds(self):
        rng = stream_rng(22, 0)
        for _ in range(100):
            joint = rng.random((3, 4))
            joint /= joint.sum()
            mi = entropy.mutual_information_classical(joint)
            hx = entropy.shannon(joint.sum(axis=1))
            hy = entropy.shannon(joint.sum(axis=0))
            assert -1e-10 <= mi <= min(hx, hy) + 1e-10


class TestQuantumMutualInformation:
    def test_product_state(self):
        rng = stream_rng(22, 1)
        a = hs_random_density(2, rng)
        b = hs_random_density(3, rng)
        assert abs(entropy.quantum_mutual_information(kron(a, b), (2, 3))) < 1e-10

    def test_bell_state(self):
        bell = pure_state(np.array([1, 0, 0, 1]) / math.sqrt(2))
        assert abs(entropy.quantum_mutual_information(bell, (2, 2)) - 2 * math.log(2)) < 1e-10

    def test_nonnegative(self):
        rng = stream_rng(22, 2)
        for _ in range(50):
            rho = hs_random_density(4, rng)
            assert entropy.quantum_mutual_information(rho, (2, 2)) >= -1e-10


class TestDistances:
    def test_identical_inputs(self):
        rho = hs_random_density(2, stream_rng(23, 0))
        assert entropy.entropic_distance(rho, rho) < 1e-5
        p = dirichlet(3, stream_rng(23, 1))
        assert entropy.transmission_distance(p, p) < 1e-10

    def test_orthogonal(self):
        a = np.diag([1.0, 0.0]).astype(complex)
        b = np.diag([0.0, 1.0]).astype(complex)
        assert abs(entropy.entropic_distance(a, b) - math.sqrt(math.log(2))) < 1e-10
        assert abs(entropy.transmission_distance([1, 0], [0, 1]) - math.sqrt(math.log(2))) < 1e-10

    def test_transmission_below_entropic_on_diagonals(self):
        # grid over 2-point and 3-point simplices
        for p1 in np.linspace(0.02, 0.98, 15):
            for q1 in np.linspace(0.02, 0.98, 15):
                p = np.array([p1, 1 - p1])
                q = np.array([q1, 1 - q1])
                dt = entropy.transmission_distance(p, q)
                de = entropy.entropic_distance(np.diag(p), np.diag(q))
                assert dt <= de + 1e-10
        rng = stream_rng(23, 2)
        for _ in range(200):
            p, q = dirichlet(3, rng), dirichlet(3, rng)
            dt = entropy.transmission_distance(p, q)
            de = entropy.entropic_distance(np.diag(p), np.diag(q))
            assert dt <= de + 1e-10

    def test_triangle_inequalities(self):
        rng = stream_rng(23, 3)
        for _ in range(300):
            r1, r2, r3 = (hs_random_density(2, rng) for _ in range(3))
            d = entropy.entropic_distance
            assert d(r1, r3) <= d(r1, r2) + d(r2, r3) + 1e-10
            p1, p2, p3 = (dirichlet(3, rng) for _ in range(3))
            t = entropy.transmission_distance
            assert t(p1, p3) <= t(p1, p2) + t(p2, p3) + 1e-10


class TestJsd:
    def test_general_weights(self):
        rng = stream_rng(24, 0)
        dists = [dirichlet(4, rng) for _ in range(3)]
        weights = dirichlet(3, rng)
        val = entropy.jsd(dists, weights)
        mix = sum(w * p for w, p in zip(weights, dists))
        oracle = entropy.shannon(mix) - sum(
            w * entropy.shannon(p) for w, p in zip(weights, dists)
        )
        assert abs(val - oracle) < 1e-12
        assert val >= -1e-12


class TestEntropyInequalities:
    def test_concavity(self):
        rng = stream_rng(24, 1)
        for _ in range(200):
            probs = dirichlet(3, rng)
            sts = [hs_random_density(3, rng) for _ in range(3)]
            mix = sum(p * s for p, s in zip(probs, sts))
            avg = sum(p * entropy.vn_entropy(s) for p, s in zip(probs, sts))
            assert entropy.vn_entropy(mix) >= avg - 1e-9

    def test_subadditivity(self):
        rng = stream_rng(24, 2)
        from chanent.matfun import partial_trace

        for _ in range(200):
            rho = hs_random_density(4, rng)
            s12 = entropy.vn_entropy(rho)
            s1 = entropy.vn_entropy(partial_trace(rho, (2, 2), 2))
            s2 = entropy.vn_entropy(partial_trace(rho, (2, 2), 1))
            assert s12 <= s1 + s2 + 1e-9

    def test_strong_subadditivity(self):
        rng = stream_rng(24, 3)
        from chanent.matfun import partial_trace

        for _ in range(100):
            rho = hs_random_density(8, rng)
            s123 = entropy.vn_entropy(rho)
            rho12 = partial_trace(rho, (4, 2), 2)
            rho23 = partial_trace(rho, (2, 4), 1)
            rho2 = partial_trace(rho12, (2, 2), 1)
            s = (
                entropy.vn_entropy(rho12)
                + entropy.vn_entropy(rho23)
                - s123
                - entropy.vn_entropy(rho2)
            )
            assert s >= -1e-9
