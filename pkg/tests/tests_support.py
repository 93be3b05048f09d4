"""Shared helpers for the test suite."""

import numpy as np

from chanent import davies
from chanent.matfun import matrix_exp


def random_thermal_block(rng, with_mu: bool = False) -> davies.DaviesQutritBlock:
    """A Davies qutrit zero-frequency block built from a valid thermal generator."""
    energies = np.sort(rng.random(3))[::-1]
    beta = 0.5 + rng.random()
    w = np.exp(-beta * energies)
    p = w / w.sum()
    gen = np.zeros((3, 3))
    gen[1, 0], gen[2, 0], gen[2, 1] = 0.05 + 0.4 * rng.random(3)
    gen[0, 1] = gen[1, 0] * p[0] / p[1]
    gen[0, 2] = gen[2, 0] * p[0] / p[2]
    gen[1, 2] = gen[2, 1] * p[1] / p[2]
    for j in range(3):
        gen[j, j] = -(gen[:, j].sum() - gen[j, j])
    f = matrix_exp(gen * (0.2 + rng.random()))
    mu = None
    if with_mu:
        diag = np.diag(f)
        s = rng.random()
        mu = s * np.array(
            [
                np.sqrt(diag[0] * diag[1]),
                np.sqrt(diag[0] * diag[2]),
                np.sqrt(diag[1] * diag[2]),
            ]
        )
    return davies.DaviesQutritBlock(f21=f[1, 0], f31=f[2, 0], f32=f[2, 1], p=p, mu=mu)
