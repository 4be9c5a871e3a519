"""Seeded random draws of family parameters and states."""
import numpy as np

from .family import FamilyParams


def unit_vector(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def ball_vector(rng, max_norm=1.0):
    return unit_vector(rng) * max_norm * rng.uniform() ** (1 / 3)


def random_params(rng, pure=False, parity=None, regular=False):
    """Draw ``FamilyParams``.

    ``pure`` gives unit Bloch vectors and 0 < p < 1; ``parity`` fixes n mod 2;
    ``regular`` keeps alpha*beta > 0.05 and r_z, s_z > -0.9 (implies ``pure``).
    """
    pure = pure or regular
    while True:
        r = unit_vector(rng) if pure else ball_vector(rng)
        s = unit_vector(rng) if pure else ball_vector(rng)
        alpha = rng.uniform()
        p = rng.uniform(1e-3, 1 - 1e-3) if pure else rng.uniform()
        n = int(rng.integers(0, 4))
        if parity is not None:
            n = 2 * (n // 2) + parity
        if regular and not (alpha * np.sqrt(1 - alpha**2) > 0.05 and r[2] > -0.9 and s[2] > -0.9):
            continue
        return FamilyParams(p, alpha, n, r, s)


def random_ket(rng, dim=8):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
