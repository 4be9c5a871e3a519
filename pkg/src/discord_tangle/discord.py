"""Normalized geometric discord of the family: closed form and brute-force oracle."""
from dataclasses import dataclass
import math

import numpy as np

from .cxmat import I2, PAULI, check_density, hs_norm_sq
from .family import overlap

CLAMP_TOL = 1e-10
GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class DiscordBreakdown:
    x_norm_sq: float
    t_norm_sq: float
    E: float
    F: float
    G: float
    lambda_max: float
    discord: float


def _branch_sums(params):
    p = params.p
    r = np.asarray(params.r)
    s = np.asarray(params.s)
    u = p * r - (1 - p) * s
    return float(u @ u), float(s @ s), float(s @ u)


def efg(params):
    """Nonzero block entries ``(E, F, G)`` of ``x x^T + T T^T`` for a family state."""
    p, a, b = params.p, params.alpha, params.beta
    ov = overlap(params)
    uu, ss, su = _branch_sums(params)
    q = 2 * p - 1
    k = uu + q * q
    m = su + q
    E = 4 * a * a * b * b * k + 4 * ov * ov * (1 - p) ** 2 * (ss + 1) + 8 * ov * (1 - p) * a * b * m
    F = 2 * a * b * (a * a - b * b) * k + 2 * (a * a - b * b) * ov * (1 - p) * m
    G = (a * a - b * b) ** 2 * k
    return E, F, G


def norms_closed(params):
    """``(|x|^2, |T|^2)`` expressed through the overlap <chi1|chi2>."""
    p, a, b = params.p, params.alpha, params.beta
    ov = overlap(params)
    uu, ss, su = _branch_sums(params)
    q = 2 * p - 1
    x2 = 4 * (1 - p) ** 2 * ov * ov + 8 * a * b * q * (1 - p) * ov + q * q
    t2 = uu + 4 * ov * ov * (1 - p) ** 2 * ss + 8 * ov * (1 - p) * a * b * su
    return x2, t2


def lambda_max_closed(E, F, G):
    return 0.5 * ((E + G) + math.sqrt((E - G) ** 2 + 4 * F * F))


def geometric_discord_closed(params):
    x2, t2 = norms_closed(params)
    E, F, G = efg(params)
    lam = lambda_max_closed(E, F, G)
    d = 0.5 * (x2 + t2 - lam)
    if d < 0:
        if d < -CLAMP_TOL:
            raise ValueError(f"closed-form discord {d:.3g} is negative; parameters outside the family?")
        d = 0.0
    return DiscordBreakdown(x2, t2, E, F, G, lam, d)


def is_classical(params, tol=1e-9):
    return geometric_discord_closed(params).discord < tol


def _directions(u, phi):
    u = np.clip(u, -1.0, 1.0)
    st = np.sqrt(1.0 - u * u)
    return np.stack([st * np.cos(phi), st * np.sin(phi), u], axis=-1)


def _dephasing_kernel(rho):
    """Return ``f(e)`` evaluating the dephasing distance for a batch of axes ``e``."""
    # sum_k P_k rho P_k = (rho + E rho E) / 2 with E = (e.sigma) x I, bilinear in e
    ops = [np.kron(si, I2) for si in PAULI]
    K = np.array([[oi @ rho @ oj for oj in ops] for oi in ops]).reshape(9, 16)
    flat = rho.reshape(1, 16)

    def f(e):
        e = np.atleast_2d(e)
        ee = (e[:, :, None] * e[:, None, :]).reshape(-1, 9)
        diff = 0.5 * (flat - ee @ K)
        return np.sum(diff.real**2 + diff.imag**2, axis=1)

    return f


def dephasing_distance(rho, e):
    """``|rho - sum_k (P_k x I) rho (P_k x I)|^2`` for projectors P_k = (I +- e.sigma)/2 on A.

    ``e`` has shape ``(m, 3)`` (unit vectors); returns shape ``(m,)``.
    """
    return _dephasing_kernel(np.asarray(rho, dtype=np.complex128))(e)


def _golden_min(f, lo, hi, tol=1e-9, max_iter=200):
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def _tangent_basis(e):
    helper = np.array([1.0, 0.0, 0.0]) if abs(e[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    t1 = np.cross(e, helper)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(e, t1)


def _refine(f, e0, f0, step, rounds):
    """Powell-style golden-section line searches in a tangent chart around ``e0``."""
    t1, t2 = _tangent_basis(e0)

    def chart(z):
        v = e0 + z[0] * t1 + z[1] * t2
        return v / np.linalg.norm(v)

    def value(z):
        return float(f(chart(z))[0])

    z = np.zeros(2)
    best = f0
    dirs = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    for _ in range(rounds):
        start = z.copy()
        for k, d in enumerate(dirs):
            lam, val = _golden_min(lambda s: value(z + s * d), -step, step)
            if val < best:
                best, z = val, z + lam * d
        move = z - start
        norm = np.linalg.norm(move)
        if norm > 1e-14:
            d = move / norm
            lam, val = _golden_min(lambda s: value(z + s * d), -step, step)
            if val < best:
                best, z = val, z + lam * d
            dirs = [dirs[1], d]
        step = max(4 * norm, 1e-6)
    return best


def geometric_discord_oracle(rho, grid=128, rounds=3, tol=1e-10):
    """Brute-force discord: twice the minimal dephasing distance over measurements on A.

    The measurement axis sweeps ``grid x grid`` points uniform in
    ``(cos theta, phi)``; the best grid point is then refined by golden-section
    line searches in a local tangent chart.
    """
    if int(grid) != grid or grid < 8:
        raise ValueError(f"oracle grid {grid!r} must be an integer >= 8")
    grid = int(grid)
    rho = check_density(rho, tol)
    if rho.shape != (4, 4):
        raise ValueError("oracle needs a 4x4 density matrix")
    f = _dephasing_kernel(rho)
    us = np.linspace(-1.0, 1.0, grid)
    phis = np.linspace(0.0, 2 * np.pi, grid)
    U, P = np.meshgrid(us, phis, indexing="ij")
    dirs = _directions(U.ravel(), P.ravel())
    vals = f(dirs)
    k = int(np.argmin(vals))
    # coarse cell size in angle: widest of the polar and azimuthal spacings
    step = 2 * max(np.arccos(us[-2]), phis[1])
    best = _refine(f, dirs[k], float(vals[k]), step, rounds)
    return 2.0 * min(best, float(vals[k]))
