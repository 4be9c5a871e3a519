"""The two-qubit family sigma_AB = p |chi1><chi1| (x) rho1 + (1-p) |chi2><chi2| (x) rho2."""
from dataclasses import dataclass, field

import numpy as np

from .cxmat import I2, PAULI, HERM_TOL, check_density, qubit_density, tensor

BLOCH_TOL = 1e-10


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(p, alpha, n, r, s)``; ``beta`` is the nonnegative root of ``1 - alpha**2``."""

    p: float
    alpha: float
    n: int
    r: tuple
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "alpha", float(self.alpha))
        if int(self.n) != self.n:
            raise ValueError(f"n must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        for name in ("r", "s"):
            v = tuple(float(x) for x in getattr(self, name))
            if len(v) != 3:
                raise ValueError(f"{name} must have three components")
            if not all(np.isfinite(v)):
                raise ValueError(f"{name} has non-finite components")
            if np.linalg.norm(v) > 1 + BLOCH_TOL:
                raise ValueError(f"|{name}| = {np.linalg.norm(v):.6g} exceeds 1")
            object.__setattr__(self, name, v)
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p = {self.p} outside [0, 1]")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha = {self.alpha} outside [0, 1]")

    @property
    def beta(self):
        return float(np.sqrt(max(0.0, 1.0 - self.alpha**2)))

    @property
    def parity(self):
        return self.n % 2

    @property
    def sign(self):
        """``(-1)**n``."""
        return -1.0 if self.parity else 1.0

    def replace(self, **changes):
        kw = dict(p=self.p, alpha=self.alpha, n=self.n, r=self.r, s=self.s)
        kw.update(changes)
        return FamilyParams(**kw)


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors ``x`` (party A), ``y`` (party B) and correlation matrix ``T``."""

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray = field(repr=True)

    def to_matrix(self):
        rho = tensor(I2, I2).copy()
        for i, si in enumerate(PAULI):
            rho += self.x[i] * tensor(si, I2) + self.y[i] * tensor(I2, si)
            for j, sj in enumerate(PAULI):
                rho += self.T[i, j] * tensor(si, sj)
        return rho / 4

    def correlation_operator(self):
        """``x x^T + T T^T``, the matrix whose top eigenvalue enters the discord."""
        return np.outer(self.x, self.x) + self.T @ self.T.T

    def max_abs_diff(self, other):
        return max(
            np.max(np.abs(self.x - other.x)),
            np.max(np.abs(self.y - other.y)),
            np.max(np.abs(self.T - other.T)),
        )


def overlap(params):
    """<chi1|chi2> = alpha*beta*(1 + (-1)**n); exactly 0 for odd n."""
    if params.parity:
        return 0.0
    return 2.0 * params.alpha * params.beta


def chi_states(params):
    a, b = params.alpha, params.beta
    chi1 = np.array([a, b], dtype=np.complex128)
    chi2 = np.array([b, params.sign * a], dtype=np.complex128)
    return chi1, chi2, overlap(params)


def build_sigma(params):
    chi1, chi2, _ = chi_states(params)
    rho1 = qubit_density(params.r)
    rho2 = qubit_density(params.s)
    sigma = params.p * tensor(np.outer(chi1, chi1.conj()), rho1)
    sigma = sigma + (1 - params.p) * tensor(np.outer(chi2, chi2.conj()), rho2)
    return sigma


def bloch_form_closed(params):
    p, a, b, sgn = params.p, params.alpha, params.beta, params.sign
    r = np.asarray(params.r)
    s = np.asarray(params.s)
    x = np.array([2 * a * b * (p + sgn * (1 - p)), 0.0, (2 * p - 1) * (a * a - b * b)])
    y = p * r + (1 - p) * s
    T = np.zeros((3, 3))
    T[0] = 2 * a * b * (p * r + sgn * (1 - p) * s)
    T[2] = (a * a - b * b) * (p * r - (1 - p) * s)
    return BlochForm(x, y, T)


def pauli_expand(rho, tol=HERM_TOL):
    """Bloch form of an arbitrary two-qubit density matrix via Pauli traces."""
    rho = check_density(rho, tol)
    if rho.shape != (4, 4):
        raise ValueError("pauli_expand needs a 4x4 density matrix")

    def expect(op):
        v = np.trace(rho @ op)
        if abs(v.imag) > tol:
            raise ValueError(f"Pauli expectation has imaginary part {v.imag:.3g}")
        return v.real

    x = np.array([expect(tensor(si, I2)) for si in PAULI])
    y = np.array([expect(tensor(I2, sj)) for sj in PAULI])
    T = np.array([[expect(tensor(si, sj)) for sj in PAULI] for si in PAULI])
    return BlochForm(x, y, T)
