"""Single-ancilla purification of the family state and its closed-form amplitudes."""
from dataclasses import dataclass

import numpy as np

from .cxmat import KET0, KET1, hs_norm_sq, ket_to_density, partial_trace, tensor
from .family import FamilyParams, build_sigma, chi_states

PURE_TOL = 1e-8
REGULAR_TOL = 1e-12


class PurificationError(ValueError):
    """Raised when a branch state is mixed, so the one-qubit-ancilla ansatz cannot purify."""


class SingularFormulaError(ValueError):
    """Raised when a closed-form expression divides by (numerically) zero."""


@dataclass(frozen=True)
class SpectralPair:
    """Eigen-decomposition of a qubit density matrix in one of two orderings.

    ``convention="rho1"`` lists the smaller eigenvalue first;
    ``convention="rho2"`` lists the larger one first.
    """

    eigenvalues: tuple
    eigenvectors: tuple
    norm_constants: tuple
    convention: str

    def density(self):
        return sum(lam * ket_to_density(v) for lam, v in zip(self.eigenvalues, self.eigenvectors))


@dataclass(frozen=True)
class PurifiedState:
    xi: np.ndarray
    params: FamilyParams

    def reduced_ab(self):
        return partial_trace(ket_to_density(self.xi), keep=[0, 1], dims=[2, 2, 2])


def _ratio_pair(bloch):
    """``((z - |r|) / (x + iy), (z + |r|) / (x + iy))`` evaluated without cancellation."""
    x, y, z = bloch
    w = complex(x, y)
    norm = float(np.linalg.norm(bloch))
    if z >= 0:
        big = (z + norm) / w
        small = -w.conjugate() / (z + norm)
    else:
        small = (z - norm) / w
        big = -w.conjugate() / (z - norm)
    return small, big


def spectral_decompose_qubit(bloch, convention="rho1", tol=1e-10):
    r = np.asarray(bloch, dtype=np.float64)
    if r.shape != (3,):
        raise ValueError("Bloch vector must have three components")
    if convention not in ("rho1", "rho2"):
        raise ValueError(f"unknown convention {convention!r}")
    norm = float(np.linalg.norm(r))
    if norm > 1 + tol:
        raise ValueError(f"|bloch| = {norm:.6g} exceeds 1")
    norm = min(norm, 1.0)
    lo, hi = (1 - norm) / 2, (1 + norm) / 2
    if r[0] ** 2 + r[1] ** 2 > 1e-20:
        q_lo, q_hi = _ratio_pair(r)
        n_lo, n_hi = 1 + abs(q_lo) ** 2, 1 + abs(q_hi) ** 2
        v_lo = np.array([q_lo, 1.0], dtype=np.complex128) / np.sqrt(n_lo)
        v_hi = np.array([q_hi, 1.0], dtype=np.complex128) / np.sqrt(n_hi)
    else:
        n_lo = n_hi = 1.0
        if r[2] >= 0:
            v_hi, v_lo = KET0.copy(), KET1.copy()
        else:
            v_hi, v_lo = KET1.copy(), KET0.copy()
    if convention == "rho1":
        return SpectralPair((lo, hi), (v_lo, v_hi), (n_lo, n_hi), convention)
    return SpectralPair((hi, lo), (v_hi, v_lo), (n_hi, n_lo), convention)


def _check_pipeline(params, pure_tol=PURE_TOL):
    if not 0.0 < params.p < 1.0:
        raise ValueError(f"purification needs 0 < p < 1, got p = {params.p}")
    for name in ("r", "s"):
        norm = float(np.linalg.norm(getattr(params, name)))
        if abs(norm - 1.0) > pure_tol:
            raise PurificationError(
                f"no purification exists for mixed branch states: |{name}| = {norm:.6g}, "
                "the one-qubit ancilla works iff rho1 and rho2 are pure"
            )


def ansatz_state(params, pure=False):
    """The candidate ket sqrt(p) chi1 (x) (...) + sqrt(1-p) chi2 (x) (...), for any Bloch lengths.

    With ``pure=True`` the Bloch vectors are taken as unit length and only
    the surviving eigen-term of each branch is kept.
    """
    chi1, chi2, _ = chi_states(params)
    sp1 = spectral_decompose_qubit(params.r, "rho1")
    sp2 = spectral_decompose_qubit(params.s, "rho2")
    lam1, lam2 = sp1.eigenvalues, sp2.eigenvalues
    if pure:
        # sqrt() of a rounding-level eigenvalue would leak ~1e-8 amplitudes
        lam1, lam2 = (0.0, 1.0), (1.0, 0.0)
    anc = (KET0, KET1)
    xi = np.zeros(8, dtype=np.complex128)
    for lam, v, c in zip(lam1, sp1.eigenvectors, anc):
        if lam > 0:
            xi += np.sqrt(params.p * lam) * tensor(chi1, v, c)
    for lam, v, c in zip(lam2, sp2.eigenvectors, anc):
        if lam > 0:
            xi += np.sqrt((1 - params.p) * lam) * tensor(chi2, v, c)
    return xi


def purify(params, pure_tol=PURE_TOL):
    _check_pipeline(params, pure_tol)
    return PurifiedState(ansatz_state(params, pure=True), params)


def verify_purification(state):
    """Squared HS residual between Tr_C |xi><xi| and sigma_AB."""
    return hs_norm_sq(state.reduced_ab() - build_sigma(state.params))


def amplitudes_closed(params, tol=REGULAR_TOL):
    """Coefficients ``(a, b, c, d, e, f, g, h)`` of |001>,|011>,|101>,|111>,|000>,|010>,|100>,|110>."""
    _check_pipeline(params)
    al, be, p = params.alpha, params.beta, params.p
    rx, ry, rz = params.r
    sx, sy, sz = params.s
    rho_r = rx * rx + ry * ry
    rho_s = sx * sx + sy * sy
    if min(al * be, 1 + rz, 1 + sz, rho_r, rho_s) <= tol:
        raise SingularFormulaError("use purify() directly; closed-form coefficients singular here")
    wr = complex(rx, ry)
    ws = complex(sx, sy)
    a = al * np.sqrt(p) * (rz + 1) * wr.conjugate() / np.sqrt(rho_r * (rho_r + (rz + 1) ** 2))
    b = a * wr / (rz + 1)
    c = a * be / al
    d = a * be / al * wr / (rz + 1)
    e = be * np.sqrt(1 - p) * (sz + 1) * ws.conjugate() / np.sqrt(rho_s * (rho_s + (sz + 1) ** 2))
    f = e * ws / (sz + 1)
    g = params.sign * e * al / be
    h = params.sign * e * al / be * ws / (sz + 1)
    return a, b, c, d, e, f, g, h


# computational-basis index (a*4 + b*2 + c) of each letter a..h
LETTER_INDEX = (0b001, 0b011, 0b101, 0b111, 0b000, 0b010, 0b100, 0b110)


def letters_to_ket(coeffs):
    psi = np.zeros(8, dtype=np.complex128)
    for idx, v in zip(LETTER_INDEX, coeffs):
        psi[idx] = v
    return psi


def ket_to_letters(psi):
    psi = np.asarray(psi)
    return tuple(complex(psi[idx]) for idx in LETTER_INDEX)
