"""Three-tangle of three-qubit pure states and classification of the purified family state."""
from dataclasses import dataclass
import enum
from fractions import Fraction
import math

import numpy as np

from .cxmat import as_ket, ket_to_density, partial_trace
from .family import overlap
from .purify import (
    SingularFormulaError,
    amplitudes_closed,
    ket_to_letters,
    purify,
)

DEFAULT_TOL = 1e-9
NORM_TOL = 1e-10


class PaperLabel(str, enum.Enum):
    BISEPARABLE = "Biseparable"
    W_TYPE = "WType"
    GHZ_TYPE = "GHZType"
    ZERO_TANGLE_UNCLASSIFIED = "ZeroTangleUnclassified"


class SloccLabel(str, enum.Enum):
    PRODUCT_ABC = "ProductABC"
    BISEPARABLE_A_BC = "BiseparableA_BC"
    BISEPARABLE_B_AC = "BiseparableB_AC"
    BISEPARABLE_C_AB = "BiseparableC_AB"
    W_CLASS = "WClass"
    GHZ_CLASS = "GHZClass"


_BISEPARABLE_BY_PURE_QUBIT = (
    SloccLabel.BISEPARABLE_A_BC,
    SloccLabel.BISEPARABLE_B_AC,
    SloccLabel.BISEPARABLE_C_AB,
)


def _exact(z):
    z = complex(z)
    return Fraction(z.real), Fraction(z.imag)


def _mul(*zs):
    re, im = zs[0]
    for c, d in zs[1:]:
        re, im = re * c - im * d, re * d + im * c
    return re, im


def _sum(terms, weight=1):
    return sum(t[0] for t in terms) * weight, sum(t[1] for t in terms) * weight


def _to_complex(z):
    return complex(float(z[0]), float(z[1]))


def _tangle_from_terms(t1, t2, t3):
    # exact rational evaluation: near class boundaries d1 - 2 d2 + 4 d3 cancels
    # to rounding level, and the square root would magnify that to ~1e-9
    d1, d2, d3 = _sum(t1), _sum(t2), _sum(t3)
    det = (d1[0] - 2 * d2[0] + 4 * d3[0], d1[1] - 2 * d2[1] + 4 * d3[1])
    mod = math.sqrt(float(det[0] * det[0] + det[1] * det[1]))
    return 2.0 * math.sqrt(mod), _to_complex(d1), _to_complex(d2), _to_complex(d3)


def _d_terms(a):
    """Monomials of d1, d2, d3 for exact amplitudes indexed ``a[i*4 + j*2 + k]``."""
    t1 = (
        _mul(a[0], a[0], a[7], a[7]),
        _mul(a[1], a[1], a[6], a[6]),
        _mul(a[2], a[2], a[5], a[5]),
        _mul(a[4], a[4], a[3], a[3]),
    )
    t2 = (
        _mul(a[0], a[7], a[3], a[4]),
        _mul(a[0], a[7], a[5], a[2]),
        _mul(a[0], a[7], a[6], a[1]),
        _mul(a[1], a[6], a[2], a[5]),
        _mul(a[1], a[6], a[3], a[4]),
        _mul(a[4], a[2], a[3], a[5]),
    )
    t3 = (
        _mul(a[0], a[6], a[5], a[3]),
        _mul(a[7], a[1], a[2], a[4]),
    )
    return t1, t2, t3


def three_tangle_general(psi, tol=NORM_TOL):
    """``(tau3, d1, d2, d3)`` with tau3 = 2 sqrt|d1 - 2 d2 + 4 d3| over computational amplitudes."""
    psi = as_ket(psi, tol)
    if psi.shape != (8,):
        raise ValueError("three-tangle needs an 8-component state")
    return _tangle_from_terms(*_d_terms([_exact(x) for x in psi]))


def three_tangle_k(coeffs, tol=NORM_TOL):
    """``(tau3, k1, k2, k3)`` from the letter amplitudes ``a..h`` of the purified state."""
    coeffs = [complex(x) for x in coeffs]
    if len(coeffs) != 8 or abs(sum(abs(x) ** 2 for x in coeffs) - 1) > tol:
        raise ValueError("expected eight normalized amplitudes")
    a, b, c, d, e, f, g, h = [_exact(x) for x in coeffs]
    t1 = (_mul(e, e, d, d), _mul(a, a, h, h), _mul(f, f, c, c), _mul(b, b, g, g))
    t2 = (_mul(e, d, a, h), _mul(e, d, f, c), _mul(e, d, b, g),
          _mul(a, h, f, c), _mul(a, h, b, g), _mul(f, b, g, c))
    t3 = (_mul(b, c, e, h), _mul(a, d, f, g))
    return _tangle_from_terms(t1, t2, t3)


def delta(r, s, tol=1e-12):
    """Distance between the south-pole stereographic projections of ``r`` and ``s``."""
    rx, ry, rz = r
    sx, sy, sz = s
    if 1 + rz <= tol or 1 + sz <= tol:
        raise SingularFormulaError("delta undefined at south pole; use general tangle")
    return math.hypot(sx / (1 + sz) - rx / (1 + rz), sy / (1 + sz) - ry / (1 + rz))


def three_tangle_closed(params):
    a, _, _, _, e, _, _, _ = amplitudes_closed(params)
    al, be = params.alpha, params.beta
    dl = delta(params.r, params.s)
    return 2 * abs(a * e * (al * overlap(params) - be)) * dl / (al * be * be)


def _amplitudes_a_e(params):
    try:
        coeffs = amplitudes_closed(params)
    except SingularFormulaError:
        coeffs = ket_to_letters(purify(params).xi)
    return coeffs[0], coeffs[4]


def classify_paper(params, tol=DEFAULT_TOL):
    a, e = _amplitudes_a_e(params)
    if abs(a * e) < tol:
        return PaperLabel.BISEPARABLE
    try:
        dl = delta(params.r, params.s)
    except SingularFormulaError:
        dl = math.inf
    if dl < tol:
        return PaperLabel.W_TYPE
    if abs(overlap(params) - params.beta / params.alpha) >= tol:
        return PaperLabel.GHZ_TYPE
    return PaperLabel.ZERO_TANGLE_UNCLASSIFIED


def marginal_max_eigenvalues(psi):
    """Largest eigenvalue of each single-qubit reduced state, in order A, B, C."""
    rho = ket_to_density(psi)
    out = []
    for k in range(3):
        red = partial_trace(rho, keep=[k], dims=[2, 2, 2])
        out.append(float(np.linalg.eigvalsh(red)[-1]))
    return tuple(out)


def slocc_ambiguous(psi, tol=DEFAULT_TOL):
    """True when some marginal's purity sits in the borderline band [1 - 10 tol, 1 - tol]."""
    return any(1 - 10 * tol <= lam <= 1 - tol for lam in marginal_max_eigenvalues(psi))


def classify_slocc(psi, tol=DEFAULT_TOL):
    psi = as_ket(psi)
    pure = [lam > 1 - tol for lam in marginal_max_eigenvalues(psi)]
    count = sum(pure)
    if count >= 2:
        return SloccLabel.PRODUCT_ABC
    if count == 1:
        return _BISEPARABLE_BY_PURE_QUBIT[pure.index(True)]
    tau3 = three_tangle_general(psi)[0]
    return SloccLabel.GHZ_CLASS if tau3 > tol else SloccLabel.W_CLASS


@dataclass(frozen=True)
class TangleReport:
    amplitudes: tuple
    d1: complex
    d2: complex
    d3: complex
    k1: complex
    k2: complex
    k3: complex
    delta: float | None
    overlap: float
    tau3_general: float
    tau3_closed: float | None
    paper_label: PaperLabel
    slocc_label: SloccLabel
    slocc_ambiguous: bool


def tangle_report(params, tol=DEFAULT_TOL):
    """Full tangle/classification report for the purification of ``params``."""
    xi = purify(params).xi
    letters = ket_to_letters(xi)
    tau3, d1, d2, d3 = three_tangle_general(xi)
    _, k1, k2, k3 = three_tangle_k(letters)
    try:
        dl = delta(params.r, params.s)
    except SingularFormulaError:
        dl = None
    try:
        closed = three_tangle_closed(params)
    except SingularFormulaError:
        closed = None
    return TangleReport(
        amplitudes=letters,
        d1=d1, d2=d2, d3=d3,
        k1=k1, k2=k2, k3=k3,
        delta=dl,
        overlap=overlap(params),
        tau3_general=tau3,
        tau3_closed=closed,
        paper_label=classify_paper(params, tol),
        slocc_label=classify_slocc(xi, tol),
        slocc_ambiguous=slocc_ambiguous(xi, tol),
    )
