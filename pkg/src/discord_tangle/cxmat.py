"""Small dense complex linear algebra for qubit registers (dimensions 2, 4, 8).

Matrices and kets are plain ``numpy`` arrays of dtype ``complex128``.
"""
import numpy as np

MAX_DIM = 8
HERM_TOL = 1e-10
EIG_TOL = 1e-12

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (SX, SY, SZ)

KET0 = np.array([1, 0], dtype=np.complex128)
KET1 = np.array([0, 1], dtype=np.complex128)


def as_matrix(A):
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] > MAX_DIM:
        raise ValueError(f"matrix dimension {A.shape[0]} exceeds {MAX_DIM}")
    return A


def as_ket(v, tol=HERM_TOL):
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] > MAX_DIM:
        raise ValueError(f"expected a state vector of length <= {MAX_DIM}, got shape {v.shape}")
    if abs(np.vdot(v, v).real - 1) > tol:
        raise ValueError("state vector is not normalized")
    return v


def tensor(*factors):
    """Kronecker product of kets or of square matrices (all of the same kind)."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    arrays = [np.asarray(f, dtype=np.complex128) for f in factors]
    ndim = arrays[0].ndim
    if ndim not in (1, 2) or any(a.ndim != ndim for a in arrays):
        raise ValueError("tensor factors must all be kets or all be matrices")
    if ndim == 2 and any(a.shape[0] != a.shape[1] for a in arrays):
        raise ValueError("tensor factors must be square matrices")
    dim = int(np.prod([a.shape[0] for a in arrays]))
    if dim > MAX_DIM:
        raise ValueError(f"tensor product dimension {dim} exceeds {MAX_DIM}")
    out = arrays[0]
    for a in arrays[1:]:
        out = np.kron(out, a)
    return out


def ket_to_density(psi):
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def is_hermitian(A, tol=HERM_TOL):
    A = np.asarray(A)
    return bool(np.max(np.abs(A - A.conj().T), initial=0.0) <= tol)


def check_density(rho, tol=HERM_TOL):
    """Raise ``ValueError`` unless ``rho`` is Hermitian, unit trace and PSD within ``tol``."""
    rho = as_matrix(rho)
    if not is_hermitian(rho, tol):
        raise ValueError("matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"trace {np.trace(rho).real:.3g} != 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("matrix has a negative eigenvalue")
    return rho


def partial_trace(rho, keep, dims):
    """Reduced density matrix on the subsystems listed in ``keep``.

    ``dims`` lists the factor dimensions in tensor order; ``keep`` is any
    iterable of factor indices (order is normalized to ascending).
    """
    rho = as_matrix(rho)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims) or int(np.prod(dims)) != rho.shape[0]:
        raise ValueError(f"dims {dims} do not match matrix dimension {rho.shape[0]}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    n = len(dims)
    traced = [k for k in range(n) if k not in keep]
    t = rho.reshape(dims + dims)
    # trace highest index first so remaining axis positions stay valid
    for k in sorted(traced, reverse=True):
        t = np.trace(t, axis1=k, axis2=k + t.ndim // 2)
    d = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d, d)


def hs_norm_sq(A):
    """Squared Hilbert-Schmidt norm, sum of |A_ij|^2."""
    A = np.asarray(A)
    return float(np.sum(A.real**2 + A.imag**2))


def fix_phase(v, tol=1e-15):
    """Rotate the global phase so the first nonzero component is real positive."""
    v = np.asarray(v, dtype=np.complex128)
    for x in v:
        if abs(x) > tol:
            return v * (abs(x) / x)
    return v


def eig_herm2(H, tol=HERM_TOL):
    """Eigenpairs of a 2x2 Hermitian matrix, descending eigenvalue order.

    Returns ``[(lam_hi, v_hi), (lam_lo, v_lo)]``. Each eigenvector has its
    first nonzero component real positive; a degenerate spectrum returns the
    computational basis.
    """
    H = as_matrix(H)
    if H.shape != (2, 2):
        raise ValueError("eig_herm2 needs a 2x2 matrix")
    if not is_hermitian(H, tol):
        raise ValueError("matrix is not Hermitian")
    a, d = H[0, 0].real, H[1, 1].real
    b = 0.5 * (H[0, 1] + H[1, 0].conjugate())
    mean = 0.5 * (a + d)
    half = 0.5 * (a - d)
    gap = np.hypot(half, abs(b))
    if gap <= 1e-15 * max(1.0, abs(mean)):
        return [(mean, KET0.copy()), (mean, KET1.copy())]
    lam_hi, lam_lo = mean + gap, mean - gap
    # pick the well-conditioned row of (H - lam_hi) to build v_hi
    if half >= 0:
        v = np.array([half + gap, b.conjugate()], dtype=np.complex128)
    else:
        v = np.array([b, gap - half], dtype=np.complex128)
    v /= np.linalg.norm(v)
    w = np.array([-v[1].conjugate(), v[0].conjugate()])
    return [(lam_hi, fix_phase(v)), (lam_lo, fix_phase(w))]


def max_eig_sym3(S, tol=1e-13, max_sweeps=50):
    """Largest eigenvalue of a real symmetric 3x3 matrix by cyclic Jacobi rotations."""
    A = np.array(S, dtype=np.float64)
    if A.shape != (3, 3):
        raise ValueError("max_eig_sym3 needs a 3x3 matrix")
    if np.max(np.abs(A - A.T)) > HERM_TOL * max(1.0, np.max(np.abs(A))):
        raise ValueError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    for _ in range(max_sweeps):
        off = np.sqrt(2 * (A[0, 1] ** 2 + A[0, 2] ** 2 + A[1, 2] ** 2))
        if off <= tol:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = A[p, q]
            if apq == 0.0:
                continue
            theta = (A[q, q] - A[p, p]) / (2 * apq)
            t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1))
            c = 1 / np.sqrt(t * t + 1)
            s = t * c
            J = np.eye(3)
            J[p, p] = J[q, q] = c
            J[p, q] = s
            J[q, p] = -s
            A = J.T @ A @ J
    return float(np.max(np.diag(A)))


def qubit_density(bloch):
    """``(I + r.sigma) / 2`` for a real Bloch vector ``r``."""
    r = np.asarray(bloch, dtype=np.float64)
    return 0.5 * (I2 + r[0] * SX + r[1] * SY + r[2] * SZ)
