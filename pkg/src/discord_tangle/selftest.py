"""Embedded invariant suite run by ``discord-tangle selftest``."""
import numpy as np

from .cxmat import max_eig_sym3
from .discord import efg, geometric_discord_closed, geometric_discord_oracle, lambda_max_closed, norms_closed
from .family import bloch_form_closed, build_sigma, pauli_expand
from .purify import ansatz_state, purify, verify_purification, PurifiedState
from .report import fmt
from .sampling import random_params
from .tangle import (
    PaperLabel,
    SloccLabel,
    classify_paper,
    classify_slocc,
    three_tangle_closed,
    three_tangle_general,
)

DRAWS = 40


def _classicality(rng, tol):
    err = 0.0
    for _ in range(DRAWS):
        err = max(err, geometric_discord_closed(random_params(rng, parity=1)).discord)
    return err, tol or 1e-12


def _oracle(rng, tol):
    err = 0.0
    for _ in range(10):
        pr = random_params(rng)
        err = max(err, abs(geometric_discord_closed(pr).discord - geometric_discord_oracle(build_sigma(pr), 128)))
    return err, tol or 5e-6


def _bloch(rng, tol):
    err = 0.0
    for _ in range(DRAWS):
        pr = random_params(rng)
        err = max(err, bloch_form_closed(pr).max_abs_diff(pauli_expand(build_sigma(pr))))
    return err, tol or 1e-12


def _e_plus_g(rng, tol):
    err = 0.0
    for _ in range(DRAWS):
        pr = random_params(rng)
        E, F, G = efg(pr)
        x2, t2 = norms_closed(pr)
        err = max(err, abs(E + G - x2 - t2))
    return err, tol or 1e-10


def _lambda_max(rng, tol):
    err = 0.0
    for _ in range(DRAWS):
        E, F, G = efg(random_params(rng))
        S = np.array([[E, 0, F], [0, 0, 0], [F, 0, G]])
        err = max(err, abs(lambda_max_closed(E, F, G) - max_eig_sym3(S)))
    return err, tol or 1e-12


def _round_trip(rng, tol):
    err = 0.0
    for _ in range(DRAWS):
        err = max(err, verify_purification(purify(random_params(rng, pure=True))))
    return err, tol or 1e-18


def _mixed_fails(rng, tol):
    # passes when the smallest residual exceeds the floor; reported as floor / residual
    worst = np.inf
    for _ in range(DRAWS):
        pr = random_params(rng)
        pr = pr.replace(r=np.asarray(pr.r) * 0.99, p=0.01 + 0.98 * pr.p)
        worst = min(worst, verify_purification(PurifiedState(ansatz_state(pr), pr)))
    return 1e-6 / worst, 1.0


def _ghz_w(rng, tol):
    err = 0.0
    for lam in np.linspace(0, 1, 21):
        mu = np.sqrt(1 - lam * lam)
        psi = np.zeros(8, dtype=complex)
        psi[0], psi[7] = lam, mu
        err = max(err, abs(three_tangle_general(psi)[0] - 2 * lam * mu))
    for _ in range(DRAWS):
        w = rng.normal(size=3)
        w /= np.linalg.norm(w)
        psi = np.zeros(8, dtype=complex)
        psi[4], psi[2], psi[1] = w
        err = max(err, three_tangle_general(psi)[0])
    return err, tol or 1e-12


def _closed_tangle(rng, tol):
    err = 0.0
    for _ in range(DRAWS):
        pr = random_params(rng, regular=True)
        err = max(err, abs(three_tangle_closed(pr) - three_tangle_general(purify(pr).xi)[0]))
    return err, tol or 1e-9


def _classification(rng, tol):
    bad = 0
    for _ in range(DRAWS):
        pr = random_params(rng, regular=True)
        xi = purify(pr).xi
        if classify_paper(pr) == PaperLabel.GHZ_TYPE and classify_slocc(xi) != SloccLabel.GHZ_CLASS:
            bad += 1
        flat = pr.replace(s=pr.r)
        if classify_paper(flat) != PaperLabel.W_TYPE or three_tangle_general(purify(flat).xi)[0] > (tol or 1e-12):
            bad += 1
    return float(bad), 0.0


CHECKS = (
    ("odd-n states have zero closed-form discord", _classicality),
    ("closed-form discord matches measurement oracle", _oracle),
    ("closed Bloch form matches Pauli expansion", _bloch),
    ("E + G equals |x|^2 + |T|^2", _e_plus_g),
    ("closed lambda_max matches Jacobi eigenvalue", _lambda_max),
    ("purification round trip", _round_trip),
    ("mixed branches leave a trace residual", _mixed_fails),
    ("GHZ and W tangle anchors", _ghz_w),
    ("closed-form tangle matches general formula", _closed_tangle),
    ("case labels and SLOCC labels consistent", _classification),
)


def run_selftest(seed=0, tol=None, out=print):
    """Run every check; returns the number of failures."""
    failures = 0
    for name, check in CHECKS:
        rng = np.random.default_rng(seed)
        value, limit = check(rng, tol)
        ok = value <= limit
        failures += not ok
        out(f"{'PASS' if ok else 'FAIL'}  {name}  (value {fmt(value)}, limit {fmt(limit)})")
    out("all checks passed" if failures == 0 else f"{failures} check(s) failed")
    return failures
