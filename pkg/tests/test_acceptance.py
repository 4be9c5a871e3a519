"""Exit criteria, one test per criterion, each reporting a PASS/FAIL line."""
import io
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from discord_tangle.cli import main
from discord_tangle.cxmat import max_eig_sym3
from discord_tangle.discord import efg, geometric_discord_closed, geometric_discord_oracle, lambda_max_closed, norms_closed
from discord_tangle.family import bloch_form_closed, build_sigma, pauli_expand
from discord_tangle.purify import PurifiedState, ansatz_state, purify, verify_purification
from discord_tangle.sampling import ball_vector, random_params, unit_vector
from discord_tangle.tangle import (
    PaperLabel, SloccLabel, classify_paper, classify_slocc, marginal_max_eigenvalues,
    three_tangle_closed, three_tangle_general,
)

GOLDEN = Path(__file__).parent / "golden"
S2 = 1 / np.sqrt(2)


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
    assert ok, detail


def rng_for(number):
    return np.random.default_rng(1000 + number)


def test_1_classicality_theorem():
    rng = rng_for(1)
    worst_closed = worst_oracle = 0.0
    for _ in range(1000):
        pr = random_params(rng, parity=1)
        worst_closed = max(worst_closed, abs(geometric_discord_closed(pr).discord))
        worst_oracle = max(worst_oracle, geometric_discord_oracle(build_sigma(pr), 128))
    record(1, "odd n gives zero discord", worst_closed <= 1e-12 and worst_oracle < 5e-6,
           f"max closed {worst_closed:.3e} (<= 1e-12), max oracle {worst_oracle:.3e} (< 5e-6)")


def test_2_closed_vs_oracle_discord():
    rng = rng_for(2)
    worst = 0.0
    for _ in range(200):
        pr = random_params(rng)
        closed = geometric_discord_closed(pr).discord
        worst = max(worst, abs(closed - geometric_discord_oracle(build_sigma(pr), 128)))
    record(2, "closed-form discord vs oracle", worst <= 5e-6, f"max |closed - oracle| {worst:.3e} (<= 5e-6)")


def test_3_bloch_form_identity():
    rng = rng_for(3)
    worst = row2 = 0.0
    closed_row2_zero = True
    for _ in range(1000):
        pr = random_params(rng)
        closed = bloch_form_closed(pr)
        expanded = pauli_expand(build_sigma(pr))
        worst = max(worst, closed.max_abs_diff(expanded))
        closed_row2_zero &= bool(np.all(closed.T[1] == 0))
        row2 = max(row2, float(np.max(np.abs(expanded.T[1]))))
    record(3, "Bloch form identity", worst <= 1e-12 and closed_row2_zero and row2 <= 1e-12,
           f"max diff {worst:.3e} (<= 1e-12), closed t2j exactly 0: {closed_row2_zero}, expanded |t2j| {row2:.3e}")


def test_4_e_plus_g_and_lambda_max():
    rng = rng_for(4)
    worst_sum = worst_lam = 0.0
    for _ in range(1000):
        pr = random_params(rng)
        E, F, G = efg(pr)
        x2, t2 = norms_closed(pr)
        worst_sum = max(worst_sum, abs(E + G - x2 - t2))
        S = np.array([[E, 0, F], [0, 0, 0], [F, 0, G]])
        worst_lam = max(worst_lam, abs(lambda_max_closed(E, F, G) - max_eig_sym3(S)))
    record(4, "E + G identity and lambda_max", worst_sum <= 1e-10 and worst_lam <= 1e-12,
           f"max |E+G-|x|^2-|T|^2| {worst_sum:.3e} (<= 1e-10), max lambda diff {worst_lam:.3e} (<= 1e-12)")


def test_5_purification_round_trip():
    rng = rng_for(5)
    worst = 0.0
    for _ in range(500):
        worst = max(worst, verify_purification(purify(random_params(rng, pure=True))))
    smallest = np.inf
    for _ in range(100):
        pr = random_params(rng).replace(r=ball_vector(rng, 0.99))
        smallest = min(smallest, verify_purification(PurifiedState(ansatz_state(pr), pr)))
    record(5, "purification iff pure branches", worst < 1e-18 and smallest > 1e-6,
           f"max pure residual {worst:.3e} (< 1e-18), min mixed residual {smallest:.3e} (> 1e-6)")


def test_6_three_tangle_anchors():
    rng = rng_for(6)
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = S2
    err_ghz = abs(three_tangle_general(psi)[0] - 1)
    err_general = 0.0
    for lam in np.linspace(0, 1, 101):
        psi = np.zeros(8, dtype=complex)
        psi[0], psi[7] = lam, np.sqrt(1 - lam * lam)
        err_general = max(err_general, abs(three_tangle_general(psi)[0] - 2 * lam * np.sqrt(1 - lam * lam)))
    err_w = 0.0
    for _ in range(500):
        psi = np.zeros(8, dtype=complex)
        psi[0b100], psi[0b010], psi[0b001] = unit_vector(rng)
        err_w = max(err_w, three_tangle_general(psi)[0])
    err_sep = 0.0
    for _ in range(500):
        a, b, c = (unit(rng, 2) for _ in range(3))
        pair = unit(rng, 4)
        for psi in (np.kron(np.kron(a, b), c), np.kron(a, pair), np.kron(pair, c),
                    _swap_ab(np.kron(b, np.kron(a, c)))):
            err_sep = max(err_sep, three_tangle_general(psi)[0])
    ok = err_ghz <= 1e-12 and err_general <= 1e-12 and err_w <= 1e-12 and err_sep <= 1e-10
    record(6, "three-tangle anchors", ok,
           f"GHZ {err_ghz:.3e}, GHZ(lambda) {err_general:.3e}, W {err_w:.3e} (all <= 1e-12); "
           f"product/biseparable {err_sep:.3e} (<= 1e-10)")


def unit(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def _swap_ab(psi):
    return psi.reshape(2, 2, 2).transpose(1, 0, 2).ravel()


def test_7_closed_form_tangle():
    rng = rng_for(7)
    worst = 0.0
    for _ in range(1000):
        pr = random_params(rng, regular=True)
        worst = max(worst, abs(three_tangle_closed(pr) - three_tangle_general(purify(pr).xi)[0]))
    record(7, "closed-form tangle vs general", worst <= 1e-9, f"max diff {worst:.3e} (<= 1e-9)")


def test_8_classification_consistency():
    rng = rng_for(8)
    n_ghz = bad_ghz = bad_flat = bad_half = 0
    min_tau = np.inf
    max_flat = max_half = 0.0
    min_b = 1.0
    for _ in range(300):
        pr = random_params(rng, regular=True)
        if classify_paper(pr) == PaperLabel.GHZ_TYPE:
            n_ghz += 1
            xi = purify(pr).xi
            bad_ghz += classify_slocc(xi) != SloccLabel.GHZ_CLASS
            min_tau = min(min_tau, three_tangle_general(xi)[0])
        flat = pr.replace(s=pr.r)
        xi = purify(flat).xi
        max_flat = max(max_flat, three_tangle_general(xi)[0])
        min_b = min(min_b, marginal_max_eigenvalues(xi)[1])
        bad_flat += classify_paper(flat) != PaperLabel.W_TYPE
        half = pr.replace(alpha=S2, n=2 * (pr.n // 2))
        if half.r != half.s:
            max_half = max(max_half, three_tangle_general(purify(half).xi)[0])
            bad_half += classify_paper(half) != PaperLabel.ZERO_TANGLE_UNCLASSIFIED
    ok = (n_ghz > 0 and bad_ghz == 0 and min_tau > 1e-6 and max_flat < 1e-12 and min_b > 1 - 1e-10
          and max_half < 1e-9 and bad_half == 0 and bad_flat == 0)
    record(8, "classification consistency", ok,
           f"{n_ghz} Case-IV points, {bad_ghz} not GHZClass, min tau3 {min_tau:.3e} (> 1e-6); "
           f"Delta=0 max tau3 {max_flat:.3e} (< 1e-12), min B eigenvalue 1-{1 - min_b:.1e}; "
           f"alpha=1/sqrt2 max tau3 {max_half:.3e} (< 1e-9), {bad_half} mislabeled")


def _cli(argv):
    out = io.StringIO()
    return main(argv, stdout=out), out.getvalue()


def test_9_cli_determinism():
    analyze = ["analyze", "--p", "0.3", "--alpha", "0.6", "--n", "2", "--r", "0,0,1", "--s", "1,0,0",
               "--json", "--oracle"]
    sweep = ["sweep", "--n", "2", "--r", "0,0,1", "--s", "1,0,0", "--axis1", "p:0.25:0.75:2",
             "--axis2", "alpha:0.3:0.7:2"]
    a1, a2 = _cli(analyze), _cli(analyze)
    s1, s2 = _cli(sweep), _cli(sweep)
    st = _cli(["selftest"])
    ok = (a1 == a2 and a1[1] == (GOLDEN / "analyze_ghz.json").read_text()
          and s1 == s2 and s1[1] == (GOLDEN / "sweep_2x2.csv").read_text() and st[0] == 0)
    record(9, "CLI determinism", ok,
           f"analyze golden match {a1[1] == (GOLDEN / 'analyze_ghz.json').read_text()}, "
           f"sweep golden match {s1[1] == (GOLDEN / 'sweep_2x2.csv').read_text()}, selftest exit {st[0]}")
