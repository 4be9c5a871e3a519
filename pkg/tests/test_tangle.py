import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discord_tangle.cxmat import KET0, KET1, tensor
from discord_tangle.family import FamilyParams
from discord_tangle.purify import SingularFormulaError, ket_to_letters, purify
from discord_tangle.sampling import random_ket, random_params, unit_vector
from discord_tangle.tangle import (
    PaperLabel, SloccLabel, classify_paper, classify_slocc, delta, marginal_max_eigenvalues,
    tangle_report, three_tangle_closed, three_tangle_general, three_tangle_k,
)

S2 = 1 / np.sqrt(2)


def ghz(lam, mu):
    psi = np.zeros(8, dtype=complex)
    psi[0], psi[7] = lam, mu
    return psi


def w_state(g, d, n):
    psi = np.zeros(8, dtype=complex)
    psi[0b100], psi[0b010], psi[0b001] = g, d, n
    return psi


def test_ghz_and_w_anchors(rng):
    assert abs(three_tangle_general(ghz(S2, S2))[0] - 1) < 1e-12
    for lam in np.linspace(0, 1, 11):
        mu = np.sqrt(1 - lam * lam)
        assert abs(three_tangle_general(ghz(lam, mu))[0] - 2 * lam * mu) < 1e-12
    for _ in range(50):
        assert three_tangle_general(w_state(*unit_vector(rng)))[0] < 1e-12


def test_three_tangle_rejects_unnormalized():
    with pytest.raises(ValueError):
        three_tangle_general(np.ones(8))


def test_k_form_examples():
    letters = [0, 0, 0, S2, S2, 0, 0, 0]
    assert abs(three_tangle_k(letters)[0] - 1) < 1e-12
    assert three_tangle_k([0, 0, 0, 0, 1, 0, 0, 0])[0] == 0


def test_k_form_matches_general(rng):
    for _ in range(300):
        psi = random_ket(rng)
        t, d1, d2, d3 = three_tangle_general(psi)
        tk, k1, k2, k3 = three_tangle_k(ket_to_letters(psi))
        assert abs(t - tk) < 1e-12
        assert max(abs(d1 - k1), abs(d2 - k2), abs(d3 - k3)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 2 * np.pi), st.integers(0, 2))
def test_tangle_local_phase_invariance(seed, theta, qubit):
    psi = random_ket(np.random.default_rng(seed))
    ops = [np.eye(2)] * 3
    ops[qubit] = np.diag([1, np.exp(1j * theta)])
    rotated = np.kron(np.kron(ops[0], ops[1]), ops[2]) @ psi
    assert abs(three_tangle_general(psi)[0] - three_tangle_general(rotated)[0]) < 1e-12


def test_product_and_biseparable_have_zero_tangle(rng):
    for _ in range(50):
        a, b, c = (random_ket(rng, 2) for _ in range(3))
        pair = random_ket(rng, 4)
        assert three_tangle_general(tensor(a, b, c))[0] < 1e-10
        assert three_tangle_general(tensor(a, pair))[0] < 1e-10
        assert three_tangle_general(tensor(pair, c))[0] < 1e-10


def test_delta():
    assert delta((0, 0, 1), (0, 0, 1)) == 0
    assert delta((0, 0, 1), (1, 0, 0)) == 1
    r, s = (0.6, 0, 0.8), (0, 0.6, -0.8)
    assert delta(r, s) == delta(s, r)
    with pytest.raises(SingularFormulaError, match="south pole"):
        delta((0, 0, -1), (1, 0, 0))


def test_closed_tangle_examples():
    pr = FamilyParams(0.4, 0.6, 2, (0.6, 0, 0.8), (0.6, 0, 0.8))
    assert three_tangle_closed(pr) == 0
    pr = FamilyParams(0.4, S2, 2, (0.6, 0, 0.8), (0, 0.6, 0.8))
    assert three_tangle_closed(pr) < 1e-15
    assert three_tangle_general(purify(pr).xi)[0] < 1e-9


def test_closed_tangle_matches_general(rng):
    for _ in range(300):
        pr = random_params(rng, regular=True)
        assert abs(three_tangle_closed(pr) - three_tangle_general(purify(pr).xi)[0]) < 1e-9


def test_ghz_point_tangle_matches_invariant_formula():
    # tau3 of sqrt(p) chi1 phi |1> + sqrt(1-p) chi2 phi' |0> is
    # 2 sqrt(p(1-p)) |det[chi1 chi2]| |det[phi phi']|
    pr = FamilyParams(0.3, 0.6, 2, (0, 0, 1), (1, 0, 0))
    want = 2 * np.sqrt(0.21) * abs(0.36 - 0.64) * abs(np.linalg.det([[1, S2], [0, S2]]))
    assert abs(three_tangle_general(purify(pr).xi)[0] - want) < 1e-14


def test_south_pole_tangle_nonzero():
    for n in (1, 2):
        pr = FamilyParams(0.3, 0.6, n, (0, 0, -1), (0, 0, 1))
        want = 2 * np.sqrt(0.21) * abs(0.64 - (-1) ** n * 0.36)
        assert abs(three_tangle_general(purify(pr).xi)[0] - want) < 1e-12
        assert classify_paper(pr) == PaperLabel.BISEPARABLE


def test_classify_paper_cases(rng):
    for _ in range(50):
        pr = random_params(rng, regular=True)
        assert classify_paper(pr.replace(s=pr.r)) == PaperLabel.W_TYPE
    assert classify_paper(FamilyParams(0.3, 0.6, 2, (0, 0, 1), (1, 0, 0))) == PaperLabel.GHZ_TYPE
    pr = FamilyParams(0.3, S2, 2, (0, 0, 1), (1, 0, 0))
    assert classify_paper(pr) == PaperLabel.ZERO_TANGLE_UNCLASSIFIED
    assert three_tangle_general(purify(pr).xi)[0] < 1e-9
    assert classify_paper(FamilyParams(0.3, 0.0, 2, (0.6, 0, 0.8), (1, 0, 0))) == PaperLabel.BISEPARABLE


def test_classify_slocc_examples():
    assert classify_slocc(tensor(KET0, KET0, KET0)) == SloccLabel.PRODUCT_ABC
    # Bell pair on (A, C) with B factored out
    psi = (tensor(KET0, KET0, KET0) + tensor(KET1, KET0, KET1)) * S2
    assert classify_slocc(psi) == SloccLabel.BISEPARABLE_B_AC
    assert classify_slocc(tensor(KET0, (tensor(KET0, KET0) + tensor(KET1, KET1)) * S2)) == SloccLabel.BISEPARABLE_A_BC
    assert classify_slocc(w_state(*([1 / np.sqrt(3)] * 3))) == SloccLabel.W_CLASS
    assert classify_slocc(ghz(S2, S2)) == SloccLabel.GHZ_CLASS


def test_slocc_ghz_agrees_with_case_label_and_flat_case(rng):
    for _ in range(200):
        pr = random_params(rng, regular=True)
        xi = purify(pr).xi
        if classify_paper(pr) == PaperLabel.GHZ_TYPE:
            assert classify_slocc(xi) == SloccLabel.GHZ_CLASS
        flat = purify(pr.replace(s=pr.r)).xi
        assert three_tangle_general(flat)[0] < 1e-12
        assert marginal_max_eigenvalues(flat)[1] > 1 - 1e-10


def test_tangle_report_fields():
    rep = tangle_report(FamilyParams(0.3, 0.6, 2, (0.6, 0, 0.8), (0, 0.6, 0.8)))
    assert rep.tau3_closed is not None and abs(rep.tau3_closed - rep.tau3_general) < 1e-9
    assert 0 <= rep.tau3_general <= 1 + 1e-10
    assert rep.paper_label == PaperLabel.GHZ_TYPE and rep.slocc_label == SloccLabel.GHZ_CLASS
    assert not rep.slocc_ambiguous
    rep = tangle_report(FamilyParams(0.3, 0.6, 2, (0, 0, 1), (0, 0, -1)))
    assert rep.delta is None and rep.tau3_closed is None
