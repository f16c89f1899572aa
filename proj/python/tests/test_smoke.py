import math

import numpy as np
import pytest

import qdkit


def test_sphere_sizes():
    assert qdkit.sphere_sizes(5) == [1, 4, 12, 36, 108, 324]
    words = qdkit.ball_words(1)
    assert len(words) == 5 and words[0] in ("e", "")


def test_xi_commutator_matches_closed_form():
    rep = qdkit.TruncatedRep(9)
    xi = rep.xi(8)
    assert xi.shape == (rep.dim,)
    assert abs(np.linalg.norm(xi) - 1.0) < 1e-12
    value = rep.rank_one_commutator_norm("a", xi)
    assert abs(value - math.sqrt(1 - 0.75 * (7 / 8) ** 2)) < 1e-10
    assert abs(rep.commutator_norm("b", xi.reshape(-1, 1)) - value) < 1e-9
    assert abs(qdkit.xi_commutator_closed_form(8) - 0.65252) < 5e-5


def test_pairing():
    rep = qdkit.TruncatedRep(6)
    for g in "abAB":
        assert abs(rep.pairing(g, 5) - qdkit.pairing_closed_form(5)) < 1e-10


def test_commutator_against_numpy():
    rep = qdkit.TruncatedRep(4)
    words = qdkit.ball_words(4)
    index = {w: i for i, w in enumerate(words)}
    rng = np.random.default_rng(1)
    inner = [i for i, w in enumerate(words) if (0 if w == "e" else len(w)) <= 3]
    v = np.zeros((rep.dim, 2), dtype=complex)
    v[inner] = rng.normal(size=(len(inner), 2)) + 1j * rng.normal(size=(len(inner), 2))
    q, _ = np.linalg.qr(v)
    proj = q @ q.conj().T

    def mul(x, y):
        out = list("" if x == "e" else x)
        inv = {"a": "A", "A": "a", "b": "B", "B": "b"}
        for c in "" if y == "e" else y:
            if out and inv[out[-1]] == c:
                out.pop()
            else:
                out.append(c)
        return "".join(out) or "e"

    u = np.zeros((rep.dim, rep.dim))
    for j, w in enumerate(words):
        target = mul("a", w)
        if target in index:
            u[index[target], j] = 1.0
    expected = np.linalg.norm(u @ proj - proj @ u, 2)
    assert abs(rep.commutator_norm("a", v) - expected) < 1e-9


def test_exactness_is_enforced():
    rep = qdkit.TruncatedRep(3)
    with pytest.raises(qdkit.ExactnessError):
        rep.commutator_norm("a", rep.xi(3).reshape(-1, 1))


def test_certificate_and_bounds():
    assert qdkit.verify_standard_certificate(6)["passed"]
    assert qdkit.cf_lower_bound() == (1, 2)
    upper = qdkit.cf_upper_search(20)
    assert upper["converged"] and upper["value"] <= 0.52


def test_trace_lemma():
    r = qdkit.trace_lemma_check(np.diag([1.0, -1.0]), np.diag([1.0, 0.0]))
    assert r["lhs"] == r["bound"] == 1.0
    assert qdkit.trace_lemma_trials(50, seed=3)["violations"] == 0
    with pytest.raises(qdkit.PreconditionError):
        qdkit.trace_lemma_check(np.eye(2), np.eye(2))


def test_audit():
    r = qdkit.random_audit(5, 10, seed=2, max_rank=3, support=4)
    assert r["violations"] == 0
    assert r["min_epsilon"] >= 0.5 - 1e-9


def test_monomial_and_induced():
    assert abs(qdkit.monomial_norm_minus_identity([1, 2, 0], [(0, 1)] * 3) - math.sqrt(3)) < 1e-15
    r = qdkit.induced_separation("cyclic", 4, 2, 1)
    assert r["dim"] == 2 and r["restriction_ok"]
    assert abs(r["min_separation"] - math.sqrt(2)) < 1e-12


def test_mf_and_lef():
    h = qdkit.mf_run("heisenberg", [3, 9, 27])
    assert h["completed_stages"] == 3 and h["separation_ok"]
    a = qdkit.mf_run("abels", [3, 5, 7, 9])
    assert [s["status"] for s in a["stages"]] == ["gamma-failed", "gamma-failed", "skipped-cap", "skipped-cap"]
    lef = qdkit.lef_witness(2)
    assert lef["verified"] and lef["modulus"] == 5
    assert lef["min_distance"] >= math.sqrt(2) - 1e-12
    assert lef["witness"].startswith("modulus 5\n")
