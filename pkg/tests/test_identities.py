import json
from fractions import Fraction

import pytest

from conftest import JS, Q_HALF, TAU1_ONE_PRESETS
from rpq import (
    ValidationError,
    cauchy_lhs,
    compositions,
    deformed_binomial,
    fit_monomial,
    hs1_lhs,
    hs2_lhs,
    hsa_lhs,
    hsb_lhs,
    verify_identity,
)
from rpq.identities import reports_to_csv, reports_to_json_obj


def test_hs1_values():
    assert hs1_lhs(Q_HALF, 2, 2) == Fraction(7, 4)
    assert hs1_lhs(Q_HALF, 2, 2) == deformed_binomial(Q_HALF, 3, 2)
    assert hs1_lhs(Q_HALF, 0, 1) == 1
    with pytest.raises(ValidationError):
        hs1_lhs(Q_HALF, 2, 4)


def test_hs2_values():
    assert hs2_lhs(Q_HALF, 1, 2) == Fraction(7, 4)
    assert hs2_lhs(Q_HALF, 1, 1) == Fraction(3, 2)
    assert hs2_lhs(Q_HALF, 1, 0) == 1


def test_hsa_values():
    # single group reduces to a one-binomial sum equal to [k+1 over n]
    for k in range(1, 5):
        for n in range(1, k + 2):
            assert hsa_lhs(Q_HALF, k, n, (k,)) == deformed_binomial(Q_HALF, k + 1, n)
    assert hsa_lhs(Q_HALF, 2, 1, (1, 1)) == Fraction(7, 4)
    with pytest.raises(ValidationError):
        hsa_lhs(Q_HALF, 3, 1, (1, 1))


def test_hsb_values():
    assert hsb_lhs(Q_HALF, 2, 1, (1, 1)) == Fraction(7, 4)
    assert hsb_lhs(Q_HALF, 2, 0, (1, 1)) == 1
    assert hsb_lhs(Q_HALF, 2, 0, (2,)) == 1


def test_cauchy_values():
    assert cauchy_lhs(Q_HALF, 1, 1, 0) == Fraction(3, 2)
    assert cauchy_lhs(Q_HALF, 1, 0, 0) == 1
    # m = k telescopes to the single r = n term
    for k in range(1, 5):
        for n in range(0, 5):
            assert cauchy_lhs(Q_HALF, k, n, k) == deformed_binomial(Q_HALF, k + n, n)


def test_exactness_for_tau1_one():
    for alg in TAU1_ONE_PRESETS:
        for rep in verify_identity("hs1", alg, 6, 6):
            assert rep.exact_match, (rep.k, rep.n)
        for rep in verify_identity("hs2", alg, 6, 6):
            assert rep.exact_match, (rep.k, rep.n)
        for rep in verify_identity("cauchy", alg, 8, 8):
            assert rep.exact_match, (rep.k, rep.n, rep.m)


def test_grouped_sums_exact_for_tau1_one():
    for rep in verify_identity("hsa", Q_HALF, 4, 5):
        assert rep.exact_match, (rep.k, rep.n, rep.groups)
    for rep in verify_identity("hsb", Q_HALF, 4, 4):
        assert rep.exact_match, (rep.k, rep.n, rep.groups)


def test_js_discrepancy_monomials():
    # p=9/10, q=1/2: hs1 discrepancy tau1^(n(k+1-n)), hs2 discrepancy tau1^(nk)
    for rep in verify_identity("hs1", JS, 6, 6):
        assert rep.monomial_found
        assert (rep.a, rep.b) == (rep.n * (rep.k + 1 - rep.n), 0)
    for rep in verify_identity("hs2", JS, 6, 6):
        assert rep.monomial_found
        assert (rep.a, rep.b) == (rep.n * rep.k, 0)


def test_js_single_cases():
    lhs = hs1_lhs(JS, 1, 1)
    assert lhs == 1 + Fraction(1, 2) / Fraction(9, 10)
    assert lhs * JS.tau1 == deformed_binomial(JS, 2, 1)
    fit = fit_monomial(JS, hs2_lhs(JS, 1, 1), deformed_binomial(JS, 2, 1), 2)
    assert (fit.a, fit.b) == (1, 0)


def test_literal_window_overshoots():
    # dropping the capacity cap adds positive terms, so the sum exceeds the
    # binomial whenever the window actually widens (n >= 2)
    for alg in TAU1_ONE_PRESETS:
        for k in range(2, 6):
            for n in range(2, k + 2):
                wide = hs1_lhs(alg, k, n, literal_window=True)
                assert wide > deformed_binomial(alg, k + 1, n)


def test_cauchy_m_invariance_tau1_one():
    for alg in TAU1_ONE_PRESETS:
        for k in range(1, 5):
            for n in range(0, 5):
                values = {cauchy_lhs(alg, k, n, m) for m in range(k + 1)}
                assert values == {deformed_binomial(alg, k + n, n)}


def test_hsb_sign_conventions_recorded():
    # the stated tau2 sign verifies wherever tau1 = 1; the mirror is never
    # the one that rescues it
    for rep in verify_identity("hsb", Q_HALF, 4, 4):
        assert rep.exact_match and rep.note == ""
    # for general tau the grouped sum needs per-term tau1 corrections, so no
    # constant monomial exists under either sign; the report carries that
    reports = verify_identity("hsb", JS, 2, 2)
    assert any(not r.monomial_found for r in reports)
    assert all(not r.exact_match or r.n == 0 for r in reports)


def test_compositions():
    assert set(compositions(3)) == {(3,), (1, 2), (2, 1), (1, 1, 1)}
    assert sum(1 for _ in compositions(6)) == 32


def test_report_order_and_serialization():
    reports = verify_identity("hs1", Q_HALF, 3, 3)
    keys = [(r.k, r.n) for r in reports]
    assert keys == sorted(keys)
    csv_text = reports_to_csv(reports)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "identity,k,n,m,groups,exact,a,b"
    assert len(lines) == len(reports) + 1
    obj = reports_to_json_obj(reports)
    assert json.loads(json.dumps(obj)) == obj
    assert all(row["exact"] for row in obj)
