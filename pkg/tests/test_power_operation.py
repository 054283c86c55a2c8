from fractions import Fraction

import pytest

from tatesub.power_operation import (
    QPRIME_EXPONENT_SIGN,
    assemble_psi_star,
    calibrate_qprime_sign,
    compare_formula_vs_pointwise,
    paper_formula_Pbar,
    pullback_xk_pointwise,
    qprime_image_check,
    verify_psi_star_hom,
)
from tatesub.rings import divisor_pairs, s_star_factor, structural_maps
from tatesub.subgroups import isogeny_psi
from tatesub.torsion import ZERO, Q, TatePoint, char_xk, root_of_unity


def rendered(entry):
    return {m: str(v) for m, v in enumerate(entry.entries) if v is not None}


class TestPointwise:
    def test_mu2_factor(self):
        assert rendered(pullback_xk_pointwise(2, 2, 1, 0)) == {0: "1"}

    def test_n1(self):
        assert rendered(pullback_xk_pointwise(1, 1, 1, 0)) == {0: "1"}

    def test_zero_table(self):
        assert rendered(pullback_xk_pointwise(2, 1, 2, 1)) == {}

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            pullback_xk_pointwise(4, 2, 3, 0)


class TestFormula:
    def test_e1(self):
        # x_0^2 normalises to 1 on the component where x^2 = 1
        entry = paper_formula_Pbar(2, 2, 1, 0)
        assert entry.support() == [0]
        assert entry.entries[0] == s_star_factor(2, 2, 1, 0).monomial(x=2)

    def test_d1_e2(self):
        entry = paper_formula_Pbar(2, 1, 2, 0)
        # q'^-1 is stored in normal form: q'^2 = q gives q'^-1 = q' q^-1
        assert rendered(entry) == {0: "x", 1: "x*q'*q^-1"}

    def test_n4_d2_e2(self):
        entry = paper_formula_Pbar(4, 2, 2, 2)
        assert entry.support() == [1, 3]
        assert rendered(entry) == {1: "x^2", 3: "x^2*q'*q^-2"}

    def test_e_not_dividing_k(self):
        assert paper_formula_Pbar(6, 2, 3, 4).support() == []


def test_calibrated_sign():
    assert calibrate_qprime_sign() == QPRIME_EXPONENT_SIGN == -1


@pytest.mark.parametrize("N", range(1, 9))
def test_formula_matches_pointwise(N):
    report = compare_formula_vs_pointwise(N)
    assert report["mismatches"] == 0
    assert len(report["tables"]) == N * len(divisor_pairs(N))
    assert all(t["status"] == "match" for t in report["tables"])


@pytest.mark.parametrize("N", range(1, 9))
def test_support_and_degree(N):
    for d, e in divisor_pairs(N):
        for k in range(N):
            entry = pullback_xk_pointwise(N, d, e, k)
            assert entry.support() == [m for m in range(N) if (e * m - k) % N == 0]
            if k % e:
                assert entry.support() == []
            for m in entry.support():
                (exps, c), = entry.entries[m].terms.items()
                assert c == 1
                # x^d with d = N rewrites to a power of q
                assert exps[0] == d % N


def _evaluate(element, a, qp):
    (exps, c), = element.terms.items()
    x, s, r = exps
    value = a**x * qp**s * Q**r
    return value if c == 1 else value * root_of_unity(1, 2)


@pytest.mark.parametrize("N", range(1, 7))
def test_multiplicative_on_points(N):
    for d, e in divisor_pairs(N):
        entries = [pullback_xk_pointwise(N, d, e, k) for k in range(N)]
        for w in range(e):
            qp = root_of_unity(w, e) * Q ** Fraction(d, e)
            for m in range(N):
                for i in range(N):
                    a = root_of_unity(i, N) * Q ** Fraction(m, N)
                    image = isogeny_psi(TatePoint(a, Fraction(m, N)), d, e, qp)
                    for k in range(N):
                        for k2 in range(N):
                            u, v = char_xk(k, image, N), char_xk(k2, image, N)
                            f, g = entries[k].entries[m], entries[k2].entries[m]
                            assert (u is ZERO) == (f is None)
                            assert (v is ZERO) == (g is None)
                            if f is None or g is None:
                                continue
                            assert _evaluate(f * g, a, qp) == u * v


class TestPsiStar:
    @pytest.mark.parametrize("N", range(1, 9))
    def test_certificate(self, N):
        cert = verify_psi_star_hom(N)
        assert cert.passed, cert.failure
        assert cert.support_matches and cert.outer_square_commutes and cert.pbar_triangle_commutes
        assert cert.relations_checked == 2 * N * len(divisor_pairs(N))

    def test_n2_relation(self):
        R = s_star_factor(2, 2, 1, 0)
        x0 = pullback_xk_pointwise(2, 2, 1, 0).entries[0]
        assert (R.gen("x") ** 2) ** 2 - R.one() == R.zero()
        assert (x0**2 - R.gen("qp") ** 0).is_zero()

    def test_structural_q(self):
        psi = assemble_psi_star(3)
        for i, h in psi.assignment:
            assert h.images["q"] == h.target.gen("q")
            assert h.images["qp"] == h.target.gen("qp")

    @pytest.mark.parametrize("N", [1, 2, 4, 6])
    def test_q_to_qprime(self, N):
        assert qprime_image_check(N)

    def test_e1_factor_collapses(self):
        N = 4
        h = structural_maps(N)["T_to_t"](N, 1, 0)
        assert h.images["q"] == h.target.monomial(q=N)

    def test_q_image_readings(self):
        readings = compare_formula_vs_pointwise(4)["q_image_readings"]
        assert readings["q -> q'"] == {"consistent": True, "violations": 0}
