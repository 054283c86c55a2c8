import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sigma
from tatesub.rings import (
    PresentationError,
    RewriteRule,
    RingHom,
    RingPresentation,
    WellDefinednessError,
    build_O_sStar,
    build_O_Sub,
    build_O_TN,
    build_O_tStar,
    component_ring,
    divisor_pairs,
    ring_hom,
    s_star_factor,
    sub_factor_ring,
    t_star_factor,
)


class TestComponentRing:
    def test_rank_one(self):
        R = component_ring(1, 0)
        assert R.gen("x") == R.one()
        assert R.rank() == 1

    def test_cube_n2(self):
        R = component_ring(2, 1)
        assert R.gen("x") ** 3 == R.monomial(x=1, q=1)

    def test_fourth_power_n3(self):
        R = component_ring(3, 2)
        assert R.gen("x") ** 4 == R.monomial(x=1, q=2)

    def test_negative_power(self):
        R = component_ring(3, 1)
        # x^-1 = x^2 q^-1
        assert R.gen("x") ** -1 == R.monomial(x=2, q=-1)
        assert R.gen("x") * R.gen("x") ** -1 == R.one()

    @pytest.mark.parametrize("N,k", [(0, 0), (2, 2), (3, -1)])
    def test_bad_arguments(self, N, k):
        with pytest.raises(ValueError):
            component_ring(N, k)


class TestSubFactor:
    def test_e1_collapses(self):
        R = sub_factor_ring(2, 1)
        assert R.gen("qp") == R.monomial(q=2)
        assert R.rank() == 1

    def test_square_root(self):
        R = sub_factor_ring(1, 2)
        assert R.gen("qp") ** 3 == R.monomial(qp=1, q=1)

    def test_d2_e3(self):
        R = sub_factor_ring(2, 3)
        assert R.gen("qp") ** 7 == R.monomial(qp=1, q=4)

    def test_basis(self):
        R = sub_factor_ring(3, 4)
        assert [str(b) for b in R.basis()] == ["1", "q'", "q'^2", "q'^3"]


class TestStarFactors:
    def test_s_star_mixed(self):
        R = s_star_factor(2, 1, 2, 1)
        assert R.monomial(x=2, qp=2) == R.monomial(q=2)

    def test_t_star_e1(self):
        R = t_star_factor(2, 2, 1, 0)
        assert R.gen("qp") == R.monomial(q=2)
        assert R.gen("x") ** 2 == R.one()

    def test_t_star_chain(self):
        R = t_star_factor(2, 1, 2, 1)
        assert R.gen("x") ** 2 == R.gen("qp")
        assert R.gen("x") ** 4 == R.gen("q")

    def test_rules_must_point_forward(self):
        with pytest.raises(PresentationError):
            RingPresentation(("a", "b"), (RewriteRule("a", 2, (("b", 1),)), RewriteRule("b", 2, (("a", 1),))))


class TestProducts:
    def test_O_TN_1(self):
        P = build_O_TN(1)
        assert len(P) == 1 and P.rank() == 1

    def test_O_TN_2_rules(self):
        assert [str(f.rules[0]) for f in build_O_TN(2).factors] == ["x^2 -> 1", "x^2 -> q^1"]

    def test_O_Sub_labels(self):
        assert build_O_Sub(2).labels == [(1, 2), (2, 1)]
        assert build_O_Sub(6).labels == [(1, 6), (2, 3), (3, 2), (6, 1)]

    def test_factor_rank_is_e(self):
        for R in build_O_Sub(12).factors:
            d, e = R.label
            assert R.rank() == e

    @pytest.mark.parametrize("N", range(1, 13))
    def test_ranks(self, N):
        assert build_O_TN(N).rank() == N * N
        assert build_O_Sub(N).rank() == sigma(N)
        assert sum(e for _, e in divisor_pairs(N)) == sigma(N)

    def test_star_counts(self):
        assert len(build_O_sStar(1)) == 1
        assert len(build_O_sStar(6)) == 24
        assert len(build_O_tStar(6)) == 24


class TestNormalForm:
    R = s_star_factor(6, 2, 3, 4)

    exps = st.tuples(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))

    @settings(max_examples=200, deadline=None)
    @given(exps)
    def test_idempotent(self, v):
        nf = self.R.normal_form(v)
        assert self.R.normal_form(nf) == nf
        assert self.R.is_normal(nf)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(exps, st.integers(-5, 5)), max_size=6), st.lists(st.tuples(exps, st.integers(-5, 5)), max_size=6))
    def test_linear(self, a, b):
        R = self.R
        ea, eb = R.element(a), R.element(b)
        assert R.element(a + b) == ea + eb
        assert R.element([(v, 3 * c) for v, c in a]) == ea * 3

    @settings(max_examples=100, deadline=None)
    @given(exps, exps)
    def test_multiplicative(self, u, v):
        R = self.R
        prod = tuple(x + y for x, y in zip(u, v))
        assert R.element({u: 1}) * R.element({v: 1}) == R.element({prod: 1})


class TestRingHom:
    base = RingPresentation(("q",), (), label="Z[q]")

    def test_q_to_q(self):
        R = sub_factor_ring(1, 2)
        h = ring_hom(self.base, R, {"q": R.gen("q")})
        assert h(self.base.gen("q") ** 5) == R.monomial(q=5)

    def test_q_to_qprime(self):
        R = sub_factor_ring(1, 2)
        h = ring_hom(self.base, R, {"q": R.gen("qp")})
        assert h(self.base.gen("q") ** 3) == R.monomial(qp=1, q=1)

    def test_q_to_x(self):
        R = component_ring(2, 1)
        h = ring_hom(self.base, R, {"q": R.gen("x")})
        assert h(self.base.gen("q") ** -1) == R.monomial(x=1, q=-1)

    def test_relation_violation(self):
        src, tgt = component_ring(2, 1), component_ring(2, 0)
        with pytest.raises(WellDefinednessError) as exc:
            RingHom(src, tgt, {"x": tgt.gen("x"), "q": tgt.gen("q")})
        assert not exc.value.residue.is_zero()
        assert str(exc.value.residue) == "1 - q"

    def test_missing_image(self):
        R = component_ring(2, 1)
        with pytest.raises(WellDefinednessError):
            RingHom(R, R, {"x": R.gen("x")})

    def test_non_unit_image(self):
        R = component_ring(2, 1)
        with pytest.raises(WellDefinednessError):
            RingHom(self.base, R, {"q": R.gen("q") + R.one()})

    def test_composition_associates(self):
        A, B, C = component_ring(4, 2), component_ring(2, 1), t_star_factor(2, 1, 2, 1)
        f = RingHom(A, B, {"x": B.gen("x"), "q": B.gen("q")})
        g = RingHom(B, C, {"x": C.gen("x"), "q": C.gen("qp")})
        h = RingHom.identity(C)
        assert h.compose(g.compose(f)) == h.compose(g).compose(f)


def test_json_terms_sorted():
    R = s_star_factor(3, 1, 3, 1)
    a = R.monomial(qp=2) + R.monomial(x=1) + R.one() * 4
    data = a.to_json(R.label)
    assert data["factor"] == [[1, 3], 1]
    assert [t[0] for t in data["terms"]] == [
        {"x": 0, "qp": 0, "q": 0},
        {"x": 0, "qp": 2, "q": 0},
        {"x": 1, "qp": 0, "q": 0},
    ]
    assert [t[1] for t in data["terms"]] == ["4", "1", "1"]
