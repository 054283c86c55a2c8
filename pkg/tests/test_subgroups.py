from collections import Counter
from fractions import Fraction

import pytest

from oracles import sigma
from tatesub.rings import WellDefinednessError
from tatesub.subgroups import (
    ClassificationError,
    admissible_triples,
    classification_report,
    classify,
    classify_all_choices,
    classifying_map,
    enumerate_subgroups,
    hermite_matrices,
    isogeny_psi,
    kernel_of_psi,
    subgroups_by_closure,
    verify_universal_bijection,
)
from tatesub.torsion import (
    Q,
    a_N,
    enumerate_torsion,
    identity,
    point_from_coordinates,
    root_of_unity,
    torsion_coordinates,
)

MINUS_ONE = root_of_unity(1, 2)
SQRT_Q = Q ** Fraction(1, 2)


class TestEnumeration:
    @pytest.mark.parametrize("N,count", [(1, 1), (2, 3), (6, 12), (12, 28)])
    def test_counts(self, N, count):
        assert len(enumerate_subgroups(N)) == count

    @pytest.mark.parametrize("N", range(1, 13))
    def test_sigma_and_closed(self, N):
        subs = enumerate_subgroups(N)
        assert len(subs) == sigma(N)
        assert len({r.points for r in subs}) == sigma(N)
        for r in subs:
            assert len(r.points) == N
            assert all(P + R in r.points for P in r.points for R in r.points)

    @pytest.mark.parametrize("N", range(1, 9))
    def test_closure_oracle(self, N):
        lattice = {frozenset(torsion_coordinates(P, N) for P in r.points) for r in enumerate_subgroups(N)}
        assert lattice == subgroups_by_closure(N)

    def test_hermite_order(self):
        assert hermite_matrices(4) == [
            ((1, 0), (0, 4)), ((1, 1), (0, 4)), ((1, 2), (0, 4)), ((1, 3), (0, 4)),
            ((2, 0), (0, 2)), ((2, 1), (0, 2)),
            ((4, 0), (0, 1)),
        ]


class TestClassify:
    def test_mu2(self):
        H = {identity(), a_N(MINUS_ONE)}
        assert classify(H) == (2, 1, Q**2)

    def test_principal_half(self):
        H = {identity(), point_from_coordinates(0, 1, 2)}
        assert classify(H) == (1, 2, SQRT_Q)

    def test_twisted_half(self):
        H = {identity(), point_from_coordinates(1, 1, 2)}
        assert classify(H) == (1, 2, MINUS_ONE * SQRT_Q)

    def test_n2_exhausts(self):
        triples = {classify(r.points) for r in enumerate_subgroups(2)}
        assert triples == {(2, 1, Q**2), (1, 2, SQRT_Q), (1, 2, MINUS_ONE * SQRT_Q)}

    @pytest.mark.parametrize("N", range(1, 13))
    def test_choice_independent(self, N):
        for r in enumerate_subgroups(N):
            d, e, choices = classify_all_choices(r.points)
            assert len(choices) == d
            assert len(set(choices)) == 1
            assert choices[0] ** e == Q**d

    def test_not_a_subgroup(self):
        with pytest.raises(ClassificationError):
            classify({identity(), point_from_coordinates(1, 0, 3)})

    def test_missing_identity(self):
        with pytest.raises(ClassificationError):
            classify({a_N(MINUS_ONE)})


class TestIsogeny:
    def test_identity_to_identity(self):
        assert isogeny_psi(identity(), 2, 3, Q ** Fraction(2, 3)) == identity(Q ** Fraction(2, 3))

    def test_requires_relation(self):
        with pytest.raises(ClassificationError):
            isogeny_psi(identity(), 2, 3, Q)

    def test_kernel_mu2(self):
        assert kernel_of_psi(2, 2, 1, Q**2) == {identity(), a_N(MINUS_ONE)}

    @pytest.mark.parametrize("N", [3, 5, 8])
    def test_kernel_full_mu(self, N):
        assert kernel_of_psi(N, N, 1, Q**N) == {a_N(root_of_unity(i, N)) for i in range(N)}

    @pytest.mark.parametrize("N,j", [(4, 0), (4, 3), (6, 1)])
    def test_kernel_cyclic(self, N, j):
        qp = root_of_unity(j, N) * Q ** Fraction(1, N)
        K = kernel_of_psi(N, 1, N, qp)
        gen = point_from_coordinates(j, 1, N)
        assert gen in K
        assert K == {_mul(n, gen) for n in range(N)}

    @pytest.mark.parametrize("N", range(1, 9))
    def test_homomorphism(self, N):
        pts = enumerate_torsion(N)
        for d, e, qp in admissible_triples(N):
            for P in pts:
                for R in pts:
                    assert isogeny_psi(P + R, d, e, qp) == isogeny_psi(P, d, e, qp) + isogeny_psi(R, d, e, qp)

    @pytest.mark.parametrize("N", range(1, 13))
    def test_kernel_size(self, N):
        for d, e, qp in admissible_triples(N):
            assert len(kernel_of_psi(N, d, e, qp)) == N


def _mul(n, P):
    out = identity(P.param)
    for _ in range(n):
        out = out + P
    return out


class TestUniversal:
    @pytest.mark.parametrize("N", range(1, 13))
    def test_bijection(self, N):
        cert = verify_universal_bijection(N)
        assert cert.passed, cert.failure
        assert cert.subgroup_count == sigma(N)
        assert cert.to_json()["roundtrip"] == "pass"

    def test_every_subgroup_is_kernel(self):
        N = 6
        kernels = {kernel_of_psi(N, d, e, qp) for d, e, qp in admissible_triples(N)}
        assert kernels == {r.points for r in enumerate_subgroups(N)}

    def test_classifying_map(self):
        F = classifying_map(2, 3, root_of_unity(1, 3) * Q ** Fraction(2, 3))
        assert str(F(F.source.gen("qp"))) == "z*y^2"

    def test_classifying_map_rejects_bad_qprime(self):
        with pytest.raises(WellDefinednessError):
            classifying_map(2, 3, Q ** Fraction(1, 3))

    def test_report_n6(self):
        rep = classification_report(6)
        assert rep["sigma"] == 12 and rep["roundtrip"] == "pass"
        counts = Counter((r["d"], r["e"]) for r in rep["records"])
        assert counts == {(1, 6): 6, (2, 3): 3, (3, 2): 2, (6, 1): 1}
        keys = [(r["d"], Fraction(r["qprime"]["root"])) for r in rep["records"]]
        assert keys == sorted(keys)
