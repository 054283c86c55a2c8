"""Order-N subgroups of T(K)[N], their classification data and the isogenies
whose kernels they are.

A subgroup ``H`` is classified by ``d = |H ∩ mu_N|``, ``e = N / d`` and the
unit ``q' = u^d`` where ``[u, 1/e]`` is any point of ``H`` over ``1/e``.
Conversely a triple ``(d, e, q')`` with ``q'^e = q^d`` determines the
isogeny ``psi: [a, x] -> [a^d, e x]`` onto the curve with parameter ``q'``,
and ``H`` is its kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional

from .rings import RingHom, WellDefinednessError, divisor_pairs, sub_factor_ring, unit_element, unit_ring
from .torsion import (
    Q,
    CycloQUnit,
    TatePoint,
    TorsionError,
    enumerate_torsion,
    identity,
    is_torsion,
    point_from_coordinates,
    root_of_unity,
)

__all__ = [
    "SubgroupRecord",
    "ClassificationError",
    "UniversalCertificate",
    "sigma",
    "hermite_matrices",
    "enumerate_subgroups",
    "subgroups_by_closure",
    "classify",
    "classify_all_choices",
    "admissible_triples",
    "isogeny_psi",
    "kernel_of_psi",
    "classifying_map",
    "verify_universal_bijection",
    "classification_report",
]


class ClassificationError(ValueError):
    pass


def sigma(N: int) -> int:
    return sum(d for d in range(1, N + 1) if N % d == 0)


@dataclass(frozen=True)
class SubgroupRecord:
    N: int
    points: frozenset
    hermite: tuple[tuple[int, int], tuple[int, int]]
    d: Optional[int] = None
    e: Optional[int] = None
    q_prime: Optional[CycloQUnit] = None

    @property
    def is_classified(self) -> bool:
        return self.d is not None

    def classified(self) -> SubgroupRecord:
        d, e, qp = classify(self.points)
        return replace(self, d=d, e=e, q_prime=qp)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "e": self.e,
            "qprime": self.q_prime.to_json() if self.q_prime is not None else None,
            "points": [P.to_json() for P in sorted(self.points)],
            "hermite": [list(row) for row in self.hermite],
        }


def hermite_matrices(N: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """``[[a, b], [0, c]]`` with ``a c = N`` and ``0 <= b < c``, lexicographic in ``(a, b)``."""
    return [((a, b), (0, N // a)) for a, _ in divisor_pairs(N) for b in range(N // a)]


def _points_of_lattice(N: int, hermite) -> frozenset:
    # rows span an index-N lattice in coordinates (t-index j, root index i)
    (a, b), (_, c) = hermite
    pts = set()
    for x in range(c):
        for y in range(a):
            j = (x * a) % N
            i = (x * b + y * c) % N
            pts.add(point_from_coordinates(i, j, N))
    return frozenset(pts)


def enumerate_subgroups(N: int) -> list[SubgroupRecord]:
    """All ``sigma(N)`` subgroups of order N, one per index-N sublattice of Z^2."""
    if N < 1:
        raise ValueError("N must be positive")
    return [SubgroupRecord(N, _points_of_lattice(N, h), h) for h in hermite_matrices(N)]


def subgroups_by_closure(N: int) -> set[frozenset[tuple[int, int]]]:
    """Order-N subgroups of ``(Z/N)^2`` by closing every pair of generators.

    Independent of the lattice enumeration; quadratic in ``N^2``, so meant
    for small N only.
    """
    elems = [(i, j) for i in range(N) for j in range(N)]
    found: set[frozenset[tuple[int, int]]] = set()
    seen_closures: dict[frozenset, None] = {}
    for g1, g2 in product(elems, repeat=2):
        group = {(0, 0)}
        frontier = [(0, 0)]
        while frontier:
            nxt = []
            for p in frontier:
                for g in (g1, g2):
                    s = ((p[0] + g[0]) % N, (p[1] + g[1]) % N)
                    if s not in group:
                        group.add(s)
                        nxt.append(s)
            frontier = nxt
        fz = frozenset(group)
        if fz not in seen_closures:
            seen_closures[fz] = None
            if len(fz) == N:
                found.add(fz)
    return found


def _check_subgroup(H: frozenset) -> int:
    N = len(H)
    if N == 0:
        raise ClassificationError("empty point set")
    params = {P.param for P in H}
    if params != {Q}:
        raise ClassificationError("points must lie on the curve with parameter q")
    if identity() not in H:
        raise ClassificationError("identity missing")
    for P in H:
        if not is_torsion(P, N):
            raise ClassificationError(f"{P} is not {N}-torsion")
        if -P not in H:
            raise ClassificationError(f"not closed under negation at {P}")
    for P in H:
        for R in H:
            if P + R not in H:
                raise ClassificationError(f"not closed: {P} + {R}")
    return N


def classify_all_choices(H: Iterable[TatePoint]) -> tuple[int, int, list[CycloQUnit]]:
    """``(d, e, [q' from every admissible choice of lift])``."""
    H = frozenset(H)
    N = _check_subgroup(H)
    d = sum(1 for P in H if P.t == 0)
    if N % d:
        raise ClassificationError(f"|H ∩ mu_N| = {d} does not divide {N}")
    e = N // d
    ts = {P.t for P in H}
    if ts != {Fraction(j, e) for j in range(e)}:
        raise ClassificationError(f"image in Q/Z is not the subgroup of order {e}")
    # u of the representative sitting exactly at t = 1/e (for e = 1 that is t = 1, not 0)
    step = Fraction(1, e)
    lifts = [P.u * Q ** (step - P.t) for P in H if P.t == step % 1]
    return d, e, [u**d for u in lifts]


def classify(H: Iterable[TatePoint]) -> tuple[int, int, CycloQUnit]:
    d, e, choices = classify_all_choices(H)
    if len(set(choices)) != 1:
        raise ClassificationError(f"q' depends on the lift: {sorted(set(choices))}")
    q_prime = choices[0]
    if q_prime**e != Q**d:
        raise ClassificationError(f"q'^e != q^d for q' = {q_prime}")
    return d, e, q_prime


def admissible_triples(N: int) -> list[tuple[int, int, CycloQUnit]]:
    """All ``(d, e, zeta_e^j q^(d/e))``, ascending in ``d`` then ``j``."""
    return [
        (d, e, root_of_unity(j, e) * Q ** Fraction(d, e))
        for d, e in divisor_pairs(N)
        for j in range(e)
    ]


def _check_triple(N: int, d: int, e: int, q_prime: CycloQUnit) -> None:
    if d * e != N:
        raise ClassificationError(f"d e = {d * e} != N = {N}")
    if q_prime**e != Q**d:
        raise ClassificationError(f"q'^e != q^d for q' = {q_prime}")


def isogeny_psi(P: TatePoint, d: int, e: int, q_prime: CycloQUnit) -> TatePoint:
    """``[a, x] -> [a^d, e x]`` from ``Tate(p)`` to ``Tate(q')``; needs ``q'^e = p^d``."""
    if q_prime**e != P.param**d:
        raise ClassificationError(f"q'^e != p^d for q' = {q_prime}, p = {P.param}")
    return TatePoint(P.u**d, e * P.t, q_prime)


def kernel_of_psi(N: int, d: int, e: int, q_prime: CycloQUnit) -> frozenset:
    _check_triple(N, d, e, q_prime)
    zero = identity(q_prime)
    return frozenset(P for P in enumerate_torsion(N) if isogeny_psi(P, d, e, q_prime) == zero)


def classifying_map(d: int, e: int, q_prime: CycloQUnit) -> RingHom:
    """``F: Z[q±][q']/(q^d - q'^e) -> K`` with ``q -> q`` and ``q' -> q_prime``.

    ``K`` is modelled by :func:`unit_ring` at level ``e``; raises
    :class:`WellDefinednessError` if the relation is not respected.
    """
    src = sub_factor_ring(d, e)
    tgt = unit_ring(e)
    return RingHom(src, tgt, {"qp": unit_element(q_prime, tgt), "q": tgt.gen("q")})


@dataclass
class UniversalCertificate:
    N: int
    sigma: int
    subgroup_count: int = 0
    subgroups_to_triples: bool = False
    triples_to_subgroups: bool = False
    every_subgroup_is_kernel: bool = False
    ring_maps_well_defined: bool = False
    failure: Optional[str] = None
    records: list[SubgroupRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "sigma": self.sigma,
            "subgroups": self.subgroup_count,
            "subgroups_to_triples": self.subgroups_to_triples,
            "triples_to_subgroups": self.triples_to_subgroups,
            "every_subgroup_is_kernel": self.every_subgroup_is_kernel,
            "ring_maps_well_defined": self.ring_maps_well_defined,
            "roundtrip": "pass" if self.passed else {"fail": self.failure},
        }


def verify_universal_bijection(N: int) -> UniversalCertificate:
    """Check that classification and kernel formation are mutually inverse."""
    cert = UniversalCertificate(N, sigma(N))
    records = []
    try:
        records = [r.classified() for r in enumerate_subgroups(N)]
    except (ClassificationError, TorsionError) as exc:
        cert.failure = f"classification failed: {exc}"
        return cert
    cert.records = records
    cert.subgroup_count = len(records)
    if len(records) != cert.sigma or len({r.points for r in records}) != len(records):
        cert.failure = f"expected {cert.sigma} distinct subgroups, got {len(records)}"
        return cert
    for r in records:
        if len(r.points) != N:
            cert.failure = f"subgroup {r.hermite} has {len(r.points)} points"
            return cert
        if kernel_of_psi(N, r.d, r.e, r.q_prime) != r.points:
            cert.failure = f"kernel of psi(d={r.d}, e={r.e}, q'={r.q_prime}) differs from subgroup {r.hermite}"
            return cert
    cert.subgroups_to_triples = True

    kernels = set()
    for d, e, qp in admissible_triples(N):
        K = kernel_of_psi(N, d, e, qp)
        if len(K) != N:
            cert.failure = f"kernel for (d={d}, e={e}, q'={qp}) has {len(K)} points"
            return cert
        if classify(K) != (d, e, qp):
            cert.failure = f"classify(kernel(d={d}, e={e}, q'={qp})) = {classify(K)}"
            return cert
        kernels.add(K)
    cert.triples_to_subgroups = True

    if kernels != {r.points for r in records}:
        cert.failure = "kernels and enumerated subgroups differ as sets"
        return cert
    cert.every_subgroup_is_kernel = True

    for r in records:
        try:
            F = classifying_map(r.d, r.e, r.q_prime)
        except WellDefinednessError as exc:
            cert.failure = f"F_(d={r.d}, e={r.e}) ill-defined: {exc}"
            return cert
        if F(F.source.gen("qp")) != unit_element(r.q_prime, F.target):
            cert.failure = f"F_(d={r.d}, e={r.e}) does not send q' to {r.q_prime}"
            return cert
    cert.ring_maps_well_defined = True
    return cert


def classification_report(N: int) -> dict:
    cert = verify_universal_bijection(N)
    records = sorted(cert.records, key=lambda r: (r.d, r.q_prime.root))
    return {
        "N": N,
        "sigma": cert.sigma,
        "records": [r.to_json() for r in records],
        "roundtrip": "pass" if cert.passed else {"fail": cert.failure},
    }
