"""Finitely presented commutative rings over Z[q, 1/q] with monomial rewriting.

Every ring here is a Laurent polynomial ring in a few unit generators
modulo binomial relations of the shape ``g^n = (monomial in later
generators)``.  Applying the rules in order gives each monomial a unique
normal form, so equality of elements is decidable by comparing
coefficient maps.

The rings built below are the coordinate rings of the torsion scheme
``T[N]`` (one factor ``Z[q±][x]/(x^N - q^k)`` per component), the subgroup
classifying ring (one factor ``Z[q±][q']/(q'^e - q^d)`` per ``de = N``),
and the two base changes ``s*`` and ``t*`` of ``T[N]`` to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Hashable, Iterable, Mapping, Sequence

__all__ = [
    "RewriteRule",
    "RingPresentation",
    "RingElement",
    "RingHom",
    "ProductRing",
    "ProductHom",
    "WellDefinednessError",
    "PresentationError",
    "component_ring",
    "sub_factor_ring",
    "s_star_factor",
    "t_star_factor",
    "unit_ring",
    "build_O_TN",
    "build_O_Sub",
    "build_O_sStar",
    "build_O_tStar",
    "ring_hom",
    "divisor_pairs",
]

Exps = tuple[int, ...]


class PresentationError(ValueError):
    pass


class WellDefinednessError(ValueError):
    """A relation of the source does not map to zero in the target."""

    def __init__(self, relation: str, residue: RingElement):
        self.relation = relation
        self.residue = residue
        super().__init__(f"relation {relation} maps to nonzero {residue}")


def divisor_pairs(N: int) -> list[tuple[int, int]]:
    """Ordered pairs ``(d, e)`` with ``d e = N``, ascending in ``d``."""
    if N < 1:
        raise ValueError("N must be positive")
    return [(d, N // d) for d in range(1, N + 1) if N % d == 0]


@dataclass(frozen=True)
class RewriteRule:
    generator: str
    threshold: int
    replacement: tuple[tuple[str, int], ...] = ()

    def __str__(self) -> str:
        rhs = "*".join(f"{g}^{n}" for g, n in self.replacement if n) or "1"
        return f"{self.generator}^{self.threshold} -> {rhs}"


@dataclass(frozen=True)
class RingPresentation:
    """Generators (all units) and rewrite rules applied in the listed order.

    A rule's replacement may only involve generators whose own rule comes
    later, or free generators.  That makes one left-to-right pass a
    terminating, confluent reduction.
    """

    generators: tuple[str, ...]
    rules: tuple[RewriteRule, ...]
    label: Hashable = None
    _plan: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        index = {g: i for i, g in enumerate(self.generators)}
        if len(index) != len(self.generators):
            raise PresentationError("duplicate generator")
        ruled = [r.generator for r in self.rules]
        if len(set(ruled)) != len(ruled):
            raise PresentationError("at most one rule per generator")
        plan = []
        for pos, rule in enumerate(self.rules):
            if rule.generator not in index or rule.threshold < 1:
                raise PresentationError(f"bad rule {rule}")
            vec = [0] * len(self.generators)
            for g, n in rule.replacement:
                if g not in index:
                    raise PresentationError(f"unknown generator {g} in {rule}")
                if g in ruled[: pos + 1]:
                    raise PresentationError(f"rule {rule} rewrites into an already-reduced generator")
                vec[index[g]] += n
            plan.append((index[rule.generator], rule.threshold, tuple(vec)))
        object.__setattr__(self, "_plan", tuple(plan))

    def index(self, name: str) -> int:
        return self.generators.index(name)

    @property
    def free_generators(self) -> tuple[str, ...]:
        ruled = {r.generator for r in self.rules}
        return tuple(g for g in self.generators if g not in ruled)

    def rank(self) -> int:
        """Rank over the Laurent ring in the free generators."""
        r = 1
        for rule in self.rules:
            r *= rule.threshold
        return r

    def normal_form(self, exps: Sequence[int]) -> Exps:
        v = list(exps)
        for i, n, repl in self._plan:
            k, v[i] = divmod(v[i], n)
            if k:
                for j, m in enumerate(repl):
                    v[j] += k * m
        return tuple(v)

    def is_normal(self, exps: Sequence[int]) -> bool:
        return all(0 <= exps[i] < n for i, n, _ in self._plan)

    def element(self, terms: Mapping[Sequence[int], int] | Iterable[tuple[Sequence[int], int]]) -> RingElement:
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Exps, int] = {}
        for exps, c in items:
            if len(exps) != len(self.generators):
                raise PresentationError("exponent vector has wrong length")
            nf = self.normal_form(exps)
            out[nf] = out.get(nf, 0) + int(c)
        return RingElement(self, {m: c for m, c in out.items() if c})

    def monomial(self, coeff: int = 1, **exps: int) -> RingElement:
        vec = [0] * len(self.generators)
        for g, n in exps.items():
            vec[self.index(g)] = n
        return self.element({tuple(vec): coeff})

    def gen(self, name: str) -> RingElement:
        return self.monomial(**{name: 1})

    def one(self) -> RingElement:
        return self.monomial()

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def basis(self) -> list[RingElement]:
        """Normal monomials with zero exponent on every free generator."""
        ranges = []
        for g in self.generators:
            rule = next((r for r in self.rules if r.generator == g), None)
            ranges.append(range(rule.threshold) if rule else range(1))
        return [self.element({tuple(v): 1}) for v in product(*ranges)]

    def relations(self) -> list[tuple[str, RingElement, RingElement]]:
        """Each rule as ``(name, lhs monomial, rhs monomial)`` in the free ring."""
        out = []
        for rule in self.rules:
            lhs = [0] * len(self.generators)
            lhs[self.index(rule.generator)] = rule.threshold
            rhs = [0] * len(self.generators)
            for g, n in rule.replacement:
                rhs[self.index(g)] += n
            out.append((str(rule), tuple(lhs), tuple(rhs)))
        return out

    def __str__(self) -> str:
        rules = ", ".join(str(r) for r in self.rules)
        return f"Z[{', '.join(self.generators)}; units]/({rules})"


class RingElement:
    """Integer combination of normal-form monomials of one presentation."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: RingPresentation, terms: Mapping[Exps, int]):
        self.presentation = presentation
        self.terms: dict[Exps, int] = dict(terms)

    def _coerce(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.presentation != self.presentation:
                raise PresentationError("elements of different rings")
            return other
        if isinstance(other, int):
            return self.presentation.one() * other if other else self.presentation.zero()
        return NotImplemented

    def __add__(self, other) -> RingElement:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return RingElement(self.presentation, {m: c for m, c in out.items() if c})

    __radd__ = __add__

    def __neg__(self) -> RingElement:
        return RingElement(self.presentation, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> RingElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RingElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> RingElement:
        if isinstance(other, int):
            return RingElement(self.presentation, {m: c * other for m, c in self.terms.items() if c * other})
        other = self._coerce(other)
        pairs = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                pairs.append((tuple(a + b for a, b in zip(m1, m2)), c1 * c2))
        return self.presentation.element(pairs)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RingElement:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.presentation.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_unit_monomial(self) -> bool:
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def inverse(self) -> RingElement:
        if not self.is_unit_monomial():
            raise ArithmeticError(f"{self} is not a monomial unit")
        (m, c), = self.terms.items()
        return self.presentation.element({tuple(-a for a in m): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.presentation == other.presentation and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.presentation, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        return sorted(self.terms.items())

    def exponents(self, exps: Exps) -> dict[str, int]:
        return dict(zip(self.presentation.generators, exps))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = {"qp": "q'"}
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for g, n in zip(self.presentation.generators, exps):
                if n:
                    name = names.get(g, g)
                    factors.append(name if n == 1 else f"{name}^{n}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__

    def to_json(self, factor: object = None) -> dict:
        label = self.presentation.label if factor is None else factor
        return {
            "factor": _jsonable(label),
            "terms": [[self.exponents(m), str(c)] for m, c in self.sorted_terms()],
        }


def _jsonable(label):
    if isinstance(label, tuple):
        return [_jsonable(x) for x in label]
    return label


class RingHom:
    """Homomorphism determined by generator images; checked on construction."""

    def __init__(self, source: RingPresentation, target: RingPresentation, images: Mapping[str, RingElement]):
        missing = set(source.generators) - set(images)
        if missing:
            raise WellDefinednessError(f"no image for {sorted(missing)}", target.zero())
        self.source = source
        self.target = target
        self.images = {g: images[g] for g in source.generators}
        for g, img in self.images.items():
            if img.presentation != target:
                raise PresentationError(f"image of {g} lies in the wrong ring")
            if not img.is_unit_monomial():
                raise WellDefinednessError(f"{g} is a unit but its image {img} is not", img)
        for name, lhs, rhs in source.relations():
            residue = self._monomial(lhs) - self._monomial(rhs)
            if not residue.is_zero():
                raise WellDefinednessError(name, residue)

    def _monomial(self, exps: Exps) -> RingElement:
        out = self.target.one()
        for g, n in zip(self.source.generators, exps):
            if n:
                out = out * self.images[g] ** n
        return out

    def __call__(self, a: RingElement) -> RingElement:
        if a.presentation != self.source:
            raise PresentationError("element not in the source ring")
        out = self.target.zero()
        for exps, c in a.terms.items():
            out = out + self._monomial(exps) * c
        return out

    def compose(self, inner: RingHom) -> RingHom:
        """``self o inner``."""
        if inner.target != self.source:
            raise PresentationError("cannot compose: target/source mismatch")
        return RingHom(inner.source, self.target, {g: self(img) for g, img in inner.images.items()})

    @classmethod
    def identity(cls, ring: RingPresentation) -> RingHom:
        return cls(ring, ring, {g: ring.gen(g) for g in ring.generators})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.images == other.images

    __hash__ = None


def ring_hom(source: RingPresentation, target: RingPresentation, images: Mapping[str, RingElement]) -> RingHom:
    return RingHom(source, target, images)


@dataclass(frozen=True)
class ProductRing:
    factors: tuple[RingPresentation, ...]

    @property
    def labels(self) -> list:
        return [f.label for f in self.factors]

    def factor(self, label) -> RingPresentation:
        for f in self.factors:
            if f.label == label:
                return f
        raise KeyError(label)

    def factor_index(self, label) -> int:
        return self.labels.index(label)

    def rank(self) -> int:
        return sum(f.rank() for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def element(self, parts: Sequence[RingElement]) -> tuple[RingElement, ...]:
        if len(parts) != len(self.factors) or any(p.presentation != f for p, f in zip(parts, self.factors)):
            raise PresentationError("tuple does not match the factors")
        return tuple(parts)

    def zero(self) -> tuple[RingElement, ...]:
        return tuple(f.zero() for f in self.factors)

    def one(self) -> tuple[RingElement, ...]:
        return tuple(f.one() for f in self.factors)


class ProductHom:
    """A map of products of connected rings.

    Each target factor receives exactly one source factor, given as
    ``assignment[j] = (source_index, RingHom)``.
    """

    def __init__(self, source: ProductRing, target: ProductRing, assignment: Sequence[tuple[int, RingHom]]):
        if len(assignment) != len(target.factors):
            raise PresentationError("one assignment per target factor required")
        for j, (i, h) in enumerate(assignment):
            if h.source != source.factors[i] or h.target != target.factors[j]:
                raise PresentationError(f"assignment {j} has mismatched rings")
        self.source = source
        self.target = target
        self.assignment = list(assignment)

    def __call__(self, a: Sequence[RingElement]) -> tuple[RingElement, ...]:
        return tuple(h(a[i]) for i, h in self.assignment)


def component_ring(N: int, k: int) -> RingPresentation:
    """``Z[q±][x]/(x^N - q^k)``."""
    if N < 1 or not 0 <= k < N:
        raise ValueError("need N >= 1 and 0 <= k < N")
    return RingPresentation(("x", "q"), (RewriteRule("x", N, (("q", k),)),), label=k)


def sub_factor_ring(d: int, e: int) -> RingPresentation:
    """``Z[q±][q']/(q'^e - q^d)``; ``q'`` is written ``qp``."""
    if d < 1 or e < 1:
        raise ValueError("d, e must be positive")
    return RingPresentation(("qp", "q"), (RewriteRule("qp", e, (("q", d),)),), label=(d, e))


def s_star_factor(N: int, d: int, e: int, k: int) -> RingPresentation:
    """Component ``k`` of ``T[N]`` base-changed along ``q -> q``."""
    rules = (RewriteRule("x", N, (("q", k),)), RewriteRule("qp", e, (("q", d),)))
    return RingPresentation(("x", "qp", "q"), rules, label=((d, e), k))


def t_star_factor(N: int, d: int, e: int, k: int) -> RingPresentation:
    """Component ``k`` of ``T[N]`` base-changed along ``q -> q'``.

    The structural ``q`` of ``T[N]`` is eliminated in favour of ``q'``, so
    ``x^N -> q'^k``; the remaining ``q`` is that of the subgroup factor.
    """
    rules = (RewriteRule("x", N, (("qp", k),)), RewriteRule("qp", e, (("q", d),)))
    return RingPresentation(("x", "qp", "q"), rules, label=((d, e), k))


def unit_ring(L: int) -> RingPresentation:
    """``Z[q±][z, y]/(z^L - 1, y^L - q)``: holds ``zeta_L^i q^(j/L)`` as ``z^i y^j``."""
    rules = (RewriteRule("z", L, ()), RewriteRule("y", L, (("q", 1),)))
    return RingPresentation(("z", "y", "q"), rules, label=("K", L))


def unit_element(u, ring: RingPresentation) -> RingElement:
    """The monomial of :func:`unit_ring` representing a ``CycloQUnit``."""
    L = ring.rules[0].threshold
    i, j = u.root * L, Fraction(u.qexp) * L
    if i.denominator != 1 or j.denominator != 1:
        raise PresentationError(f"{u} is not defined over level {L}")
    return ring.monomial(z=int(i), y=int(j))


def build_O_TN(N: int) -> ProductRing:
    return ProductRing(tuple(component_ring(N, k) for k in range(N)))


def build_O_Sub(N: int) -> ProductRing:
    return ProductRing(tuple(sub_factor_ring(d, e) for d, e in divisor_pairs(N)))


def build_O_sStar(N: int) -> ProductRing:
    return ProductRing(tuple(s_star_factor(N, d, e, k) for d, e in divisor_pairs(N) for k in range(N)))


def build_O_tStar(N: int) -> ProductRing:
    return ProductRing(tuple(t_star_factor(N, d, e, k) for d, e in divisor_pairs(N) for k in range(N)))


def structural_maps(N: int) -> dict[str, Callable[[int, int, int], RingHom]]:
    """Per-factor structural maps into the ``s*`` and ``t*`` factors.

    ``sub_to_s`` and ``sub_to_t`` send the subgroup factor ``(d, e)`` into
    component ``k``; ``T_to_s`` and ``T_to_t`` send component ``k`` of
    ``T[N]`` into the same factor, with ``q -> q`` and ``q -> q'``
    respectively.
    """

    def sub_to(star):
        def build(d, e, k):
            src, tgt = sub_factor_ring(d, e), star(N, d, e, k)
            return RingHom(src, tgt, {"qp": tgt.gen("qp"), "q": tgt.gen("q")})
        return build

    def T_to(star, q_name):
        def build(d, e, k):
            src, tgt = component_ring(N, k), star(N, d, e, k)
            return RingHom(src, tgt, {"x": tgt.gen("x"), "q": tgt.gen(q_name)})
        return build

    return {
        "sub_to_s": sub_to(s_star_factor),
        "sub_to_t": sub_to(t_star_factor),
        "T_to_s": T_to(s_star_factor, "q"),
        "T_to_t": T_to(t_star_factor, "qp"),
    }
