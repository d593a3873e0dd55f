"""The relation ``S = N∘T∘M⁻¹`` of a counter-cascaded triple.

Every ``u`` in the common input contributes the pair ``(M(u), N(T(u)))``.
The relation keeps which inputs produced each pair, so multiplicities and
witnesses can both be read off it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import Multivalued, NonTotal, SpaceMismatch
from .finmap import FiniteMap, FiniteSet


@dataclass(frozen=True)
class Witness:
    """Two inputs with the same ``M`` value but different ``N∘T`` values."""

    w: object
    u: object
    u_prime: object
    x: object
    x_prime: object

    def as_tuple(self):
        return (self.w, self.u, self.u_prime, self.x, self.x_prime)

    def holds(self, M: FiniteMap, T: FiniteMap, N: FiniteMap) -> bool:
        """Re-evaluate the defining equations through the maps themselves."""
        return (
            self.u != self.u_prime
            and M(self.u) == self.w
            and M(self.u_prime) == self.w
            and N(T(self.u)) == self.x
            and N(T(self.u_prime)) == self.x_prime
            and self.x != self.x_prime
        )


@dataclass(frozen=True)
class Relation:
    """Multiset of ``(w, x)`` pairs; ``sources[(w, x)]`` lists the generating inputs."""

    left: FiniteSet
    right: FiniteSet
    sources: tuple  # ((w, x), (u, ...)) in canonical (w, x) order
    inputs: FiniteSet

    def pairs(self) -> dict:
        return {wx: len(us) for wx, us in self.sources}

    def multiplicity(self, w, x) -> int:
        return self.pairs().get((w, x), 0)

    @property
    def total(self) -> int:
        return sum(len(us) for _, us in self.sources)

    def reached(self) -> list:
        """Elements of ``left`` that some input reaches, in canonical order."""
        seen = {w for (w, _), _ in self.sources}
        return [w for w in self.left if w in seen]

    def values_at(self, w) -> list:
        return [x for (w2, x), _ in self.sources if w2 == w]

    def __iter__(self):
        return iter(self.sources)


@dataclass(frozen=True)
class SingleValuedVerdict:
    single_valued: bool
    witness: Witness | None = None


@dataclass(frozen=True)
class ApproxModel:
    model: FiniteMap
    disagreement: int
    criterion: str


def relation_of(M: FiniteMap, T: FiniteMap, N: FiniteMap) -> Relation:
    if M.domain != T.domain:
        raise SpaceMismatch(f"M and T need one input space: {M.domain.name} vs {T.domain.name}")
    if T.codomain != N.domain:
        raise SpaceMismatch(f"N must read T's output: {T.codomain.name} vs {N.domain.name}")
    groups: dict = {}
    for u, w in M.items():
        groups.setdefault((w, N(T(u))), []).append(u)
    W, X = M.codomain, N.codomain
    order = sorted(groups, key=lambda wx: (W.index(wx[0]), X.index(wx[1])))
    return Relation(W, X, tuple((wx, tuple(groups[wx])) for wx in order), M.domain)


def _witness(rel: Relation, w) -> Witness:
    # inputs for w in input order, tagged with their x
    tagged = sorted(
        ((u, x) for (w2, x), us in rel.sources if w2 == w for u in us),
        key=lambda ux: rel.inputs.index(ux[0]),
    )
    u, x = tagged[0]
    for u2, x2 in tagged[1:]:
        if x2 != x:
            return Witness(w, u, u2, x, x2)
    raise AssertionError("no witness on a single-valued fiber")


def single_valuedness(rel: Relation) -> SingleValuedVerdict:
    """Single-valued iff no ``w`` carries two distinct ``x``; else the canonical witness."""
    for w in rel.reached():
        if len(rel.values_at(w)) > 1:
            return SingleValuedVerdict(False, _witness(rel, w))
    return SingleValuedVerdict(True)


def to_map(rel: Relation) -> FiniteMap:
    """The faithful model ``W -> X``.

    Elements of ``W`` that no input reaches are sent to the first element of
    ``X``; they are listed under ``meta["unreached"]``.
    """
    verdict = single_valuedness(rel)
    if not verdict.single_valued:
        raise Multivalued(verdict.witness)
    table = {w: x for (w, x), _ in rel.sources}
    unreached = tuple(w for w in rel.left if w not in table)
    if unreached and not len(rel.right):
        raise NonTotal(f"no value available for unreached {unreached!r}")
    fill = rel.right.elements[0] if len(rel.right) else None
    values = tuple(table.get(w, fill) for w in rel.left)
    return FiniteMap(rel.left, rel.right, values, name="S", meta={"unreached": unreached})


CRITERIA = ("majority",)


def approximate(rel: Relation, criterion: str = "majority") -> ApproxModel:
    """Best single-valued approximation of ``rel``.

    ``majority`` picks, for every reached ``w``, the ``x`` generated by the
    most inputs (earliest in canonical order on ties); this minimizes the
    number of inputs whose ``N∘T`` value the model gets wrong.
    """
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}; choose from {CRITERIA}")
    counts = rel.pairs()
    table = {}
    disagreement = 0
    for w in rel.reached():
        xs = rel.values_at(w)  # canonical X order
        best = max(xs, key=lambda x: (counts[(w, x)], -rel.right.index(x)))
        table[w] = best
        disagreement += sum(counts[(w, x)] for x in xs) - counts[(w, best)]
    unreached = tuple(w for w in rel.left if w not in table)
    fill = rel.right.elements[0] if len(rel.right) else None
    if unreached and fill is None:
        raise NonTotal(f"no value available for unreached {unreached!r}")
    model = FiniteMap(
        rel.left, rel.right, tuple(table.get(w, fill) for w in rel.left),
        name="S_opt", meta={"unreached": unreached},
    )
    return ApproxModel(model, disagreement, criterion)


def count_disagreement(model: FiniteMap, M: FiniteMap, T: FiniteMap, N: FiniteMap) -> int:
    """Number of inputs where ``model(M(u)) != N(T(u))``, recounted from scratch."""
    return sum(1 for u in M.domain if model(M(u)) != N(T(u)))
