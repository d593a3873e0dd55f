"""Immanence and transcendence of a mapping relative to an ordered pair of maps.

Throughout, ``M: U -> W`` and ``T: U -> V`` share the input ``U`` and
``N: V -> X`` post-processes ``T``.  ``T`` is (M, N)-immanent when ``N∘T`` is
constant on every fiber of ``M``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import SearchSpaceExceeded, SpaceMismatch, TranscendentInput
from .finmap import (
    FiniteMap,
    compose,
    fibers,
    identity_map,
    image,
    inverse,
    is_bijective,
    is_injective,
    restrict,
)
from .relation import Witness, approximate, relation_of, single_valuedness, to_map

IMMANENT = "Immanent"
TRANSCENDENT = "Transcendent"


@dataclass(frozen=True)
class Verdict:
    status: str
    model: FiniteMap | None = None
    witness: Witness | None = None

    @property
    def immanent(self) -> bool:
        return self.status == IMMANENT

    @property
    def letter(self) -> str:
        return "I" if self.immanent else "T"


def _check_triple(T, M, N):
    if M.domain != T.domain:
        raise SpaceMismatch(f"M and T need one input space: {M.domain.name} vs {T.domain.name}")
    if T.codomain != N.domain:
        raise SpaceMismatch(f"N must read T's output: {T.codomain.name} vs {N.domain.name}")


def check_definitional(T: FiniteMap, M: FiniteMap, N: FiniteMap) -> Verdict:
    """Walk the fibers of ``M`` and require ``N∘T`` to be constant on each one."""
    _check_triple(T, M, N)
    chosen = {}
    for w, block in fibers(M):
        u0 = block.elements[0]
        x0 = N(T(u0))
        for u in block.elements[1:]:
            x = N(T(u))
            if x != x0:
                return Verdict(TRANSCENDENT, witness=Witness(w, u0, u, x0, x))
        chosen[w] = x0
    W, X = M.codomain, N.codomain
    unreached = tuple(w for w in W if w not in chosen)
    fill = X.elements[0] if len(X) else None
    model = FiniteMap(W, X, tuple(chosen.get(w, fill) for w in W), name="S",
                      meta={"unreached": unreached})
    return Verdict(IMMANENT, model=model)


def check_relational(T: FiniteMap, M: FiniteMap, N: FiniteMap) -> Verdict:
    """Same question answered by building ``N∘T∘M⁻¹`` and testing single-valuedness."""
    _check_triple(T, M, N)
    rel = relation_of(M, T, N)
    sv = single_valuedness(rel)
    if not sv.single_valued:
        return Verdict(TRANSCENDENT, witness=sv.witness)
    return Verdict(IMMANENT, model=to_map(rel))


check = check_definitional


def extract_model(T: FiniteMap, M: FiniteMap, N: FiniteMap) -> FiniteMap:
    verdict = check(T, M, N)
    if not verdict.immanent:
        raise TranscendentInput(verdict.witness)
    return verdict.model


def canonical_factor(T: FiniteMap, M: FiniteMap) -> FiniteMap | None:
    """``F`` with ``F∘M == T`` when one exists, else ``None``."""
    verdict = check(T, M, identity_map(T.codomain))
    if not verdict.immanent:
        return None
    m = verdict.model
    return FiniteMap(m.domain, m.codomain, m.values, name="F", meta=m.meta)


@dataclass(frozen=True)
class BiClassification:
    forward: str
    backward: str
    bijection: FiniteMap | None = None
    model: FiniteMap | None = None
    verdicts: tuple = field(default=(), compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"{self.forward}-{self.backward}"


def classify_bidirectional(T: FiniteMap, M: FiniteMap) -> BiClassification:
    """Check ``T`` against ``(M, I)`` and ``M`` against ``(T, I)``.

    In the I-I case the forward model, cut down to ``im(M) -> im(T)``, is
    returned as the bijection.  In the mixed cases ``model`` holds the map
    that exists in the one working direction.
    """
    if M.domain != T.domain:
        raise SpaceMismatch(f"M and T need one input space: {M.domain.name} vs {T.domain.name}")
    fwd = check(T, M, identity_map(T.codomain))
    bwd = check(M, T, identity_map(M.codomain))
    bijection = model = None
    if fwd.immanent and bwd.immanent:
        bijection = restrict(fwd.model, image(M), image(T))
    elif fwd.immanent:
        model = fwd.model
    elif bwd.immanent:
        model = bwd.model
    return BiClassification(fwd.letter, bwd.letter, bijection, model, (fwd, bwd))


@dataclass(frozen=True)
class Clause:
    hypothesis_holds: bool
    conclusion_holds: bool
    asserted: bool = True

    @property
    def consistent(self) -> bool:
        return not self.hypothesis_holds or self.conclusion_holds


@dataclass(frozen=True)
class CorollaryReport:
    clauses: dict

    def __getitem__(self, key) -> Clause:
        return self.clauses[key]

    @property
    def consistent(self) -> bool:
        """All asserted clauses hold; clause d is diagnostic and never counted."""
        return all(c.consistent for c in self.clauses.values() if c.asserted)

    def counterexamples(self) -> list:
        return [k for k, c in self.clauses.items() if not c.consistent]


def corollary_audit(M: FiniteMap, T: FiniteMap, N: FiniteMap) -> CorollaryReport:
    verdict = check(T, M, N)
    imm = verdict.immanent
    factor = canonical_factor(T, M)

    s_many_to_one = False
    if imm:
        on_image = restrict(verdict.model, image(M))
        s_many_to_one = not is_injective(on_image)

    best = approximate(relation_of(M, T, N)).model
    clauses = {
        "a": Clause(factor is not None, imm),
        "b": Clause(is_bijective(M), imm),
        "c": Clause(not is_injective(M) and factor is None and is_injective(N), not imm),
        "d": Clause(is_injective(M) and not is_injective(N) and imm, s_many_to_one,
                    asserted=False),
        "e": Clause(test_candidate_T(T, best, M, N), imm),
    }
    return CorollaryReport(clauses)


def test_candidate_T(T: FiniteMap, S: FiniteMap, M: FiniteMap, N: FiniteMap) -> bool:
    """Whether ``N∘T == S∘M`` pointwise on the common input."""
    return compose(N, T).values == compose(S, M).values


# not a pytest test, despite the name
test_candidate_T.__test__ = False


def solve_for_T(S: FiniteMap, M: FiniteMap, N: FiniteMap, cap: int = 4096) -> list:
    """Every ``T: U -> V`` with ``N∘T == S∘M``.

    A bijective ``N`` gives the single solution ``N⁻¹∘S∘M`` directly.
    Otherwise ``|V|^|U|`` must not exceed ``cap``; the solutions are then
    listed in lexicographic order of their value tuples.
    """
    if S.domain != M.codomain:
        raise SpaceMismatch(f"S must read M's output: {M.codomain.name} vs {S.domain.name}")
    if S.codomain != N.codomain:
        raise SpaceMismatch(f"S and N need one output space: {S.codomain.name} vs {N.codomain.name}")
    target = compose(S, M)
    if is_bijective(N):
        return [compose(inverse(N), target)]
    U, V = M.domain, N.domain
    if len(V) ** len(U) > cap:
        raise SearchSpaceExceeded(f"|V|^|U| = {len(V)}^{len(U)} exceeds cap {cap}")
    candidates = [[v for v in V if N(v) == x] for x in target.values]
    return [FiniteMap(U, V, values, name="T") for values in itertools.product(*candidates)]
