"""Construction of witnessing probability spaces for solvable quotients.

Given a quotient relation q on classes C with a positive integer solution
x of its difference system, take the sample space to be the power set of C
with events A_I = {omega : I in omega}, and weight each atom by a short
Fourier sum over the +/-1 characters chi_L(omega) = (-1)**|omega & L|:

    P(omega) = 2**-n * (1 + sum_edges chi_{I,J}(omega) * gamma**x{I,J}
                          + eps * sum_hollow chi_{I,J,K}(omega))

where the first sum runs over the pairs that co-occur in a triple of q and
the second over "hollow triangles": 3-sets whose three pairs are all edges
but which carry no triple of q.  With gamma = 1/(n**2+1) and
eps = 1/(n**3+1) every atom mass is strictly positive, each P(A_I) is
exactly 1/2, cov(A_I, A_J) is gamma**x{I,J}/4 on edges and 0 off edges, and
the conjunctive forks of the family are exactly the triples of q.

Lifting to the original relation: the full space is the power set of the
original ground set, and mass is copied from the quotient space onto the
atoms that are unions of ~-classes (everything else, including atoms that
touch elements outside the core, gets mass zero).

``fork_represent`` runs the whole decision pipeline and re-extracts the
fork relation of the synthesized family before reporting success.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Mapping, Optional, Union

from .errors import (
    GroundSetTooLarge,
    InconsistentParameters,
    MismatchedQuotient,
    RoundTripError,
)
from .rationals import format_rational
from .relations import (
    AxiomReport,
    QuotientResult,
    TernaryRelation,
    full_axiom_report,
    quotient,
    relation_to_json,
)
from .solver import (
    InfeasibilityCertificate,
    LinearSystem,
    Pair,
    PositiveSolution,
    build_system,
    co_occurring_pairs,
    make_pair,
    scale_to_integers,
    solve_positive,
)
from .spaces import (
    FiniteProbabilitySpace,
    IndexedEvents,
    distribution_to_json,
    extract_fork_relation,
)

Triangle = tuple[str, str, str]


def character(label_set: Iterable[str], omega: Iterable[str]) -> int:
    """chi_L(omega) = (-1)**|omega & L|."""
    return -1 if len(frozenset(label_set) & frozenset(omega)) % 2 else 1


def encode_atom(subset: Iterable[str]) -> str:
    """Atom identifier for a subset: its sorted label list as a JSON string."""
    return json.dumps(sorted(subset), separators=(",", ":"))


def decode_atom(atom_id: str) -> frozenset:
    return frozenset(json.loads(atom_id))


def build_families(q: TernaryRelation) -> tuple[frozenset[Pair], frozenset[Triangle]]:
    """Edge pairs and hollow triangles of a quotient relation.

    Edges are the pairs of distinct classes that co-occur in some triple.
    A hollow triangle is a 3-set whose three pairs are all edges while no
    ordering of the 3-set is a triple of q.
    """
    edges = frozenset(co_occurring_pairs(q))
    hollow = set()
    for trio in combinations(q.ground_set, 3):
        if all(make_pair(x, y) in edges for x, y in combinations(trio, 2)):
            if not any(perm in q.triples for perm in permutations(trio)):
                hollow.add(tuple(sorted(trio)))
    return edges, frozenset(hollow)


@dataclass(frozen=True)
class SynthesisParameters:
    """Integer exponents per edge plus the two smallness parameters."""

    exponents: Mapping[Pair, int]
    gamma: Fraction
    epsilon: Fraction
    n: int


@dataclass(frozen=True)
class SynthesisResult:
    """A synthesized quotient-level space with its event family and bookkeeping."""

    events: IndexedEvents
    params: SynthesisParameters
    edges: tuple[Pair, ...]
    hollow_triangles: tuple[Triangle, ...]

    @property
    def space(self) -> FiniteProbabilitySpace:
        return self.events.space


def _validate_parameters(q: TernaryRelation, params: SynthesisParameters) -> None:
    n = len(q.ground_set)
    if params.n != n:
        raise InconsistentParameters(f"params built for n={params.n}, quotient has n={n}")
    edges, _ = build_families(q)
    if set(params.exponents) != set(edges):
        raise InconsistentParameters("exponents must be indexed exactly by the edge pairs")
    for pair, x in params.exponents.items():
        if not isinstance(x, int) or x < 1:
            raise InconsistentParameters(f"exponent for {pair} must be a positive integer")
    for eq in build_system(q).equations:
        if params.exponents[eq.lhs] != params.exponents[eq.addends[0]] + params.exponents[eq.addends[1]]:
            raise InconsistentParameters(f"exponents violate the equation for {eq.lhs}")
    if params.gamma <= 0 or params.epsilon <= 0:
        raise InconsistentParameters("gamma and epsilon must be positive")
    if n > 0:
        bound2 = Fraction(1, n * n)
        bound3 = Fraction(1, n ** 3)
        for pair, x in params.exponents.items():
            if params.gamma ** x >= bound2:
                raise InconsistentParameters(f"gamma**x for {pair} is not below 1/n**2")
        if params.epsilon >= bound3:
            raise InconsistentParameters("epsilon is not below 1/n**3")


def choose_parameters(q: TernaryRelation, exponents: Mapping[Pair, int]) -> SynthesisParameters:
    """Fixed closed-form parameters: gamma = 1/(n**2+1), eps = 1/(n**3+1).

    Integer exponents >= 1 make gamma**x <= gamma < 1/n**2, so both
    smallness bounds hold (vacuously for n <= 1).
    """
    n = len(q.ground_set)
    params = SynthesisParameters(
        exponents=dict(exponents),
        gamma=Fraction(1, n * n + 1),
        epsilon=Fraction(1, n ** 3 + 1),
        n=n,
    )
    _validate_parameters(q, params)
    return params


def synthesize_quotient_space(q: TernaryRelation, params: SynthesisParameters) -> SynthesisResult:
    """Build the character-weighted space over the power set of q's classes."""
    _validate_parameters(q, params)
    labels = q.ground_set
    n = len(labels)
    edges, hollow = build_families(q)
    gamma_pow = {pair: params.gamma ** params.exponents[pair] for pair in edges}
    sorted_edges = sorted(edges)
    sorted_hollow = sorted(hollow)

    mass: dict[str, Fraction] = {}
    membership: dict[str, list[str]] = {label: [] for label in labels}
    scale = Fraction(1, 2 ** n)
    for bits in range(2 ** n):
        omega = frozenset(labels[i] for i in range(n) if bits >> i & 1)
        weight = Fraction(1)
        for pair in sorted_edges:
            weight += character(pair, omega) * gamma_pow[pair]
        if sorted_hollow:
            weight += params.epsilon * sum(character(t, omega) for t in sorted_hollow)
        atom = encode_atom(omega)
        mass[atom] = scale * weight
        for label in omega:
            membership[label].append(atom)

    assert sum(mass.values(), Fraction(0)) == 1
    assert all(p > 0 for p in mass.values())
    space = FiniteProbabilitySpace(sorted(mass), mass)
    events = IndexedEvents(space, {label: frozenset(ids) for label, ids in membership.items()})
    return SynthesisResult(
        events=events,
        params=params,
        edges=tuple(sorted_edges),
        hollow_triangles=tuple(sorted_hollow),
    )


def lift_representation(
    rel: TernaryRelation, qres: QuotientResult, quotient_synth: SynthesisResult
) -> IndexedEvents:
    """Transport a quotient-level representation up to the original ground set.

    Atoms of the lifted space are all subsets of the ground set; mass is
    positive exactly on the unions of ~-classes, where it copies the mass of
    the corresponding quotient atom.
    """
    class_labels = set(qres.classes)
    if set(quotient_synth.events.events) != class_labels:
        raise MismatchedQuotient("quotient space is indexed by different class labels")
    if len(quotient_synth.space.atoms) != 2 ** len(class_labels):
        raise MismatchedQuotient("quotient space is not over the power set of the classes")
    if any(p <= 0 for p in quotient_synth.space.mass.values()):
        raise MismatchedQuotient("quotient space must have strictly positive masses")

    ground = rel.ground_set
    n = len(ground)
    classes = sorted(qres.classes.items())
    core = frozenset().union(*(members for _, members in classes)) if classes else frozenset()

    mass: dict[str, Fraction] = {}
    membership: dict[str, list[str]] = {label: [] for label in ground}
    for bits in range(2 ** n):
        omega = frozenset(ground[i] for i in range(n) if bits >> i & 1)
        atom = encode_atom(omega)
        if omega <= core:
            parts = []
            union_of_classes = True
            for label, members in classes:
                inter = members & omega
                if inter == members:
                    parts.append(label)
                elif inter:
                    union_of_classes = False
                    break
            if union_of_classes:
                mass[atom] = quotient_synth.space.mass[encode_atom(parts)]
            else:
                mass[atom] = Fraction(0)
        else:
            mass[atom] = Fraction(0)
        for label in omega:
            membership[label].append(atom)

    space = FiniteProbabilitySpace(sorted(mass), mass)
    return IndexedEvents(space, {label: frozenset(ids) for label, ids in membership.items()})


@dataclass(frozen=True)
class Representable:
    """Successful outcome: the relation, its quotient data, and the witness family."""

    relation: TernaryRelation
    quotient: QuotientResult
    system: LinearSystem
    solution: PositiveSolution
    synthesis: SynthesisResult
    events: IndexedEvents  # lifted family indexed by the original ground set


@dataclass(frozen=True)
class NotRepresentable:
    """Negative outcome: a failed axiom report or an infeasibility certificate."""

    relation: TernaryRelation
    report: Optional[AxiomReport] = None
    system: Optional[LinearSystem] = None
    certificate: Optional[InfeasibilityCertificate] = None


SynthesisOutcome = Union[Representable, NotRepresentable]


def fork_represent(rel: TernaryRelation, *, max_ground_size: int = 20) -> SynthesisOutcome:
    """Decide fork-representability and construct a witness or a refutation.

    On success the synthesized family is re-extracted and compared with the
    input before returning; a mismatch would be an internal error.  Ground
    sets larger than ``max_ground_size`` are refused because the witness
    space has 2**|N| atoms.
    """
    if len(rel.ground_set) > max_ground_size:
        raise GroundSetTooLarge(
            f"ground set has {len(rel.ground_set)} elements; "
            f"the witness space would need 2**{len(rel.ground_set)} atoms "
            f"(raise max_ground_size to override)"
        )
    report = full_axiom_report(rel)
    if not report.all_hold():
        return NotRepresentable(relation=rel, report=report)
    qres = quotient(rel)
    system = build_system(qres.quotient)
    solved = solve_positive(system)
    if isinstance(solved, InfeasibilityCertificate):
        return NotRepresentable(relation=rel, system=system, certificate=solved)
    exponents = scale_to_integers(solved)
    params = choose_parameters(qres.quotient, exponents)
    synth = synthesize_quotient_space(qres.quotient, params)
    lifted = lift_representation(rel, qres, synth)
    extracted = extract_fork_relation(lifted)
    if extracted != rel:
        raise RoundTripError("synthesized family does not reproduce the input relation")
    return Representable(
        relation=rel,
        quotient=qres,
        system=system,
        solution=solved,
        synthesis=synth,
        events=lifted,
    )


def representation_to_json(outcome: Representable) -> dict:
    """The synthesis-result document: lifted distribution, params, families, partition."""
    params = outcome.synthesis.params
    return {
        "distribution": distribution_to_json(outcome.events),
        "params": {
            "gamma": format_rational(params.gamma),
            "epsilon": format_rational(params.epsilon),
            "exponents": [
                {"pair": list(p), "value": params.exponents[p]}
                for p in sorted(params.exponents)
            ],
        },
        "families": {
            "edges": [list(p) for p in outcome.synthesis.edges],
            "hollow_triangles": [list(t) for t in outcome.synthesis.hollow_triangles],
        },
        "partition": [
            {"label": label, "members": sorted(members)}
            for label, members in sorted(outcome.quotient.classes.items())
        ],
        "relation": relation_to_json(outcome.relation),
    }
