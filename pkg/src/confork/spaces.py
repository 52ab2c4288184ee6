"""Exact finite probability spaces and the event predicates built on them.

Every mass is a ``fractions.Fraction`` and every predicate below is decided
by exact arithmetic; no tolerance appears anywhere.  Events are plain
frozensets of atom identifiers.  Conditional comparisons are evaluated in
cross-multiplied, division-free form so that zero-mass conditioners never
force a division.

A triple of events (A, B, C) is a conjunctive fork when A and C are
conditionally independent given B and given the complement of B, and B
raises the probability of both A and C.  Equivalently: conditional
independence plus cov(A,B) > 0 and cov(B,C) > 0.  ``is_conjunctive_fork``
computes both forms and asserts their agreement when assertions are on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConditioningOnNull,
    FormatError,
    TrivialConditioner,
    TrivialEvent,
)
from .rationals import format_rational, parse_rational
from .relations import TernaryRelation

Event = frozenset


@dataclass(frozen=True)
class FiniteProbabilitySpace:
    """Finite list of atoms with exact nonnegative masses summing to one.

    Zero-mass atoms are allowed; they matter for P-equality of events that
    differ only on a null set.
    """

    atoms: tuple[str, ...]
    mass: Mapping[str, Fraction]

    def __init__(self, atoms: Iterable[str], mass: Mapping[str, Fraction]):
        atoms = tuple(atoms)
        if len(set(atoms)) != len(atoms):
            raise FormatError("duplicate atom identifiers")
        if any(isinstance(p, float) for p in mass.values()):
            raise FormatError("masses must be exact rationals, not floats")
        mass = {a: Fraction(p) for a, p in mass.items()}
        if set(mass) != set(atoms):
            raise FormatError("mass must be defined exactly on the atoms")
        if any(p < 0 for p in mass.values()):
            raise FormatError("negative mass")
        if sum(mass.values(), Fraction(0)) != 1:
            raise FormatError("masses must sum to exactly 1")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "mass", mass)

    def full_event(self) -> Event:
        return frozenset(self.atoms)

    def complement(self, event: Event) -> Event:
        return frozenset(self.atoms) - event


@dataclass(frozen=True)
class IndexedEvents:
    """A family of events over one shared space, indexed by string labels."""

    space: FiniteProbabilitySpace
    events: Mapping[str, Event]

    def __init__(self, space: FiniteProbabilitySpace, events: Mapping[str, Event]):
        atoms = set(space.atoms)
        normalized = {}
        for label, event in events.items():
            event = frozenset(event)
            if not event <= atoms:
                raise FormatError(f"event {label!r} uses atoms outside the space")
            normalized[label] = event
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "events", normalized)

    @property
    def index_set(self) -> tuple[str, ...]:
        return tuple(sorted(self.events))


def prob(space: FiniteProbabilitySpace, event: Event) -> Fraction:
    """Exact probability of an event (a subset of the space's atoms)."""
    return sum((space.mass[w] for w in event), Fraction(0))


def cond_prob(space: FiniteProbabilitySpace, e: Event, f: Event) -> Fraction:
    """P(e | f); raises ConditioningOnNull when P(f) = 0."""
    pf = prob(space, f)
    if pf == 0:
        raise ConditioningOnNull("conditioning event has probability zero")
    return prob(space, frozenset(e) & frozenset(f)) / pf


def covariance(space: FiniteProbabilitySpace, e: Event, f: Event) -> Fraction:
    """cov(1_e, 1_f) = P(ef) - P(e)P(f)."""
    e, f = frozenset(e), frozenset(f)
    return prob(space, e & f) - prob(space, e) * prob(space, f)


def p_nontrivial(space: FiniteProbabilitySpace, e: Event) -> bool:
    """True when 0 < P(e) < 1."""
    p = prob(space, e)
    return 0 < p < 1


def p_equal(space: FiniteProbabilitySpace, e: Event, f: Event) -> bool:
    """True when the symmetric difference of e and f is a null set."""
    return prob(space, frozenset(e) ^ frozenset(f)) == 0


def correlation(space: FiniteProbabilitySpace, e: Event, f: Event) -> Fraction:
    """Signed squared correlation of the indicator functions.

    Plain correlation involves square roots, so it is exposed as
    sign(cov) * cov(e,f)**2 / (cov(e,e) * cov(f,f)), which is an exact
    rational, equals +/-1 at perfectly (anti)correlated pairs, and is
    strictly monotone in the underlying correlation.
    """
    var_e = covariance(space, e, e)
    var_f = covariance(space, f, f)
    if var_e == 0 or var_f == 0:
        raise TrivialEvent("correlation of a probability-0-or-1 event is undefined")
    c = covariance(space, e, f)
    sign = (c > 0) - (c < 0)
    return sign * c * c / (var_e * var_f)


def log_corr_compare(
    space: FiniteProbabilitySpace,
    left: Sequence[tuple[Event, Event]],
    right: Sequence[tuple[Event, Event]],
) -> int:
    """Compare two products of correlations exactly: -1, 0 or +1.

    Works on signed squares: the signed square of a product is the product
    of signed squares, and v -> sign(v) * v**2 is strictly increasing, so
    comparing the products of the signed squared correlations decides the
    comparison the log-linear argument would make, without ever leaving the
    rationals.
    """
    lhs = Fraction(1)
    for e, f in left:
        lhs *= correlation(space, e, f)
    rhs = Fraction(1)
    for e, f in right:
        rhs *= correlation(space, e, f)
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class ForkConditions:
    """The five defining conditions of a conjunctive fork (A, B, C), separately.

    ``ci_given_middle``:     P(AC|B)  = P(A|B) P(C|B)
    ``ci_given_complement``: P(AC|~B) = P(A|~B) P(C|~B)
    ``raises_first``:        P(A|B) > P(A|~B)
    ``raises_second``:       P(C|B) > P(C|~B)
    ``middle_nontrivial``:   0 < P(B) < 1

    A condition whose conditioner has zero mass counts as False.
    """

    ci_given_middle: bool
    ci_given_complement: bool
    raises_first: bool
    raises_second: bool
    middle_nontrivial: bool

    @property
    def is_fork(self) -> bool:
        return (
            self.ci_given_middle
            and self.ci_given_complement
            and self.raises_first
            and self.raises_second
            and self.middle_nontrivial
        )


def fork_conditions(
    space: FiniteProbabilitySpace, a: Event, b: Event, c: Event
) -> ForkConditions:
    """Evaluate the five fork conditions division-free."""
    a, b, c = frozenset(a), frozenset(b), frozenset(c)
    pb = prob(space, b)
    qb = 1 - pb
    pa = prob(space, a)
    pc = prob(space, c)
    pab = prob(space, a & b)
    pcb = prob(space, c & b)
    pacb = prob(space, a & c & b)
    pac = prob(space, a & c)
    # intersections with the complement of b, by subtraction
    pab_ = pa - pab
    pcb_ = pc - pcb
    pacb_ = pac - pacb
    return ForkConditions(
        ci_given_middle=pb > 0 and pacb * pb == pab * pcb,
        ci_given_complement=qb > 0 and pacb_ * qb == pab_ * pcb_,
        raises_first=pb > 0 and qb > 0 and pab * qb > pab_ * pb,
        raises_second=pb > 0 and qb > 0 and pcb * qb > pcb_ * pb,
        middle_nontrivial=0 < pb < 1,
    )


def conditionally_independent(
    space: FiniteProbabilitySpace, a: Event, c: Event, b: Event
) -> bool:
    """1_a and 1_c conditionally independent given 1_b (both conditionings).

    Raises TrivialConditioner when P(b) is 0 or 1, since one of the two
    required conditional probabilities would be undefined.
    """
    if not p_nontrivial(space, b):
        raise TrivialConditioner("conditioner has probability 0 or 1")
    conds = fork_conditions(space, a, b, c)
    return conds.ci_given_middle and conds.ci_given_complement


def is_conjunctive_fork(
    space: FiniteProbabilitySpace, a: Event, b: Event, c: Event
) -> bool:
    """Whether (a, b, c) is a conjunctive fork.  Total: a trivial b gives False."""
    conds = fork_conditions(space, a, b, c)
    result = conds.is_fork
    if __debug__:
        if p_nontrivial(space, b):
            alt = (
                conditionally_independent(space, a, c, b)
                and covariance(space, a, b) > 0
                and covariance(space, b, c) > 0
            )
        else:
            alt = False
        assert alt == result, "the two fork characterizations disagreed"
    return result


def extract_fork_relation(ev: IndexedEvents) -> TernaryRelation:
    """The ternary relation of all conjunctive forks within an event family."""
    labels = ev.index_set
    triples = {
        (i, j, k)
        for i, j, k in product(labels, repeat=3)
        if is_conjunctive_fork(ev.space, ev.events[i], ev.events[j], ev.events[k])
    }
    return TernaryRelation(labels, triples)


def parse_distribution(doc) -> IndexedEvents:
    """Parse the distribution JSON format; masses must sum to exactly 1."""
    if not isinstance(doc, dict):
        raise FormatError("distribution document must be a JSON object")
    extra = set(doc) - {"atoms", "events"}
    if extra:
        raise FormatError(f"unknown keys in distribution document: {sorted(extra)}")
    if "atoms" not in doc or "events" not in doc:
        raise FormatError("distribution document needs 'atoms' and 'events'")
    atoms_field = doc["atoms"]
    if not isinstance(atoms_field, list):
        raise FormatError("'atoms' must be an array")
    order = []
    mass = {}
    for entry in atoms_field:
        if not isinstance(entry, dict) or set(entry) != {"id", "p"}:
            raise FormatError(f"atom entries must be objects with 'id' and 'p': {entry!r}")
        atom = entry["id"]
        if not isinstance(atom, str):
            raise FormatError("atom ids must be strings")
        if atom in mass:
            raise FormatError(f"duplicate atom id: {atom!r}")
        mass[atom] = parse_rational(entry["p"])
        order.append(atom)
    events_field = doc["events"]
    if not isinstance(events_field, dict):
        raise FormatError("'events' must be an object mapping labels to atom arrays")
    events = {}
    for label, ids in events_field.items():
        if not isinstance(ids, list) or not all(isinstance(x, str) for x in ids):
            raise FormatError(f"event {label!r} must be an array of atom ids")
        if len(set(ids)) != len(ids):
            raise FormatError(f"event {label!r} lists an atom twice")
        events[label] = frozenset(ids)
    space = FiniteProbabilitySpace(order, mass)
    return IndexedEvents(space, events)


def distribution_to_json(ev: IndexedEvents) -> dict:
    space = ev.space
    return {
        "atoms": [
            {"id": a, "p": format_rational(space.mass[a])} for a in sorted(space.atoms)
        ],
        "events": {label: sorted(ev.events[label]) for label in ev.index_set},
    }
