"""Finite ternary relations, the forkness axioms, regularity and quotients.

A relation is a set of ordered triples over a finite ground set of opaque
string labels.  A *forkness* is a relation closed under five rules::

    sym    (i,j,i) in r                     =>  (j,i,j) in r
    trans  (i,j,i) in r and (j,k,j) in r    =>  (i,k,i) in r
    flip   (i,k,j) in r                     =>  (j,k,i) in r
    lower  (i,j,k) in r                     =>  (i,j,j), (j,k,k), (k,i,i) in r
    btw    (i,k,j) in r and (i,j,k) in r    =>  (j,k,j) in r

Triples of the shape (i, j, i) encode an equivalence ``i ~ j`` on the core
``V = {i : (i,i,i) in r}``; a forkness is *regular* when membership of a
triple is invariant under replacing components by ~-equivalent elements.
The quotient of a regular forkness relabels every element by its ~-class.

All checks are evaluated literally, so they are total on arbitrary
relations, not only on forknesses.  Witness scans run in lexicographic
order, which makes every reported witness deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import FormatError, NotRegularForkness

Triple = tuple[str, str, str]

FORKNESS_AXIOMS: tuple[str, ...] = ("sym", "trans", "flip", "lower", "btw")
ALL_AXIOMS: tuple[str, ...] = FORKNESS_AXIOMS + ("regular",)


@dataclass(frozen=True)
class TernaryRelation:
    """A finite ternary relation over opaque string labels.

    The ground set is kept sorted; triples are a frozenset of 3-tuples whose
    components must all belong to the ground set.
    """

    ground_set: tuple[str, ...]
    triples: frozenset[Triple]

    def __init__(self, ground_set: Iterable[str], triples: Iterable[Iterable[str]]):
        ground = tuple(sorted(ground_set))
        if len(set(ground)) != len(ground):
            raise FormatError("duplicate labels in ground set")
        if not all(isinstance(x, str) for x in ground):
            raise FormatError("ground set labels must be strings")
        members = set(ground)
        normalized = set()
        for raw in triples:
            t = tuple(raw)
            if len(t) != 3:
                raise FormatError(f"not a triple: {raw!r}")
            for x in t:
                if x not in members:
                    raise FormatError(f"triple component {x!r} is not in the ground set")
            normalized.add(t)
        object.__setattr__(self, "ground_set", ground)
        object.__setattr__(self, "triples", frozenset(normalized))

    def __contains__(self, triple) -> bool:
        return tuple(triple) in self.triples

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples)


@dataclass(frozen=True)
class AxiomReport:
    """Pass/fail per axiom, with one falsifying substitution per failure.

    ``witnesses`` holds, for every failed axiom, the tuple of quantified
    variables (in the order they appear in the axiom) whose substitution
    makes the premise true and the conclusion false.
    """

    holds: Mapping[str, bool]
    witnesses: Mapping[str, tuple[str, ...]]

    def all_hold(self) -> bool:
        return all(self.holds.values())

    def failed(self) -> tuple[str, ...]:
        return tuple(a for a in ALL_AXIOMS if a in self.holds and not self.holds[a])

    def merged(self, other: "AxiomReport") -> "AxiomReport":
        return AxiomReport(
            {**self.holds, **other.holds}, {**self.witnesses, **other.witnesses}
        )


def _tilde(rel: TernaryRelation) -> dict[str, list[str]]:
    """Adjacency of the literal relation i ~ j  <=>  (i, j, i) in r."""
    adj: dict[str, list[str]] = {}
    for a, b, c in rel.sorted_triples():
        if a == c:
            adj.setdefault(a, []).append(b)
    return adj


def _violates_sym(t: frozenset[Triple]):
    for a, b, c in sorted(t):
        if a == c and (b, a, b) not in t:
            return (a, b)
    return None


def _violates_trans(t: frozenset[Triple], adj: dict[str, list[str]]):
    for i in sorted(adj):
        for j in adj[i]:
            for k in adj.get(j, ()):
                if (i, k, i) not in t:
                    return (i, j, k)
    return None


def _violates_flip(t: frozenset[Triple]):
    # a triple (a, b, c) instantiates the premise (i, k, j) with i=a, k=b, j=c
    for a, b, c in sorted(t):
        if (c, b, a) not in t:
            return (a, c, b)
    return None


def _violates_lower(t: frozenset[Triple]):
    for i, j, k in sorted(t):
        if (i, j, j) not in t or (j, k, k) not in t or (k, i, i) not in t:
            return (i, j, k)
    return None


def _violates_btw(t: frozenset[Triple]):
    # premises (i, k, j) = (a, b, c) and (i, j, k) = (a, c, b); conclusion (j, k, j)
    for a, b, c in sorted(t):
        if (a, c, b) in t and (c, b, c) not in t:
            return (a, c, b)
    return None


def check_forkness(rel: TernaryRelation) -> AxiomReport:
    """Evaluate the five forkness axioms; regularity is left unevaluated."""
    t = rel.triples
    found = {
        "sym": _violates_sym(t),
        "trans": _violates_trans(t, _tilde(rel)),
        "flip": _violates_flip(t),
        "lower": _violates_lower(t),
        "btw": _violates_btw(t),
    }
    holds = {name: wit is None for name, wit in found.items()}
    witnesses = {name: wit for name, wit in found.items() if wit is not None}
    return AxiomReport(holds, witnesses)


def check_regular(rel: TernaryRelation) -> AxiomReport:
    """Evaluate regularity literally, using ~ as read off the relation itself.

    The witness, if any, is the 6-tuple (i, i', j, j', k, k').
    """
    t = rel.triples
    adj = _tilde(rel)
    witness = None
    for i, j, k in rel.sorted_triples():
        for i2 in adj.get(i, ()):
            for j2 in adj.get(j, ()):
                for k2 in adj.get(k, ()):
                    if (i2, j2, k2) not in t:
                        witness = (i, i2, j, j2, k, k2)
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    holds = {"regular": witness is None}
    witnesses = {"regular": witness} if witness else {}
    return AxiomReport(holds, witnesses)


def full_axiom_report(rel: TernaryRelation) -> AxiomReport:
    """All six axioms in one report."""
    return check_forkness(rel).merged(check_regular(rel))


@dataclass(frozen=True)
class QuotientResult:
    """Partition of the core into ~-classes plus the induced relation.

    Class labels are canonical: the lexicographically smallest member.
    """

    classes: Mapping[str, frozenset[str]]
    class_of: Mapping[str, str]
    quotient: TernaryRelation


def quotient(rel: TernaryRelation) -> QuotientResult:
    """Quotient of a regular forkness by ~; raises NotRegularForkness otherwise."""
    report = full_axiom_report(rel)
    if not report.all_hold():
        raise NotRegularForkness(report)
    core = [i for i in rel.ground_set if (i, i, i) in rel.triples]
    parent = {i: i for i in core}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in rel.triples:
        if a == c and a != b:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: dict[str, set[str]] = {}
    for i in core:
        groups.setdefault(find(i), set()).add(i)
    classes = {min(members): frozenset(members) for members in groups.values()}
    class_of = {i: label for label, members in classes.items() for i in members}
    q_triples = {(class_of[a], class_of[b], class_of[c]) for a, b, c in rel.triples}
    q = TernaryRelation(classes.keys(), q_triples)
    return QuotientResult(classes=classes, class_of=class_of, quotient=q)


def sharp(rel: TernaryRelation) -> TernaryRelation:
    """Restriction of the relation to triples with pairwise distinct components."""
    return TernaryRelation(
        rel.ground_set, {t for t in rel.triples if len(set(t)) == 3}
    )


def parse_relation(doc) -> TernaryRelation:
    """Parse the relation JSON format; strict about keys and duplicates."""
    if not isinstance(doc, dict):
        raise FormatError("relation document must be a JSON object")
    extra = set(doc) - {"ground_set", "triples"}
    if extra:
        raise FormatError(f"unknown keys in relation document: {sorted(extra)}")
    if "ground_set" not in doc or "triples" not in doc:
        raise FormatError("relation document needs 'ground_set' and 'triples'")
    ground = doc["ground_set"]
    triples = doc["triples"]
    if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
        raise FormatError("'ground_set' must be an array of strings")
    if not isinstance(triples, list):
        raise FormatError("'triples' must be an array")
    seen = set()
    for raw in triples:
        if not isinstance(raw, list) or len(raw) != 3 or not all(isinstance(x, str) for x in raw):
            raise FormatError(f"not a triple of strings: {raw!r}")
        t = tuple(raw)
        if t in seen:
            raise FormatError(f"duplicate triple: {raw!r}")
        seen.add(t)
    return TernaryRelation(ground, seen)


def relation_to_json(rel: TernaryRelation) -> dict:
    return {
        "ground_set": list(rel.ground_set),
        "triples": [list(t) for t in rel.sorted_triples()],
    }
