"""Causal betweenness of events and its abstract characterization.

An event B is causally between A and C when

    1 > P(A|B) > P(A|C) > P(A) > 0
    1 > P(C|B) > P(C|A) > P(C) > 0
    P(C|AB) = P(C|B)

with every conditional read only where its conditioner has positive mass;
a zero-mass conditioner anywhere makes the predicate false rather than an
error, which keeps extraction loops total.

Abstract causal betweenness (realizability of a ternary relation as the
betweenness pattern of some event family) is characterized by: all triples
pairwise distinct, closure under reversal (i,j,k) -> (k,j,i), and
acyclicity of the pair digraph whose vertices are the two-element subsets
of the ground set and whose edges are {i,j} -> {i,k} for each triple
(i,j,k) of pairwise distinct elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .relations import TernaryRelation, sharp
from .solver import Pair, make_pair
from .spaces import Event, FiniteProbabilitySpace, IndexedEvents, prob
from .synthesis import NotRepresentable, Representable, SynthesisOutcome, fork_represent


def is_causally_between(
    space: FiniteProbabilitySpace, a: Event, b: Event, c: Event
) -> bool:
    """Whether b is causally between a and c.  Exact and division-free."""
    a, b, c = frozenset(a), frozenset(b), frozenset(c)
    pa = prob(space, a)
    pb = prob(space, b)
    pc = prob(space, c)
    pab = prob(space, a & b)
    pbc = prob(space, b & c)
    pac = prob(space, a & c)
    pabc = prob(space, a & b & c)
    if pa == 0 or pb == 0 or pc == 0 or pab == 0:
        return False
    chain_a = pab < pb and pab * pc > pac * pb and pac > pa * pc
    chain_c = pbc < pb and pbc * pa > pac * pb and pac > pc * pa
    screened = pabc * pb == pab * pbc
    return chain_a and chain_c and screened


def extract_betweenness_relation(ev: IndexedEvents) -> TernaryRelation:
    """All triples (i, j, k) such that the j-th event sits between the others."""
    labels = ev.index_set
    triples = {
        (i, j, k)
        for i, j, k in product(labels, repeat=3)
        if is_causally_between(ev.space, ev.events[i], ev.events[j], ev.events[k])
    }
    return TernaryRelation(labels, triples)


@dataclass(frozen=True)
class BetweennessDigraph:
    """Pair digraph of a relation: all 2-subsets as vertices, {i,j} -> {i,k} edges."""

    vertices: tuple[Pair, ...]
    edges: tuple[tuple[Pair, Pair], ...]


def pair_digraph(rel: TernaryRelation) -> BetweennessDigraph:
    vertices = tuple(make_pair(x, y) for x, y in combinations(rel.ground_set, 2))
    edges = {
        (make_pair(i, j), make_pair(i, k))
        for i, j, k in rel.triples
        if len({i, j, k}) == 3
    }
    return BetweennessDigraph(vertices=vertices, edges=tuple(sorted(edges)))


def find_cycle(graph: BetweennessDigraph) -> Optional[tuple[Pair, ...]]:
    """First directed cycle in deterministic DFS order, or None."""
    adjacency: dict[Pair, list[Pair]] = {v: [] for v in graph.vertices}
    for u, v in graph.edges:
        adjacency[u].append(v)
    for targets in adjacency.values():
        targets.sort()

    state = {v: 0 for v in graph.vertices}  # 0 new, 1 on path, 2 done
    for root in graph.vertices:
        if state[root]:
            continue
        path = [root]
        iters = [iter(adjacency[root])]
        state[root] = 1
        while iters:
            advanced = False
            for nxt in iters[-1]:
                if state[nxt] == 1:
                    return tuple(path[path.index(nxt):])
                if state[nxt] == 0:
                    state[nxt] = 1
                    path.append(nxt)
                    iters.append(iter(adjacency[nxt]))
                    advanced = True
                    break
            if not advanced:
                state[path.pop()] = 2
                iters.pop()
    return None


def to_dot(graph: BetweennessDigraph) -> str:
    """DOT rendering with vertices labelled "{i,j}" (labels sorted)."""

    def fmt(pair: Pair) -> str:
        return "{%s,%s}" % pair

    lines = ["digraph pair_graph {"]
    for v in graph.vertices:
        lines.append(f'  "{fmt(v)}";')
    for u, v in graph.edges:
        lines.append(f'  "{fmt(u)}" -> "{fmt(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AbstractBetweennessCheck:
    """Outcome of the characterization check with a witness for the failure."""

    holds: bool
    failed_requirement: Optional[str] = None  # "distinct" | "symmetry" | "acyclic"
    witness_triple: Optional[tuple[str, str, str]] = None
    cycle: Optional[tuple[Pair, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


def check_abstract_betweenness(rel: TernaryRelation) -> AbstractBetweennessCheck:
    """Test the three characterizing requirements in order."""
    for t in rel.sorted_triples():
        if len(set(t)) != 3:
            return AbstractBetweennessCheck(False, "distinct", witness_triple=t)
    for t in rel.sorted_triples():
        if (t[2], t[1], t[0]) not in rel.triples:
            return AbstractBetweennessCheck(False, "symmetry", witness_triple=t)
    cycle = find_cycle(pair_digraph(rel))
    if cycle is not None:
        return AbstractBetweennessCheck(False, "acyclic", cycle=cycle)
    return AbstractBetweennessCheck(True)


@dataclass(frozen=True)
class ForkBetweennessReport:
    """How a relation behaves under the fork and betweenness readings at once.

    ``no_equivalent_pairs`` records whether no triple (i, j, i) with i != j
    occurs; together with fork-representability it forces the distinct part
    of the relation to be an abstract causal betweenness.
    """

    outcome: SynthesisOutcome
    fork_representable: bool
    no_equivalent_pairs: bool
    sharp_check: AbstractBetweennessCheck


def compare_fork_and_betweenness(
    rel: TernaryRelation, *, max_ground_size: int = 20
) -> ForkBetweennessReport:
    outcome = fork_represent(rel, max_ground_size=max_ground_size)
    representable = isinstance(outcome, Representable)
    no_equivalent_pairs = not any(
        t[0] == t[2] and t[0] != t[1] for t in rel.triples
    )
    check = check_abstract_betweenness(sharp(rel))
    if representable and no_equivalent_pairs and not check.holds:
        raise RuntimeError(
            "internal error: a representable relation without equivalent pairs "
            "must have an abstractly between distinct part"
        )
    return ForkBetweennessReport(
        outcome=outcome,
        fork_representable=representable,
        no_equivalent_pairs=no_equivalent_pairs,
        sharp_check=check,
    )


__all__ = [
    "AbstractBetweennessCheck",
    "BetweennessDigraph",
    "ForkBetweennessReport",
    "NotRepresentable",
    "check_abstract_betweenness",
    "compare_fork_and_betweenness",
    "extract_betweenness_relation",
    "find_cycle",
    "is_causally_between",
    "pair_digraph",
    "to_dot",
]
