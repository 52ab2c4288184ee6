"""Shared helpers for the test suite: independent oracles and random generators.

The axiom evaluators here are deliberately written as plain quantifier loops
over the whole ground set, independent of the library's scan strategy, so
they can serve as an oracle for the report produced by the package.
"""
from __future__ import annotations

import contextlib
import io
import json
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from random import Random

from confork import (
    FiniteProbabilitySpace,
    IndexedEvents,
    TernaryRelation,
    covariance,
    prob,
)
from confork.cli import main as cli_main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

LABELS = "ABCDEFGH"


def load_fixture(name: str):
    with open(FIXTURES / name, "r", encoding="utf-8") as fh:
        return json.load(fh)


def run_cli(argv):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = cli_main(list(argv))
        except SystemExit as exc:  # argparse errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------- axioms

def naive_axiom_holds(rel: TernaryRelation, axiom: str) -> bool:
    n = rel.ground_set
    t = rel.triples
    if axiom == "sym":
        return all((j, i, j) in t for i in n for j in n if (i, j, i) in t)
    if axiom == "trans":
        return all(
            (i, k, i) in t
            for i in n for j in n for k in n
            if (i, j, i) in t and (j, k, j) in t
        )
    if axiom == "flip":
        return all((j, k, i) in t for i in n for j in n for k in n if (i, k, j) in t)
    if axiom == "lower":
        return all(
            (i, j, j) in t and (j, k, k) in t and (k, i, i) in t
            for i in n for j in n for k in n
            if (i, j, k) in t
        )
    if axiom == "btw":
        return all(
            (j, k, j) in t
            for i in n for j in n for k in n
            if (i, k, j) in t and (i, j, k) in t
        )
    if axiom == "regular":
        return all(
            (i2, j2, k2) in t
            for (i, j, k) in t
            for i2 in n for j2 in n for k2 in n
            if (i, i2, i) in t and (j, j2, j) in t and (k, k2, k) in t
        )
    raise ValueError(axiom)


def axiom_instance_holds(rel: TernaryRelation, axiom: str, witness) -> bool:
    """Substitute a witness tuple into an axiom; True when the instance holds."""
    t = rel.triples
    if axiom == "sym":
        i, j = witness
        return (i, j, i) not in t or (j, i, j) in t
    if axiom == "trans":
        i, j, k = witness
        return not ((i, j, i) in t and (j, k, j) in t) or (i, k, i) in t
    if axiom == "flip":
        i, j, k = witness
        return (i, k, j) not in t or (j, k, i) in t
    if axiom == "lower":
        i, j, k = witness
        return (i, j, k) not in t or (
            (i, j, j) in t and (j, k, k) in t and (k, i, i) in t
        )
    if axiom == "btw":
        i, j, k = witness
        return not ((i, k, j) in t and (i, j, k) in t) or (j, k, j) in t
    if axiom == "regular":
        i, i2, j, j2, k, k2 = witness
        premise = (
            (i, j, k) in t
            and (i, i2, i) in t
            and (j, j2, j) in t
            and (k, k2, k) in t
        )
        return not premise or (i2, j2, k2) in t
    raise ValueError(axiom)


def forkness_closure(ground, base) -> TernaryRelation:
    """Smallest forkness containing the given triples (test-only helper)."""
    t = set(map(tuple, base))
    changed = True
    while changed:
        changed = False
        new = set()
        for a, b, c in t:
            if a == c:
                new.add((b, a, b))
            new.add((c, b, a))
            new.update({(a, b, b), (b, c, c), (c, a, a)})
            if (a, c, b) in t:
                new.add((c, b, c))
        tilde: dict[str, set[str]] = {}
        for a, b, c in t:
            if a == c:
                tilde.setdefault(a, set()).add(b)
        for i, js in tilde.items():
            for j in js:
                for k in tilde.get(j, ()):
                    new.add((i, k, i))
        if not new <= t:
            t |= new
            changed = True
    return TernaryRelation(ground, t)


# ---------------------------------------------------------------- spaces

def random_space(rng: Random, min_atoms=2, max_atoms=6) -> FiniteProbabilitySpace:
    k = rng.randint(min_atoms, max_atoms)
    weights = [rng.randint(0, 6) for _ in range(k)]
    if not any(weights):
        weights[rng.randrange(k)] = 1
    total = sum(weights)
    atoms = [f"w{i}" for i in range(k)]
    return FiniteProbabilitySpace(
        atoms, {a: Fraction(w, total) for a, w in zip(atoms, weights)}
    )


def random_event(rng: Random, space: FiniteProbabilitySpace) -> frozenset:
    return frozenset(a for a in space.atoms if rng.random() < 0.5)


def random_family(rng: Random, n_events: int, min_atoms=2, max_atoms=6) -> IndexedEvents:
    """Random family; occasionally repeats or complements an earlier event so
    that nontrivial P-equality classes actually occur."""
    space = random_space(rng, min_atoms, max_atoms)
    events = {}
    prior = []
    for label in LABELS[:n_events]:
        roll = rng.random()
        if prior and roll < 0.25:
            ev = rng.choice(prior)
        elif prior and roll < 0.35:
            ev = frozenset(space.atoms) - rng.choice(prior)
        else:
            ev = random_event(rng, space)
        events[label] = ev
        prior.append(ev)
    return IndexedEvents(space, events)


def _chance(rng: Random) -> Fraction:
    den = rng.randint(2, 6)
    return Fraction(rng.randint(0, den), den)


def common_cause_family(rng: Random, n_extra: int = 0) -> IndexedEvents:
    """Three events A, B, C with A and C independent given B and given not-B.

    Masses are products of exact conditional chances over the eight cells of
    the A/B/C diagram, so the screening-off equalities hold by construction;
    with probability ~0.7 the chances are biased so that B strictly raises
    both A and C (giving genuine forks and betweenness instances).
    """
    beta = Fraction(rng.randint(1, 5), 6)
    a1, a0, c1, c0 = (_chance(rng) for _ in range(4))
    if rng.random() < 0.7:
        while a1 <= a0:
            a1, a0 = _chance(rng), _chance(rng)
        while c1 <= c0:
            c1, c0 = _chance(rng), _chance(rng)
    mass = {}
    for sa in (0, 1):
        for sb in (0, 1):
            for sc in (0, 1):
                pb = beta if sb else 1 - beta
                pa = (a1 if sb else a0) if sa else 1 - (a1 if sb else a0)
                pc = (c1 if sb else c0) if sc else 1 - (c1 if sb else c0)
                mass[f"{sa}{sb}{sc}"] = pb * pa * pc
    space = FiniteProbabilitySpace(sorted(mass), mass)
    events = {
        "A": frozenset(a for a in space.atoms if a[0] == "1"),
        "B": frozenset(a for a in space.atoms if a[1] == "1"),
        "C": frozenset(a for a in space.atoms if a[2] == "1"),
    }
    prior = list(events.values())
    for label in LABELS[3:3 + n_extra]:
        roll = rng.random()
        if roll < 0.3:
            ev = rng.choice(prior)
        else:
            ev = random_event(rng, space)
        events[label] = ev
        prior.append(ev)
    return IndexedEvents(space, events)


def mixed_family(rng: Random, n_events: int) -> IndexedEvents:
    """Half structured (exact conditional independence), half fully random."""
    if n_events >= 3 and rng.random() < 0.5:
        return common_cause_family(rng, n_extra=n_events - 3)
    return random_family(rng, n_events)


# ---------------------------------------------------------------- synthesis

def assert_measure_laws(result):
    """Laws every synthesized quotient space must satisfy, checked exactly:
    normalization, strict positivity, one-half marginals, the covariance law
    on and off edges, and the closed form for P(all of S) for |S| <= 3
    compared against direct mass summation."""
    space = result.space
    events = result.events.events
    params = result.params
    assert sum(space.mass.values(), Fraction(0)) == 1
    assert all(p > 0 for p in space.mass.values())
    labels = sorted(events)
    for label in labels:
        assert prob(space, events[label]) == Fraction(1, 2)
    edges = set(result.edges)
    for x, y in combinations(labels, 2):
        expected = (
            params.gamma ** params.exponents[(x, y)] / 4
            if (x, y) in edges
            else Fraction(0)
        )
        assert covariance(space, events[x], events[y]) == expected
    hollow = set(result.hollow_triangles)
    for size in (0, 1, 2, 3):
        for subset in combinations(labels, size):
            meet = space.full_event()
            for label in subset:
                meet &= events[label]
            closed = Fraction(1)
            for pair in combinations(subset, 2):
                if pair in edges:
                    closed += params.gamma ** params.exponents[pair]
            closed -= params.epsilon * sum(1 for t in hollow if set(t) <= set(subset))
            assert (2 ** size) * prob(space, meet) == closed
