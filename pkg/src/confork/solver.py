"""Positive solvability of the pairwise difference system of a quotient.

Every triple (I, J, K) of a quotient relation with pairwise distinct
components contributes the equation

    x{I,K} = x{I,J} + x{J,K}

over variables indexed by the unordered pairs that co-occur in some triple.
The question is whether the system admits a solution with every variable
strictly positive.  The system is homogeneous, so a strictly positive
solution exists iff one exists with every variable >= 1 (scale any positive
solution by the reciprocal of its smallest value); the solver therefore
decides feasibility of {equations, x >= 1} exactly.

Implementation: substitute z = x - 1, which turns the problem into
{A z = 1, z >= 0} because every equation row sums to -1, and run a phase-1
simplex over Fractions with Bland's rule (no cycling, deterministic).
A feasible basis yields the solution x = z + 1 with free pairs at 1.  An
infeasible instance yields dual multipliers y with yA <= 0 and sum(y) > 0,
i.e. the combination sum_e y_e * (x{I,J} + x{J,K} - x{I,K}) has only
nonnegative coefficients and at least one positive coefficient, which no
strictly positive x can zero out.  Multipliers are canonicalized to a
primitive integer vector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Union

from .errors import FormatError, NotAQuotient
from .rationals import format_rational, parse_rational
from .relations import TernaryRelation, check_forkness

Pair = tuple[str, str]


def make_pair(a: str, b: str) -> Pair:
    if a == b:
        raise ValueError(f"a pair needs two distinct labels, got {a!r} twice")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Equation:
    """x[lhs] = x[addends[0]] + x[addends[1]], all three pairs distinct."""

    lhs: Pair
    addends: tuple[Pair, Pair]


@dataclass(frozen=True)
class LinearSystem:
    variables: tuple[Pair, ...]
    equations: tuple[Equation, ...]


@dataclass(frozen=True)
class PositiveSolution:
    assignment: Mapping[Pair, Fraction]


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Multipliers aligned with the system's equation order."""

    multipliers: tuple[Fraction, ...]


SolveOutcome = Union[PositiveSolution, InfeasibilityCertificate]


def co_occurring_pairs(rel: TernaryRelation) -> set[Pair]:
    """Unordered pairs of distinct labels appearing together in some triple."""
    pairs: set[Pair] = set()
    for t in rel.triples:
        for x, y in combinations(t, 2):
            if x != y:
                pairs.add(make_pair(x, y))
    return pairs


def build_system(q: TernaryRelation) -> LinearSystem:
    """Difference equations of a quotient relation, deduplicated and sorted.

    Raises NotAQuotient unless q is a forkness with (I, J, I) absent for
    I != J (which is exactly what quotients look like).
    """
    if not check_forkness(q).all_hold():
        raise NotAQuotient("relation is not a forkness")
    for a, b, c in q.triples:
        if a == c and a != b:
            raise NotAQuotient(f"triple ({a},{b},{a}) shows a non-identity equivalence")
    equations = set()
    for a, b, c in q.triples:
        if len({a, b, c}) == 3:
            addends = tuple(sorted((make_pair(a, b), make_pair(b, c))))
            equations.add(Equation(make_pair(a, c), addends))
    variables = tuple(sorted(co_occurring_pairs(q)))
    ordered = tuple(sorted(equations, key=lambda e: (e.lhs, e.addends)))
    return LinearSystem(variables=variables, equations=ordered)


def combination(system: LinearSystem, cert: InfeasibilityCertificate) -> dict[Pair, Fraction]:
    """Coefficients of sum_e mult_e * (x[a0] + x[a1] - x[lhs]) per variable."""
    combo = {p: Fraction(0) for p in system.variables}
    for mult, eq in zip(cert.multipliers, system.equations):
        combo[eq.addends[0]] += mult
        combo[eq.addends[1]] += mult
        combo[eq.lhs] -= mult
    return combo


def verify_solution(system: LinearSystem, sol: PositiveSolution) -> bool:
    """Exact re-check: assignment covers the variables, is positive, solves all equations."""
    if set(sol.assignment) != set(system.variables):
        return False
    if any(v <= 0 for v in sol.assignment.values()):
        return False
    for eq in system.equations:
        if sol.assignment[eq.lhs] != sol.assignment[eq.addends[0]] + sol.assignment[eq.addends[1]]:
            return False
    return True


def verify_certificate(system: LinearSystem, cert: InfeasibilityCertificate) -> bool:
    """Exact re-check of the refutation: combination >= 0 and not identically 0."""
    if len(cert.multipliers) != len(system.equations):
        return False
    if not system.equations:
        return False
    combo = combination(system, cert)
    values = list(combo.values())
    return all(v >= 0 for v in values) and any(v > 0 for v in values)


def _canonical_multipliers(raw: list[Fraction]) -> tuple[Fraction, ...]:
    scale = math.lcm(*(m.denominator for m in raw)) if raw else 1
    ints = [int(m * scale) for m in raw]
    g = math.gcd(*ints) if any(ints) else 1
    return tuple(Fraction(v, g) for v in ints)


def solve_positive(system: LinearSystem) -> SolveOutcome:
    """Decide positive solvability; returns a witness or a certificate.

    Deterministic: identical systems produce identical outcomes.
    """
    n = len(system.variables)
    m = len(system.equations)
    ones = {p: Fraction(1) for p in system.variables}
    if m == 0:
        return PositiveSolution(ones)

    col = {p: j for j, p in enumerate(system.variables)}
    width = n + m + 1
    rows: list[list[Fraction]] = []
    for i, eq in enumerate(system.equations):
        row = [Fraction(0)] * width
        row[col[eq.lhs]] += 1
        row[col[eq.addends[0]]] -= 1
        row[col[eq.addends[1]]] -= 1
        row[n + i] = Fraction(1)
        row[-1] = Fraction(1)
        rows.append(row)

    # reduced-cost row for phase 1 (cost 1 on artificials); last cell = -objective
    obj = [Fraction(0)] * width
    for j in range(width):
        obj[j] = -sum(r[j] for r in rows)
    for i in range(m):
        obj[n + i] += 1

    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        # phase-1 objective is bounded below by zero, so a pivot row exists
        pivot = rows[leave]
        factor = pivot[enter]
        pivot = [v / factor for v in pivot]
        rows[leave] = pivot
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [a - f * b for a, b in zip(rows[i], pivot)]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, pivot)]
        basis[leave] = enter

    infeasibility = -obj[-1]
    if infeasibility == 0:
        assignment = dict(ones)
        for i, b in enumerate(basis):
            if b < n:
                assignment[system.variables[b]] += rows[i][-1]
        sol = PositiveSolution(assignment)
        assert verify_solution(system, sol)
        return sol

    # duals off the artificial columns: y_i = 1 - reduced_cost(artificial_i)
    multipliers = [Fraction(1) - obj[n + i] for i in range(m)]
    cert = InfeasibilityCertificate(_canonical_multipliers(multipliers))
    assert verify_certificate(system, cert)
    return cert


def scale_to_integers(sol: PositiveSolution) -> dict[Pair, int]:
    """Clear denominators: all-positive integers satisfying the same equations."""
    values = sol.assignment.values()
    scale = math.lcm(*(v.denominator for v in values)) if sol.assignment else 1
    return {p: int(v * scale) for p, v in sol.assignment.items()}


def _parse_pair(raw) -> Pair:
    if not isinstance(raw, list) or len(raw) != 2 or not all(isinstance(x, str) for x in raw):
        raise FormatError(f"not a pair of labels: {raw!r}")
    return make_pair(raw[0], raw[1])


def system_to_json(system: LinearSystem) -> dict:
    return {
        "variables": [list(p) for p in system.variables],
        "equations": [
            {"lhs": list(eq.lhs), "addends": [list(a) for a in eq.addends]}
            for eq in system.equations
        ],
    }


def parse_system(doc) -> LinearSystem:
    if not isinstance(doc, dict) or set(doc) != {"variables", "equations"}:
        raise FormatError("system document needs exactly 'variables' and 'equations'")
    variables = tuple(_parse_pair(p) for p in doc["variables"])
    if len(set(variables)) != len(variables):
        raise FormatError("duplicate variables")
    known = set(variables)
    equations = []
    for raw in doc["equations"]:
        if not isinstance(raw, dict) or set(raw) != {"lhs", "addends"}:
            raise FormatError(f"bad equation entry: {raw!r}")
        lhs = _parse_pair(raw["lhs"])
        addends = raw["addends"]
        if not isinstance(addends, list) or len(addends) != 2:
            raise FormatError(f"bad addends: {addends!r}")
        a0, a1 = (_parse_pair(a) for a in addends)
        for p in (lhs, a0, a1):
            if p not in known:
                raise FormatError(f"equation references unknown pair {p!r}")
        equations.append(Equation(lhs, tuple(sorted((a0, a1)))))
    return LinearSystem(variables=variables, equations=tuple(equations))


def solution_to_json(sol: PositiveSolution) -> dict:
    return {
        "assignment": [
            {"pair": list(p), "value": format_rational(v)}
            for p, v in sorted(sol.assignment.items())
        ]
    }


def parse_solution(doc) -> PositiveSolution:
    if not isinstance(doc, dict) or set(doc) != {"assignment"}:
        raise FormatError("solution document needs exactly 'assignment'")
    assignment = {}
    for entry in doc["assignment"]:
        if not isinstance(entry, dict) or set(entry) != {"pair", "value"}:
            raise FormatError(f"bad assignment entry: {entry!r}")
        pair = _parse_pair(entry["pair"])
        if pair in assignment:
            raise FormatError(f"duplicate pair {pair!r}")
        assignment[pair] = parse_rational(entry["value"])
    return PositiveSolution(assignment)


def certificate_to_json(cert: InfeasibilityCertificate) -> list:
    return [
        {"equation_index": i, "multiplier": format_rational(m)}
        for i, m in enumerate(cert.multipliers)
    ]


def parse_certificate(doc, n_equations: int) -> InfeasibilityCertificate:
    if not isinstance(doc, list):
        raise FormatError("certificate document must be an array")
    multipliers = [Fraction(0)] * n_equations
    seen = set()
    for entry in doc:
        if not isinstance(entry, dict) or set(entry) != {"equation_index", "multiplier"}:
            raise FormatError(f"bad certificate entry: {entry!r}")
        idx = entry["equation_index"]
        if not isinstance(idx, int) or not 0 <= idx < n_equations or idx in seen:
            raise FormatError(f"bad equation index: {idx!r}")
        seen.add(idx)
        multipliers[idx] = parse_rational(entry["multiplier"])
    return InfeasibilityCertificate(tuple(multipliers))
