"""Deterministic brute-force solvers for the finite principles.

Each solver does an exhaustive depth-first search over candidate elements
in ascending order, pruning a branch the moment a newly completed sum or
tuple clashes with the color already recorded for its key. The first
completed set is therefore the lexicographically least solution, found
outcomes are re-checked against the independent predicates in
:mod:`redbench.colorings`, and identical inputs always produce identical
outcomes including the node count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from . import colorings
from .bitsupport import FiniteNatSet, SumMode, is_apart, lam, mu
from .config import default_element_bound
from .errors import (
    DomainError,
    InternalContradictionError,
    NotRegressiveError,
    ValidationError,
)

FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget_exceeded"

# Full-domain regressivity prechecks are exhaustive up to this bound; for
# larger domains the checks run pointwise on every value the search touches.
EXHAUSTIVE_CHECK_BOUND = 1 << 16


@dataclass(frozen=True)
class SearchBudget:
    """Bounds on a solver run: candidate universe and node count."""

    element_bound: int = field(default_factory=default_element_bound)
    set_size: int = 1
    node_limit: int = 1_000_000
    ground_set: FiniteNatSet | None = None

    def __post_init__(self):
        if self.element_bound < 2:
            raise ValidationError("element_bound must be >= 2")
        if self.set_size < 1:
            raise ValidationError("set_size must be >= 1")
        if self.node_limit < 1:
            raise ValidationError("node_limit must be >= 1")


@dataclass(frozen=True)
class SolverOutcome:
    status: str  # "found" | "exhausted" | "budget_exceeded"
    solution: FiniteNatSet | None
    nodes_explored: int

    def __post_init__(self):
        if self.status == FOUND and self.solution is None:
            raise ValueError("found outcomes carry a solution")


@dataclass(frozen=True)
class SearchConstraints:
    """Extra requirements on apart solutions.

    ``min_lambda_h0`` floors lam of the first element; ``last_mu_at_least``
    makes the final element's top bit reach past a decode window, which is
    what certifies the solution transformers downstream.
    """

    min_lambda_h0: int = 0
    last_mu_at_least: int | None = None


class _NodeBudgetHit(Exception):
    pass


def solve_rt1(
    c: colorings.UnaryColoring, k: int, domain: FiniteNatSet, size: int
) -> SolverOutcome:
    """Largest color class, ties to the smallest color, elements smallest-first."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    classes: dict[int, list[int]] = {}
    nodes = 0
    for x in domain:
        nodes += 1
        classes.setdefault(c(x), []).append(x)
    best = None
    for color in sorted(classes):
        members = classes[color]
        if len(members) >= size and (best is None or len(members) > len(best[1])):
            best = (color, members)
    if best is None:
        return SolverOutcome(EXHAUSTED, None, nodes)
    solution = FiniteNatSet(tuple(best[1][:size]))
    result = colorings.is_homogeneous(c, solution, "elements")
    if not result.holds:
        raise InternalContradictionError("rt1 solver returned a non-homogeneous set")
    return SolverOutcome(FOUND, solution, nodes)


def _solve_tuple_search(
    f: colorings.TupleColoring,
    domain: FiniteNatSet,
    size: int,
    key_fn: Callable[[tuple[int, ...]], int],
    node_limit: int | None,
) -> SolverOutcome:
    """Shared engine: lexicographically least size-set whose tuples agree per key."""
    if size < f.arity:
        raise ValidationError(f"size must be >= arity {f.arity}")
    elems = list(domain)
    chosen: list[int] = []
    recorded: dict[int, int] = {}
    nodes = 0

    def extend(start: int) -> FiniteNatSet | None:
        nonlocal nodes
        if len(chosen) == size:
            return FiniteNatSet(tuple(chosen))
        for pos in range(start, len(elems)):
            e = elems[pos]
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise _NodeBudgetHit
            added: list[int] = []
            ok = True
            if len(chosen) + 1 >= f.arity:
                for combo in itertools.combinations(chosen, f.arity - 1):
                    t = combo + (e,)
                    color = f(t)
                    key = key_fn(t)
                    if key in recorded:
                        if recorded[key] != color:
                            ok = False
                            break
                    else:
                        recorded[key] = color
                        added.append(key)
            if ok:
                chosen.append(e)
                result = extend(pos + 1)
                if result is not None:
                    return result
                chosen.pop()
            for key in added:
                del recorded[key]
        return None

    try:
        solution = extend(0)
    except _NodeBudgetHit:
        return SolverOutcome(BUDGET_EXCEEDED, None, nodes)
    if solution is None:
        return SolverOutcome(EXHAUSTED, None, nodes)
    return SolverOutcome(FOUND, solution, nodes)


def solve_rt(
    f: colorings.TupleColoring,
    k: int,
    domain: FiniteNatSet,
    size: int,
    node_limit: int | None = None,
) -> SolverOutcome:
    """Lexicographically least size-set of domain homogeneous for f."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    outcome = _solve_tuple_search(f, domain, size, lambda t: -1, node_limit)
    if outcome.status == FOUND:
        result = colorings.is_homogeneous(f, outcome.solution, "tuples")
        if not result.holds:
            raise InternalContradictionError("rt solver returned a non-homogeneous set")
    return outcome


def solve_reg(
    f: colorings.TupleColoring,
    domain: FiniteNatSet,
    size: int,
    node_limit: int | None = None,
) -> SolverOutcome:
    """Lexicographically least size-set of domain min-homogeneous for f.

    Rejects colorings that are not regressive on the domain's tuples.
    """
    ok, witness = colorings.is_regressive(f, domain)
    if not ok:
        raise NotRegressiveError(f"coloring is not regressive at {witness}", witness=witness)
    outcome = _solve_tuple_search(f, domain, size, lambda t: t[0], node_limit)
    if outcome.status == FOUND:
        holds, witness = colorings.is_min_homogeneous(f, outcome.solution)
        if not holds:
            raise InternalContradictionError("reg solver returned a non-min-homogeneous set")
    return outcome


def _support_shape_candidates(element_bound: int) -> list[int]:
    """All naturals of the form 2**a or 2**a + 2**b (a < b) below the bound.

    Complete set of (lam, mu) profile representatives; sufficient when the
    coloring never distinguishes interior support bits.
    """
    bits = (element_bound - 1).bit_length()
    out = []
    for a in range(bits):
        single = 1 << a
        if single < element_bound:
            out.append(single)
        for b in range(a + 1, bits):
            pair = (1 << a) | (1 << b)
            if pair < element_bound:
                out.append(pair)
    out.sort()
    return out


def _max_new_terms(mode: SumMode, size: int) -> int:
    sizes = mode.sizes(size)
    return max(sizes) if len(sizes) else 0


def _solve_sum_search(
    c: colorings.UnaryColoring,
    mode: SumMode,
    size: int,
    budget: SearchBudget,
    *,
    require_apart: bool,
    key_fn: Callable[[tuple[int, ...]], int],
    constraints: SearchConstraints,
    support_shape: bool,
    check_lambda_regressive: bool,
) -> SolverOutcome:
    """Shared engine for sum-homogeneity searches over positive naturals."""
    if size < 1:
        raise ValidationError("size must be >= 1")
    max_terms = _max_new_terms(mode, size)
    if require_apart:
        # apart summands occupy disjoint bit ranges, so any sum stays
        # below the next power of two past the element bound
        worst = (1 << (budget.element_bound - 1).bit_length()) - 1
    else:
        worst = max_terms * (budget.element_bound - 1)
    if worst >= c.domain_bound:
        raise DomainError(
            f"sums of {max_terms} elements below {budget.element_bound} can reach "
            f"{worst}, outside the coloring domain [0, {c.domain_bound})",
            point=worst,
        )
    sizes = mode.sizes(size)

    if support_shape:
        pool: Sequence[int] | None = _support_shape_candidates(budget.element_bound)
    elif budget.ground_set is not None:
        pool = [x for x in budget.ground_set if 1 <= x < budget.element_bound]
    else:
        pool = None  # dense range, enumerated arithmetically per threshold

    def eval_color(n: int) -> int:
        value = c(n)
        if check_lambda_regressive:
            low = lam(n)
            if (low > 0 and value >= low) or (low == 0 and value != 0):
                raise NotRegressiveError(
                    f"coloring is not lambda-regressive at {n}", witness=n
                )
        return value

    def candidates(prev: int | None, depth: int) -> Iterator[int]:
        threshold = 0
        if require_apart:
            threshold = mu(prev) + 1 if prev is not None else 0
            if depth == 0:
                threshold = max(threshold, constraints.min_lambda_h0)
        lo = 1 if prev is None else prev + 1
        if pool is not None:
            for e in pool:
                if e < lo:
                    continue
                if require_apart and lam(e) < threshold:
                    continue
                yield e
        else:
            if require_apart:
                step = 1 << threshold
                start = max(lo, step)
                start = ((start + step - 1) // step) * step
                yield from range(start, budget.element_bound, step)
            else:
                yield from range(lo, budget.element_bound)

    chosen: list[int] = []
    recorded: dict[int, int] = {}
    nodes = 0

    def extend(prev: int | None) -> FiniteNatSet | None:
        nonlocal nodes
        depth = len(chosen)
        if depth == size:
            return FiniteNatSet(tuple(chosen))
        last = depth == size - 1
        for e in candidates(prev, depth):
            if (
                last
                and constraints.last_mu_at_least is not None
                and mu(e) < constraints.last_mu_at_least
            ):
                continue
            nodes += 1
            if nodes > budget.node_limit:
                raise _NodeBudgetHit
            added: list[int] = []
            ok = True
            for s in sizes:
                take = s - 1
                if take > depth:
                    continue
                for combo in itertools.combinations(range(depth), take):
                    total = sum(chosen[i] for i in combo) + e
                    color = eval_color(total)
                    key = key_fn(combo + (depth,))
                    if key in recorded:
                        if recorded[key] != color:
                            ok = False
                            break
                    else:
                        recorded[key] = color
                        added.append(key)
                if not ok:
                    break
            if ok:
                chosen.append(e)
                result = extend(e)
                if result is not None:
                    return result
                chosen.pop()
            for key in added:
                del recorded[key]
        return None

    try:
        solution = extend(None)
    except _NodeBudgetHit:
        return SolverOutcome(BUDGET_EXCEEDED, None, nodes)
    if solution is None:
        return SolverOutcome(EXHAUSTED, None, nodes)
    return SolverOutcome(FOUND, solution, nodes)


def solve_ht(
    c: colorings.UnaryColoring,
    mode: SumMode,
    size: int,
    budget: SearchBudget,
    require_apart: bool = True,
) -> SolverOutcome:
    """Lexicographically least size-set whose mode sums are monochromatic."""
    outcome = _solve_sum_search(
        c,
        mode,
        size,
        budget,
        require_apart=require_apart,
        key_fn=lambda idx: -1,
        constraints=SearchConstraints(),
        support_shape=False,
        check_lambda_regressive=False,
    )
    if outcome.status == FOUND:
        result = colorings.is_homogeneous(c, outcome.solution, mode)
        apart_ok = (not require_apart) or is_apart(outcome.solution)[0]
        if not (result.holds and apart_ok):
            raise InternalContradictionError("ht solver returned an invalid set")
    return outcome


def solve_lambda_reg_ht(
    c: colorings.UnaryColoring,
    mode: SumMode,
    size: int,
    budget: SearchBudget,
    constraints: SearchConstraints = SearchConstraints(),
    support_shape: bool = False,
) -> SolverOutcome:
    """Lexicographically least apart size-set with min-term-homogeneous sums.

    Rejects colorings that fail lambda-regressivity; domains above
    EXHAUSTIVE_CHECK_BOUND are checked pointwise as the search evaluates
    them instead of being swept up front. With ``support_shape`` the
    candidate pool shrinks to the (lam, mu) profile representatives, which
    is only sound for colorings flagged as profile-determined.
    """
    if size < 2:
        raise ValidationError("size must be >= 2")
    if support_shape and not c.lambda_mu_determined:
        raise ValidationError(
            "support-shape reduction needs a coloring determined by (lam, mu)"
        )
    check_lazily = c.domain_bound > EXHAUSTIVE_CHECK_BOUND
    if not check_lazily:
        ok, witness = colorings.is_lambda_regressive(c)
        if not ok:
            raise NotRegressiveError(
                f"coloring is not lambda-regressive at {witness}", witness=witness
            )
    outcome = _solve_sum_search(
        c,
        mode,
        size,
        budget,
        require_apart=True,
        key_fn=lambda idx: idx[0],
        constraints=constraints,
        support_shape=support_shape,
        check_lambda_regressive=check_lazily,
    )
    if outcome.status == FOUND:
        solution = outcome.solution
        holds, witness = colorings.is_min_term_homogeneous(c, solution, mode)
        apart_ok = is_apart(solution)[0]
        floor_ok = lam(solution.min()) >= constraints.min_lambda_h0
        last_ok = (
            constraints.last_mu_at_least is None
            or mu(solution.max()) >= constraints.last_mu_at_least
        )
        if not (holds and apart_ok and floor_ok and last_ok):
            raise InternalContradictionError("regressive ht solver returned an invalid set")
    return outcome
