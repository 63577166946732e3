"""The reduction registry and its verification harness.

A registered reduction packages an instance transformer (phi), a solve
plan for the target principle, and a solution transformer (psi) between a
source and a target principle. The harness runs the whole round trip
against the brute-force solvers and reports verdicts computed only by the
independent validators, never by the reduction's own code, so a failed
precondition at finite scale is distinguishable from an actual violation.

Strongly uniform (sW) reductions have a psi that reads nothing but the
target instance and solution; the harness checks this by calling psi both
with and without the source instance and comparing outputs.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import colorings, constructions, solvers, wellorder
from .bitsupport import FiniteNatSet, SumMode, is_apart, lam, lam_minus, mu
from .colorings import TupleColoring, UnaryColoring
from .constructions import InjectiveFunctionTable
from .errors import (
    InsufficientDataError,
    InternalContradictionError,
    PreconditionError,
    ValidationError,
)
from .solvers import (
    EXHAUSTIVE_CHECK_BOUND,
    SearchBudget,
    SearchConstraints,
    SolverOutcome,
)
from .wellorder import DescendingSequence

MAX_TUPLE_SCAN = 250_000


@dataclass(frozen=True)
class Instance:
    """A tagged principle instance: the payload plus scale parameters."""

    principle: str
    payload: object
    params: Mapping[str, object] = field(default_factory=dict)

    def param(self, key: str, default=None):
        return self.params.get(key, default)


@dataclass(frozen=True)
class Solution:
    """A tagged principle solution."""

    kind: str  # "finite_set" | "range_table" | "x_sequence"
    payload: object


@dataclass(frozen=True)
class Principle:
    name: str
    validate_instance: Callable[[Instance], None]
    validate_solution: Callable[[Instance, Solution], None]


# ---------------------------------------------------------------------------
# validators


def _profile_points(domain_bound: int) -> list[int]:
    bits = (domain_bound - 1).bit_length()
    pts = [0]
    for a in range(bits):
        if (1 << a) < domain_bound:
            pts.append(1 << a)
        for b in range(a + 1, bits):
            v = (1 << a) | (1 << b)
            if v < domain_bound:
                pts.append(v)
    return pts


def check_lambda_regressive(c: UnaryColoring) -> None:
    """Raise unless c is lambda-regressive on its whole declared domain.

    Profile-determined colorings are checked on all (lam, mu) profile
    representatives, which covers every point; others are swept
    exhaustively and must therefore declare a domain of at most 2**16.
    """
    if c.lambda_mu_determined:
        ok, witness = colorings.is_lambda_regressive(c, _profile_points(c.domain_bound))
    elif c.domain_bound <= EXHAUSTIVE_CHECK_BOUND:
        ok, witness = colorings.is_lambda_regressive(c)
    else:
        raise ValidationError(
            f"domain bound {c.domain_bound} too large for an exhaustive "
            "lambda-regressivity sweep and the coloring is not profile-determined"
        )
    if not ok:
        raise ValidationError(f"coloring is not lambda-regressive at {witness}", witness=witness)


def check_regressive(f: TupleColoring, ground: FiniteNatSet | None = None) -> None:
    size = len(ground) if ground is not None else f.domain_bound
    if math.comb(size, f.arity) > MAX_TUPLE_SCAN:
        raise ValidationError(
            f"{math.comb(size, f.arity)} tuples is too many for an exhaustive "
            "regressivity sweep; use a smaller domain or ground set"
        )
    ok, witness = colorings.is_regressive(f, ground)
    if not ok:
        raise ValidationError(f"coloring is not regressive at {witness}", witness=witness)


def _check_colors_below(c: UnaryColoring, k: int) -> None:
    if c.domain_bound > EXHAUSTIVE_CHECK_BOUND:
        raise ValidationError(
            f"domain bound {c.domain_bound} too large for an exhaustive color sweep"
        )
    for n in range(c.domain_bound):
        if not 0 <= c(n) < k:
            raise ValidationError(f"color {c(n)} at {n} is outside [0, {k})", witness=n)


def _check_tuple_colors_below(f: TupleColoring, k: int) -> None:
    if math.comb(f.domain_bound, f.arity) > MAX_TUPLE_SCAN:
        raise ValidationError("tuple domain too large for an exhaustive color sweep")
    for t in itertools.combinations(range(f.domain_bound), f.arity):
        if not 0 <= f(t) < k:
            raise ValidationError(f"color {f(t)} at {t} is outside [0, {k})", witness=t)


def _expect_finite_set(sol: Solution) -> FiniteNatSet:
    if sol.kind != "finite_set" or not isinstance(sol.payload, FiniteNatSet):
        raise ValidationError(f"expected a finite_set solution, got {sol.kind!r}")
    return sol.payload


def _validate_rt1_instance(inst: Instance) -> None:
    k = inst.param("k")
    if not isinstance(k, int) or k < 1:
        raise ValidationError("rt1 instances need a color count k >= 1")
    _check_colors_below(inst.payload, k)


def _validate_rt1_solution(inst: Instance, sol: Solution) -> None:
    h = _expect_finite_set(sol)
    c: UnaryColoring = inst.payload
    if len(h) < 1:
        raise ValidationError("empty solution")
    result = colorings.is_homogeneous(c, h, "elements")
    if not result.holds:
        raise ValidationError(f"solution is not homogeneous: {result.witness}", witness=result.witness)


def _validate_rt_instance(inst: Instance) -> None:
    k = inst.param("k")
    f: TupleColoring = inst.payload
    if not isinstance(k, int) or k < 1:
        raise ValidationError("rt instances need a color count k >= 1")
    _check_tuple_colors_below(f, k)


def _validate_rt_solution(inst: Instance, sol: Solution) -> None:
    h = _expect_finite_set(sol)
    f: TupleColoring = inst.payload
    if len(h) < f.arity:
        raise ValidationError(f"solution smaller than the arity {f.arity}")
    result = colorings.is_homogeneous(f, h, "tuples")
    if not result.holds:
        raise ValidationError(f"solution is not homogeneous: {result.witness}", witness=result.witness)


def _validate_reg_instance(inst: Instance) -> None:
    f: TupleColoring = inst.payload
    ground = inst.param("ground_set")
    check_regressive(f, ground)


def _validate_reg_solution(inst: Instance, sol: Solution) -> None:
    h = _expect_finite_set(sol)
    f: TupleColoring = inst.payload
    ground = inst.param("ground_set")
    if ground is not None and any(x not in ground for x in h):
        raise ValidationError("solution leaves the declared ground set")
    if len(h) < f.arity:
        raise ValidationError(f"solution smaller than the arity {f.arity}")
    holds, witness = colorings.is_min_homogeneous(f, h)
    if not holds:
        raise ValidationError(f"solution is not min-homogeneous: {witness}", witness=witness)


def _validate_ht_instance(inst: Instance) -> None:
    k = inst.param("k")
    if not isinstance(k, int) or k < 1:
        raise ValidationError("ht instances need a color count k >= 1")
    if not isinstance(inst.param("mode"), SumMode):
        raise ValidationError("ht instances need a sum mode")
    _check_colors_below(inst.payload, k)


def _validate_ht_solution(inst: Instance, sol: Solution) -> None:
    h = _expect_finite_set(sol)
    c: UnaryColoring = inst.payload
    if len(h) < 1 or h.min() < 1:
        raise ValidationError("solutions must be nonempty sets of positive naturals")
    if inst.param("apart", True):
        apart, pair = is_apart(h)
        if not apart:
            raise ValidationError(f"solution is not apart at {pair}", witness=pair)
    result = colorings.is_homogeneous(c, h, inst.param("mode"))
    if not result.holds:
        raise ValidationError(f"sums are not monochromatic: {result.witness}", witness=result.witness)


def _validate_reght_instance(inst: Instance) -> None:
    if not isinstance(inst.param("mode"), SumMode):
        raise ValidationError("regressive ht instances need a sum mode")
    check_lambda_regressive(inst.payload)


def _validate_reght_solution(inst: Instance, sol: Solution) -> None:
    h = _expect_finite_set(sol)
    c: UnaryColoring = inst.payload
    if len(h) < 1 or h.min() < 1:
        raise ValidationError("solutions must be nonempty sets of positive naturals")
    apart, pair = is_apart(h)
    if not apart:
        raise ValidationError(f"solution is not apart at {pair}", witness=pair)
    holds, witness = colorings.is_min_term_homogeneous(c, h, inst.param("mode"))
    if not holds:
        raise ValidationError(f"sums are not min-term-homogeneous: {witness}", witness=witness)


def _validate_ran_instance(inst: Instance) -> None:
    if not isinstance(inst.payload, InjectiveFunctionTable):
        raise ValidationError("ran instances carry an injective function table")


def _validate_ran_solution(inst: Instance, sol: Solution) -> None:
    if sol.kind != "range_table":
        raise ValidationError(f"expected a range_table solution, got {sol.kind!r}")
    table: InjectiveFunctionTable = inst.payload
    payload = sol.payload
    bound = payload["certified_bound"]
    members = tuple(payload["members"])
    oracle = tuple(x for x in range(bound) if x in table.range_set())
    if members != oracle:
        raise ValidationError(
            f"decoded membership {members} disagrees with the table scan {oracle} "
            f"below {bound}",
            witness=(members, oracle),
        )


def _validate_wop_instance(inst: Instance) -> None:
    alpha: DescendingSequence = inst.payload
    ok, witness = wellorder.validate_descending(alpha)
    if not ok:
        raise ValidationError(f"sequence fails to descend at term {witness}", witness=witness)


def _validate_wop_solution(inst: Instance, sol: Solution) -> None:
    if sol.kind != "x_sequence":
        raise ValidationError(f"expected an x_sequence solution, got {sol.kind!r}")
    alpha: DescendingSequence = inst.payload
    values = tuple(sol.payload["values"])
    exps = alpha.exponent_values()
    for v in values:
        alpha.order.validate(v)
        if v not in exps:
            raise ValidationError(f"{v} never occurs as an exponent of the instance", witness=v)
    for a, b in zip(values, values[1:]):
        if a <= b:
            raise ValidationError(f"output is not strictly descending: {a} then {b}", witness=(a, b))


PRINCIPLES: dict[str, Principle] = {
    "rt1": Principle("rt1", _validate_rt1_instance, _validate_rt1_solution),
    "rt": Principle("rt", _validate_rt_instance, _validate_rt_solution),
    "reg": Principle("reg", _validate_reg_instance, _validate_reg_solution),
    "ht": Principle("ht", _validate_ht_instance, _validate_ht_solution),
    "reght": Principle("reght", _validate_reght_instance, _validate_reght_solution),
    "ran": Principle("ran", _validate_ran_instance, _validate_ran_solution),
    "wop": Principle("wop", _validate_wop_instance, _validate_wop_solution),
}


# ---------------------------------------------------------------------------
# solution transformers


def decode_range(
    table: InjectiveFunctionTable, h: FiniteNatSet, n: int, x: int
) -> bool:
    """Decide x in range(f) from a certified solution set.

    Uses the least usable index i with x < lam(h_i), keeping the final
    element in reserve as the homogeneity witness, and scans the table
    below mu(h_{i+n-1}).
    """
    if x < 0:
        raise ValidationError("queries are naturals")
    usable_max = len(h) - n - 1
    for i in range(usable_max + 1):
        if x < lam(h[i]):
            window_end = mu(h[i + n - 1])
            return x in set(table.values[: min(window_end, len(table))])
    raise PreconditionError(
        f"query {x} outside the certified window (needs x < lam(h_i) for some "
        f"i <= {usable_max})",
        witness=x,
    )


def certified_query_bound(h: FiniteNatSet, n: int) -> int:
    """Queries below this bound are decodable from h."""
    usable_max = len(h) - n - 1
    if usable_max < 0:
        raise PreconditionError(f"need at least {n + 1} elements, got {len(h)}")
    return lam(h[usable_max])


def decoded_range_solution(table: InjectiveFunctionTable, h: FiniteNatSet, n: int) -> Solution:
    bound = certified_query_bound(h, n)
    members = tuple(x for x in range(bound) if decode_range(table, h, n, x))
    return Solution("range_table", {"certified_bound": bound, "members": members})


def extract_mu_homog(h: FiniteNatSet, k: int, n: int = 2) -> FiniteNatSet:
    """Top bit positions of the tail of h, homogeneous for the recolored base.

    Skips up to the first element whose lam exceeds k plus the n-1 window
    elements that anchor the min term.
    """
    j_star = next((j for j, x in enumerate(h) if lam(x) > k), None)
    if j_star is None:
        raise InsufficientDataError(f"no element of h has lam above {k}")
    start = j_star + n - 1
    if start >= len(h):
        raise InsufficientDataError(
            f"h has only {len(h)} elements; need more than {start} to anchor the window"
        )
    return FiniteNatSet(tuple(mu(h[j]) for j in range(start, len(h))))


def rt1_pipeline_extract(
    f: UnaryColoring,
    k: int,
    h: FiniteNatSet,
    cap: int = 4,
    min_output: int = 2,
) -> FiniteNatSet:
    """Recover an f-homogeneous set from a guarded min-term-homogeneous h.

    Elements with lam_minus >= k are usable directly; when too few exist,
    the stabilized tail of the small side is merged pairwise (equal low
    bits cancel) until the block sums clear the threshold. The output is
    {base + other} over the chosen blocks, where base holds the least used
    element so every output sum keys on the same min term.
    """
    if len(h) < 3:
        raise InsufficientDataError("need at least 3 elements")
    keep = [x for x in h if lam_minus(x) >= k]
    small = [x for x in h if lam_minus(x) < k]
    if len(keep) >= min_output + 1:
        blocks: list[tuple[int, tuple[int, ...]]] = [(x, (x,)) for x in keep]
    else:
        lms = [lam_minus(x) for x in small]
        if any(a > b for a, b in zip(lms, lms[1:])):
            raise InsufficientDataError(
                "lam_minus decreases along the small side; h is not a valid solution"
            )
        if not small:
            raise InsufficientDataError("not enough usable elements")
        top = lms[-1]
        tail = [x for x, v in zip(small, lms) if v == top]
        blocks = [(x, (x,)) for x in tail]
        while True:
            todo = [b for b in blocks if lam_minus(b[0]) < k]
            if not todo:
                break
            done = [b for b in blocks if lam_minus(b[0]) >= k]
            groups: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
            for b in todo:
                groups.setdefault(lam(b[0]), []).append(b)
            merged = list(done)
            progressed = False
            for low in sorted(groups):
                grp = groups[low]
                for a, b in zip(grp[::2], grp[1::2]):
                    merged.append((a[0] + b[0], a[1] + b[1]))
                    progressed = True
                # an unpaired block cannot raise its low bit; drop it
            blocks = sorted(merged, key=lambda b: b[1][0])
            if not progressed:
                break
    blocks = sorted(blocks, key=lambda b: b[1][0])
    blocks = [b for b in blocks if lam_minus(b[0]) >= k]
    if len(blocks) < min_output + 1:
        raise InsufficientDataError(
            f"only {len(blocks)} usable blocks; need {min_output + 1}"
        )
    base_sum, base_members = blocks[0]
    out = set()
    for other_sum, other_members in blocks[1:]:
        if len(base_members) + len(other_members) > cap:
            continue
        total = base_sum + other_sum
        if lam_minus(total) < k:
            raise InsufficientDataError(
                f"combined block {total} drops below the lam_minus threshold {k}; "
                "h does not certify the construction"
            )
        out.add(total)
    if len(out) < min_output:
        raise InsufficientDataError(f"only {len(out)} output sums within the cap {cap}")
    return FiniteNatSet(tuple(sorted(out)))


def ht_from_reght_extract(
    g: UnaryColoring,
    k: int,
    n: int,
    h: FiniteNatSet,
    size: int = 2,
) -> FiniteNatSet:
    """Window-color the tail of h and keep the largest single-color class.

    g is the clipped coloring h solves; elements up to the first with
    lam > k are dropped, each remaining element is colored by its
    n-element window sum, and the class is found with the rt1 solver.
    """
    j_star = next((j for j, x in enumerate(h) if lam(x) > k), None)
    if j_star is None:
        raise InsufficientDataError(f"no element of h has lam above {k}")
    eligible = [i for i in range(j_star, len(h) - n + 1)]
    if len(eligible) < size:
        raise InsufficientDataError(
            f"only {len(eligible)} window positions; need {size}"
        )
    window_color = {h[i]: g(sum(h[i : i + n])) for i in eligible}
    gprime = UnaryColoring(
        domain_bound=h.max() + 1,
        fn=lambda x: window_color[x],
        range_bound=k,
    )
    outcome = solvers.solve_rt1(
        gprime, k, FiniteNatSet(tuple(h[i] for i in eligible)), size
    )
    if outcome.status != solvers.FOUND:
        raise InsufficientDataError("no single window color covers the requested size")
    return outcome.solution


def rt_from_reg_extract(
    cplus: TupleColoring,
    k: int,
    h: FiniteNatSet,
    size: int = 2,
) -> FiniteNatSet:
    """Drop elements at most k, window-color the rest, keep one color class."""
    n = cplus.arity
    hp = [x for x in h if x > k]
    if len(hp) < n - 1 + size:
        raise InsufficientDataError(
            f"only {len(hp)} elements above {k}; need {n - 1 + size}"
        )
    eligible = list(range(len(hp) - n + 1))
    window_color = {hp[i]: cplus(tuple(hp[i : i + n])) for i in eligible}
    fprime = UnaryColoring(
        domain_bound=hp[-1] + 1,
        fn=lambda x: window_color[x],
        range_bound=k,
    )
    outcome = solvers.solve_rt1(
        fprime, k, FiniteNatSet(tuple(hp[i] for i in eligible)), size
    )
    if outcome.status != solvers.FOUND:
        raise InsufficientDataError("no single window color covers the requested size")
    return outcome.solution


def rt_forallk_from_reg_extract(
    cplus: TupleColoring,
    h: FiniteNatSet,
    size: int = 2,
) -> FiniteNatSet:
    """Like the fixed-k extraction, but the guard reserves color 0.

    Elements whose window gets the guard color 0 are dropped to a
    fixpoint; the survivors are paired into the two-coloring "windows
    agree / windows differ" and the returned set is a lexicographically
    least agreeing clique, whose pair color is then asserted to be 0.
    A nonzero assertion would contradict min-homogeneity of h.
    """
    n = cplus.arity
    hp = list(h)
    while True:
        if len(hp) < n:
            raise InsufficientDataError("too few elements left after dropping guard windows")
        windows = {i: cplus(tuple(hp[i : i + n])) for i in range(len(hp) - n + 1)}
        zeros = [i for i, v in windows.items() if v == 0]
        if not zeros:
            break
        hp = [x for i, x in enumerate(hp) if i not in set(zeros)]
    eligible = list(range(len(hp) - n + 1))
    if len(eligible) < size:
        raise InsufficientDataError(f"only {len(eligible)} window positions; need {size}")
    values = {hp[i]: windows[i] for i in eligible}
    chosen: list[int] | None = None
    elems = [hp[i] for i in eligible]
    for first in range(len(elems)):
        matches = [e for e in elems[first:] if values[e] == values[elems[first]]]
        if len(matches) >= size:
            chosen = matches[:size]
            break
    if chosen is None:
        raise InsufficientDataError("no agreeing window class of the requested size")
    pair_coloring = TupleColoring(
        arity=2,
        domain_bound=hp[-1] + 1,
        fn=lambda t: 0 if values[t[0]] == values[t[1]] else 1,
        range_bound=2,
    )
    out = FiniteNatSet(tuple(chosen))
    result = colorings.is_homogeneous(pair_coloring, out, "tuples")
    if not result.holds or (result.color not in (0, None)):
        raise InternalContradictionError(
            "selected class is homogeneous of color 1; impossible for a "
            "min-homogeneous input"
        )
    if any(values[e] == 0 for e in chosen):
        raise InternalContradictionError("guard-colored window survived the drop phase")
    return out


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class SolvePlan:
    solver: str  # "lambda_reg_ht" | "reg"
    budget: SearchBudget
    sizes: tuple[int, ...]
    mode: SumMode | None = None
    constraints: SearchConstraints = SearchConstraints()
    support_shape: bool = False
    domain: FiniteNatSet | None = None  # tuple solvers only


@dataclass(frozen=True)
class Reduction:
    """A (phi, psi, kind) triple between two registered principles."""

    name: str
    kind: str  # "sW" | "W" | "c"
    source: str
    target: str
    phi: Callable[[Instance, SearchBudget], Instance]
    plan: Callable[[Instance, Instance, SearchBudget], SolvePlan]
    psi: Callable[[Instance | None, Instance, FiniteNatSet], Solution]
    preconditions: Callable[[Instance, FiniteNatSet], dict[str, bool]] = lambda t, h: {}

    def __post_init__(self):
        if self.kind not in ("sW", "W", "c"):
            raise ValueError(f"unknown reduction kind {self.kind!r}")


def _powers_ground_set(limit: int) -> FiniteNatSet:
    return FiniteNatSet(tuple(1 << a for a in range((limit - 1).bit_length()) if (1 << a) < limit))


def _run_plan(plan: SolvePlan, target: Instance) -> tuple[SolverOutcome, tuple]:
    if not plan.sizes:
        raise ValidationError("solve plan has no sizes to try")
    attempts = []
    outcome = None
    for size in plan.sizes:
        if plan.solver == "lambda_reg_ht":
            outcome = solvers.solve_lambda_reg_ht(
                target.payload,
                plan.mode,
                size,
                plan.budget,
                constraints=plan.constraints,
                support_shape=plan.support_shape,
            )
        elif plan.solver == "reg":
            outcome = solvers.solve_reg(
                target.payload, plan.domain, size, node_limit=plan.budget.node_limit
            )
        else:
            raise ValueError(f"unknown solver {plan.solver!r}")
        attempts.append((size, outcome.status))
        if outcome.status == solvers.FOUND:
            break
    return outcome, tuple(attempts)


def _coloring_param(instance: Instance, key: str):
    return instance.payload.provenance["params"][key]


# --- rt1 <= regressive ht (strongly uniform) --------------------------------


def _make_rt1k_to_reght(n: int) -> Reduction:
    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        c: UnaryColoring = inst.payload
        k = inst.param("k")
        needed_bits = (n * budget.element_bound - 1).bit_length()
        if c.domain_bound <= needed_bits:
            raise ValidationError(
                f"source coloring domain [0, {c.domain_bound}) cannot color bit "
                f"positions up to {needed_bits}"
            )
        target = constructions.mu_recoloring(c, k, domain_bound=n * budget.element_bound + 1)
        return Instance("reght", target, {"mode": SumMode.exactly(n)})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        k = inst.param("k")
        return SolvePlan(
            solver="lambda_reg_ht",
            budget=budget,
            sizes=(k + n + 3,),
            mode=SumMode.exactly(n),
            support_shape=True,
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        k = _coloring_param(target, "k")
        return Solution("finite_set", extract_mu_homog(h, k, n))

    def preconditions(target: Instance, h: FiniteNatSet) -> dict[str, bool]:
        k = _coloring_param(target, "k")
        return {
            "has_lam_above_k": any(lam(x) > k for x in h),
            "size_margin": len(h) >= k + n + 1,
        }

    return Reduction(
        name=f"rt1k_to_reght{n}",
        kind="sW",
        source="rt1",
        target="reght",
        phi=phi,
        plan=plan,
        psi=psi,
        preconditions=preconditions,
    )


# --- full regressive ht yields rt1 (pipeline) -------------------------------

_REGHT_TO_RT1_CAP = 4
_REGHT_TO_RT1_MAX_BOUND = 1 << 13


def _reght_to_rt1_bound(f: UnaryColoring, budget: SearchBudget) -> int:
    # sums of up to cap elements must stay inside the source coloring domain
    bound = min(
        budget.element_bound,
        _REGHT_TO_RT1_MAX_BOUND,
        (f.domain_bound - 1) // _REGHT_TO_RT1_CAP,
    )
    if bound < 2:
        raise ValidationError(
            f"source coloring domain [0, {f.domain_bound}) leaves no room for "
            f"sums of {_REGHT_TO_RT1_CAP} elements"
        )
    return bound


def _reght_to_rt1() -> Reduction:
    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        f: UnaryColoring = inst.payload
        k = inst.param("k")
        bound = _reght_to_rt1_bound(f, budget)
        target = constructions.guard_rt1(
            f, k, domain_bound=_REGHT_TO_RT1_CAP * bound + 1
        )
        return Instance("reght", target, {"mode": SumMode.all_capped(_REGHT_TO_RT1_CAP)})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        k = inst.param("k")
        bound = _reght_to_rt1_bound(inst.payload, budget)
        eff = SearchBudget(
            element_bound=bound,
            node_limit=budget.node_limit,
            ground_set=budget.ground_set,
        )
        return SolvePlan(
            solver="lambda_reg_ht",
            budget=eff,
            sizes=(4,),
            mode=SumMode.all_capped(_REGHT_TO_RT1_CAP),
            constraints=SearchConstraints(min_lambda_h0=k + 1),
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        f = _coloring_param(target, "base")
        k = _coloring_param(target, "k")
        return Solution("finite_set", rt1_pipeline_extract(f, k, h, cap=_REGHT_TO_RT1_CAP))

    def preconditions(target: Instance, h: FiniteNatSet) -> dict[str, bool]:
        k = _coloring_param(target, "k")
        return {"usable_elements": sum(1 for x in h if lam_minus(x) >= k) >= 3}

    return Reduction(
        name="reght_to_rt1",
        kind="W",
        source="rt1",
        target="reght",
        phi=phi,
        plan=plan,
        psi=psi,
        preconditions=preconditions,
    )


# --- bounded ht from bounded regressive ht ----------------------------------

_REGHT_TO_HT_MAX_BOUND = 1 << 12


def _reght_to_ht_bound(f: UnaryColoring, n: int, budget: SearchBudget) -> int:
    bound = min(budget.element_bound, _REGHT_TO_HT_MAX_BOUND, (f.domain_bound - 1) // n)
    if bound < 2:
        raise ValidationError(
            f"source coloring domain [0, {f.domain_bound}) leaves no room for "
            f"sums of {n} elements"
        )
    return bound


def _make_reght_to_ht(n: int, mode_kind: str) -> Reduction:
    target_mode = SumMode(mode_kind, n)
    suffix = "atmost" if mode_kind == "at_most" else "exact"

    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        f: UnaryColoring = inst.payload
        bound = _reght_to_ht_bound(f, n, budget)
        target = constructions.clip_to_lambda_regressive(f, domain_bound=n * bound + 1)
        return Instance("reght", target, {"mode": target_mode})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        k = inst.param("k")
        bound = _reght_to_ht_bound(inst.payload, n, budget)
        eff = SearchBudget(
            element_bound=bound,
            node_limit=budget.node_limit,
            ground_set=budget.ground_set,
        )
        return SolvePlan(
            solver="lambda_reg_ht",
            budget=eff,
            sizes=(k + 5, k + 4),
            mode=target_mode,
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        g: UnaryColoring = target.payload
        k = source.param("k")
        return Solution("finite_set", ht_from_reght_extract(g, k, n, h, size=2))

    def preconditions(target: Instance, h: FiniteNatSet) -> dict[str, bool]:
        return {"window_fits": len(h) >= n + 1}

    return Reduction(
        name=f"reght_to_ht_{suffix}{n}",
        kind="W",
        source="ht",
        target="reght",
        phi=phi,
        plan=plan,
        psi=psi,
        preconditions=preconditions,
    )


# --- fixed-k rt from regressive tuple colorings -----------------------------


def _make_rtk_to_reg(n: int) -> Reduction:
    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        c: TupleColoring = inst.payload
        k = inst.param("k")
        target = constructions.regressive_guard_fixed(c, k)
        return Instance("reg", target, {"n": n})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        c: TupleColoring = inst.payload
        k = inst.param("k")
        # searching above the guard threshold keeps every window live, so
        # k+1 windows force an agreeing pair and size k+2 always suffices
        domain = FiniteNatSet(tuple(range(k + 1, c.domain_bound)))
        return SolvePlan(
            solver="reg",
            budget=budget,
            sizes=(k + 3, k + 2),
            domain=domain,
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        cplus: TupleColoring = target.payload
        k = _coloring_param(target, "k")
        return Solution("finite_set", rt_from_reg_extract(cplus, k, h, size=2))

    def preconditions(target: Instance, h: FiniteNatSet) -> dict[str, bool]:
        k = _coloring_param(target, "k")
        n_ = target.payload.arity
        return {"enough_above_k": sum(1 for x in h if x > k) >= n_ + 1}

    return Reduction(
        name=f"rtk_to_reg{n}",
        kind="W",
        source="rt",
        target="reg",
        phi=phi,
        plan=plan,
        psi=psi,
        preconditions=preconditions,
    )


def _make_rt_to_reg(n: int) -> Reduction:
    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        c: TupleColoring = inst.payload
        target = constructions.regressive_guard_shift(c)
        return Instance("reg", target, {"n": n})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        c: TupleColoring = inst.payload
        k = inst.param("k")
        # above k+1 the shift guard never fires, so every window is live;
        # with at most k+1 shifted colors a pair of equal windows is forced
        # once k+2 windows exist
        domain = FiniteNatSet(tuple(range(k + 2, c.domain_bound)))
        return SolvePlan(
            solver="reg",
            budget=budget,
            sizes=(k + 3, k + 2),
            domain=domain,
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        cplus: TupleColoring = target.payload
        return Solution("finite_set", rt_forallk_from_reg_extract(cplus, h, size=2))

    def preconditions(target: Instance, h: FiniteNatSet) -> dict[str, bool]:
        return {"window_fits": len(h) >= target.payload.arity + 2}

    return Reduction(
        name=f"rt_to_reg{n}",
        kind="W",
        source="rt",
        target="reg",
        phi=phi,
        plan=plan,
        psi=psi,
        preconditions=preconditions,
    )


# --- bounded regressive ht from regressive tuple colorings (strongly uniform)


def _make_reght_to_reg(n: int) -> Reduction:
    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        c: UnaryColoring = inst.payload
        ground = budget.ground_set or _powers_ground_set(
            min(budget.element_bound, c.domain_bound // n)
        )
        apart, pair = is_apart(ground)
        if not apart:
            raise ValidationError(f"ground set is not apart at {pair}", witness=pair)
        target = constructions.sum_tuple_coloring(c, n, domain_bound=ground.max() + 1)
        return Instance("reg", target, {"n": n, "ground_set": ground})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        return SolvePlan(
            solver="reg",
            budget=budget,
            sizes=(5,),
            domain=target.param("ground_set"),
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        return Solution("finite_set", h)

    return Reduction(
        name=f"reght_to_reg{n}",
        kind="sW",
        source="reght",
        target="reg",
        phi=phi,
        plan=plan,
        psi=psi,
    )


# --- range existence from bounded regressive ht (strongly uniform) ----------


def _make_ran_to_reght(n: int) -> Reduction:
    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        table: InjectiveFunctionTable = inst.payload
        target = constructions.range_coloring(table, domain_bound=n * budget.element_bound + 1)
        return Instance("reght", target, {"mode": SumMode.exactly(n)})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        table: InjectiveFunctionTable = inst.payload
        return SolvePlan(
            solver="lambda_reg_ht",
            budget=budget,
            sizes=(n + 2,),
            mode=SumMode.exactly(n),
            constraints=SearchConstraints(min_lambda_h0=2, last_mu_at_least=len(table)),
            support_shape=True,
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        table = InjectiveFunctionTable(tuple(_coloring_param(target, "values")))
        return decoded_range_solution(table, h, n)

    def preconditions(target: Instance, h: FiniteNatSet) -> dict[str, bool]:
        table_len = len(_coloring_param(target, "values"))
        return {
            "lam_h0_above_1": lam(h.min()) > 1,
            "mu_last_covers_table": mu(h.max()) >= table_len,
            "witness_in_reserve": len(h) >= n + 1,
        }

    return Reduction(
        name=f"ran_to_reght{n}",
        kind="sW",
        source="ran",
        target="reght",
        phi=phi,
        plan=plan,
        psi=psi,
        preconditions=preconditions,
    )


# --- well-ordering preservation from bounded regressive ht ------------------


def _wop_to_reght(n: int) -> Reduction:
    def _stream_length(alpha: DescendingSequence) -> int:
        return sum(len(t) for t in alpha.terms)

    def phi(inst: Instance, budget: SearchBudget) -> Instance:
        alpha: DescendingSequence = inst.payload
        horizon = _stream_length(alpha)
        bound = max(budget.element_bound, 1 << (horizon + 6))
        target = constructions.wop_coloring(alpha, domain_bound=n * bound + 1)
        return Instance("reght", target, {"mode": SumMode.exactly(n)})

    def plan(inst: Instance, target: Instance, budget: SearchBudget) -> SolvePlan:
        alpha: DescendingSequence = inst.payload
        horizon = _stream_length(alpha)
        bound = max(budget.element_bound, 1 << (horizon + 6))
        eff = SearchBudget(element_bound=bound, node_limit=budget.node_limit)
        return SolvePlan(
            solver="lambda_reg_ht",
            budget=eff,
            sizes=(n + 2,),
            mode=SumMode.exactly(n),
            constraints=SearchConstraints(
                min_lambda_h0=horizon + 1, last_mu_at_least=horizon + 1
            ),
            support_shape=True,
        )

    def psi(source: Instance | None, target: Instance, h: FiniteNatSet) -> Solution:
        alpha: DescendingSequence = _coloring_param(target, "alpha")
        extraction = wellorder.extract_descending(alpha, h, n)
        return Solution(
            "x_sequence",
            {"values": extraction.sigma, "stop_reason": extraction.stop_reason},
        )

    def preconditions(target: Instance, h: FiniteNatSet) -> dict[str, bool]:
        alpha: DescendingSequence = _coloring_param(target, "alpha")
        horizon = _stream_length(alpha)
        return {
            "mu_last_beyond_horizon": mu(h.max()) >= horizon + 1,
            "witness_in_reserve": len(h) >= n + 1,
        }

    return Reduction(
        name=f"wop_to_reght{n}",
        kind="W",
        source="wop",
        target="reght",
        phi=phi,
        plan=plan,
        psi=psi,
        preconditions=preconditions,
    )


def _build_registry() -> dict[str, Reduction]:
    reds = [
        _make_rt1k_to_reght(2),
        _make_rt1k_to_reght(3),
        _reght_to_rt1(),
        _make_reght_to_ht(2, "at_most"),
        _make_reght_to_ht(2, "exactly"),
        _make_rtk_to_reg(2),
        _make_rt_to_reg(2),
        _make_reght_to_reg(2),
        _make_reght_to_reg(3),
        _make_ran_to_reght(2),
        _make_ran_to_reght(3),
        _wop_to_reght(2),
    ]
    return {r.name: r for r in reds}


REGISTRY: dict[str, Reduction] = _build_registry()


# ---------------------------------------------------------------------------
# harness


@dataclass
class VerificationReport:
    reduction: str
    kind: str
    verdicts: dict[str, bool | None]
    solver_outcome: SolverOutcome | None
    solve_attempts: tuple[tuple[int, str], ...]
    psi_output: Solution | None
    phi_summary: dict
    failure: str | None
    elapsed_s: float

    @property
    def all_verdicts_true(self) -> bool:
        return all(v is True for v in self.verdicts.values()) and self.failure is None

    @property
    def status(self) -> str:
        if self.failure is not None:
            return "invalid"
        if self.solver_outcome is None or self.solver_outcome.status != solvers.FOUND:
            return "unsolved"
        if self.all_verdicts_true:
            return "ok"
        # a failed window certification is a finite-truncation artifact,
        # not a counterexample; only a non-precondition verdict refutes
        bad = [k for k, v in self.verdicts.items() if v is False]
        if bad and all(k.startswith("pre_") for k in bad):
            return "uncertified"
        return "refuted"


def verify_reduction(
    name: str,
    instance: Instance,
    budget: SearchBudget,
    sizes: tuple[int, ...] | None = None,
) -> VerificationReport:
    """Run phi, solve the target, run psi, validate everything.

    Verdicts come from the principle validators only. A missing solver
    solution leaves the psi verdicts unset rather than failing, since an
    exhausted finite search refutes nothing.
    """
    if name not in REGISTRY:
        raise ValidationError(f"unknown reduction {name!r}")
    red = REGISTRY[name]
    verdicts: dict[str, bool | None] = {}
    start = time.perf_counter()

    def report(**kw) -> VerificationReport:
        return VerificationReport(
            reduction=name,
            kind=red.kind,
            verdicts=verdicts,
            elapsed_s=time.perf_counter() - start,
            **kw,
        )

    try:
        PRINCIPLES[red.source].validate_instance(instance)
        verdicts["instance_valid"] = True
    except ValidationError as e:
        verdicts["instance_valid"] = False
        return report(
            solver_outcome=None,
            solve_attempts=(),
            psi_output=None,
            phi_summary={},
            failure=f"source instance invalid: {e}",
        )

    target = red.phi(instance, budget)
    phi_summary = {
        "principle": target.principle,
        "builtin": (target.payload.provenance or {}).get("name"),
        "domain_bound": getattr(target.payload, "domain_bound", None),
    }
    try:
        PRINCIPLES[red.target].validate_instance(target)
        verdicts["phi_output_valid"] = True
    except ValidationError as e:
        verdicts["phi_output_valid"] = False
        return report(
            solver_outcome=None,
            solve_attempts=(),
            psi_output=None,
            phi_summary=phi_summary,
            failure=f"phi output invalid: {e}",
        )

    plan = red.plan(instance, target, budget)
    if sizes is not None:
        plan = SolvePlan(
            solver=plan.solver,
            budget=plan.budget,
            sizes=sizes,
            mode=plan.mode,
            constraints=plan.constraints,
            support_shape=plan.support_shape,
            domain=plan.domain,
        )
    outcome, attempts = _run_plan(plan, target)
    if outcome.status != solvers.FOUND:
        return report(
            solver_outcome=outcome,
            solve_attempts=attempts,
            psi_output=None,
            phi_summary=phi_summary,
            failure=None,
        )
    h = outcome.solution

    try:
        PRINCIPLES[red.target].validate_solution(target, Solution("finite_set", h))
        verdicts["target_solution_valid"] = True
    except ValidationError as e:
        verdicts["target_solution_valid"] = False
        return report(
            solver_outcome=outcome,
            solve_attempts=attempts,
            psi_output=None,
            phi_summary=phi_summary,
            failure=f"solver output failed revalidation: {e}",
        )

    pre = red.preconditions(target, h)
    for key, value in pre.items():
        verdicts[f"pre_{key}"] = value
    if not all(pre.values()):
        return report(
            solver_outcome=outcome,
            solve_attempts=attempts,
            psi_output=None,
            phi_summary=phi_summary,
            failure=None,
        )

    source_arg = None if red.kind == "sW" else instance
    try:
        solution = red.psi(source_arg, target, h)
        if red.kind == "sW":
            verdicts["sw_consistent"] = red.psi(instance, target, h) == solution
    except ValidationError as e:
        verdicts["solution_valid"] = False
        return report(
            solver_outcome=outcome,
            solve_attempts=attempts,
            psi_output=None,
            phi_summary=phi_summary,
            failure=f"psi failed: {e}",
        )

    try:
        PRINCIPLES[red.source].validate_solution(instance, solution)
        verdicts["solution_valid"] = True
    except ValidationError as e:
        verdicts["solution_valid"] = False
        return report(
            solver_outcome=outcome,
            solve_attempts=attempts,
            psi_output=solution,
            phi_summary=phi_summary,
            failure=f"psi output invalid: {e}",
        )

    return report(
        solver_outcome=outcome,
        solve_attempts=attempts,
        psi_output=solution,
        phi_summary=phi_summary,
        failure=None,
    )
