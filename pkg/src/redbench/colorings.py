"""Coloring values, regressivity predicates, and homogeneity checks.

Colorings are immutable closed values: a total evaluator over a declared
finite domain plus provenance (a named builder with its parameters, or an
explicit table) so any coloring used as a transformer output can also be
shipped as a file. All predicates here enumerate their families
exhaustively and report a concrete witness on failure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .bitsupport import FiniteNatSet, SumMode, iter_index_sets, lam
from .errors import DomainError, ValidationError


@dataclass(frozen=True, eq=False)
class UnaryColoring:
    """A total color function on [0, domain_bound)."""

    domain_bound: int
    fn: Callable[[int], int]
    provenance: dict | None = None  # {"name": ..., "params": {...}} when serializable
    range_bound: int | None = None  # colors lie in [0, range_bound) when set
    lambda_mu_determined: bool = False  # value depends on n only through (lam(n), mu(n))

    def __call__(self, n: int) -> int:
        if not 0 <= n < self.domain_bound:
            raise DomainError(
                f"point {n} outside coloring domain [0, {self.domain_bound})", point=n
            )
        return self.fn(n)

    @classmethod
    def from_table(cls, values: Sequence[int], range_bound: int | None = None) -> "UnaryColoring":
        table = tuple(values)
        params: dict = {"values": list(table)}
        if range_bound is not None:
            params["range_bound"] = range_bound
        return cls(
            domain_bound=len(table),
            fn=table.__getitem__,
            provenance={"name": "table", "params": params},
            range_bound=range_bound,
        )


@dataclass(frozen=True, eq=False)
class TupleColoring:
    """A total color function on strictly increasing arity-tuples from [0, domain_bound)."""

    arity: int
    domain_bound: int
    fn: Callable[[tuple[int, ...]], int]
    provenance: dict | None = None
    range_bound: int | None = None

    def __call__(self, xs: Iterable[int]) -> int:
        t = tuple(sorted(xs))
        if len(t) != self.arity:
            raise DomainError(f"expected {self.arity} distinct points, got {t}", point=t)
        if len(set(t)) != self.arity:
            raise DomainError(f"tuple entries must be distinct, got {t}", point=t)
        if t[0] < 0 or t[-1] >= self.domain_bound:
            raise DomainError(
                f"tuple {t} outside coloring domain [0, {self.domain_bound})", point=t
            )
        return self.fn(t)

    @classmethod
    def from_table(
        cls,
        arity: int,
        domain_bound: int,
        entries: dict[tuple[int, ...], int],
        range_bound: int | None = None,
    ) -> "TupleColoring":
        table = {tuple(k): v for k, v in entries.items()}

        def fn(t: tuple[int, ...]) -> int:
            try:
                return table[t]
            except KeyError:
                raise DomainError(f"tuple {t} missing from table", point=t) from None

        params: dict = {
            "arity": arity,
            "domain_bound": domain_bound,
            "entries": [[list(k), v] for k, v in sorted(table.items())],
        }
        if range_bound is not None:
            params["range_bound"] = range_bound
        return cls(
            arity=arity,
            domain_bound=domain_bound,
            fn=fn,
            provenance={"name": "tuple_table", "params": params},
            range_bound=range_bound,
        )


@dataclass(frozen=True)
class HomogeneityResult:
    holds: bool
    color: int | None = None  # the single color, on success
    witness: tuple | None = None  # a differing pair of colored objects, on failure


def is_lambda_regressive(
    c: UnaryColoring, points: Iterable[int] | None = None
) -> tuple[bool, int | None]:
    """c(n) < lam(n) wherever lam(n) > 0, and c(n) = 0 wherever lam(n) = 0.

    Scans the full declared domain unless ``points`` restricts it. Returns
    the least violating point on failure.
    """
    domain = points if points is not None else range(c.domain_bound)
    for n in domain:
        low = lam(n)
        value = c(n)
        if (low > 0 and value >= low) or (low == 0 and value != 0):
            return False, n
    return True, None


def is_regressive(
    f: TupleColoring, domain: FiniteNatSet | Sequence[int] | None = None
) -> tuple[bool, tuple[int, ...] | None]:
    """f(t) < min(t) wherever min(t) > 0, and f(t) = 0 wherever min(t) = 0."""
    ground = list(domain) if domain is not None else range(f.domain_bound)
    for t in itertools.combinations(ground, f.arity):
        value = f(t)
        if (t[0] > 0 and value >= t[0]) or (t[0] == 0 and value != 0):
            return False, t
    return True, None


def _sum_colors_by_index_set(
    c: UnaryColoring, h: FiniteNatSet, mode: SumMode
) -> dict[tuple[int, ...], int]:
    colors = {}
    for idx in iter_index_sets(len(h), mode):
        total = sum(h[i] for i in idx)
        if total >= c.domain_bound:
            raise DomainError(
                f"sum {total} of indices {idx} exceeds coloring domain "
                f"[0, {c.domain_bound})",
                point=total,
            )
        colors[idx] = c(total)
    return colors


def is_min_term_homogeneous(
    c: UnaryColoring, h: FiniteNatSet, mode: SumMode
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Sums over h whose index sets share a minimum must share a color.

    The witness is a pair of index sets (not sums) for diagnosability.
    """
    colors = _sum_colors_by_index_set(c, h, mode)
    reference: dict[int, tuple[tuple[int, ...], int]] = {}
    for idx, color in colors.items():
        key = idx[0]
        if key not in reference:
            reference[key] = (idx, color)
        elif reference[key][1] != color:
            return False, (reference[key][0], idx)
    return True, None


def is_min_homogeneous(
    f: TupleColoring, h: FiniteNatSet
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Arity-subsets of h with equal minimum must get equal f-colors."""
    reference: dict[int, tuple[tuple[int, ...], int]] = {}
    for t in itertools.combinations(h.elements, f.arity):
        color = f(t)
        key = t[0]
        if key not in reference:
            reference[key] = (t, color)
        elif reference[key][1] != color:
            return False, (reference[key][0], t)
    return True, None


def is_homogeneous(
    coloring: UnaryColoring | TupleColoring,
    target: FiniteNatSet,
    mode: str | SumMode = "elements",
) -> HomogeneityResult:
    """Whether one color covers the whole family over ``target``.

    Modes: ``"elements"`` colors target's elements (unary); a SumMode
    colors target's distinct sums (unary); ``"tuples"`` colors target's
    arity-subsets (tuple coloring).
    """
    if mode == "elements":
        objects = list(target.elements)
        colored = [(x, coloring(x)) for x in objects]
    elif mode == "tuples":
        colored = [(t, coloring(t)) for t in itertools.combinations(target.elements, coloring.arity)]
    elif isinstance(mode, SumMode):
        colors = _sum_colors_by_index_set(coloring, target, mode)
        colored = [(sum(target[i] for i in idx), color) for idx, color in colors.items()]
    else:
        raise ValueError(f"unknown homogeneity mode {mode!r}")
    if not colored:
        return HomogeneityResult(True, None, None)
    first_obj, first_color = colored[0]
    for obj, color in colored[1:]:
        if color != first_color:
            return HomogeneityResult(False, None, (first_obj, obj))
    return HomogeneityResult(True, first_color, None)


# Canonical color-equality patterns. For sums over h the five cases are:
# (1) all colors equal; (2) equal iff the index sets are equal; (3) equal
# iff the minima agree; (4) equal iff the maxima agree; (5) equal iff both
# minima and maxima agree. For tuples only cases 1-4 apply.


def classify_canonical_fs(c: UnaryColoring, h: FiniteNatSet, cap: int = 3) -> frozenset[int]:
    """The set of canonical cases holding for all index-set pairs of size <= cap.

    Note that with cap 2 an index set is determined by its (min, max)
    pair, so cases 2 and 5 cannot be told apart; cap 3 separates all five.
    """
    if len(h) < 2 or cap < 2:
        raise ValidationError("need |h| >= 2 and cap >= 2")
    colors = _sum_colors_by_index_set(c, h, SumMode.all_capped(cap))
    return _classify(colors)


def classify_canonical_tuples(f: TupleColoring, h: FiniteNatSet) -> frozenset[int]:
    """The set of canonical cases (1-4) holding over all arity-subsets of h."""
    if len(h) < f.arity + 1:
        raise ValidationError(f"need |h| >= arity + 1 = {f.arity + 1}")
    colors = {t: f(t) for t in itertools.combinations(h.elements, f.arity)}
    return _classify(colors) - {5}


def _classify(colors: dict[tuple, int]) -> frozenset[int]:
    cases = {1, 2, 3, 4, 5}
    items = list(colors.items())
    for i, (idx_a, col_a) in enumerate(items):
        for idx_b, col_b in items[i + 1 :]:
            eq = col_a == col_b
            if eq:
                cases.discard(2)  # distinct sets share a color
            if eq != (idx_a[0] == idx_b[0]):
                cases.discard(3)
            if eq != (idx_a[-1] == idx_b[-1]):
                cases.discard(4)
            if eq != (idx_a[0] == idx_b[0] and idx_a[-1] == idx_b[-1]):
                cases.discard(5)
            if not eq:
                cases.discard(1)
            if not cases:
                return frozenset()
    return frozenset(cases)
