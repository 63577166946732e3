"""Named coloring builders.

Each builder turns instance data into a coloring whose provenance records
the builder name and parameters, so outputs are both executable and
shippable as files. The stable builder names (clip, guard_rt1,
mu_recolor, cplus_fixed, cplus_shift, sum_tuple, range, wop) double as
identifiers in serialized coloring files and CLI flags; a handful of
primitive colorings (constant, mod, identity, lam, mu, lam_minus,
pair_lam_mu) round out the fixture vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitsupport import lam, lam_minus, mu
from .colorings import TupleColoring, UnaryColoring
from .errors import DomainError, ValidationError
from .wellorder import DescendingSequence, exponent_stream, minimal_decreasers


@dataclass(frozen=True)
class InjectiveFunctionTable:
    """A finite injective f given by its values f(0), ..., f(M-1).

    Values are pairwise distinct and never 0; 0 is reserved so that range
    colorings can use it as their "no hit" color.
    """

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValidationError("table must be nonempty")
        for v in vals:
            if not isinstance(v, int) or v < 1:
                raise ValidationError(f"table values must be positive naturals, got {v!r}", witness=v)
        if len(set(vals)) != len(vals):
            dup = next(v for i, v in enumerate(vals) if v in vals[:i])
            raise ValidationError(f"table values must be distinct, {dup} repeats", witness=dup)

    def __len__(self) -> int:
        return len(self.values)

    def range_set(self) -> frozenset[int]:
        """The table-scan oracle for range membership."""
        return frozenset(self.values)


# ---------------------------------------------------------------------------
# primitive unary colorings


def constant_coloring(value: int, domain_bound: int) -> UnaryColoring:
    return UnaryColoring(
        domain_bound=domain_bound,
        fn=lambda n: value,
        provenance={"name": "constant", "params": {"value": value}},
        range_bound=value + 1,
        lambda_mu_determined=True,
    )


def mod_coloring(modulus: int, domain_bound: int) -> UnaryColoring:
    if modulus < 1:
        raise ValidationError("modulus must be >= 1")
    return UnaryColoring(
        domain_bound=domain_bound,
        fn=lambda n: n % modulus,
        provenance={"name": "mod", "params": {"modulus": modulus}},
        range_bound=modulus,
    )


def identity_coloring(domain_bound: int) -> UnaryColoring:
    return UnaryColoring(
        domain_bound=domain_bound,
        fn=lambda n: n,
        provenance={"name": "identity", "params": {}},
        range_bound=domain_bound,
    )


def lam_coloring(domain_bound: int) -> UnaryColoring:
    return UnaryColoring(
        domain_bound=domain_bound,
        fn=lam,
        provenance={"name": "lam", "params": {}},
        lambda_mu_determined=True,
    )


def mu_coloring(domain_bound: int) -> UnaryColoring:
    return UnaryColoring(
        domain_bound=domain_bound,
        fn=mu,
        provenance={"name": "mu", "params": {}},
        lambda_mu_determined=True,
    )


def lam_minus_coloring(domain_bound: int) -> UnaryColoring:
    return UnaryColoring(
        domain_bound=domain_bound,
        fn=lam_minus,
        provenance={"name": "lam_minus", "params": {}},
        lambda_mu_determined=True,
    )


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def pair_lam_mu_coloring(domain_bound: int) -> UnaryColoring:
    return UnaryColoring(
        domain_bound=domain_bound,
        fn=lambda n: cantor_pair(lam(n), mu(n)),
        provenance={"name": "pair_lam_mu", "params": {}},
        lambda_mu_determined=True,
    )


# primitive tuple colorings


def tuple_constant_coloring(value: int, arity: int, domain_bound: int) -> TupleColoring:
    return TupleColoring(
        arity=arity,
        domain_bound=domain_bound,
        fn=lambda t: value,
        provenance={"name": "tuple_constant", "params": {"value": value, "arity": arity}},
        range_bound=value + 1,
    )


def sum_mod_coloring(modulus: int, arity: int, domain_bound: int) -> TupleColoring:
    if modulus < 1:
        raise ValidationError("modulus must be >= 1")
    return TupleColoring(
        arity=arity,
        domain_bound=domain_bound,
        fn=lambda t: sum(t) % modulus,
        provenance={"name": "sum_mod", "params": {"modulus": modulus, "arity": arity}},
        range_bound=modulus,
    )


# ---------------------------------------------------------------------------
# instance-transformer builders


def clip_to_lambda_regressive(f: UnaryColoring, domain_bound: int | None = None) -> UnaryColoring:
    """g(n) = f(n) when f(n) < lam(n), else 0. Always lambda-regressive."""
    bound = domain_bound if domain_bound is not None else f.domain_bound

    def g(n: int) -> int:
        value = f(n)
        return value if value < lam(n) else 0

    return UnaryColoring(
        domain_bound=bound,
        fn=g,
        provenance={"name": "clip", "params": {"base": f}},
        range_bound=f.range_bound,
    )


def guard_rt1(f: UnaryColoring, k: int, domain_bound: int | None = None) -> UnaryColoring:
    """g(n) = lam_minus(n) when lam_minus(n) < k, else f(n).

    Needs f's colors at most k so the else-branch stays below lam(n).
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if f.range_bound is None or f.range_bound > k + 1:
        raise ValidationError(f"guard_rt1 needs a coloring with range_bound <= {k + 1}")
    bound = domain_bound if domain_bound is not None else f.domain_bound

    def g(n: int) -> int:
        lm = lam_minus(n)
        return lm if lm < k else f(n)

    return UnaryColoring(
        domain_bound=bound,
        fn=g,
        provenance={"name": "guard_rt1", "params": {"base": f, "k": k}},
    )


def mu_recoloring(c: UnaryColoring, k: int, domain_bound: int) -> UnaryColoring:
    """f(m) = 0 when lam(m) <= k, else c(mu(m)).

    Lambda-regressive because c's colors stay at most k, below lam(m) on
    the live branch; the output only ever samples c at bit positions, so
    it is determined by (lam, mu).
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if c.range_bound is None or c.range_bound > k + 1:
        raise ValidationError(f"mu_recolor needs a coloring with range_bound <= {k + 1}")

    def f(m: int) -> int:
        if lam(m) <= k:
            return 0
        top = mu(m)
        if top >= c.domain_bound:
            raise DomainError(
                f"mu({m}) = {top} is outside the base coloring domain "
                f"[0, {c.domain_bound})",
                point=top,
            )
        return c(top)

    return UnaryColoring(
        domain_bound=domain_bound,
        fn=f,
        provenance={"name": "mu_recolor", "params": {"base": c, "k": k}},
        lambda_mu_determined=True,
    )


def regressive_guard_fixed(c: TupleColoring, k: int) -> TupleColoring:
    """c+(x1..xn) = 0 when x1 <= k, else c(x1..xn). Regressive for k-colorings."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    if c.range_bound is None or c.range_bound > k + 1:
        raise ValidationError(f"cplus_fixed needs a coloring with range_bound <= {k + 1}")

    def cplus(t: tuple[int, ...]) -> int:
        return 0 if t[0] <= k else c(t)

    return TupleColoring(
        arity=c.arity,
        domain_bound=c.domain_bound,
        fn=cplus,
        provenance={"name": "cplus_fixed", "params": {"base": c, "k": k}},
        range_bound=c.range_bound,
    )


def regressive_guard_shift(c: TupleColoring) -> TupleColoring:
    """c+(x1..xn) = 0 when x1 <= c(x1..xn) + 1, else c(x1..xn) + 1.

    Shifting colors up by one reserves 0 for the guard, and keeps the
    output regressive whatever c's range is.
    """

    def cplus(t: tuple[int, ...]) -> int:
        value = c(t)
        return 0 if t[0] <= value + 1 else value + 1

    return TupleColoring(
        arity=c.arity,
        domain_bound=c.domain_bound,
        fn=cplus,
        provenance={"name": "cplus_shift", "params": {"base": c}},
        range_bound=None if c.range_bound is None else c.range_bound + 1,
    )


def sum_tuple_coloring(c: UnaryColoring, n: int, domain_bound: int | None = None) -> TupleColoring:
    """f(a1..an) = c(a1 + ... + an).

    For a lambda-regressive c this is regressive on tuples drawn from any
    apart ground set, where the sum's low bit comes from the least term.
    """
    if n < 2:
        raise ValidationError("need n >= 2")
    bound = domain_bound if domain_bound is not None else c.domain_bound // n

    def f(t: tuple[int, ...]) -> int:
        total = sum(t)
        if total >= c.domain_bound:
            raise DomainError(
                f"sum {total} of {t} outside base coloring domain [0, {c.domain_bound})",
                point=total,
            )
        return c(total)

    return TupleColoring(
        arity=n,
        domain_bound=bound,
        fn=f,
        provenance={"name": "sum_tuple", "params": {"base": c, "n": n}},
        range_bound=c.range_bound,
    )


def range_coloring(table: InjectiveFunctionTable, domain_bound: int) -> UnaryColoring:
    """Color m by the last small value the table hits inside m's bit window.

    c(m) = 0 for powers of two. Otherwise c(m) is the unique x < lam(m)
    such that f(j) = x for some j in [lam(m), mu(m)) while every later j'
    below mu(m) has f(j') >= lam(m); 0 when no window index hits below
    lam(m). Indices at or beyond the table length count as no hit, so the
    value is determined by (lam(m), mu(m)) alone.
    """
    values = table.values

    def c(m: int) -> int:
        low = lam(m)
        if low == 0:
            return 0
        for j in range(min(mu(m), len(values)) - 1, low - 1, -1):
            if values[j] < low:
                return values[j]
        return 0

    return UnaryColoring(
        domain_bound=domain_bound,
        fn=c,
        provenance={"name": "range", "params": {"values": list(values)}},
        lambda_mu_determined=True,
    )


def wop_coloring(alpha: DescendingSequence, domain_bound: int) -> UnaryColoring:
    """Color m by the last stream index below lam(m) decreased inside m's bit window.

    With the exponent stream of alpha fixed, c(m) is the unique i < lam(m)
    whose minimal decreaser j lies in [lam(m), mu(m)) while every later
    window index decreases only indices >= lam(m); 0 when nothing below
    lam(m) decreases there. Stream indices beyond the horizon never
    decrease, so the value is determined by (lam(m), mu(m)) alone.
    """
    stream = exponent_stream(alpha)
    dec = minimal_decreasers(stream)
    decreased_by: dict[int, list[int]] = {}
    for i, j in dec.items():
        decreased_by.setdefault(j, []).append(i)
    for js in decreased_by.values():
        js.sort()

    def c(m: int) -> int:
        low = lam(m)
        if low == 0:
            return 0
        top = min(mu(m) - 1, stream.length)
        for j in range(top, low - 1, -1):
            hits = [i for i in decreased_by.get(j, ()) if i < low]
            if hits:
                return hits[-1]
        return 0

    return UnaryColoring(
        domain_bound=domain_bound,
        fn=c,
        provenance={"name": "wop", "params": {"alpha": alpha}},
        lambda_mu_determined=True,
    )
