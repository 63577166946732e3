"""Finite linear orders, base-omega exponent towers, and descent extraction.

An element of the tower over a linear order X is a nonempty weakly
decreasing sequence of X-elements (its exponents), compared
lexicographically with proper extensions ranking higher. A strictly
decreasing sequence of towers flattens into a single exponent stream,
and the "decreaser" relation on stream indices drives both the coloring
built in :mod:`redbench.constructions` and the descent extractor here.

Stream indices and term positions are 1-based throughout this module;
serialized files use plain 0-based lists and convert at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from .bitsupport import FiniteNatSet, is_apart, lam, mu
from .errors import InternalContradictionError, PreconditionError, ValidationError


@dataclass(frozen=True)
class LinearOrder:
    """Elements 0 .. size-1 under the natural order; size None means unbounded."""

    size: int | None

    @classmethod
    def finite(cls, size: int) -> "LinearOrder":
        if size < 1:
            raise ValueError("finite orders need size >= 1")
        return cls(size)

    @classmethod
    def omega(cls) -> "LinearOrder":
        return cls(None)

    def contains(self, x: int) -> bool:
        return isinstance(x, int) and x >= 0 and (self.size is None or x < self.size)

    def validate(self, x: int) -> None:
        if not self.contains(x):
            raise ValidationError(f"{x} is not an element of {self}", witness=x)

    def __str__(self) -> str:
        return "omega" if self.size is None else f"finite({self.size})"


@dataclass(frozen=True)
class OmegaTerm:
    """A nonempty weakly decreasing exponent sequence."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not exps:
            raise ValueError("a term needs at least one exponent")
        for a, b in zip(exps, exps[1:]):
            if a < b:
                raise ValueError(f"exponents must be weakly decreasing, got {exps}")

    def __len__(self) -> int:
        return len(self.exponents)


def compare_omega_terms(s: OmegaTerm, t: OmegaTerm, order: LinearOrder | None = None) -> int:
    """-1, 0, or 1 as s is below, equal to, or above t.

    Lexicographic on exponents; a proper extension ranks above its prefix,
    so this is exactly tuple comparison. With ``order`` given, both terms
    are checked to live in it first.
    """
    if order is not None:
        for x in s.exponents + t.exponents:
            order.validate(x)
    if s.exponents < t.exponents:
        return -1
    if s.exponents > t.exponents:
        return 1
    return 0


@dataclass(frozen=True)
class DescendingSequence:
    """A sequence of terms over one order, intended to be strictly decreasing.

    Construction validates structure only; use :func:`validate_descending`
    for the strict-descent check so that defective sequences can be built
    and reported on.
    """

    order: LinearOrder
    terms: tuple[OmegaTerm, ...]

    def __post_init__(self):
        terms = tuple(
            t if isinstance(t, OmegaTerm) else OmegaTerm(tuple(t)) for t in self.terms
        )
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("a descending sequence needs at least one term")
        for t in terms:
            for x in t.exponents:
                self.order.validate(x)

    def __len__(self) -> int:
        return len(self.terms)

    def exponent_values(self) -> frozenset[int]:
        return frozenset(x for t in self.terms for x in t.exponents)


def validate_descending(alpha: DescendingSequence) -> tuple[bool, int | None]:
    """True iff strictly decreasing; otherwise the first non-decrease index (1-based)."""
    for i, (a, b) in enumerate(zip(alpha.terms, alpha.terms[1:]), start=1):
        if compare_omega_terms(a, b) <= 0:
            return False, i
    return True, None


@dataclass(frozen=True)
class ExponentStream:
    """The flattening of a descending sequence: every exponent in order.

    ``beta`` lists the exponents, ``m`` the 1-based term each came from,
    ``pos`` the 1-based position inside that term. Accessors take 1-based
    stream indices.
    """

    beta: tuple[int, ...]
    m: tuple[int, ...]
    pos: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.beta)

    def beta_at(self, i: int) -> int:
        return self.beta[i - 1]

    def m_at(self, i: int) -> int:
        return self.m[i - 1]

    def pos_at(self, i: int) -> int:
        return self.pos[i - 1]


def exponent_stream(alpha: DescendingSequence) -> ExponentStream:
    beta: list[int] = []
    term_of: list[int] = []
    position: list[int] = []
    for ti, term in enumerate(alpha.terms, start=1):
        for p, x in enumerate(term.exponents, start=1):
            beta.append(x)
            term_of.append(ti)
            position.append(p)
    return ExponentStream(tuple(beta), tuple(term_of), tuple(position))


def find_decreaser(stream: ExponentStream, i: int, bound: int) -> int | None:
    """Least j with i < j <= bound, pos(i) = pos(j) and beta(i) > beta(j)."""
    if not 1 <= i <= stream.length:
        raise ValueError(f"stream index {i} out of range [1, {stream.length}]")
    p = stream.pos_at(i)
    b = stream.beta_at(i)
    for j in range(i + 1, min(bound, stream.length) + 1):
        if stream.pos_at(j) == p and stream.beta_at(j) < b:
            return j
    return None


def minimal_decreasers(stream: ExponentStream) -> dict[int, int]:
    """For each stream index, its minimal decreaser within the stream, if any."""
    out: dict[int, int] = {}
    last_by_pos: dict[int, list[int]] = {}
    for i in range(1, stream.length + 1):
        last_by_pos.setdefault(stream.pos_at(i), []).append(i)
    for indices in last_by_pos.values():
        for a, i in enumerate(indices):
            for j in indices[a + 1 :]:
                if stream.beta_at(j) < stream.beta_at(i):
                    out[i] = j
                    break
    return out


def initial_term_decrease_witness(alpha: DescendingSequence) -> tuple[int, int] | None:
    """A term index i' > 1 and 1-based position p with alpha_1[p] > alpha_i'[p].

    For strictly descending alpha with more terms than lh(alpha_1) such a
    witness always exists: otherwise every term would be a proper initial
    segment of its predecessor and lengths would hit zero too soon.
    """
    first = alpha.terms[0].exponents
    for i, term in enumerate(alpha.terms[1:], start=2):
        for p in range(1, min(len(first), len(term.exponents)) + 1):
            if first[p - 1] > term.exponents[p - 1]:
                return i, p
    return None


@dataclass(frozen=True)
class DescentExtraction:
    """Result of running the descent extractor against a finite horizon."""

    sigma: tuple[int, ...]
    stop_reason: str  # "descent_exhausted" | "window_exhausted"

    @property
    def fully_certified(self) -> bool:
        return self.stop_reason == "descent_exhausted"


def extract_descending(
    alpha: DescendingSequence, h: FiniteNatSet, n: int
) -> DescentExtraction:
    """Pull a strictly descending X-sequence out of alpha, certified by h.

    h must be an apart min-term-homogeneous solution for the descent
    coloring of alpha with sums of exactly n terms. The extractor walks the
    exponent stream looking for the leftmost decreasible position of the
    current term; each candidate index i is certified through the least
    h_k with i < lam(h_k): homogeneity of h guarantees that if i decreases
    at all, it decreases below mu(h_{k+n-1}). Certification additionally
    needs mu(max h) to exceed the stream length and a spare element after
    the window; once either fails the extraction stops early with reason
    ``window_exhausted`` rather than emit an unjustified value.
    """
    ok, bad = validate_descending(alpha)
    if not ok:
        raise ValidationError(f"alpha is not strictly descending at term {bad}", witness=bad)
    if n < 2:
        raise ValidationError("need n >= 2")
    apart, pair = is_apart(h)
    if not apart:
        raise PreconditionError(f"h is not apart at {pair}", witness=pair)
    if len(h) < n + 1:
        raise PreconditionError(f"need at least {n + 1} elements in h, got {len(h)}")
    if h.min() < 1:
        raise PreconditionError("h must contain positive naturals only")

    stream = exponent_stream(alpha)
    dec = minimal_decreasers(stream)
    lam_h = [lam(x) for x in h]
    mu_h = [mu(x) for x in h]
    usable_max = len(h) - n - 1
    horizon_ok = mu_h[-1] >= stream.length + 1

    sigma: list[int] = []
    current_term = 1
    min_pos = 1
    stop_reason = "descent_exhausted"
    searching = True
    while searching:
        selected = None
        for i in range(1, stream.length + 1):
            if stream.m_at(i) != current_term or stream.pos_at(i) < min_pos:
                continue
            k = next((idx for idx, lv in enumerate(lam_h) if i < lv), None)
            if k is None or k > usable_max or not horizon_ok:
                stop_reason = "window_exhausted"
                searching = False
                break
            j = dec.get(i)
            if j is None:
                continue  # certified: i never decreases
            if j >= mu_h[k + n - 1]:
                # Cannot happen when h is genuinely min-term-homogeneous for
                # the descent coloring; reaching it means h was not.
                raise PreconditionError(
                    f"index {i} decreases at {j}, at or beyond the certified "
                    f"window bound mu(h_{k + n - 1}) = {mu_h[k + n - 1]}; "
                    "h does not certify the decrease window",
                    witness=(i, j),
                )
            selected = (i, j)
            break
        else:
            searching = False
        if selected is None:
            continue
        i, j = selected
        sigma.append(stream.beta_at(i))
        min_pos = stream.pos_at(i)
        current_term = stream.m_at(j)
    for a, b in zip(sigma, sigma[1:]):
        if a <= b:
            raise InternalContradictionError(f"extracted sequence not descending: {a} then {b}")
    return DescentExtraction(tuple(sigma), stop_reason)
