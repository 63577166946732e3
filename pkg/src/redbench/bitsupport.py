"""Binary-support arithmetic and finite-sum enumeration.

Every positive integer decomposes uniquely as a sum of distinct powers of
two; ``support(n)`` lists the exponents, ``lam(n)`` and ``mu(n)`` give the
least and greatest of them. A set of naturals is *apart* when, read in
increasing order, each element's top bit sits strictly below the next
element's bottom bit. Sums over an apart set never carry, so the low end
of a sum's support comes from its least summand and the high end from its
greatest. That single fact powers most of the checks in this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import ApartExtractionError


def support(n: int) -> list[int]:
    """Exponents of the binary expansion of n, ascending. Empty for n = 0."""
    if n < 0:
        raise ValueError(f"support() needs a natural number, got {n}")
    out = []
    bit = 0
    while n:
        if n & 1:
            out.append(bit)
        n >>= 1
        bit += 1
    return out


def lam(n: int) -> int:
    """Least exponent in the binary expansion of n; 0 for n = 0."""
    if n < 0:
        raise ValueError(f"lam() needs a natural number, got {n}")
    if n == 0:
        return 0
    return (n & -n).bit_length() - 1


def mu(n: int) -> int:
    """Greatest exponent in the binary expansion of n; 0 for n = 0."""
    if n < 0:
        raise ValueError(f"mu() needs a natural number, got {n}")
    if n == 0:
        return 0
    return n.bit_length() - 1


def lam_minus(n: int) -> int:
    """lam(n) - 1 when lam(n) > 0, else 0."""
    low = lam(n)
    return low - 1 if low > 0 else 0


@dataclass(frozen=True)
class FiniteNatSet:
    """A strictly increasing tuple of naturals; the universal solution currency."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        for x in elems:
            if not isinstance(x, int) or x < 0:
                raise ValueError(f"elements must be naturals, got {x!r}")
        for a, b in zip(elems, elems[1:]):
            if a >= b:
                raise ValueError(f"elements must be strictly increasing, got {a} then {b}")

    @classmethod
    def of(cls, *values: int) -> "FiniteNatSet":
        return cls(tuple(sorted(values)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, x) -> bool:
        return x in self.elements

    def min(self) -> int:
        return self.elements[0]

    def max(self) -> int:
        return self.elements[-1]


def is_apart(s: FiniteNatSet | Sequence[int]) -> tuple[bool, tuple[int, int] | None]:
    """Whether mu(x) < lam(x') for every consecutive pair x < x'.

    On failure returns the least violating pair.
    """
    elems = list(s)
    for a, b in zip(elems, elems[1:]):
        if mu(a) >= lam(b):
            return False, (a, b)
    return True, None


@dataclass(frozen=True)
class SumMode:
    """Which family of index sets a sum-based check ranges over.

    ``at_most`` and ``all_capped`` enumerate the same sets; the two names
    are kept because they label different principles downstream.
    """

    kind: str  # "all" | "at_most" | "exactly" | "all_capped"
    n: int | None = None

    _KINDS = ("all", "at_most", "exactly", "all_capped")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown sum mode kind {self.kind!r}")
        if self.kind == "all":
            if self.n is not None:
                raise ValueError("mode 'all' takes no size parameter")
        else:
            if self.n is None or self.n < 1:
                raise ValueError(f"mode {self.kind!r} needs a size parameter >= 1")

    @classmethod
    def all(cls) -> "SumMode":
        return cls("all")

    @classmethod
    def at_most(cls, n: int) -> "SumMode":
        return cls("at_most", n)

    @classmethod
    def exactly(cls, n: int) -> "SumMode":
        return cls("exactly", n)

    @classmethod
    def all_capped(cls, s: int) -> "SumMode":
        return cls("all_capped", s)

    @classmethod
    def parse(cls, text: str) -> "SumMode":
        if text == "all":
            return cls.all()
        kind, _, num = text.partition(":")
        if not num:
            raise ValueError(f"cannot parse sum mode {text!r}")
        return cls(kind, int(num))

    def __str__(self) -> str:
        return self.kind if self.kind == "all" else f"{self.kind}:{self.n}"

    def sizes(self, set_size: int) -> range:
        """Subset sizes enumerated over a ground set of ``set_size`` indices."""
        if self.kind == "all":
            return range(1, set_size + 1)
        if self.kind == "exactly":
            return range(self.n, self.n + 1) if self.n <= set_size else range(0)
        return range(1, min(self.n, set_size) + 1)


def iter_index_sets(set_size: int, mode: SumMode) -> Iterator[tuple[int, ...]]:
    """Index sets of the mode's family, by size then lexicographically."""
    for size in mode.sizes(set_size):
        yield from itertools.combinations(range(set_size), size)


def fs_enumerate(
    s: FiniteNatSet | Sequence[int], mode: SumMode = SumMode.all()
) -> dict[int, list[tuple[int, ...]]]:
    """Sums of distinct elements of s, with every producing index set.

    Returns a dict keyed by sum in ascending order; each value lists the
    index sets (into s, ascending tuples) producing that sum, in
    enumeration order. Sums coincide only when s is not apart.
    """
    elems = list(s)
    sums: dict[int, list[tuple[int, ...]]] = {}
    for idx in iter_index_sets(len(elems), mode):
        total = sum(elems[i] for i in idx)
        sums.setdefault(total, []).append(idx)
    return {total: sums[total] for total in sorted(sums)}


class SumStream:
    """An indexable, strictly increasing stream of positive naturals.

    Values are produced on demand and cached, so repeated queries agree.
    """

    def __init__(self, fn: Callable[[int], int], name: str = "stream"):
        self._fn = fn
        self._cache: list[int] = []
        self.name = name

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        while len(self._cache) <= i:
            k = len(self._cache)
            value = self._fn(k)
            if value < 1:
                raise ValueError(f"{self.name}[{k}] = {value}; stream values must be positive")
            if self._cache and value <= self._cache[-1]:
                raise ValueError(
                    f"{self.name}[{k}] = {value} does not exceed previous value {self._cache[-1]}"
                )
            self._cache.append(value)
        return self._cache[i]

    @classmethod
    def powers_of_two(cls) -> "SumStream":
        return cls(lambda i: 1 << i, "powers_of_two")

    @classmethod
    def odds(cls) -> "SumStream":
        return cls(lambda i: 2 * i + 1, "odds")

    @classmethod
    def naturals(cls) -> "SumStream":
        return cls(lambda i: i + 1, "naturals")

    @classmethod
    def from_list(cls, values: Sequence[int], name: str = "list") -> "SumStream":
        vals = list(values)

        def fn(i: int) -> int:
            if i >= len(vals):
                raise IndexError(f"{name} exhausted at index {i}")
            return vals[i]

        return cls(fn, name)


@dataclass(frozen=True)
class ApartExtraction:
    """An apart set pulled out of a stream's finite sums, with provenance.

    ``blocks[i]`` lists the stream elements summing to ``elements[i]``;
    blocks are consecutive runs of the stream and pairwise disjoint.
    """

    elements: FiniteNatSet
    blocks: tuple[tuple[int, ...], ...]


def extract_apart_from_fs(
    stream: SumStream, count: int, budget: int = 2_000_000
) -> ApartExtraction:
    """Greedily extract an apart set of ``count`` sums of distinct stream elements.

    Maintains a threshold t = mu(last pick) + 1 and finds the next pick by
    scanning prefix sums of the unconsumed stream modulo 2**t: two prefix
    sums sharing a residue bracket a consecutive block whose sum is a
    multiple of 2**t, hence has lam >= t. The pigeonhole principle bounds
    the scan by 2**t elements; ``budget`` caps total elements examined.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    picked: list[int] = []
    blocks: list[tuple[int, ...]] = []
    next_index = 0  # first stream position not yet consumed
    examined = 0
    threshold = 0
    while len(picked) < count:
        modulus = 1 << threshold
        seen = {0: 0}  # residue of prefix sum -> earliest prefix length
        prefix = 0
        j = 0
        while True:
            j += 1
            examined += 1
            if examined > budget:
                raise ApartExtractionError(
                    f"budget of {budget} stream elements exhausted after "
                    f"{len(picked)} of {count} picks",
                    elements=tuple(picked),
                    blocks=tuple(blocks),
                )
            prefix += stream[next_index + j - 1]
            residue = prefix % modulus
            if residue in seen:
                j0 = seen[residue]
                block = tuple(stream[next_index + t] for t in range(j0, j))
                total = sum(block)
                picked.append(total)
                blocks.append(block)
                next_index += j
                threshold = mu(total) + 1
                break
            seen[residue] = j
    return ApartExtraction(FiniteNatSet(tuple(picked)), tuple(blocks))
