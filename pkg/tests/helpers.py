"""Shared generators for the test suite. All randomness is seeded."""

from __future__ import annotations

import random

from redbench.bitsupport import FiniteNatSet, lam
from redbench.colorings import TupleColoring, UnaryColoring
from redbench.wellorder import DescendingSequence, LinearOrder, OmegaTerm


def random_apart_set(rng: random.Random, size: int, bit_limit: int) -> FiniteNatSet:
    """An apart set of the given size with all elements below 2**bit_limit."""
    elems = []
    t = 0
    for remaining in range(size, 0, -1):
        reserve = remaining - 1
        low = rng.randint(t, bit_limit - 1 - reserve)
        high = rng.randint(low, bit_limit - 1 - reserve)
        value = (1 << low) | (1 << high)
        for b in range(low + 1, high):
            if rng.random() < 0.5:
                value |= 1 << b
        elems.append(value)
        t = high + 1
    return FiniteNatSet(tuple(elems))


def random_lambda_regressive_table(rng: random.Random, domain_bound: int) -> UnaryColoring:
    values = [rng.randrange(lam(n)) if lam(n) > 0 else 0 for n in range(domain_bound)]
    return UnaryColoring.from_table(values)


def random_k_coloring(rng: random.Random, k: int, domain_bound: int) -> UnaryColoring:
    return UnaryColoring.from_table([rng.randrange(k) for _ in range(domain_bound)], range_bound=k)


def random_tuple_coloring(rng: random.Random, k: int, domain_bound: int) -> TupleColoring:
    entries = {
        (a, b): rng.randrange(k)
        for a in range(domain_bound)
        for b in range(a + 1, domain_bound)
    }
    return TupleColoring.from_table(2, domain_bound, entries, range_bound=k)


def random_descending_alpha(
    rng: random.Random, order_size: int, max_terms: int, max_len: int
) -> DescendingSequence:
    """A strictly descending sequence with more terms than lh of its head.

    Terms shrink by truncation or by decreasing one exponent and refilling
    the tail below the new value; order_size must be at least 2, since a
    one-point order only supports truncation chains.
    """
    if order_size < 2:
        raise ValueError("need at least two order elements")
    while True:
        lh = rng.randint(1, max_len)
        term = tuple(sorted((rng.randrange(order_size) for _ in range(lh)), reverse=True))
        terms = [term]
        while len(terms) < max_terms:
            cur = terms[-1]
            ops = []
            if len(cur) > 1:
                ops.append("trunc")
            if any(x > 0 for x in cur):
                ops.append("dec")
            if not ops:
                break
            if rng.choice(ops) == "trunc":
                terms.append(cur[: rng.randint(1, len(cur) - 1)])
            else:
                qs = [q for q, x in enumerate(cur) if x > 0]
                q = rng.choice(qs)
                new_value = rng.randrange(cur[q])
                tail_len = rng.randint(0, max(0, max_len - q - 1))
                tail = tuple(
                    sorted((rng.randint(0, new_value) for _ in range(tail_len)), reverse=True)
                )
                terms.append(cur[:q] + (new_value,) + tail)
        if len(terms) > len(terms[0]):
            return DescendingSequence(
                LinearOrder.finite(order_size), tuple(OmegaTerm(t) for t in terms)
            )


def chain_alpha(order_size: int) -> DescendingSequence:
    """The single-position chain (x-1), (x-2), ..., (0); extractable descent
    has length order_size - 1."""
    terms = tuple(OmegaTerm((x,)) for x in range(order_size - 1, -1, -1))
    return DescendingSequence(LinearOrder.finite(order_size), terms)


def certifying_set(stream_length: int, size: int = 4) -> FiniteNatSet:
    """An apart solution whose elements sit entirely beyond the stream
    horizon; it is min-term-homogeneous (all colors 0) and certifies every
    in-horizon decrease window."""
    return FiniteNatSet.of(*(1 << (stream_length + j) for j in range(1, size + 1)))
