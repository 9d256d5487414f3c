"""Weakly increasing index tuples and their permutation orbits.

A weak tuple is a weakly increasing n-tuple with entries in [1..q]; it is the
canonical representative of an orbit of the symmetric group permuting tuple
positions.  Orbit sizes are the multinomials n! / prod(multiplicities!), and
summing them over all weak tuples partitions the q**n arbitrary tuples.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Tuple

from .errors import InvalidParams, TooLarge

WeakTuple = Tuple[int, ...]

DEFAULT_ENUM_CAP = 10**7


def _check_qn(q: int, n: int) -> None:
    if not isinstance(q, int) or q < 1:
        raise InvalidParams("need q >= 1, got %r" % (q,))
    if not isinstance(n, int) or n < 0:
        raise InvalidParams("need n >= 0, got %r" % (n,))


def validate_weak_tuple(j: WeakTuple, q: int) -> None:
    """Raise InvalidParams unless j is weakly increasing with entries in [1..q]."""
    for a, b in zip(j, j[1:]):
        if a > b:
            raise InvalidParams("tuple %r is not weakly increasing" % (j,))
    for a in j:
        if not isinstance(a, int) or not 1 <= a <= q:
            raise InvalidParams("entry %r outside [1..%d]" % (a, q))


def weak_tuple_count(q: int, n: int) -> int:
    """Number of weak tuples: C(n+q-1, q-1)."""
    _check_qn(q, n)
    return math.comb(n + q - 1, q - 1)


def weak_tuple_count_bound(q: int, n: int) -> int:
    """The coarse polynomial bound (n+q-1)**(q-1), always >= weak_tuple_count."""
    _check_qn(q, n)
    return (n + q - 1) ** (q - 1)


def weak_tuples(q: int, n: int, cap: int = DEFAULT_ENUM_CAP) -> list[WeakTuple]:
    """All weak tuples in lexicographic order."""
    count = weak_tuple_count(q, n)
    if count > cap:
        raise TooLarge("%d weak tuples exceed the cap %d" % (count, cap))
    return list(itertools.combinations_with_replacement(range(1, q + 1), n))


def multiplicities(j: WeakTuple, q: int) -> Tuple[int, ...]:
    """How many times each of 1..q occurs in j."""
    validate_weak_tuple(j, q)
    out = [0] * q
    for a in j:
        out[a - 1] += 1
    return tuple(out)


def orbit_size(j: WeakTuple) -> int:
    """Number of distinct position-permutations of j: n! / prod(mult!)."""
    counts: dict[int, int] = {}
    for a in j:
        counts[a] = counts.get(a, 0) + 1
    size = math.factorial(len(j))
    for m in counts.values():
        size //= math.factorial(m)
    return size


def orbit(j: WeakTuple, cap: int = DEFAULT_ENUM_CAP) -> list[Tuple[int, ...]]:
    """All distinct position-permutations of j, in lexicographic order."""
    size = orbit_size(j)
    if size > cap:
        raise TooLarge("orbit of %r has %d elements, over the cap %d" % (j, size, cap))
    cur = sorted(j)
    n = len(cur)
    out = [tuple(cur)]
    while True:
        # textbook next-permutation step
        i = n - 2
        while i >= 0 and cur[i] >= cur[i + 1]:
            i -= 1
        if i < 0:
            return out
        k = n - 1
        while cur[k] <= cur[i]:
            k -= 1
        cur[i], cur[k] = cur[k], cur[i]
        cur[i + 1 :] = reversed(cur[i + 1 :])
        out.append(tuple(cur))


def orbit_iter(j: WeakTuple) -> Iterator[Tuple[int, ...]]:
    """Lazy variant of orbit(), without the cap."""
    cur = sorted(j)
    n = len(cur)
    while True:
        yield tuple(cur)
        i = n - 2
        while i >= 0 and cur[i] >= cur[i + 1]:
            i -= 1
        if i < 0:
            return
        k = n - 1
        while cur[k] <= cur[i]:
            k -= 1
        cur[i], cur[k] = cur[k], cur[i]
        cur[i + 1 :] = reversed(cur[i + 1 :])
