"""Order-symmetric polynomials and their substitution into a monomial window.

The monomial window of parameters (d, c) lists every word of degree 1..c in
the monomial order; there are q = d + d**2 + ... + d**c of them.  For a weak
tuple j in [1..q]**n, the order-symmetric polynomial s_j is the sum of the
distinct position-permutations of j read as words in q commuting-slot
variables (coefficients all 1, which stays correct in positive
characteristic), and the window generator is s_j evaluated at the window
words.  Any g of degree <= c without constant term satisfies

    g**n = sum over j of (prod of g-coefficients along j) * generator(j),

which power_expansion computes and, at toy scale, re-verifies by expanding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Tuple

from .combinat import (
    DEFAULT_ENUM_CAP,
    WeakTuple,
    orbit_iter,
    orbit_size,
    validate_weak_tuple,
    weak_tuple_count,
    weak_tuples,
)
from .errors import ConstantTerm, DegreeTooHigh, InvalidParams, TooLarge
from .field import FieldDescriptor
from .freealg import Polynomial, Word


@dataclass(frozen=True)
class MonomialWindow:
    """All words of degree 1..c over d variables, in monomial order."""

    d: int
    c: int
    words: Tuple[Word, ...]

    @property
    def q(self) -> int:
        return len(self.words)

    def word_degree(self, i: int) -> int:
        """Degree of the i-th window word (1-based index)."""
        if not 1 <= i <= len(self.words):
            raise InvalidParams("window index %d outside [1..%d]" % (i, len(self.words)))
        return len(self.words[i - 1])


def window_size(d: int, c: int) -> int:
    """q = d + d**2 + ... + d**c."""
    if not isinstance(d, int) or d < 1 or not isinstance(c, int) or c < 1:
        raise InvalidParams("window needs integers d >= 1 and c >= 1")
    return (d ** (c + 1) - d) // (d - 1) if d > 1 else c


def monomial_window(d: int, c: int, cap: int = DEFAULT_ENUM_CAP) -> MonomialWindow:
    q = window_size(d, c)
    if q > cap:
        raise TooLarge("window has %d words, over the cap %d" % (q, cap))
    words = []
    for n in range(1, c + 1):
        words.extend(itertools.product(range(1, d + 1), repeat=n))
    return MonomialWindow(d, c, tuple(words))


def order_symmetric(j: WeakTuple, q: int, field: FieldDescriptor,
                    cap: int = DEFAULT_ENUM_CAP) -> Polynomial:
    """s_j: the orbit sum of j as a polynomial in q variables."""
    validate_weak_tuple(j, q)
    if orbit_size(j) > cap:
        raise TooLarge("orbit of %r has %d terms, over the cap %d"
                       % (j, orbit_size(j), cap))
    one = field.one
    return Polynomial._raw(q, field, {tuple(t): one for t in orbit_iter(j)})


def window_generator(j: WeakTuple, window: MonomialWindow, field: FieldDescriptor,
                     cap: int = DEFAULT_ENUM_CAP) -> Polynomial:
    """s_j evaluated at the window words (a polynomial over d variables).

    Distinct permutations can produce the same word after substitution, so
    coefficients accumulate; over small fields a generator can vanish.
    """
    validate_weak_tuple(j, window.q)
    if orbit_size(j) > cap:
        raise TooLarge("orbit of %r has %d terms, over the cap %d"
                       % (j, orbit_size(j), cap))
    f = field
    terms: dict[Word, object] = {}
    for t in orbit_iter(j):
        w: Word = ()
        for i in t:
            w = w + window.words[i - 1]
        s = f.add(terms.get(w, 0), f.one)
        if f.is_zero(s):
            terms.pop(w, None)
        else:
            terms[w] = s
    return Polynomial._raw(window.d, f, terms)


def generator_degree(j: WeakTuple, window: MonomialWindow) -> int:
    """Nominal degree of the window generator: sum of window-word degrees."""
    validate_weak_tuple(j, window.q)
    return sum(len(window.words[i - 1]) for i in j)


def window_generators(window: MonomialWindow, n: int, field: FieldDescriptor,
                      cap: int = DEFAULT_ENUM_CAP) -> list[tuple[WeakTuple, Polynomial]]:
    """(j, generator) for every weak tuple j in [1..q]**n, in lexicographic order."""
    out = []
    for j in weak_tuples(window.q, n, cap):
        out.append((j, window_generator(j, window, field, cap)))
    return out


def power_expansion(g: Polynomial, n: int, window: MonomialWindow,
                    cap: int = DEFAULT_ENUM_CAP,
                    verify: bool | None = None) -> dict[WeakTuple, object]:
    """Coefficients lambda_j with g**n = sum lambda_j * generator(j).

    g must have no constant term and degree <= window.c.  lambda_j is the
    product of g's coefficients at the window words selected by j; zero
    products are omitted.  With verify=None the identity is re-checked by
    direct expansion whenever the sizes sit under the cap; verify=True forces
    the check (TooLarge if infeasible), verify=False skips it.
    """
    if g.d != window.d:
        raise InvalidParams("g lives over %d variables, window over %d" % (g.d, window.d))
    if not isinstance(n, int) or n < 1:
        raise InvalidParams("power must be an integer n >= 1")
    if not g.field.is_zero(g.constant_coefficient()):
        raise ConstantTerm("g must lie in T_{>=1}")
    if g.degree() > window.c:
        raise DegreeTooHigh("deg g = %d exceeds the window degree %d" % (g.degree(), window.c))
    f = g.field
    alpha = {i: g.coefficient(window.words[i - 1]) for i in range(1, window.q + 1)}
    support = [i for i, a in alpha.items() if not f.is_zero(a)]
    lam: dict[WeakTuple, object] = {}
    if support:
        count = weak_tuple_count(len(support), n)
        if count > cap:
            raise TooLarge("expansion has %d terms, over the cap %d" % (count, cap))
        for pick in itertools.combinations_with_replacement(support, n):
            c = f.one
            for i in pick:
                c = f.mul(c, alpha[i])
            if not f.is_zero(c):
                lam[pick] = c

    feasible = (
        len(g.terms) ** n <= cap
        and sum(orbit_size(j) for j in lam) <= cap
    )
    if verify is True and not feasible:
        raise TooLarge("verification by direct expansion exceeds the cap %d" % cap)
    if verify or (verify is None and feasible):
        total = Polynomial.zero(window.d, f)
        for j, c in sorted(lam.items()):
            total = total + window_generator(j, window, f, cap).scale(c)
        if total != g ** n:
            raise AssertionError("power expansion identity failed; this is a bug")
    return lam
