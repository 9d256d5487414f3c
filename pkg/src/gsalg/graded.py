"""Graded dimension tables of homogeneous two-sided ideals.

For a homogeneous ideal I of the free algebra on d letters, the table holds,
degree by degree up to a chosen maximum, the quotient dimensions
b_n = d**n - dim I_n together with the standard (non-pivot) monomial basis of
each quotient component, and answers membership queries by reduction.

The build is incremental: I_n = I_{n-1}*T_1 + sum_k B_{n-k}*R_k, so at degree
n it suffices to row-reduce the products b*f (b a standard word, f a
generator) inside the quotient space T_n / (I_{n-1}*T_1).  That space has the
candidate words {b*x_t : b standard at n-1} as a basis, which keeps the
working width at d*b_{n-1} columns instead of d**n.  Pivot sets of a row
space are canonical (least-column convention), so the resulting standard
words are exactly the non-pivot monomials of the textbook full-width
reduction; naive_dimension_table() recomputes everything at full width for
cross-checking.
"""

from __future__ import annotations

import csv
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    AmbientMismatch,
    DegreeBelowTwo,
    DegreeExceedsTable,
    InvalidParams,
    MixedFields,
    NonHomogeneousGenerator,
    TooLarge,
)
from .field import BINARY, FieldDescriptor
from .freealg import Polynomial, Word, word_index, words_of_degree
from .linalg import echelon_for, gf2_bits, gf2_from_bits

DEFAULT_COLUMN_CAP = 2**20


# -- generator validation ------------------------------------------------------

def _check_generators(generators, d, field):
    """Validate a generator list; returns (d, field) inferred when omitted."""
    gens = list(generators)
    if gens:
        if d is None:
            d = gens[0].d
        if field is None:
            field = gens[0].field
    if d is None or field is None:
        raise InvalidParams("d and field are required when no generators are given")
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise InvalidParams("d must be an integer >= 2, got %r" % (d,))
    for i, g in enumerate(gens):
        if not isinstance(g, Polynomial):
            raise InvalidParams("generator %d is not a Polynomial" % i)
        if g.d != d:
            raise AmbientMismatch(
                "generator %d lives in %d letters, expected %d" % (i, g.d, d)
            )
        if g.field != field:
            raise MixedFields(
                "generator %d is over %s, expected %s" % (i, g.field, field)
            )
        if not g.is_homogeneous():
            raise NonHomogeneousGenerator(
                "generator %d is %s" % (i, "zero" if g.is_zero() else "not homogeneous")
            )
        if g.degree() < 2:
            raise DegreeBelowTwo(
                "generator %d has degree %d < 2" % (i, g.degree())
            )
    return gens, d, field


def validate_r(r: Dict[int, int], what: str = "r") -> None:
    """Check a degree -> generator-count table: r_0 = r_1 = 0, counts >= 0."""
    for deg, count in r.items():
        if not isinstance(deg, int) or isinstance(deg, bool) or deg < 0:
            raise InvalidParams("%s has invalid degree key %r" % (what, deg))
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise InvalidParams("%s[%d] = %r is not a count" % (what, deg, count))
        if deg < 2 and count != 0:
            raise InvalidParams("%s[%d] must be 0 (no generators below degree 2)" % (what, deg))


# -- per-degree level data -----------------------------------------------------

class _Level:
    __slots__ = ("words", "ech", "std_cols", "free")

    def __init__(self, words, ech, std_cols, free):
        self.words = words          # standard words, monomial order
        self.ech = ech              # echelon over candidate columns (None at degree 0)
        self.std_cols = std_cols    # candidate columns of the standard words
        self.free = free            # no relations at this degree or below


def _term_trie(f: Polynomial):
    """Prefix tree of f's words; leaves hold raw coefficients."""
    root: dict = {}
    for word, c in f.sorted_terms():
        node = root
        for letter in word[:-1]:
            node = node.setdefault(letter, {})
        node[word[-1]] = c
    return root


def _gf2_scatter(vec: int, b_prev: int, d: int, t: int) -> int:
    bits = gf2_bits(vec, b_prev)
    out = np.zeros(b_prev * d, dtype=np.uint8)
    out[t - 1 :: d] = bits
    return gf2_from_bits(out)


def _gf2_gather(vec: int, width: int, std_cols: np.ndarray) -> int:
    return gf2_from_bits(gf2_bits(vec, width)[std_cols])


def _walk_gf2(levels, trie, start_idx, start_level, n, d) -> int:
    """Candidate-coordinate row of (standard word #start_idx) * f over GF(2)."""
    acc = 0

    def step(level, tag, state, node):
        nonlocal acc
        b_here = len(levels[level].words)
        for t in sorted(node):
            sub = node[t]
            if tag == "w":
                col = state * d + (t - 1)
                cw = 1 << col
            else:
                cw = _gf2_scatter(state, b_here, d, t)
                if not cw:
                    continue
            if level + 1 == n:
                acc ^= cw
                continue
            nxt = levels[level + 1]
            if nxt.ech.rank == 0:
                if tag == "w":
                    step(level + 1, "w", col, sub)
                else:
                    step(level + 1, "v", cw, sub)
                continue
            if tag == "w" and not nxt.ech.has_pivot(col):
                # a standard candidate word stays a single basis word
                pos = int(np.searchsorted(nxt.std_cols, col))
                step(level + 1, "w", pos, sub)
                continue
            red = nxt.ech.reduce(cw)
            if not red:
                continue
            g = _gf2_gather(red, b_here * d, nxt.std_cols)
            if g:
                step(level + 1, "v", g, sub)

    step(start_level, "w", start_idx, trie)
    return acc


def _walk_exact(levels, trie, start_idx, start_level, n, d, field):
    """Same walk over an exact scalar field; vectors are raw-value lists."""
    zero = field.zero
    acc = [zero] * (len(levels[n - 1].words) * d)

    def step(level, state, node):
        b_here = len(levels[level].words)
        for t in sorted(node):
            sub = node[t]
            if level + 1 == n:
                c = sub
                for idx, a in enumerate(state):
                    if a:
                        col = idx * d + (t - 1)
                        acc[col] = field.add(acc[col], field.mul(c, a))
                continue
            out = [zero] * (b_here * d)
            out[t - 1 :: d] = state
            nxt = levels[level + 1]
            if nxt.ech.rank:
                red = nxt.ech.reduce(out)
                out = [red[c] for c in nxt.std_cols]
            if any(out):
                step(level + 1, out, sub)

    base = [zero] * len(levels[start_level].words)
    base[start_idx] = field.one
    step(start_level, base, trie)
    return acc


def _insert_rows_gfp(levels, trie, k, n, d, p, ech):
    """Batched GF(p) row construction: whole chunks of B_{n-k} walk together."""
    nb = len(levels[n - k].words)
    widths = [len(levels[m].words) * d for m in range(n - k, n)]
    chunk = max(1, (1 << 23) // max(widths))
    pivots: List[int] = []
    for s in range(0, nb, chunk):
        m_rows = min(chunk, nb - s)
        state = np.zeros((m_rows, nb), dtype=np.int64)
        state[np.arange(m_rows), s + np.arange(m_rows)] = 1
        acc = np.zeros((m_rows, widths[-1]), dtype=np.int64)

        def step(level, M, node):
            b_here = len(levels[level].words)
            for t in sorted(node):
                sub = node[t]
                W = np.zeros((M.shape[0], b_here * d), dtype=np.int64)
                W[:, t - 1 :: d] = M
                if level + 1 == n:
                    # coeff < p and W < p, so the product fits int64 exactly
                    np.add(acc, int(sub) * W, out=acc)
                    np.mod(acc, p, out=acc)
                    continue
                nxt = levels[level + 1]
                if nxt.ech.rank:
                    W = nxt.ech.reduce_rows(W)[:, nxt.std_cols]
                if W.any():
                    step(level + 1, W, sub)

        step(n - k, state, trie)
        pivots.extend(ech.insert_rows(acc))
    return pivots


# -- the table -----------------------------------------------------------------

class GradedIdealTable:
    """Per-degree quotient bases of a homogeneous ideal, up to maxdeg."""

    def __init__(self, d, field, generators, maxdeg, levels, r_counts):
        self.d = d
        self.field = field
        self.generators = tuple(generators)
        self.maxdeg = maxdeg
        self._levels = levels
        self._r = dict(r_counts)

    def _level(self, n: int) -> _Level:
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InvalidParams("degree must be a nonnegative integer, got %r" % (n,))
        if n > self.maxdeg:
            raise DegreeExceedsTable(
                "degree %d exceeds table maximum %d" % (n, self.maxdeg)
            )
        return self._levels[n]

    def b(self, n: int) -> int:
        """Quotient dimension b_n = d**n - dim I_n."""
        return len(self._level(n).words)

    def b_sequence(self) -> List[int]:
        return [len(lv.words) for lv in self._levels]

    def ideal_dim(self, n: int) -> int:
        return self.d**n - self.b(n)

    def basis(self, n: int) -> List[Word]:
        """Standard words spanning the degree-n quotient component."""
        return list(self._level(n).words)

    def pivot_words(self, n: int) -> List[Word]:
        """Degree-n words that are pivots, i.e. the complement of basis(n)."""
        std = set(self._level(n).words)
        return [w for w in words_of_degree(self.d, n) if w not in std]

    def r(self, degree: int) -> int:
        """Number of generators of the given degree, with multiplicity."""
        return self._r.get(degree, 0)

    def r_table(self) -> Dict[int, int]:
        return {deg: self._r[deg] for deg in sorted(self._r) if self._r[deg]}

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Residue of p modulo the ideal; zero iff p is a member."""
        if not isinstance(p, Polynomial):
            raise InvalidParams("normal_form expects a Polynomial")
        if p.d != self.d:
            raise AmbientMismatch(
                "polynomial lives in %d letters, table has %d" % (p.d, self.d)
            )
        if p.field != self.field:
            raise MixedFields(
                "polynomial is over %s, table over %s" % (p.field, self.field)
            )
        out: dict = {}
        for m, comp in p.homogeneous_components().items():
            if m > self.maxdeg:
                raise DegreeExceedsTable(
                    "component of degree %d exceeds table maximum %d" % (m, self.maxdeg)
                )
            words = self._levels[m].words
            if not words:
                continue
            vec = self._component_nf(comp, m)
            if self.field.kind == BINARY:
                v = vec
                while v:
                    low = v & -v
                    out[words[low.bit_length() - 1]] = 1
                    v ^= low
            else:
                for i, a in enumerate(vec):
                    if a:
                        out[words[i]] = a if isinstance(a, (int, Fraction)) else int(a)
        return Polynomial._raw(self.d, self.field, out)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def _component_nf(self, comp: Polynomial, m: int):
        levels, d, field = self._levels, self.d, self.field
        if field.kind == BINARY:
            acc = 0
            for word, _ in comp.sorted_terms():
                acc ^= self._word_nf_gf2(word)
            return acc
        if field.p is not None:
            acc = np.zeros(len(levels[m].words), dtype=np.int64)
            for word, c in comp.sorted_terms():
                acc = (acc + c * self._word_nf_gfp(word)) % field.p
            return [int(a) for a in acc]
        acc = [field.zero] * len(levels[m].words)
        for word, c in comp.sorted_terms():
            vec = self._word_nf_exact(word)
            acc = [a + c * v for a, v in zip(acc, vec)]
        return acc

    def _word_nf_gf2(self, word: Word) -> int:
        levels, d = self._levels, self.d
        tag, state = "w", 0
        for m, t in enumerate(word):
            lvl = levels[m + 1]
            b_here = len(levels[m].words)
            if tag == "w":
                col = state * d + (t - 1)
                if lvl.ech.rank == 0 or not lvl.ech.has_pivot(col):
                    state = col if lvl.ech.rank == 0 else int(
                        np.searchsorted(lvl.std_cols, col)
                    )
                    continue
                cw = 1 << col
            else:
                cw = _gf2_scatter(state, b_here, d, t)
            if lvl.ech.rank:
                cw = lvl.ech.reduce(cw)
            if not cw:
                return 0
            tag, state = "v", _gf2_gather(cw, b_here * d, lvl.std_cols) if lvl.ech.rank else cw
        if tag == "w":
            return 1 << state
        return state

    def _word_nf_gfp(self, word: Word) -> np.ndarray:
        levels, d = self._levels, self.d
        state = np.ones(1, dtype=np.int64)
        for m, t in enumerate(word):
            b_here = len(levels[m].words)
            out = np.zeros(b_here * d, dtype=np.int64)
            out[t - 1 :: d] = state
            lvl = levels[m + 1]
            if lvl.ech.rank:
                out = lvl.ech.reduce(out)[lvl.std_cols]
            state = out
            if not state.any():
                return np.zeros(len(levels[len(word)].words), dtype=np.int64)
        return state

    def _word_nf_exact(self, word: Word):
        levels, d, field = self._levels, self.d, self.field
        state = [field.one]
        for m, t in enumerate(word):
            b_here = len(levels[m].words)
            out = [field.zero] * (b_here * d)
            out[t - 1 :: d] = state
            lvl = levels[m + 1]
            if lvl.ech.rank:
                red = lvl.ech.reduce(out)
                out = [red[c] for c in lvl.std_cols]
            state = out
        return state

    def __repr__(self):
        return "GradedIdealTable(d=%d, field=%s, maxdeg=%d, %d generators)" % (
            self.d,
            self.field,
            self.maxdeg,
            len(self.generators),
        )


def build_table(
    generators: Sequence[Polynomial],
    maxdeg: int,
    *,
    d: Optional[int] = None,
    field: Optional[FieldDescriptor] = None,
    column_cap: int = DEFAULT_COLUMN_CAP,
    r_override: Optional[Dict[int, int]] = None,
) -> GradedIdealTable:
    """Build the graded table of the ideal generated by the given polynomials.

    Generators must be homogeneous of degree >= 2 over one common field; the
    empty list (zero ideal) needs explicit d and field.  r_override replaces
    the derived degree -> count table used for bound reporting, which matters
    when a nominal generator vanishes over the field yet must still be
    counted.
    """
    gens, d, field = _check_generators(generators, d, field)
    if not isinstance(maxdeg, int) or isinstance(maxdeg, bool) or maxdeg < 0:
        raise InvalidParams("maxdeg must be a nonnegative integer, got %r" % (maxdeg,))
    if d**maxdeg > column_cap:
        raise TooLarge(
            "d**maxdeg = %d exceeds the %d-column cap" % (d**maxdeg, column_cap)
        )
    if r_override is not None:
        validate_r(r_override, "r_override")
        r_counts = dict(r_override)
    else:
        r_counts = {}
        for g in gens:
            r_counts[g.degree()] = r_counts.get(g.degree(), 0) + 1

    tries = [(_term_trie(g), g.degree()) for g in gens]
    levels = [_Level([()], None, None, True)]
    for n in range(1, maxdeg + 1):
        prev = levels[n - 1]
        width = len(prev.words) * d
        ech = echelon_for(field, width)
        if width:
            for trie, k in tries:
                if k > n or not levels[n - k].words:
                    continue
                if field.kind == BINARY:
                    for i in range(len(levels[n - k].words)):
                        ech.insert(_walk_gf2(levels, trie, i, n - k, n, d))
                elif field.p is not None:
                    _insert_rows_gfp(levels, trie, k, n, d, field.p, ech)
                else:
                    for i in range(len(levels[n - k].words)):
                        ech.insert(_walk_exact(levels, trie, i, n - k, n, d, field))
        piv = np.array(ech.pivot_columns(), dtype=np.intp)
        std_cols = np.setdiff1d(np.arange(width, dtype=np.intp), piv)
        words = [prev.words[int(c) // d] + (int(c) % d + 1,) for c in std_cols]
        levels.append(_Level(words, ech, std_cols, prev.free and ech.rank == 0))
    return GradedIdealTable(d, field, gens, maxdeg, levels, r_counts)


# -- dimension rows and the degree-wise lower bound ----------------------------

@dataclass(frozen=True)
class DimensionRow:
    """One degree of the dimension report; bound and slack are None below 2."""

    n: int
    dim_total: int
    dim_ideal: int
    b: int
    bound: Optional[int]
    slack: Optional[int]


def dimension_rows(
    table: GradedIdealTable, r: Optional[Dict[int, int]] = None
) -> List[DimensionRow]:
    """Per-degree dimensions with the d*b_{n-1} - sum r_{n-j}*b_j lower bound."""
    if r is None:
        counts = dict(table._r)
    else:
        validate_r(r)
        counts = dict(r)
    b = table.b_sequence()
    d = table.d
    rows = []
    for n in range(table.maxdeg + 1):
        if n < 2:
            bound = slack = None
        else:
            bound = d * b[n - 1] - sum(
                counts.get(n - j, 0) * b[j] for j in range(n - 1)
            )
            slack = b[n] - bound
        rows.append(DimensionRow(n, d**n, d**n - b[n], b[n], bound, slack))
    return rows


def check_dimension_bounds(rows: Sequence[DimensionRow]) -> List[int]:
    """Degrees whose slack is negative; empty means the bound held throughout."""
    return [row.n for row in rows if row.slack is not None and row.slack < 0]


CSV_COLUMNS = ("n", "dim_Tn", "dim_In", "b_n", "eq1_bound", "slack")


def write_dimension_csv(rows: Sequence[DimensionRow], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.n,
                row.dim_total,
                row.dim_ideal,
                row.b,
                "" if row.bound is None else row.bound,
                "" if row.slack is None else row.slack,
            ]
        )


def dimension_report(table: GradedIdealTable, rows: Optional[Sequence[DimensionRow]] = None) -> dict:
    """JSON-ready dict mirroring the CSV table, keys in fixed order."""
    if rows is None:
        rows = dimension_rows(table)
    return {
        "d": table.d,
        "field": str(table.field),
        "maxdeg": table.maxdeg,
        "r": {str(deg): count for deg, count in sorted(table.r_table().items())},
        "rows": [
            {
                "n": row.n,
                "dim_Tn": row.dim_total,
                "dim_In": row.dim_ideal,
                "b_n": row.b,
                "eq1_bound": row.bound,
                "slack": row.slack,
            }
            for row in rows
        ],
        "all_nonnegative": not check_dimension_bounds(rows),
    }


# -- naive full-width cross-check ----------------------------------------------

class NaiveTable:
    """Textbook reference: spans {m1*f*m2} at full d**n width and eliminates.

    Deliberately simple and independent of the incremental machinery; used to
    cross-check dimensions, standard words, and membership at desk scale.
    """

    def __init__(self, d, field, b, standard_words, bases):
        self.d = d
        self.field = field
        self.b = b
        self.standard_words = standard_words
        self._bases = bases

    def contains(self, p: Polynomial) -> bool:
        if p.d != self.d:
            raise AmbientMismatch("polynomial ambient does not match")
        if p.field != self.field:
            raise MixedFields("polynomial field does not match")
        for m, comp in p.homogeneous_components().items():
            if m >= len(self._bases):
                raise DegreeExceedsTable("degree %d beyond naive table" % m)
            if self.field.kind == BINARY:
                if _naive_reduce_gf2(_pack_gf2(comp, self.d), self._bases[m]):
                    return False
            else:
                vec = _full_vector(comp, self.d, self.field)
                if any(_naive_reduce(vec, self._bases[m], self.field)):
                    return False
        return True


def _full_vector(p: Polynomial, d: int, field: FieldDescriptor):
    n = p.degree()
    vec = [field.zero] * (d**n)
    for word, c in p.terms.items():
        idx = word_index(word, d)
        vec[idx] = field.add(vec[idx], c)
    return vec


def _pack_gf2(p: Polynomial, d: int) -> int:
    row = 0
    for word in p.terms:
        row ^= 1 << word_index(word, d)
    return row


def _naive_reduce_gf2(row: int, basis) -> int:
    # basis rows sorted by pivot; each row is zero before its own pivot,
    # so one ascending pass is a complete reduction
    for pivbit, brow in basis:
        if row & pivbit:
            row ^= brow
    return row


def _naive_insert_gf2(row: int, basis) -> None:
    row = _naive_reduce_gf2(row, basis)
    if row:
        insort(basis, (row & -row, row))


def _naive_reduce(vec, basis, field):
    # same ascending-pass argument as the packed variant
    for piv, row in basis:
        c = vec[piv]
        if c:
            vec = [field.sub(a, field.mul(c, b)) for a, b in zip(vec, row)]
    return vec


def _naive_insert(vec, basis, field):
    vec = _naive_reduce(vec, basis, field)
    piv = next((i for i, a in enumerate(vec) if a), None)
    if piv is None:
        return
    inv = field.inv(vec[piv])
    insort(basis, (piv, [field.mul(inv, a) for a in vec]))


def naive_dimension_table(
    generators: Sequence[Polynomial],
    maxdeg: int,
    *,
    d: Optional[int] = None,
    field: Optional[FieldDescriptor] = None,
    column_cap: int = 2**14,
) -> NaiveTable:
    gens, d, field = _check_generators(generators, d, field)
    if not isinstance(maxdeg, int) or isinstance(maxdeg, bool) or maxdeg < 0:
        raise InvalidParams("maxdeg must be a nonnegative integer, got %r" % (maxdeg,))
    if d**maxdeg > column_cap:
        raise TooLarge(
            "d**maxdeg = %d exceeds the naive %d-column cap" % (d**maxdeg, column_cap)
        )
    dims: List[int] = []
    std_words: List[List[Word]] = []
    bases = []
    binary = field.kind == BINARY
    for n in range(maxdeg + 1):
        basis: list = []
        for f in gens:
            k = f.degree()
            if k > n:
                continue
            for a in range(n - k + 1):
                for u in words_of_degree(d, a):
                    for v in words_of_degree(d, n - k - a):
                        if binary:
                            row = 0
                            for w in f.terms:
                                row ^= 1 << word_index(u + w + v, d)
                            _naive_insert_gf2(row, basis)
                        else:
                            vec = [field.zero] * (d**n)
                            for w, c in f.terms.items():
                                idx = word_index(u + w + v, d)
                                vec[idx] = field.add(vec[idx], c)
                            _naive_insert(vec, basis, field)
        if field.kind == BINARY:
            pivots = {pb.bit_length() - 1 for pb, _ in basis}
        else:
            pivots = {piv for piv, _ in basis}
        dims.append(d**n - len(basis))
        std_words.append(
            [w for i, w in enumerate(words_of_degree(d, n)) if i not in pivots]
        )
        bases.append(basis)
    return NaiveTable(d, field, dims, std_words, bases)
