"""Exact linear algebra over the rationals.

Everything in this package is computed with exact arithmetic: coefficients
are ``fractions.Fraction`` values, kept automatically in lowest terms with a
positive denominator, and no floating point is used anywhere.  This module
provides the two workhorses shared by all the combinatorial models:

* :class:`LinComb`, a formal finite linear combination of opaque basis keys
  (trees, lattice paths, chains, ...) with rational coefficients, and
* fraction-free rank computation (:func:`matrix_rank`, Bareiss elimination)
  together with :func:`span_contains`, used for change-of-basis and
  generation checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

Rational = Fraction

_CERT_PRIME = (1 << 61) - 1


def sort_key(key):
    """Canonical total order on basis keys.

    Keys may implement ``sort_key()``; tuples are ordered componentwise;
    anything else must be natively orderable.
    """
    getter = getattr(key, "sort_key", None)
    if getter is not None:
        return getter()
    if isinstance(key, tuple):
        return tuple(sort_key(part) for part in key)
    return key


class LinComb:
    """Formal linear combination of basis keys with rational coefficients.

    Zero coefficients are never stored, so two combinations are equal
    exactly when their term dictionaries are.  Instances are immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        data: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            acc = data.get(key, 0) + Fraction(coeff)
            if acc:
                data[key] = acc
            else:
                data.pop(key, None)
        self._terms = data

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def single(cls, key, coeff=1) -> "LinComb":
        return cls(((key, coeff),))

    def items(self):
        return self._terms.items()

    def items_sorted(self):
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def support(self):
        return set(self._terms)

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        data = dict(self._terms)
        for key, coeff in other._terms.items():
            acc = data.get(key, 0) + coeff
            if acc:
                data[key] = acc
            else:
                data.pop(key, None)
        out = LinComb.__new__(LinComb)
        out._terms = data
        return out

    def __neg__(self) -> "LinComb":
        out = LinComb.__new__(LinComb)
        out._terms = {k: -c for k, c in self._terms.items()}
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = Fraction(c)
        out = LinComb.__new__(LinComb)
        out._terms = {} if not c else {k: c * v for k, v in self._terms.items()}
        return out

    def __mul__(self, c) -> "LinComb":
        return self.scale(c)

    __rmul__ = __mul__

    def render(self, key_str: Callable = str) -> str:
        """Canonical text form: sorted terms, ``+q*[key]`` each."""
        if not self._terms:
            return "0"
        parts = []
        for key, coeff in self.items_sorted():
            sign = "+" if coeff > 0 else "-"
            parts.append(f"{sign}{abs(coeff)}*[{key_str(key)}]")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LinComb({dict(self.items_sorted())!r})"


def lincomb_add(a: LinComb, b: LinComb) -> LinComb:
    return a + b


def lincomb_scale(a: LinComb, c) -> LinComb:
    return a.scale(c)


def bilinear(a: LinComb, b: LinComb, product: Callable) -> LinComb:
    """Extend a product on basis keys bilinearly to linear combinations."""
    data: dict = {}
    for x, cx in a.items():
        for y, cy in b.items():
            cxy = cx * cy
            for z, cz in product(x, y).items():
                acc = data.get(z, 0) + cxy * cz
                if acc:
                    data[z] = acc
                else:
                    data.pop(z, None)
    out = LinComb.__new__(LinComb)
    out._terms = data
    return out


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with exact rational entries."""

    rows: int
    cols: int
    entries: tuple = field(default=())

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "ExactMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged matrix")
        return cls(nrows, ncols, data)

    def transpose(self) -> "ExactMatrix":
        data = tuple(
            tuple(self.entries[r][c] for r in range(self.rows))
            for c in range(self.cols)
        )
        return ExactMatrix(self.cols, self.rows, data)


def _integer_rows(entries) -> list[list[int]]:
    # scale each row by the lcm of its denominators; rank is unchanged
    out = []
    for row in entries:
        scale = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_rank(rows: list[list[int]], cols: int) -> int:
    mat = [row[:] for row in rows]
    prev = 1
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            factor = mat[r][col]
            if factor:
                row_r, row_p = mat[r], mat[rank]
                for c in range(col + 1, cols):
                    row_r[c] = (p * row_r[c] - factor * row_p[c]) // prev
            mat[r][col] = 0
        prev = p
        rank += 1
        if rank == len(mat):
            break
    return rank


def _modular_rank(rows: list[list[int]], cols: int, p: int) -> int:
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        piv_row = mat[rank]
        for r in range(rank + 1, len(mat)):
            factor = mat[r][col]
            if factor:
                mult = factor * inv % p
                row_r = mat[r]
                for c in range(col, cols):
                    row_r[c] = (row_r[c] - mult * piv_row[c]) % p
        rank += 1
        if rank == len(mat):
            break
    return rank


def matrix_rank(matrix: ExactMatrix) -> int:
    """Exact rank over the rationals (fraction-free Bareiss elimination)."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return _bareiss_rank(_integer_rows(matrix.entries), matrix.cols)


def has_full_rank(matrix: ExactMatrix) -> bool:
    """True iff rank equals ``min(rows, cols)``.

    A full modular rank certifies full rational rank, so that cheap check
    is tried first; otherwise the exact elimination decides.
    """
    target = min(matrix.rows, matrix.cols)
    if target == 0:
        return True
    rows = _integer_rows(matrix.entries)
    if _modular_rank(rows, matrix.cols, _CERT_PRIME) == target:
        return True
    return _bareiss_rank(rows, matrix.cols) == target


def _key_universe(vectors: Iterable[LinComb]) -> list:
    keys = set()
    for v in vectors:
        keys.update(v.support())
    return sorted(keys, key=sort_key)


def lincombs_to_matrix(vectors: list[LinComb], keys: list | None = None) -> ExactMatrix:
    if keys is None:
        keys = _key_universe(vectors)
    data = tuple(tuple(v[k] for k in keys) for v in vectors)
    return ExactMatrix(len(vectors), len(keys), data)


def rank_of_lincombs(vectors: list[LinComb], keys: list | None = None) -> int:
    if not vectors:
        return 0
    return matrix_rank(lincombs_to_matrix(vectors, keys))


def span_contains(vectors: list[LinComb], target: LinComb) -> bool:
    """Membership of ``target`` in the rational span of ``vectors``."""
    keys = _key_universe(list(vectors) + [target])
    base = rank_of_lincombs(list(vectors), keys)
    extended = rank_of_lincombs(list(vectors) + [target], keys)
    return base == extended
