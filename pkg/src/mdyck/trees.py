"""Colored planar binary trees and the free algebra they carry.

A tree of degree n has n leaves and n-1 internal vertices, each colored by
an integer in {0, ..., m}.  Grafting two trees under a new root of color i
is written t v_i w.  The trees whose every internal vertex has a left child
that is either a leaf or carries a strictly larger color form the graded
basis B(m); on its span the m+1 binary products *_0, ..., *_m are defined
by a structural recursion and satisfy

    x *_i (y *_j z) = (x *_i y) *_j z                 for i < j,
    sum_{j<=i} x *_i (y *_j z) = sum_{k>=i} (x *_k y) *_i z,

the defining relations of an order-m Dyck algebra (m = 0 is associativity,
m = 1 the dendriform splitting).  This module also hosts the generic
relation checker used to verify those axioms for any product oracle, and
the partial-sum change of products o_i = *_0 + ... + *_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .exactlin import LinComb, bilinear
from .reporting import CheckReport

LEFT = "L"
RIGHT = "R"


class ColoredTree:
    """Immutable planar binary rooted tree; internal vertices carry colors."""

    __slots__ = ("color", "left", "right", "degree", "serial", "_hash")

    def __init__(self, color=None, left=None, right=None):
        self.color = color
        self.left = left
        self.right = right
        if color is None:
            self.degree = 1
            self.serial = (0,)
        else:
            if color < 0:
                raise ValueError("negative color")
            self.degree = left.degree + right.degree
            self.serial = (1 + color,) + left.serial + right.serial
        self._hash = hash(self.serial)

    @property
    def is_leaf(self) -> bool:
        return self.color is None

    def sort_key(self):
        return (self.degree, self.serial)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ColoredTree):
            return NotImplemented
        return self.serial == other.serial

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def subtrees(self):
        """All internal-vertex subtrees, prefix order."""
        if self.is_leaf:
            return
        stack = [self]
        while stack:
            t = stack.pop()
            if t.is_leaf:
                continue
            yield t
            stack.append(t.right)
            stack.append(t.left)

    def max_color(self) -> int:
        return max((v.color for v in self.subtrees()), default=-1)

    def encode(self) -> str:
        if self.is_leaf:
            return "|"
        return f"({self.color} {self.left.encode()} {self.right.encode()})"

    def __repr__(self):
        return self.encode()


LEAF = ColoredTree()


def node(color: int, left: ColoredTree, right: ColoredTree) -> ColoredTree:
    return ColoredTree(color, left, right)


def graft(t: ColoredTree, w: ColoredTree, i: int, m: int | None = None) -> ColoredTree:
    """The grafting t v_i w: new root of color i, t left, w right."""
    if i < 0 or (m is not None and i > m):
        raise ValueError(f"color {i} out of range [0, {m}]")
    return ColoredTree(i, t, w)


def parse_tree(text: str) -> ColoredTree:
    """Parse the canonical encoding: leaf `|`, node `(c L R)`."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> ColoredTree:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree literal")
        tok = tokens[pos]
        pos += 1
        if tok == "|":
            return LEAF
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r}")
        color = int(tokens[pos])
        pos += 1
        left = parse()
        right = parse()
        if tokens[pos] != ")":
            raise ValueError("expected ')'")
        pos += 1
        return ColoredTree(color, left, right)

    result = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in tree literal")
    return result


@dataclass(frozen=True)
class CombDecomposition:
    """A tree written as an iterated one-sided comb.

    Left comb with colors (i_1, ..., i_p) and hanging subtrees (t_1, ..., t_p):
    (((| v_{i_p} t_p) v_{i_p-1} t_p-1) ...) v_{i_1} t_1; the colors run along
    the left spine from the root up, the subtrees hang off on the right.
    The right comb is the mirror image.  p = 0 encodes the bare leaf.
    """

    colors: tuple[int, ...]
    subtrees: tuple[ColoredTree, ...]
    side: str


def comb_decompose(t: ColoredTree, side: str) -> CombDecomposition:
    if side not in (LEFT, RIGHT):
        raise ValueError("side must be LEFT or RIGHT")
    colors: list[int] = []
    subs: list[ColoredTree] = []
    cur = t
    while not cur.is_leaf:
        colors.append(cur.color)
        if side == LEFT:
            subs.append(cur.right)
            cur = cur.left
        else:
            subs.append(cur.left)
            cur = cur.right
    return CombDecomposition(tuple(colors), tuple(subs), side)


def from_left_comb(colors: Sequence[int], subtrees: Sequence[ColoredTree]) -> ColoredTree:
    if len(colors) != len(subtrees):
        raise ValueError("color/subtree length mismatch")
    cur = LEAF
    for color, sub in zip(reversed(colors), reversed(subtrees)):
        cur = ColoredTree(color, cur, sub)
    return cur


def from_right_comb(colors: Sequence[int], subtrees: Sequence[ColoredTree]) -> ColoredTree:
    if len(colors) != len(subtrees):
        raise ValueError("color/subtree length mismatch")
    cur = LEAF
    for color, sub in zip(reversed(colors), reversed(subtrees)):
        cur = ColoredTree(color, sub, cur)
    return cur


def comb_reassemble(dec: CombDecomposition) -> ColoredTree:
    if dec.side == LEFT:
        return from_left_comb(dec.colors, dec.subtrees)
    return from_right_comb(dec.colors, dec.subtrees)


def is_basis_Bm(t: ColoredTree, m: int) -> bool:
    """Basis test: every left child is a leaf or carries a larger color."""
    for v in t.subtrees():
        if v.color > m:
            raise ValueError(f"color {v.color} exceeds m={m}")
        if not v.left.is_leaf and v.left.color <= v.color:
            return False
    return True


_BM_CACHE: dict[tuple[int, int], tuple[ColoredTree, ...]] = {}


def enumerate_Bm(m: int, n: int) -> list[ColoredTree]:
    """All basis trees of degree n, canonically ordered; |result| = d(m, n)."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    key = (m, n)
    cached = _BM_CACHE.get(key)
    if cached is None:
        if n == 1:
            cached = (LEAF,)
        else:
            out = []
            for n_left in range(1, n):
                for t_left in enumerate_Bm(m, n_left):
                    top = m if t_left.is_leaf else t_left.color - 1
                    for t_right in enumerate_Bm(m, n - n_left):
                        for i in range(top + 1):
                            out.append(ColoredTree(i, t_left, t_right))
            out.sort(key=ColoredTree.sort_key)
            cached = tuple(out)
        _BM_CACHE[key] = cached
    return list(cached)


# pure function of the key, so concurrent writers always agree
_PRODUCT_MEMO: dict[tuple, LinComb] = {}


def _graft_left(t_left: ColoredTree, color: int, lc: LinComb) -> LinComb:
    return LinComb((ColoredTree(color, t_left, u), c) for u, c in lc.items())


def _graft_right(lc: LinComb, color: int, w: ColoredTree) -> LinComb:
    return LinComb((ColoredTree(color, u, w), c) for u, c in lc.items())


def _tree_product(t: ColoredTree, w: ColoredTree, i: int, m: int) -> LinComb:
    key = (t, w, i, m)
    hit = _PRODUCT_MEMO.get(key)
    if hit is not None:
        return hit
    if t.is_leaf or i < t.color:
        result = LinComb.single(ColoredTree(i, t, w))
    elif t.color < i:
        result = _graft_left(t.left, t.color, _tree_product(t.right, w, i, m))
    else:
        # (x *_i y) *_i z rewritten through the mixed-associativity relation
        result = LinComb.zero()
        for k in range(i + 1):
            result = result + _graft_left(t.left, i, _tree_product(t.right, w, k, m))
        for k in range(i + 1, m + 1):
            result = result - _graft_right(_tree_product(t.left, t.right, k, m), i, w)
    _PRODUCT_MEMO[key] = result
    return result


def tree_product(t: ColoredTree, w: ColoredTree, i: int, m: int) -> LinComb:
    """Expansion of t *_i w in the basis B(m).

    Inputs must be basis trees; arbitrary colored trees are normalized via
    :func:`tree_normal_form` instead of silently rewritten here.
    """
    if not 0 <= i <= m:
        raise ValueError(f"product index {i} out of range [0, {m}]")
    if not is_basis_Bm(t, m) or not is_basis_Bm(w, m):
        raise ValueError("operands must be basis trees")
    return _tree_product(t, w, i, m)


def tree_normal_form(t: ColoredTree, m: int) -> LinComb:
    """Evaluate the grafting structure of an arbitrary colored tree.

    Leaves map to the degree-1 basis tree and every vertex of color i to the
    product *_i; the result is the expansion of t in the basis B(m).
    """
    if t.is_leaf:
        return LinComb.single(LEAF)
    if t.max_color() > m:
        raise ValueError("color exceeds m")
    left = tree_normal_form(t.left, m)
    right = tree_normal_form(t.right, m)
    return bilinear(left, right, lambda a, b: _tree_product(a, b, t.color, m))


# ---------------------------------------------------------------------------
# Expressions over generators


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class App:
    index: int
    left: "Expression"
    right: "Expression"


Expression = Gen | App


class LabeledTreeOracle:
    """Free algebra over an alphabet: basis keys are (tree, letter tuple)."""

    def __init__(self, m: int, alphabet: tuple[str, ...] = ("x",)):
        self.m = m
        self.alphabet = alphabet

    def degree(self, key) -> int:
        return key[0].degree

    def basis(self, n: int) -> list:
        return [
            (t, letters)
            for t in enumerate_Bm(self.m, n)
            for letters in itertools.product(self.alphabet, repeat=n)
        ]

    def generator(self, name: str):
        return (LEAF, (name,))

    def product(self, x, y, i: int) -> LinComb:
        t, a = x
        w, b = y
        return LinComb(((u, a + b), c) for u, c in _tree_product(t, w, i, self.m).items())


def evaluate_expression(expr: Expression, m: int, multiplier=None, generators=None) -> LinComb:
    """Bottom-up evaluation of a product word in an arbitrary oracle.

    ``multiplier(x, y, i)`` multiplies basis keys; ``generators`` maps
    generator names to degree-1 basis keys.  Defaults to the labeled tree
    model, whose generators are the letters themselves.
    """
    default_oracle = None
    if multiplier is None or generators is None:
        names = sorted({g.name for g in _expression_gens(expr)})
        default_oracle = LabeledTreeOracle(m, tuple(names))
    if multiplier is None:
        multiplier = default_oracle.product
    if generators is None:
        generators = {name: default_oracle.generator(name) for name in default_oracle.alphabet}

    def walk(e: Expression) -> LinComb:
        if isinstance(e, Gen):
            if e.name not in generators:
                raise ValueError(f"unbound generator {e.name!r}")
            return LinComb.single(generators[e.name])
        if not 0 <= e.index <= m:
            raise ValueError(f"product index {e.index} out of range")
        return bilinear(walk(e.left), walk(e.right), lambda a, b: multiplier(a, b, e.index))

    return walk(expr)


def _expression_gens(expr: Expression):
    if isinstance(expr, Gen):
        yield expr
    else:
        yield from _expression_gens(expr.left)
        yield from _expression_gens(expr.right)


# ---------------------------------------------------------------------------
# Product oracles and the axiom checker


class TreeOracle:
    """The free algebra on one generator over the basis B(m)."""

    def __init__(self, m: int):
        self.m = m

    def degree(self, key: ColoredTree) -> int:
        return key.degree

    def basis(self, n: int) -> list[ColoredTree]:
        return enumerate_Bm(self.m, n)

    def product(self, x: ColoredTree, y: ColoredTree, i: int) -> LinComb:
        return _tree_product(x, y, i, self.m)


def _mul_key_lc(multiplier, x, lc: LinComb, i: int) -> LinComb:
    out = LinComb.zero()
    for u, c in lc.items():
        out = out + multiplier(x, u, i).scale(c)
    return out


def _mul_lc_key(multiplier, lc: LinComb, z, i: int) -> LinComb:
    out = LinComb.zero()
    for u, c in lc.items():
        out = out + multiplier(u, z, i).scale(c)
    return out


def _degree_triples(max_total_degree: int):
    for n1 in range(1, max_total_degree - 1):
        for n2 in range(1, max_total_degree - n1):
            n3_max = max_total_degree - n1 - n2
            for n3 in range(1, n3_max + 1):
                yield n1, n2, n3


def verify_dyck_axioms(
    m: int,
    max_total_degree: int,
    multiplier: Callable,
    basis_enumerator: Callable[[int], Iterable],
) -> CheckReport:
    """Exhaustively check the two relation families on basis triples.

    The interchange relation is checked for every pair i < j and the
    mixed-associativity sum for every i, over all triples of basis elements
    whose degrees sum to at most ``max_total_degree``.  Stops at the first
    counterexample.
    """
    report = CheckReport(name=f"axioms m={m} degree<={max_total_degree}")
    if max_total_degree < 3:
        raise ValueError("need max_total_degree >= 3")
    bases = {n: list(basis_enumerator(n)) for n in range(1, max_total_degree - 1)}
    for n1, n2, n3 in _degree_triples(max_total_degree):
        for x in bases[n1]:
            for y in bases[n2]:
                xy = {k: multiplier(x, y, k) for k in range(m + 1)}
                for z in bases[n3]:
                    yz = {k: multiplier(y, z, k) for k in range(m + 1)}
                    for i in range(m + 1):
                        for j in range(i + 1, m + 1):
                            report.checks += 1
                            lhs = _mul_key_lc(multiplier, x, yz[j], i)
                            rhs = _mul_lc_key(multiplier, xy[i], z, j)
                            if lhs != rhs:
                                report.fail(
                                    f"interchange fails at i={i} j={j} "
                                    f"x={x!r} y={y!r} z={z!r}"
                                )
                                return report
                    for i in range(m + 1):
                        report.checks += 1
                        lhs = LinComb.zero()
                        for j in range(i + 1):
                            lhs = lhs + _mul_key_lc(multiplier, x, yz[j], i)
                        rhs = LinComb.zero()
                        for k in range(i, m + 1):
                            rhs = rhs + _mul_lc_key(multiplier, xy[k], z, i)
                        if lhs != rhs:
                            report.fail(
                                f"mixed associativity fails at i={i} "
                                f"x={x!r} y={y!r} z={z!r}"
                            )
                            return report
    return report


def circ_basis_convert(products: list[Callable]) -> list[Callable]:
    """Partial-sum change of products: o_i = p_0 + ... + p_i."""

    def make(i: int):
        def circ(x, y):
            out = LinComb.zero()
            for j in range(i + 1):
                out = out + products[j](x, y)
            return out

        return circ

    return [make(i) for i in range(len(products))]


def verify_circ_relations(
    m: int,
    max_total_degree: int,
    multiplier: Callable,
    basis_enumerator: Callable[[int], Iterable],
) -> CheckReport:
    """The three relation families satisfied by the partial sums o_i."""
    report = CheckReport(name=f"partial-sum relations m={m} degree<={max_total_degree}")
    products = [
        (lambda i: (lambda x, y: multiplier(x, y, i)))(i) for i in range(m + 1)
    ]
    circ = circ_basis_convert(products)

    def mul_key_lc(i, x, lc):
        out = LinComb.zero()
        for u, c in lc.items():
            out = out + circ[i](x, u).scale(c)
        return out

    def mul_lc_key(i, lc, z):
        out = LinComb.zero()
        for u, c in lc.items():
            out = out + circ[i](u, z).scale(c)
        return out

    bases = {n: list(basis_enumerator(n)) for n in range(1, max_total_degree - 1)}
    for n1, n2, n3 in _degree_triples(max_total_degree):
        for x in bases[n1]:
            for y in bases[n2]:
                xy = {k: circ[k](x, y) for k in range(m + 1)}
                for z in bases[n3]:
                    yz = {k: circ[k](y, z) for k in range(m + 1)}
                    for i in range(m + 1):
                        for j in range(i + 1, m + 1):
                            report.checks += 1
                            lhs = mul_key_lc(i, x, yz[j]) - mul_lc_key(j, xy[i], z)
                            rhs = mul_key_lc(i, x, yz[j - 1]) - mul_lc_key(j - 1, xy[i], z)
                            if lhs != rhs:
                                report.fail(
                                    f"difference relation fails i={i} j={j} "
                                    f"x={x!r} y={y!r} z={z!r}"
                                )
                                return report
                    report.checks += 1
                    if mul_key_lc(0, x, yz[0]) != mul_lc_key(0, xy[m], z):
                        report.fail(f"bottom relation fails x={x!r} y={y!r} z={z!r}")
                        return report
                    for i in range(1, m + 1):
                        report.checks += 1
                        lhs = mul_key_lc(i, x, yz[i])
                        rhs = (
                            mul_lc_key(i, xy[m], z)
                            - mul_lc_key(i - 1, xy[m], z)
                            + mul_key_lc(i - 1, x, yz[i - 1])
                        )
                        if lhs != rhs:
                            report.fail(
                                f"diagonal relation fails i={i} x={x!r} y={y!r} z={z!r}"
                            )
                            return report
    return report
