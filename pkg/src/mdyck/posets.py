"""Dendriform posets: graded posets whose interval sums split associativity.

A dendriform poset is a graded family {P_n} of finite posets with four
graded products /, bot, top, \\ compatible with the orders, such that the
interval [x/y, x\\y] is the disjoint union of [x/y, x bot y] and
[x top y, x\\y], plus compatibility axioms.  The interval sums

    x succ y = sum over [x/y, x bot y],   x prec y = sum over [x top y, x\\y]

then make the span of the family a dendriform algebra, and the weakly
increasing m-chains (m-simplices) carry m+1 products obtained by letting a
suffix of the coordinates use the prec-type interval.

Four classical instances are provided: planar binary trees with the Tamari
order, permutations with the left weak order, surjections with the facial
order, and planar rooted trees with the order extending Tamari.  A small
declarative file format allows user-supplied families to be verified.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .exactlin import LinComb
from .orders import closure_from_pairs, closure_masks, mask_indices
from .reporting import CheckReport

SLASH = "/"
PERP = "bot"
TOP = "top"
BACKSLASH = "\\"
OPS = (SLASH, PERP, TOP, BACKSLASH)


class PosetFamily:
    """Graded poset with four graded products; orders are materialized."""

    name = "family"

    def __init__(self):
        self._elements: dict[int, tuple] = {}
        self._index: dict[int, dict] = {}
        self._up: dict[int, list[int]] = {}
        self._down: dict[int, list[int]] = {}

    # subclass hooks -------------------------------------------------------
    def _build_elements(self, n: int) -> list:
        raise NotImplementedError

    def _build_order(self, n: int, elements: list):
        """Return (up, down) bitmask lists for the given element list."""
        raise NotImplementedError

    def _product(self, op: str, x, y):
        raise NotImplementedError

    # public API -----------------------------------------------------------
    def elements(self, n: int) -> list:
        if n not in self._elements:
            elems = sorted(self._build_elements(n), key=self._sort_key)
            self._elements[n] = tuple(elems)
            self._index[n] = {x: i for i, x in enumerate(elems)}
            up, down = self._build_order(n, elems)
            self._up[n] = up
            self._down[n] = down
        return list(self._elements[n])

    @staticmethod
    def _sort_key(x):
        return x

    def degree(self, x) -> int:
        raise NotImplementedError

    def index(self, n: int, x) -> int:
        self.elements(n)
        return self._index[n][x]

    def leq(self, x, y) -> bool:
        n = self.degree(x)
        if n != self.degree(y):
            raise ValueError("comparing elements of different degrees")
        self.elements(n)
        return bool(self._up[n][self._index[n][x]] >> self._index[n][y] & 1)

    def interval(self, lo, hi) -> list:
        n = self.degree(lo)
        self.elements(n)
        idx = self._index[n]
        mask = self._up[n][idx[lo]] & self._down[n][idx[hi]]
        elems = self._elements[n]
        return [elems[i] for i in mask_indices(mask)]

    def prod(self, op: str, x, y):
        if op not in OPS:
            raise ValueError(f"unknown product {op!r}")
        result = self._product(op, x, y)
        if self.degree(result) != self.degree(x) + self.degree(y):
            raise ValueError(f"product {op} is not degree-additive")
        return result

    # induced dendriform structure ------------------------------------------
    def succ(self, x, y) -> LinComb:
        return LinComb(
            (u, 1) for u in self.interval(self.prod(SLASH, x, y), self.prod(PERP, x, y))
        )

    def prec(self, x, y) -> LinComb:
        return LinComb(
            (u, 1)
            for u in self.interval(self.prod(TOP, x, y), self.prod(BACKSLASH, x, y))
        )


# ---------------------------------------------------------------------------
# Planar rooted trees as nested tuples; () is the leaf.


def pt_leaves(t) -> int:
    if t == ():
        return 1
    return sum(pt_leaves(c) for c in t)


def pt_size(t) -> int:
    return pt_leaves(t) - 1


def pt_encode(t) -> str:
    if t == ():
        return "|"
    return "(" + " ".join(pt_encode(c) for c in t) + ")"


def pt_parse(text: str):
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "|":
            return ()
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r}")
        children = []
        while tokens[pos] != ")":
            children.append(parse())
        pos += 1
        if len(children) < 2:
            raise ValueError("internal vertices need at least two children")
        return tuple(children)

    result = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens")
    return result


def graft_leftmost(t, w):
    """t/w: replace the leftmost leaf of w by t."""
    if w == ():
        return t
    return (graft_leftmost(t, w[0]),) + w[1:]


def graft_rightmost(t, w):
    """t\\w: replace the rightmost leaf of t by w."""
    if t == ():
        return w
    return t[:-1] + (graft_rightmost(t[-1], w),)


@lru_cache(maxsize=None)
def _binary_trees(leaves: int) -> tuple:
    if leaves == 1:
        return ((),)
    out = []
    for left_leaves in range(1, leaves):
        for left in _binary_trees(left_leaves):
            for right in _binary_trees(leaves - left_leaves):
                out.append((left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def _planar_trees(leaves: int) -> tuple:
    # all planar rooted trees, every internal vertex of arity >= 2
    if leaves == 1:
        return ((),)
    out = []

    def extend(children, remaining):
        if remaining == 0:
            if len(children) >= 2:
                out.append(tuple(children))
            return
        # a child never absorbs every leaf: arity is at least two
        for take in range(1, min(remaining, leaves - 1) + 1):
            for child in _planar_trees(take):
                extend(children + [child], remaining - take)

    extend([], leaves)
    return tuple(out)


class TamariBinaryFamily(PosetFamily):
    """Planar binary trees with the rotation-generated Tamari order."""

    name = "binary"

    def degree(self, x) -> int:
        return pt_size(x)

    def _build_elements(self, n: int) -> list:
        return [t for t in _binary_trees(n + 1)]

    def _build_order(self, n: int, elements: list):
        index = {t: i for i, t in enumerate(elements)}
        pairs = []
        for t in elements:
            for t2 in _binary_rotations(t):
                pairs.append((index[t], index[t2]))
        return closure_masks(len(elements), pairs)

    def _product(self, op, x, y):
        if op == SLASH:
            return graft_leftmost(x, y)
        if op == BACKSLASH:
            return graft_rightmost(x, y)
        if op == PERP:
            return (graft_rightmost(x, y[0]), y[1])
        return (x[0], graft_leftmost(x[1], y))


def _binary_rotations(t):
    # right rotation ((a,b),c) -> (a,(b,c)) applied at any vertex
    if t == ():
        return
    left, right = t
    if left != ():
        yield (left[0], (left[1], right))
    for l2 in _binary_rotations(left):
        yield (l2, right)
    for r2 in _binary_rotations(right):
        yield (left, r2)


class PlanarTreeFamily(PosetFamily):
    """All planar rooted trees with the order extending the Tamari order.

    The order is generated, inside arbitrary subtree contexts, by
      (a) flattening the first child (when internal) goes up, and
      (b) grouping a proper suffix of at least two children goes up,
    then closed under transitivity.  Restricted to binary trees this is the
    Tamari order; on three leaves it places the corolla strictly between
    the two binary trees.  (Other pairings of the two generating moves
    either create cycles or break the interval-splitting axiom.)
    """

    name = "planar"

    def degree(self, x) -> int:
        return pt_size(x)

    def _build_elements(self, n: int) -> list:
        return [t for t in _planar_trees(n + 1) if t != ()]

    def _build_order(self, n: int, elements: list):
        index = {t: i for i, t in enumerate(elements)}
        pairs = []
        for t in elements:
            for t2 in _planar_upsteps(t):
                pairs.append((index[t], index[t2]))
        return closure_from_pairs(len(elements), pairs)

    def _product(self, op, x, y):
        if op == SLASH:
            return graft_leftmost(x, y)
        if op == BACKSLASH:
            return graft_rightmost(x, y)
        if op == PERP:
            return (graft_rightmost(x, y[0]),) + y[1:]
        return x[:-1] + (graft_leftmost(x[-1], y[0]),) + y[1:]


def _planar_upsteps(t):
    if t == ():
        return
    if t[0] != ():  # flatten the first child
        yield t[0] + t[1:]
    p = len(t)
    if p >= 3:  # group a proper suffix of length >= 2
        for i in range(1, p - 1):
            yield t[:i] + (t[i:],)
    for i in range(p):  # same moves inside any child
        for c2 in _planar_upsteps(t[i]):
            yield t[:i] + (c2,) + t[i + 1 :]


def tree_restriction(t, l: int):
    """Slice a planar tree along the path from boundary l to the root.

    Returns the pair of trees left and right of the slicing line; the
    boundary index runs from 0 (everything right) to pt_size(t)
    (everything left).  A grouping node that would be left with a single
    child collapses.
    """
    n = pt_size(t)
    if not 0 <= l <= n:
        raise ValueError(f"restriction index {l} out of range [0, {n}]")
    if l == 0:
        return ((), t)
    if l == n:
        return (t, ())
    cum = 0
    for k, child in enumerate(t, start=1):
        nk = pt_size(child)
        if cum + k <= l + 1 < cum + nk + k + 1:
            a, b = tree_restriction(child, l - (cum + k - 1))
            return (_vee(t[: k - 1] + (a,)), _vee((b,) + t[k:]))
        cum += nk
    raise AssertionError("no slicing child found")


def _vee(children: tuple):
    return children[0] if len(children) == 1 else children


# ---------------------------------------------------------------------------
# Surjections and permutations


def standardize(word) -> tuple[int, ...]:
    """The unique surjection with the same strict-comparison pattern."""
    word = tuple(word)
    ranks = {v: i + 1 for i, v in enumerate(sorted(set(word)))}
    return tuple(ranks[v] for v in word)


def is_surjection(word: tuple[int, ...]) -> bool:
    return bool(word) and set(word) == set(range(1, max(word) + 1))


def tau_merge(i: int, n: int):
    """Order-preserving surjection [n] -> [n-1] merging i and i+1."""

    def tau(j: int) -> int:
        return j if j <= i else j - 1

    return tau


def facial_covers(f: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Covers of the facial order: value merges and fiber splits."""
    out = []
    r = max(f)
    fibers = {i: [pos for pos, v in enumerate(f) if v == i] for i in range(1, r + 1)}
    for i in range(1, r):
        if max(fibers[i]) < min(fibers[i + 1]):
            tau = tau_merge(i, r)
            out.append(tuple(tau(v) for v in f))
    for i in range(1, r + 1):
        fiber = fibers[i]
        s = len(fiber)
        for k in range(1, s):
            raised = set(fiber[:k])
            g = []
            for pos, v in enumerate(f):
                if v < i:
                    g.append(v)
                elif v > i:
                    g.append(v + 1)
                elif pos in raised:
                    g.append(i + 1)
                else:
                    g.append(i)
            out.append(tuple(g))
    return sorted(set(out))


def surj_products(f: tuple[int, ...], g: tuple[int, ...], op: str, top_variant: str = "merged"):
    """The four graded products on surjections.

    The middle product ``top`` merges the two maximal values to the common
    top s+h-1 (default), or applies the raw shift formula followed by
    standardization (``top_variant="standardized"``).
    """
    s, h = max(f), max(g)
    if op == SLASH:
        word = f + tuple(v + s for v in g)
    elif op == BACKSLASH:
        word = tuple(v + h for v in f) + g
    elif op == PERP:
        word = tuple(v + h - 1 for v in f) + tuple(
            v if v < h else s + h for v in g
        )
    elif op == TOP:
        if top_variant == "merged":
            word = tuple(v if v < s else s + h - 1 for v in f) + tuple(
                v + s - 1 if v < h else s + h - 1 for v in g
            )
        elif top_variant == "standardized":
            word = standardize(
                tuple(v if v < s else s + h for v in f) + tuple(v + h for v in g)
            )
        else:
            raise ValueError(f"unknown top variant {top_variant!r}")
    else:
        raise ValueError(f"unknown product {op!r}")
    if not is_surjection(word):
        raise ValueError(f"product {op} produced a non-surjection {word}")
    return word


class SurjectionFamily(PosetFamily):
    """All surjective words with the facial order."""

    name = "surjections"

    def __init__(self, top_variant: str = "merged"):
        super().__init__()
        self.top_variant = top_variant

    def degree(self, x) -> int:
        return len(x)

    def _build_elements(self, n: int) -> list:
        out = []
        for word in itertools.product(range(1, n + 1), repeat=n):
            if is_surjection(word):
                out.append(word)
        return out

    def _build_order(self, n: int, elements: list):
        index = {x: i for i, x in enumerate(elements)}
        pairs = []
        for f in elements:
            for g in facial_covers(f):
                pairs.append((index[f], index[g]))
        return closure_masks(len(elements), pairs)

    def _product(self, op, x, y):
        return surj_products(x, y, op, self.top_variant)


def perm_inversions(p: tuple[int, ...]) -> frozenset:
    """Position inversions: pairs i < j with p(i) > p(j).

    Containment of these sets is the left weak order (covers multiply by a
    simple transposition on the left, i.e. swap two adjacent values).
    """
    n = len(p)
    return frozenset(
        (i, j) for i in range(n) for j in range(i + 1, n) if p[i] > p[j]
    )


class PermutationFamily(PosetFamily):
    """Permutations with the left weak order (inversion-set containment)."""

    name = "permutations"

    def degree(self, x) -> int:
        return len(x)

    def _build_elements(self, n: int) -> list:
        return [tuple(p) for p in itertools.permutations(range(1, n + 1))]

    def _build_order(self, n: int, elements: list):
        inv = [perm_inversions(p) for p in elements]
        count = len(elements)
        up = [0] * count
        for i in range(count):
            mask = 0
            for j in range(count):
                if inv[i] <= inv[j]:
                    mask |= 1 << j
            up[i] = mask
        down = [0] * count
        for i in range(count):
            for j in mask_indices(up[i]):
                down[j] |= 1 << i
        return up, down

    def _product(self, op, x, y):
        n, r = len(x), len(y)
        if op == SLASH:
            return x + tuple(v + n for v in y)
        if op == BACKSLASH:
            return tuple(v + r for v in x) + y
        if op == PERP:
            return tuple(v + r - 1 for v in x) + tuple(
                v if v < r else n + r for v in y
            )
        return tuple(v if v < n else n + r for v in x) + tuple(v + n - 1 for v in y)


def bruhat_restriction(max_degree: int = 4) -> PermutationFamily:
    """The permutation dendriform poset (the facial order restricted).

    The order is computed from inversion sets; agreement with the literal
    restriction of the facial order is verified by
    :func:`facial_restriction_agrees`.
    """
    family = PermutationFamily()
    family.max_degree = max_degree
    return family


def planar_tree_order(max_degree: int = 4) -> PlanarTreeFamily:
    family = PlanarTreeFamily()
    family.max_degree = max_degree
    return family


def facial_restriction_agrees(n: int) -> bool:
    """Left weak order == facial order restricted to permutations, degree n."""
    surj = SurjectionFamily()
    perms = PermutationFamily()
    sigma = [p for p in surj.elements(n) if max(p) == n]
    for p in sigma:
        for q in sigma:
            if surj.leq(p, q) != perms.leq(p, q):
                return False
    return True


# ---------------------------------------------------------------------------
# Axiom verification


def verify_dendriform_poset(family: PosetFamily, max_degree: int) -> CheckReport:
    """The five dendriform-poset conditions, exhaustively within a degree bound.

    Condition (3) is checked through its finite consequences: the matched
    cardinalities of the two re-association sets (full, succ- and prec-
    restricted) and the three dendriform axioms for the induced interval
    products.  Condition (5) is taken in the strong two-pair form used by
    the simplex construction: no element of a prec-type interval is below
    an element of a succ-type interval of the same bidegree.
    """
    report = CheckReport(name=f"dendriform poset {family.name} degree<={max_degree}")
    grades = {}
    for n in range(1, max_degree):
        for r in range(1, max_degree - n + 1):
            grades.setdefault(n + r, []).append((n, r))

    # (1) order compatibility: the outer products are poset morphisms and
    # the four interval bounds are consistently ordered for every pair.
    # (The middle products are not monotone maps even on the classical
    # instances, so no stronger monotonicity can be required of them.)
    for total, splits in sorted(grades.items()):
        for n, r in splits:
            xs = family.elements(n)
            ys = family.elements(r)
            x_pairs = [(x, x2) for x in xs for x2 in xs if family.leq(x, x2)]
            y_pairs = [(y, y2) for y in ys for y2 in ys if family.leq(y, y2)]
            for op in (SLASH, BACKSLASH):
                for x, x2 in x_pairs:
                    for y, y2 in y_pairs:
                        report.checks += 1
                        if not family.leq(family.prod(op, x, y), family.prod(op, x2, y2)):
                            report.fail(
                                f"condition 1 at degrees ({n},{r}): {op} not monotone "
                                f"on {x!r}<={x2!r}, {y!r}<={y2!r}"
                            )
                            return report
            for x in xs:
                for y in ys:
                    report.checks += 1
                    lo = family.prod(SLASH, x, y)
                    hi = family.prod(BACKSLASH, x, y)
                    if not (
                        family.leq(lo, family.prod(PERP, x, y))
                        and family.leq(family.prod(TOP, x, y), hi)
                        and family.leq(lo, hi)
                    ):
                        report.fail(
                            f"condition 1 at degrees ({n},{r}): bounds of "
                            f"{x!r}, {y!r} are not ordered"
                        )
                        return report

    # (2) interval splitting
    for total, splits in sorted(grades.items()):
        for n, r in splits:
            for x in family.elements(n):
                for y in family.elements(r):
                    report.checks += 1
                    big = set(family.interval(family.prod(SLASH, x, y), family.prod(BACKSLASH, x, y)))
                    lower = set(family.interval(family.prod(SLASH, x, y), family.prod(PERP, x, y)))
                    upper = set(family.interval(family.prod(TOP, x, y), family.prod(BACKSLASH, x, y)))
                    if lower & upper or lower | upper != big:
                        report.fail(
                            f"condition 2 at degrees ({n},{r}): interval of "
                            f"{x!r}, {y!r} does not split"
                        )
                        return report

    # (3) cardinality matches and induced dendriform axioms
    for n in range(1, max_degree - 1):
        for r in range(1, max_degree - n):
            for s in range(1, max_degree - n - r + 1):
                for x in family.elements(n):
                    for y in family.elements(r):
                        for z in family.elements(s):
                            report.checks += 1
                            if not _condition3_cardinalities(family, x, y, z):
                                report.fail(
                                    f"condition 3 cardinalities fail at "
                                    f"{x!r}, {y!r}, {z!r}"
                                )
                                return report
                            if not _dendriform_axioms(family, x, y, z):
                                report.fail(
                                    f"condition 3 dendriform axioms fail at "
                                    f"{x!r}, {y!r}, {z!r}"
                                )
                                return report

    # (4) decompositions are monotone
    for total, splits in sorted(grades.items()):
        for n, r in splits:
            members: dict = {}
            for x in family.elements(n):
                for y in family.elements(r):
                    for u in family.interval(family.prod(SLASH, x, y), family.prod(BACKSLASH, x, y)):
                        members.setdefault(u, []).append((x, y))
            elems = family.elements(total)
            for u in elems:
                for v in elems:
                    if u not in members or v not in members or not family.leq(u, v):
                        continue
                    for x1, y1 in members[u]:
                        for x2, y2 in members[v]:
                            report.checks += 1
                            if not (family.leq(x1, x2) and family.leq(y1, y2)):
                                report.fail(
                                    f"condition 4 at degrees ({n},{r}): {u!r}<={v!r} "
                                    f"but ({x1!r},{y1!r}) !<= ({x2!r},{y2!r})"
                                )
                                return report

    # (5) prec-type intervals never sit below succ-type intervals
    for total, splits in sorted(grades.items()):
        for n, r in splits:
            succ_side: set = set()
            prec_side: set = set()
            for x in family.elements(n):
                for y in family.elements(r):
                    succ_side.update(
                        family.interval(family.prod(SLASH, x, y), family.prod(PERP, x, y))
                    )
                    prec_side.update(
                        family.interval(family.prod(TOP, x, y), family.prod(BACKSLASH, x, y))
                    )
            for u in succ_side:
                for v in prec_side:
                    report.checks += 1
                    if family.leq(v, u):
                        report.fail(
                            f"condition 5 at degrees ({n},{r}): {v!r} <= {u!r}"
                        )
                        return report
    return report


def _condition3_cardinalities(family: PosetFamily, x, y, z) -> bool:
    def pairs(first_lo, first_hi, second):
        out = []
        for u in family.interval(first_lo, first_hi):
            lo, hi = second(u)
            for v in family.interval(lo, hi):
                out.append((u, v))
        return out

    left = pairs(
        family.prod(SLASH, x, y),
        family.prod(BACKSLASH, x, y),
        lambda u: (family.prod(SLASH, u, z), family.prod(BACKSLASH, u, z)),
    )
    right = pairs(
        family.prod(SLASH, y, z),
        family.prod(BACKSLASH, y, z),
        lambda u: (family.prod(SLASH, x, u), family.prod(BACKSLASH, x, u)),
    )
    if len(left) != len(right):
        return False
    left_succ = pairs(
        family.prod(SLASH, x, y),
        family.prod(BACKSLASH, x, y),
        lambda u: (family.prod(SLASH, u, z), family.prod(PERP, u, z)),
    )
    right_succ = pairs(
        family.prod(SLASH, y, z),
        family.prod(PERP, y, z),
        lambda u: (family.prod(SLASH, x, u), family.prod(PERP, x, u)),
    )
    if len(left_succ) != len(right_succ):
        return False
    left_prec = pairs(
        family.prod(TOP, x, y),
        family.prod(BACKSLASH, x, y),
        lambda u: (family.prod(TOP, u, z), family.prod(BACKSLASH, u, z)),
    )
    right_prec = pairs(
        family.prod(SLASH, y, z),
        family.prod(BACKSLASH, y, z),
        lambda u: (family.prod(TOP, x, u), family.prod(BACKSLASH, x, u)),
    )
    return len(left_prec) == len(right_prec)


def _dendriform_axioms(family: PosetFamily, x, y, z) -> bool:
    def ext_succ(a, lc: LinComb) -> LinComb:
        out = LinComb.zero()
        for u, c in lc.items():
            out = out + family.succ(a, u).scale(c)
        return out

    def ext_prec(a, lc: LinComb) -> LinComb:
        out = LinComb.zero()
        for u, c in lc.items():
            out = out + family.prec(a, u).scale(c)
        return out

    def ext_succ_r(lc: LinComb, c_) -> LinComb:
        out = LinComb.zero()
        for u, c in lc.items():
            out = out + family.succ(u, c_).scale(c)
        return out

    def ext_prec_r(lc: LinComb, c_) -> LinComb:
        out = LinComb.zero()
        for u, c in lc.items():
            out = out + family.prec(u, c_).scale(c)
        return out

    a1 = ext_succ(x, family.succ(y, z)) == ext_succ_r(
        family.succ(x, y) + family.prec(x, y), z
    )
    a2 = ext_succ(x, family.prec(y, z)) == ext_prec_r(family.succ(x, y), z)
    a3 = ext_prec(x, family.succ(y, z) + family.prec(y, z)) == ext_prec_r(
        family.prec(x, y), z
    )
    return a1 and a2 and a3


# ---------------------------------------------------------------------------
# m-simplices and their products


def ordm_simplices(family: PosetFamily, n: int, m: int) -> list[tuple]:
    """All weakly increasing m-chains in the degree-n poset."""
    if m < 1:
        raise ValueError("m must be >= 1")
    elems = family.elements(n)
    out: list[tuple] = []

    def extend(chain: tuple):
        if len(chain) == m:
            out.append(chain)
            return
        for x in elems:
            if family.leq(chain[-1], x):
                extend(chain + (x,))

    for x in elems:
        extend((x,))
    return out


def ordm_product(family: PosetFamily, xbar: tuple, ybar: tuple, i: int) -> LinComb:
    """The i-th simplex product: the last i coordinates use the prec interval.

    Terms are the weakly increasing chains (u_1, ..., u_m) with u_j in the
    succ-type interval [x_j/y_j, x_j bot y_j] for j <= m-i and in the
    prec-type interval [x_j top y_j, x_j \\ y_j] for j > m-i.
    """
    m = len(xbar)
    if len(ybar) != m:
        raise ValueError("chain lengths differ")
    if not 0 <= i <= m:
        raise ValueError("product index out of range")
    ranges = []
    for j in range(m):
        x, y = xbar[j], ybar[j]
        if j < m - i:
            lo, hi = family.prod(SLASH, x, y), family.prod(PERP, x, y)
        else:
            lo, hi = family.prod(TOP, x, y), family.prod(BACKSLASH, x, y)
        if family.leq(lo, hi):
            ranges.append(family.interval(lo, hi))
        else:
            ranges.append([])
    out = []

    def extend(chain: tuple, j: int):
        if j == m:
            out.append((chain, 1))
            return
        for u in ranges[j]:
            if not chain or family.leq(chain[-1], u):
                extend(chain + (u,), j + 1)

    extend((), 0)
    return LinComb(out)


class OrdmOracle:
    """Simplex model over a dendriform poset as a product oracle."""

    def __init__(self, family: PosetFamily, m: int):
        self.family = family
        self.m = m

    def degree(self, key: tuple) -> int:
        return self.family.degree(key[0])

    def basis(self, n: int) -> list[tuple]:
        return ordm_simplices(self.family, n, self.m)

    def product(self, x: tuple, y: tuple, i: int) -> LinComb:
        return ordm_product(self.family, x, y, i)


# ---------------------------------------------------------------------------
# Declarative poset-family files


class DeclaredFamily(PosetFamily):
    """Family read from the text format: degree blocks, covers, product table."""

    name = "declared"

    def __init__(self, degrees, covers, products):
        super().__init__()
        self._degree_of = {}
        self._declared = degrees
        self._covers = covers
        self._products = products
        self._position = {}
        for n, elems in degrees.items():
            for pos, e in enumerate(elems):
                self._degree_of[e] = n
                self._position[e] = pos

    def declared_degrees(self) -> list[int]:
        return sorted(self._declared)

    def degree(self, x) -> int:
        return self._degree_of[x]

    def _build_elements(self, n: int) -> list:
        if n not in self._declared:
            raise ValueError(f"degree {n} not declared")
        return list(self._declared[n])

    def _sort_key(self, x):
        # declaration order is the canonical order
        return self._position[x]

    def _build_order(self, n: int, elements: list):
        index = {x: i for i, x in enumerate(elements)}
        pairs = [
            (index[a], index[b])
            for a, b in self._covers.get(n, [])
        ]
        return closure_masks(len(elements), pairs)

    def _product(self, op, x, y):
        try:
            return self._products[(op, x, y)]
        except KeyError:
            raise ValueError(f"product {op} {x} {y} not declared") from None


def parse_poset_file(text: str) -> DeclaredFamily:
    """Parse the declarative format.

    Lines: ``degree N``, ``elem TOKEN``, ``cover A B`` (A covered by B,
    same degree), ``prod OP A B -> C`` with OP one of ``/ bot top \\``;
    blank lines and ``#`` comments are skipped.  Tokens must be globally
    unique.
    """
    degrees: dict[int, list] = {}
    covers: dict[int, list] = {}
    products: dict = {}
    degree_of: dict = {}
    current: int | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "degree":
            current = int(parts[1])
            degrees.setdefault(current, [])
        elif parts[0] == "elem":
            if current is None:
                raise ValueError("elem before degree")
            token = parts[1]
            if token in degree_of:
                raise ValueError(f"duplicate token {token!r}")
            degree_of[token] = current
            degrees[current].append(token)
        elif parts[0] == "cover":
            a, b = parts[1], parts[2]
            if degree_of.get(a) != degree_of.get(b) or a not in degree_of:
                raise ValueError(f"cover {a} {b}: unknown tokens or mixed degrees")
            covers.setdefault(degree_of[a], []).append((a, b))
        elif parts[0] == "prod":
            if len(parts) != 6 or parts[4] != "->":
                raise ValueError(f"malformed product line: {raw!r}")
            op, a, b, c = parts[1], parts[2], parts[3], parts[5]
            if op not in OPS:
                raise ValueError(f"unknown product symbol {op!r}")
            for token in (a, b, c):
                if token not in degree_of:
                    raise ValueError(f"unknown token {token!r}")
            if degree_of[c] != degree_of[a] + degree_of[b]:
                raise ValueError(f"product {raw!r} is not degree-additive")
            products[(op, a, b)] = c
        else:
            raise ValueError(f"unrecognized line: {raw!r}")
    return DeclaredFamily(degrees, covers, products)
