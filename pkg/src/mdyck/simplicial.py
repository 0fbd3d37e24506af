"""Face and degeneracy structure on the tower of product families.

Inserting a zero product at slot i of the family (*_0, ..., *_m) turns an
order-m algebra into an order-(m+1) algebra; merging two adjacent slots
into their sum goes the other way.  At the level of the slot vectors these
transformations satisfy the simplicial composition laws, which are checked
symbolically here.  The module also hosts the alternative graded bases
B(m, k) of the free algebra, the change-of-basis bijection between B(m)
and B(m, k), the degree-shifting bijection onto the root-k generators, and
the span check showing that the merged products are freely generated by
those generators.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .exactlin import LinComb, lincombs_to_matrix, matrix_rank
from .reporting import CheckReport
from .series import check_lemform, fuss_catalan
from .trees import (
    LEAF,
    LEFT,
    RIGHT,
    ColoredTree,
    TreeOracle,
    comb_decompose,
    enumerate_Bm,
    from_left_comb,
    from_right_comb,
    is_basis_Bm,
    tree_normal_form,
    verify_dyck_axioms,
)

# ---------------------------------------------------------------------------
# Slot calculus

ProductVector = tuple  # slots are formal sums of atoms: sorted tuples, () = 0


def symbolic_vector(m: int) -> ProductVector:
    """The generic slot vector (p0, ..., pm) with distinct atoms."""
    return tuple((f"p{i}",) for i in range(m + 1))


def _slot_sum(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


def face_transform(v: ProductVector, i: int) -> ProductVector:
    """Insert the zero product at slot i (length m+1 -> m+2)."""
    if not 0 <= i <= len(v):
        raise ValueError(f"face index {i} out of range [0, {len(v)}]")
    return v[:i] + ((),) + v[i:]


def degeneracy_transform(v: ProductVector, i: int) -> ProductVector:
    """Merge slots i and i+1 into their formal sum (length m+1 -> m)."""
    if not 0 <= i <= len(v) - 2:
        raise ValueError(f"degeneracy index {i} out of range [0, {len(v) - 2}]")
    return v[:i] + (_slot_sum(v[i], v[i + 1]),) + v[i + 2 :]


class SlotTransformedOracle:
    """Product oracle obtained by re-wiring slots of a base oracle.

    ``slots[j]`` lists the base product indices summed into the new slot j
    (empty tuple = the zero product).
    """

    def __init__(self, base, slots: tuple[tuple[int, ...], ...]):
        self.base = base
        self.slots = slots
        self.m = len(slots) - 1

    def degree(self, key) -> int:
        return self.base.degree(key)

    def basis(self, n: int):
        return self.base.basis(n)

    def product(self, x, y, i: int) -> LinComb:
        out = LinComb.zero()
        for j in self.slots[i]:
            out = out + self.base.product(x, y, j)
        return out


def face_oracle(base, i: int) -> SlotTransformedOracle:
    m = base.m
    slots = tuple((j,) for j in range(i)) + ((),) + tuple((j,) for j in range(i, m + 1))
    return SlotTransformedOracle(base, slots)


def degeneracy_oracle(base, i: int) -> SlotTransformedOracle:
    m = base.m
    slots = (
        tuple((j,) for j in range(i))
        + ((i, i + 1),)
        + tuple((j,) for j in range(i + 2, m + 1))
    )
    return SlotTransformedOracle(base, slots)


def verify_simplicial_identities(max_m: int) -> CheckReport:
    """Slot-calculus composition laws, plus the axiom transport on trees.

    The insert/merge composites are compared symbolically for every valid
    index pair and every m <= max_m; on top of that, the face and
    degeneracy transforms of the free tree structure (m = 1, 2) are run
    through the axiom checker for the shifted order at total degree <= 4.
    """
    report = CheckReport(name=f"simplicial identities m<={max_m}")
    for m in range(1, max_m + 1):
        v = symbolic_vector(m)
        length = m + 1
        # insert-insert: F_i F_j = F_{j+1} F_i for i <= j
        for j in range(length + 1):
            for i in range(j + 1):
                report.checks += 1
                if face_transform(face_transform(v, j), i) != face_transform(
                    face_transform(v, i), j + 1
                ):
                    report.fail(f"insert law fails m={m} i={i} j={j}")
        # merge-merge: S_i S_j = S_j S_{i+1} for i >= j
        for j in range(length - 1):
            for i in range(j, length - 2):
                report.checks += 1
                if degeneracy_transform(degeneracy_transform(v, j), i) != (
                    degeneracy_transform(degeneracy_transform(v, i + 1), j)
                ):
                    report.fail(f"merge law fails m={m} i={i} j={j}")
        # mixed laws on the inserted vector
        for i in range(length + 1):
            inserted = face_transform(v, i)
            for j in range(length):
                report.checks += 1
                got = degeneracy_transform(inserted, j)
                if j in (i - 1, i):
                    expected = v
                elif j < i - 1:
                    expected = face_transform(degeneracy_transform(v, j), i - 1)
                else:
                    expected = face_transform(degeneracy_transform(v, j - 1), i)
                if got != expected:
                    report.fail(f"mixed law fails m={m} i={i} j={j}")
    # functor-level checks on the free tree algebra
    for m in (1, 2):
        base = TreeOracle(m)
        for i in range(m + 2):
            oracle = face_oracle(base, i)
            sub = verify_dyck_axioms(m + 1, 4, oracle.product, oracle.basis)
            sub.name = f"face transform i={i} of tree products m={m}"
            report.merge(sub)
        for i in range(m):
            oracle = degeneracy_oracle(base, i)
            sub = verify_dyck_axioms(m - 1, 4, oracle.product, oracle.basis)
            sub.name = f"degeneracy transform i={i} of tree products m={m}"
            report.merge(sub)
    return report


# ---------------------------------------------------------------------------
# The alternative bases B(m, k)


def is_basis_Bmk(t: ColoredTree, m: int, k: int) -> bool:
    """Membership in the k-th alternative basis.

    In every subtree, writing its left-spine colors (i_1, i_2, ...) and
    right-spine colors (j_1, j_2, ...) from the root:
      * if i_1 != k then i_2 = k or i_2 > i_1,
      * if i_1 = k then all further left-spine colors exceed k and all
        further right-spine colors are at most k.
    """
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    for v in t.subtrees():
        if v.color > m:
            raise ValueError(f"color {v.color} exceeds m={m}")
        lc = comb_decompose(v, LEFT).colors
        if lc[0] != k:
            if len(lc) >= 2 and not (lc[1] == k or lc[1] > lc[0]):
                return False
        else:
            if any(c <= k for c in lc[1:]):
                return False
            rc = comb_decompose(v, RIGHT).colors
            if any(c > k for c in rc[1:]):
                return False
    return True


@lru_cache(maxsize=None)
def _all_colored_trees(m: int, n: int) -> tuple[ColoredTree, ...]:
    if n == 1:
        return (LEAF,)
    out = []
    for n_left in range(1, n):
        for left in _all_colored_trees(m, n_left):
            for right in _all_colored_trees(m, n - n_left):
                for color in range(m + 1):
                    out.append(ColoredTree(color, left, right))
    return tuple(out)


def enumerate_Bmk(m: int, k: int, n: int) -> list[ColoredTree]:
    out = [t for t in _all_colored_trees(m, n) if is_basis_Bmk(t, m, k)]
    out.sort(key=ColoredTree.sort_key)
    return out


_THETA_MEMO: dict = {}


def theta_basis(t: ColoredTree, m: int, k: int) -> ColoredTree:
    """The change-of-basis bijection from B(m) onto B(m, k).

    Structural recursion on the grafting decomposition; the image tree
    denotes the same algebra element, which is checked against the path
    model in the test suite.
    """
    if not is_basis_Bm(t, m):
        raise ValueError("input is not a basis tree")
    return _theta(t, m, k)


def _theta(t: ColoredTree, m: int, k: int) -> ColoredTree:
    if t.is_leaf:
        return t
    key = (t, m, k)
    hit = _THETA_MEMO.get(key)
    if hit is not None:
        return hit
    color = t.color
    if color != k:
        result = ColoredTree(color, _theta(t.left, m, k), _theta(t.right, m, k))
    else:
        spine = comb_decompose(t, RIGHT)
        jcolors, jhangs = spine.colors, spine.subtrees  # jcolors[0] == k
        bad = [idx for idx in range(1, len(jcolors)) if jcolors[idx] > k]
        if not bad:
            result = ColoredTree(k, _theta(t.left, m, k), _theta(t.right, m, k))
        else:
            # slide the k-node past the first larger right-spine color: the
            # left comb of that node absorbs the skipped prefix and the old
            # left child, preserving the algebra element
            l0 = bad[0]
            upper = comb_decompose(jhangs[l0], LEFT)
            skipped = from_right_comb(jcolors[1:l0], jhangs[1:l0])
            lower = comb_decompose(t.left, LEFT)
            big = from_left_comb(
                upper.colors + (k,) + lower.colors,
                tuple(_theta(x, m, k) for x in upper.subtrees)
                + (_theta(skipped, m, k),)
                + tuple(_theta(x, m, k) for x in lower.subtrees),
            )
            rest = from_right_comb(jcolors[l0 + 1 :], jhangs[l0 + 1 :])
            result = ColoredTree(jcolors[l0], big, _theta(rest, m, k))
    _THETA_MEMO[key] = result
    return result


def theta_basis_inverse(t: ColoredTree, m: int, k: int) -> ColoredTree:
    """Inverse change of basis: evaluate the grafting word and read off
    the unique basis tree it denotes."""
    if not is_basis_Bmk(t, m, k):
        raise ValueError("input is not in the alternative basis")
    expansion = tree_normal_form(t, m)
    items = list(expansion.items())
    if len(items) != 1 or items[0][1] != 1:
        raise ValueError("alternative-basis tree does not denote a basis tree")
    return items[0][0]


def generators_Amk(m: int, k: int, n: int) -> list[ColoredTree]:
    """Degree-n generators: alternative-basis trees that are the leaf or
    carry root color k."""
    if not 0 <= k < m:
        raise ValueError("need 0 <= k < m")
    if n == 1:
        return [LEAF]
    return [t for t in enumerate_Bmk(m, k, n) if t.color == k]


def little_theta(t: ColoredTree, m: int, k: int) -> ColoredTree:
    """Degree-raising bijection from B(m, k) onto the root-k generators.

    The image is always a grafting A v_k B where A collects the part of t
    with colors above k and B the part with colors at most k:

      * root color h > k, no k on the left spine: (t, leaf);
      * root color h > k, left spine split by k: A = comb below the k,
        B = subtree at the k;
      * root color h <= k, right spine bounded by k: (leaf, t);
      * otherwise split the right spine at its first color above k, push
        any k-rooted part of that subtree's left comb back into B.
    """
    if not is_basis_Bmk(t, m, k):
        raise ValueError("input is not in the alternative basis")
    if t.is_leaf:
        return ColoredTree(k, LEAF, LEAF)
    if t.color > k:
        dec = comb_decompose(t, LEFT)
        if k not in dec.colors:
            return ColoredTree(k, t, LEAF)
        s = dec.colors.index(k)
        upper = from_left_comb(dec.colors[:s], dec.subtrees[:s])
        lower = from_left_comb(dec.colors[s:], dec.subtrees[s:])
        return ColoredTree(k, upper, lower)
    dec = comb_decompose(t, RIGHT)
    above = [idx for idx in range(len(dec.colors)) if dec.colors[idx] > k]
    if not above:
        return ColoredTree(k, LEAF, t)
    s = above[0]
    suffix = from_right_comb(dec.colors[s:], dec.subtrees[s:])
    left_dec = comb_decompose(suffix, LEFT)
    if k in left_dec.colors:
        pos = left_dec.colors.index(k)
        high = from_left_comb(left_dec.colors[:pos], left_dec.subtrees[:pos])
        low = from_left_comb(left_dec.colors[pos:], left_dec.subtrees[pos:])
        low_dec = comb_decompose(low, RIGHT)
        tail = from_right_comb(
            dec.colors[:s] + low_dec.colors, dec.subtrees[:s] + low_dec.subtrees
        )
        return ColoredTree(k, high, tail)
    tail = from_right_comb(dec.colors[:s], dec.subtrees[:s])
    return ColoredTree(k, suffix, tail)


def little_theta_inverse(u: ColoredTree, m: int, k: int) -> ColoredTree:
    """Inverse of :func:`little_theta` on the root-k generators."""
    if u.is_leaf or u.color != k:
        raise ValueError("input is not a root-k generator")
    a, b = u.left, u.right
    if a.is_leaf:
        return b
    if b.is_leaf:
        return a
    if b.color == k:
        da = comb_decompose(a, LEFT)
        db = comb_decompose(b, LEFT)
        return from_left_comb(da.colors + db.colors, da.subtrees + db.subtrees)
    db = comb_decompose(b, RIGHT)
    if k in db.colors:
        pos = db.colors.index(k)
        low = from_right_comb(db.colors[pos:], db.subtrees[pos:])
        da = comb_decompose(a, LEFT)
        dlow = comb_decompose(low, LEFT)
        suffix = from_left_comb(da.colors + dlow.colors, da.subtrees + dlow.subtrees)
        ds = comb_decompose(suffix, RIGHT)
        return from_right_comb(
            db.colors[:pos] + ds.colors, db.subtrees[:pos] + ds.subtrees
        )
    ds = comb_decompose(a, RIGHT)
    return from_right_comb(db.colors + ds.colors, db.subtrees + ds.subtrees)


def merged_product(oracle: TreeOracle, k: int) -> Callable:
    """The degeneracy products: slot k and k+1 merged, later slots shifted."""

    def product(x, y, j: int) -> LinComb:
        if j < k:
            return oracle.product(x, y, j)
        if j == k:
            return oracle.product(x, y, k) + oracle.product(x, y, k + 1)
        return oracle.product(x, y, j + 1)

    return product


def verify_Sk_freeness(
    m: int,
    k: int,
    max_degree: int,
    generators_fn: Callable = generators_Amk,
) -> CheckReport:
    """The merged products are freely generated by the root-k generators.

    Checks (a) generation: the subalgebra generated by the graded generator
    set under the merged products spans every homogeneous component up to
    ``max_degree`` (exact rational rank), and (b) the dimension match with
    the free algebra on that generator set, which is the series
    substitution identity delegated to the series module.
    """
    if not 0 <= k < m:
        raise ValueError("need 0 <= k < m")
    report = CheckReport(name=f"freeness of merged products m={m} k={k}")
    oracle = TreeOracle(m)
    product = merged_product(oracle, k)
    for n in range(1, max_degree + 1):
        dim = fuss_catalan(m, n)
        basis = enumerate_Bm(m, n)
        vectors = [tree_normal_form(t, m) for t in generators_fn(m, k, n)]
        for n1 in range(1, n):
            for t in enumerate_Bm(m, n1):
                for w in enumerate_Bm(m, n - n1):
                    for j in range(m):
                        vectors.append(product(t, w, j))
        report.checks += 1
        rank = matrix_rank(lincombs_to_matrix(vectors, basis)) if vectors else 0
        if rank != dim:
            report.fail(
                f"degree {n}: generated subspace has rank {rank}, expected {dim}"
            )
            return report
        count = len(generators_fn(m, k, n))
        expected = 1 if n == 1 else fuss_catalan(m, n - 1)
        report.checks += 1
        if count != expected:
            report.fail(
                f"degree {n}: generator count {count}, expected {expected}"
            )
            return report
    report.merge(check_lemform(m, m - 1, 10))
    return report
