"""m-Dyck paths and the products indexed by weak compositions.

An m-Dyck path of size n uses up steps (m, m) and down steps (1, -1),
starts and ends on the x-axis and never goes below it.  It is encoded by
its level sequence (L_1, ..., L_n): L_k down steps immediately follow the
k-th up step.  The space spanned by all m-Dyck paths carries m+1 products
*_0, ..., *_m; the product P *_i Q is a sum of concatenations P *_lam Q
over the weak compositions lam of L(P) whose last part cuts a suffix of
the top color word with maximal letter multiplicity exactly i.  Together
these products make the span the free order-m Dyck algebra on the single
path of size one, which is the bridge to the colored-tree model.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactlin import LinComb, bilinear
from .trees import ColoredTree, enumerate_Bm

UP = "u"
DOWN = "d"

# weak compositions (lambda_0, ..., lambda_r) of L(P) are plain int tuples
WeakComposition = tuple[int, ...]


@dataclass(frozen=True)
class DyckPath:
    """Level-sequence encoding of an m-Dyck path.

    Invariants: prefix sums never exceed m*j (the path stays above the
    axis) and the total equals m*n (it ends on the axis).
    """

    m: int
    levels: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if not self.levels:
            raise ValueError("empty level sequence")
        total = 0
        for j, lv in enumerate(self.levels, start=1):
            if lv < 0:
                raise ValueError("negative level count")
            total += lv
            if total > self.m * j:
                raise ValueError(
                    f"prefix sum {total} exceeds {self.m}*{j}: path dips below the axis"
                )
        if total != self.m * len(self.levels):
            raise ValueError(
                f"levels sum to {total}, expected {self.m * len(self.levels)}"
            )

    @property
    def size(self) -> int:
        return len(self.levels)

    @property
    def last_level(self) -> int:
        return self.levels[-1]

    def steps(self) -> tuple[str, ...]:
        out = []
        for lv in self.levels:
            out.append(UP)
            out.extend(DOWN * lv)
        return tuple(out)

    def is_prime(self) -> bool:
        """No proper return to the axis: prefix sums stay strictly below m*j."""
        total = 0
        for j, lv in enumerate(self.levels[:-1], start=1):
            total += lv
            if total == self.m * j:
                return False
        return True

    def sort_key(self):
        return (self.size, self.levels)

    def __lt__(self, other: "DyckPath"):
        return self.sort_key() < other.sort_key()

    def encode(self) -> str:
        return ",".join(str(v) for v in self.levels)

    def __repr__(self):
        return f"(({self.encode()}))"


def rho(m: int) -> DyckPath:
    """The unique path of size one: one up step, m down steps."""
    return DyckPath(m, (m,))


def validate_path(m: int, levels) -> DyckPath:
    return DyckPath(m, tuple(int(v) for v in levels))


def parse_path(m: int, text: str) -> DyckPath:
    return validate_path(m, (tok for tok in text.split(",") if tok.strip() != ""))


@lru_cache(maxsize=None)
def _enumerate_levels(m: int, n: int, remaining_slack: int) -> tuple[tuple[int, ...], ...]:
    # sequences of n further levels given current height remaining_slack = m*j - sum
    if n == 0:
        return ((),) if remaining_slack == 0 else ()
    out = []
    for lv in range(remaining_slack + m + 1):
        for rest in _enumerate_levels(m, n - 1, remaining_slack + m - lv):
            out.append((lv,) + rest)
    return tuple(out)


def enumerate_paths(m: int, n: int) -> list[DyckPath]:
    """All m-Dyck paths of size n in lexicographic level order."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    return [DyckPath(m, levels) for levels in _enumerate_levels(m, n, 0)]


def concat_i(P: DyckPath, Q: DyckPath, i: int) -> DyckPath:
    """Insert Q just before the last i down steps of P."""
    if P.m != Q.m:
        raise ValueError("mixed m")
    if not 0 <= i <= P.last_level:
        raise ValueError(f"concatenation index {i} out of range [0, {P.last_level}]")
    levels = (
        P.levels[:-1]
        + (P.last_level - i,)
        + Q.levels[:-1]
        + (Q.last_level + i,)
    )
    return DyckPath(P.m, levels)


def prime_factors(P: DyckPath) -> list[DyckPath]:
    """The unique factorization P = P_1 x_0 ... x_0 P_r into prime paths."""
    out = []
    total = 0
    start = 0
    for j, lv in enumerate(P.levels, start=1):
        total += lv
        if total == P.m * j:
            out.append(DyckPath(P.m, P.levels[start:j]))
            start = j
    return out


@dataclass(frozen=True)
class Coloring:
    """Colors of the down steps, left to right; each color occurs m times."""

    colors: tuple[int, ...]


def _color_steps(steps: tuple[str, ...], m: int) -> list[int]:
    # Peel the first up step; its m matching down steps (the first steps to
    # reach heights m-1, ..., 0 relative to the start) get color 1, and the
    # m+1 sub-paths they delimit are colored recursively and shifted.
    if not steps:
        return []
    assert steps[0] == UP
    segments: list[list[str]] = []
    current: list[str] = []
    order: list[int] = []  # -1 for a matching step, else segment index
    height = m
    matched = 0
    for step in steps[1:]:
        if step == UP:
            height += m
            current.append(step)
        else:
            height -= 1
            if matched < m and height == m - matched - 1:
                segments.append(current)
                current = []
                matched += 1
                order.append(-1)
            else:
                current.append(step)
                order.append(len(segments))
    segments.append(current)
    assert matched == m
    seg_colors = [_color_steps(tuple(seg), m) for seg in segments]
    seg_sizes = [sum(1 for s in seg if s == UP) for seg in segments]
    offsets = []
    acc = 1
    for size in seg_sizes:
        offsets.append(acc)
        acc += size
    out = []
    positions = [0] * len(segments)
    for tag in order:
        if tag == -1:
            out.append(1)
        else:
            out.append(seg_colors[tag][positions[tag]] + offsets[tag])
            positions[tag] += 1
    return out


@lru_cache(maxsize=None)
def standard_coloring(P: DyckPath) -> Coloring:
    return Coloring(tuple(_color_steps(P.steps(), P.m)))


def top_word(P: DyckPath) -> tuple[int, ...]:
    """Colors of the top-level block (the trailing run of down steps)."""
    colors = standard_coloring(P).colors
    L = P.last_level
    return colors[len(colors) - L:]


def _weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _suffix_max_multiplicity(omega: tuple[int, ...]) -> list[int]:
    # value at l = maximal letter multiplicity among the last l letters
    counts: dict[int, int] = {}
    out = [0]
    best = 0
    for letter in reversed(omega):
        counts[letter] = counts.get(letter, 0) + 1
        best = max(best, counts[letter])
        out.append(best)
    return out


def lambda_sets(P: DyckPath, r: int, i: int) -> list[WeakComposition]:
    """Weak compositions of L(P) with r+1 parts in the multiplicity class i.

    The last part lam_r cuts a suffix of the top word in which every color
    appears at most i times and some color exactly i times; i = 0 forces
    the empty suffix.
    """
    if not 0 <= i <= P.m:
        raise ValueError("class index out of range")
    if r < 0:
        raise ValueError("need r >= 0")
    L = P.last_level
    mult = _suffix_max_multiplicity(top_word(P))
    out = []
    for last in range(L + 1):
        if mult[last] != i:
            continue
        for prefix in _weak_compositions(L - last, r):
            out.append(prefix + (last,))
    out.sort()
    return out


def star_lambda(P: DyckPath, Q: DyckPath, lam: WeakComposition) -> DyckPath:
    """The nested concatenation of P with the prime factors of Q along lam."""
    factors = prime_factors(Q)
    if len(lam) != len(factors) + 1:
        raise ValueError(
            f"composition has {len(lam)} parts, expected {len(factors) + 1}"
        )
    if sum(lam) != P.last_level:
        raise ValueError("composition must sum to the last level of P")
    result = P
    suffix = sum(lam) - lam[0]
    for idx, factor in enumerate(factors, start=1):
        result = concat_i(result, factor, suffix)
        suffix -= lam[idx]
    return result


def path_product(P: DyckPath, Q: DyckPath, i: int) -> LinComb:
    """P *_i Q: the sum of P *_lam Q over the class-i compositions."""
    if P.m != Q.m:
        raise ValueError("mixed m")
    factors = prime_factors(Q)
    out = LinComb.zero()
    for lam in lambda_sets(P, len(factors), i):
        out = out + LinComb.single(star_lambda(P, Q, lam))
    return out


class PathOracle:
    """The path model as a product oracle."""

    def __init__(self, m: int):
        self.m = m

    def degree(self, key: DyckPath) -> int:
        return key.size

    def basis(self, n: int) -> list[DyckPath]:
        return enumerate_paths(self.m, n)

    def product(self, x: DyckPath, y: DyckPath, i: int) -> LinComb:
        return path_product(x, y, i)


# pure function of the key; same cache contract as the tree products
_PHI_MEMO: dict[tuple[ColoredTree, int], LinComb] = {}


def phi(t: ColoredTree, m: int) -> LinComb:
    """The canonical isomorphism from basis trees to the path model.

    Evaluates the grafting structure with leaf -> rho(m) and v_i -> *_i.
    Accepts any colored tree (not only basis trees), which is how elements
    written in the alternative bases are compared across models.
    """
    key = (t, m)
    hit = _PHI_MEMO.get(key)
    if hit is not None:
        return hit
    if t.is_leaf:
        result = LinComb.single(rho(m))
    else:
        result = bilinear(
            phi(t.left, m), phi(t.right, m), lambda a, b: path_product(a, b, t.color)
        )
    _PHI_MEMO[key] = result
    return result


def phi_matrix_full_rank(m: int, n: int) -> bool:
    """Whether {phi(t) : t basis tree of degree n} spans the paths of size n."""
    from .exactlin import has_full_rank, lincombs_to_matrix

    trees = enumerate_Bm(m, n)
    paths = enumerate_paths(m, n)
    if len(trees) != len(paths):
        return False
    vectors = [phi(t, m) for t in trees]
    return has_full_rank(lincombs_to_matrix(vectors, paths))


def decompose_smaller(P: DyckPath) -> tuple[DyckPath, DyckPath, int]:
    """Exhibit P inside a product of two strictly smaller paths.

    Returns (R1, R2, i) with P occurring (with coefficient one) in
    R1 *_i R2.  Non-prime paths split off their last prime factor with
    i = 0; a prime path peels the sub-path delimited by its last two
    color-1 blocks.
    """
    if P.size < 2:
        raise ValueError("size-1 path cannot be decomposed")
    factors = prime_factors(P)
    if len(factors) > 1:
        R1 = factors[0]
        for f in factors[1:-1]:
            R1 = concat_i(R1, f, 0)
        return R1, factors[-1], 0
    colors = standard_coloring(P).colors
    steps = P.steps()
    down_positions = [idx for idx, s in enumerate(steps) if s == DOWN]
    one_downs = [idx for idx, c in enumerate(colors) if c == 1]
    trailing = sum(1 for c in top_word(P) if c == 1)
    # steps strictly between the last color-1 step outside the top block
    # (or the initial up step) and the trailing color-1 run
    if trailing == P.m:
        start = 1
    else:
        start = down_positions[one_downs[P.m - trailing - 1]] + 1
    cut = down_positions[len(colors) - trailing]
    middle = steps[start:cut]
    outer = steps[:start] + steps[cut:]
    return _path_from_steps(P.m, outer), _path_from_steps(P.m, middle), trailing


def _path_from_steps(m: int, steps: tuple[str, ...]) -> DyckPath:
    levels = []
    for s in steps:
        if s == UP:
            levels.append(0)
        else:
            levels[-1] += 1
    return DyckPath(m, tuple(levels))


# ---------------------------------------------------------------------------
# Composition-data bijections underlying the relation proofs

def recompose_distinct(P: DyckPath, lam: tuple[int, ...], tau: tuple[int, ...]):
    """(lam, tau) -> (lam, delta): absorb lam_r into the last part of tau.

    Re-associates x *_i (y *_j z) = (x *_i y) *_j z at the level of
    composition data (i < j).  Inverse: :func:`recompose_distinct_inv`.
    """
    return lam, tau[:-1] + (tau[-1] + lam[-1],)


def recompose_distinct_inv(P: DyckPath, lam: tuple[int, ...], delta: tuple[int, ...]):
    return lam, delta[:-1] + (delta[-1] - lam[-1],)


def recompose_zero(P: DyckPath, Q: DyckPath, r: int, lam: tuple[int, ...], tau: tuple[int, ...]):
    """(lam, tau) with tau in class 0 -> (gamma, delta) with delta_s <= gamma_r.

    ``r`` is the number of prime factors of Q; lam has r + s - j_tau + 1
    parts where j_tau is the position of the last positive part of tau.
    """
    s = len(tau) - 1
    j_tau = max(j for j in range(s) if tau[j] > 0)
    gamma = lam[: r] + (sum(lam[r:]),)
    delta = tau[:j_tau] + (tau[j_tau] + lam[r],) + lam[r + 1:]
    return gamma, delta


def recompose_zero_inv(P: DyckPath, Q: DyckPath, r: int, gamma: tuple[int, ...], delta: tuple[int, ...]):
    s = len(delta) - 1
    j0 = max(j for j in range(s) if sum(delta[j:]) > gamma[r])
    lam = gamma[:r] + (gamma[r] - sum(delta[j0 + 1:]),) + delta[j0 + 1:]
    tau = delta[:j0] + (sum(delta[j0:]) - gamma[r],) + (0,) * (s - j0)
    return lam, tau


def recompose_repeated(P: DyckPath, lam: tuple[int, ...], tau: tuple[int, ...]):
    """(lam, tau) with tau in a positive class <= i -> (lam, delta), delta_s > lam_r."""
    return lam, tau[:-1] + (tau[-1] + lam[-1],)


def recompose_repeated_inv(P: DyckPath, gamma: tuple[int, ...], delta: tuple[int, ...]):
    return gamma, delta[:-1] + (delta[-1] - gamma[-1],)
