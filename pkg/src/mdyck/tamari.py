"""The m-Tamari order on m-Dyck paths and its interval description of products.

The covering relation rotates a down step past the excursion of the up step
that follows it.  The resulting poset is a lattice whose intervals describe
every product on the path model: P *_i Q is the sum of all paths between a
lower bound P /_i Q and an upper bound P \\_i Q, read off from suffix
statistics of the top color word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orders import closure_masks, mask_indices
from .paths import (
    DOWN,
    UP,
    DyckPath,
    _path_from_steps,
    concat_i,
    enumerate_paths,
    path_product,
    prime_factors,
    standard_coloring,
    top_word,
)
from .reporting import CheckReport
from .series import fuss_catalan


def covers(P: DyckPath) -> list[DyckPath]:
    """All rotations P -> P_(d): move a pre-up down step past the excursion.

    For each down step d immediately followed by an up step u, the excursion
    of u is the minimal sub-path from u back down to u's starting height and
    d is re-attached after its final (matching) down step.
    """
    steps = P.steps()
    out = []
    for pos in range(len(steps) - 1):
        if steps[pos] != DOWN or steps[pos + 1] != UP:
            continue
        height = 0
        for s in steps[: pos + 1]:
            height += P.m if s == UP else -1
        base = height
        h = height
        end = None
        for q in range(pos + 1, len(steps)):
            h += P.m if steps[q] == UP else -1
            if h == base:
                end = q
                break
        assert end is not None and steps[end] == DOWN
        rotated = steps[:pos] + steps[pos + 1 : end + 1] + (DOWN,) + steps[end + 1 :]
        out.append(_path_from_steps(P.m, rotated))
    out.sort(key=DyckPath.sort_key)
    return out


@dataclass(frozen=True)
class TamariLattice:
    """Materialized m-Tamari order on the paths of one size."""

    m: int
    n: int
    elements: tuple[DyckPath, ...]
    index: dict
    up: tuple[int, ...]
    down: tuple[int, ...]
    cover_pairs: tuple[tuple[int, int], ...]

    def leq(self, P: DyckPath, Q: DyckPath) -> bool:
        return bool(self.up[self.index[P]] >> self.index[Q] & 1)

    def interval(self, P: DyckPath, Q: DyckPath) -> list[DyckPath]:
        if not self.leq(P, Q):
            raise ValueError(f"{P!r} is not below {Q!r}")
        mask = self.up[self.index[P]] & self.down[self.index[Q]]
        return [self.elements[i] for i in mask_indices(mask)]

    def interval_count(self) -> int:
        return sum(self.up[i].bit_count() for i in range(len(self.elements)))

    def minimum(self) -> DyckPath:
        full = (1 << len(self.elements)) - 1
        mins = [i for i in range(len(self.elements)) if self.up[i] == full]
        if len(mins) != 1:
            raise ValueError("no unique minimum")
        return self.elements[mins[0]]

    def maximum(self) -> DyckPath:
        full = (1 << len(self.elements)) - 1
        maxs = [i for i in range(len(self.elements)) if self.down[i] == full]
        if len(maxs) != 1:
            raise ValueError("no unique maximum")
        return self.elements[maxs[0]]

    def meet(self, P: DyckPath, Q: DyckPath) -> DyckPath:
        """Greatest common lower bound (experimental: existence is checked)."""
        common = self.down[self.index[P]] & self.down[self.index[Q]]
        # the meet is the lower bound that dominates all other lower bounds
        best = [i for i in mask_indices(common) if common & ~self.down[i] == 0]
        if len(best) != 1:
            raise ValueError("meet does not exist or is not unique")
        return self.elements[best[0]]

    def join(self, P: DyckPath, Q: DyckPath) -> DyckPath:
        common = self.up[self.index[P]] & self.up[self.index[Q]]
        best = [i for i in mask_indices(common) if common & ~self.up[i] == 0]
        if len(best) != 1:
            raise ValueError("join does not exist or is not unique")
        return self.elements[best[0]]


_LATTICE_CACHE: dict[tuple[int, int], TamariLattice] = {}

DEFAULT_CAP = 20000


def build_lattice(m: int, n: int, cap: int = DEFAULT_CAP) -> TamariLattice:
    if fuss_catalan(m, n) > cap:
        raise ValueError(f"d({m},{n}) = {fuss_catalan(m, n)} exceeds cap {cap}")
    key = (m, n)
    hit = _LATTICE_CACHE.get(key)
    if hit is not None:
        return hit
    elements = tuple(enumerate_paths(m, n))
    index = {p: i for i, p in enumerate(elements)}
    pairs = []
    for i, p in enumerate(elements):
        for q in covers(p):
            pairs.append((i, index[q]))
    up, down = closure_masks(len(elements), pairs)
    lattice = TamariLattice(m, n, elements, index, tuple(up), tuple(down), tuple(pairs))
    _LATTICE_CACHE[key] = lattice
    return lattice


def interval(lattice: TamariLattice, P: DyckPath, Q: DyckPath) -> list[DyckPath]:
    return lattice.interval(P, Q)


def c_bound(P: DyckPath, i: int) -> int:
    """Minimal suffix length of the top word with maximal multiplicity i."""
    if not 0 <= i <= P.m:
        raise ValueError("index out of range")
    omega = top_word(P)
    counts: dict[int, int] = {}
    best = 0
    if i == 0:
        return 0
    for length, letter in enumerate(reversed(omega), start=1):
        counts[letter] = counts.get(letter, 0) + 1
        best = max(best, counts[letter])
        if best == i:
            return length
    raise ValueError(f"no suffix of multiplicity {i}")


def C_bound(P: DyckPath, i: int) -> int:
    """Maximal suffix length of the top word with maximal multiplicity i."""
    if not 0 <= i <= P.m:
        raise ValueError("index out of range")
    omega = top_word(P)
    counts: dict[int, int] = {}
    best = 0
    answer = 0 if i == 0 else None
    for length, letter in enumerate(reversed(omega), start=1):
        counts[letter] = counts.get(letter, 0) + 1
        best = max(best, counts[letter])
        if best == i:
            answer = length
        if best > i:
            break
    if answer is None:
        raise ValueError(f"no suffix of multiplicity {i}")
    return answer


def slash_i(P: DyckPath, Q: DyckPath, i: int) -> DyckPath:
    """Lower interval bound: P x_{c_i(P)} Q."""
    return concat_i(P, Q, c_bound(P, i))


def backslash_i(P: DyckPath, Q: DyckPath, i: int) -> DyckPath:
    """Upper interval bound: all but the last prime factor of Q are pushed
    to the very top of P, and the last one is attached at depth C_i(P)."""
    factors = prime_factors(Q)
    depth = C_bound(P, i)
    result = P
    if len(factors) > 1:
        head = factors[0]
        for factor in factors[1:-1]:
            head = concat_i(head, factor, 0)
        result = concat_i(result, head, result.last_level)
    return concat_i(result, factors[-1], depth)


def verify_interval_product(m: int, max_size: int, cap: int = DEFAULT_CAP) -> CheckReport:
    """Products are exactly interval sums, and the classes tile the big interval."""
    report = CheckReport(name=f"interval products m={m} size<={max_size}")
    lattices = {
        total: build_lattice(m, total, cap) for total in range(2, max_size + 1)
    }
    for total in range(2, max_size + 1):
        lattice = lattices[total]
        for n1 in range(1, total):
            n2 = total - n1
            for P in enumerate_paths(m, n1):
                for Q in enumerate_paths(m, n2):
                    union: set[DyckPath] = set()
                    expected_union = set(
                        lattice.interval(slash_i(P, Q, 0), backslash_i(P, Q, m))
                    )
                    for i in range(m + 1):
                        product = path_product(P, Q, i)
                        report.checks += 1
                        if any(c != 1 for _, c in product.items()):
                            report.fail(f"non-unit coefficient in {P!r}*_{i}{Q!r}")
                            return report
                        support = product.support()
                        expected = set(
                            lattice.interval(slash_i(P, Q, i), backslash_i(P, Q, i))
                        )
                        if support != expected:
                            report.fail(
                                f"support of {P!r} *_{i} {Q!r} is not the interval "
                                f"[{slash_i(P, Q, i)!r}, {backslash_i(P, Q, i)!r}]"
                            )
                            return report
                        if support & union:
                            report.fail(f"overlapping classes at {P!r}, {Q!r}, i={i}")
                            return report
                        union |= support
                    report.checks += 1
                    if union != expected_union:
                        report.fail(
                            f"classes of {P!r} * {Q!r} do not tile the full interval"
                        )
                        return report
    return report


def hasse_dot(lattice: TamariLattice) -> str:
    """Canonical DOT rendering of the covering relation (edges point up)."""
    lines = [
        "digraph tamari {",
        "  rankdir=BT;",
    ]
    for p in lattice.elements:
        lines.append(f'  "{p.encode()}";')
    edges = sorted(
        (lattice.elements[a].encode(), lattice.elements[b].encode())
        for a, b in lattice.cover_pairs
    )
    for a, b in edges:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def rotation_preserves_colors(m: int, n: int) -> bool:
    """Down-step colors are invariant along covering rotations."""
    for P in enumerate_paths(m, n):
        steps = P.steps()
        colors = standard_coloring(P).colors
        for pos in range(len(steps) - 1):
            if steps[pos] != DOWN or steps[pos + 1] != UP:
                continue
            height = 0
            for s in steps[: pos + 1]:
                height += m if s == UP else -1
            h = height
            end = None
            for q in range(pos + 1, len(steps)):
                h += m if steps[q] == UP else -1
                if h == height:
                    end = q
                    break
            rotated_steps = steps[:pos] + steps[pos + 1 : end + 1] + (DOWN,) + steps[end + 1 :]
            rotated = _path_from_steps(m, rotated_steps)
            rotated_colors = standard_coloring(rotated).colors
            # the moved step was down #k; it becomes down #k' where k' counts
            # downs among steps[:end+1] minus the removed one
            k = sum(1 for s in steps[:pos] if s == DOWN)
            downs_before_new = sum(1 for s in steps[pos + 1 : end + 1] if s == DOWN) + k
            moved = list(colors)
            color_of_d = moved.pop(k)
            moved.insert(downs_before_new, color_of_d)
            if tuple(moved) != rotated_colors:
                return False
    return True
