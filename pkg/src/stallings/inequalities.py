"""Double cosets with nontrivial intersection and the rank inequalities built on them."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import component_ids, core_vertices, euler_characteristic, induced_subgraph
from .subgroup import (
    Subgroup,
    conjugate,
    from_generators,
    intersect,
    join,
    pullback,
    relative_index,
    _check_alphabets,
)
from .words import Word, inverse, multiply


@dataclass(frozen=True)
class DoubleCoset:
    representative: Word
    intersection: Subgroup  # H1 ∩ s H2 s^-1
    reduced_rank: int


@dataclass(frozen=True)
class DoubleCosetReport:
    components: tuple[DoubleCoset, ...]

    @property
    def total(self) -> int:
        return sum(c.reduced_rank for c in self.components)

    @property
    def representatives(self) -> list[Word]:
        return [c.representative for c in self.components]

    def __len__(self) -> int:
        return len(self.components)


def double_cosets(h1: Subgroup, h2: Subgroup, include_cyclic: bool = False) -> DoubleCosetReport:
    """Components of the cored pullback, one per double coset H1 s H2.

    The basepoint component is cored at the basepoint, every other component
    with nothing protected, so trees vanish.  Components of reduced rank 0 are
    dropped unless ``include_cyclic`` keeps the rank-1 ones; either way the
    total is r̄(H1, H2).  Each representative is ``p1 · p2^-1`` for breadth-first
    tree paths to the component vertex closest to the two basepoints.
    """
    _check_alphabets(h1, h2)
    p = pullback(h1, h2)
    kept = induced_subgraph(p, core_vertices(p))
    comp = component_ids(kept)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(comp):
        groups.setdefault(c, []).append(v)

    paths1, paths2 = h1.tree_paths(), h2.tree_paths()
    found = []
    for c in sorted(groups):
        part = induced_subgraph(kept, groups[c])
        chi = euler_characteristic(part)
        if chi > 0 or (chi == 0 and not include_cyclic):
            continue
        root = min(
            part.vertices,
            key=lambda w: (
                len(paths1[part.names[w][0]]) + len(paths2[part.names[w][1]]),
                part.names[w],
            ),
        )
        u, v = part.names[root]
        s = multiply(paths1[u], inverse(paths2[v]))
        rooted = type(part)(
            part.alphabet, part.num_vertices, part.tails, part.heads, part.labels, root
        )
        inter = conjugate(Subgroup(rooted), paths1[u])
        found.append(DoubleCoset(s, inter, max(-chi, 0)))
    return DoubleCosetReport(tuple(found))


@dataclass(frozen=True)
class InequalityReport:
    """r_join · r_meet <= r1 · r2, with the four reduced ranks."""

    r1: int
    r2: int
    r_meet: int
    r_join: int

    @property
    def lhs(self) -> int:
        return self.r_join * self.r_meet

    @property
    def rhs(self) -> int:
        return self.r1 * self.r2

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def as_dict(self) -> dict:
        return {
            "r1": self.r1,
            "r2": self.r2,
            "r_meet": self.r_meet,
            "r_join": self.r_join,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class GeneralizedInequalityReport(InequalityReport):
    """Double-coset version: r_meet is r̄(H1, H2), r_join is r̄(<H1, H2, S(H1, H2)>).

    ``index_1`` / ``index_2`` give the index of H1 / H2 in the extended join
    (None when infinite); the inequality is a theorem when either is finite.
    """

    index_1: int | None = None
    index_2: int | None = None
    cosets: DoubleCosetReport | None = field(default=None, repr=False)
    extended_join: Subgroup | None = field(default=None, repr=False)

    @property
    def finite_index_hypothesis(self) -> bool:
        return self.index_1 is not None or self.index_2 is not None


def im_inequality(h1: Subgroup, h2: Subgroup) -> InequalityReport:
    _check_alphabets(h1, h2)
    return InequalityReport(
        h1.reduced_rank,
        h2.reduced_rank,
        intersect(h1, h2).reduced_rank,
        join(h1, h2).reduced_rank,
    )


def extended_join(h1: Subgroup, h2: Subgroup, report: DoubleCosetReport | None = None) -> Subgroup:
    """<H1, H2, S(H1, H2)>."""
    if report is None:
        report = double_cosets(h1, h2)
    return join(h1, h2, from_generators(h1.alphabet, report.representatives))


def generalized_im_inequality(h1: Subgroup, h2: Subgroup) -> GeneralizedInequalityReport:
    _check_alphabets(h1, h2)
    report = double_cosets(h1, h2)
    big = extended_join(h1, h2, report)
    return GeneralizedInequalityReport(
        h1.reduced_rank,
        h2.reduced_rank,
        report.total,
        big.reduced_rank,
        index_1=relative_index(h1, big),
        index_2=relative_index(h2, big),
        cosets=report,
        extended_join=big,
    )


@dataclass(frozen=True)
class HannaNeumannReport:
    r1: int
    r2: int
    r_meet: int  # r̄(H1 ∩ H2)
    r_total: int  # r̄(H1, H2)

    @property
    def product(self) -> int:
        return self.r1 * self.r2

    @property
    def neumann_bound(self) -> bool:
        """Hanna Neumann's proven bound r̄(H1 ∩ H2) <= 2 r̄(H1) r̄(H2)."""
        return self.r_meet <= 2 * self.product

    @property
    def hnc_bound(self) -> bool:
        return self.r_meet <= self.product

    @property
    def shnc_bound(self) -> bool:
        """Strengthened form over all double cosets."""
        return self.r_total <= self.product


def hanna_neumann_check(h1: Subgroup, h2: Subgroup) -> HannaNeumannReport:
    _check_alphabets(h1, h2)
    return HannaNeumannReport(
        h1.reduced_rank,
        h2.reduced_rank,
        intersect(h1, h2).reduced_rank,
        double_cosets(h1, h2).total,
    )
