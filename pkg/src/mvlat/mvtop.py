"""Finite fuzzy topological spaces with many-valued structure.

A space is a finite point set with a family of fuzzy subsets (membership in
exact rationals on a declared 1/N grid) closed under truncated sum, product,
meet, and arbitrary joins, plus the two constants.  Finiteness of the grid
makes every closure a fixpoint computation and every axiom check exhaustive:
open covers, additive covers, separation axioms and the ordered separation
property are each decided by direct search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import qunit
from .errors import InputError, SizeGuardError

MAX_OPENS_DEFAULT = 4096


@dataclass(frozen=True)
class FuzzySubset:
    points: tuple
    values: tuple

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise InputError("membership must be total on the point set")

    def __call__(self, point):
        return self.values[self.points.index(point)]

    def add(self, other):
        return FuzzySubset(self.points, tuple(qunit.mv_add(a, b) for a, b in
                                              zip(self.values, other.values)))

    def mul(self, other):
        return FuzzySubset(self.points, tuple(qunit.mv_mul(a, b) for a, b in
                                              zip(self.values, other.values)))

    def neg(self):
        return FuzzySubset(self.points, tuple(qunit.mv_neg(a) for a in self.values))

    def join(self, other):
        return FuzzySubset(self.points, tuple(qunit.join(a, b) for a, b in
                                              zip(self.values, other.values)))

    def meet(self, other):
        return FuzzySubset(self.points, tuple(qunit.meet(a, b) for a, b in
                                              zip(self.values, other.values)))

    def leq(self, other) -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def is_crisp(self) -> bool:
        return all(v in (qunit.ZERO, qunit.ONE) for v in self.values)

    def scalar(self, n: int) -> "FuzzySubset":
        return FuzzySubset(self.points, tuple(qunit.nfold_add(n, v) for v in self.values))


def constant(points, value) -> FuzzySubset:
    return FuzzySubset(tuple(points), tuple(value for _ in points))


class MVTopology:
    """A finite space: points, open fuzzy subsets, and an optional order."""

    def __init__(self, points, opens, grid: int, order=None):
        self.points = tuple(points)
        self.grid = int(grid)
        self.opens = frozenset(opens)
        for o in self.opens:
            if o.points != self.points:
                raise InputError("an open set lives on different points")
            for v in o.values:
                if not qunit.in_chain(v, self.grid):
                    raise InputError(f"membership value {v} is off the 1/{self.grid} grid")
        self.order = None
        if order is not None:
            order = frozenset(order)
            for (x, y) in order:
                if x not in self.points or y not in self.points:
                    raise InputError("order relates unknown points")
            self.order = frozenset(order | {(x, x) for x in self.points})
            for (x, y) in self.order:
                if (y, x) in self.order and x != y:
                    raise InputError("order is not antisymmetric")
                for (y2, z) in self.order:
                    if y2 == y and (x, z) not in self.order:
                        raise InputError("order is not transitive")

    # -- basic families --------------------------------------------------

    def zero(self) -> FuzzySubset:
        return constant(self.points, qunit.ZERO)

    def one(self) -> FuzzySubset:
        return constant(self.points, qunit.ONE)

    def closed_sets(self) -> frozenset:
        return frozenset(o.neg() for o in self.opens)

    def is_open(self, alpha: FuzzySubset) -> bool:
        return alpha in self.opens

    def is_closed(self, alpha: FuzzySubset) -> bool:
        return alpha.neg() in self.opens

    def clopens(self) -> tuple:
        out = [o for o in self.opens if self.is_closed(o)]
        return tuple(sorted(out, key=lambda o: o.values))

    def point_leq(self, x, y) -> bool:
        if self.order is None:
            raise InputError("the space carries no order")
        return (x, y) in self.order

    def is_increasing(self, alpha: FuzzySubset) -> bool:
        if self.order is None:
            raise InputError("the space carries no order")
        return all(alpha(x) <= alpha(y) for (x, y) in self.order)

    def increasing_clopens(self) -> tuple:
        return tuple(o for o in self.clopens() if self.is_increasing(o))

    def sorted_opens(self) -> tuple:
        return tuple(sorted(self.opens, key=lambda o: o.values))

    # -- axioms -----------------------------------------------------------

    def axiom_failures(self) -> tuple:
        """Violations of the five defining conditions, exhaustively."""
        failures = []
        if self.zero() not in self.opens or self.one() not in self.opens:
            failures.append("(i) constants missing")
        opens = self.sorted_opens()
        for a in opens:
            for b in opens:
                if a.join(b) not in self.opens:
                    failures.append(f"(ii) join escapes at {a.values}, {b.values}")
                if a.mul(b) not in self.opens:
                    failures.append(f"(iii) product escapes at {a.values}, {b.values}")
                if a.add(b) not in self.opens:
                    failures.append(f"(iv) sum escapes at {a.values}, {b.values}")
                if a.meet(b) not in self.opens:
                    failures.append(f"(v) meet escapes at {a.values}, {b.values}")
        return tuple(failures)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        ordered = "" if self.order is None else ", ordered"
        return (f"MVTopology({len(self.points)} points, {len(self.opens)} opens, "
                f"grid 1/{self.grid}{ordered})")


def generate_topology(points, family, mode="subbase", grid=None, order=None,
                      max_opens=MAX_OPENS_DEFAULT) -> MVTopology:
    """The smallest topology containing the family.

    ``subbase`` first closes the family under sum, product and meet to a
    base; ``base`` trusts the family to be combination-closed already.
    Both then close under joins and adjoin the constants; the declared grid
    bounds the values, so the fixpoint is reached.
    """
    points = tuple(points)
    family = list(family)
    values = [v for f in family for v in f.values]
    grid = grid or qunit.common_grid(values or [qunit.ONE])
    for v in values:
        if not qunit.in_chain(v, grid):
            raise InputError(f"value {v} is off the declared 1/{grid} grid")
    current = set(family)
    if mode == "subbase":
        current = _close_binary(current, ("add", "mul", "meet"), max_opens)
    elif mode != "base":
        raise InputError("mode must be 'base' or 'subbase'")
    current.add(constant(points, qunit.ZERO))
    current.add(constant(points, qunit.ONE))
    current = _close_binary(current, ("join",), max_opens)
    return MVTopology(points, current, grid, order)


def _close_binary(family, ops, max_opens):
    current = set(family)
    frontier = list(current)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(current):
                for op in ops:
                    c = getattr(a, op)(b)
                    if c not in current:
                        current.add(c)
                        fresh.append(c)
                        if len(current) > max_opens:
                            raise SizeGuardError(
                                f"topology closure exceeded {max_opens} opens")
        frontier = fresh
    return current


# ---------------------------------------------------------------------------
# Maps between spaces
# ---------------------------------------------------------------------------


def preimage(point_map: dict, beta: FuzzySubset, domain_points) -> FuzzySubset:
    """Composition with the map: the preimage of a fuzzy subset."""
    domain_points = tuple(domain_points)
    return FuzzySubset(domain_points, tuple(beta(point_map[x]) for x in domain_points))


def image(point_map: dict, alpha: FuzzySubset, codomain_points) -> FuzzySubset:
    """Pointwise join over fibers; the empty fiber contributes zero."""
    codomain_points = tuple(codomain_points)
    values = []
    for y in codomain_points:
        best = qunit.ZERO
        for x, v in zip(alpha.points, alpha.values):
            if point_map[x] == y and v > best:
                best = v
        values.append(best)
    return FuzzySubset(codomain_points, tuple(values))


def is_continuous(point_map: dict, x_space: MVTopology, y_space: MVTopology) -> bool:
    return all(preimage(point_map, beta, x_space.points) in x_space.opens
               for beta in y_space.opens)


def is_continuous_via_subbase(point_map, x_space, y_space, subbase) -> bool:
    """The subbase criterion; equivalent to the definition when the family
    really is a subbase of the codomain's topology."""
    for s in subbase:
        if s not in y_space.opens:
            raise InputError("the declared subbase is not a family of opens")
    return all(preimage(point_map, s, x_space.points) in x_space.opens
               for s in subbase)


def is_open_map(point_map, x_space, y_space) -> bool:
    return all(image(point_map, alpha, y_space.points) in y_space.opens
               for alpha in x_space.opens)


def is_closed_map(point_map, x_space, y_space) -> bool:
    closed_y = y_space.closed_sets()
    return all(image(point_map, beta, y_space.points) in closed_y
               for beta in x_space.closed_sets())


def is_homeomorphism(point_map, x_space, y_space) -> bool:
    if sorted(point_map) != sorted(x_space.points):
        return False
    if sorted(point_map.values()) != sorted(y_space.points):
        return False
    inverse = {v: k for k, v in point_map.items()}
    return (is_continuous(point_map, x_space, y_space)
            and is_continuous(inverse, y_space, x_space))


# ---------------------------------------------------------------------------
# Covers and compactness
# ---------------------------------------------------------------------------


def minimal_open_covers(family, points) -> tuple:
    """Inclusion-minimal covers drawn from the family.

    A finite fuzzy cover attains value 1 at every point, so each minimal
    cover is a minimized choice of witnesses, one per point.
    """
    witnesses = []
    for i, p in enumerate(points):
        w = [f for f in family if f.values[i] == qunit.ONE]
        if not w:
            return ()
        witnesses.append(w)
    covers = set()
    for combo in iproduct(*witnesses):
        cover = []
        for f in combo:
            if f not in cover:
                cover.append(f)
        # minimize: drop members whose removal keeps the cover covering
        changed = True
        while changed:
            changed = False
            for f in list(cover):
                rest = [g for g in cover if g is not f]
                if rest and _covers(rest, points):
                    cover = rest
                    changed = True
                    break
        covers.add(frozenset(cover))
    return tuple(sorted(covers, key=lambda c: sorted(f.values for f in c)))


def _covers(family, points) -> bool:
    for i in range(len(points)):
        if max(f.values[i] for f in family) != qunit.ONE:
            return False
    return True


def _saturation_bound(f: FuzzySubset) -> int:
    """Multiplicity beyond which n-fold sums of f stop changing."""
    nonzero = [v for v in f.values if v > 0]
    if not nonzero:
        return 1
    m = min(nonzero)
    return -((-m.denominator) // m.numerator)


def has_additive_subcover(cover) -> bool:
    """Multiplicities beyond 1/min-nonzero-value are saturated, and the
    truncated sum is monotone in them, so the maximal choice decides."""
    cover = [f for f in cover if any(v > 0 for v in f.values)]
    if not cover:
        return False
    total = None
    for f in cover:
        scaled = f.scalar(_saturation_bound(f))
        total = scaled if total is None else total.add(scaled)
    return all(v == qunit.ONE for v in total.values)


def additive_subcover(cover) -> tuple:
    """A minimal multiset witness (subset with multiplicities), or ()."""
    if not has_additive_subcover(cover):
        return ()
    chosen = []
    for f in sorted(cover, key=lambda g: g.values):
        if not any(v > 0 for v in f.values):
            continue
        chosen.append((f, _saturation_bound(f)))
    # greedily drop members while the saturated sum still reaches one
    changed = True
    while changed:
        changed = False
        for k in range(len(chosen)):
            rest = chosen[:k] + chosen[k + 1:]
            if rest and has_additive_subcover([f for f, _ in rest]):
                chosen = rest
                changed = True
                break
    return tuple(chosen)


@dataclass(frozen=True)
class CompactnessReport:
    verdict: str                     # strongly_compact | compact | neither
    strongly_compact: bool
    definitional_compact: bool
    alexander_compact: bool | None   # None when no subbase was supplied

    def agreement(self) -> bool:
        if self.alexander_compact is None:
            return True
        return self.alexander_compact == self.definitional_compact


def compactness(space: MVTopology, subbase=None,
                max_opens=MAX_OPENS_DEFAULT) -> CompactnessReport:
    """Decide compactness along both available routes.

    The definitional route checks every inclusion-minimal open cover for an
    additive subcover (and for finiteness, which is automatic here).  When a
    large subbase is supplied, the subbase route checks the same property for
    covers drawn from the subbase only; the two verdicts must agree.
    """
    if len(space.opens) > max_opens:
        raise SizeGuardError(f"cover search guarded at {max_opens} opens")
    covers = minimal_open_covers(space.sorted_opens(), space.points)
    # every minimal cover is finite, hence its own finite subcover
    strongly = all(_covers(list(c), space.points) for c in covers)
    definitional = all(has_additive_subcover(c) for c in covers)
    alexander = None
    if subbase is not None:
        _require_large(subbase, space)
        sub_covers = minimal_open_covers(tuple(subbase), space.points)
        alexander = all(has_additive_subcover(c) for c in sub_covers)
    verdict = "strongly_compact" if strongly else (
        "compact" if definitional else "neither")
    return CompactnessReport(verdict, strongly, definitional, alexander)


def _require_large(subbase, space):
    subbase = set(subbase)
    for s in subbase:
        if s not in space.opens:
            raise InputError("subbase members must be open")
        for n in range(2, _saturation_bound(s) + 1):
            if s.scalar(n) not in subbase:
                raise InputError("subbase is not large: a multiple is missing")


# ---------------------------------------------------------------------------
# Separation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparationReport:
    t0: bool
    hausdorff: bool
    totally_order_disconnected: bool | None
    clopen_basis: bool
    compact: bool
    priestley: bool | None


def separation_report(space: MVTopology) -> SeparationReport:
    pts = space.points
    opens = space.sorted_opens()

    t0 = all(any(o(x) != o(y) for o in opens)
             for i, x in enumerate(pts) for y in pts[i + 1:])

    def hausdorff_pair(x, y):
        for ax in opens:
            if ax(x) != qunit.ONE:
                continue
            for ay in opens:
                if ay(y) == qunit.ONE and all(
                        qunit.meet(u, v) == qunit.ZERO
                        for u, v in zip(ax.values, ay.values)):
                    return True
        return False

    hausdorff = all(hausdorff_pair(x, y) and hausdorff_pair(y, x)
                    for i, x in enumerate(pts) for y in pts[i + 1:])

    clopens = space.clopens()
    clopen_basis = True
    for o in opens:
        below = [c for c in clopens if c.leq(o)]
        sup = constant(pts, qunit.ZERO)
        for c in below:
            sup = sup.join(c)
        if sup != o:
            clopen_basis = False
            break

    tod = None
    if space.order is not None:
        increasing = space.increasing_clopens()
        tod = True
        for x in pts:
            for y in pts:
                if x == y or space.point_leq(x, y):
                    continue
                if not any(c(x) == qunit.ONE and c(y) == qunit.ZERO
                           for c in increasing):
                    tod = False
    compact = compactness(space).definitional_compact
    priestley = None if tod is None else (compact and tod and clopen_basis)
    return SeparationReport(t0, hausdorff, tod, clopen_basis, compact, priestley)
