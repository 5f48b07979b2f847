"""The two contravariant functors and the duality checkers.

One direction sends a positive algebra to its ordered space of homs into the
unit interval, topologized by the point-evaluation image of the algebra; the
other sends an ordered space to its algebra of increasing clopen subsets.
The unit evaluates points, the counit evaluates elements, and the checkers
replay the triangle identities, the round-trip isomorphisms and the
comparison with the untyped (trivially ordered) spectral construction, all
elementwise on finite carriers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ideal, mvtop, qunit
from .algebra import (MV, MVLAT, FinAlgebra, Hom, HomSet, enumerate_homs,
                      generate)
from .errors import InputError, InvariantError
from .order import (HCompleteness, hom_poset, is_h_complete, HomPoset,
                    poset_isomorphic)
from .term import GenWitness, record_witnesses


@dataclass(frozen=True)
class DualSpace:
    """The ordered space of unit-interval homs of a positive algebra.

    Points are labels f0, f1, ... in the canonical hom order; the topology is
    based on the generated algebra of point evaluations, transported to fuzzy
    subsets of the point set.  ``faithful`` records whether the evaluations
    separate the source algebra (when they do not, the evaluation image is a
    proper quotient and the space only sees that quotient).
    """

    algebra: FinAlgebra
    space: mvtop.MVTopology
    poset: HomPoset
    base_algebra: FinAlgebra     # generated algebra of evaluation vectors
    witnesses: GenWitness = field(repr=False)
    faithful: bool = True

    @property
    def points(self):
        return self.space.points

    def evaluation(self, element) -> mvtop.FuzzySubset:
        """The fuzzy subset sending each hom to its value on the element."""
        values = tuple(h(element) for h in self.poset.homset)
        return mvtop.FuzzySubset(self.space.points, values)

    def hom_label(self, hom_index: int) -> str:
        return self.space.points[hom_index]


def dual_space(a: FinAlgebra, denominator_bound=None) -> DualSpace:
    """Build the ordered dual space of a positive algebra.

    The evaluation image generates a semisimple algebra of fuzzy subsets of
    the hom set; that algebra is a base (here: the whole family) of the
    topology, and the point order is the pointwise hom order.
    """
    hp = hom_poset(a, denominator_bound)
    if not hp.homset.complete:
        raise InputError("cannot build a dual space from a possibly "
                         "incomplete hom enumeration")
    if len(hp) == 0:
        raise InputError("the algebra admits no homs into the unit interval")
    labels = tuple(f"f{i}" for i in range(len(hp)))
    vectors = [tuple(h(e) for h in hp.homset) for e in a.elements]
    faithful = len(set(vectors)) == len(a.elements)
    grid = max(qunit.common_grid(v for vec in vectors for v in vec), 1)
    ambient_chains = [grid] * len(labels)
    seed = sorted(set(vectors))
    base_algebra, trace = generate_in_grid(ambient_chains, seed, MV)
    witnesses = record_witnesses(seed, trace)
    opens = [mvtop.FuzzySubset(labels, vec) for vec in base_algebra.elements]
    order_pairs = [(labels[i], labels[j]) for i in range(len(hp))
                   for j in range(len(hp)) if hp.leq(i, j)]
    space = mvtop.generate_topology(labels, opens, mode="base", grid=grid,
                                    order=order_pairs)
    if len(space.opens) != len(base_algebra):
        raise InvariantError("the generated base is not join-closed")
    return DualSpace(a, space, hp, base_algebra, witnesses, faithful)


def dual_map(q: Hom, source_dual: DualSpace, target_dual: DualSpace) -> dict:
    """The point map induced by a positive-algebra hom, with its checks.

    A hom q from A to C pulls each hom on C back to one on A; the result is
    verified to be continuous and order-preserving.
    """
    if q.target is None:
        raise InputError("the hom must land in an algebra, not the interval")
    if q.source is not source_dual.algebra or q.target is not target_dual.algebra:
        raise InputError("dual spaces do not match the hom")
    mapping = {}
    for i, h in enumerate(target_dual.poset.homset):
        composite = tuple(h(q(e)) for e in source_dual.algebra.elements)
        matches = [j for j, g in enumerate(source_dual.poset.homset)
                   if g.values == composite]
        if len(matches) != 1:
            raise InvariantError("a pulled-back hom is missing from the dual")
        mapping[target_dual.space.points[i]] = source_dual.space.points[matches[0]]
    if not mvtop.is_continuous(mapping, target_dual.space, source_dual.space):
        raise InvariantError("the induced point map is not continuous")
    for (x, y) in target_dual.space.order:
        if not source_dual.space.point_leq(mapping[x], mapping[y]):
            raise InvariantError("the induced point map does not preserve order")
    return mapping


def increasing_clopen_algebra(space: mvtop.MVTopology) -> FinAlgebra:
    """The positive algebra of increasing clopen subsets, as value tuples."""
    if space.order is None:
        raise InputError("an ordered space is required")
    elems = [c.values for c in space.increasing_clopens()]
    chains = [space.grid] * len(space.points)
    return FinAlgebra.from_tuples(chains, elems, MVLAT)


def restrict_preimage(point_map: dict, x_space: mvtop.MVTopology,
                      y_space: mvtop.MVTopology) -> Hom:
    """Preimage along a continuous monotone map, restricted to increasing
    clopens; verified to land in increasing clopens of the domain."""
    source = increasing_clopen_algebra(y_space)
    target = increasing_clopen_algebra(x_space)
    values = []
    for vec in source.elements:
        beta = mvtop.FuzzySubset(y_space.points, vec)
        alpha = mvtop.preimage(point_map, beta, x_space.points)
        if alpha.values not in target.index:
            raise InputError("preimage escapes the increasing clopens")
        values.append(alpha.values)
    hom = Hom(source, tuple(values), target)
    if not hom.preserves():
        raise InvariantError("preimage restriction is not a homomorphism")
    return hom


# ---------------------------------------------------------------------------
# Unit and counit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NatMap:
    kind: str           # "unit" or "counit"
    mapping: dict


def counit_map(a: FinAlgebra, dual: DualSpace | None = None) -> NatMap:
    """Element to its evaluation subset, landing in the increasing clopens."""
    dual = dual or dual_space(a)
    mapping = {}
    for e in a.elements:
        alpha = dual.evaluation(e)
        if not (dual.space.is_open(alpha) and dual.space.is_closed(alpha)
                and dual.space.is_increasing(alpha)):
            raise InvariantError("an evaluation subset is not an increasing clopen")
        mapping[e] = alpha
    return NatMap("counit", mapping)


def unit_map(space: mvtop.MVTopology, clop: FinAlgebra | None = None,
             clop_dual: DualSpace | None = None) -> NatMap:
    """Point to the evaluation hom on the increasing clopens."""
    clop = clop or increasing_clopen_algebra(space)
    clop_dual = clop_dual or dual_space(clop)
    increasing = {vec: i for i, vec in enumerate(clop.elements)}
    mapping = {}
    for p_idx, p in enumerate(space.points):
        values = tuple(vec[p_idx] for vec in clop.elements)
        matches = [i for i, h in enumerate(clop_dual.poset.homset)
                   if h.values == values]
        if len(matches) != 1:
            raise InvariantError("a point evaluation is missing from the dual homs")
        mapping[p] = clop_dual.space.points[matches[0]]
    return NatMap("unit", mapping)


@dataclass(frozen=True)
class TriangleReport:
    space_triangle: bool | None
    algebra_triangle: bool | None

    @property
    def ok(self) -> bool:
        return (self.space_triangle in (True, None)
                and self.algebra_triangle in (True, None)
                and not (self.space_triangle is None and self.algebra_triangle is None))


def check_triangles(space: mvtop.MVTopology | None = None,
                    a: FinAlgebra | None = None) -> TriangleReport:
    """Replay both triangle identities elementwise.

    For a space X: pulling each increasing clopen through the unit map must
    return it.  For an algebra A: composing a hom's image under the dual of
    the counit with the unit of the dual space must return the hom.
    """
    space_ok = None
    if space is not None:
        clop = increasing_clopen_algebra(space)
        clop_dual = dual_space(clop)
        eta = unit_map(space, clop, clop_dual)
        space_ok = True
        for vec in clop.elements:
            beta = mvtop.FuzzySubset(clop_dual.space.points, tuple(
                h(vec) for h in clop_dual.poset.homset))
            pulled = mvtop.preimage(eta.mapping, beta, space.points)
            if pulled.values != vec:
                space_ok = False
    algebra_ok = None
    if a is not None:
        dual = dual_space(a)
        eps = counit_map(a, dual)
        clop = increasing_clopen_algebra(dual.space)
        clop_dual = dual_space(clop)
        eta = unit_map(dual.space, clop, clop_dual)
        algebra_ok = True
        for i, f in enumerate(dual.poset.homset):
            p = dual.space.points[i]
            target_label = eta.mapping[p]
            h = clop_dual.poset.homset[clop_dual.space.points.index(target_label)]
            # compose with the counit: the result must be f again
            for e in a.elements:
                alpha = eps.mapping[e]
                if h(alpha.values) != f(e):
                    algebra_ok = False
    return TriangleReport(space_ok, algebra_ok)


# ---------------------------------------------------------------------------
# Duality verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualityVerdict:
    lcc: bool
    lcc_vacuous: bool
    h_complete: bool
    counit_iso: bool
    unit_order_homeo: bool
    certificates: dict

    @property
    def ok(self) -> bool:
        return self.lcc and self.h_complete and self.counit_iso and self.unit_order_homeo

    def to_json(self) -> dict:
        out = {"lcc": self.lcc, "h_complete": self.h_complete,
               "counit_iso": self.counit_iso,
               "unit_order_homeo": self.unit_order_homeo,
               "certificates": dict(self.certificates)}
        if self.lcc_vacuous:
            out["lcc_note"] = "finite carrier: limit cut completeness holds automatically"
        return out


def check_duality(a: FinAlgebra, denominator_bound=None) -> DualityVerdict:
    """Full round-trip verdict for a positive algebra.

    Checks limit cut completeness of the generated algebra, H-completeness
    of the evaluation image, that the counit is an isomorphism onto the
    increasing clopens, and that the unit on the dual space is an order
    homeomorphism.  Failures carry certificates.
    """
    dual = dual_space(a, denominator_bound)
    if not dual.faithful:
        raise InputError("the homs do not separate the algebra; "
                         "its dual only sees a quotient")
    certificates: dict = {}
    lcc = ideal.is_lcc(dual.base_algebra)
    h = is_h_complete(_evaluation_subreduct(dual), dual.base_algebra)
    if not h.complete:
        certificates["h_complete_certificate"] = [
            [qunit.format_unit(v) for v in vec] for vec in h.certificate.elements]
    counit_iso = _counit_is_isomorphism(a, dual, certificates)
    unit_homeo = _unit_is_order_homeomorphism(dual.space, certificates)
    return DualityVerdict(lcc, True, h.complete, counit_iso, unit_homeo,
                          certificates)


def _evaluation_subreduct(dual: DualSpace) -> FinAlgebra:
    vectors = sorted(set(tuple(h(e) for h in dual.poset.homset)
                         for e in dual.algebra.elements))
    return FinAlgebra.from_tuples(dual.base_algebra.chains, vectors, MVLAT)


def _counit_is_isomorphism(a, dual, certificates) -> bool:
    eps = counit_map(a, dual)
    image = {alpha.values for alpha in eps.mapping.values()}
    injective = len(image) == len(a.elements)
    clop = increasing_clopen_algebra(dual.space)
    surjective = image == set(clop.elements)
    preserves = True
    for x in a.elements:
        for y in a.elements:
            for name in ("add", "mul", "join", "meet"):
                lhs = eps.mapping[getattr(a, name)(x, y)].values
                rhs = getattr(clop, name)(eps.mapping[x].values, eps.mapping[y].values)
                if lhs != rhs:
                    preserves = False
    if not surjective:
        missing = sorted(set(clop.elements) - image)
        certificates["counit_missing"] = [
            [qunit.format_unit(v) for v in vec] for vec in missing]
    return injective and surjective and preserves


def _unit_is_order_homeomorphism(space: mvtop.MVTopology, certificates) -> bool:
    clop = increasing_clopen_algebra(space)
    clop_dual = dual_space(clop)
    eta = unit_map(space, clop, clop_dual)
    labels = list(eta.mapping.values())
    bijective = (len(set(labels)) == len(space.points)
                 and len(space.points) == len(clop_dual.space.points))
    if not bijective:
        certificates["unit_not_bijective"] = {
            "points": len(space.points), "dual_points": len(clop_dual.space.points)}
        return False
    order_ok = all(
        space.point_leq(x, y) == clop_dual.space.point_leq(eta.mapping[x], eta.mapping[y])
        for x in space.points for y in space.points)
    homeo = mvtop.is_homeomorphism(eta.mapping, space, clop_dual.space)
    if not order_ok:
        certificates["unit_order_mismatch"] = True
    if not homeo:
        certificates["unit_not_homeomorphism"] = True
    return order_ok and homeo


@dataclass(frozen=True)
class SpaceVerdict:
    priestley: bool
    separation: mvtop.SeparationReport
    clop_lcc: bool
    clop_lcc_vacuous: bool
    clop_h_complete: bool
    unit_order_homeo: bool
    certificates: dict

    @property
    def ok(self) -> bool:
        return (self.priestley and self.clop_lcc and self.clop_h_complete
                and self.unit_order_homeo)

    def to_json(self) -> dict:
        return {"priestley": self.priestley, "lcc": self.clop_lcc,
                "h_complete": self.clop_h_complete,
                "unit_order_homeo": self.unit_order_homeo,
                "lcc_note": ("finite carrier: limit cut completeness holds "
                             "automatically"),
                "certificates": dict(self.certificates)}


def check_duality_space(space: mvtop.MVTopology) -> SpaceVerdict:
    """Space-side verdict: ordered separation, compactness and clopen base,
    plus the algebra-side properties of the increasing clopens."""
    if space.order is None:
        raise InputError("an ordered space is required")
    certificates: dict = {}
    sep = mvtop.separation_report(space)
    clop = increasing_clopen_algebra(space)
    closure, _ = generate_in_grid(clop.chains, clop.elements, MV)
    clop_lcc = ideal.is_lcc(closure)
    h = is_h_complete(clop, closure)
    if not h.complete:
        certificates["h_complete_certificate"] = [
            [qunit.format_unit(v) for v in vec] for vec in h.certificate.elements]
    unit_homeo = _unit_is_order_homeomorphism(space, certificates)
    return SpaceVerdict(bool(sep.priestley), sep, clop_lcc, True, h.complete,
                        unit_homeo, certificates)


# ---------------------------------------------------------------------------
# Comparison with the unordered spectral construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StoneReport:
    homeomorphism: bool
    trivial_order: bool
    clop_equals_increasing_clop: bool
    point_map: dict

    @property
    def ok(self) -> bool:
        return (self.homeomorphism and self.trivial_order
                and self.clop_equals_increasing_clop)


def stone_compare(b: FinAlgebra) -> StoneReport:
    """Compare the ordered dual of a full algebra with its maximal spectrum.

    Sends each hom to the kernel of its extension, checks that the map is a
    homeomorphism onto the spectrum with its canonical fuzzy topology, that
    the dual order is trivial, and that the increasing clopens are all
    clopens there.
    """
    if b.signature != MV:
        raise InputError("the comparison applies to full-signature algebras")
    if not ideal.is_semisimple(b):
        raise InputError("the comparison requires a semisimple algebra")
    positive = b.subalgebra(b.elements, MVLAT)
    dual = dual_space(positive)
    trivial_order = dual.poset.is_antichain()

    base = dual.base_algebra
    rep = ideal.belluce_embedding(base)
    max_labels = tuple(f"M{i}" for i in range(len(rep.max_ideals)))
    spectrum_opens = [
        mvtop.FuzzySubset(max_labels, rep.vectors[e]) for e in base.elements]
    spectrum = mvtop.generate_topology(max_labels, spectrum_opens, mode="base",
                                       grid=base.grid())

    point_map = {}
    ok = True
    for i, f in enumerate(dual.poset.homset):
        # the extension of f to the generated algebra is evaluation at f
        kernel = frozenset(e for e in base.elements if e[i] == qunit.ZERO)
        match = [k for k, m in enumerate(rep.max_ideals) if m.members == kernel]
        if len(match) != 1:
            ok = False
            break
        point_map[dual.space.points[i]] = max_labels[match[0]]
    homeo = ok and mvtop.is_homeomorphism(point_map, dual.space, spectrum)
    if homeo:
        # open and continuous both ways, elementwise: preimage of each basic
        # open of the spectrum is the corresponding evaluation subset
        for e, vec in rep.vectors.items():
            beta = mvtop.FuzzySubset(max_labels, vec)
            pulled = mvtop.preimage(point_map, beta, dual.space.points)
            if pulled.values != e:
                homeo = False
    clop_eq = set(dual.space.increasing_clopens()) == set(dual.space.clopens())
    return StoneReport(homeo, trivial_order, clop_eq, point_map)


# ---------------------------------------------------------------------------
# Helpers used by the ordered-space comparison tests
# ---------------------------------------------------------------------------


def order_homeomorphic(d1: DualSpace, d2: DualSpace) -> bool:
    """Ordered homeomorphism test between two dual spaces.

    Searches the (few) order-isomorphisms of the point posets and checks
    each for bicontinuity.
    """
    if len(d1.points) != len(d2.points):
        return False
    import itertools
    m1 = d1.poset.matrix
    m2 = d2.poset.matrix
    k = len(d1.points)
    for perm in itertools.permutations(range(k)):
        if all(m1[i][j] == m2[perm[i]][perm[j]] for i in range(k) for j in range(k)):
            mapping = {d1.points[i]: d2.points[perm[i]] for i in range(k)}
            if mvtop.is_homeomorphism(mapping, d1.space, d2.space):
                return True
    return False
