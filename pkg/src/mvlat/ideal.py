"""Ideals, quotients, the fuzzy-subset representation, and cut completeness.

Ideal enumeration works directly on downward-closed, sum-closed subsets; the
correspondence with congruences is then checked by the quotient
construction rather than assumed.  The representation of a semisimple
algebra embeds each element as a fuzzy subset of the maximal spectrum, one
exact rational per maximal ideal, and the cut machinery evaluates the
defining infima over that embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels, qunit
from .algebra import MV, MVLAT, FinAlgebra, Hom
from .errors import InputError, SizeGuardError

CUT_CARRIER_GUARD = 64


@dataclass(frozen=True)
class Ideal:
    parent: FinAlgebra
    members: frozenset

    def __contains__(self, e):
        return e in self.members

    def __len__(self):
        return len(self.members)

    def is_proper(self) -> bool:
        return len(self.members) < len(self.parent.elements)

    def check(self) -> bool:
        """I1-I3: contains 0, downward closed, closed under the sum."""
        alg = self.parent
        if alg.zero not in self.members:
            return False
        for a in self.members:
            for b in alg.elements:
                if alg.leq(b, a) and b not in self.members:
                    return False
            for b in self.members:
                if alg.add(a, b) not in self.members:
                    return False
        return True

    def is_prime(self) -> bool:
        """I4 on top of I1-I3: a meet inside forces a factor inside."""
        if not self.is_proper():
            return False
        alg = self.parent
        for a in alg.elements:
            if a in self.members:
                continue
            for b in alg.elements:
                if b in self.members:
                    continue
                if alg.meet(a, b) in self.members:
                    return False
        return True

    def sorted_members(self):
        return tuple(sorted(self.members))


def _ideal_closure_masks(a: FinAlgebra):
    n = len(a.elements)
    down = []
    for e in a.elements:
        mask = 0
        for j, x in enumerate(a.elements):
            if a.leq(x, e):
                mask |= 1 << j
        down.append(mask)
    (add_table,), _ = a.index_tables(("add",))
    return n, down, add_table


def _close_ideal(n, down, add_table, seed_mask):
    mask = seed_mask
    work = [i for i in range(n) if (seed_mask >> i) & 1]
    while work:
        i = work.pop()
        grow = down[i] & ~mask
        j = 0
        g = grow
        while g:
            if g & 1:
                mask |= 1 << j
                work.append(j)
            g >>= 1
            j += 1
        m = mask
        b = 0
        while m:
            if m & 1:
                k = add_table[i * n + b]
                if not (mask >> k) & 1:
                    mask |= 1 << k
                    work.append(k)
            m >>= 1
            b += 1
    return mask


def all_ideals(a: FinAlgebra) -> tuple[Ideal, ...]:
    """Every ideal, found by saturating the closure system from {0}."""
    n, down, add_table = _ideal_closure_masks(a)
    zero_mask = 1 << a.index[a.zero]
    base = _close_ideal(n, down, add_table, zero_mask)
    seen = {base}
    frontier = [base]
    while frontier:
        cur = frontier.pop()
        rest = ((1 << n) - 1) & ~cur
        i = 0
        m = rest
        while m:
            if m & 1:
                grown = _close_ideal(n, down, add_table, cur | (1 << i))
                if grown not in seen:
                    seen.add(grown)
                    frontier.append(grown)
            m >>= 1
            i += 1
    ideals = [Ideal(a, frozenset(a.elements_of(mask))) for mask in seen]
    ideals.sort(key=lambda i: (len(i.members), i.sorted_members()))
    return tuple(ideals)


def maximal_ideals(a: FinAlgebra) -> tuple[Ideal, ...]:
    """Maximal proper ideals, ordered canonically."""
    if a.is_trivial():
        raise InputError("the one-element algebra has no proper ideals")
    proper = [i for i in all_ideals(a) if i.is_proper()]
    out = [i for i in proper
           if not any(other is not i and i.members < other.members for other in proper)]
    return tuple(out)


def prime_ideals(a: FinAlgebra) -> tuple[Ideal, ...]:
    return tuple(i for i in all_ideals(a) if i.is_prime())


def radical(a: FinAlgebra) -> frozenset:
    maxes = maximal_ideals(a)
    out = set(maxes[0].members)
    for i in maxes[1:]:
        out &= i.members
    return frozenset(out)


def is_semisimple(a: FinAlgebra) -> bool:
    if a.is_trivial():
        return False
    return radical(a) == {a.zero}


def quotient(b: FinAlgebra, i: Ideal):
    """The quotient modulo the congruence induced by the ideal.

    Returns the quotient as an abstract-table algebra together with the
    projection hom.  Classes are identified by distance membership; the
    induced tables are verified to be well defined on every pair.
    """
    if i.parent is not b:
        raise InputError("ideal belongs to a different algebra")
    if not i.check():
        raise InputError("the given subset is not an ideal")
    if b.signature != MV:
        raise InputError("quotients are taken in the full signature")

    def same_class(x, y):
        return b.add(b.sub(x, y), b.sub(y, x)) in i.members

    classes: list[list] = []
    class_of: dict = {}
    for e in b.elements:
        for idx, cls in enumerate(classes):
            if same_class(e, cls[0]):
                cls.append(e)
                class_of[e] = idx
                break
        else:
            class_of[e] = len(classes)
            classes.append([e])
    labels = [f"c{idx}" for idx in range(len(classes))]
    n = len(classes)
    add_t = [[0] * n for _ in range(n)]
    neg_t = [0] * n
    for idx, cls in enumerate(classes):
        rep = cls[0]
        neg_t[idx] = class_of[b.neg(rep)]
        for jdx, cls2 in enumerate(classes):
            add_t[idx][jdx] = class_of[b.add(rep, cls2[0])]
    # well-definedness: every member must land in the representative's class
    for x in b.elements:
        if class_of[b.neg(x)] != neg_t[class_of[x]]:
            raise InputError("subset does not induce a congruence (negation)")
        for y in b.elements:
            if class_of[b.add(x, y)] != add_t[class_of[x]][class_of[y]]:
                raise InputError("subset does not induce a congruence (sum)")
    q = FinAlgebra.from_tables(
        MV, labels, {"add": add_t, "neg": neg_t},
        labels[class_of[b.zero]], labels[class_of[b.one]])
    projection = Hom(b, tuple(f"c{class_of[e]}" for e in b.elements), q)
    return q, projection


@dataclass(frozen=True)
class Representation:
    """The fuzzy-subset picture of a semisimple algebra.

    ``vectors[e]`` lists, per maximal ideal in canonical order, the value of
    ``e`` under the unique embedding of the corresponding simple quotient
    into the unit interval.
    """

    algebra: FinAlgebra
    max_ideals: tuple
    vectors: dict

    def value(self, e, which: int) -> Fraction:
        return self.vectors[e][which]

    def image_algebra(self) -> FinAlgebra:
        grid = max(v.denominator for vec in self.vectors.values() for v in vec)
        chains = [grid] * len(self.max_ideals)
        return FinAlgebra.from_tuples(chains, self.vectors.values(), MV)

    def as_hom(self) -> Hom:
        image = self.image_algebra()
        return Hom(self.algebra, tuple(self.vectors[e] for e in self.algebra.elements),
                   image)


def belluce_embedding(b: FinAlgebra) -> Representation:
    """Embed a semisimple algebra into fuzzy subsets of its maximal spectrum.

    Each simple quotient is a finite chain, so its embedding into the unit
    interval is the rank map; injectivity of the joint map is re-checked.
    """
    if not is_semisimple(b):
        raise InputError("representation requires a semisimple algebra")
    maxes = maximal_ideals(b)
    columns = []
    for m in maxes:
        q, proj = quotient(b, m)
        chain = sorted(q.elements, key=lambda c: sum(
            1 for d in q.elements if q.leq(d, c)))
        for lo, hi in zip(chain, chain[1:]):
            if not q.leq(lo, hi):
                raise InputError("quotient by a maximal ideal is not a chain")
        rank = {c: Fraction(k, len(chain) - 1) for k, c in enumerate(chain)}
        columns.append({e: rank[proj(e)] for e in b.elements})
    vectors = {e: tuple(col[e] for col in columns) for e in b.elements}
    if len(set(vectors.values())) != len(b.elements):
        raise InputError("representation is not injective; radical is nonzero")
    return Representation(b, maxes, vectors)


def hom_ideal_bijection(b: FinAlgebra, denominator_bound=None):
    """Pair every hom into the unit interval with its zero-kernel ideal.

    Verifies that the pairing is a bijection onto the maximal spectrum and
    that each hom factors through the quotient embedding.
    """
    from .algebra import enumerate_homs

    if not is_semisimple(b):
        raise InputError("the hom/spectrum pairing requires semisimplicity")
    homs = enumerate_homs(b, denominator_bound)
    maxes = maximal_ideals(b)
    rep = belluce_embedding(b)
    pairs = []
    seen = set()
    for h in homs:
        k = h.kernel()
        match = [i for i, m in enumerate(maxes) if m.members == k]
        if len(match) != 1:
            raise InputError("a hom kernel is not a maximal ideal")
        if match[0] in seen:
            raise InputError("two homs share a kernel")
        seen.add(match[0])
        for e in b.elements:
            if h(e) != rep.value(e, match[0]):
                raise InputError("hom disagrees with the quotient embedding")
        pairs.append((h, maxes[match[0]]))
    if len(seen) != len(maxes):
        raise InputError("pairing misses part of the maximal spectrum")
    return tuple(pairs)


@dataclass(frozen=True)
class TracePoset:
    """Restrictions of the maximal ideals to a generating subreduct."""

    subreduct: FinAlgebra
    ambient: FinAlgebra
    sources: tuple          # maximal ideals of the ambient algebra
    traces: tuple           # frozensets, aligned with sources
    leq: tuple              # boolean matrix over trace indices

    def distinct_traces(self):
        out = []
        for t in self.traces:
            if t not in out:
                out.append(t)
        return tuple(out)


def max_le(a: FinAlgebra, b: FinAlgebra) -> TracePoset:
    """The maximal ideals of the generated algebra, traced onto the subreduct.

    Requires that the subreduct generates the ambient algebra; every trace is
    verified to be a prime ideal of the subreduct.
    """
    from .algebra import generate

    closure, _ = generate(b, a.elements, MV)
    if set(closure.elements) != set(b.elements):
        raise InputError("the subreduct does not generate the ambient algebra")
    maxes = maximal_ideals(b)
    traces = tuple(frozenset(m.members & set(a.elements)) for m in maxes)
    for t in traces:
        if not Ideal(a, t).check() or not Ideal(a, t).is_prime():
            raise InputError("a trace fails the prime-ideal conditions")
    k = len(traces)
    leq = tuple(tuple(traces[i] <= traces[j] for j in range(k)) for i in range(k))
    return TracePoset(a, b, maxes, traces, leq)


# ---------------------------------------------------------------------------
# Cuts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CutPair:
    parent: FinAlgebra
    members: frozenset
    upper: frozenset


def upper_bounds(a: FinAlgebra, xs) -> frozenset:
    xs = tuple(xs)
    return frozenset(b for b in a.elements if all(a.leq(x, b) for x in xs))


def lower_bounds(a: FinAlgebra, xs) -> frozenset:
    xs = tuple(xs)
    return frozenset(b for b in a.elements if all(a.leq(b, x) for x in xs))


def is_cut(a: FinAlgebra, xs) -> bool:
    xs = frozenset(xs)
    return xs == lower_bounds(a, upper_bounds(a, xs))


def cut_pair(a: FinAlgebra, xs) -> CutPair:
    xs = frozenset(xs)
    if not is_cut(a, xs):
        raise InputError("the set is not a cut")
    return CutPair(a, xs, upper_bounds(a, xs))


def all_cuts(a: FinAlgebra, exhaustive: bool | None = None) -> tuple[frozenset, ...]:
    """Every cut of the carrier.

    ``exhaustive=True`` scans all 2^n subsets through the kernel backend
    (guarded at 64 elements); the default switches to the principal-downset
    sweep beyond 16 elements, which is equivalent on finite lattices and is
    itself cross-checked against the exhaustive path by the test suite.
    """
    n = len(a.elements)
    if exhaustive is None:
        exhaustive = n <= 16
    if not exhaustive:
        cuts = {frozenset(x for x in a.elements if a.leq(x, s)) for s in a.elements}
        return tuple(sorted(cuts, key=lambda c: (len(c), tuple(sorted(c)))))
    if n > CUT_CARRIER_GUARD:
        raise SizeGuardError(
            f"exhaustive cut enumeration is guarded at {CUT_CARRIER_GUARD} elements")
    up, down = [], []
    for e in a.elements:
        um = dm = 0
        for j, x in enumerate(a.elements):
            if a.leq(e, x):
                um |= 1 << j
            if a.leq(x, e):
                dm |= 1 << j
        up.append(um)
        down.append(dm)
    masks = kernels.all_cuts_exhaustive(n, up, down)
    cuts = [frozenset(a.elements_of(m)) for m in masks]
    return tuple(sorted(cuts, key=lambda c: (len(c), tuple(sorted(c)))))


def is_limit_cut(a: FinAlgebra, cut, rep: Representation | None = None) -> bool:
    """Distance criterion: the pointwise infimum over pairs (member, bound)
    of the represented difference is the zero fuzzy subset."""
    rep = rep or belluce_embedding(a)
    pair = cut if isinstance(cut, CutPair) else cut_pair(a, cut)
    if not pair.members or not pair.upper:
        return False
    width = len(rep.max_ideals)
    for coord in range(width):
        best = None
        for x in pair.members:
            vx = rep.value(x, coord)
            for u in pair.upper:
                d = qunit.mv_add(qunit.mv_sub(rep.value(u, coord), vx),
                                 qunit.mv_sub(vx, rep.value(u, coord)))
                if best is None or d < best:
                    best = d
            if best == 0:
                break
        if best != 0:
            return False
    return True


def is_limit_cut_opposite(a: FinAlgebra, cut, rep=None,
                          cuts: tuple | None = None) -> bool:
    """Second, independent criterion: some cut's negated infimum matches the
    cut's represented supremum."""
    rep = rep or belluce_embedding(a)
    pair = cut if isinstance(cut, CutPair) else cut_pair(a, cut)
    if not pair.members:
        return False
    width = len(rep.max_ideals)
    sup = tuple(max(rep.value(x, c) for x in pair.members) for c in range(width))
    for other in cuts if cuts is not None else all_cuts(a):
        if not other:
            continue
        inf_neg = tuple(min(qunit.mv_neg(rep.value(y, c)) for y in other)
                        for c in range(width))
        if inf_neg == sup:
            return True
    return False


def is_lcc(a: FinAlgebra, exhaustive: bool | None = None) -> bool:
    """Limit cut completeness: every limit cut's represented supremum is
    realized by a carrier element."""
    rep = belluce_embedding(a)
    width = len(rep.max_ideals)
    realized = set(rep.vectors.values())
    for cut in all_cuts(a, exhaustive):
        if not cut:
            continue
        if not is_limit_cut(a, cut, rep):
            continue
        sup = tuple(max(rep.value(x, c) for x in cut) for c in range(width))
        if sup not in realized:
            return False
    return True
