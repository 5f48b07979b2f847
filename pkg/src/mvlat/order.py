"""The ordered hom-set, subreduct compatibility, and H-completeness.

Homomorphisms into the unit interval carry the pointwise order.  A positive
subreduct of an algebra induces, by restriction, a relation on the ambient
algebra's homs; two subreducts are compatible when they induce the same
relation.  A generating subreduct is H-complete when no strictly larger
generating subreduct is compatible with it.

The subreduct search exploits that enlarging a subreduct can only shrink
the induced relation: branches whose closure already disagrees with the base
relation can never recover, so the traversal prunes them wholesale.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .algebra import MV, MVLAT, FinAlgebra, HomSet, enumerate_homs, generate
from .errors import InputError, SizeGuardError
from .term import evaluate, synthesize_separator

H_COMPLETE_GUARD = 64


@dataclass(frozen=True)
class HomPoset:
    """Canonically ordered homs with their pointwise comparison matrix."""

    algebra: FinAlgebra
    homset: HomSet
    matrix: tuple  # matrix[i][j] iff hom i <= hom j pointwise

    def __len__(self):
        return len(self.homset)

    def leq(self, i: int, j: int) -> bool:
        return self.matrix[i][j]

    def covers(self):
        k = len(self.homset)
        out = []
        for i in range(k):
            for j in range(k):
                if i == j or not self.matrix[i][j]:
                    continue
                if any(m != i and m != j and self.matrix[i][m] and self.matrix[m][j]
                       for m in range(k)):
                    continue
                out.append((i, j))
        return tuple(out)

    def is_antichain(self) -> bool:
        k = len(self.homset)
        return all(not self.matrix[i][j] for i in range(k) for j in range(k) if i != j)

    def relation(self) -> frozenset:
        k = len(self.homset)
        return frozenset((i, j) for i in range(k) for j in range(k) if self.matrix[i][j])


def hom_poset(a: FinAlgebra, denominator_bound=None) -> HomPoset:
    homset = enumerate_homs(a, denominator_bound)
    matrix = _pointwise_matrix([h.values for h in homset])
    return HomPoset(a, homset, matrix)


def _pointwise_matrix(value_rows):
    k = len(value_rows)
    return tuple(
        tuple(all(x <= y for x, y in zip(value_rows[i], value_rows[j])) for j in range(k))
        for i in range(k))


def poset_isomorphic(matrix_a, matrix_b) -> bool:
    """Backtracking isomorphism test on two comparison matrices.

    Candidates are filtered by their up/down degree profile before the
    search; the posets here have a handful of points.
    """
    if len(matrix_a) != len(matrix_b):
        return False
    k = len(matrix_a)

    def profile(m, i):
        return (sum(m[i][j] for j in range(k)), sum(m[j][i] for j in range(k)))

    cands = [[j for j in range(k) if profile(matrix_a, i) == profile(matrix_b, j)]
             for i in range(k)]
    assignment = [-1] * k
    used = [False] * k

    def dfs(i):
        if i == k:
            return True
        for j in cands[i]:
            if used[j]:
                continue
            ok = all(matrix_a[i][p] == matrix_b[j][assignment[p]]
                     and matrix_a[p][i] == matrix_b[assignment[p]][j]
                     for p in range(i))
            if ok:
                assignment[i] = j
                used[j] = True
                if dfs(i + 1):
                    return True
                used[j] = False
                assignment[i] = -1
        return False

    return dfs(0)


# ---------------------------------------------------------------------------
# Compatibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompatRelation:
    """The order induced on the ambient homs by restriction to a subreduct."""

    base: FinAlgebra
    subreduct: FinAlgebra
    base_homs: HomSet
    relation: frozenset  # pairs of indices into base_homs

    def __eq__(self, other):
        if not isinstance(other, CompatRelation):
            return NotImplemented
        return self.relation == other.relation

    __hash__ = None


def _check_generates(a_elements, b: FinAlgebra):
    closure, _ = generate(b, a_elements, MV)
    if set(closure.elements) != set(b.elements):
        raise InputError("the subreduct does not generate the ambient algebra")


def compat_relation(a: FinAlgebra, b: FinAlgebra, base_homs: HomSet | None = None,
                    *, check_generates: bool = True) -> CompatRelation:
    if check_generates:
        _check_generates(a.elements, b)
    base_homs = base_homs or enumerate_homs(b)
    relation = _restriction_relation(a.elements, base_homs)
    return CompatRelation(b, a, base_homs, relation)


def _restriction_relation(elements, base_homs) -> frozenset:
    elements = tuple(elements)
    rows = [tuple(h(e) for e in elements) for h in base_homs]
    k = len(rows)
    return frozenset((i, j) for i in range(k) for j in range(k)
                     if all(x <= y for x, y in zip(rows[i], rows[j])))


def are_compatible(a: FinAlgebra, a2: FinAlgebra, b: FinAlgebra) -> bool:
    base_homs = enumerate_homs(b)
    return (compat_relation(a, b, base_homs).relation
            == compat_relation(a2, b, base_homs).relation)


# ---------------------------------------------------------------------------
# Order vs. kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderKernelEntry:
    i: int
    j: int
    pointwise_leq: bool
    kernel_reversed: bool      # kernel(j) <= kernel(i)
    witness_element: object = None
    separator: object = None
    separating_element: object = None


@dataclass(frozen=True)
class OrderKernelReport:
    poset: HomPoset
    entries: tuple

    @property
    def holds(self) -> bool:
        return all(e.pointwise_leq == e.kernel_reversed for e in self.entries)


def order_vs_kernels(hp: HomPoset) -> OrderKernelReport:
    """Check, pair by pair, that the pointwise order matches reverse kernel
    inclusion; for strict non-comparabilities the report carries the
    synthesized separating term and the carrier element it produces."""
    homs = hp.homset.homs
    kernels_ = [h.kernel() for h in homs]
    a = hp.algebra
    ops = a.term_ops()
    entries = []
    for i in range(len(homs)):
        for j in range(len(homs)):
            if i == j:
                continue
            pw = hp.leq(i, j)
            rev = kernels_[j] <= kernels_[i]
            witness = separator = sep_elem = None
            if not pw:
                witness = next(e for e in a.elements if homs[i](e) > homs[j](e))
                separator = synthesize_separator(homs[j](witness), homs[i](witness))
                sep_elem = evaluate(separator, [witness], ops=ops)
                if homs[j](sep_elem) != 0 or homs[i](sep_elem) == 0:
                    raise InputError("separating element failed its defining property")
            entries.append(OrderKernelEntry(i, j, pw, rev, witness, separator, sep_elem))
    return OrderKernelReport(hp, tuple(entries))


# ---------------------------------------------------------------------------
# Subreduct enumeration and H-completeness
# ---------------------------------------------------------------------------


def enumerate_subreducts(ambient: FinAlgebra, limit=None) -> tuple[FinAlgebra, ...]:
    """Every positive-signature-closed subset of the carrier containing the
    bounds, as standalone positive algebras, smallest first."""
    n = len(ambient.elements)
    binary, unary = ambient.index_tables(("add", "mul", "join", "meet"))
    base = kernels.close_mask(
        n, binary, unary,
        ambient.mask_of([ambient.zero, ambient.one]))
    universe = (1 << n) - 1
    masks = kernels.closed_supersets(n, binary, unary, base, universe, limit=limit)
    return tuple(ambient.subalgebra(ambient.elements_of(m), MVLAT) for m in masks)


@dataclass(frozen=True)
class HCompleteness:
    complete: bool
    subreduct: FinAlgebra
    ambient: FinAlgebra
    certificate: FinAlgebra | None = None

    def __bool__(self):
        return self.complete


def is_h_complete(a: FinAlgebra, b: FinAlgebra | None = None) -> HCompleteness:
    """Decide H-completeness of a generating subreduct, with certificate.

    When the answer is negative the certificate is the smallest strictly
    larger compatible generating subreduct found.  Ambient defaults to the
    algebra the subreduct generates.
    """
    if b is None:
        if a.kind != "tuples":
            raise InputError("an explicit ambient algebra is required here")
        from .algebra import product, lukasiewicz_chain
        ambient_full = product([lukasiewicz_chain(n) for n in a.chains])
        b, _ = generate(ambient_full, a.elements, MV)
    if len(b.elements) > H_COMPLETE_GUARD:
        raise SizeGuardError(f"carrier exceeds the {H_COMPLETE_GUARD}-element guard")
    _check_generates(a.elements, b)
    base_homs = enumerate_homs(b)
    target = _restriction_relation(a.elements, base_homs)

    n = len(b.elements)
    binary, unary = b.index_tables(("add", "mul", "join", "meet"))
    hom_rows = [tuple(h.values) for h in base_homs]
    pairs = [(i, j) for (i, j) in sorted(target) if i != j]

    def compatible(mask) -> bool:
        # relations only shrink as the set grows, so equality reduces to
        # checking that every non-diagonal base pair still holds
        for (i, j) in pairs:
            row_i, row_j = hom_rows[i], hom_rows[j]
            m = mask
            e = 0
            while m:
                if m & 1 and row_i[e] > row_j[e]:
                    return False
                m >>= 1
                e += 1
        return True

    base_mask = kernels.close_mask(n, binary, unary, b.mask_of(a.elements))
    if base_mask != b.mask_of(a.elements):
        raise InputError("the subreduct is not closed under the positive signature")
    universe = (1 << n) - 1
    masks = kernels.closed_supersets(n, binary, unary, base_mask, universe,
                                     admit=compatible)
    for mask in masks:
        if mask != base_mask:
            certificate = b.subalgebra(b.elements_of(mask), MVLAT)
            return HCompleteness(False, a, b, certificate)
    return HCompleteness(True, a, b)
