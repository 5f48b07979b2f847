"""Finite many-valued algebras and their homomorphisms.

Two signatures are supported:

* ``mv`` - truncated sum, involutive negation, constant 0 (join, meet and
  product derived);
* ``mvlat`` - the negation-free ordered signature: sum, product, join, meet
  and both bounds.

Carriers come in two representations.  ``tuples`` algebras live inside a
product of standard finite chains and compute coordinatewise with exact
rationals; ``tables`` algebras are abstract carriers with explicit operation
tables.  Both are immutable after construction, and construction verifies
closure under the declared signature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import qunit, term
from .errors import InputError, InvariantError

MV = "mv"
MVLAT = "mvlat"

_BINARY = {MV: ("add",), MVLAT: ("add", "mul", "join", "meet")}
_UNARY = {MV: ("neg",), MVLAT: ()}


class FinAlgebra:
    """A finite algebra over one of the two signatures.

    Elements are kept in a canonical order (sorted tuples of rationals, or
    sorted labels); every operation is total on the carrier.
    """

    def __init__(self, kind, signature, elements, *, chains=None, tables=None,
                 zero=None, one=None):
        if signature not in (MV, MVLAT):
            raise InputError(f"unknown signature {signature!r}")
        self.kind = kind
        self.signature = signature
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InputError("duplicate elements in carrier")
        self.chains = tuple(chains) if chains is not None else None
        self._tables = dict(tables) if tables is not None else {}
        self.zero = zero
        self.one = one

    # -- constructors -------------------------------------------------

    @classmethod
    def from_tuples(cls, chains, elements, signature=MV):
        chains = tuple(int(n) for n in chains)
        if any(n < 1 for n in chains):
            raise InputError("chain orders must be >= 1")
        elems = sorted(set(tuple(e) for e in elements))
        width = len(chains)
        for e in elems:
            if len(e) != width:
                raise InputError(f"element {e!r} has wrong arity")
            for value, n in zip(e, chains):
                if not isinstance(value, Fraction):
                    raise InputError(f"element {e!r} holds a non-rational coordinate")
                if not qunit.in_chain(value, n):
                    raise InputError(f"coordinate {value} of {e!r} is off the 1/{n} grid")
        zero = tuple(qunit.ZERO for _ in chains)
        one = tuple(qunit.ONE for _ in chains)
        alg = cls("tuples", signature, elems, chains=chains, zero=zero, one=one)
        alg._check_carrier()
        return alg

    @classmethod
    def from_tables(cls, signature, labels, tables, zero, one):
        labels = [str(x) for x in labels]
        order = sorted(labels)
        if len(set(order)) != len(labels):
            raise InputError("duplicate labels")
        old_index = {lab: i for i, lab in enumerate(labels)}
        perm = [old_index[lab] for lab in order]
        rank = {old: new for new, old in enumerate(perm)}
        n = len(order)
        fixed = {}
        for name in _BINARY[signature]:
            if name not in tables:
                raise InputError(f"missing table for {name!r}")
            t = tables[name]
            flat = [0] * (n * n)
            for i in range(n):
                for j in range(n):
                    entry = t[perm[i]][perm[j]]
                    k = old_index[str(entry)] if not isinstance(entry, int) else entry
                    flat[i * n + j] = rank[k]
            fixed[name] = flat
        for name in _UNARY[signature]:
            if name not in tables:
                raise InputError(f"missing table for {name!r}")
            t = tables[name]
            col = [0] * n
            for i in range(n):
                entry = t[perm[i]]
                k = old_index[str(entry)] if not isinstance(entry, int) else entry
                col[i] = rank[k]
            fixed[name] = col
        if zero not in order:
            raise InputError("zero label missing from carrier")
        alg = cls("tables", signature, order, tables=fixed, zero=zero, one=one)
        if signature == MV:
            derived_one = alg.neg(zero)
            if one is None:
                alg.one = derived_one
            elif one != derived_one:
                raise InputError("declared unit disagrees with neg(zero)")
        elif one not in order:
            raise InputError("one label missing from carrier")
        return alg

    def _check_carrier(self):
        if self.zero not in self.index or self.one not in self.index:
            raise InputError("carrier must contain the bottom and top elements")
        for name in _BINARY[self.signature]:
            op = getattr(self, name)
            for a in self.elements:
                for b in self.elements:
                    if op(a, b) not in self.index:
                        raise InputError(
                            f"carrier is not closed under {name}: {a!r}, {b!r}")
        for name in _UNARY[self.signature]:
            op = getattr(self, name)
            for a in self.elements:
                if op(a) not in self.index:
                    raise InputError(f"carrier is not closed under {name}: {a!r}")

    # -- operations ----------------------------------------------------

    def add(self, a, b):
        if self.kind == "tuples":
            return tuple(qunit.mv_add(x, y) for x, y in zip(a, b))
        return self.elements[self._tables["add"][self.index[a] * len(self.elements) + self.index[b]]]

    def mul(self, a, b):
        if self.kind == "tuples":
            return tuple(qunit.mv_mul(x, y) for x, y in zip(a, b))
        if self.signature == MVLAT:
            return self.elements[self._tables["mul"][self.index[a] * len(self.elements) + self.index[b]]]
        return self.neg(self.add(self.neg(a), self.neg(b)))

    def neg(self, a):
        if self.signature != MV:
            raise InputError("negation is not part of the positive signature")
        if self.kind == "tuples":
            return tuple(qunit.mv_neg(x) for x in a)
        return self.elements[self._tables["neg"][self.index[a]]]

    def sub(self, a, b):
        return self.mul(a, self.neg(b))

    def join(self, a, b):
        if self.kind == "tuples":
            return tuple(qunit.join(x, y) for x, y in zip(a, b))
        if self.signature == MVLAT:
            return self.elements[self._tables["join"][self.index[a] * len(self.elements) + self.index[b]]]
        # a v b = (a (-) b) (+) b in the full signature
        return self.add(self.mul(a, self.neg(b)), b)

    def meet(self, a, b):
        if self.kind == "tuples":
            return tuple(qunit.meet(x, y) for x, y in zip(a, b))
        if self.signature == MVLAT:
            return self.elements[self._tables["meet"][self.index[a] * len(self.elements) + self.index[b]]]
        return self.neg(self.join(self.neg(a), self.neg(b)))

    def leq(self, a, b) -> bool:
        if self.kind == "tuples":
            return all(x <= y for x, y in zip(a, b))
        return self.join(a, b) == b

    def term_ops(self) -> dict:
        ops = {
            term.ADD: self.add,
            term.MUL: self.mul,
            term.JOIN: self.join,
            term.MEET: self.meet,
            term.ZERO: self.zero,
            term.ONE: self.one,
        }
        if self.signature == MV:
            ops[term.NEG] = self.neg
        return ops

    def op_names(self):
        return _BINARY[self.signature] + _UNARY[self.signature]

    def index_tables(self, ops=None):
        """Flat index tables for the kernel routines (cached)."""
        names = tuple(ops) if ops is not None else self.op_names()
        key = ("#tables", names)
        if key in self._tables:
            return self._tables[key]
        n = len(self.elements)
        binary, unary = [], []
        for name in names:
            op = getattr(self, name)
            if name in ("neg",):
                unary.append([self.index[op(a)] for a in self.elements])
            else:
                flat = [0] * (n * n)
                for i, a in enumerate(self.elements):
                    for j, b in enumerate(self.elements):
                        flat[i * n + j] = self.index[op(a, b)]
                binary.append(flat)
        self._tables[key] = (binary, unary)
        return self._tables[key]

    def mask_of(self, elements) -> int:
        mask = 0
        for e in elements:
            mask |= 1 << self.index[e]
        return mask

    def elements_of(self, mask: int) -> tuple:
        return tuple(e for i, e in enumerate(self.elements) if (mask >> i) & 1)

    def subalgebra(self, elements, signature=None):
        """The sub-carrier as a standalone algebra (closure is re-verified)."""
        signature = signature or self.signature
        if self.kind == "tuples":
            return FinAlgebra.from_tuples(self.chains, elements, signature)
        subset = sorted(set(elements))
        sub_index = {e: i for i, e in enumerate(subset)}
        tables = {}
        for name in _BINARY[signature]:
            op = getattr(self, name)
            tables[name] = [[sub_index[op(a, b)] for b in subset] for a in subset]
        for name in _UNARY[signature]:
            op = getattr(self, name)
            tables[name] = [sub_index[op(a)] for a in subset]
        return FinAlgebra.from_tables(signature, subset, tables, self.zero, self.one)

    # -- misc ------------------------------------------------------------

    def grid(self) -> int:
        if self.kind == "tuples":
            return math.lcm(1, *self.chains) if self.chains else 1
        raise InputError("abstract carriers have no value grid")

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self.index

    def __eq__(self, other):
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        if self.kind != other.kind or self.signature != other.signature:
            return False
        if self.kind == "tuples":
            return self.chains == other.chains and self.elements == other.elements
        return (self.elements == other.elements
                and all(self._tables[k] == other._tables[k]
                        for k in _BINARY[self.signature] + _UNARY[self.signature]))

    __hash__ = None

    def __repr__(self):
        if self.kind == "tuples":
            return f"FinAlgebra(tuples {self.signature}, chains={list(self.chains)}, {len(self)} elements)"
        return f"FinAlgebra(tables {self.signature}, {len(self)} elements)"


def lukasiewicz_chain(n: int) -> FinAlgebra:
    """The standard chain with n+1 equally spaced elements, as 1-tuples."""
    if n < 1:
        raise InputError("chain order must be >= 1")
    return FinAlgebra.from_tuples([n], [(v,) for v in qunit.chain_values(n)], MV)


def product(factors) -> FinAlgebra:
    """Coordinatewise product; the empty product is the one-element algebra."""
    factors = list(factors)
    if not factors:
        return FinAlgebra.from_tuples([], [()], MV)
    chains = []
    for f in factors:
        if f.kind != "tuples":
            raise InputError("products are only defined for tuple carriers")
        chains.extend(f.chains)
    elements = [sum(combo, ()) for combo in iproduct(*(f.elements for f in factors))]
    return FinAlgebra.from_tuples(chains, elements, MV)


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def check_axioms(algebra: FinAlgebra, max_failures: int = 20) -> AxiomReport:
    """Exhaustively verify the defining equations of the declared signature.

    Every failing instantiation (up to ``max_failures``) is reported as a
    human-readable string; an empty failure list means the algebra satisfies
    its axioms.
    """
    failures: list[str] = []

    def record(law, *elems):
        if len(failures) < max_failures:
            failures.append(f"{law} fails at {elems!r}")

    elems = algebra.elements
    if algebra.signature == MV:
        add_, neg_ = algebra.add, algebra.neg
        zero = algebra.zero
        for a in elems:
            if add_(a, zero) != a:
                record("MV1 (identity)", a)
            if neg_(neg_(a)) != a:
                record("MV2", a)
            if add_(neg_(zero), a) != neg_(zero):
                record("MV3", a)
            for b in elems:
                if add_(a, b) != add_(b, a):
                    record("MV1 (commutativity)", a, b)
                if add_(neg_(add_(neg_(a), b)), b) != add_(neg_(add_(neg_(b), a)), a):
                    record("MV4", a, b)
                for c in elems:
                    if add_(add_(a, b), c) != add_(a, add_(b, c)):
                        record("MV1 (associativity)", a, b, c)
    else:
        add_, mul_ = algebra.add, algebra.mul
        join_, meet_ = algebra.join, algebra.meet
        zero, one = algebra.zero, algebra.one
        for a in elems:
            if join_(a, zero) != a or meet_(a, one) != a:
                record("bounds", a)
            if join_(a, a) != a or meet_(a, a) != a:
                record("idempotence", a)
            if mul_(a, one) != a:
                record("unit law (product)", a)
            if add_(a, zero) != a:
                record("unit law (sum)", a)
            for b in elems:
                if join_(a, b) != join_(b, a) or meet_(a, b) != meet_(b, a):
                    record("lattice commutativity", a, b)
                if add_(a, b) != add_(b, a):
                    record("sum commutativity", a, b)
                if mul_(a, b) != mul_(b, a):
                    record("product commutativity", a, b)
                if join_(a, meet_(a, b)) != a or meet_(a, join_(a, b)) != a:
                    record("absorption", a, b)
                if join_(mul_(a, b), meet_(a, b)) != meet_(a, b):
                    record("product below meet", a, b)
                if join_(add_(a, b), join_(a, b)) != add_(a, b):
                    record("sum above join", a, b)
                for c in elems:
                    if join_(join_(a, b), c) != join_(a, join_(b, c)):
                        record("join associativity", a, b, c)
                    if meet_(meet_(a, b), c) != meet_(a, meet_(b, c)):
                        record("meet associativity", a, b, c)
                    if meet_(a, join_(b, c)) != join_(meet_(a, b), meet_(a, c)):
                        record("distributivity", a, b, c)
                    if add_(a, join_(b, c)) != join_(add_(a, b), add_(a, c)):
                        record("sum over join", a, b, c)
                    if add_(a, meet_(b, c)) != meet_(add_(a, b), add_(a, c)):
                        record("sum over meet", a, b, c)
                    if mul_(a, join_(b, c)) != join_(mul_(a, b), mul_(a, c)):
                        record("product over join", a, b, c)
                    if mul_(a, meet_(b, c)) != meet_(mul_(a, b), mul_(a, c)):
                        record("product over meet", a, b, c)
    return AxiomReport(not failures, tuple(failures))


def _staged_closure(seed, signature, ops, zero, one):
    """Breadth-first closure with a derivation trace; shared machinery."""
    events = []
    current: dict = {}

    def admit(element, event):
        if element not in current:
            current[element] = len(current)
            events.append(event)

    admit(zero, ("zero", zero))
    admit(one, ("one", one))
    for i, s in enumerate(seed):
        admit(s, ("gen", s, i))
    unary = [("neg", ops[term.NEG])] if signature == MV else []
    binary_names = _BINARY[signature]
    while True:
        stage = sorted(current, key=current.get)
        before = len(current)
        for name, op in unary:
            for a in stage:
                admit(op(a), (name, op(a), a))
        for name in binary_names:
            op = ops[name]
            for a in stage:
                for b in stage:
                    admit(op(a, b), (name, op(a, b), a, b))
        if len(current) == before:
            break
    trace = term.ClosureTrace(tuple(events), ops)
    return sorted(current), trace


def generate(ambient: FinAlgebra, seed, signature=None):
    """Close ``seed`` (plus the bounds) under the signature, inside ``ambient``.

    Returns the generated subalgebra together with a replayable trace that
    records, for every element, the first derivation found; the closure is
    staged breadth-first so the recorded witnesses are shallow.
    """
    signature = signature or ambient.signature
    if signature == MV and ambient.signature != MV:
        raise InputError("ambient carrier does not support negation")
    seed = sorted(set(seed))
    for s in seed:
        if s not in ambient.index:
            raise InputError(f"seed element {s!r} is not in the ambient carrier")
    ops = ambient.term_ops()
    if term.NEG not in ops and signature == MV:
        raise InputError("ambient carrier does not support negation")
    closure, trace = _staged_closure(seed, signature, ops, ambient.zero, ambient.one)
    return ambient.subalgebra(closure, signature), trace


def tuple_ops(width: int) -> dict:
    """Coordinatewise operations for width-tuples, keyed like term tables."""
    return {
        term.ADD: lambda a, b: tuple(qunit.mv_add(x, y) for x, y in zip(a, b)),
        term.MUL: lambda a, b: tuple(qunit.mv_mul(x, y) for x, y in zip(a, b)),
        term.NEG: lambda a: tuple(qunit.mv_neg(x) for x in a),
        term.JOIN: lambda a, b: tuple(qunit.join(x, y) for x, y in zip(a, b)),
        term.MEET: lambda a, b: tuple(qunit.meet(x, y) for x, y in zip(a, b)),
        term.ZERO: tuple(qunit.ZERO for _ in range(width)),
        term.ONE: tuple(qunit.ONE for _ in range(width)),
    }


def generate_in_grid(chains, seed, signature=MV):
    """Like :func:`generate`, but the ambient chain product stays virtual.

    The closure only ever touches generated elements, so the (possibly huge)
    full product is never materialized.
    """
    chains = tuple(int(n) for n in chains)
    seed = sorted(set(tuple(e) for e in seed))
    for e in seed:
        if len(e) != len(chains):
            raise InputError(f"seed element {e!r} has wrong arity")
        for v, n in zip(e, chains):
            if not qunit.in_chain(v, n):
                raise InputError(f"seed coordinate {v} is off the 1/{n} grid")
    ops = tuple_ops(len(chains))
    closure, trace = _staged_closure(seed, signature, ops,
                                     ops[term.ZERO], ops[term.ONE])
    return FinAlgebra.from_tuples(chains, closure, signature), trace


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hom:
    """A signature-preserving map; target ``None`` means the unit interval."""

    source: FinAlgebra
    values: tuple
    target: FinAlgebra | None = None

    def __call__(self, element):
        return self.values[self.source.index[element]]

    def kernel(self) -> frozenset:
        zero = qunit.ZERO if self.target is None else self.target.zero
        return frozenset(e for e, v in zip(self.source.elements, self.values) if v == zero)

    def restrict(self, sub: FinAlgebra) -> "Hom":
        return Hom(sub, tuple(self(e) for e in sub.elements), self.target)

    def preserves(self) -> bool:
        """Exhaustive preservation re-check, independent of any search."""
        src = self.source
        if self.target is None:
            ops = {"add": qunit.mv_add, "mul": qunit.mv_mul, "join": qunit.join,
                   "meet": qunit.meet, "neg": qunit.mv_neg}
            zero, one = qunit.ZERO, qunit.ONE
        else:
            tgt = self.target
            ops = {"add": tgt.add, "mul": tgt.mul, "join": tgt.join, "meet": tgt.meet}
            if tgt.signature == MV:
                ops["neg"] = tgt.neg
            zero, one = tgt.zero, tgt.one
        if self(src.zero) != zero or self(src.one) != one:
            return False
        for name in _BINARY[src.signature]:
            src_op = getattr(src, name)
            tgt_op = ops[name]
            for a in src.elements:
                fa = self(a)
                for b in src.elements:
                    if self(src_op(a, b)) != tgt_op(fa, self(b)):
                        return False
        for name in _UNARY[src.signature]:
            src_op = getattr(src, name)
            tgt_op = ops[name]
            for a in src.elements:
                if self(src_op(a)) != tgt_op(self(a)):
                    return False
        return True

    def __repr__(self):
        vals = ", ".join(qunit.format_unit(v) if isinstance(v, Fraction) else repr(v)
                         for v in self.values)
        return f"Hom[{vals}]"


def identity_hom(a: FinAlgebra) -> Hom:
    return Hom(a, a.elements, a)


@dataclass(frozen=True)
class HomSet:
    """All homomorphisms into the unit interval, canonically ordered.

    ``complete`` is false when the search grid was a user-supplied guess
    (abstract carriers), in which case further homomorphisms with larger
    denominators cannot be ruled out.
    """

    algebra: FinAlgebra
    homs: tuple
    grid: int
    complete: bool

    def __iter__(self):
        return iter(self.homs)

    def __len__(self):
        return len(self.homs)

    def __getitem__(self, i):
        return self.homs[i]


def enumerate_homs(a: FinAlgebra, denominator_bound: int | None = None) -> HomSet:
    """Backtracking search for every hom into the unit interval.

    For tuple carriers the codomain grid is the lcm of the ambient chain
    orders, which is exact: every hom extends to the generated subalgebra of
    the chain product, and those homs evaluate coordinates.  For abstract
    carriers the caller must supply the grid and the result is flagged as
    possibly incomplete.
    """
    if a.kind == "tuples":
        grid = a.grid()
        if denominator_bound is not None:
            if denominator_bound < grid:
                raise InputError(f"bound must be at least the carrier grid {grid}")
            grid = math.lcm(grid, denominator_bound)
        complete = True
    else:
        if denominator_bound is None:
            raise InputError("abstract carriers need an explicit denominator bound")
        grid = denominator_bound
        complete = False
    n = len(a.elements)
    candidates = qunit.chain_values(grid)
    positions = _linear_extension(a)
    pos_of = [0] * n
    for p, i in enumerate(positions):
        pos_of[i] = p

    op_checks: list[list[tuple]] = [[] for _ in range(n)]
    binary, unary = a.index_tables()
    for t, name in zip(binary, _BINARY[a.signature]):
        for i in range(n):
            for j in range(n):
                k = t[i * n + j]
                p = max(pos_of[i], pos_of[j], pos_of[k])
                op_checks[p].append((name, i, j, k))
    for t, name in zip(unary, _UNARY[a.signature]):
        for i in range(n):
            k = t[i]
            p = max(pos_of[i], pos_of[k])
            op_checks[p].append((name, i, k))

    lower_checks: list[list[int]] = [[] for _ in range(n)]
    for p, i in enumerate(positions):
        e = a.elements[i]
        for q in range(p):
            j = positions[q]
            if a.leq(a.elements[j], e):
                lower_checks[p].append(j)

    ops_unit = {"add": qunit.mv_add, "mul": qunit.mv_mul, "join": qunit.join,
                "meet": qunit.meet, "neg": qunit.mv_neg}
    zero_i, one_i = a.index[a.zero], a.index[a.one]
    values: list = [None] * n
    found: list[tuple] = []

    def consistent(p: int) -> bool:
        for check in op_checks[p]:
            if len(check) == 4:
                name, i, j, k = check
                if values[k] != ops_unit[name](values[i], values[j]):
                    return False
            else:
                name, i, k = check
                if values[k] != ops_unit[name](values[i]):
                    return False
        return True

    def dfs(p: int):
        if p == n:
            found.append(tuple(values))
            return
        i = positions[p]
        if i == zero_i:
            options = (qunit.ZERO,)
        elif i == one_i:
            options = (qunit.ONE,)
        else:
            floor = qunit.ZERO
            for j in lower_checks[p]:
                if values[j] > floor:
                    floor = values[j]
            options = tuple(v for v in candidates if v >= floor)
        for v in options:
            values[i] = v
            if consistent(p):
                dfs(p + 1)
        values[i] = None

    dfs(0)
    homs = tuple(Hom(a, vals) for vals in sorted(set(found)))
    for h in homs:
        if not h.preserves():
            raise InvariantError("hom search produced a non-preserving map")
    return HomSet(a, homs, grid, complete)


def _linear_extension(a: FinAlgebra) -> list[int]:
    """Element indices in some order extending the lattice order."""
    if a.kind == "tuples":
        # canonical (lexicographic) order extends the coordinatewise order
        return list(range(len(a.elements)))
    n = len(a.elements)
    below = [sum(1 for j in range(n) if j != i and a.leq(a.elements[j], a.elements[i]))
             for i in range(n)]
    return sorted(range(n), key=lambda i: (below[i], i))


def extend_hom(f: Hom, witnesses: term.GenWitness, generated: FinAlgebra) -> Hom:
    """Extend a hom on a generating positive subreduct to the full algebra.

    The extension evaluates each element's witness term on the images of the
    generators; it is then exhaustively re-checked (preservation and
    agreement on the subreduct), failure of either being an internal error.
    """
    if f.target is not None:
        raise InputError("only homs into the unit interval can be extended")
    for g in witnesses.generators:
        if g not in f.source.index:
            raise InputError("hom is not defined on every generator")
    images = [f(g) for g in witnesses.generators]
    values = []
    for b in generated.elements:
        try:
            w = witnesses.term_for(b)
        except KeyError:
            raise InputError(f"no witness for element {b!r}") from None
        values.append(term.evaluate(w, images))
    extension = Hom(generated, tuple(values))
    if not extension.preserves():
        raise InvariantError("extension fails to preserve the full signature; "
                             "the subreduct cannot actually generate the algebra")
    for e in f.source.elements:
        if e in generated.index and extension(e) != f(e):
            raise InvariantError("extension disagrees with the hom it extends")
    return extension


def kernel_intersection_is_diagonal(a: FinAlgebra, denominator_bound=None) -> bool:
    """True when the enumerated homs jointly separate all pairs of elements."""
    homs = enumerate_homs(a, denominator_bound)
    for i, x in enumerate(a.elements):
        for y in a.elements[i + 1:]:
            if all(h(x) == h(y) for h in homs):
                return False
    return True


def find_isomorphism(a: FinAlgebra, b: FinAlgebra):
    """A structure isomorphism between two small same-signature algebras.

    Returns the element mapping as a dict, or None.  Backtracking is pruned
    by matching lattice rank profiles, which is ample at the sizes used here.
    """
    if a.signature != b.signature or len(a) != len(b):
        return None

    def profile(alg, e):
        below = sum(1 for x in alg.elements if alg.leq(x, e))
        above = sum(1 for x in alg.elements if alg.leq(e, x))
        return (below, above, e == alg.zero, e == alg.one)

    prof_b: dict = {}
    for e in b.elements:
        prof_b.setdefault(profile(b, e), []).append(e)
    mapping: dict = {}
    used: set = set()
    names = _BINARY[a.signature] + _UNARY[a.signature]

    def ok_so_far(x):
        for name in names:
            op_a, op_b = getattr(a, name), getattr(b, name)
            if name in _UNARY[a.signature]:
                img = op_a(x)
                if img in mapping and mapping[img] != op_b(mapping[x]):
                    return False
                continue
            for y in mapping:
                for u, v in ((x, y), (y, x)):
                    img = op_a(u, v)
                    if img in mapping and mapping[img] != op_b(mapping[u], mapping[v]):
                        return False
        return True

    def dfs(i):
        if i == len(a.elements):
            return True
        x = a.elements[i]
        for y in prof_b.get(profile(a, x), []):
            if y in used:
                continue
            mapping[x] = y
            used.add(y)
            if ok_so_far(x) and dfs(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if dfs(0):
        return dict(mapping)
    return None
