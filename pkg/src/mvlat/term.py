"""Term trees over the many-valued signatures.

Terms are immutable and structurally shared: the n-fold sum and n-fold
product builders reuse subtrees, so a term of multiplicity n costs O(log n)
fresh nodes.  Evaluation memoizes on node identity and therefore runs in
time linear in the number of *distinct* nodes.

Two term families appear:

* full signature - sum, product and negation (plus join/meet);
* positive signature - negation-free terms, preserved by homomorphisms of
  positive structures.

The module also provides the separating-term synthesis: for rationals
0 <= x < y <= 1 it constructs a negation-free unary term t with t(x) = 0 and
t(y) = 1, and the witness bookkeeping used to extend homomorphisms from a
generating set to the generated algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import qunit
from .errors import InputError, InvariantError

VAR = "var"
ZERO = "zero"
ONE = "one"
ADD = "add"
MUL = "mul"
NEG = "neg"
JOIN = "join"
MEET = "meet"

_ARITY = {VAR: 0, ZERO: 0, ONE: 0, ADD: 2, MUL: 2, NEG: 1, JOIN: 2, MEET: 2}


@dataclass(frozen=True)
class Term:
    op: str
    args: tuple["Term", ...] = ()
    index: int = -1

    def __post_init__(self):
        if self.op not in _ARITY:
            raise InputError(f"unknown term operation {self.op!r}")
        if len(self.args) != _ARITY[self.op]:
            raise InputError(f"{self.op} expects {_ARITY[self.op]} arguments")
        if self.op == VAR and self.index < 0:
            raise InputError("variable index must be >= 0")


def var(i: int) -> Term:
    return Term(VAR, index=i)


ZERO_TERM = Term(ZERO)
ONE_TERM = Term(ONE)


def add(left: Term, right: Term) -> Term:
    return Term(ADD, (left, right))


def mul(left: Term, right: Term) -> Term:
    return Term(MUL, (left, right))


def neg(child: Term) -> Term:
    return Term(NEG, (child,))


def join(left: Term, right: Term) -> Term:
    return Term(JOIN, (left, right))


def meet(left: Term, right: Term) -> Term:
    return Term(MEET, (left, right))


def arity(t: Term) -> int:
    """1 + the largest variable index occurring in t (0 for closed terms)."""
    seen = set()
    best = -1
    stack = [t]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if node.op == VAR:
            best = max(best, node.index)
        stack.extend(node.args)
    return best + 1


def is_positive(t: Term) -> bool:
    """True when the term is negation-free."""
    seen = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if node.op == NEG:
            return False
        stack.extend(node.args)
    return True


def signature(t: Term) -> str:
    return "positive" if is_positive(t) else "full"


UNIT_OPS = {
    ADD: qunit.mv_add,
    MUL: qunit.mv_mul,
    NEG: qunit.mv_neg,
    JOIN: qunit.join,
    MEET: qunit.meet,
    ZERO: qunit.ZERO,
    ONE: qunit.ONE,
}


def evaluate(t: Term, args, ops=None):
    """Bottom-up evaluation; ``ops`` defaults to the unit-interval operations.

    ``ops`` maps the operation tags to callables (and ZERO/ONE to constants),
    which lets the same terms run over any finite algebra.
    """
    table = UNIT_OPS if ops is None else ops
    need = arity(t)
    if len(args) < need:
        raise InputError(f"term needs {need} arguments, got {len(args)}")
    cache: dict[int, object] = {}

    def walk(node: Term):
        key = id(node)
        if key in cache:
            return cache[key]
        if node.op == VAR:
            value = args[node.index]
        elif node.op in (ZERO, ONE):
            value = table[node.op]
        elif node.op == NEG:
            value = table[NEG](walk(node.args[0]))
        else:
            value = table[node.op](walk(node.args[0]), walk(node.args[1]))
        cache[key] = value
        return value

    return walk(t)


def scalar_multiple(n: int, t: Term) -> Term:
    """n-fold truncated sum of t, built by doubling with shared subtrees."""
    if n < 1:
        raise InputError("multiplicity must be >= 1")
    if n == 1:
        return t
    half = scalar_multiple(n // 2, t)
    doubled = add(half, half)
    return doubled if n % 2 == 0 else add(doubled, t)


def power(t: Term, n: int) -> Term:
    """n-fold product of t with itself."""
    if n < 1:
        raise InputError("exponent must be >= 1")
    if n == 1:
        return t
    half = power(t, n // 2)
    doubled = mul(half, half)
    return doubled if n % 2 == 0 else mul(doubled, t)


def to_sexpr(t: Term) -> str:
    """Prefix S-expression text, e.g. ``(add (mul v0 v0) v1)``."""
    out: list[str] = []
    stack: list[object] = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            out.append(node)
            continue
        if node.op == VAR:
            out.append(f"v{node.index}")
        elif node.op == ZERO:
            out.append("0")
        elif node.op == ONE:
            out.append("1")
        else:
            out.append(f"({node.op}")
            stack.append(")")
            stack.extend(reversed(node.args))
    text = " ".join(out)
    return text.replace("( ", "(").replace(" )", ")")


def parse_sexpr(text: str) -> Term:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Term:
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of term text")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise InputError("unexpected end of term text")
            op = tokens[pos]
            pos += 1
            if op not in (ADD, MUL, NEG, JOIN, MEET):
                raise InputError(f"unknown operation {op!r}")
            args = []
            while pos < len(tokens) and tokens[pos] != ")":
                args.append(parse())
            if pos >= len(tokens):
                raise InputError("missing ')'")
            pos += 1
            return Term(op, tuple(args))
        if tok == "0":
            return ZERO_TERM
        if tok == "1":
            return ONE_TERM
        if tok.startswith("v") and tok[1:].isdigit():
            return var(int(tok[1:]))
        raise InputError(f"unexpected token {tok!r}")

    result = parse()
    if pos != len(tokens):
        raise InputError("trailing tokens after term")
    return result


# ---------------------------------------------------------------------------
# Separating terms
# ---------------------------------------------------------------------------

HALF = Fraction(1, 2)


def separator_depth_cap(x: Fraction, y: Fraction) -> int:
    # The gap y - x at least doubles per rescaling round, so the round count
    # is logarithmic in the denominators; 4x that is a loud-failure cushion.
    return 4 * max(1, (x.denominator * y.denominator).bit_length())


@dataclass(frozen=True)
class SeparatorSynthesis:
    term: Term
    rounds: int
    cap: int


def synthesize_separator(x: Fraction, y: Fraction) -> Term:
    """A negation-free unary term t with t(x) = 0 and t(y) = 1.

    Only sum and product appear in the result, so the term is preserved by
    every homomorphism of positive structures.  Requires 0 <= x < y <= 1.
    """
    return separator_synthesis(x, y).term


def separator_synthesis(x: Fraction, y: Fraction) -> SeparatorSynthesis:
    if not (0 <= x < y <= 1):
        raise InputError(f"need 0 <= x < y <= 1, got ({x}, {y})")
    if x == 0 and y == 1:
        return SeparatorSynthesis(var(0), 0, separator_depth_cap(x, y))
    cap = separator_depth_cap(x, y)
    wrap = var(0)
    cx, cy = x, y
    rounds = 0
    while True:
        if cx <= HALF < cy:
            # cx^2 = 0 while cy^2 = 2*cy - 1 > 0; scale the square up to 1
            term = scalar_multiple(_ceil(1 / (2 * cy - 1)), power(wrap, 2))
            break
        if cx < HALF <= cy:
            term = power(scalar_multiple(2, wrap), _ceil(1 / (1 - 2 * cx)))
            break
        if cy < HALF:
            # rescale both values by the largest k with k*cy <= 1
            k = cy.denominator // cy.numerator
            wrap = scalar_multiple(k, wrap)
            cx, cy = k * cx, k * cy
        else:
            # 1/2 < cx < cy: raise both to the largest h with h*(1-cx) < 1
            r = 1 / (1 - cx)
            h = r.numerator // r.denominator
            if r.denominator == 1:
                h -= 1
            wrap = power(wrap, h)
            cx, cy = qunit.nfold_mul(h, cx), qunit.nfold_mul(h, cy)
        rounds += 1
        if rounds > cap:
            raise InvariantError(
                f"separator synthesis for ({x}, {y}) exceeded {cap} rounds"
            )
    if evaluate(term, [x]) != 0 or evaluate(term, [y]) != 1:
        raise InvariantError(f"separator for ({x}, {y}) failed its own check")
    return SeparatorSynthesis(term, rounds, cap)


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


# ---------------------------------------------------------------------------
# Generation witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureTrace:
    """Replayable derivation log produced by a staged generation closure.

    Events are ``(kind, element, *data)`` tuples in discovery order:
    ``("zero", e)``, ``("one", e)``, ``("gen", e, var_index)``,
    ``("neg", e, a)`` and ``(op, e, a, b)`` for binary ops.
    """

    events: tuple
    ops: dict = field(repr=False)


@dataclass(frozen=True)
class GenWitness:
    """One defining term per element of a generated algebra."""

    generators: tuple
    terms: dict

    def term_for(self, element) -> Term:
        return self.terms[element]


def record_witnesses(generators, trace: ClosureTrace) -> GenWitness:
    """Materialize a witness term for every element reached by the closure.

    Generators get variables (except the bounds, which get constants), and
    every derived element gets the first derivation the staged closure found.
    Every witness is replayed through the trace's operations before being
    accepted.
    """
    gens = tuple(generators)
    gen_index = {g: i for i, g in enumerate(gens)}
    terms: dict = {}
    for event in trace.events:
        kind, element = event[0], event[1]
        if kind == "zero":
            terms[element] = ZERO_TERM
        elif kind == "one":
            terms[element] = ONE_TERM
        elif kind == "gen":
            terms[element] = var(event[2])
            if gens[event[2]] != element:
                raise InputError("trace generator indices do not match the seed")
        elif kind == "neg":
            terms[element] = neg(terms[event[2]])
        elif kind in (ADD, MUL, JOIN, MEET):
            terms[element] = Term(kind, (terms[event[2]], terms[event[3]]))
        else:
            raise InputError(f"unknown trace event {kind!r}")
    for element, t in terms.items():
        if evaluate(t, gens, ops=trace.ops) != element:
            raise InputError(f"trace is inconsistent with the carrier at {element!r}")
    missing = [g for g in gens if g not in terms]
    if missing:
        raise InputError(f"trace never reached generators {missing!r}")
    return GenWitness(gens, terms)
