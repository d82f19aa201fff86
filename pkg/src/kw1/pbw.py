"""Exact arithmetic in the universal enveloping algebra.

Elements are sparse maps from PBW monomials (exponent vectors in the
basis order of the algebra) to scalars.  Products are straightened to
normal form with the rewrite x_j x_i = x_i x_j - [x_i, x_j] for j > i,
applied recursively one letter at a time and memoized per algebra; the
PBW relations are confluent so no Groebner machinery is needed.

Also provides the symmetrization section Sym(g) -> U(g), principal
symbols in the associated graded, and the detector for elements on
which the adjoint action is scalar (semi-invariants).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import (
    CoefficientFieldMismatch,
    FactorialNotInvertible,
    ZeroElement,
)
from .fields import FFElem, QQ
from .util import deglex_key

NEG_INF = float("-inf")


def _scalar_from_int(field, k):
    if field is QQ:
        return Fraction(k)
    return field.from_int(k)


# ---------------------------------------------------------------------------
# monomial-level straightening with memoization
# ---------------------------------------------------------------------------

def _accumulate(target, mono, coeff):
    v = target.get(mono)
    v = coeff if v is None else v + coeff
    if v:
        target[mono] = v
    elif mono in target:
        del target[mono]


def _mono_times_letter(ctx, mono, k):
    """Normal form of x^mono * x_k as a sparse monomial map."""
    memo = ctx._pbw_memo
    key = (mono, k)
    hit = memo.get(key)
    if hit is not None:
        return hit
    one = _scalar_from_int(ctx.field, 1)
    top = -1
    for i in range(len(mono) - 1, -1, -1):
        if mono[i]:
            top = i
            break
    if top <= k:
        ek = tuple(a + (1 if i == k else 0) for i, a in enumerate(mono))
        result = {ek: one}
        memo[key] = result
        return result
    # strip the rightmost letter x_top:  x^mono x_k = x^rest (x_top x_k)
    # and x_top x_k = x_k x_top - [x_k, x_top]
    rest = tuple(a - (1 if i == top else 0) for i, a in enumerate(mono))
    out = {}
    for m2, c2 in _mono_times_letter(ctx, rest, k).items():
        for m3, c3 in _mono_times_letter(ctx, m2, top).items():
            _accumulate(out, m3, c2 * c3)
    for l, cl in ctx.bracket(k, top).items():
        for m2, c2 in _mono_times_letter(ctx, rest, l).items():
            _accumulate(out, m2, -(cl * c2))
    memo[key] = out
    return out


def _mono_times_mono(ctx, a, b):
    """Normal form of x^a * x^b, folding the letters of b left to right."""
    if not any(b):
        return {a: _scalar_from_int(ctx.field, 1)}
    memo = ctx._pbw_memo
    key = (a, b)
    hit = memo.get(key)
    if hit is not None:
        return hit
    cur = {a: _scalar_from_int(ctx.field, 1)}
    for letter, count in enumerate(b):
        for _ in range(count):
            nxt = {}
            for mono, c in cur.items():
                for m2, c2 in _mono_times_letter(ctx, mono, letter).items():
                    _accumulate(nxt, m2, c * c2)
            cur = nxt
    memo[key] = cur
    return cur


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class UEElement:
    """Sparse PBW-normal-form element of U(g); immutable by convention."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if c}

    @property
    def degree(self):
        """Filtration degree; -inf for the zero element."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), _scalar_from_int(self.ctx.field, 0))

    def _check_compatible(self, other):
        if not isinstance(other, UEElement):
            raise TypeError("expected an enveloping-algebra element")
        if other.ctx is not self.ctx:
            raise CoefficientFieldMismatch(
                "elements live over different algebras or coefficient fields"
            )

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return UEElement(self.ctx, out)

    def __sub__(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, -c)
        return UEElement(self.ctx, out)

    def __neg__(self):
        return UEElement(self.ctx, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        if isinstance(c, int):
            c = _scalar_from_int(self.ctx.field, c)
        return UEElement(self.ctx, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FFElem)):
            return self.scale(other)
        return pbw_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FFElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in U(g)")
        result = ue_one(self.ctx)
        for _ in range(k):
            result = pbw_multiply(result, self)
        return result

    def __eq__(self, other):
        return (
            isinstance(other, UEElement)
            and self.ctx is other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset((m, _hashable(c)) for m, c in self.terms.items()))

    def bracket(self, other):
        return pbw_bracket(self, other)

    def render(self) -> str:
        return render_terms(self.terms, self.ctx.labels)

    def __repr__(self):
        return self.render()


def _hashable(c):
    return c if isinstance(c, Fraction) else c.coeffs


def render_monomial(mono, labels) -> str:
    parts = []
    for i, a in enumerate(mono):
        if a == 0:
            continue
        parts.append(labels[i] if a == 1 else f"{labels[i]}^{a}")
    return "*".join(parts) if parts else "1"


def render_scalar(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return c.render()


def render_terms(terms, labels) -> str:
    """Canonical text form: terms in descending deg-lex order.

    Total and injective on normal forms: coefficients are rendered in
    canonical residue form and monomials in a fixed order, so equal
    strings mean equal elements.
    """
    if not terms:
        return "0"
    parts = []
    for mono in sorted(terms, key=deglex_key, reverse=True):
        c = terms[mono]
        cs = render_scalar(c)
        ms = render_monomial(mono, labels)
        if ms == "1":
            parts.append(cs)
        elif cs == "1":
            parts.append(ms)
        else:
            parts.append(f"{cs}*{ms}")
    return " + ".join(parts)


# constructors -------------------------------------------------------------

def ue_zero(ctx) -> UEElement:
    return UEElement(ctx, {})


def ue_one(ctx) -> UEElement:
    return UEElement(ctx, {(0,) * ctx.n: _scalar_from_int(ctx.field, 1)})


def ue_gen(ctx, i: int) -> UEElement:
    mono = tuple(1 if k == i else 0 for k in range(ctx.n))
    return UEElement(ctx, {mono: _scalar_from_int(ctx.field, 1)})


def ue_monomial(ctx, exps, coeff=1) -> UEElement:
    if isinstance(coeff, int):
        coeff = _scalar_from_int(ctx.field, coeff)
    return UEElement(ctx, {tuple(exps): coeff})


# operations ---------------------------------------------------------------

def pbw_multiply(a: UEElement, b: UEElement) -> UEElement:
    """PBW normal form of the product; deg(ab) <= deg(a) + deg(b)."""
    a._check_compatible(b)
    ctx = a.ctx
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            c = ca * cb
            for m, cm in _mono_times_mono(ctx, ma, mb).items():
                _accumulate(out, m, c * cm)
    return UEElement(ctx, out)


def pbw_bracket(a: UEElement, b: UEElement) -> UEElement:
    """ab - ba; filtration degree drops by at least one."""
    return pbw_multiply(a, b) - pbw_multiply(b, a)


def principal_symbol(a: UEElement) -> "SymPoly":
    """Top homogeneous part of a nonzero element, read in Sym(g)."""
    if a.is_zero():
        raise ZeroElement("the zero element has no principal symbol")
    d = a.degree
    terms = {m: c for m, c in a.terms.items() if sum(m) == d}
    return SymPoly(a.ctx.field, a.ctx.n, terms)


def _distinct_words(exps):
    """All distinct letter orderings of the monomial, lexicographically."""
    letters = []
    for i, a in enumerate(exps):
        letters.extend([i] * a)
    if not letters:
        yield ()
        return

    def rec(remaining):
        if not remaining:
            yield ()
            return
        seen = set()
        for idx in range(len(remaining)):
            l = remaining[idx]
            if l in seen:
                continue
            seen.add(l)
            rest = remaining[:idx] + remaining[idx + 1:]
            for tail in rec(rest):
                yield (l,) + tail

    yield from rec(tuple(letters))


def symmetrize(f: "SymPoly", ctx) -> UEElement:
    """Average of all orderings of each monomial, multiplied out in U(g).

    Implemented as a sum over distinct words with multinomial weights,
    which equals the naive average over all d! words.  Requires
    characteristic 0 or p > deg(f) so the factorials are invertible.
    """
    if f.field is not ctx.field:
        raise CoefficientFieldMismatch("polynomial and algebra fields differ")
    field = ctx.field
    out = ue_zero(ctx)
    for exps, c in f.terms.items():
        d = sum(exps)
        if field is not QQ and d >= field.p:
            raise FactorialNotInvertible(d, field.p)
        if field is QQ:
            weight = Fraction(1, factorial(d))
            for a in exps:
                weight *= factorial(a)
        else:
            num = 1
            for a in exps:
                num = (num * factorial(a)) % field.p
            weight = field.from_int(num) / field.from_int(factorial(d) % field.p)
        acc = {}
        for word in _distinct_words(exps):
            cur = {(0,) * ctx.n: _scalar_from_int(field, 1)}
            for letter in word:
                nxt = {}
                for mono, cc in cur.items():
                    for m2, c2 in _mono_times_letter(ctx, mono, letter).items():
                        _accumulate(nxt, m2, cc * c2)
                cur = nxt
            for mono, cc in cur.items():
                _accumulate(acc, mono, cc)
        term = UEElement(ctx, acc).scale(weight).scale(c)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# commutative polynomials (Sym(g) and coordinate rings)
# ---------------------------------------------------------------------------

class SymPoly:
    """Sparse commutative polynomial with exact coefficients."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field, n, terms):
        self.field = field
        self.n = n
        self.terms = {
            tuple(m): (_scalar_from_int(field, c) if isinstance(c, int) else c)
            for m, c in terms.items()
            if c
        }

    @classmethod
    def monomial(cls, field, n, exps, coeff=1):
        if isinstance(coeff, int):
            coeff = _scalar_from_int(field, coeff)
        return cls(field, n, {tuple(exps): coeff})

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, {})

    @classmethod
    def one(cls, field, n):
        return cls(field, n, {(0,) * n: _scalar_from_int(field, 1)})

    @property
    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return SymPoly(self.field, self.n, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, -c)
        return SymPoly(self.field, self.n, out)

    def __neg__(self):
        return SymPoly(self.field, self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        if isinstance(c, int):
            c = _scalar_from_int(self.field, c)
        return SymPoly(self.field, self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FFElem)):
            return self.scale(other)
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                _accumulate(out, m, ca * cb)
        return SymPoly(self.field, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = SymPoly.one(self.field, self.n)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, SymPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset((m, _hashable(c)) for m, c in self.terms.items()))

    def evaluate(self, point):
        """Value at a tuple of field elements (extensions allowed)."""
        total = None
        for m, c in self.terms.items():
            v = c
            for i, a in enumerate(m):
                for _ in range(a):
                    v = v * point[i]
            total = v if total is None else total + v
        if total is None:
            zero = point[0] - point[0] if point else self.field.zero
            return zero
        return total

    def render(self, labels) -> str:
        return render_terms(self.terms, labels)

    def __repr__(self):
        return render_terms(
            self.terms, tuple(f"u{i}" for i in range(self.n))
        )


def sym_from_element(a: UEElement) -> SymPoly:
    """Forget the ordering: read a PBW element as a commutative polynomial."""
    return SymPoly(a.ctx.field, a.ctx.n, dict(a.terms))


# ---------------------------------------------------------------------------
# straightening memo spill (opt-in cache directory)
# ---------------------------------------------------------------------------

def save_memo(alg, path) -> int:
    """Spill the core straightening memo to ``path``; returns entry count.

    Coefficients are stored as plain ints, so the file is independent
    of any live field objects.
    """
    import pickle

    plain = {}
    for key, value in alg._pbw_memo.items():
        if isinstance(key, str):
            continue  # derived caches are rebuilt, not spilled
        plain[key] = {m: int(c) for m, c in value.items()}
    with open(path, "wb") as fh:
        pickle.dump({"p": alg.p, "entries": plain}, fh, protocol=4)
    return len(plain)


def load_memo(alg, path) -> int:
    """Load a spilled memo written by save_memo; returns entry count."""
    import pickle

    with open(path, "rb") as fh:
        data = pickle.load(fh)
    if data.get("p") != alg.p:
        return 0
    field = alg.field
    count = 0
    for key, value in data["entries"].items():
        alg._pbw_memo[key] = {m: field.from_int(c) for m, c in value.items()}
        count += 1
    return count


def ad_action_sym(ctx, i, f: SymPoly) -> SymPoly:
    """Adjoint action of x_i on Sym(g), extended as a derivation."""
    out = {}
    for m, c in f.terms.items():
        for j, a in enumerate(m):
            if a == 0:
                continue
            lowered = tuple(x - (1 if k == j else 0) for k, x in enumerate(m))
            for l, d in ctx.bracket(i, j).items():
                m2 = tuple(x + (1 if k == l else 0) for k, x in enumerate(lowered))
                _accumulate(out, m2, c * d * _scalar_from_int(ctx.field, a))
    return SymPoly(ctx.field, ctx.n, out)


def semi_invariant_weight(a, alg=None):
    """The weight vector of a semi-invariant, or None.

    For an enveloping element, checks [x_i, a] = lambda_i a exactly for
    every basis element and returns the tuple of weights when all hold.
    For a commutative polynomial the derivation action on Sym(g) is
    used; ``alg`` must then be supplied.
    """
    if isinstance(a, UEElement):
        ctx = a.ctx
        if a.is_zero():
            raise ZeroElement("weight of the zero element is undefined")
        ref = max(a.terms, key=deglex_key)
        ref_coeff = a.terms[ref]
        weights = []
        for i in range(ctx.n):
            b = pbw_bracket(ue_gen(ctx, i), a)
            if b.is_zero():
                weights.append(_scalar_from_int(ctx.field, 0))
                continue
            num = b.terms.get(ref)
            if num is None:
                return None
            lam = num / ref_coeff
            if b != a.scale(lam):
                return None
            weights.append(lam)
        return tuple(weights)
    if alg is None:
        raise ValueError("polynomial input needs the algebra")
    f = a
    if f.is_zero():
        raise ZeroElement("weight of the zero polynomial is undefined")
    ref = max(f.terms, key=deglex_key)
    ref_coeff = f.terms[ref]
    weights = []
    for i in range(alg.n):
        b = ad_action_sym(alg, i, f)
        if b.is_zero():
            weights.append(_scalar_from_int(alg.field, 0))
            continue
        num = b.terms.get(ref)
        if num is None:
            return None
        lam = num / ref_coeff
        if b != f.scale(lam):
            return None
        weights.append(lam)
    return tuple(weights)
