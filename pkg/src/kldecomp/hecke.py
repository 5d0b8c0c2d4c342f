"""The Hecke algebra of a finite Weyl group over Z[t, t^-1] with q = t^2.

Standard basis {T_w} with the defining relations

    T_s T_w = T_sw                     when l(sw) > l(w),
    T_s T_w = (q-1) T_w + q T_sw       when l(sw) < l(w),

the second being the usual consequence of the quadratic relation
T_s^2 = (q-1) T_s + q T_e, extended linearly.  Products T_w . h are
computed by factoring T_w along the lex-min reduced word of w, one
generator at a time.

Two more bases are built from the polynomial tables:

    C_w = T_w + sum over v < w of P(w,v) T_v
    B_w = T_w + sum over v < w of Q(w,v) T_v

Note C_w is taken verbatim in this "plain" form: no q^(-l(w)/2)
normalisation and no bar-involution signs, so it differs from the
self-dual basis found in most Hecke-algebra references by an explicit
rescaling.  The transition matrix from {C_w} to {B_w} is unitriangular
with the multiplicity polynomials S(w,v) as entries, which
`verify_basis_theorem` confirms against a triangular solve.
"""

from __future__ import annotations

from typing import Mapping

from .coxeter import CoxeterSystem, WeylElement
from .errors import SystemMismatchError
from .laurent import LaurentPolynomial, auto_q_display, q_to_t

Q = LaurentPolynomial({2: 1})
Q_MINUS_ONE = LaurentPolynomial({2: 1, 0: -1})

_ONE = LaurentPolynomial.one()

PairTable = Mapping[tuple[WeylElement, WeylElement], LaurentPolynomial]


class HeckeElement:
    """A finite T-basis combination {element: coefficient in Z[t, t^-1]}."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Mapping[WeylElement, LaurentPolynomial]):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def coefficient(self, w: WeylElement) -> LaurentPolynomial:
        return self.terms.get(w, LaurentPolynomial.zero())

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, LaurentPolynomial.zero()) + c
        return HeckeElement(self.algebra, merged)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, LaurentPolynomial.zero()) - c
        return HeckeElement(self.algebra, merged)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            self._check(other)
            return self.algebra.mul(self, other)
        if isinstance(other, (int, LaurentPolynomial)):
            return HeckeElement(self.algebra, {w: c * other for w, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPolynomial)):
            return HeckeElement(self.algebra, {w: other * c for w, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "HeckeElement") -> None:
        if self.algebra is not other.algebra:
            raise SystemMismatchError("Hecke elements belong to different algebras")

    def render(self, symbol: str = "T") -> str:
        return render_combination(self.terms, symbol)

    def __repr__(self) -> str:
        return self.render()


class HeckeAlgebra:
    """The Hecke algebra attached to one Coxeter system."""

    # generator actions are memoized only for groups this small; beyond
    # that the table would dwarf the computation it serves
    MEMO_ORDER_CAP = 1152

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._memoize = system.group_order <= self.MEMO_ORDER_CAP
        self._gen_step: dict[tuple[int, WeylElement], tuple[bool, WeylElement]] = {}

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def one(self) -> HeckeElement:
        return HeckeElement(self, {self.system.identity: _ONE})

    def t_basis(self, w: WeylElement) -> HeckeElement:
        return HeckeElement(self, {w: _ONE})

    def t_word(self, word) -> HeckeElement:
        """T of the element a reduced word denotes."""
        return self.t_basis(self.system.require_reduced(tuple(word)))

    def element(self, terms: Mapping[WeylElement, LaurentPolynomial]) -> HeckeElement:
        return HeckeElement(self, terms)

    def _step(self, i: int, w: WeylElement) -> tuple[bool, WeylElement]:
        key = (i, w)
        hit = self._gen_step.get(key)
        if hit is None:
            sw = self.system.simple(i) * w
            hit = (sw.length > w.length, sw)
            if self._memoize:
                self._gen_step[key] = hit
        return hit

    def mul_generator(self, i: int, h: HeckeElement) -> HeckeElement:
        """Left multiplication by T of the i-th simple reflection."""
        out: dict[WeylElement, LaurentPolynomial] = {}
        for w, c in h.terms.items():
            ascent, sw = self._step(i, w)
            if ascent:
                out[sw] = out.get(sw, LaurentPolynomial.zero()) + c
            else:
                out[w] = out.get(w, LaurentPolynomial.zero()) + Q_MINUS_ONE * c
                out[sw] = out.get(sw, LaurentPolynomial.zero()) + Q * c
        return HeckeElement(self, out)

    def mul_word(self, word, h: HeckeElement) -> HeckeElement:
        """Apply T of each letter, rightmost letter first."""
        for letter in reversed(tuple(word)):
            h = self.mul_generator(letter, h)
        return h

    def mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        out = self.zero()
        for w, c in a.terms.items():
            out = out + c * self.mul_word(self.system.lex_min_reduced_word(w), b)
        return out

    # -- the table-driven bases ----------------------------------------

    def kl_basis_element(self, w: WeylElement, p: PairTable) -> HeckeElement:
        terms = {v: q_to_t(p[(w, v)]) for v in self.system.below(w)}
        return HeckeElement(self, terms)

    def deodhar_basis_element(self, w: WeylElement, q: PairTable) -> HeckeElement:
        terms = {v: q_to_t(q[(w, v)]) for v in self.system.below(w)}
        return HeckeElement(self, terms)

    def express_in_kl_basis(self, h: HeckeElement, p: PairTable) -> dict[WeylElement, LaurentPolynomial]:
        """Coefficients c_v with h = sum c_v C_v, by triangular elimination.

        The C basis is unitriangular over the T basis, so eliminating
        from the longest support element downward always succeeds and is
        exact.
        """
        work = dict(h.terms)
        out: dict[WeylElement, LaurentPolynomial] = {}
        while work:
            top = max(work, key=lambda v: (v.length, v.word))
            coeff = work.pop(top)
            out[top] = coeff
            for v, pv in self.kl_basis_element(top, p).terms.items():
                if v == top:
                    continue
                updated = work.get(v, LaurentPolynomial.zero()) - coeff * pv
                if updated:
                    work[v] = updated
                elif v in work:
                    del work[v]
        return out

    def verify_basis_theorem(self, w: WeylElement, tables) -> bool:
        """Check B_w = C_w + sum of S(w,v) C_v with the stored S row."""
        b = self.deodhar_basis_element(w, tables.q)
        got = self.express_in_kl_basis(b, tables.p)
        expected = {
            v: q_to_t(tables.s[(w, v)])
            for v in self.system.below(w)
            if (w, v) in tables.s
        }
        return got == expected


def render_combination(terms: Mapping[WeylElement, LaurentPolynomial], symbol: str) -> str:
    """Render e.g. "T[1,2,1] + (1+q)*T[1] + T[]", long elements first."""
    if not terms:
        return "0"
    pieces = []
    for w in sorted(terms, key=lambda v: (-v.length, v.word)):
        coeff = terms[w]
        basis = f"{symbol}[{','.join(map(str, w.word))}]"
        if coeff == 1:
            pieces.append(basis)
            continue
        var, shown = auto_q_display(coeff)
        text = shown.render(var, compact=True)
        if len(shown.support) > 1:
            text = f"({text})"
        pieces.append(f"{text}*{basis}")
    return " + ".join(pieces)
