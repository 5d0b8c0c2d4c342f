"""Sparse exact Laurent polynomials in one variable.

The whole package computes in a single variable ``t``.  Tables that are
conventionally polynomials in ``q`` use the substitution ``q = t^2`` and
simply carry doubled exponents; :func:`q_to_t` and :func:`t_to_q` move a
polynomial between the two exponent conventions, and `t_to_q` refuses
odd exponents (an odd-degree term means the even-cohomology assumption
behind the q-convention is violated).

Coefficients are plain Python integers, so arithmetic is exact at any
size and can never wrap around.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

_CoeffSource = Union[Mapping[int, int], Iterable[tuple[int, int]]]


class LaurentPolynomial:
    """An element of Z[t, t^-1], stored as {exponent: nonzero coefficient}."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: _CoeffSource = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[int, int] = {}
        for exp, coeff in items:
            if not isinstance(exp, int) or not isinstance(coeff, int):
                raise TypeError("exponents and coefficients must be ints")
            total = store.get(exp, 0) + coeff
            if total:
                store[exp] = total
            elif exp in store:
                del store[exp]
        self._coeffs = store

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def constant(cls, value: int) -> "LaurentPolynomial":
        return cls({0: value})

    @classmethod
    def term(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def from_coeffs_json(cls, data: Mapping[str, int]) -> "LaurentPolynomial":
        return cls({int(k): int(v) for k, v in data.items()})

    # -- inspection --------------------------------------------------

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    @property
    def min_exponent(self) -> int | None:
        return min(self._coeffs) if self._coeffs else None

    @property
    def max_exponent(self) -> int | None:
        return max(self._coeffs) if self._coeffs else None

    degree = max_exponent

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def items(self):
        return sorted(self._coeffs.items())

    def coeffs_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._coeffs.items())}

    def has_even_support(self) -> bool:
        return all(e % 2 == 0 for e in self._coeffs)

    def has_negative_coefficient(self) -> bool:
        return any(c < 0 for c in self._coeffs.values())

    def is_palindromic_about(self, center: int) -> bool:
        """True iff the coefficient at center+k equals the one at center-k."""
        return all(self._coeffs.get(2 * center - e) == c for e, c in self._coeffs.items())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, int):
            return self._coeffs == ({} if other == 0 else {0: other})
        return NotImplemented

    def __hash__(self) -> int:
        if not self._coeffs:
            return hash(0)
        if set(self._coeffs) == {0}:
            return hash(self._coeffs[0])
        return hash(tuple(sorted(self._coeffs.items())))

    # -- ring operations ---------------------------------------------

    def __add__(self, other) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self._coeffs)
        for e, c in other._coeffs.items():
            total = merged.get(e, 0) + c
            if total:
                merged[e] = total
            elif e in merged:
                del merged[e]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = merged
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = {e: -c for e, c in self._coeffs.items()}
        return out

    def __sub__(self, other) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            if other == 0:
                return LaurentPolynomial()
            out = LaurentPolynomial.__new__(LaurentPolynomial)
            out._coeffs = {e: c * other for e, c in self._coeffs.items()}
            return out
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) > len(b):
            a, b = b, a
        acc: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                total = acc.get(e, 0) + ca * cb
                if total:
                    acc[e] = total
                elif e in acc:
                    del acc[e]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = LaurentPolynomial.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def evaluate(self, x):
        """Exact evaluation; returns an int when the result is integral."""
        total = Fraction(0)
        for e, c in self._coeffs.items():
            if e >= 0:
                total += c * Fraction(x) ** e
            else:
                if x == 0:
                    raise ZeroDivisionError("negative exponent evaluated at 0")
                total += Fraction(c, 1) / Fraction(x) ** (-e)
        return int(total) if total.denominator == 1 else total

    # -- the operators used by the recursion --------------------------

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by t^k."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = {e + k: c for e, c in self._coeffs.items()}
        return out

    def truncate_nonnegative(self) -> "LaurentPolynomial":
        """Keep exactly the terms with exponent >= 0."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = {e: c for e, c in self._coeffs.items() if e >= 0}
        return out

    def truncate_at_least(self, bound: int) -> "LaurentPolynomial":
        """Keep exactly the terms with exponent >= bound (plain polynomials only)."""
        if bound < 0:
            raise ValueError(f"truncation bound must be >= 0, got {bound}")
        self._require_polynomial("truncate_at_least")
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = {e: c for e, c in self._coeffs.items() if e >= bound}
        return out

    def symmetrized(self) -> "LaurentPolynomial":
        """Reflect a plain polynomial about exponent 0.

        The constant term stays put and every t^a with a > 0 also
        acquires the mirror term t^-a, so the result is palindromic and
        its non-negative part is the input.
        """
        self._require_polynomial("symmetrized")
        acc: dict[int, int] = {}
        for e, c in self._coeffs.items():
            acc[e] = c
            if e > 0:
                acc[-e] = c
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = acc
        return out

    def _require_polynomial(self, op: str) -> None:
        bad = [e for e in self._coeffs if e < 0]
        if bad:
            raise ValueError(f"{op} requires non-negative support; found exponent {min(bad)}")

    # -- rendering ----------------------------------------------------

    def render(self, var: str = "t", compact: bool = False) -> str:
        if not self._coeffs:
            return "0"
        plus, minus = ("+", "-") if compact else (" + ", " - ")
        pieces: list[str] = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"{plus if c > 0 else minus}{body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPolynomial('{self.render()}')"


def _coerce(value) -> LaurentPolynomial | None:
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, int):
        return LaurentPolynomial({0: value})
    return None


def q_to_t(p: LaurentPolynomial) -> LaurentPolynomial:
    """Reinterpret a polynomial in q as one in t via q = t^2."""
    out = LaurentPolynomial.__new__(LaurentPolynomial)
    out._coeffs = {2 * e: c for e, c in p._coeffs.items()}
    return out


def t_to_q(p: LaurentPolynomial) -> LaurentPolynomial:
    """Halve exponents, mapping t^2 to q; odd exponents are an error."""
    for e in p._coeffs:
        if e % 2:
            raise ValueError(
                f"exponent {e} is odd: not a polynomial in q = t^2 "
                "(odd-degree term violates the even-cohomology assumption)"
            )
    out = LaurentPolynomial.__new__(LaurentPolynomial)
    out._coeffs = {e // 2: c for e, c in p._coeffs.items()}
    return out


def auto_q_display(p: LaurentPolynomial) -> tuple[str, LaurentPolynomial]:
    """Pick the display form of a t-polynomial: q when the support is even."""
    if p.has_even_support():
        return "q", t_to_q(p)
    return "t", p
