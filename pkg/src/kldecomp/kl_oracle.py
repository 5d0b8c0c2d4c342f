"""Independent Kazhdan-Lusztig tables via the classical descent recursion.

This is deliberately a second implementation path: it never touches the
fiber/multiplicity machinery, so agreement with the resolution pipeline
is a genuine cross-check rather than a tautology.  It is rebuilt from
scratch on every call (no caching) for the same reason.

For w with right descent s and v = ws, every x <= w satisfies

    P(w,x) = q^(1-c) P(v,xs) + q^c P(v,x)
             - sum over {z : x <= z < v, zs < z} of
               mu(v,z) q^((l(w)-l(z))/2) P(z,x)

where c is 1 when xs < x and 0 otherwise, and mu(v,z) is the coefficient
of q^((l(v)-l(z)-1)/2) in P(v,z).  Tables are keyed (bigger, smaller)
and values are polynomials in the q-convention.
"""

from __future__ import annotations

from .coxeter import CoxeterSystem, WeylElement
from .errors import ConsistencyError
from .laurent import LaurentPolynomial

_ONE = LaurentPolynomial.one()
_ZERO = LaurentPolynomial.zero()


def _mu(table, v: WeylElement, z: WeylElement) -> int:
    gap = v.length - z.length
    if gap <= 0 or gap % 2 == 0:
        return 0
    poly = table.get((v, z))
    if poly is None:
        return 0
    return poly.coefficient((gap - 1) // 2)


def classical_kl_table(system: CoxeterSystem) -> dict[tuple[WeylElement, WeylElement], LaurentPolynomial]:
    """The complete table {(w, x): P(w,x)} over all Bruhat pairs x <= w."""
    table: dict[tuple[WeylElement, WeylElement], LaurentPolynomial] = {}
    for level in system.all_elements():
        for w in level:
            if w.length == 0:
                table[(w, w)] = _ONE
                continue
            i = system.right_descents(w)[0]
            s = system.simple(i)
            v = w * s
            v = system.canonical(v)
            mu_sites = []
            for z in system.below(v):
                if z.has_right_descent(i):
                    coeff = _mu(table, v, z)
                    if coeff:
                        mu_sites.append((z, coeff))
            for x in system.below(w):
                if x == w:
                    table[(w, x)] = _ONE
                    continue
                xs = system.canonical(x * s)
                c = 1 if x.has_right_descent(i) else 0
                value = (
                    LaurentPolynomial.term(1 - c) * table.get((v, xs), _ZERO)
                    + LaurentPolynomial.term(c) * table.get((v, x), _ZERO)
                )
                for z, coeff in mu_sites:
                    if system.bruhat_leq(x, z):
                        value = value - coeff * LaurentPolynomial.term((w.length - z.length) // 2) * table[(z, x)]
                _self_check(w, x, value)
                table[(w, x)] = value
    return table


def _self_check(w: WeylElement, x: WeylElement, poly: LaurentPolynomial) -> None:
    if poly.has_negative_coefficient():
        raise ConsistencyError(
            f"classical recursion produced a negative coefficient at "
            f"(w={list(w.word)}, x={list(x.word)}): {poly.render('q')}"
        )
    if poly.coefficient(0) != 1:
        raise ConsistencyError(
            f"classical recursion lost the constant term at "
            f"(w={list(w.word)}, x={list(x.word)}): {poly.render('q')}"
        )
    bound = (w.length - x.length - 1) // 2
    if poly.degree is not None and poly.degree > bound:
        raise ConsistencyError(
            f"classical recursion exceeded the degree bound at "
            f"(w={list(w.word)}, x={list(x.word)}): {poly.render('q')}"
        )
