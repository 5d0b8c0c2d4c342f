"""The multiplicity recursion: from fiber tables to Kazhdan-Lusztig data.

Input is one t-polynomial row per element w (the fiber table F, with
even non-negative support; the mask DP supplies it for the standard
resolution, but any supplier with the same contract plugs in).  For each
pair u <= w the engine forms the residual

    R(w,u) = F(w,u) - sum over u < v < w of D(w,v) * H(v,u)

and splits it into the palindromic multiplicity part and the stalk part:

    D(w,u) = t^c . symmetrize . t^-c . truncate_{>=c} (R(w,u)),  c = l(w)-l(u)
    H(w,u) = R(w,u) - D(w,u)

with D(w,w) = H(w,w) = 1 on the diagonal.  Processing order is forced by
the data dependencies: w by increasing length, and u below a fixed w by
decreasing length (so D(w,v) for longer v and H(v,u) for shorter v are
always ready).  Rows of equal length are independent, so a level can be
filled by a thread pool behind a per-length barrier.

The q-convention views are S(w,u) = D(w,u) at t = sqrt(q) and
P(w,u) = H(w,u) at t = sqrt(q); P is the Kazhdan-Lusztig table and must
be independent of the word policy, while Q, F, D, S all depend on it.

Every cell is checked on the spot: coefficients must be non-negative,
supports even, D palindromic about c inside [0, 2c], and H of degree at
most c-1 with constant term 1.  The theorems guarantee all of this for
genuine fiber tables, so any violation is reported as a consistency
failure naming the pair and the word.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .coxeter import CoxeterSystem, LexMinPolicy, WeylElement, WordPolicy
from .deodhar import fiber_row
from .errors import ConsistencyError
from .laurent import LaurentPolynomial, t_to_q

Pair = tuple[WeylElement, WeylElement]
PairTable = dict[Pair, LaurentPolynomial]
FiberSupplier = Callable[[WeylElement], Mapping[WeylElement, LaurentPolynomial]]

_ONE = LaurentPolynomial.one()


@dataclass
class KLTables:
    """Every polynomial table for one system under one word policy.

    q, p, s hold polynomials in the q-convention; f_tilde, d_tilde and
    h_tilde hold the t-convention ones.  Zero entries are omitted from
    d_tilde and s (they are the sparse tables); the other kinds are
    nonzero on every Bruhat pair.
    """

    system: CoxeterSystem
    policy_name: str
    words: dict[WeylElement, tuple[int, ...]] = field(default_factory=dict)
    q: PairTable = field(default_factory=dict)
    f_tilde: PairTable = field(default_factory=dict)
    d_tilde: PairTable = field(default_factory=dict)
    h_tilde: PairTable = field(default_factory=dict)
    s: PairTable = field(default_factory=dict)
    p: PairTable = field(default_factory=dict)


def _cell_failure(w: WeylElement, u: WeylElement, word, message: str) -> ConsistencyError:
    return ConsistencyError(
        f"decomposition failure at (w={list(w.word)}, u={list(u.word)}), "
        f"word {list(word)}: {message}"
    )


def _check_cell(w: WeylElement, u: WeylElement, word, span: int,
                d: LaurentPolynomial, h: LaurentPolynomial) -> None:
    if d.has_negative_coefficient():
        raise _cell_failure(w, u, word, f"negative coefficient in multiplicity part {d.render()}")
    if not d.has_even_support():
        raise _cell_failure(w, u, word, f"odd exponent in multiplicity part {d.render()}")
    if d and (d.min_exponent < 0 or d.max_exponent > 2 * span):
        raise _cell_failure(w, u, word, f"multiplicity part {d.render()} outside [0, {2 * span}]")
    if not d.is_palindromic_about(span):
        raise _cell_failure(w, u, word, f"multiplicity part {d.render()} not palindromic about {span}")
    if h.has_negative_coefficient():
        raise _cell_failure(w, u, word, f"negative coefficient in stalk part {h.render()}")
    if not h.has_even_support():
        raise _cell_failure(w, u, word, f"odd exponent in stalk part {h.render()}")
    if h.coefficient(0) != 1:
        raise _cell_failure(w, u, word, f"stalk part {h.render()} has constant term != 1")
    if h.degree is not None and h.degree > span - 1:
        raise _cell_failure(w, u, word, f"stalk part {h.render()} exceeds degree bound {span - 1}")


def _decompose_row(system: CoxeterSystem, w: WeylElement,
                   f_row: Mapping[WeylElement, LaurentPolynomial],
                   h_store: PairTable, word) -> tuple[dict, dict]:
    interval = system.below(w)
    expected = set(interval)
    got = set(f_row)
    if got != expected:
        missing = [list(u.word) for u in sorted(expected - got, key=lambda x: (x.length, x.word))]
        extra = [list(u.word) for u in sorted(got - expected, key=lambda x: (x.length, x.word))]
        raise ConsistencyError(
            f"fiber row for w={list(w.word)} does not match the Bruhat interval "
            f"(missing {missing}, extra {extra})"
        )
    for u, poly in f_row.items():
        if not poly.has_even_support() or (poly and poly.min_exponent < 0):
            raise ConsistencyError(
                f"fiber row for w={list(w.word)} violates the even-support contract "
                f"at u={list(u.word)}: {poly.render()}"
            )
    d_row: dict[WeylElement, LaurentPolynomial] = {w: _ONE}
    h_row: dict[WeylElement, LaurentPolynomial] = {w: _ONE}
    for u in sorted(interval, key=lambda x: (-x.length, x.word)):
        if u == w:
            continue
        acc = f_row[u]
        for v, dv in d_row.items():
            if v is w:
                continue
            if system.bruhat_leq(u, v):
                h_vu = h_store.get((v, u))
                if h_vu is None:
                    raise ConsistencyError(
                        f"dependency ordering bug: stalk entry for "
                        f"(v={list(v.word)}, u={list(u.word)}) not yet computed "
                        f"while processing w={list(w.word)}"
                    )
                acc = acc - dv * h_vu
        span = w.length - u.length
        try:
            kept = acc.truncate_at_least(span)
            d = kept.shift(-span).symmetrized().shift(span)
        except ValueError as exc:
            raise _cell_failure(w, u, word, str(exc)) from exc
        h = acc - d
        _check_cell(w, u, word, span, d, h)
        if d:
            d_row[u] = d
        h_row[u] = h
    return d_row, h_row


def full_tables(system: CoxeterSystem, policy: WordPolicy | None = None,
                fibers: FiberSupplier | None = None, jobs: int = 1) -> KLTables:
    """Run the recursion over the whole group and return every table."""
    if policy is None:
        policy = LexMinPolicy()
    if fibers is None:
        fibers = lambda w: fiber_row(system, policy.word(w))
    tables = KLTables(system=system, policy_name=policy.cache_key)
    h_store = tables.h_tilde

    def compute(w: WeylElement):
        word = policy.word(w)
        f_row = fibers(w)
        d_row, h_row = _decompose_row(system, w, f_row, h_store, word)
        return w, word, f_row, d_row, h_row

    for level in system.all_elements():
        if jobs > 1 and len(level) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(compute, level))
        else:
            results = [compute(w) for w in level]
        for w, word, f_row, d_row, h_row in results:
            tables.words[w] = word
            for u, poly in f_row.items():
                tables.f_tilde[(w, u)] = poly
                tables.q[(w, u)] = t_to_q(poly)
            for u, poly in d_row.items():
                tables.d_tilde[(w, u)] = poly
                tables.s[(w, u)] = t_to_q(poly)
            for u, poly in h_row.items():
                h_store[(w, u)] = poly
                tables.p[(w, u)] = t_to_q(poly)
    return tables


def reconstruction_failures(tables: KLTables, w: WeylElement) -> list[tuple[WeylElement, LaurentPolynomial, LaurentPolynomial]]:
    """Pairs where F(w,u) != sum of D(w,v) * H(v,u) over u <= v <= w."""
    system = tables.system
    failures = []
    interval = system.below(w)
    for u in interval:
        total = LaurentPolynomial.zero()
        for v in interval:
            d = tables.d_tilde.get((w, v))
            if d is not None and system.bruhat_leq(u, v):
                total = total + d * tables.h_tilde[(v, u)]
        expected = tables.f_tilde[(w, u)]
        if total != expected:
            failures.append((u, expected, total))
    return failures


def verify_reconstruction(tables: KLTables, w: WeylElement) -> bool:
    """True iff the fiber row of w is exactly rebuilt from D and H."""
    return not reconstruction_failures(tables, w)
