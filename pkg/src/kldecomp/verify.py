"""Named property suites behind the verify command.

Each check returns a `CheckResult`; on failure the first counterexample
is captured as text ((w, u) pair, word, expected vs actual polynomial).
The oracle check recomputes the classical table from scratch every run,
on purpose: a stale cache must never be able to confirm itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import CoxeterSystem, LexMaxPolicy, LexMinPolicy, WordPolicy
from .decomp import KLTables, full_tables, reconstruction_failures
from .deodhar import BRUTE_FORCE_CAP, q_row_bruteforce
from .hecke import HeckeAlgebra
from .kl_oracle import classical_kl_table
from .laurent import LaurentPolynomial

CHECK_NAMES = ("mass", "oracle", "recon", "hecke", "wordindep")

_Q = LaurentPolynomial.term(1)
_ONE_PLUS_Q = LaurentPolynomial({0: 1, 1: 1})


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: str | None = None


def expand_check_names(names) -> list[str]:
    chosen: list[str] = []
    for name in names:
        if name == "all":
            for known in CHECK_NAMES:
                if known not in chosen:
                    chosen.append(known)
        elif name in CHECK_NAMES:
            if name not in chosen:
                chosen.append(name)
        else:
            raise ValueError(
                f"unknown check {name!r} (expected all, {', '.join(CHECK_NAMES)})"
            )
    return chosen


def run_checks(system: CoxeterSystem, names, policy: WordPolicy | None = None,
               jobs: int = 1) -> list[CheckResult]:
    chosen = expand_check_names(names)
    tables = full_tables(system, policy, jobs=jobs)
    dispatch = {
        "mass": check_mass,
        "oracle": check_oracle,
        "recon": check_reconstruction,
        "hecke": check_hecke,
        "wordindep": check_word_independence,
    }
    return [dispatch[name](tables) for name in chosen]


def _pair_text(w, u) -> str:
    return f"w={list(w.word)}, u={list(u.word)}"


def check_mass(tables: KLTables) -> CheckResult:
    """Row mass (1+q)^l, support = Bruhat interval, DP vs brute force."""
    system = tables.system
    rows: dict = {}
    for (w, u), poly in tables.q.items():
        rows.setdefault(w, {})[u] = poly
    crosschecked = 0
    for level in system.all_elements():
        for w in level:
            row = rows[w]
            mass = sum(
                (LaurentPolynomial.term(u.length) * poly for u, poly in row.items()),
                LaurentPolynomial.zero(),
            )
            expected = _ONE_PLUS_Q ** w.length
            if mass != expected:
                return CheckResult(
                    "mass", False, "row mass mismatch",
                    f"w={list(tables.words[w])}: expected {expected.render('q')}, "
                    f"got {mass.render('q')}",
                )
            if set(row) != set(system.below(w)):
                return CheckResult(
                    "mass", False, "row support differs from the Bruhat interval",
                    f"w={list(tables.words[w])}",
                )
            if w.length <= min(10, BRUTE_FORCE_CAP):
                brute = q_row_bruteforce(system, tables.words[w]).entries
                if brute != row:
                    bad = next(u for u in set(brute) | set(row) if brute.get(u) != row.get(u))
                    zero = LaurentPolynomial.zero()
                    return CheckResult(
                        "mass", False, "DP row differs from brute force",
                        f"{_pair_text(w, bad)}: expected "
                        f"{brute.get(bad, zero).render('q')}, "
                        f"got {row.get(bad, zero).render('q')}",
                    )
                crosschecked += 1
    return CheckResult(
        "mass", True,
        f"{len(rows)} rows: mass and support identities hold; "
        f"{crosschecked} rows cross-checked against brute force",
    )


def check_oracle(tables: KLTables) -> CheckResult:
    """The pipeline's P table against the classical recursion, entry for entry."""
    oracle = classical_kl_table(tables.system)
    if set(oracle) != set(tables.p):
        extra = set(tables.p) - set(oracle)
        missing = set(oracle) - set(tables.p)
        some = next(iter(extra or missing))
        return CheckResult(
            "oracle", False, "table supports differ",
            f"{_pair_text(*some)} present on one side only",
        )
    for pair, expected in oracle.items():
        got = tables.p[pair]
        if got != expected:
            return CheckResult(
                "oracle", False, "Kazhdan-Lusztig value mismatch",
                f"{_pair_text(*pair)}, word {list(tables.words[pair[0]])}: "
                f"expected {expected.render('q')}, got {got.render('q')}",
            )
    return CheckResult("oracle", True, f"{len(oracle)} pairs agree with the classical recursion")


def check_reconstruction(tables: KLTables) -> CheckResult:
    """F(w,u) = sum of D(w,v) H(v,u) over u <= v <= w, exactly."""
    system = tables.system
    pairs = 0
    for level in system.all_elements():
        for w in level:
            failures = reconstruction_failures(tables, w)
            if failures:
                u, expected, got = failures[0]
                return CheckResult(
                    "recon", False, "reconstruction identity fails",
                    f"{_pair_text(w, u)}, word {list(tables.words[w])}: "
                    f"expected {expected.render('t')}, got {got.render('t')}",
                )
            pairs += len(system.below(w))
    return CheckResult("recon", True, f"reconstruction identity holds for {pairs} pairs")


def check_hecke(tables: KLTables) -> CheckResult:
    """Quadratic and braid relations, Q = S.P, and the basis theorem."""
    system = tables.system
    algebra = HeckeAlgebra(system)
    one = algebra.one()
    q_minus_one = LaurentPolynomial({2: 1, 0: -1})
    q_poly = LaurentPolynomial({2: 1})
    for i in range(1, system.rank + 1):
        ts = algebra.t_basis(system.simple(i))
        if ts * ts != q_minus_one * ts + q_poly * one:
            return CheckResult("hecke", False, "quadratic relation fails",
                               f"generator {i}")
    for i in range(1, system.rank + 1):
        for j in range(i + 1, system.rank + 1):
            m = system.bond_order(i, j)
            left = [i, j] * m
            right = [j, i] * m
            if algebra.mul_word(left[:m], one) != algebra.mul_word(right[:m], one):
                return CheckResult("hecke", False, "braid relation fails",
                                   f"generators {i}, {j} with bond order {m}")
    for (w, u), q_poly_wu in tables.q.items():
        total = LaurentPolynomial.zero()
        for v in system.below(w):
            s_wv = tables.s.get((w, v))
            if s_wv is not None and system.bruhat_leq(u, v):
                p_vu = tables.p.get((v, u))
                if p_vu is not None:
                    total = total + s_wv * p_vu
        if total != q_poly_wu:
            return CheckResult(
                "hecke", False, "transition identity Q = S.P fails",
                f"{_pair_text(w, u)}, word {list(tables.words[w])}: "
                f"expected {q_poly_wu.render('q')}, got {total.render('q')}",
            )
    for level in system.all_elements():
        for w in level:
            if not algebra.verify_basis_theorem(w, tables):
                return CheckResult(
                    "hecke", False, "basis expansion differs from the S row",
                    f"w={list(tables.words[w])}",
                )
    return CheckResult(
        "hecke", True,
        f"relations, Q = S.P on {len(tables.q)} pairs, and the basis theorem "
        f"for {system.group_order} elements",
    )


def check_word_independence(tables: KLTables) -> CheckResult:
    """Identical P tables under lex-min and lex-max word policies."""
    system = tables.system
    low = full_tables(system, LexMinPolicy())
    high = full_tables(system, LexMaxPolicy())
    if set(low.p) != set(high.p):
        return CheckResult("wordindep", False, "P table supports differ", None)
    for pair, expected in low.p.items():
        got = high.p[pair]
        if got != expected:
            return CheckResult(
                "wordindep", False, "P depends on the word policy",
                f"{_pair_text(*pair)}: lexmin {expected.render('q')}, "
                f"lexmax {got.render('q')}",
            )
    differing = sum(1 for pair in set(low.s) | set(high.s)
                    if low.s.get(pair) != high.s.get(pair))
    return CheckResult(
        "wordindep", True,
        f"P tables identical under lexmin/lexmax ({len(low.p)} pairs); "
        f"S tables differ on {differing} pairs as permitted",
    )
