"""Mask combinatorics on reduced words.

Fix a reduced word w = s_{i_1} ... s_{i_l}.  A mask picks, letter by
letter, whether to multiply the running prefix by that letter, producing
a chain of prefix elements starting at the identity.  The defect of a
mask counts the positions j whose pending letter would take the running
prefix DOWN in length; note the count only looks at the prefix before
position j, never at the bit chosen there.

The row polynomial of the word collects q^(defect) over all 2^l masks,
bucketed by the end element of the chain.  Two engines compute it:

* `q_row_bruteforce` iterates every mask with a plain counter; it is the
  in-repo oracle and refuses words longer than `BRUTE_FORCE_CAP`.
* `q_row_dp` runs a layered dynamic program over (position, prefix
  element) states.  Both transitions out of a state acquire the factor q
  exactly when the pending letter is a right descent of the state, so
  the DP reproduces the brute-force row in O(word length x interval
  size) polynomial operations.

`fiber_row` converts a row to the t-convention (doubled exponents),
which is how the decomposition engine consumes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .coxeter import CoxeterSystem, WeylElement
from .errors import WordError, WordTooLongError
from .laurent import LaurentPolynomial, q_to_t

BRUTE_FORCE_CAP = 20

MaskLike = Union[int, Sequence[int], Sequence[bool]]


@dataclass(frozen=True)
class QRow:
    """One row of mask polynomials: the word and a map end-element -> poly in q."""

    word: tuple[int, ...]
    entries: Mapping[WeylElement, LaurentPolynomial]


def _mask_to_int(mask: MaskLike, length: int) -> int:
    if isinstance(mask, int):
        if mask < 0 or mask >> length:
            raise ValueError(f"mask {mask} out of range for word length {length}")
        return mask
    bits = list(mask)
    if len(bits) != length:
        raise ValueError(f"mask length {len(bits)} != word length {length}")
    out = 0
    for j, bit in enumerate(bits):
        if bit not in (0, 1, True, False):
            raise ValueError(f"mask entries must be 0/1, got {bit!r}")
        if bit:
            out |= 1 << j
    return out


def subexpression(system: CoxeterSystem, word: Sequence[int], mask: MaskLike) -> tuple[WeylElement, ...]:
    """The chain of prefix elements selected by a mask (length+1 entries)."""
    word = tuple(word)
    bits = _mask_to_int(mask, len(word))
    chain = [system.identity]
    cur = system.identity
    for j, letter in enumerate(word):
        if bits >> j & 1:
            cur = cur * system.simple(letter)
        chain.append(cur)
    return tuple(chain)


def defect(system: CoxeterSystem, word: Sequence[int], mask: MaskLike) -> int:
    """Number of positions whose pending letter descends from the prefix."""
    word = tuple(word)
    bits = _mask_to_int(mask, len(word))
    count = 0
    cur = system.identity
    for j, letter in enumerate(word):
        if cur.has_right_descent(letter):
            count += 1
        if bits >> j & 1:
            cur = cur * system.simple(letter)
    return count


def q_row_bruteforce(system: CoxeterSystem, word: Sequence[int],
                     cap: int = BRUTE_FORCE_CAP) -> QRow:
    """Row polynomials by iterating all masks; the oracle engine."""
    word = tuple(word)
    system.require_reduced(word)
    l = len(word)
    if l > cap:
        raise WordTooLongError(
            f"word length {l} exceeds the brute-force cap {cap}; use the DP engine"
        )
    gens = [system.simple(i) for i in word]
    buckets: dict[WeylElement, dict[int, int]] = {}
    for mask in range(1 << l):
        cur = system.identity
        d = 0
        for j in range(l):
            if cur.has_right_descent(word[j]):
                d += 1
            if mask >> j & 1:
                cur = cur * gens[j]
        slot = buckets.setdefault(cur, {})
        slot[d] = slot.get(d, 0) + 1
    entries = {el: LaurentPolynomial(m) for el, m in buckets.items()}
    return QRow(word=word, entries=entries)


def q_row_dp(system: CoxeterSystem, word: Sequence[int],
             stats: dict | None = None) -> QRow:
    """Row polynomials by the layered dynamic program; the production engine."""
    word = tuple(word)
    system.require_reduced(word)
    layer: dict[WeylElement, dict[int, int]] = {system.identity: {0: 1}}
    states = 0
    for letter in word:
        s = system.simple(letter)
        nxt: dict[WeylElement, dict[int, int]] = {}
        for el, expmap in layer.items():
            bump = 1 if el.has_right_descent(letter) else 0
            for target in (el, el * s):
                slot = nxt.setdefault(target, {})
                for e, c in expmap.items():
                    slot[e + bump] = slot.get(e + bump, 0) + c
        layer = nxt
        states += len(layer)
    if stats is not None:
        stats["states"] = states
    entries = {el: LaurentPolynomial(m) for el, m in layer.items()}
    return QRow(word=word, entries=entries)


def q_row(system: CoxeterSystem, word: Sequence[int], engine: str = "dp",
          cap: int = BRUTE_FORCE_CAP, stats: dict | None = None) -> QRow:
    if engine == "dp":
        return q_row_dp(system, word, stats=stats)
    if engine == "brute":
        return q_row_bruteforce(system, word, cap=cap)
    raise ValueError(f"unknown engine {engine!r} (expected 'dp' or 'brute')")


def fiber_row(system: CoxeterSystem, word: Sequence[int]) -> dict[WeylElement, LaurentPolynomial]:
    """The row in the t-convention: even exponents, one entry per v <= w."""
    row = q_row_dp(system, word)
    return {el: q_to_t(poly) for el, poly in row.entries.items()}
