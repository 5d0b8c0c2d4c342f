"""Finite Weyl groups with exact integer-matrix element arithmetic.

Group elements act on the root lattice in the simple-root basis, so an
element is the integer matrix sending each simple root to its image
(columns are image coordinates).  Length is the number of positive roots
mapped to negative roots, descents are column-sign tests, and the
inverse matrix is carried along with every element so that left descents
are as cheap as right ones.

Bruhat order is computed by the lifting-property recursion; once the
group has been enumerated, the full order relation is cached as one
bitset per element (built level by level from the recurrence
``below(w) = below(ws) | below(ws)*s`` for a right descent ``s``).
"""

from __future__ import annotations

import hashlib
import json
from typing import Iterable, Mapping, Sequence

from .cartan import CartanType
from .errors import CartanError, ConsistencyError, SystemMismatchError, WordError

Matrix = tuple[tuple[int, ...], ...]


def _identity_rows(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    rng = range(n)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in rng) for j in rng)
        for i in rng
    )


def _mat_apply(rows: Matrix, vec: Sequence[int]) -> tuple[int, ...]:
    rng = range(len(vec))
    return tuple(sum(rows[i][k] * vec[k] for k in rng) for i in rng)


class WeylElement:
    """A group element: its matrix, the inverse matrix and a cached length."""

    __slots__ = ("system", "rows", "inv_rows", "_length")

    def __init__(self, system: "CoxeterSystem", rows: Matrix, inv_rows: Matrix,
                 length: int | None = None):
        self.system = system
        self.rows = rows
        self.inv_rows = inv_rows
        self._length = length

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = self.system.length_of_rows(self.rows)
        return self._length

    @property
    def word(self) -> tuple[int, ...]:
        return self.system.lex_min_reduced_word(self)

    def has_right_descent(self, i: int) -> bool:
        """True iff multiplying by s_i on the right drops the length."""
        col = i - 1
        return all(row[col] <= 0 for row in self.rows)

    def has_left_descent(self, i: int) -> bool:
        col = i - 1
        return all(row[col] <= 0 for row in self.inv_rows)

    def inverse(self) -> "WeylElement":
        return WeylElement(self.system, self.inv_rows, self.rows, self._length)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.system.multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.system is other.system and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"W[{','.join(map(str, self.word))}]"


class CoxeterSystem:
    """A finite Weyl group realised on its root lattice."""

    def __init__(self, cartan: CartanType):
        self.cartan = cartan
        self.rank = cartan.rank
        n = self.rank
        mats = []
        for i in range(n):
            rows = [list(r) for r in _identity_rows(n)]
            for j in range(n):
                rows[i][j] = -1 if j == i else -cartan.cartan_rows[i][j]
            mats.append(tuple(tuple(r) for r in rows))
        self.simple_matrices: tuple[Matrix, ...] = tuple(mats)
        self.positive_roots = self._close_positive_roots()
        if len(self.positive_roots) != cartan.positive_root_count:
            raise ConsistencyError(
                f"{cartan.name}: positive-root closure found {len(self.positive_roots)} "
                f"roots, expected {cartan.positive_root_count}"
            )
        self.group_order = cartan.group_order
        ident = _identity_rows(n)
        self.identity = WeylElement(self, ident, ident, 0)
        self._simples = tuple(
            WeylElement(self, m, m, 1) for m in self.simple_matrices
        )
        self._levels: list[list[WeylElement]] | None = None
        self._flat: list[WeylElement] | None = None
        self._index: dict[Matrix, int] | None = None
        self._below_bits: list[int] | None = None
        self._below_cache: dict[int, tuple[WeylElement, ...]] = {}
        self._lexmin: dict[Matrix, tuple[int, ...]] = {}
        self._lexmax: dict[Matrix, tuple[int, ...]] = {}
        self._bruhat_memo: dict[tuple[Matrix, Matrix], bool] = {}

    def _close_positive_roots(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        found = set(simple)
        queue = list(simple)
        while queue:
            root = queue.pop()
            for mat in self.simple_matrices:
                image = _mat_apply(mat, root)
                if all(x >= 0 for x in image) and image not in found:
                    found.add(image)
                    queue.append(image)
        return tuple(sorted(found))

    # -- element arithmetic -------------------------------------------

    def simple(self, i: int) -> WeylElement:
        """The i-th simple reflection, 1-based."""
        if not 1 <= i <= self.rank:
            raise WordError(f"generator index {i} out of range 1..{self.rank}")
        return self._simples[i - 1]

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        if a.system is not self or b.system is not self:
            raise SystemMismatchError("elements belong to different Coxeter systems")
        return WeylElement(self, _mat_mul(a.rows, b.rows), _mat_mul(b.inv_rows, a.inv_rows))

    def length_of_rows(self, rows: Matrix) -> int:
        count = 0
        for root in self.positive_roots:
            image = _mat_apply(rows, root)
            if all(x <= 0 for x in image):
                count += 1
        return count

    def element_from_word(self, word: Iterable[int]) -> WeylElement:
        out = self.identity
        for pos, letter in enumerate(word, start=1):
            if not isinstance(letter, int) or not 1 <= letter <= self.rank:
                raise WordError(
                    f"invalid generator {letter!r} at position {pos} (valid: 1..{self.rank})",
                    position=pos,
                )
            out = self.multiply(out, self._simples[letter - 1])
        return out

    def require_reduced(self, word: Sequence[int]) -> WeylElement:
        """Evaluate a word, insisting it is reduced; returns its element."""
        out = self.identity
        for pos, letter in enumerate(word, start=1):
            if not isinstance(letter, int) or not 1 <= letter <= self.rank:
                raise WordError(
                    f"invalid generator {letter!r} at position {pos} (valid: 1..{self.rank})",
                    position=pos,
                )
            if out.has_right_descent(letter):
                raise WordError(f"word is not reduced: length drops at position {pos}",
                                position=pos)
            nxt = self.multiply(out, self._simples[letter - 1])
            nxt._length = out.length + 1
            out = nxt
        return out

    def right_descents(self, w: WeylElement) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if w.has_right_descent(i))

    def left_descents(self, w: WeylElement) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if w.has_left_descent(i))

    # -- reduced words -------------------------------------------------

    def lex_min_reduced_word(self, w: WeylElement) -> tuple[int, ...]:
        """The lexicographically smallest reduced word for w.

        Greedy: the smallest first letter of any reduced word is the
        smallest left descent, and the tail is lex-min for s_i * w.
        """
        return self._greedy_word(w, self._lexmin, min)

    def lex_max_reduced_word(self, w: WeylElement) -> tuple[int, ...]:
        return self._greedy_word(w, self._lexmax, max)

    def _greedy_word(self, w: WeylElement, memo, pick) -> tuple[int, ...]:
        cached = memo.get(w.rows)
        if cached is not None:
            return cached
        if w.length == 0:
            word: tuple[int, ...] = ()
        else:
            i = pick(self.left_descents(w))
            rest = self.multiply(self._simples[i - 1], w)
            rest._length = w.length - 1
            word = (i,) + self._greedy_word(rest, memo, pick)
        memo[w.rows] = word
        return word

    # -- enumeration ----------------------------------------------------

    def all_elements(self) -> list[list[WeylElement]]:
        """Every element exactly once, grouped by length.

        Levels are sorted by increasing length and, within a length, by
        lex-min reduced word.
        """
        if self._levels is None:
            levels = [[self.identity]]
            seen: set[Matrix] = {self.identity.rows}
            current = [self.identity]
            length = 0
            while True:
                nxt: dict[Matrix, WeylElement] = {}
                for w in current:
                    for i in range(1, self.rank + 1):
                        if w.has_right_descent(i):
                            continue
                        x = self.multiply(w, self._simples[i - 1])
                        if x.rows in seen or x.rows in nxt:
                            continue
                        x._length = length + 1
                        nxt[x.rows] = x
                if not nxt:
                    break
                length += 1
                level = sorted(nxt.values(), key=self.lex_min_reduced_word)
                levels.append(level)
                seen.update(nxt)
                current = level
            total = sum(len(level) for level in levels)
            if total != self.group_order:
                raise ConsistencyError(
                    f"{self.cartan.name}: enumeration found {total} elements, "
                    f"expected {self.group_order}"
                )
            self._levels = levels
            self._flat = [w for level in levels for w in level]
            self._index = {w.rows: k for k, w in enumerate(self._flat)}
        return [list(level) for level in self._levels]

    def elements(self) -> list[WeylElement]:
        self.all_elements()
        assert self._flat is not None
        return list(self._flat)

    def longest_element(self) -> WeylElement:
        self.all_elements()
        assert self._levels is not None
        top = self._levels[-1]
        if len(top) != 1:
            raise ConsistencyError("top length level is not a single element")
        return top[0]

    def canonical(self, w: WeylElement) -> WeylElement:
        """The enumeration's own object for w (useful as a dict key)."""
        self.all_elements()
        assert self._flat is not None and self._index is not None
        return self._flat[self._index[w.rows]]

    # -- Bruhat order ----------------------------------------------------

    def _ensure_bitsets(self) -> None:
        if self._below_bits is not None:
            return
        self.all_elements()
        assert self._flat is not None and self._index is not None
        flat, index = self._flat, self._index
        rmult = [
            [index[self.multiply(w, self._simples[i]).rows] for w in flat]
            for i in range(self.rank)
        ]
        bits: list[int] = [0] * len(flat)
        for k, w in enumerate(flat):
            if w.length == 0:
                bits[k] = 1 << k
                continue
            i = self.right_descents(w)[0]
            parent = rmult[i - 1][k]
            base = bits[parent]
            moved = 0
            rest = base
            table = rmult[i - 1]
            while rest:
                lsb = rest & -rest
                moved |= 1 << table[lsb.bit_length() - 1]
                rest ^= lsb
            bits[k] = base | moved
        self._below_bits = bits

    def bruhat_leq(self, v: WeylElement, w: WeylElement) -> bool:
        """Truth of v <= w in Bruhat order."""
        if v.system is not self or w.system is not self:
            raise SystemMismatchError("elements belong to different Coxeter systems")
        if self._below_bits is not None:
            assert self._index is not None
            return bool(self._below_bits[self._index[w.rows]] >> self._index[v.rows] & 1)
        return self._bruhat_recursive(v, w)

    def _bruhat_recursive(self, v: WeylElement, w: WeylElement) -> bool:
        if v.rows == w.rows:
            return True
        if v.length >= w.length:
            return False
        key = (v.rows, w.rows)
        cached = self._bruhat_memo.get(key)
        if cached is not None:
            return cached
        i = self.right_descents(w)[0]
        w2 = self.multiply(w, self._simples[i - 1])
        w2._length = w.length - 1
        if v.has_right_descent(i):
            v2 = self.multiply(v, self._simples[i - 1])
            v2._length = v.length - 1
        else:
            v2 = v
        result = self._bruhat_recursive(v2, w2)
        self._bruhat_memo[key] = result
        return result

    def below(self, w: WeylElement) -> tuple[WeylElement, ...]:
        """The lower Bruhat interval of w, sorted by (length, word)."""
        self._ensure_bitsets()
        assert self._index is not None and self._flat is not None and self._below_bits is not None
        k = self._index[w.rows]
        cached = self._below_cache.get(k)
        if cached is not None:
            return cached
        out = []
        rest = self._below_bits[k]
        while rest:
            lsb = rest & -rest
            out.append(self._flat[lsb.bit_length() - 1])
            rest ^= lsb
        result = tuple(out)
        self._below_cache[k] = result
        return result

    def bond_order(self, i: int, j: int) -> int:
        return self.cartan.bond_order(i, j)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.cartan.name})"


def build_system(cartan: CartanType | str) -> CoxeterSystem:
    """Build the Weyl group of a Cartan type (given as datum or name)."""
    if isinstance(cartan, str):
        cartan = CartanType.parse(cartan)
    if not isinstance(cartan, CartanType):
        raise CartanError(f"expected a CartanType or type name, got {cartan!r}")
    return CoxeterSystem(cartan)


# -- reduced-word policies ---------------------------------------------


class WordPolicy:
    """Fixes one reduced word per element.

    The mask, fiber and multiplicity tables all depend on the chosen
    words; the Kazhdan-Lusztig table must not, which is what the
    word-independence check exercises.  `cache_key` feeds the on-disk
    cache naming, so distinct policies never collide.
    """

    name: str = "?"

    @property
    def cache_key(self) -> str:
        return self.name

    def word(self, w: WeylElement) -> tuple[int, ...]:
        raise NotImplementedError


class LexMinPolicy(WordPolicy):
    name = "lexmin"

    def word(self, w: WeylElement) -> tuple[int, ...]:
        return w.system.lex_min_reduced_word(w)


class LexMaxPolicy(WordPolicy):
    name = "lexmax"

    def word(self, w: WeylElement) -> tuple[int, ...]:
        return w.system.lex_max_reduced_word(w)


class OverridePolicy(WordPolicy):
    """Explicit words for selected elements, lex-min for the rest."""

    def __init__(self, system: CoxeterSystem, words: Iterable[Sequence[int]],
                 name: str = "custom"):
        self.name = name
        self._overrides: dict[WeylElement, tuple[int, ...]] = {}
        canonical: list[list[int]] = []
        for word in words:
            word = tuple(word)
            element = system.require_reduced(word)
            previous = self._overrides.get(element)
            if previous is not None and previous != word:
                raise WordError(
                    f"conflicting words {list(previous)} and {list(word)} for the same element"
                )
            self._overrides[element] = word
            canonical.append(list(word))
        digest = hashlib.sha256(
            json.dumps(sorted(canonical), separators=(",", ":")).encode()
        ).hexdigest()[:10]
        self._cache_key = f"{name}-{digest}"

    @property
    def cache_key(self) -> str:
        return self._cache_key

    def word(self, w: WeylElement) -> tuple[int, ...]:
        override = self._overrides.get(w)
        if override is not None:
            return override
        return w.system.lex_min_reduced_word(w)


def resolve_policy(system: CoxeterSystem, name: str = "lexmin",
                   words: Iterable[Sequence[int]] | None = None) -> WordPolicy:
    """Build the policy a request names; custom word lists need `words`."""
    if words is not None:
        return OverridePolicy(system, words, name=name or "custom")
    if name in (None, "", "lexmin"):
        return LexMinPolicy()
    if name == "lexmax":
        return LexMaxPolicy()
    raise WordError(f"unknown word policy {name!r} (expected lexmin, lexmax, or a word list)")
