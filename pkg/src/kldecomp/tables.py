"""Table serialisation and the on-disk cache.

The canonical interchange format is one JSON document per (Cartan type,
word policy) pair:

    {"cartan": str, "policy": str, "version": str,
     "entries": [{"w": [int], "v": [int], "kind": str,
                  "var": "q"|"t", "coeffs": {str(exponent): int}}]}

Entry words are always lex-min reduced words (the policy only affects
the polynomial values), entries are sorted by (kind, w, v) and the JSON
itself is dumped with sorted keys, so re-rendering a table is
byte-stable.  CSV is export-only: one row per entry, with t-convention
polynomials shown in q whenever their support is even.

`TableStore` owns the cache directory (flag > KLDECOMP_CACHE >
XDG_CACHE_HOME > ~/.cache), computes tables on miss, persists them with
a write-temp-then-rename, and hydrates table objects back from disk so a
warm process never recomputes.  Unparseable cache files raise
`CacheCorruptError` with the offending path; stale files (older tool
version) are silently recomputed.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import threading
from pathlib import Path

from . import __version__
from .cartan import CartanType
from .coxeter import CoxeterSystem, WordPolicy, build_system
from .decomp import KLTables, full_tables
from .errors import CacheCorruptError
from .laurent import LaurentPolynomial, auto_q_display

KINDS = ("Q", "Ftilde", "Dtilde", "Htilde", "S", "P")
VAR_FOR_KIND = {"Q": "q", "Ftilde": "t", "Dtilde": "t", "Htilde": "t", "S": "q", "P": "q"}
_TABLE_ATTR = {"Q": "q", "Ftilde": "f_tilde", "Dtilde": "d_tilde",
               "Htilde": "h_tilde", "S": "s", "P": "p"}
_KIND_POS = {kind: pos for pos, kind in enumerate(KINDS)}


def build_payload(tables: KLTables, kinds=None) -> dict:
    """The canonical JSON-able document for a computed table set."""
    wanted = list(KINDS) if not kinds else [k for k in KINDS if k in set(kinds)]
    system = tables.system
    entries = []
    for kind in wanted:
        mapping = getattr(tables, _TABLE_ATTR[kind])
        var = VAR_FOR_KIND[kind]
        for (w, v), poly in mapping.items():
            entries.append({
                "w": list(system.lex_min_reduced_word(w)),
                "v": list(system.lex_min_reduced_word(v)),
                "kind": kind,
                "var": var,
                "coeffs": poly.coeffs_json(),
            })
    entries.sort(key=lambda e: (_KIND_POS[e["kind"]], e["w"], e["v"]))
    return {
        "cartan": system.cartan.name,
        "policy": tables.policy_name,
        "version": __version__,
        "entries": entries,
    }


def render_table_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def payload_to_csv(payload: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["w", "v", "kind", "var", "poly"])
    for entry in payload["entries"]:
        poly = LaurentPolynomial.from_coeffs_json(entry["coeffs"])
        var = entry["var"]
        if var == "t":
            var, poly = auto_q_display(poly)
        writer.writerow([
            ",".join(map(str, entry["w"])),
            ",".join(map(str, entry["v"])),
            entry["kind"],
            var,
            poly.render(var),
        ])
    return buffer.getvalue()


def _corrupt(path, reason: str) -> CacheCorruptError:
    return CacheCorruptError(path, reason)


def validate_payload(data, path) -> dict:
    """Structural validation of a parsed table document."""
    if not isinstance(data, dict):
        raise _corrupt(path, "top level is not an object")
    for key, kind in (("cartan", str), ("policy", str), ("version", str), ("entries", list)):
        if key not in data or not isinstance(data[key], kind):
            raise _corrupt(path, f"missing or invalid field {key!r}")
    for pos, entry in enumerate(data["entries"]):
        if not isinstance(entry, dict):
            raise _corrupt(path, f"entry {pos} is not an object")
        if entry.get("kind") not in KINDS:
            raise _corrupt(path, f"entry {pos} has unknown kind {entry.get('kind')!r}")
        if entry.get("var") not in ("q", "t"):
            raise _corrupt(path, f"entry {pos} has invalid var {entry.get('var')!r}")
        for key in ("w", "v"):
            word = entry.get(key)
            if not isinstance(word, list) or not all(isinstance(x, int) for x in word):
                raise _corrupt(path, f"entry {pos} has invalid word {key!r}")
        coeffs = entry.get("coeffs")
        if not isinstance(coeffs, dict):
            raise _corrupt(path, f"entry {pos} has invalid coeffs")
        for exp, coeff in coeffs.items():
            if not isinstance(coeff, int):
                raise _corrupt(path, f"entry {pos} has non-integer coefficient {coeff!r}")
            try:
                int(exp)
            except ValueError:
                raise _corrupt(path, f"entry {pos} has non-integer exponent {exp!r}") from None
    return data


def parse_table_text(text: str, path) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _corrupt(path, f"invalid JSON ({exc})") from exc
    return validate_payload(data, path)


def resolve_cache_dir(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get("KLDECOMP_CACHE")
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "kldecomp"


class TableStore:
    """Computes, caches and serves table sets, one per (type, policy)."""

    def __init__(self, cache_dir=None):
        self.cache_dir = resolve_cache_dir(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._systems: dict[str, CoxeterSystem] = {}
        self._tables: dict[tuple[str, str], KLTables] = {}

    def system(self, cartan_name: str) -> CoxeterSystem:
        with self._lock:
            hit = self._systems.get(cartan_name)
            if hit is None:
                cartan = CartanType.parse(cartan_name)
                hit = self._systems.setdefault(cartan.name, build_system(cartan))
                self._systems[cartan_name] = hit
            return hit

    def path_for(self, cartan_name: str, policy_key: str) -> Path:
        return self.cache_dir / f"{cartan_name}__{policy_key}.json"

    def tables(self, cartan_name: str, policy: WordPolicy, jobs: int = 1,
               refresh: bool = False) -> KLTables:
        with self._lock:
            system = self.system(cartan_name)
            cartan_name = system.cartan.name
            key = (cartan_name, policy.cache_key)
            if not refresh:
                hit = self._tables.get(key)
                if hit is not None:
                    return hit
                hydrated = self._try_hydrate(system, policy)
                if hydrated is not None:
                    self._tables[key] = hydrated
                    return hydrated
            computed = full_tables(system, policy, jobs=jobs)
            self._tables[key] = computed
            self._persist(computed)
            return computed

    def payload(self, cartan_name: str, policy: WordPolicy, kinds=None,
                refresh: bool = False, jobs: int = 1) -> dict:
        return build_payload(self.tables(cartan_name, policy, jobs=jobs, refresh=refresh), kinds)

    def _persist(self, tables: KLTables) -> None:
        path = self.path_for(tables.system.cartan.name, tables.policy_name)
        text = render_table_json(build_payload(tables))
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _try_hydrate(self, system: CoxeterSystem, policy: WordPolicy) -> KLTables | None:
        path = self.path_for(system.cartan.name, policy.cache_key)
        if not path.exists():
            return None
        payload = parse_table_text(path.read_text(), path)
        if (payload["version"] != __version__
                or payload["cartan"] != system.cartan.name
                or payload["policy"] != policy.cache_key):
            return None
        present = {entry["kind"] for entry in payload["entries"]}
        if present != set(KINDS):
            return None
        tables = KLTables(system=system, policy_name=policy.cache_key)
        try:
            for entry in payload["entries"]:
                w = system.element_from_word(entry["w"])
                v = system.element_from_word(entry["v"])
                poly = LaurentPolynomial.from_coeffs_json(entry["coeffs"])
                getattr(tables, _TABLE_ATTR[entry["kind"]])[(w, v)] = poly
        except Exception as exc:
            raise _corrupt(path, f"invalid entry content ({exc})") from exc
        for level in system.all_elements():
            for w in level:
                tables.words[w] = policy.word(w)
        return tables
