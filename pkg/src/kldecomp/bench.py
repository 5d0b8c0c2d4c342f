"""Timing and state-count statistics for the two row engines."""

from __future__ import annotations

from time import perf_counter

from .coxeter import CoxeterSystem, LexMinPolicy, WordPolicy
from .deodhar import BRUTE_FORCE_CAP, q_row_bruteforce, q_row_dp
from .errors import ConsistencyError

ENGINES = ("brute", "dp")


def run_bench(system: CoxeterSystem, policy: WordPolicy | None = None,
              engines=ENGINES, max_length: int | None = None,
              cap: int = BRUTE_FORCE_CAP) -> list[dict]:
    """One record per (length, engine): words, seconds, total states.

    The brute engine refuses lengths beyond the cap and reports that in
    the record instead of timing anything.  When both engines run on a
    length their rows are compared entry for entry; a mismatch is an
    internal error, not a statistic.
    """
    for engine in engines:
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r} (expected one of {ENGINES})")
    if policy is None:
        policy = LexMinPolicy()
    levels = system.all_elements()
    rows: list[dict] = []
    for length, level in enumerate(levels):
        if max_length is not None and length > max_length:
            break
        words = [policy.word(w) for w in level]
        outputs: dict[str, list] = {}
        for engine in engines:
            record = {"length": length, "engine": engine, "words": len(words),
                      "seconds": None, "states": None, "note": None}
            if engine == "brute" and length > cap:
                record["note"] = f"refused: length {length} exceeds brute-force cap {cap}"
                rows.append(record)
                continue
            start = perf_counter()
            states = 0
            produced = []
            for word in words:
                if engine == "dp":
                    stats: dict = {}
                    produced.append(q_row_dp(system, word, stats=stats))
                    states += stats["states"]
                else:
                    produced.append(q_row_bruteforce(system, word, cap=cap))
                    states += 1 << len(word)
            record["seconds"] = round(perf_counter() - start, 6)
            record["states"] = states
            outputs[engine] = produced
            rows.append(record)
        if len(outputs) == 2:
            for row_a, row_b in zip(outputs["brute"], outputs["dp"]):
                if row_a.entries != row_b.entries:
                    raise ConsistencyError(
                        f"engines disagree on word {list(row_a.word)}"
                    )
    return rows
