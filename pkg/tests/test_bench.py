import pytest

from kldecomp.bench import run_bench


class TestBench:
    def test_rows_cover_lengths_and_engines(self, a2):
        rows = run_bench(a2)
        assert {(row["length"], row["engine"]) for row in rows} == {
            (length, engine) for length in range(4) for engine in ("brute", "dp")
        }
        for row in rows:
            assert row["words"] >= 1
            assert row["seconds"] is not None
            assert row["states"] is not None
            assert row["note"] is None

    def test_dp_state_counts_are_bounded(self, a3):
        rows = run_bench(a3, engines=("dp",))
        levels = a3.all_elements()
        for row in rows:
            level = levels[row["length"]]
            bound = sum(len(a3.below(w)) * w.length for w in level)
            assert row["states"] <= max(bound, 1)

    def test_brute_refusal_reports_cap(self, a2):
        rows = run_bench(a2, cap=2)
        refused = [row for row in rows if row["note"]]
        assert [row["length"] for row in refused] == [3]
        assert "cap 2" in refused[0]["note"]
        assert refused[0]["seconds"] is None
        dp_rows = [row for row in rows if row["engine"] == "dp"]
        assert all(row["seconds"] is not None for row in dp_rows)

    def test_max_length_cutoff(self, a3):
        rows = run_bench(a3, engines=("dp",), max_length=2)
        assert {row["length"] for row in rows} == {0, 1, 2}

    def test_unknown_engine(self, a2):
        with pytest.raises(ValueError, match="unknown engine"):
            run_bench(a2, engines=("warp",))
