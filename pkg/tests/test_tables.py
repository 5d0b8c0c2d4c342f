import json

import pytest

from kldecomp.coxeter import LexMaxPolicy, LexMinPolicy, resolve_policy
from kldecomp.errors import CacheCorruptError, WordError
from kldecomp.laurent import LaurentPolynomial
from kldecomp.tables import (
    KINDS,
    TableStore,
    build_payload,
    parse_table_text,
    payload_to_csv,
    render_table_json,
    resolve_cache_dir,
)


class TestPayload:
    def test_header_and_kinds(self, tables_a2):
        payload = build_payload(tables_a2)
        assert payload["cartan"] == "A2"
        assert payload["policy"] == "lexmin"
        assert {entry["kind"] for entry in payload["entries"]} == set(KINDS)

    def test_kind_filter(self, tables_a2):
        payload = build_payload(tables_a2, kinds=["P"])
        assert {entry["kind"] for entry in payload["entries"]} == {"P"}
        assert len(payload["entries"]) == 19
        assert all(entry["var"] == "q" for entry in payload["entries"])

    def test_pairs_respect_bruhat_order(self, a2, tables_a2):
        payload = build_payload(tables_a2)
        for entry in payload["entries"]:
            w = a2.require_reduced(tuple(entry["w"]))
            v = a2.require_reduced(tuple(entry["v"]))
            assert a2.bruhat_leq(v, w)

    def test_roundtrip_and_determinism(self, tables_a2, tmp_path):
        payload = build_payload(tables_a2)
        text = render_table_json(payload)
        assert render_table_json(build_payload(tables_a2)) == text
        parsed = parse_table_text(text, tmp_path / "x.json")
        assert parsed == payload
        assert render_table_json(parsed) == text

    def test_a1_q_table(self, a1):
        from kldecomp import full_tables

        payload = build_payload(full_tables(a1), kinds=["Q"])
        rows = {(tuple(e["w"]), tuple(e["v"])): e["coeffs"] for e in payload["entries"]}
        assert rows == {
            ((), ()): {"0": 1},
            ((1,), ()): {"0": 1},
            ((1,), (1,)): {"0": 1},
        }


class TestCsv:
    def test_shape_and_values(self, tables_a2):
        text = payload_to_csv(build_payload(tables_a2, kinds=["P"]))
        lines = text.strip().split("\n")
        assert lines[0] == "w,v,kind,var,poly"
        assert len(lines) == 20
        assert all(line.endswith(",P,q,1") for line in lines[1:])

    def test_words_are_quoted(self, tables_a2):
        text = payload_to_csv(build_payload(tables_a2, kinds=["S"]))
        assert '"1,2,1",1,S,q,q' in text

    def test_even_t_polys_render_in_q(self, tables_a2):
        text = payload_to_csv(build_payload(tables_a2, kinds=["Ftilde"]))
        assert ",t," not in text
        assert '"1,2,1",,Ftilde,q,1 + q' in text


class TestCacheDirResolution:
    def test_explicit_wins(self, tmp_path, monkeypatch):
        monkeypatch.setenv("KLDECOMP_CACHE", str(tmp_path / "env"))
        assert resolve_cache_dir(tmp_path / "flag") == tmp_path / "flag"

    def test_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("KLDECOMP_CACHE", str(tmp_path / "env"))
        assert resolve_cache_dir() == tmp_path / "env"

    def test_default_under_cache_home(self, tmp_path, monkeypatch):
        monkeypatch.delenv("KLDECOMP_CACHE", raising=False)
        monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
        assert resolve_cache_dir() == tmp_path / "kldecomp"


class TestStore:
    def test_cold_compute_persists(self, tmp_path):
        store = TableStore(tmp_path)
        payload = store.payload("A2", LexMinPolicy())
        path = store.path_for("A2", "lexmin")
        assert path.exists()
        assert parse_table_text(path.read_text(), path) == payload

    def test_warm_reads_are_byte_identical(self, tmp_path):
        first = TableStore(tmp_path)
        text_cold = render_table_json(first.payload("A2", LexMinPolicy(), kinds=["P", "S"]))
        second = TableStore(tmp_path)
        text_warm = render_table_json(second.payload("A2", LexMinPolicy(), kinds=["P", "S"]))
        assert text_cold == text_warm

    def test_hydrated_tables_back_the_other_endpoints(self, tmp_path):
        TableStore(tmp_path).payload("A2", LexMinPolicy())
        store = TableStore(tmp_path)
        tables = store.tables("A2", LexMinPolicy())
        system = store.system("A2")
        w0 = system.longest_element()
        assert tables.s[(w0, system.simple(1))] == LaurentPolynomial.term(1)
        assert len(tables.p) == 19

    def test_policies_get_separate_files(self, tmp_path):
        store = TableStore(tmp_path)
        store.payload("A2", LexMinPolicy())
        store.payload("A2", LexMaxPolicy())
        names = {p.name for p in tmp_path.glob("*.json")}
        assert names == {"A2__lexmin.json", "A2__lexmax.json"}

    def test_corrupt_cache_raises_with_path(self, tmp_path):
        store = TableStore(tmp_path)
        path = store.path_for("A2", "lexmin")
        path.write_text("{ not json")
        with pytest.raises(CacheCorruptError) as err:
            store.payload("A2", LexMinPolicy())
        assert err.value.path == path

    def test_structurally_invalid_cache_raises(self, tmp_path):
        store = TableStore(tmp_path)
        path = store.path_for("A2", "lexmin")
        path.write_text(json.dumps({"cartan": "A2", "policy": "lexmin",
                                    "version": "0.1.0", "entries": [{"kind": "nope"}]}))
        with pytest.raises(CacheCorruptError, match="unknown kind"):
            store.payload("A2", LexMinPolicy())

    def test_stale_version_recomputes(self, tmp_path):
        store = TableStore(tmp_path)
        payload = store.payload("A2", LexMinPolicy())
        path = store.path_for("A2", "lexmin")
        stale = dict(payload, version="0.0.0")
        path.write_text(render_table_json(stale))
        fresh_store = TableStore(tmp_path)
        fresh = fresh_store.payload("A2", LexMinPolicy())
        assert fresh["version"] == payload["version"]
        assert parse_table_text(path.read_text(), path)["version"] == payload["version"]

    def test_refresh_skips_and_overwrites_bad_cache(self, tmp_path):
        store = TableStore(tmp_path)
        before = render_table_json(store.payload("A2", LexMinPolicy()))
        path = store.path_for("A2", "lexmin")
        path.write_text("{ garbage")
        fresh_store = TableStore(tmp_path)
        fresh_store.payload("A2", LexMinPolicy(), refresh=True)
        assert path.read_text() == before


class TestPolicyResolution:
    def test_named_policies(self, a2):
        assert resolve_policy(a2).cache_key == "lexmin"
        assert resolve_policy(a2, "lexmax").cache_key == "lexmax"
        with pytest.raises(WordError, match="unknown word policy"):
            resolve_policy(a2, "random")

    def test_custom_words(self, a2):
        policy = resolve_policy(a2, "flip", [[2, 1, 2]])
        assert policy.word(a2.longest_element()) == (2, 1, 2)
        assert policy.word(a2.simple(1)) == (1,)
        again = resolve_policy(a2, "flip", [[2, 1, 2]])
        assert policy.cache_key == again.cache_key

    def test_custom_words_must_be_reduced(self, a2):
        with pytest.raises(WordError):
            resolve_policy(a2, "bad", [[1, 1]])

    def test_conflicting_words_rejected(self, a2):
        with pytest.raises(WordError, match="conflicting"):
            resolve_policy(a2, "bad", [[1, 2, 1], [2, 1, 2]])
