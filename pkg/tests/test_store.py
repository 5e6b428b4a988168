import json

from dehncol.store import ResultsStore, canonical_json, inputs_hash


def test_put_get_roundtrip(tmp_path):
    s = ResultsStore(tmp_path / "r.jsonl")
    rec = s.put("5_2", 7, "invariant-nt", {"pd": "x"}, {"counts": {"3": 98}})
    got = s.get("5_2", 7, "invariant-nt", {"pd": "x"})
    assert got == rec
    assert s.get("5_2", 7, "invariant-nt", {"pd": "y"}) is None
    assert got.output_json() == {"counts": {"3": 98}}


def test_get_or_compute_caches(tmp_path):
    s = ResultsStore(tmp_path / "r.jsonl")
    calls = []

    def compute():
        calls.append(1)
        return {"b": 2, "a": [1, 2]}

    r1, hit1 = s.get_or_compute("k", 3, "kind", {"i": 1}, compute)
    r2, hit2 = s.get_or_compute("k", 3, "kind", {"i": 1}, compute)
    assert (hit1, hit2) == (False, True) and len(calls) == 1
    assert r1.outputs == r2.outputs == canonical_json({"a": [1, 2], "b": 2})


def test_recompute_is_byte_identical(tmp_path):
    a = ResultsStore(tmp_path / "a.jsonl").put("k", 5, "x", {"i": 1}, {"z": 1, "y": [3]})
    b = ResultsStore(tmp_path / "b.jsonl").put("k", 5, "x", {"i": 1}, {"y": [3], "z": 1})
    la, lb = json.loads(a.to_line()), json.loads(b.to_line())
    la.pop("timestamp"), lb.pop("timestamp")
    assert canonical_json(la) == canonical_json(lb)


def test_index_rebuilt_when_stale(tmp_path):
    path = tmp_path / "r.jsonl"
    s = ResultsStore(path)
    s.put("k", 3, "x", {"i": 1}, {"v": 1})
    s.put("k", 3, "x", {"i": 2}, {"v": 2})
    s.index_path.unlink()
    s2 = ResultsStore(path)
    assert s2.get("k", 3, "x", {"i": 2}).output_json() == {"v": 2}
    s.index_path.write_text("garbage")
    assert ResultsStore(path).get("k", 3, "x", {"i": 1}).output_json() == {"v": 1}
    assert len(list(s2.records())) == 2


def test_convention_is_part_of_key(tmp_path):
    s = ResultsStore(tmp_path / "r.jsonl")
    s.put("k", 3, "x", {"i": 1}, {"v": 1}, convention="old")
    assert s.get("k", 3, "x", {"i": 1}) is None
    assert s.get("k", 3, "x", {"i": 1}, convention="old") is not None


def test_inputs_hash_order_independent():
    assert inputs_hash({"a": 1, "b": 2}) == inputs_hash({"b": 2, "a": 1})
