import json
import math

import pytest

import apekit


def test_tokenize_and_bleu_identity():
    assert apekit.tokenize("Hello, world") == ["Hello", ",", "world"]
    result = apekit.bleu(["the cat sat on the mat"], ["the cat sat on the mat"])
    assert result["score"] == pytest.approx(100.0)


def test_clipped_precision_and_chrf():
    result = apekit.bleu(["the the the the the the the"], ["the cat is on the mat"])
    assert result["precisions"][0] == pytest.approx(2 / 7)
    assert apekit.chrf(["ab"], ["abc"], 1, 2.0) == pytest.approx(71.4286, abs=1e-3)


def test_ter_and_oracle():
    result = apekit.ter("b a c", "a b c")
    assert result["score"] == pytest.approx(1 / 3)
    assert result["edits"]["shifts"] == 1
    assert apekit.ter_oracle("b a c", "a b c") == 1
    corpus = apekit.ter_corpus(["a x", "a b c d e f g h"], ["a b", "a b c d e f g h"])
    assert corpus["score"] == 0.1
    with pytest.raises(ValueError):
        apekit.ter("a", "")


def test_kappa_and_bootstrap():
    assert apekit.cohen_kappa([1, 1, 2, 2], [2, 2, 1, 1])["kappa"] == pytest.approx(-1.0)
    assert apekit.weighted_kappa([1, 3], [3, 1], 1, 3)["kappa"] == pytest.approx(-1.0)
    with pytest.raises(ArithmeticError):
        apekit.cohen_kappa([2, 2], [2, 2])
    refs = ["a b c d", "e f g h"]
    result = apekit.bootstrap(refs, refs, refs, n_samples=100, seed=1)
    assert result["p_value"] == 1.0
    assert result["ties"] == 100


def test_preprocess_round_trip():
    triplet = {"id": "x", "src": "<i>One</i><br>- Two", "mt": "<i>Eins</i><br>- Zwei",
               "pe": "<i>Eins</i><br>- Zwo"}
    parts, log = apekit.preprocess(triplet)
    assert [p["mt"] for p in parts] == ["Eins", "Zwei"]
    assert apekit.postprocess([p["mt"] for p in parts], log) == triplet["mt"]
    assert apekit.strip_markup("- Hi") == ("Hi", 1)


def test_filter_and_mix():
    triplets = [{"src": f"sentence {i}", "mt": f"satz {i}", "pe": f"satz {i}"} for i in range(50)]
    out = apekit.filter_corpus(triplets, {"dev_size": 5, "test_size": 5}, langid="none")
    report = out["report"]
    assert report["reconciles"]
    assert len(out["dev"]) == 5 and len(out["test"]) == 5
    mixed = apekit.upsample_mix(triplets[:10], 3, triplets[10:], seed=2)
    assert len(mixed) == 70


def test_buckets_and_cli():
    refs = ["a b c", "d e f g"]
    analysis = apekit.ter_buckets(refs, refs, refs)
    assert len(analysis["buckets"]) == 10
    code, out, err = apekit.run_cli(["--version"])
    assert code == 0
    code, out, err = apekit.run_cli(["stats", "--in", "/no/such/file.jsonl"])
    assert code == 2 and "/no/such/file.jsonl" in err
    assert not math.isnan(apekit.chrf(["x"], ["x"]))
    json.dumps(analysis)
