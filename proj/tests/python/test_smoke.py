import math
import pathlib

import pytest

import biasprobe

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "tests" / "fixtures"


def test_metrics():
    assert biasprobe.bias_ratio(0.5, 0.25) == 2.0
    assert biasprobe.normalized_ratio(2.0, 0.3, 0.3) == 2.0
    assert biasprobe.coefficient_of_variation([3, 3, 3, 3]) == 0.0
    assert biasprobe.coefficient_of_variation([1, 3]) == pytest.approx(0.5)
    assert biasprobe.pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    with pytest.raises(biasprobe.DomainError):
        biasprobe.bias_ratio(0.4, 0.0)
    with pytest.raises(biasprobe.DomainError):
        biasprobe.pearson([1, 2, 3], [2, 2, 2])


def test_total_frequency():
    sizes = [1.0] * 301
    rel = [0.0] * 301
    rel[0], rel[-1] = 0.25, 0.5
    assert biasprobe.total_frequency(sizes, rel) == 0.75
    with pytest.raises(biasprobe.InputError):
        biasprobe.total_frequency([1.0] * 10, [0.1] * 301)


def test_templates():
    assert biasprobe.render_template("is", "engineer", "<mask>") == "<mask> is an engineer."
    assert biasprobe.render_template("works as", "heir", "[MASK]") == "[MASK] works as an heir."
    pairs = biasprobe.probe_set(["nurse", "umpire"], "[MASK]")
    assert len(pairs) == 6
    assert pairs[2] == ("is", "[MASK] is a [MASK].")


def test_lexicon_agrees_with_pronunciations():
    cmudict = pytest.importorskip("cmudict")
    pron = cmudict.dict()
    vowels = set("AEIOU")
    checked = 0
    for key, det in biasprobe.builtin_lexicon():
        word = key.rstrip("-")
        if word not in pron:
            continue
        first = pron[word][0][0]
        expected = "an" if first[0] in vowels else "a"
        assert det == expected, (key, first)
        checked += 1
    assert checked >= 5


def test_analyze_fixture(tmp_path):
    report = biasprobe.analyze(FIXTURES / "fixture.ini", tmp_path)
    assert len(report["runs"]) == 8
    assert (tmp_path / "report" / "report.json").exists()
    for run in report["runs"]:
        for plateau in run["plateaus"]:
            for source in plateau["sources"]:
                assert all(v >= 0 for v in source["vectors"]["cv"])
                assert math.isfinite(source["rq2"]["pearson_cv_certainty"])
