import math
from pathlib import Path

import pytest

import emerge

ROOT = Path(__file__).resolve().parents[2]
SAMPLE = ROOT / "data" / "sample" / "sample.conf"
FIXTURE = ROOT / "tests" / "fixtures" / "corpus_iot"


def test_formulas():
    assert emerge.novelty_relative(0.0) == 5.0
    assert emerge.novelty_relative(0.1) == pytest.approx(5 * math.exp(-1), abs=1e-12)
    assert emerge.novelty_relative(0.5, "percent") == pytest.approx(5 * math.exp(-5), abs=1e-12)
    assert emerge.novelty_absolute(1) == pytest.approx(5 / math.e, abs=1e-12)
    assert emerge.slog(math.e - 1) == pytest.approx(1.0, abs=1e-12)
    assert emerge.ols_slope([(0, 4), (1, 6), (2, 9), (3, 14), (4, 20)]) == pytest.approx(4.0)
    assert emerge.escore_proxy([5.0] * 10) == pytest.approx(15 / math.sqrt(50))
    with pytest.raises(ValueError):
        emerge.novelty_relative(2.0)


def test_text_and_ranking():
    assert emerge.normalize("the Internet of Things grows") == ["internet", "thing", "grow"]
    assert emerge.lemmatize("technologies") == "technology"
    assert emerge.rank_terms([("a", 1.0), ("b", 2.0), ("c", 1.0)], 2) == [("b", 2.0), ("a", 1.0)]
    r, flat = emerge.pearson([1, 2, 3], [1, 3, 2])
    assert r == pytest.approx(0.5) and not flat


def test_score_corpus_on_fixture():
    scores = emerge.score_corpus(
        (FIXTURE / "papers.txt").read_text(),
        (FIXTURE / "patents.csv").read_text(),
        (FIXTURE / "terms.tsv").read_text(),
        2010,
        2019,
        "full",
    )
    assert "digital twin" in scores
    twin = scores["digital twin"]
    parts = [v for k, v in twin.items() if k not in ("emergence_score", "degenerate")]
    assert len(parts) == 12
    assert twin["emergence_score"] == pytest.approx(sum(parts), abs=1e-12)
    assert scores["digital twin"]["emergence_score"] > scores["fog computing"]["emergence_score"]


def test_pipeline_and_errors(tmp_path):
    out = emerge.run_pipeline(SAMPLE, tmp_path / "run")
    assert (Path(out) / "emergence_ranking.csv").exists()
    again = emerge.run_pipeline(SAMPLE, tmp_path / "again", {"threads": "3"})
    for f in Path(out).iterdir():
        assert f.read_bytes() == (Path(again) / f.name).read_bytes()
    with pytest.raises(emerge.MissingArtifactError):
        emerge.run_stage("score", SAMPLE, tmp_path / "empty")
    with pytest.raises(emerge.ConfigError):
        emerge.run_pipeline(SAMPLE, tmp_path / "bad", {"counting_mode": "fractional"})
    with pytest.raises(emerge.Error):
        emerge.run_stage("publish", SAMPLE, tmp_path / "x")


def test_sidecar_contract(tmp_path):
    out = tmp_path / "embed"
    emerge.run_stage("ingest", SAMPLE, out)
    with pytest.raises(emerge.ConfigError):
        emerge.run_stage("terms", SAMPLE, out, {"ranker": "embedding"})
    candidates = emerge.read_candidates((out / "candidates.tsv").read_text())
    assert candidates and all(df >= 1 for _, df, _ in candidates)

    vectors = {f"term:{phrase}": [1.0, 0.0] for phrase, _, _ in candidates}
    for line in (out / "corpus.csv").read_text().splitlines()[1:]:
        vectors[f"doc:{line.split(',')[0]}"] = [0.6, 0.8]
    text = emerge.format_sidecar(2, vectors)
    assert text.startswith("dim=2\n")
    dim, parsed = emerge.parse_sidecar(text)
    assert dim == 2 and parsed == vectors
    sidecar = tmp_path / "vectors.sidecar"
    sidecar.write_text(text)
    emerge.run_stage("terms", SAMPLE, out, {"ranker": "embedding", "sidecar": str(sidecar)})
    assert (out / "terms.tsv").read_text().strip()
    with pytest.raises(emerge.FormatError):
        emerge.parse_sidecar("dim=2\nterm:x\t1.0\n")
