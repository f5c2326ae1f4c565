import csv
import io
import json

import pytest

from electra.cli import main, resolve_jobs
from electra.core import identity_election, read_election, save_election
from electra.cultures import sample_culture


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def corpus(tmp_path):
    d = tmp_path / "data"
    d.mkdir()
    for i in range(3):
        save_election(sample_culture("impartial", 5, 6, i), d / f"e{i}.soc")
    return d


def test_validate_good(corpus, capsys):
    code, out, _ = run(["validate", corpus / "e0.soc"], capsys)
    assert code == 0
    assert json.loads(out)[0]["ok"] is True


def test_validate_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.soc"
    bad.write_text("2\n1,a\n2,b\n1,1,1\n1: 1,1\n")
    code, out, err = run(["validate", bad], capsys)
    assert code != 0
    rec = json.loads(err)
    assert rec["file"] == str(bad) and rec["line"] == 5


def test_missing_file(capsys):
    code, _, err = run(["stats", "does/not/exist.soc"], capsys)
    assert code != 0 and json.loads(err)["error"] == "io"


def test_unknown_flag(corpus, capsys):
    code, _, err = run(["stats", corpus, "--frobnicate"], capsys)
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_unknown_subcommand(capsys):
    code, _, err = run(["frobnicate"], capsys)
    assert code == 2 and "message" in json.loads(err)


def test_stats_json_records(corpus, capsys):
    code, out, _ = run(["stats", corpus, "--json"], capsys)
    recs = json.loads(out)
    assert code == 0 and [r["file"] for r in recs] == sorted(r["file"] for r in recs)
    for r in recs:
        assert {"max_kt", "avg_kt", "disagreeing_pairs", "kemeny_score", "budget"} <= set(r)


def test_stats_csv_layout(corpus, capsys):
    code, out, _ = run(["stats", corpus, "--csv"], capsys)
    assert code == 0 and "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 and "kemeny_score" in rows[0]


def test_stats_error_names_file(tmp_path, capsys):
    save_election(identity_election(3, 1), tmp_path / "one.soc")
    code, _, err = run(["stats", tmp_path / "one.soc"], capsys)
    assert code == 1 and json.loads(err)["file"].endswith("one.soc")


def test_rules_pairwise_identity(tmp_path, capsys):
    for i in range(3):
        save_election(identity_election(4, 5), tmp_path / f"id{i}.soc")
    code, out, _ = run(["rules", tmp_path, "--pairwise", "--json"], capsys)
    rep = json.loads(out)
    for matrix in (rep["winner_consensus"]["lexicographic"]["all"],):
        assert all(v == 1.0 for row in matrix.values() for v in row.values())


def test_sample_and_normalize(tmp_path, capsys):
    raw = tmp_path / "raw"
    code, _, _ = run(["sample", "--culture", "walsh_sp", "--m", 16, "--n", 20, "--count", 2, "--seed", 1, "--out", raw], capsys)
    assert code == 0 and len(list(raw.iterdir())) == 2
    norm = tmp_path / "norm"
    code, out, _ = run(["normalize", raw, "--count", 3, "--seed", 2, "--out", norm], capsys)
    assert code == 0
    files = sorted(norm.iterdir())
    assert len(files) == 6
    e = read_election(files[0])
    assert (e.m, e.n) == (15, 30)


def test_normalize_skips_small(corpus, tmp_path, capsys):
    code, out, _ = run(["normalize", corpus, "--out", tmp_path / "n"], capsys)
    assert code == 0 and all(r["skipped"] for r in json.loads(out))


def test_complete(tmp_path, capsys):
    src = tmp_path / "in.soi"
    src.write_text("3\n1,a\n2,b\n3,c\n3,3,3\n1: 1,2,3\n1: 1,2\n1: 1\n")
    code, out, _ = run(["complete", src, tmp_path / "out.soc", "--seed", 0], capsys)
    e = read_election(tmp_path / "out.soc")
    assert code == 0 and e.is_complete and e.m * e.n == 4


def test_incomplete_input_rejected(tmp_path, capsys):
    src = tmp_path / "in.soi"
    src.write_text("3\n1,a\n2,b\n3,c\n2,2,2\n1: 1,2,3\n1: 1\n")
    code, _, err = run(["stats", src], capsys)
    assert code == 1 and "incomplete" in json.loads(err)["message"]


def test_map_csv(corpus, tmp_path, capsys):
    out_file = tmp_path / "points.csv"
    code, _, _ = run(["map", corpus, "--compass", "--iterations", 200, "--out", out_file, "--csv"], capsys)
    text = out_file.read_text()
    assert code == 0 and text.splitlines()[0] == "id,x,y,dataset_tag"
    assert len(text.splitlines()) == 1 + 3 + 3 + 9  # odd m: no stratification


def test_distances_header(corpus, capsys):
    code, out, _ = run(["distances", corpus, "--csv"], capsys)
    header = out.splitlines()[0].split(",")
    assert code == 0 and header[0] == "id" and len(header) == 4


def test_mixed_m_rejected(corpus, capsys):
    save_election(identity_election(4, 2), corpus / "small.soc")
    code, _, err = run(["distances", corpus], capsys)
    assert code == 1 and "mixed" in json.loads(err)["message"]


def test_domains_and_venn(corpus, capsys):
    code, out, _ = run(["domains", corpus, "--distances", "--max-budget", 3], capsys)
    rows = json.loads(out)
    assert code == 0 and set(rows[0]["distances"]) == {"voters", "candidates"}
    code, out, _ = run(["venn", corpus, "--max-budget", 3, "--csv"], capsys)
    assert code == 0 and out.startswith("table,region,count\n")


def test_timeseries_baseline(corpus, capsys):
    code, out, _ = run(["timeseries", corpus, "--shuffle-baseline", "--csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["order"] for r in rows[:2]] == ["original", "shuffled"]


def test_jobs_do_not_change_output(corpus, capsys):
    _, one, _ = run(["stats", corpus, "--jobs", 1], capsys)
    _, two, _ = run(["stats", corpus, "--jobs", 2], capsys)
    assert one == two


def test_jobs_env_fallback(monkeypatch):
    monkeypatch.setenv("ELECTRA_JOBS", "3")
    assert resolve_jobs(None) == 3 and resolve_jobs(2) == 2
    monkeypatch.delenv("ELECTRA_JOBS")
    assert resolve_jobs(None) == 1
