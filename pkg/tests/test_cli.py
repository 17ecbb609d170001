import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from conftest import TWO_PAGES, StubWorksServer
from scopemeter.cli import main
from scopemeter.ingest import parse_csv

DATA = Path(__file__).parent / "data"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_fixture(capsys):
    code, out, err = run(["compute", "--input", DATA / "three_papers.csv"], capsys)
    assert code == 0
    assert json.loads(out) == {"author_id": "a1", "n_papers": 3, "h": 2, "n_j": 2, "H": 2.0, "M": 0.5}
    assert err == ""


def test_compute_is_byte_stable(capsys):
    outs = {run(["compute", "--input", DATA / "three_papers.csv"], capsys)[1] for _ in range(3)}
    assert len(outs) == 1


def test_compute_other_formats(capsys):
    code, out, _ = run(["compute", "--input", DATA / "sample.bib", "--format", "bibtex", "--author", "a2"], capsys)
    # citations 0, 15, 3 in Nature, J. Fluid Mech., Soft Matter
    assert code == 0
    assert json.loads(out) | {"H": None, "M": None} == \
        {"author_id": "a2", "n_papers": 3, "h": 2, "n_j": 3, "H": None, "M": None}
    code, out, _ = run(["compute", "--input", DATA / "sample.ris", "--format", "ris", "--author", "a2"], capsys)
    # a2: citations unknown on one record
    assert code == 1
    code, out, _ = run(["compute", "--input", DATA / "sample.bib", "--format", "bibtex", "--author", "a3"], capsys)
    assert code == 1  # a3 entry k9 has no citations


def test_compute_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["compute"])
    assert info.value.code == 2
    code, out, err = run(["compute", "--input", DATA / "panel6.csv"], capsys)
    assert code == 2 and out == ""
    assert "S01" in err and "G02" in err


def test_compute_data_errors(capsys, tmp_path):
    code, out, err = run(["compute", "--input", tmp_path / "missing.csv"], capsys)
    assert code == 1 and "missing.csv" in err and out == ""
    bad = tmp_path / "bad.csv"
    bad.write_text("author_id,title,journal,issn,year,citations,doi\na1,t,J,,,-3,\n")
    code, out, err = run(["compute", "--input", bad], capsys)
    assert code == 1 and "line 2" in err and "bad.csv" in err


def test_compute_with_alias(capsys, tmp_path):
    recs = tmp_path / "r.csv"
    recs.write_text("author_id,title,journal,issn,year,citations,doi\n"
                    "a,x,Phys. Rev. Lett.,,,3,\na,y,PRL,0031-9007,,3,\n")
    alias = tmp_path / "alias.csv"
    alias.write_text("alias,canonical_kind,canonical_key\nPhys. Rev. Lett.,issn,0031-9007\n")
    _, out, _ = run(["compute", "--input", recs], capsys)
    assert json.loads(out)["n_j"] == 2
    _, out, _ = run(["compute", "--input", recs, "--alias", alias], capsys)
    assert json.loads(out)["n_j"] == 1


def test_panel_outputs(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out, err = run(["panel", "--input", DATA / "panel6.csv", "--groups", DATA / "panel6_groups.csv",
                          "--output", report_path, "--scatter", tmp_path / "sc", "--svg", tmp_path / "fig"], capsys)
    assert code == 0 and out == ""
    report = json.loads(report_path.read_text())
    assert sum(g["count"] for g in report["groups"].values()) == 6
    h_m_rows = (tmp_path / "sc_H_M.csv").read_text().splitlines()
    assert h_m_rows[0] == "author_id,group,x,y" and len(h_m_rows) == 7
    by_id = {r["author_id"]: r for r in report["rows"]}
    for line in h_m_rows[1:]:
        aid, _, x, y = line.split(",")
        assert abs(float(x) - by_id[aid]["H"]) <= 1e-6 and abs(float(y) - by_id[aid]["M"]) <= 1e-6
    root = ET.parse(tmp_path / "fig_H_M.svg").getroot()
    markers = [el for el in root.iter() if el.get("class") == "marker"]
    lines = [el for el in root.iter() if el.get("class") == "mean-line"]
    assert len(markers) == 6 and len(lines) == 3
    ET.parse(tmp_path / "fig_h_nj.svg")


def test_panel_groups_match_nobody(capsys, tmp_path):
    code, _, err = run(["panel", "--input", DATA / "panel6.csv", "--groups", DATA / "groups_none.csv",
                        "--output", tmp_path / "r.json"], capsys)
    assert code == 0 and "warning" in err
    report = json.loads((tmp_path / "r.json").read_text())
    assert {r["group"] for r in report["rows"]} == {"ungrouped"}


def test_panel_reports_author_on_failure(capsys, tmp_path):
    recs = tmp_path / "r.csv"
    recs.write_text("author_id,title,journal,issn,year,citations,doi\n"
                    "ok,x,J,,,3,\nbroken,y,K,,,,\n")
    code, out, err = run(["panel", "--input", recs, "--groups", DATA / "groups_none.csv",
                          "--output", tmp_path / "r.json"], capsys)
    assert code == 1 and "broken" in err


def test_fetch_writes_csv(capsys, tmp_path):
    out_csv = tmp_path / "works.csv"
    with StubWorksServer(TWO_PAGES) as stub:
        code, out, err = run(["fetch", "--author", "A1", "--output", out_csv, "--base-url", stub.url,
                              "--cache", tmp_path / "cache", "--rps", 50], capsys)
    assert code == 0
    assert "fetched=4 skipped=0" in err
    assert len(parse_csv(out_csv.read_bytes())) == 4


def test_fetch_empty_author(capsys, tmp_path):
    out_csv = tmp_path / "works.csv"
    with StubWorksServer({}) as stub:
        code, _, _ = run(["fetch", "--author", "X", "--output", out_csv, "--base-url", stub.url,
                          "--cache", tmp_path / "cache"], capsys)
    assert code == 0
    assert out_csv.read_text() == "author_id,title,journal,issn,year,citations,doi\n"


def test_fetch_unreachable(capsys, tmp_path):
    code, out, err = run(["fetch", "--author", "X", "--output", tmp_path / "w.csv",
                          "--base-url", "http://127.0.0.1:9", "--cache", tmp_path / "c", "--timeout", 2], capsys)
    assert code == 3 and err and out == ""


def test_fetch_contact_from_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SCOPEMETER_CONTACT", "env@example.org")
    with StubWorksServer(TWO_PAGES) as stub:
        run(["fetch", "--author", "A1", "--output", tmp_path / "w.csv", "--base-url", stub.url,
             "--cache", tmp_path / "c", "--rps", 50], capsys)
        assert all("mailto=env%40example.org" in p for _, p in stub.hits)


def test_cache_clear(capsys, tmp_path):
    with StubWorksServer(TWO_PAGES) as stub:
        run(["fetch", "--author", "A1", "--output", tmp_path / "w.csv", "--base-url", stub.url,
             "--cache", tmp_path / "c", "--rps", 50], capsys)
    code, out, _ = run(["cache-clear", "--cache", tmp_path / "c"], capsys)
    assert code == 0 and out.strip() == "2"


def test_quiet_suppresses_summary(capsys, tmp_path):
    with StubWorksServer(TWO_PAGES) as stub:
        _, _, err = run(["--quiet", "fetch", "--author", "A1", "--output", tmp_path / "w.csv",
                         "--base-url", stub.url, "--cache", tmp_path / "c", "--rps", 50], capsys)
    assert err == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "scopemeter", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("scopemeter ")
