"""Exit criteria. One test per criterion; each prints a PASS/FAIL line and the
terminal summary repeats them in order."""

import json
import math
import random
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import jsonschema
import pytest

from conftest import ACCEPTANCE_RESULTS, TWO_PAGES, StubWorksServer, h_oracle
from scopemeter.cli import main
from scopemeter.errors import EmptyAfterNormalization
from scopemeter.indices import compute_h, compute_profile_indices, from_polar, to_polar
from scopemeter.ingest import normalize_journal, parse_bibtex, parse_csv, parse_ris, write_csv
from scopemeter.model import PaperRecord, build_profile
from scopemeter.panel import REPORT_SCHEMA, build_panel_report, pearson
from scopemeter.synthetic import synthetic_panel
from test_ingest import BIBTEX_EXPECTED, RIS_EXPECTED

DATA = Path(__file__).parent / "data"

# mpmath, 30 digits
H_3_4 = 3.53553390593273762200422181052
M_3_4 = 0.590334470601733096701604304899


def record(num, ok, line):
    ACCEPTANCE_RESULTS[num] = (ok, line)
    print(f"[{'PASS' if ok else 'FAIL'}] {num}. {line}")
    assert ok, line


def test_01_h_index_oracle():
    rng = random.Random(1)
    lists = [[rng.randint(0, 200) for _ in range(rng.randint(1, 50))] for _ in range(1000)]
    expected = [h_oracle(c) for c in lists]
    t0 = time.perf_counter()
    got = [compute_h(c) for c in lists]
    elapsed = time.perf_counter() - t0
    matches = sum(g == e for g, e in zip(got, expected))
    record(1, matches == 1000 and elapsed < 1.0,
           f"h-index oracle equivalence: {matches}/1000 match, {elapsed:.3f}s (< 1 s)")


def test_02_polar_spot_values():
    h55, m55 = to_polar(5, 5)
    h34, m34 = to_polar(3, 4)
    ok = (m55 == 0.5 and abs(h55 - 5) <= 1e-12 * 5
          and abs(h34 - 3.535534) <= 1e-6 and abs(m34 - 0.590334) <= 1e-6
          and abs(h34 - H_3_4) <= 1e-12 and abs(m34 - M_3_4) <= 1e-12)
    record(2, ok, f"to_polar(5,5)=({h55!r}, {m55!r}); to_polar(3,4)=({h34:.6f}, {m34:.6f})")


def test_03_round_trip():
    t0 = time.perf_counter()
    worst = 0.0
    for h in range(501):
        for nj in range(1, 501):
            bh, bnj = from_polar(*to_polar(h, nj))
            worst = max(worst, abs(bh - h), abs(bnj - nj))
    elapsed = time.perf_counter() - t0
    record(3, worst <= 1e-9 and elapsed < 5.0,
           f"round trip over 0<=h<=500, 1<=n_j<=500: max error {worst:.2e} (<= 1e-9), {elapsed:.2f}s (< 5 s)")


def test_04_bounds():
    rng = random.Random(4)
    violations = 0
    for k in range(500):
        n = rng.randint(1, 80)
        n_journals = rng.randint(1, n)
        top = rng.choice([0, 1, 5, 50, 500])
        recs = [PaperRecord(f"r{k}", journal_name=f"J{rng.randrange(n_journals)}",
                            citations=rng.randint(0, top), doi=f"10.4/{k}.{i}") for i in range(n)]
        prof = build_profile(recs, f"r{k}")
        idx = compute_profile_indices(prof)
        N = prof.n_papers
        if not (idx.h <= N and idx.n_j <= N and 0 < idx.big_m <= 1 and 0 < idx.big_h <= N):
            violations += 1
    record(4, violations == 0, f"bounds h<=N, n_j<=N, 0<M<=1, 0<H<=N on 500 profiles: {violations} violations")


@pytest.fixture(scope="module")
def panel():
    t0 = time.perf_counter()
    synth = synthetic_panel(n_authors=90)
    report = build_panel_report(list(synth.profiles), synth.groups)
    return report, time.perf_counter() - t0


def test_05_decorrelation(panel):
    report, elapsed = panel
    r1, r2 = report.pearson_h_nj, report.pearson_H_M
    ok = r1 >= 0.5 and abs(r2) <= 0.35 and abs(r2) < abs(r1) and elapsed < 1.0
    record(5, ok, f"synthetic 90-author panel: pearson(h,N_j)={r1:.3f} (>= 0.5), "
                  f"|pearson(H,M)|={abs(r2):.3f} (<= 0.35), {elapsed:.3f}s (< 1 s)")


def test_06_group_separation(panel):
    report, elapsed = panel
    s, g = report.groups["specialist"], report.groups["generalist"]
    gap = abs(g.mean_m - s.mean_m)
    wider = max(s.std_m, g.std_m)
    overlap = s.mean_h - s.std_h <= g.mean_h + g.std_h and g.mean_h - g.std_h <= s.mean_h + s.std_h
    ok = gap > 2 * wider and overlap and elapsed < 1.0
    record(6, ok, f"mean M specialist {s.mean_m:.3f} vs generalist {g.mean_m:.3f}: gap {gap:.3f} > "
                  f"2x{wider:.3f}; mean H {s.mean_h:.1f}+-{s.std_h:.1f} vs {g.mean_h:.1f}+-{g.std_h:.1f} overlap={overlap}")


def test_07_pearson_sanity():
    r = pearson([1, 2, 3, 4], [2, 1, 4, 3])
    rng = random.Random(7)
    worst = 0.0
    for _ in range(100):
        n = rng.randint(3, 40)
        xs = [rng.gauss(0, 3) for _ in range(n)]
        ys = [x + rng.gauss(0, 2) for x in xs]
        a = rng.choice([-1, 1]) * rng.uniform(0.1, 10)
        b = rng.uniform(-100, 100)
        base = pearson(xs, ys)
        moved = pearson([a * x + b for x in xs], ys)
        worst = max(worst, abs(moved - math.copysign(1, a) * base))
    record(7, abs(r - 0.6) <= 1e-12 and worst <= 1e-9,
           f"pearson([1,2,3,4],[2,1,4,3])={r!r}; affine invariance max deviation {worst:.1e} (<= 1e-9)")


def random_string(rng):
    pools = ["abcXYZ019", " .,;:!?-_()[]'\"\t\n", "éüßçÆøå", "İıſﬁ", "αβΓΔ", "дЖ", "中文字", "́̈",
             "  ", "①²½", "ǅǈ", "가"]
    return "".join(rng.choice(rng.choice(pools)) for _ in range(rng.randint(0, 24)))


def test_08_ingestion():
    t0 = time.perf_counter()
    recs = parse_csv((DATA / "records_200.csv").read_bytes())
    csv_ok = len(recs) == 200 and parse_csv(write_csv(recs)) == recs
    bib_ok = parse_bibtex((DATA / "sample.bib").read_bytes()) == BIBTEX_EXPECTED and len(BIBTEX_EXPECTED) == 10
    ris_ok = parse_ris((DATA / "sample.ris").read_bytes()) == RIS_EXPECTED and len(RIS_EXPECTED) == 10
    rng = random.Random(8)
    violations = 0
    for _ in range(10_000):
        s = random_string(rng)
        try:
            once = normalize_journal(s)
        except EmptyAfterNormalization:
            continue
        if normalize_journal(once) != once:
            violations += 1
    elapsed = time.perf_counter() - t0
    record(8, csv_ok and bib_ok and ris_ok and violations == 0 and elapsed < 2.0,
           f"CSV round trip={csv_ok}, BibTeX={bib_ok}, RIS={ris_ok}, "
           f"normalize idempotence violations={violations}/10000, {elapsed:.2f}s (< 2 s)")


def test_09_fetch_integration(tmp_path, capsys):
    t0 = time.perf_counter()
    out1, out2 = tmp_path / "first.csv", tmp_path / "second.csv"
    with StubWorksServer(TWO_PAGES, fail=[429]) as stub:
        args = ["fetch", "--author", "A1", "--base-url", stub.url, "--cache", str(tmp_path / "cache"), "--rps", "20"]
        code1 = main(args + ["--output", str(out1)])
        hits_after_first = len(stub.hits)
        code2 = main(args + ["--output", str(out2)])
        hits_after_second = len(stub.hits)
    capsys.readouterr()
    elapsed = time.perf_counter() - t0
    rows = parse_csv(out1.read_bytes())
    ok = (code1 == code2 == 0 and hits_after_first == 3 and hits_after_second == hits_after_first
          and len(rows) == 4 and out1.read_bytes() == out2.read_bytes() and elapsed < 5.0)
    record(9, ok, f"stub fetch: 2 pages + one 429 -> {hits_after_first} requests, warm rerun "
                  f"{hits_after_second - hits_after_first} requests, {len(rows)} rows, {elapsed:.2f}s (< 5 s)")


def test_10_panel_end_to_end(tmp_path, capsys):
    synth = synthetic_panel(n_authors=90)
    records = tmp_path / "records.csv"
    records.write_text(write_csv(synth.records))
    groups = tmp_path / "groups.csv"
    groups.write_text("author_id,group\n" + "".join(f"{a},{g}\n" for a, g in synth.groups.items()))
    t0 = time.perf_counter()
    code = main(["panel", "--input", str(records), "--groups", str(groups), "--output", str(tmp_path / "report.json"),
                 "--scatter", str(tmp_path / "sc"), "--svg", str(tmp_path / "fig")])
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    report = json.loads((tmp_path / "report.json").read_text())
    jsonschema.validate(report, REPORT_SCHEMA)
    n_groups = len(report["groups"])
    scatter_ok = all(len((tmp_path / f"sc_{s}.csv").read_text().splitlines()) == 91 for s in ("h_nj", "H_M"))
    marker_counts, line_counts = [], []
    for s in ("h_nj", "H_M"):
        root = ET.parse(tmp_path / f"fig_{s}.svg").getroot()
        marker_counts.append(sum(el.get("class") == "marker" for el in root.iter()))
        line_counts.append(sum(el.get("class") == "mean-line" for el in root.iter()))
    ok = (code == 0 and scatter_ok and marker_counts == [90, 90] and line_counts[1] == n_groups == 3
          and elapsed < 2.0)
    record(10, ok, f"panel command: schema-valid report, scatter CSVs ok={scatter_ok}, markers={marker_counts}, "
                   f"mean-M lines={line_counts[1]} for {n_groups} groups, {elapsed:.2f}s (< 2 s)")
