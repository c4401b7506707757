"""Acceptance suite: one test per release criterion, each printing a
PASS line when its assertions hold. Run with -s to see the lines."""

import json
import time
from datetime import date

import numpy as np
import pytest
from click.testing import CliRunner

from conftest import make_matrix, random_unit_rows
from oracles import (
    ORACLES,
    oracle_cosine,
    oracle_kendall_tau_b,
    oracle_pearson,
)
from test_cli import copy_fixture
from xdalign.aligner import PairSet, Strategy, align
from xdalign.cli import main
from xdalign.corpus import DocPair, GoldSet, load_documents
from xdalign.embeddings import EmbeddingMatrix, load_matrix, save_matrix
from xdalign.metrics import kendall_tau, pearson
from xdalign.report import score_histogram, top_k
from xdalign.similarity import cosine_score
from xdalign.tuner import sweep_threshold

THETAS = [0.0, 23.0, 46.0, 80.0]


def _passed(n, text):
    print(f"ACCEPTANCE {n}: PASS — {text}")


def battery(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, 9))
        m = int(rng.integers(1, 9))
        yield make_matrix(rng.uniform(0.0, 100.0, size=(n, m)))


def cells(pair_set, matrix):
    row_pos = {r: i for i, r in enumerate(matrix.row_ids)}
    col_pos = {c: j for j, c in enumerate(matrix.col_ids)}
    return {(row_pos[p.src_id], col_pos[p.tgt_id]) for p in pair_set.pairs}


def test_1_strategy_oracle_equivalence():
    start = time.monotonic()
    instances = 0
    for matrix in battery(250, seed=1):
        raw = matrix.scores.tolist()
        for theta in THETAS:
            instances += 1
            for strategy in Strategy:
                got = cells(align(matrix, theta, strategy), matrix)
                assert got == ORACLES[strategy.value](raw, theta), (
                    f"strategy {strategy.value} diverges at theta={theta}"
                )
    elapsed = time.monotonic() - start
    assert instances >= 1000
    assert elapsed < 5.0, f"battery took {elapsed:.1f}s"
    _passed(1, f"{instances} matrix/theta instances, all 5 strategies, {elapsed:.2f}s")


def test_2_strategy_algebra():
    violations = 0
    for k, matrix in enumerate(battery(250, seed=2)):
        theta = THETAS[k % 4]
        by = {s: align(matrix, theta, s).keys() for s in Strategy}
        inter = by[Strategy.INTERSECTION]
        if inter != by[Strategy.BEST_DE] & by[Strategy.BEST_FR]:
            violations += 1
        if by[Strategy.UNION] != by[Strategy.BEST_DE] | by[Strategy.BEST_FR]:
            violations += 1
        if any(not by[s] <= by[Strategy.ABOVE_THRESHOLD] for s in Strategy):
            violations += 1
        if len({s for s, _ in inter}) != len(inter) or len(
            {t for _, t in inter}
        ) != len(inter):
            violations += 1
    assert violations == 0
    _passed(2, "set identities and 1:1 constraint, zero violations")


def test_3_threshold_monotonicity():
    rng = np.random.default_rng(3)
    violations = 0
    for matrix in battery(250, seed=3):
        t1, t2 = sorted(rng.uniform(0.0, 100.0, size=2))
        for strategy in Strategy:
            if not align(matrix, t2, strategy).keys() <= align(
                matrix, t1, strategy
            ).keys():
                violations += 1
    assert violations == 0
    _passed(3, "align(theta2) subset of align(theta1) for theta1 < theta2, zero violations")


def test_4_sweep_correctness():
    matrix = make_matrix([[90, 10], [10, 80]])
    gold = GoldSet(pairs=frozenset({("d1", "f1"), ("d2", "f2")}))
    result = sweep_threshold([matrix], gold, Strategy.INTERSECTION)
    assert result.best_f1 == 1.0
    assert result.best_threshold == 80.0
    assert len(result.curve) == 201
    _passed(4, "best_f1=1.0 at theta=80.0 (highest-theta tie-break), 201-point curve")


def test_5_metric_oracles():
    rng = np.random.default_rng(5)
    for _ in range(500):
        n = int(rng.integers(2, 51))
        x = rng.uniform(0, 100, n).tolist()
        y = rng.uniform(0, 100, n).tolist()
        assert pearson(x, y) == pytest.approx(oracle_pearson(x, y), abs=1e-9)
        xi = rng.integers(0, 12, n).tolist()
        yi = rng.integers(0, 12, n).tolist()
        expect = oracle_kendall_tau_b(xi, yi)
        got = kendall_tau(xi, yi)
        if expect is None:
            assert got is None
        else:
            assert got == pytest.approx(expect, abs=1e-9)
    assert pearson([10, 20, 30], [15, 15, 30]) == pytest.approx(0.8660, abs=1e-4)
    assert kendall_tau([0, 1, 2], [0, 2, 1]) == pytest.approx(0.3333, abs=1e-4)
    _passed(5, "Pearson/Kendall vs brute force on 500 inputs, hand cases reproduce")


def test_6_cosine_contract():
    rng = np.random.default_rng(6)
    for _ in range(1000):
        dim = int(rng.integers(1, 16))
        u = rng.standard_normal(dim)
        v = rng.standard_normal(dim)
        c = float(rng.uniform(0.01, 100.0))
        assert cosine_score(u, v) == pytest.approx(cosine_score(v, u), abs=1e-9)
        assert cosine_score(c * u, v) == pytest.approx(cosine_score(u, v), abs=1e-9)
        assert abs(cosine_score(u, v)) <= 100.0 + 1e-9
        assert cosine_score(u, v) == pytest.approx(oracle_cosine(u, v), abs=1e-9)
    assert cosine_score([1, 0], [1, 1]) == pytest.approx(70.7107, abs=1e-4)
    _passed(6, "symmetry, scale invariance, |score| <= 100 on 1000 pairs; 70.7107 case")


PIPELINE_OUTPUTS = [
    "out/vectors.xdemb",
    "out/alignments.jsonl",
    "out/alignments_clean.jsonl",
    "out/removed.jsonl",
    "out/sentence_alignments.jsonl",
    "out/metrics.jsonl",
    "out/report/stats.csv",
    "out/report/histogram.csv",
    "out/report/topk.csv",
    "out/report/scatter_monotonicity.csv",
    "out/report/summary.json",
]


def test_7_pipeline_determinism(fixtures_dir, tmp_path):
    start = time.monotonic()
    runner = CliRunner()
    digests = []
    for name, jobs in [("run1", 1), ("run2", 1), ("run4", 4)]:
        workdir = tmp_path / name
        copy_fixture(fixtures_dir, workdir)
        result = runner.invoke(
            main,
            ["pipeline", "--config", str(workdir / "run.json"), "--jobs", str(jobs)],
            catch_exceptions=False,
        )
        assert result.exit_code == 0, result.output
        digests.append(
            {rel: (workdir / rel).read_bytes() for rel in PIPELINE_OUTPUTS}
        )
    assert digests[0] == digests[1], "two identical runs differ"
    assert digests[0] == digests[2], "--jobs 4 differs from --jobs 1"

    workdir = tmp_path / "run1"
    for line in (workdir / "out/sentence_alignments.jsonl").read_text().splitlines():
        obj = json.loads(line)
        assert len(obj["src_text"]) >= 30 and len(obj["tgt_text"]) >= 30

    docs = {d.id: d for d in load_documents(workdir / "documents.jsonl")}
    for rel in ("out/alignments.jsonl", "out/alignments_clean.jsonl"):
        for line in (workdir / rel).read_text().splitlines():
            obj = json.loads(line)
            assert (
                docs[obj["src_id"]].publish_date == docs[obj["tgt_id"]].publish_date
            ), "cross-date pair found"
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"pipeline battery took {elapsed:.1f}s"
    _passed(
        7,
        f"3 runs byte-identical (incl. --jobs 1 vs 4), length and same-date "
        f"invariants hold, {elapsed:.1f}s",
    )


def test_8_histogram_and_topk_properties():
    rng = np.random.default_rng(8)
    for seed in range(120):
        n = int(rng.integers(1, 200))
        scores = rng.uniform(0.0, 110.0, n)  # some out of range on purpose
        hist = score_histogram(scores, bins=100, low=46.0, high=100.0)
        assert sum(hist.counts) + hist.overflow == n
        pairs = PairSet(
            pairs=frozenset(
                DocPair(f"s{i}", f"t{i}", float(s)) for i, s in enumerate(scores)
            ),
            strategy=Strategy.INTERSECTION,
            threshold=0.0,
        )
        full = top_k(pairs, n)
        k1, k2 = sorted(rng.integers(0, n + 1, size=2))
        assert top_k(pairs, k1) == full[: int(k1)]
        assert top_k(pairs, k1) == top_k(pairs, k2)[: int(k1)]
    _passed(8, "histogram conservation and top-k prefix on 120 seeds")


def test_9_vector_store_round_trip(tmp_path):
    rng = np.random.default_rng(9)
    shapes = [(1, 1), (1, 7), (5, 1)] + [
        (int(rng.integers(1, 40)), int(rng.integers(1, 64))) for _ in range(40)
    ]
    for k, (n, dim) in enumerate(shapes):
        matrix = EmbeddingMatrix(
            ids=tuple(f"id-{k}-{i}" for i in range(n)),
            vectors=random_unit_rows(rng, n, dim),
        )
        path = tmp_path / f"m{k}.xdemb"
        save_matrix(matrix, path)
        loaded = load_matrix(path)
        assert loaded.ids == matrix.ids
        assert loaded.vectors.dtype == matrix.vectors.dtype
        assert np.array_equal(loaded.vectors, matrix.vectors)
    _passed(9, f"bit-exact round trip on {len(shapes)} matrices incl. dim-1 and 1-row")
