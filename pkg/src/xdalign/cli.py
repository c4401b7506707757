"""xdalign command line: orchestrates the alignment pipeline stages.

Exit codes: 0 success, 1 stage failure, 2 usage error. Every command
writes a run manifest (config snapshot, input/output digests, timings)
next to its outputs so corpus releases are reproducible.
"""

import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import __version__
from .aligner import PairSet, Strategy, align, merge_pair_sets
from .cleanup import CleanupConfig, filter_faulty_pairs
from .corpus import (
    CorpusValidationError,
    DocPair,
    load_documents,
    load_gold,
    validate_corpus,
)
from .embeddings import (
    ProviderConfig,
    build_alignment_text,
    embed_texts,
    load_matrix,
    save_matrix,
)
from .metrics import pair_metrics
from .report import write_report
from .sentences import filter_short_pairs, align_sentences, segment_sentences
from .similarity import bucket_by_date, similarity_matrix
from .tuner import sweep_threshold

DEFAULT_LANGS = ("de", "fr")


def _fail(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(directory, command, config, inputs, outputs, timings):
    manifest = {
        "toolkit_version": __version__,
        "command": command,
        "config": config,
        "inputs": {str(p): _digest(p) for p in inputs if Path(p).exists()},
        "outputs": {str(p): _digest(p) for p in outputs if Path(p).exists()},
        "stage_seconds": {k: round(v, 3) for k, v in timings.items()},
    }
    path = Path(directory) / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _parse_langs(value):
    parts = tuple(p.strip() for p in value.split(","))
    if len(parts) != 2 or not all(parts):
        raise click.BadParameter("expected two comma-separated language tags")
    return parts


def _provider_from_options(provider_config, store):
    if provider_config:
        cfg = json.loads(Path(provider_config).read_text())
        return ProviderConfig(**cfg)
    if store:
        return ProviderConfig(mode="file", vector_file=str(store))
    raise click.UsageError("need --provider-config or --store")


def _write_pairs_jsonl(path, pairs_with_dates, strategy, threshold):
    """One JSON object per pair, sorted for byte-stable output."""
    rows = sorted(
        (
            (p.src_id, p.tgt_id, p.score, date)
            for p, date in pairs_with_dates
        ),
    )
    with open(path, "w", encoding="utf-8") as fh:
        for src_id, tgt_id, score, date in rows:
            fh.write(
                json.dumps(
                    {
                        "src_id": src_id,
                        "tgt_id": tgt_id,
                        "score": round(score, 4),
                        "strategy": strategy.value,
                        "threshold": threshold,
                        "date": date.isoformat() if date else None,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def _load_pairs_jsonl(path):
    """Returns (PairSet, {pair key -> date iso string})."""
    pairs = set()
    dates = {}
    strategy, threshold = Strategy.INTERSECTION, 0.0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            pair = DocPair(obj["src_id"], obj["tgt_id"], float(obj["score"]))
            pairs.add(pair)
            dates[pair.key()] = obj.get("date")
            strategy = Strategy(obj.get("strategy", "intersection"))
            threshold = float(obj.get("threshold", 0.0))
    return PairSet(frozenset(pairs), strategy, threshold), dates


def _align_buckets(buckets, embeddings, threshold, strategy, jobs, dump_dir=None):
    """Per-date alignment, parallel over buckets, deterministic merge."""
    alignable = [b for b in buckets.values() if b.alignable]

    def work(bucket):
        matrix = similarity_matrix(bucket, embeddings)
        if dump_dir is not None:
            _dump_matrix(matrix, dump_dir)
        return bucket.date, align(matrix, threshold, strategy)

    if jobs > 1 and len(alignable) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, alignable))
    else:
        results = [work(b) for b in alignable]
    results.sort(key=lambda r: r[0])
    pairs_with_dates = [
        (pair, date) for date, ps in results for pair in ps.pairs
    ]
    merged = (
        merge_pair_sets([ps for _, ps in results])
        if results
        else PairSet(frozenset(), Strategy(strategy), float(threshold))
    )
    return merged, pairs_with_dates


def _dump_matrix(matrix, dump_dir):
    dump_dir = Path(dump_dir)
    dump_dir.mkdir(parents=True, exist_ok=True)
    lines = ["," + ",".join(matrix.col_ids)]
    for i, row_id in enumerate(matrix.row_ids):
        cells = ",".join(f"{matrix.scores[i, j]:.4f}" for j in range(len(matrix.col_ids)))
        lines.append(f"{row_id},{cells}")
    (dump_dir / f"{matrix.date.isoformat()}.csv").write_text(
        "\n".join(lines) + "\n", encoding="utf-8"
    )


@click.group()
@click.version_option(version=__version__)
def main():
    """Cross-lingual comparable corpus construction toolkit."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--langs", default="de,fr", show_default=True)
def validate(input_path, langs):
    """Validate a documents.jsonl corpus file."""
    langs = _parse_langs(langs)
    try:
        docs = load_documents(input_path)
        summary = validate_corpus(docs, langs)
    except (ValueError, CorpusValidationError) as exc:
        _fail(exc)
    click.echo(f"documents: {summary.total}")
    for lang, count in summary.count_by_lang.items():
        click.echo(f"  {lang}: {count}")
    click.echo(f"dates: {len(summary.count_by_date)}")
    for warning in summary.warnings:
        click.echo(f"warning: {warning}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option(
    "--unit",
    type=click.Choice(["title-lead", "sentence"]),
    default="title-lead",
    show_default=True,
)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--provider-config", type=click.Path(exists=True))
@click.option("--store", type=click.Path(exists=True))
@click.option("--langs", default="de,fr", show_default=True)
def embed(input_path, unit, out_path, provider_config, store, langs):
    """Embed alignment texts (or sentences) and write a vector file."""
    langs = _parse_langs(langs)
    provider = _provider_from_options(provider_config, store)
    t0 = time.monotonic()
    try:
        docs = load_documents(input_path)
        validate_corpus(docs, langs)
        if unit == "title-lead":
            ids = [d.id for d in docs]
            texts = [build_alignment_text(d) for d in docs]
        else:
            ids, texts = [], []
            for doc in docs:
                for sent in segment_sentences(doc):
                    ids.append(f"{sent.doc_id}#{sent.idx}")
                    texts.append(sent.text)
        matrix = embed_texts(texts, provider, ids=ids)
        save_matrix(matrix, out_path)
    except (ValueError, RuntimeError) as exc:
        _fail(exc)
    _write_manifest(
        Path(out_path).parent,
        "embed",
        {"unit": unit, "provider_mode": provider.mode},
        [input_path],
        [out_path],
        {"embed": time.monotonic() - t0},
    )
    click.echo(f"embedded {len(matrix.ids)} texts (dim {matrix.dim}) -> {out_path}")


@main.command("align-docs")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--vectors", required=True, type=click.Path(exists=True))
@click.option("--strategy", default="intersection", show_default=True)
@click.option("--threshold", default=46.0, show_default=True, type=float)
@click.option("--langs", default="de,fr", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--dump-matrices", "dump_dir", type=click.Path(), default=None)
@click.option("--jobs", default=1, show_default=True, type=int)
def align_docs(input_path, vectors, strategy, threshold, langs, out_path, dump_dir, jobs):
    """Align same-date documents with one strategy at one threshold."""
    langs = _parse_langs(langs)
    t0 = time.monotonic()
    try:
        strat = Strategy.parse(strategy)
        docs = load_documents(input_path)
        validate_corpus(docs, langs)
        embeddings = load_matrix(vectors)
        buckets = bucket_by_date(docs, langs)
        _, pairs_with_dates = _align_buckets(
            buckets, embeddings, threshold, strat, jobs, dump_dir
        )
        _write_pairs_jsonl(out_path, pairs_with_dates, strat, threshold)
    except (ValueError, RuntimeError) as exc:
        _fail(exc)
    _write_manifest(
        Path(out_path).parent,
        "align-docs",
        {"strategy": strat.value, "threshold": threshold, "jobs": jobs},
        [input_path, vectors],
        [out_path],
        {"align-docs": time.monotonic() - t0},
    )
    click.echo(f"aligned {len(pairs_with_dates)} pairs -> {out_path}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--vectors", required=True, type=click.Path(exists=True))
@click.option("--gold", required=True, type=click.Path(exists=True))
@click.option("--strategy", default="intersection", show_default=True)
@click.option("--langs", default="de,fr", show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def tune(input_path, vectors, gold, strategy, langs, out_path):
    """Sweep thresholds against a gold set; print the F1 curve and best theta."""
    langs = _parse_langs(langs)
    try:
        strat = Strategy.parse(strategy)
        docs = load_documents(input_path)
        validate_corpus(docs, langs)
        gold_set = load_gold(gold, corpus_ids={d.id for d in docs})
        embeddings = load_matrix(vectors)
        buckets = bucket_by_date(docs, langs)
        matrices = [
            similarity_matrix(b, embeddings)
            for b in buckets.values()
            if b.alignable
        ]
        result = sweep_threshold(matrices, gold_set, strat)
    except (ValueError, RuntimeError) as exc:
        _fail(exc)
    lines = ["threshold,precision,recall,f1"]
    for theta, m in result.curve:
        lines.append(f"{theta:.1f},{m.precision:.4f},{m.recall:.4f},{m.f1:.4f}")
    curve_csv = "\n".join(lines) + "\n"
    if out_path:
        Path(out_path).write_text(curve_csv, encoding="utf-8")
    else:
        click.echo(curve_csv, nl=False)
    click.echo(f"best_threshold={result.best_threshold:.1f}")
    click.echo(f"best_f1={result.best_f1:.4f}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--pairs", "pairs_path", required=True, type=click.Path(exists=True))
@click.option("--cleanup-config", type=click.Path(exists=True), default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--removed-log", type=click.Path(), default=None)
def clean(input_path, pairs_path, cleanup_config, out_path, removed_log):
    """Remove faulty pairs (error pages, same-language duplicates)."""
    t0 = time.monotonic()
    try:
        docs = load_documents(input_path)
        docs_by_id = {d.id: d for d in docs}
        pairs, dates = _load_pairs_jsonl(pairs_path)
        config = CleanupConfig(
            **(json.loads(Path(cleanup_config).read_text()) if cleanup_config else {})
        )
        kept, removed = filter_faulty_pairs(pairs, docs_by_id, config)
        from datetime import date as _date

        kept_with_dates = [
            (
                p,
                _date.fromisoformat(dates[p.key()]) if dates.get(p.key()) else None,
            )
            for p in kept.pairs
        ]
        _write_pairs_jsonl(out_path, kept_with_dates, kept.strategy, kept.threshold)
        if removed_log:
            with open(removed_log, "w", encoding="utf-8") as fh:
                for pair, reason in removed:
                    fh.write(
                        json.dumps(
                            {
                                "src_id": pair.src_id,
                                "tgt_id": pair.tgt_id,
                                "score": round(pair.score, 4),
                                "reason": reason,
                            },
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
    except (ValueError, RuntimeError) as exc:
        _fail(exc)
    _write_manifest(
        Path(out_path).parent,
        "clean",
        {"cleanup_config": cleanup_config},
        [input_path, pairs_path],
        [out_path] + ([removed_log] if removed_log else []),
        {"clean": time.monotonic() - t0},
    )
    click.echo(f"kept {len(kept.pairs)} pairs, removed {len(removed)}")


@main.command("align-sents")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--doc-pairs", required=True, type=click.Path(exists=True))
@click.option("--provider-config", type=click.Path(exists=True))
@click.option("--store", type=click.Path(exists=True))
@click.option("--min-chars", default=30, show_default=True, type=int)
@click.option("--out", "out_path", required=True, type=click.Path())
def align_sents(input_path, doc_pairs, provider_config, store, min_chars, out_path):
    """Mutual-best sentence alignment within aligned document pairs."""
    provider = _provider_from_options(provider_config, store)
    t0 = time.monotonic()
    try:
        docs = load_documents(input_path)
        docs_by_id = {d.id: d for d in docs}
        pairs, _ = _load_pairs_jsonl(doc_pairs)
        n = _run_sentence_alignment(
            pairs, docs_by_id, provider, min_chars, out_path
        )
    except (ValueError, RuntimeError) as exc:
        _fail(exc)
    _write_manifest(
        Path(out_path).parent,
        "align-sents",
        {"min_chars": min_chars, "provider_mode": provider.mode},
        [input_path, doc_pairs],
        [out_path],
        {"align-sents": time.monotonic() - t0},
    )
    click.echo(f"aligned {n} sentence pairs -> {out_path}")


def _run_sentence_alignment(pairs, docs_by_id, provider, min_chars, out_path):
    segmented = {}

    def sents(doc_id):
        if doc_id not in segmented:
            segmented[doc_id] = segment_sentences(docs_by_id[doc_id])
        return segmented[doc_id]

    count = 0
    with open(out_path, "w", encoding="utf-8") as fh:
        for pair in sorted(pairs.pairs, key=lambda p: p.key()):
            sent_pairs = align_sentences(
                pair, sents(pair.src_id), sents(pair.tgt_id), provider
            )
            for sp in filter_short_pairs(sent_pairs, min_chars):
                fh.write(
                    json.dumps(
                        {
                            "src_doc": sp.src.doc_id,
                            "tgt_doc": sp.tgt.doc_id,
                            "src_idx": sp.src.idx,
                            "tgt_idx": sp.tgt.idx,
                            "src_text": sp.src.text,
                            "tgt_text": sp.tgt.text,
                            "score": round(sp.score, 4),
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
                count += 1
    return count


@main.command("metrics")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--doc-pairs", required=True, type=click.Path(exists=True))
@click.option("--sent-pairs", required=True, type=click.Path(exists=True))
@click.option("--analysis-threshold", default=46.0, show_default=True, type=float)
@click.option("--out", "out_path", required=True, type=click.Path())
def metrics_cmd(input_path, doc_pairs, sent_pairs, analysis_threshold, out_path):
    """Per-pair comparability metrics (AlignRatio, length corr, monotonicity)."""
    t0 = time.monotonic()
    try:
        docs = load_documents(input_path)
        docs_by_id = {d.id: d for d in docs}
        pairs, _ = _load_pairs_jsonl(doc_pairs)
        sent_pairs_by_doc = _load_sentence_pairs(sent_pairs)
        _write_metrics_jsonl(
            out_path, pairs, docs_by_id, sent_pairs_by_doc, analysis_threshold
        )
    except (ValueError, RuntimeError) as exc:
        _fail(exc)
    _write_manifest(
        Path(out_path).parent,
        "metrics",
        {"analysis_threshold": analysis_threshold},
        [input_path, doc_pairs, sent_pairs],
        [out_path],
        {"metrics": time.monotonic() - t0},
    )
    click.echo(f"metrics for {len(pairs.pairs)} pairs -> {out_path}")


def _load_sentence_pairs(path):
    """Group sentence pairs by (src_doc, tgt_doc)."""
    from .sentences import Sentence, SentencePair

    grouped = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            sp = SentencePair(
                src=Sentence(obj["src_doc"], obj["src_idx"], obj["src_text"]),
                tgt=Sentence(obj["tgt_doc"], obj["tgt_idx"], obj["tgt_text"]),
                score=float(obj["score"]),
            )
            grouped.setdefault((obj["src_doc"], obj["tgt_doc"]), []).append(sp)
    return grouped


def _write_metrics_jsonl(
    out_path, pairs, docs_by_id, sent_pairs_by_doc, analysis_threshold
):
    with open(out_path, "w", encoding="utf-8") as fh:
        for pair in sorted(pairs.pairs, key=lambda p: p.key()):
            src_total = len(segment_sentences(docs_by_id[pair.src_id]))
            tgt_total = len(segment_sentences(docs_by_id[pair.tgt_id]))
            m = pair_metrics(
                sent_pairs_by_doc.get(pair.key(), []),
                src_total,
                tgt_total,
                analysis_threshold=analysis_threshold,
            )
            fh.write(
                json.dumps(
                    {
                        "src_id": pair.src_id,
                        "tgt_id": pair.tgt_id,
                        "doc_score": round(pair.score, 4),
                        "align_ratio_src": _round4(m.align_ratio_src),
                        "align_ratio_tgt": _round4(m.align_ratio_tgt),
                        "length_corr": _round4(m.length_corr),
                        "monotonicity": _round4(m.monotonicity),
                        "n_aligned": m.n_aligned,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def _round4(x):
    return None if x is None else round(x, 4)


@main.command("report")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--alignments", required=True, type=click.Path(exists=True))
@click.option("--metrics", "metrics_path", required=True, type=click.Path(exists=True))
@click.option("--langs", default="de,fr", show_default=True)
@click.option("--histogram-low", default=46.0, show_default=True, type=float)
@click.option("--top-k", default=15000, show_default=True, type=int)
@click.option("--out", "out_dir", required=True, type=click.Path())
def report_cmd(input_path, alignments, metrics_path, langs, histogram_low, top_k, out_dir):
    """Corpus statistics, score distribution and correlation studies."""
    langs = _parse_langs(langs)
    t0 = time.monotonic()
    try:
        docs = load_documents(input_path)
        pairs, _ = _load_pairs_jsonl(alignments)
        metrics_by_key = _load_metrics_jsonl(metrics_path)
        summary = write_report(
            Path(out_dir),
            docs,
            langs,
            pairs,
            metrics_by_key,
            histogram_low=histogram_low,
            k=top_k,
        )
    except (ValueError, RuntimeError) as exc:
        _fail(exc)
    outputs = sorted(str(p) for p in Path(out_dir).iterdir() if p.is_file())
    _write_manifest(
        Path(out_dir),
        "report",
        {"histogram_low": histogram_low, "top_k": top_k},
        [input_path, alignments, metrics_path],
        outputs,
        {"report": time.monotonic() - t0},
    )
    click.echo(json.dumps(summary, sort_keys=True))


def _load_metrics_jsonl(path):
    from .metrics import PairMetrics

    by_key = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            by_key[(obj["src_id"], obj["tgt_id"])] = PairMetrics(
                align_ratio_src=obj["align_ratio_src"],
                align_ratio_tgt=obj["align_ratio_tgt"],
                length_corr=obj["length_corr"],
                monotonicity=obj["monotonicity"],
                n_aligned=obj["n_aligned"],
            )
    return by_key


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--jobs", default=None, type=int, help="Override the config's jobs value.")
def pipeline(config_path, jobs):
    """Run every stage end to end from a single config file."""
    try:
        config = json.loads(Path(config_path).read_text())
        _run_pipeline(config, Path(config_path).parent, jobs_override=jobs)
    except (ValueError, RuntimeError) as exc:
        _fail(exc)


def _run_pipeline(config, base_dir, jobs_override=None):
    def resolve(p):
        p = Path(p)
        return p if p.is_absolute() else base_dir / p

    langs = tuple(config.get("langs", DEFAULT_LANGS))
    strategy = Strategy.parse(config.get("strategy", "intersection"))
    threshold = float(config.get("threshold", 46.0))
    min_chars = int(config.get("min_chars", 30))
    analysis_threshold = float(config.get("analysis_threshold", 46.0))
    k = int(config.get("top_k", 15000))
    jobs = jobs_override if jobs_override is not None else int(config.get("jobs", 1))
    out_dir = resolve(config.get("out_dir", "out"))
    out_dir.mkdir(parents=True, exist_ok=True)

    if "provider" in config:
        provider_cfg = dict(config["provider"])
        if provider_cfg.get("vector_file"):
            provider_cfg["vector_file"] = str(resolve(provider_cfg["vector_file"]))
        provider = ProviderConfig(**provider_cfg)
    else:
        provider = ProviderConfig(
            mode="file", vector_file=str(resolve(config["vector_store"]))
        )

    timings = {}
    inputs = [resolve(config["input"])]
    outputs = []

    t = time.monotonic()
    docs = load_documents(resolve(config["input"]))
    summary = validate_corpus(docs, langs)
    docs_by_id = {d.id: d for d in docs}
    timings["validate"] = time.monotonic() - t
    click.echo(f"[validate] {summary.total} documents, {len(summary.count_by_date)} dates")

    t = time.monotonic()
    texts = [build_alignment_text(d) for d in docs]
    embeddings = embed_texts(texts, provider, ids=[d.id for d in docs])
    vectors_path = out_dir / "vectors.xdemb"
    save_matrix(embeddings, vectors_path)
    outputs.append(vectors_path)
    timings["embed"] = time.monotonic() - t
    click.echo(f"[embed] {len(embeddings.ids)} texts, dim {embeddings.dim}")

    t = time.monotonic()
    buckets = bucket_by_date(docs, langs)
    merged, pairs_with_dates = _align_buckets(
        buckets, embeddings, threshold, strategy, jobs
    )
    alignments_path = out_dir / "alignments.jsonl"
    _write_pairs_jsonl(alignments_path, pairs_with_dates, strategy, threshold)
    outputs.append(alignments_path)
    timings["align-docs"] = time.monotonic() - t
    click.echo(f"[align-docs] {len(merged.pairs)} pairs")

    t = time.monotonic()
    cleanup_cfg = CleanupConfig(**config.get("cleanup", {}))
    kept, removed = filter_faulty_pairs(merged, docs_by_id, cleanup_cfg)
    date_by_key = {p.key(): d for p, d in pairs_with_dates}
    kept_with_dates = [(p, date_by_key[p.key()]) for p in kept.pairs]
    clean_path = out_dir / "alignments_clean.jsonl"
    _write_pairs_jsonl(clean_path, kept_with_dates, kept.strategy, kept.threshold)
    removed_path = out_dir / "removed.jsonl"
    with open(removed_path, "w", encoding="utf-8") as fh:
        for pair, reason in removed:
            fh.write(
                json.dumps(
                    {
                        "src_id": pair.src_id,
                        "tgt_id": pair.tgt_id,
                        "score": round(pair.score, 4),
                        "reason": reason,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    outputs.extend([clean_path, removed_path])
    timings["clean"] = time.monotonic() - t
    click.echo(f"[clean] kept {len(kept.pairs)}, removed {len(removed)}")

    t = time.monotonic()
    sent_path = out_dir / "sentence_alignments.jsonl"
    n_sent = _run_sentence_alignment(kept, docs_by_id, provider, min_chars, sent_path)
    outputs.append(sent_path)
    timings["align-sents"] = time.monotonic() - t
    click.echo(f"[align-sents] {n_sent} sentence pairs")

    t = time.monotonic()
    metrics_path = out_dir / "metrics.jsonl"
    sent_pairs_by_doc = _load_sentence_pairs(sent_path)
    _write_metrics_jsonl(
        metrics_path, kept, docs_by_id, sent_pairs_by_doc, analysis_threshold
    )
    outputs.append(metrics_path)
    timings["metrics"] = time.monotonic() - t
    click.echo(f"[metrics] {len(kept.pairs)} pairs")

    t = time.monotonic()
    report_dir = out_dir / "report"
    write_report(
        report_dir,
        docs,
        langs,
        kept,
        _load_metrics_jsonl(metrics_path),
        histogram_low=analysis_threshold,
        k=k,
    )
    outputs.extend(sorted(p for p in report_dir.iterdir() if p.is_file()))
    timings["report"] = time.monotonic() - t
    click.echo(f"[report] -> {report_dir}")

    _write_manifest(out_dir, "pipeline", config, inputs, outputs, timings)
    click.echo(f"[done] manifest -> {out_dir / 'manifest.json'}")


if __name__ == "__main__":
    main()
