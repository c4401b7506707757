"""Corpus-level analytics: statistics table, score distribution,
top-k selection, and metric-score correlation studies.

Outputs are emitted as data (CSV per figure) plus self-contained SVG
renderings; nothing interactive.
"""

import json
import math
from dataclasses import dataclass, field

from .metrics import pearson
from .sentences import get_segmenter


@dataclass
class Histogram:
    bin_edges: list  # bins+1 floats, uniform, strictly increasing
    counts: list  # bins non-negative integers
    overflow: int = 0  # scores outside [low, high], never silently dropped


@dataclass
class LangStats:
    articles: int = 0
    sentences: int = 0
    tokens: int = None  # requires an external tokenizer
    characters: int = 0
    avg_title_chars: float = 0.0
    avg_lead_chars: float = 0.0
    avg_content_chars: float = 0.0
    avg_content_sentences: float = 0.0


@dataclass
class StatsTable:
    per_lang: dict = field(default_factory=dict)  # lang -> LangStats


def corpus_stats(docs, langs, segmenter_for=None, tokenizer=None):
    """Per-language corpus statistics.

    Sentence counts use the configured segmenter; token counts are
    computed only when an external tokenizer callable is supplied.
    """
    if segmenter_for is None:
        segmenter_for = get_segmenter
    table = StatsTable(per_lang={lang: LangStats() for lang in langs})
    sums = {lang: {"title": 0, "lead": 0, "content": 0, "sents": 0} for lang in langs}
    for doc in docs:
        st = table.per_lang[doc.lang]
        s = sums[doc.lang]
        st.articles += 1
        n_sents = len(segmenter_for(doc.lang)(doc.content))
        st.sentences += n_sents
        st.characters += len(doc.title) + len(doc.lead) + len(doc.content)
        s["title"] += len(doc.title)
        s["lead"] += len(doc.lead)
        s["content"] += len(doc.content)
        s["sents"] += n_sents
        if tokenizer is not None:
            if st.tokens is None:
                st.tokens = 0
            for text in (doc.title, doc.lead, doc.content):
                st.tokens += len(tokenizer(text))
    for lang in langs:
        st = table.per_lang[lang]
        if st.articles:
            st.avg_title_chars = sums[lang]["title"] / st.articles
            st.avg_lead_chars = sums[lang]["lead"] / st.articles
            st.avg_content_chars = sums[lang]["content"] / st.articles
            st.avg_content_sentences = sums[lang]["sents"] / st.articles
    return table


def score_histogram(scores, bins=100, low=46.0, high=100.0):
    """Uniform histogram of scores over [low, high].

    A score s lands in bin floor((s - low) / width); the final bin is
    right-inclusive so `high` itself is counted. Out-of-range scores go
    to the overflow bucket.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    if not low < high:
        raise ValueError("low must be < high")
    width = (high - low) / bins
    edges = [low + i * width for i in range(bins + 1)]
    counts = [0] * bins
    overflow = 0
    for s in scores:
        if s < low or s > high:
            overflow += 1
            continue
        idx = min(int(math.floor((s - low) / width)), bins - 1)
        counts[idx] += 1
    return Histogram(bin_edges=edges, counts=counts, overflow=overflow)


def top_k(pairs, k):
    """The k highest-scoring pairs, score descending, id-lexicographic ties."""
    if k < 0:
        raise ValueError("k must be >= 0")
    ordered = sorted(pairs.pairs, key=lambda p: (-p.score, p.src_id, p.tgt_id))
    return ordered[:k]


def metric_correlation(doc_scores, metric_values):
    """Pearson r between document scores and a per-pair metric.

    Pairs with an undefined (None) metric are excluded beforehand.
    Returns (r_or_None, observations) where observations are the
    retained (score, metric) points for scatter plotting.
    """
    obs = [
        (s, m) for s, m in zip(doc_scores, metric_values, strict=True) if m is not None
    ]
    if len(obs) < 2:
        return None, obs
    return pearson([o[0] for o in obs], [o[1] for o in obs]), obs


# ---------------------------------------------------------------------------
# report files


def fmt(x, places=4):
    if x is None:
        return ""
    return f"{x:.{places}f}"


def svg_histogram(hist, title, width=640, height=400):
    """Self-contained bar-chart SVG for a Histogram."""
    pad = 50
    max_count = max(hist.counts) if any(hist.counts) else 1
    n = len(hist.counts)
    bar_w = (width - 2 * pad) / n
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
        f'y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
    ]
    for i, count in enumerate(hist.counts):
        h = (height - 2 * pad) * count / max_count
        x = pad + i * bar_w
        y = height - pad - h
        parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" '
            f'height="{h:.2f}" fill="steelblue"/>'
        )
    lo, hi = hist.bin_edges[0], hist.bin_edges[-1]
    parts.append(
        f'<text x="{pad}" y="{height - pad + 20}" font-family="sans-serif" '
        f'font-size="11">{fmt(lo, 1)}</text>'
    )
    parts.append(
        f'<text x="{width - pad}" y="{height - pad + 20}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{fmt(hi, 1)}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def svg_scatter(obs, title, xlabel, ylabel, width=640, height=400):
    """Self-contained scatter-plot SVG for (x, y) observations."""
    pad = 50
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
        f'y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="15" y="{height / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 15 {height / 2:.0f})">{ylabel}</text>',
    ]
    if obs:
        xs = [o[0] for o in obs]
        ys = [o[1] for o in obs]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        xr = (x1 - x0) or 1.0
        yr = (y1 - y0) or 1.0
        for x, y in sorted(obs):
            px = pad + (width - 2 * pad) * (x - x0) / xr
            py = height - pad - (height - 2 * pad) * (y - y0) / yr
            parts.append(
                f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" '
                f'fill="steelblue" fill-opacity="0.6"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_report(
    outdir,
    docs,
    langs,
    pairs,
    pair_metrics_by_key,
    histogram_low=46.0,
    k=15000,
    tokenizer=None,
):
    """Emit the report/ directory: CSVs, SVG figures, and summary.json.

    pair_metrics_by_key maps (src_id, tgt_id) -> PairMetrics; pairs not
    present there are skipped in the correlation studies.
    """
    outdir.mkdir(parents=True, exist_ok=True)
    langs = tuple(langs)

    stats = corpus_stats(docs, langs, tokenizer=tokenizer)
    lines = [
        "lang,articles,sentences,tokens,characters,"
        "avg_title_chars,avg_lead_chars,avg_content_chars,avg_content_sentences"
    ]
    for lang in langs:
        st = stats.per_lang[lang]
        tokens = "" if st.tokens is None else str(st.tokens)
        lines.append(
            f"{lang},{st.articles},{st.sentences},{tokens},{st.characters},"
            f"{fmt(st.avg_title_chars, 2)},{fmt(st.avg_lead_chars, 2)},"
            f"{fmt(st.avg_content_chars, 2)},{fmt(st.avg_content_sentences, 2)}"
        )
    (outdir / "stats.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    scores = [p.score for p in sorted(pairs.pairs, key=lambda p: p.key())]
    hist = score_histogram(scores, bins=100, low=histogram_low, high=100.0)
    lines = ["bin_low,bin_high,count"]
    for i, count in enumerate(hist.counts):
        lines.append(
            f"{fmt(hist.bin_edges[i])},{fmt(hist.bin_edges[i + 1])},{count}"
        )
    lines.append(f"overflow,,{hist.overflow}")
    (outdir / "histogram.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (outdir / "histogram.svg").write_text(
        svg_histogram(hist, "Document similarity score distribution"),
        encoding="utf-8",
    )

    selected = top_k(pairs, k)
    lines = ["rank,src_id,tgt_id,score"]
    for rank, p in enumerate(selected, start=1):
        lines.append(f"{rank},{p.src_id},{p.tgt_id},{fmt(p.score)}")
    (outdir / "topk.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    summary = {
        "languages": list(langs),
        "documents": len(docs),
        "pairs": len(pairs.pairs),
        "top_k": len(selected),
        "histogram_overflow": hist.overflow,
        "correlations": {},
    }

    studies = [
        ("alignratio_src", "scatter_alignratio_src", lambda m: m.align_ratio_src),
        ("alignratio_tgt", "scatter_alignratio_tgt", lambda m: m.align_ratio_tgt),
        ("lengthcorr", "scatter_lengthcorr", lambda m: m.length_corr),
        ("monotonicity", "scatter_monotonicity", lambda m: m.monotonicity),
    ]
    ordered = sorted(pairs.pairs, key=lambda p: p.key())
    for name, filename, getter in studies:
        doc_scores, values = [], []
        for p in ordered:
            m = pair_metrics_by_key.get(p.key())
            if m is None:
                continue
            doc_scores.append(p.score)
            values.append(getter(m))
        r, obs = metric_correlation(doc_scores, values)
        lines = ["doc_score,metric"]
        lines.extend(f"{fmt(x)},{fmt(y)}" for x, y in obs)
        (outdir / f"{filename}.csv").write_text(
            "\n".join(lines) + "\n", encoding="utf-8"
        )
        (outdir / f"{filename}.svg").write_text(
            svg_scatter(obs, f"Document score vs {name}", "document score", name),
            encoding="utf-8",
        )
        summary["correlations"][name] = None if r is None else round(r, 4)

    (outdir / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return summary
