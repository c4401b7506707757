"""Precision/recall/F1 evaluation against a gold set and threshold sweep.

The sweep walks theta over {0, 0.5, ..., 100} (201 grid points) and
returns the theta maximizing F1; ties break toward the highest theta,
the most precision-preserving setting with equal validation F1.
"""

from dataclasses import dataclass

from .aligner import PairSet, Strategy, align, merge_pair_sets


@dataclass(frozen=True)
class EvalMetrics:
    precision: float
    recall: float
    f1: float
    true_positives: int
    predicted: int
    gold: int


@dataclass
class SweepResult:
    best_threshold: float
    best_f1: float
    curve: list  # of (theta, EvalMetrics), 201 entries


def sweep_grid():
    """The standard sweep grid: 0 to 100 in steps of 0.5."""
    return [i / 2.0 for i in range(201)]


def precision_recall_f1(predicted, gold):
    """Evaluate predicted pairs against gold, on unordered id pairs.

    Scores are ignored; zero denominators yield 0 rather than an error.
    `predicted` is a PairSet or any iterable of (src_id, tgt_id) keys.
    """
    if hasattr(predicted, "keys"):
        pred_keys = set(predicted.keys())
    else:
        pred_keys = {tuple(p) for p in predicted}
    gold_keys = {tuple(p) for p in gold.pairs}
    tp = len(pred_keys & gold_keys)
    precision = tp / len(pred_keys) if pred_keys else 0.0
    recall = tp / len(gold_keys) if gold_keys else 0.0
    f1 = (
        2.0 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return EvalMetrics(
        precision=precision,
        recall=recall,
        f1=f1,
        true_positives=tp,
        predicted=len(pred_keys),
        gold=len(gold_keys),
    )


def sweep_threshold(matrices, gold, strategy):
    """Find the F1-maximizing threshold over all matrices pooled.

    Returns the full 201-point curve plus the argmax; ties break toward
    the highest theta.
    """
    if not len(gold):
        raise ValueError("gold set is empty; F1 is undefined as a tuning objective")
    strategy = Strategy(strategy)
    matrices = list(matrices)
    curve = []
    best_theta, best_f1 = 0.0, -1.0
    for theta in sweep_grid():
        if matrices:
            pooled = merge_pair_sets([align(m, theta, strategy) for m in matrices])
        else:
            pooled = PairSet(pairs=frozenset(), strategy=strategy, threshold=theta)
        metrics = precision_recall_f1(pooled, gold)
        curve.append((theta, metrics))
        if metrics.f1 >= best_f1:  # >= so ties move toward the highest theta
            best_theta, best_f1 = theta, metrics.f1
    return SweepResult(best_threshold=best_theta, best_f1=best_f1, curve=curve)
