"""The five document alignment strategies over a similarity matrix.

Rows are the A side (German in the default profile), columns the B side
(French). Threshold comparison is inclusive (score >= theta) and argmax
ties break toward the lowest index, so results are deterministic.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .corpus import DocPair


class Strategy(str, Enum):
    ABOVE_THRESHOLD = "above-threshold"
    BEST_FR = "best-fr"  # per column: best row (each B doc picks its best A doc)
    BEST_DE = "best-de"  # per row: best column (each A doc picks its best B doc)
    UNION = "union"
    INTERSECTION = "intersection"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {name!r} (expected one of: {valid})")


@dataclass(frozen=True)
class PairSet:
    """Document pairs produced by one strategy at one threshold."""

    pairs: frozenset  # of DocPair
    strategy: Strategy
    threshold: float

    def __len__(self):
        return len(self.pairs)

    def keys(self):
        return {p.key() for p in self.pairs}


def align(matrix, threshold, strategy):
    """Apply an alignment strategy to one similarity matrix.

    AboveThreshold: every cell with score >= threshold (n:n).
    BestFR: for each column, the argmax row, if above threshold (n:1).
    BestDE: for each row, the argmax column, if above threshold (1:n).
    Union / Intersection: union / intersection of BestDE and BestFR;
    Intersection is the mutual-best-match 1:1 strategy.
    """
    if not 0.0 <= threshold <= 100.0:
        raise ValueError(f"threshold must be in [0, 100], got {threshold}")
    strategy = Strategy(strategy)
    scores = matrix.scores
    cells = _strategy_cells(scores, threshold, strategy)
    pairs = frozenset(
        DocPair(
            src_id=matrix.row_ids[i],
            tgt_id=matrix.col_ids[j],
            score=float(scores[i, j]),
        )
        for i, j in cells
    )
    return PairSet(pairs=pairs, strategy=strategy, threshold=float(threshold))


def _strategy_cells(scores, threshold, strategy):
    if scores.size == 0:
        return set()
    if strategy is Strategy.ABOVE_THRESHOLD:
        ii, jj = np.where(scores >= threshold)
        return set(zip(ii.tolist(), jj.tolist()))
    if strategy is Strategy.BEST_DE:
        return _best_per_row(scores, threshold)
    if strategy is Strategy.BEST_FR:
        return _best_per_col(scores, threshold)
    best_de = _best_per_row(scores, threshold)
    best_fr = _best_per_col(scores, threshold)
    if strategy is Strategy.UNION:
        return best_de | best_fr
    return best_de & best_fr


def _best_per_row(scores, threshold):
    # np.argmax already breaks ties toward the lowest index
    best = np.argmax(scores, axis=1)
    return {
        (i, int(j))
        for i, j in enumerate(best)
        if scores[i, j] >= threshold
    }


def _best_per_col(scores, threshold):
    best = np.argmax(scores, axis=0)
    return {
        (int(i), j)
        for j, i in enumerate(best)
        if scores[i, j] >= threshold
    }


def merge_pair_sets(pair_sets):
    """Pool per-date PairSets produced with one strategy/threshold."""
    if not pair_sets:
        raise ValueError("nothing to merge")
    first = pair_sets[0]
    if any(
        ps.strategy != first.strategy or ps.threshold != first.threshold
        for ps in pair_sets
    ):
        raise ValueError("cannot merge pair sets with mixed strategy or threshold")
    merged = frozenset().union(*(ps.pairs for ps in pair_sets))
    return PairSet(pairs=merged, strategy=first.strategy, threshold=first.threshold)
