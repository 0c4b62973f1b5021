"""Frame-level agreement against human labels: accuracy/F1, dataset
splits, and k-fold cross-validation summaries."""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from .errors import EmptyInput, LengthMismatch, TooFewItems, TooSmall
from .intervals import Interval
from .metrics import VAMetrics, va_summary

T = TypeVar("T")


def frame_metrics(
    predicted: Sequence[bool], truth: Sequence[bool]
) -> tuple[float, float | None]:
    """Accuracy and F1 with onfocus as the positive class.

    F1 is None when the positive class never appears on either side
    (2TP + FP + FN == 0): there is no positive to score.
    """
    if len(predicted) != len(truth):
        raise LengthMismatch(
            f"predicted has {len(predicted)} frames, truth has {len(truth)}"
        )
    if not predicted:
        raise EmptyInput("no frames to score")
    tp = fp = fn = tn = 0
    for p, t in zip(predicted, truth):
        if p and t:
            tp += 1
        elif p and not t:
            fp += 1
        elif not p and t:
            fn += 1
        else:
            tn += 1
    accuracy = (tp + tn) / len(predicted)
    denom = 2 * tp + fp + fn
    f1 = (2 * tp / denom) if denom else None
    return accuracy, f1


def split_dataset(
    n: int,
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Shuffle indices 0..n-1 into (train, val, test) partitions.

    val and test sizes round half-up from their ratios; train absorbs
    the remainder, so the three parts always cover all n exactly once.
    Returned index tuples are sorted for stable downstream iteration.
    """
    if n < 10:
        raise TooSmall(f"need at least 10 items to split, got {n}")
    r_train, r_val, r_test = ratios
    if min(ratios) < 0 or abs(r_train + r_val + r_test - 1.0) > 1e-9:
        raise ValueError(f"ratios must be non-negative and sum to 1, got {ratios}")
    n_val = int(n * r_val + 0.5)
    n_test = int(n * r_test + 0.5)
    if n_val + n_test >= n:
        raise TooSmall(f"val+test ({n_val}+{n_test}) leaves no training items of {n}")
    indices = list(range(n))
    random.Random(seed).shuffle(indices)
    val = tuple(sorted(indices[:n_val]))
    test = tuple(sorted(indices[n_val:n_val + n_test]))
    train = tuple(sorted(indices[n_val + n_test:]))
    return train, val, test


@dataclass(frozen=True)
class FoldScore:
    fold: int
    n_items: int
    accuracy: float
    f1: float | None


@dataclass(frozen=True)
class AgreementReport:
    per_fold: tuple[FoldScore, ...]
    mean_accuracy: float
    sd_accuracy: float | None
    mean_f1: float | None
    sd_f1: float | None

    def to_dict(self) -> dict:
        return {
            "per_fold": [
                {"fold": f.fold, "n_items": f.n_items,
                 "accuracy": f.accuracy, "f1": f.f1}
                for f in self.per_fold
            ],
            "mean_accuracy": self.mean_accuracy,
            "sd_accuracy": self.sd_accuracy,
            "mean_f1": self.mean_f1,
            "sd_f1": self.sd_f1,
        }


def cross_validate(
    items: Sequence[T],
    scorer: Callable[[Sequence[T]], tuple[float, float | None]],
    k: int = 5,
    seed: int = 0,
) -> AgreementReport:
    """Shuffle items once, cut into k folds (first n % k folds one
    larger), score each held-out fold with scorer(fold) -> (acc, f1)."""
    n = len(items)
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < k:
        raise TooFewItems(f"need at least k={k} items, got {n}")
    indices = list(range(n))
    random.Random(seed).shuffle(indices)
    base, extra = divmod(n, k)
    folds: list[FoldScore] = []
    pos = 0
    for fold_no in range(k):
        size = base + (1 if fold_no < extra else 0)
        held = [items[i] for i in indices[pos:pos + size]]
        pos += size
        acc, f1 = scorer(held)
        folds.append(FoldScore(fold=fold_no, n_items=size, accuracy=acc, f1=f1))

    accs = [f.accuracy for f in folds]
    f1s = [f.f1 for f in folds if f.f1 is not None]
    return AgreementReport(
        per_fold=tuple(folds),
        mean_accuracy=statistics.mean(accs),
        sd_accuracy=statistics.stdev(accs) if len(accs) >= 2 else None,
        mean_f1=statistics.mean(f1s) if f1s else None,
        sd_f1=statistics.stdev(f1s) if len(f1s) >= 2 else None,
    )


@dataclass(frozen=True)
class CrossReference:
    """Framework-vs-human VA metrics over one shared phase."""

    framework: VAMetrics
    human: VAMetrics

    @property
    def frequency_delta(self) -> float:
        return self.framework.frequency_per_5min - self.human.frequency_per_5min

    @property
    def mean_duration_delta(self) -> float | None:
        if self.framework.mean_duration_s is None or self.human.mean_duration_s is None:
            return None
        return self.framework.mean_duration_s - self.human.mean_duration_s

    @property
    def total_time_delta(self) -> float:
        return self.framework.total_time_pct - self.human.total_time_pct


def cross_reference(framework_events, human_events, phase: Interval) -> CrossReference:
    return CrossReference(
        framework=va_summary(framework_events, phase),
        human=va_summary(human_events, phase),
    )
