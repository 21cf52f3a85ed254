"""Evaluation metrics: bad-words ratio, metre conformance, compression,
sampling entropy, and the plain-text report format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .segmenter import (
    CHAR_CONFIG,
    DEFAULT_CONFIG,
    SegmenterConfig,
    Token,
    TokenKind,
    count_line_syllables,
    tokenize,
)

REPORT_HEADER = "subverse metrics report v1"

_WORD = re.compile(r"[^\W_]+", re.UNICODE)


def build_lexicon(text: str) -> set[str]:
    """Whole words of a corpus, lowercased, for the bad-words check."""
    return {m.group().lower() for m in _WORD.finditer(text)}


def _piece_runs(tokens: Iterable[Token]) -> list[list[Token]]:
    runs: list[list[Token]] = []
    current: list[Token] = []
    for tok in tokens:
        if tok.kind is TokenKind.PIECE:
            if current and current[-1].joins_next and tok.joins_prev:
                current.append(tok)
            else:
                if current:
                    runs.append(current)
                current = [tok]
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def bad_words_ratio(tokens: Iterable[Token], lexicon: set[str]) -> float:
    """Fraction of piece tokens that fail to assemble into known words.

    Pieces are grouped into maximal connector-joined runs.  A run is bad when
    a connector dangles at either end or the joined string is missing from
    the lexicon.  Specials and punctuation are excluded from both counts.
    """
    runs = _piece_runs(tokens)
    total = sum(len(run) for run in runs)
    if total == 0:
        return 0.0
    bad = 0
    for run in runs:
        ill_formed = run[0].joins_prev or run[-1].joins_next
        if ill_formed or "".join(t.surface for t in run) not in lexicon:
            bad += len(run)
    return bad / total


def metre_stats(text: str) -> tuple[dict[int, int], float]:
    """Histogram of per-line syllable counts and the 13-syllable rate.

    Empty lines are skipped; empty text yields ({}, 0.0).
    """
    histogram: dict[int, int] = {}
    lines = [line for line in text.split("\n") if line.strip()]
    for line in lines:
        n = count_line_syllables(line)
        histogram[n] = histogram.get(n, 0) + 1
    if not lines:
        return {}, 0.0
    return histogram, histogram.get(13, 0) / len(lines)


def compression_ratio(text: str, cfg: SegmenterConfig = DEFAULT_CONFIG) -> float:
    """Char-mode token count divided by sub-word token count, same text."""
    if not text:
        raise ValueError("compression_ratio requires non-empty text")
    n_char = len(tokenize(text, CHAR_CONFIG))
    n_sub = len(tokenize(text, cfg))
    if n_sub == 0:
        raise ValueError("text produced no sub-word tokens")
    return n_char / n_sub


def mean_step_entropy(distributions: Iterable[np.ndarray]) -> float:
    """Mean Shannon entropy (nats) of the given probability vectors."""
    values = []
    for q in distributions:
        q = np.asarray(q, dtype=np.float64)
        nz = q[q > 0]
        values.append(float(-(nz * np.log(nz)).sum()))
    if not values:
        return 0.0
    return float(np.mean(values))


@dataclass
class MetricsReport:
    label: str = "model"
    loss_series: list[float] = field(default_factory=list)
    bad_words_series: list[float] = field(default_factory=list)
    metre_histogram: dict[int, int] = field(default_factory=dict)
    alexandrine_rate: float = 0.0
    compression_ratio: float = 0.0
    entropy_by_temperature: dict[float, float] = field(default_factory=dict)

    def final_loss(self) -> float | None:
        return self.loss_series[-1] if self.loss_series else None


def format_report(reports: list[MetricsReport], notes: list[str] | None = None) -> str:
    """Render one or more reports in the line-oriented plain-text format."""
    out = [REPORT_HEADER, ""]
    for rep in reports:
        out.append(f"== {rep.label} ==")
        if rep.loss_series:
            out.append(f"epochs: {len(rep.loss_series)}")
            out.append(f"final loss: {rep.loss_series[-1]:.6f}")
        if rep.bad_words_series:
            out.append(f"final bad-words ratio: {rep.bad_words_series[-1]:.6f}")
        if rep.metre_histogram:
            total = sum(rep.metre_histogram.values())
            out.append(f"lines measured: {total}")
            out.append(f"13-syllable rate: {rep.alexandrine_rate:.6f}")
        if rep.compression_ratio:
            out.append(f"compression ratio (char/subword): {rep.compression_ratio:.6f}")
        for t in sorted(rep.entropy_by_temperature):
            out.append(f"mean step entropy @ T={t:g}: "
                       f"{rep.entropy_by_temperature[t]:.6f}")
        out.append("")
        out.append("[values]")
        prefix = rep.label.replace(" ", "_")
        for i, v in enumerate(rep.loss_series, start=1):
            out.append(f"{prefix}.loss.{i}={v:.6f}")
        for i, v in enumerate(rep.bad_words_series, start=1):
            out.append(f"{prefix}.bad_words.{i}={v:.6f}")
        for k in sorted(rep.metre_histogram):
            out.append(f"{prefix}.metre.{k}={rep.metre_histogram[k]}")
        out.append(f"{prefix}.alexandrine_rate={rep.alexandrine_rate:.6f}")
        if rep.compression_ratio:
            out.append(f"{prefix}.compression_ratio={rep.compression_ratio:.6f}")
        for t in sorted(rep.entropy_by_temperature):
            out.append(f"{prefix}.entropy.T{t:g}={rep.entropy_by_temperature[t]:.6f}")
        out.append("")
    for note in notes or []:
        out.append(f"note: {note}")
    return "\n".join(out).rstrip("\n") + "\n"


def write_report(path, reports: list[MetricsReport], notes: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_report(reports, notes))


def write_series(path, values: Iterable[float]) -> None:
    """Two-column (epoch, value) file, tab separated, one row per epoch."""
    with open(path, "w", encoding="utf-8") as fh:
        for epoch, value in enumerate(values, start=1):
            fh.write(f"{epoch}\t{value:.6f}\n")
