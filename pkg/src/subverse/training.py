"""Epoch loop: shuffled chunk order, per-chunk BPTT + Adam, progress report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .corpus import ChunkPair
from .nnet import ModelConfig, ModelParams, OptState, adam_step, backward, chunk_loss, init_params

#: Fixed seed for the per-epoch evaluation sample, independent of training.
EVAL_SEED = 900_001


@dataclass
class TrainReport:
    """Per-epoch training record.

    ``initial_loss`` is measured on the untrained parameters before any
    update; the series cover the epochs actually run.  ``bad_words_series``
    is empty when no evaluator was attached.
    """

    initial_loss: float
    loss_series: list[float] = field(default_factory=list)
    bad_words_series: list[float] = field(default_factory=list)
    epoch_seconds: list[float] = field(default_factory=list)


def mean_corpus_loss(params: ModelParams, chunks: list[ChunkPair]) -> float:
    return float(np.mean([chunk_loss(params, pair) for pair in chunks]))


def train(
    chunks: list[ChunkPair],
    cfg: ModelConfig,
    evaluator: Callable[[ModelParams, int], float] | None = None,
    progress: Callable[[str], None] | None = None,
) -> tuple[ModelParams, TrainReport]:
    """Train from scratch on the given chunks; deterministic per cfg.seed.

    Hidden state is zeroed at every chunk start.  The optional ``evaluator``
    runs after each epoch and its value is recorded as the bad-words series.
    """
    if not chunks:
        raise ValueError("training requires at least one chunk")
    params = init_params(cfg)
    opt = OptState.for_params(params)
    # Chunk order gets its own stream so it cannot disturb init draws.
    order_rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 1]))

    report = TrainReport(initial_loss=mean_corpus_loss(params, chunks))
    if progress:
        progress(f"initial mean loss {report.initial_loss:.4f} "
                 f"(ln V = {np.log(cfg.vocab_size):.4f})")
    for epoch in range(1, cfg.epochs + 1):
        t0 = time.perf_counter()
        losses = []
        for ci in order_rng.permutation(len(chunks)):
            grads, loss = backward(params, chunks[ci], grad_clip=cfg.grad_clip)
            adam_step(params, grads, opt, cfg.learning_rate)
            losses.append(loss)
        report.loss_series.append(float(np.mean(losses)))
        if evaluator is not None:
            report.bad_words_series.append(float(evaluator(params, epoch)))
        report.epoch_seconds.append(time.perf_counter() - t0)
        if progress:
            bad = (f"  bad-words {report.bad_words_series[-1]:.4f}"
                   if report.bad_words_series else "")
            progress(f"epoch {epoch}/{cfg.epochs}  loss {report.loss_series[-1]:.4f}"
                     f"{bad}  [{report.epoch_seconds[-1]:.1f}s]")
    return params, report


def make_bad_words_evaluator(vocab, lexicon: set[str], prime_indices,
                             n_tokens: int = 2000, temperature: float = 0.8,
                             seed: int = EVAL_SEED):
    """Build the fixed per-epoch sampler used for the bad-words curve.

    Each call generates the same-size sample with a fresh, fixed-seed RNG so
    the curve depends only on the parameters.
    """
    from .metrics import bad_words_ratio
    from .sampler import generate_from_indices

    prime = np.asarray(prime_indices, dtype=np.int64)

    def evaluate(params: ModelParams, epoch: int) -> float:
        result = generate_from_indices(
            params, vocab, prime, length=n_tokens,
            temperature=temperature, rng_seed=seed)
        return bad_words_ratio(result.tokens, lexicon)

    return evaluate
