import time
from dataclasses import dataclass

import numpy as np
import pytest

from subverse.corpus import ChunkPair, Vocab, build_vocab, chunk, encode
from subverse.demo import build_corpus, build_overfit_corpus
from subverse.metrics import build_lexicon
from subverse.nnet import ModelConfig, ModelParams, init_params
from subverse.segmenter import normalize, tokenize
from subverse.training import TrainReport, make_bad_words_evaluator, train

#: The opening quatrain of the source poem, classic Polish alexandrine.
QUATRAIN = [
    "Litwo! Ojczyzno moja! ty jesteś jak zdrowie;",
    "Ile cię trzeba cenić, ten tylko się dowie",
    "Kto cię stracił. Dziś piękność twą w całej ozdobie",
    "Widzę i opisuję, bo tęsknię po tobie.",
]


@pytest.fixture(scope="session")
def demo_corpus() -> str:
    return normalize(build_corpus())


@dataclass
class OverfitRun:
    text: str
    vocab: Vocab
    indices: np.ndarray
    chunks: list[ChunkPair]
    cfg: ModelConfig
    params: ModelParams
    report: TrainReport
    train_seconds: float


@pytest.fixture(scope="session")
def overfit_run() -> OverfitRun:
    """Memorization run shared by the acceptance criteria: ~2000 tokens,
    hidden 128, 2 layers, per-epoch bad-words evaluation."""
    text = normalize(build_overfit_corpus())
    tokens = tokenize(text)
    vocab = build_vocab(tokens)
    indices = encode(tokens, vocab)[:2000]
    chunks = chunk(indices, 400)
    cfg = ModelConfig(vocab_size=len(vocab), hidden_size=128, n_layers=2,
                      seed=42, learning_rate=3e-3, grad_clip=5.0, epochs=60)
    evaluator = make_bad_words_evaluator(vocab, build_lexicon(text),
                                         indices[:20], n_tokens=2000)
    t0 = time.perf_counter()
    params, report = train(chunks, cfg, evaluator=evaluator)
    elapsed = time.perf_counter() - t0
    return OverfitRun(text, vocab, indices, chunks, cfg, params, report, elapsed)


@dataclass
class TinyModel:
    vocab: Vocab
    indices: np.ndarray
    cfg: ModelConfig
    params: ModelParams
    report: TrainReport


@pytest.fixture(scope="session")
def tiny_model() -> TinyModel:
    """Small, briefly trained model: cheap fixture for sampler/CLI tests."""
    text = normalize(build_corpus(n_lines=120, seed=5, headings=False))
    tokens = tokenize(text)
    vocab = build_vocab(tokens)
    indices = encode(tokens, vocab)
    chunks = chunk(indices, 100)
    cfg = ModelConfig(vocab_size=len(vocab), hidden_size=48, n_layers=2,
                      seed=3, epochs=3)
    params, report = train(chunks, cfg)
    return TinyModel(vocab, indices, cfg, params, report)


def tiny_random_params(seed: int, vocab_size=7, hidden=4, layers=2,
                       dtype=np.float64) -> ModelParams:
    """Random small model with non-zero biases, for gradient checks."""
    rng = np.random.default_rng(seed)
    cfg = ModelConfig(vocab_size=vocab_size, hidden_size=hidden,
                      n_layers=layers, seed=seed)
    params = init_params(cfg, dtype=dtype)
    for _, a in params.tensors():
        a += rng.normal(0.0, 0.1, a.shape)
    return params


def random_chunk(seed: int, vocab_size=7, length=12) -> ChunkPair:
    rng = np.random.default_rng(seed + 1000)
    idx = rng.integers(0, vocab_size, size=length)
    return ChunkPair(input=idx[:-1].copy(), target=idx[1:].copy())
