"""Temperature-controlled sequential generation from a trained model."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import Vocab, encode
from .nnet import ModelParams, forward_step, zero_state
from .segmenter import SegmenterConfig, Token, config_for_mode, detokenize, normalize, parse_token, tokenize

DEFAULT_PRIME = "Litwo! Ojczyzno moja!"


@dataclass(frozen=True)
class GenerationConfig:
    prime_text: str = DEFAULT_PRIME
    length: int = 200
    temperature: float = 1.0
    rng_seed: int = 0
    mode: str = "sample"  # "sample" | "argmax"

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if self.mode not in ("sample", "argmax"):
            raise ValueError(f"unknown generation mode: {self.mode!r}")
        if self.mode == "sample" and self.temperature <= 0:
            raise ValueError("temperature must be > 0 in sample mode")


def temperature_softmax(logits: np.ndarray, temperature: float) -> np.ndarray:
    """q_i = exp(z_i/T) / sum_j exp(z_j/T), stabilized by max subtraction.

    At T=1 this is bit-for-bit the plain softmax.
    """
    if temperature <= 0:
        raise ValueError("temperature must be > 0")
    z = np.asarray(logits, dtype=np.float64) / temperature
    if not np.all(np.isfinite(z)):
        raise ValueError("logits must be finite")
    z = z - z.max()
    q = np.exp(z)
    q /= q.sum()
    return q


def sample_index(q: np.ndarray, rng: np.random.Generator) -> int:
    """Inverse-CDF draw from a distribution; rejects unnormalized input."""
    q = np.asarray(q, dtype=np.float64)
    if abs(float(q.sum()) - 1.0) > 1e-6:
        raise ValueError("probabilities must sum to 1 within 1e-6")
    cdf = np.cumsum(q)
    cdf[-1] = 1.0
    return int(np.searchsorted(cdf, rng.random(), side="right"))


def _entropy(q: np.ndarray) -> float:
    nz = q[q > 0]
    return float(-(nz * np.log(nz)).sum())


@dataclass
class GenerationResult:
    """Sampled continuation (prime excluded) plus the rendered poem."""

    indices: np.ndarray
    tokens: list[Token]
    text: str
    step_entropies: list[float] = field(default_factory=list)

    def mean_step_entropy(self) -> float:
        return float(np.mean(self.step_entropies)) if self.step_entropies else 0.0


def generate_from_indices(params: ModelParams, vocab: Vocab, prime_indices,
                          length: int, temperature: float = 1.0,
                          rng_seed: int = 0, argmax: bool = False) -> GenerationResult:
    """Prime the hidden state with token indices, then sample ``length`` more.

    Each sampled token is fed back as the next input.  ``argmax`` replaces
    the draw with the most probable index (ties to the lowest index) and
    records zero entropy for the step.
    """
    prime = np.asarray(prime_indices, dtype=np.int64)
    if len(prime) == 0:
        raise ValueError("prime must contain at least one token")
    rng = np.random.default_rng(rng_seed)
    state = zero_state(params)
    logits = None
    for idx in prime:
        logits, state = forward_step(params, int(idx), state)
    out = np.empty(length, dtype=np.int64)
    entropies = []
    for t in range(length):
        if argmax:
            nxt = int(np.argmax(logits))
            entropies.append(0.0)
        else:
            q = temperature_softmax(logits, temperature)
            nxt = sample_index(q, rng)
            entropies.append(_entropy(q))
        out[t] = nxt
        logits, state = forward_step(params, nxt, state)
    tokens = [parse_token(vocab.index_to_token[i]) for i in out]
    return GenerationResult(out, tokens, detokenize(tokens), entropies)


def generate(params: ModelParams, vocab: Vocab, gen_cfg: GenerationConfig,
             seg_cfg: SegmenterConfig | None = None) -> GenerationResult:
    """Text-prime entry point; returns the poem prefixed with the prime."""
    seg_cfg = seg_cfg or config_for_mode("subword")
    prime_tokens = tokenize(normalize(gen_cfg.prime_text), seg_cfg)
    if not prime_tokens:
        raise ValueError("prime text produced no tokens")
    prime = encode(prime_tokens, vocab)
    result = generate_from_indices(
        params, vocab, prime, gen_cfg.length,
        temperature=gen_cfg.temperature, rng_seed=gen_cfg.rng_seed,
        argmax=gen_cfg.mode == "argmax")
    continuation = result.text
    if continuation and not continuation.startswith("\n"):
        continuation = " " + continuation
    result.text = gen_cfg.prime_text + continuation
    return result
