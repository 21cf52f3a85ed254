"""Vocabulary construction, index coding and fixed-length training chunks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .segmenter import CAP, EOL, UNK, UP, Token, parse_token, serialize_token

#: Specials injected into every vocabulary, in this index order.
RESERVED = (UNK, EOL, CAP, UP)


@dataclass(frozen=True)
class Vocab:
    """Bijection between serialized tokens and dense indices; unk at 0."""

    index_to_token: tuple[str, ...]
    token_to_index: dict[str, int] = field(repr=False)
    unk_index: int = 0

    def __len__(self) -> int:
        return len(self.index_to_token)


def build_vocab(tokens: list[Token]) -> Vocab:
    """Assign indices in first-occurrence order, reserved specials first."""
    if not tokens:
        raise ValueError("cannot build a vocabulary from an empty token sequence")
    index_to_token = list(RESERVED)
    seen = set(RESERVED)
    for tok in tokens:
        s = serialize_token(tok)
        if s not in seen:
            seen.add(s)
            index_to_token.append(s)
    mapping = {s: i for i, s in enumerate(index_to_token)}
    return Vocab(tuple(index_to_token), mapping)


def encode(tokens: list[Token], vocab: Vocab) -> np.ndarray:
    """Map tokens to indices; anything out of vocabulary becomes unk."""
    get = vocab.token_to_index.get
    unk = vocab.unk_index
    return np.array([get(serialize_token(t), unk) for t in tokens], dtype=np.int64)


def decode(indices, vocab: Vocab) -> list[Token]:
    out = []
    size = len(vocab)
    for i in indices:
        i = int(i)
        if not 0 <= i < size:
            raise ValueError(f"index {i} out of range for vocabulary of size {size}")
        out.append(parse_token(vocab.index_to_token[i]))
    return out


@dataclass(frozen=True)
class ChunkPair:
    """Aligned input/target index sequences, target shifted one step ahead."""

    input: np.ndarray
    target: np.ndarray

    def __post_init__(self):
        if len(self.input) != len(self.target):
            raise ValueError("input and target must have equal length")
        if len(self.input) == 0:
            raise ValueError("chunk must contain at least one step")


def chunk(indices, length: int = 400) -> list[ChunkPair]:
    """Cut the index stream into floor(N/length) non-overlapping pairs.

    The trailing remainder shorter than ``length`` is dropped.
    """
    if length < 2:
        raise ValueError("chunk length must be >= 2")
    indices = np.asarray(indices, dtype=np.int64)
    n_chunks = len(indices) // length
    pairs = []
    for c in range(n_chunks):
        block = indices[c * length:(c + 1) * length]
        pairs.append(ChunkPair(input=block[:-1].copy(), target=block[1:].copy()))
    return pairs
