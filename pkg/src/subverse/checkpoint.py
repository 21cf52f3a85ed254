"""Binary checkpoint format.

Layout, all integers little-endian:

    magic        4 bytes  b"SWLM"
    version      u32      currently 1
    mode         u8       0 = subword segmentation, 1 = char
    vocab_size   u32
    hidden_size  u32
    n_layers     u32
    seed         u64
    learning_rate f64
    grad_clip    f64
    epochs       u32
    vocab        u32 entry count, then per entry: u32 byte length + UTF-8
    weights      float32 arrays, raw bytes, in ModelParams.tensors() order
    crc          u32      CRC-32 of every preceding byte
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .corpus import Vocab
from .errors import CheckpointChecksumError, CheckpointTruncatedError, CheckpointVersionError
from .nnet import GruLayer, ModelConfig, ModelParams, _LAYER_FIELDS

MAGIC = b"SWLM"
VERSION = 1
_MODES = {"subword": 0, "char": 1}
_MODE_NAMES = {v: k for k, v in _MODES.items()}
_HEADER = struct.Struct("<BIIIQddI")


def save_checkpoint(params: ModelParams, vocab: Vocab, cfg: ModelConfig,
                    path, mode: str = "subword") -> None:
    parts = [MAGIC, struct.pack("<I", VERSION)]
    parts.append(_HEADER.pack(
        _MODES[mode], cfg.vocab_size, cfg.hidden_size, cfg.n_layers,
        cfg.seed, cfg.learning_rate, cfg.grad_clip, cfg.epochs))
    parts.append(struct.pack("<I", len(vocab)))
    for entry in vocab.index_to_token:
        raw = entry.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)))
        parts.append(raw)
    for _, array in params.tensors():
        parts.append(np.ascontiguousarray(array, dtype="<f4").tobytes())
    body = b"".join(parts)
    with open(path, "wb") as fh:
        fh.write(body)
        fh.write(struct.pack("<I", zlib.crc32(body)))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise CheckpointTruncatedError(
                f"checkpoint ends at byte {len(self.data)}, "
                f"needed {self.pos + n}")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]


def load_checkpoint(path) -> tuple[ModelParams, Vocab, ModelConfig, str]:
    """Read and verify a checkpoint; returns (params, vocab, cfg, mode)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < len(MAGIC) + 8:
        raise CheckpointTruncatedError(f"file too short ({len(data)} bytes)")
    body, stored = data[:-4], struct.unpack("<I", data[-4:])[0]
    if zlib.crc32(body) != stored:
        raise CheckpointChecksumError("CRC-32 mismatch; file is corrupted")

    r = _Reader(body)
    if r.take(4) != MAGIC:
        raise CheckpointVersionError("not a subverse checkpoint (bad magic)")
    version = r.u32()
    if version != VERSION:
        raise CheckpointVersionError(f"unsupported checkpoint version {version}")
    mode_id, v, h, n_layers, seed, lr, clip, epochs = _HEADER.unpack(
        r.take(_HEADER.size))
    if mode_id not in _MODE_NAMES:
        raise CheckpointVersionError(f"unknown segmenter mode id {mode_id}")
    cfg = ModelConfig(vocab_size=v, hidden_size=h, n_layers=n_layers, seed=seed,
                      learning_rate=lr, grad_clip=clip, epochs=epochs)

    count = r.u32()
    entries = []
    for _ in range(count):
        entries.append(r.take(r.u32()).decode("utf-8"))
    vocab = Vocab(tuple(entries), {s: i for i, s in enumerate(entries)})

    def tensor(shape):
        n = int(np.prod(shape))
        raw = r.take(4 * n)
        return np.frombuffer(raw, dtype="<f4").reshape(shape).copy()

    encoder = tensor((v, h))
    layers = []
    for _ in range(n_layers):
        fields = {}
        for name in _LAYER_FIELDS:
            fields[name] = tensor((h,) if name.startswith("b_") else (h, h))
        layers.append(GruLayer(**fields))
    params = ModelParams(encoder, layers, tensor((h, v)), tensor((v,)))
    if r.pos != len(body):
        raise CheckpointTruncatedError(
            f"{len(body) - r.pos} unexpected trailing bytes")
    return params, vocab, cfg, _MODE_NAMES[mode_id]
