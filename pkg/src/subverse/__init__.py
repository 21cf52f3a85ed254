"""subverse: Polish sub-word segmentation and GRU verse generation."""

from .corpus import ChunkPair, Vocab, build_vocab, chunk, decode, encode
from .checkpoint import load_checkpoint, save_checkpoint
from .metrics import (
    MetricsReport,
    bad_words_ratio,
    build_lexicon,
    compression_ratio,
    mean_step_entropy,
    metre_stats,
)
from .nnet import (
    ModelConfig,
    ModelParams,
    adam_step,
    backward,
    cross_entropy,
    forward_step,
    gru_cell,
    init_params,
    zero_state,
)
from .sampler import GenerationConfig, GenerationResult, generate, sample_index, temperature_softmax
from .segmenter import (
    SegmenterConfig,
    Token,
    count_line_syllables,
    detokenize,
    normalize,
    stem_prefixes,
    syllabify,
    tokenize,
)
from .training import TrainReport, train

__version__ = "0.1.0"
