import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subverse.corpus import ChunkPair, build_vocab, chunk, decode, encode
from subverse.segmenter import Token, normalize, tokenize


def toks(*surfaces):
    return [Token.piece(s) for s in surfaces]


class TestVocab:
    def test_specials_plus_distinct_tokens(self):
        vocab = build_vocab(toks("a", "b", "a"))
        assert len(vocab) == 6  # 4 reserved specials + {a, b}
        assert vocab.index_to_token[:4] == ("_unk_", "_eol_", "_cap_", "_up_")

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            build_vocab([])

    def test_first_occurrence_order(self):
        vocab = build_vocab(toks("z", "a", "z", "m"))
        assert vocab.index_to_token[4:] == ("z", "a", "m")

    def test_deterministic_over_corpus(self):
        text = normalize("Woda i chleb, wino i miód.\nNoc i dzień.")
        a = build_vocab(tokenize(text))
        b = build_vocab(tokenize(text))
        assert a.index_to_token == b.index_to_token

    def test_specials_present_even_if_unused(self):
        vocab = build_vocab(toks("x"))
        for s in ("_unk_", "_eol_", "_cap_", "_up_"):
            assert s in vocab.token_to_index


class TestEncodeDecode:
    def test_roundtrip_in_vocab(self):
        tokens = tokenize(normalize("Ala ma kota, a kot ma Alę."))
        vocab = build_vocab(tokens)
        assert decode(encode(tokens, vocab), vocab) == tokens

    def test_unknown_maps_to_unk(self):
        vocab = build_vocab(toks("a"))
        out = encode(toks("zzz-not-in-vocab"), vocab)
        assert out.tolist() == [vocab.unk_index]

    def test_decode_rejects_out_of_range(self):
        vocab = build_vocab(toks("a"))
        with pytest.raises(ValueError):
            decode([len(vocab)], vocab)
        with pytest.raises(ValueError):
            decode([-1], vocab)


class TestChunk:
    def test_paper_scale_count(self):
        assert len(chunk(np.zeros(79_544, dtype=np.int64), 400)) == 198

    def test_single_exact_chunk(self):
        pairs = chunk(np.arange(400), 400)
        assert len(pairs) == 1
        assert len(pairs[0].input) == 399
        assert len(pairs[0].target) == 399

    def test_remainder_dropped(self):
        assert chunk(np.arange(399), 400) == []

    def test_shift_by_one(self):
        pairs = chunk(np.arange(10), 5)
        for pair in pairs:
            assert (pair.target[:-1] == pair.input[1:]).all()
            assert (pair.target == pair.input + 1).all()

    def test_chunks_cover_prefix_in_order(self):
        indices = np.arange(23)
        pairs = chunk(indices, 5)
        rebuilt = np.concatenate(
            [np.append(p.input, p.target[-1]) for p in pairs])
        assert (rebuilt == indices[:len(pairs) * 5]).all()

    def test_length_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            chunk(np.arange(10), 1)

    @given(st.integers(min_value=0, max_value=5000),
           st.integers(min_value=2, max_value=500))
    @settings(max_examples=200)
    def test_count_property(self, n, length):
        assert len(chunk(np.zeros(n, dtype=np.int64), length)) == n // length


class TestChunkPair:
    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            ChunkPair(np.arange(3), np.arange(4))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ChunkPair(np.arange(0), np.arange(0))
