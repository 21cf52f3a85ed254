import math

import numpy as np
import pytest

from subverse.metrics import (
    MetricsReport,
    REPORT_HEADER,
    bad_words_ratio,
    build_lexicon,
    compression_ratio,
    format_report,
    mean_step_entropy,
    metre_stats,
    write_report,
    write_series,
)
from subverse.segmenter import T_CAP, T_EOL, Token, normalize, tokenize

from conftest import QUATRAIN


def piece(s, prev=False, nxt=False):
    return Token.piece(s, joins_prev=prev, joins_next=nxt)


LEX = {"woda", "dom", "lasem", "kot"}


class TestBadWordsRatio:
    def test_all_good(self):
        tokens = [piece("wo", nxt=True), piece("da", prev=True), piece("dom")]
        assert bad_words_ratio(tokens, LEX) == 0.0

    def test_one_bad_run_of_three_out_of_ten(self):
        good = [piece("dom"), piece("kot"), piece("wo", nxt=True),
                piece("da", prev=True), piece("dom"), piece("kot"), piece("dom")]
        # dangling ++ on the final piece makes this 3-piece run ill-formed
        bad = [piece("la", nxt=True), piece("se", prev=True, nxt=True),
               piece("m", prev=True, nxt=True)]
        assert bad_words_ratio(good + bad, LEX) == pytest.approx(0.3)

    def test_out_of_lexicon_run_is_bad(self):
        tokens = [piece("zu", nxt=True), piece("pa", prev=True)]
        assert bad_words_ratio(tokens, LEX) == 1.0

    def test_dangling_prev_is_bad(self):
        assert bad_words_ratio([piece("dom", prev=True)], LEX) == 1.0

    def test_specials_and_punct_excluded(self):
        tokens = [T_CAP, piece("dom"), Token.punct("!"), T_EOL]
        assert bad_words_ratio(tokens, LEX) == 0.0

    def test_empty_defined_as_zero(self):
        assert bad_words_ratio([T_EOL, Token.punct(".")], LEX) == 0.0

    def test_zero_on_retokenized_corpus(self, demo_corpus):
        text = "\n".join(demo_corpus.split("\n")[:400])
        assert bad_words_ratio(tokenize(text), build_lexicon(demo_corpus)) == 0.0

    def test_substituting_garbage_never_decreases(self):
        tokens = tokenize(normalize("Woda i dom, kot i las."))
        lexicon = build_lexicon("woda i dom kot las")
        base = bad_words_ratio(tokens, lexicon)
        for i in range(len(tokens)):
            mutated = list(tokens)
            mutated[i] = piece("xqz", prev=True)  # dangling out-of-lexicon junk
            assert bad_words_ratio(mutated, lexicon) >= base


class TestMetreStats:
    def test_quatrain_rate_is_one(self):
        hist, rate = metre_stats("\n".join(QUATRAIN))
        assert rate == 1.0
        assert hist == {13: 4}

    def test_empty_text(self):
        assert metre_stats("") == ({}, 0.0)

    def test_single_13_line(self):
        hist, rate = metre_stats(QUATRAIN[0])
        assert hist == {13: 1} and rate == 1.0

    def test_mixed_lines(self):
        hist, rate = metre_stats("Kot.\n\n" + QUATRAIN[1])
        assert hist == {1: 1, 13: 1}
        assert rate == 0.5

    def test_demo_corpus_is_mostly_alexandrine(self, demo_corpus):
        _, rate = metre_stats(demo_corpus)
        assert rate >= 0.95


class TestCompressionRatio:
    def test_single_short_word(self):
        assert compression_ratio("kot") == pytest.approx(3.0)

    def test_newlines_only(self):
        assert compression_ratio("\n\n") == pytest.approx(1.0)

    def test_corpus_in_paper_band(self, demo_corpus):
        assert 2.5 <= compression_ratio(demo_corpus) <= 4.0

    def test_multicharacter_words_compress(self):
        assert compression_ratio("zdrowie moje") > 1.0

    def test_empty_text_rejected(self):
        with pytest.raises(ValueError):
            compression_ratio("")


class TestMeanStepEntropy:
    def test_uniform(self):
        assert mean_step_entropy([np.full(8, 1 / 8)] * 3) == pytest.approx(math.log(8))

    def test_one_hot(self):
        q = np.zeros(5)
        q[2] = 1.0
        assert mean_step_entropy([q, q]) == 0.0

    def test_empty(self):
        assert mean_step_entropy([]) == 0.0


class TestReportFormat:
    def make_report(self):
        return MetricsReport(
            label="subword", loss_series=[2.0, 1.0],
            bad_words_series=[0.5, 0.1], metre_histogram={13: 7, 11: 1},
            alexandrine_rate=0.875, compression_ratio=2.9,
            entropy_by_temperature={0.8: 1.2, 0.2: 0.4, 1.4: 2.0})

    def test_header_and_values_block(self):
        text = format_report([self.make_report()])
        assert text.startswith(REPORT_HEADER)
        assert "[values]" in text
        assert "subword.loss.2=1.000000" in text
        assert "subword.alexandrine_rate=0.875000" in text
        assert "subword.metre.13=7" in text

    def test_write_report_and_series(self, tmp_path):
        write_report(tmp_path / "r.txt", [self.make_report()], notes=["hello"])
        content = (tmp_path / "r.txt").read_text(encoding="utf-8")
        assert "note: hello" in content

        write_series(tmp_path / "s.tsv", [0.5, 0.25])
        assert (tmp_path / "s.tsv").read_text() == "1\t0.500000\n2\t0.250000\n"

    def test_deterministic_bytes(self):
        a = format_report([self.make_report()])
        b = format_report([self.make_report()])
        assert a == b
