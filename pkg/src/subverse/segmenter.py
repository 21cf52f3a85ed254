"""Rule-based Polish sub-word segmentation with marker tokens.

Text is converted to a stream of tokens: syllable-like word pieces carrying
``++``/``--`` connector flags, standalone punctuation, and special markers
(``_up_``, ``_cap_``, ``_eol_``, ``_unk_``, plus ``_sp_`` for explicit spaces
in character mode).  The conversion is deterministic and, for conventionally
typeset text, exactly reversible via :func:`detokenize`.

Syllable boundaries follow a vowel-nucleus rule: the nuclei are
``a ą e ę i o ó u y``, except that ``i`` directly before another vowel is a
palatalization marker and merges into the following nucleus.  Consonant
clusters between nuclei are split by onset maximization against a table of
clusters that may start a Polish syllable (any single consonant always may).
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass, replace

VOWELS = frozenset("aąeęioóuy")

#: Multi-letter consonant clusters accepted as syllable onsets.  Single
#: consonants are always legal and are not listed.
ONSET_CLUSTERS = frozenset({
    "bl", "bł", "br", "ch", "chl", "chł", "chr", "chrz", "cz", "ćm", "ćw",
    "dl", "dł", "dn", "dr", "drz", "dw", "dz", "dzw", "dź", "dż",
    "fl", "fr", "gl", "gł", "gn", "gr", "grz", "gw", "hr",
    "kl", "kł", "kn", "kr", "krz", "kt", "kw",
    "ml", "mł", "mn", "mr", "pl", "pł", "pn", "pr", "prz", "ps", "pt",
    "rz", "sk", "skl", "skł", "skr", "sł", "sm", "sn",
    "sp", "spl", "spł", "spr", "st", "str", "sw", "sz", "szcz", "szk",
    "szl", "szn", "szp", "szt", "szw",
    "śc", "ść", "śl", "śm", "śn", "śp", "śr", "św",
    "tk", "tl", "tł", "tr", "trz", "tw",
    "wl", "wł", "wn", "wr", "wrz",
    "zb", "zd", "zdr", "zg", "zl", "zł", "zm", "zn", "zr", "zw",
    "źr", "żł", "żm", "żn", "żw",
})

#: Strippable prefixes, scanned in order; "nie" always first.
DEFAULT_PREFIXES = (
    "nie", "naj", "przed", "prze", "przy", "roz", "bez",
    "nad", "pod", "wy", "za", "po", "do", "od", "na",
)

UP = "_up_"
CAP = "_cap_"
EOL = "_eol_"
UNK = "_unk_"
SP = "_sp_"
SPECIAL_SURFACES = frozenset({UP, CAP, EOL, UNK, SP})

#: Placeholder glyph used when rendering the unknown-token marker.
UNK_GLYPH = "\N{REPLACEMENT CHARACTER}"

# Punctuation spacing classes used by detokenize.  Anything not listed is
# rendered with a space on both sides (em-dash style).
ATTACH_LEFT = frozenset(".,;:!?)]}…”»%")
ATTACH_RIGHT = frozenset("([{„«")
ATTACH_BOTH = frozenset("-/'")

_ALNUM_OR_PUNCT = re.compile(r"[^\W_]+|\S", re.UNICODE)
_HSPACE = re.compile(r"[^\S\n]+")


class TokenKind(enum.Enum):
    SPECIAL = "special"
    PIECE = "piece"
    PUNCT = "punct"


@dataclass(frozen=True)
class Token:
    """One unit of the segmented stream.

    Pieces carry connector flags: ``joins_prev`` means the piece glues onto
    the previous token, ``joins_next`` onto the following one.  Specials and
    punctuation never carry flags.
    """

    kind: TokenKind
    surface: str
    joins_prev: bool = False
    joins_next: bool = False

    @staticmethod
    def special(surface: str) -> "Token":
        if surface not in SPECIAL_SURFACES:
            raise ValueError(f"not a special token spelling: {surface!r}")
        return Token(TokenKind.SPECIAL, surface)

    @staticmethod
    def piece(surface: str, joins_prev: bool = False, joins_next: bool = False) -> "Token":
        return Token(TokenKind.PIECE, surface, joins_prev, joins_next)

    @staticmethod
    def punct(surface: str) -> "Token":
        return Token(TokenKind.PUNCT, surface)


T_UP = Token.special(UP)
T_CAP = Token.special(CAP)
T_EOL = Token.special(EOL)
T_UNK = Token.special(UNK)
T_SP = Token.special(SP)


@dataclass(frozen=True)
class SegmenterConfig:
    """Rule tables and mode switch for the segmenter.

    ``legal_onsets`` holds multi-letter clusters only; every single consonant
    is accepted as an onset by construction.
    """

    prefix_list: tuple[str, ...] = DEFAULT_PREFIXES
    legal_onsets: frozenset[str] = ONSET_CLUSTERS
    min_core_vowels: int = 2
    mode: str = "subword"  # "subword" | "char"

    def __post_init__(self):
        if self.mode not in ("subword", "char"):
            raise ValueError(f"unknown segmenter mode: {self.mode!r}")
        if self.mode == "subword":
            if not self.prefix_list:
                raise ValueError("prefix_list must be non-empty in subword mode")
            if "nie" not in self.prefix_list:
                raise ValueError('prefix_list must contain "nie"')
        if self.min_core_vowels < 1:
            raise ValueError("min_core_vowels must be >= 1")


DEFAULT_CONFIG = SegmenterConfig()
CHAR_CONFIG = replace(DEFAULT_CONFIG, mode="char")


def config_for_mode(mode: str) -> SegmenterConfig:
    return CHAR_CONFIG if mode == "char" else DEFAULT_CONFIG


def normalize(text: str) -> str:
    """Canonicalize raw text: NFC, ``\\n`` line endings, single spaces.

    Runs of horizontal whitespace collapse to one space and every line is
    stripped of leading/trailing spaces.  Total: never raises.
    """
    text = unicodedata.normalize("NFC", text)
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    lines = [_HSPACE.sub(" ", line).strip(" ") for line in text.split("\n")]
    return "\n".join(lines)


def nucleus_spans(word: str) -> list[tuple[int, int]]:
    """Return (start, end) index pairs of the vowel nuclei in ``word``.

    An ``i`` immediately before another vowel does not open its own nucleus;
    it extends the nucleus of the vowel it palatalizes.
    """
    spans = []
    i, n = 0, len(word)
    while i < n:
        if word[i] in VOWELS:
            start = i
            while word[i] == "i" and i + 1 < n and word[i + 1] in VOWELS:
                i += 1
            spans.append((start, i + 1))
        i += 1
    return spans


def count_vowel_nuclei(word: str) -> int:
    return len(nucleus_spans(word))


def _is_legal_onset(cluster: str, onsets: frozenset[str]) -> bool:
    if len(cluster) == 1:
        return cluster not in VOWELS
    return cluster in onsets


def syllabify(word: str, cfg: SegmenterConfig = DEFAULT_CONFIG) -> list[str]:
    """Split a lowercase alphabetic word into syllable-like pieces.

    Boundaries fall before the longest legal onset of each intervocalic
    consonant cluster.  A word without any nucleus stays whole.  The pieces
    always concatenate back to ``word``.
    """
    if not word:
        raise ValueError("cannot syllabify an empty word")
    if not word.isalpha():
        raise ValueError(f"syllabify expects letters only, got {word!r}")
    if word != word.lower():
        raise ValueError(f"syllabify expects lowercase input, got {word!r}")
    spans = nucleus_spans(word)
    if len(spans) <= 1:
        return [word]
    cuts = []
    for (_, prev_end), (next_start, _) in zip(spans, spans[1:]):
        cluster = word[prev_end:next_start]
        onset_len = 0
        for take in range(len(cluster), 0, -1):
            if _is_legal_onset(cluster[-take:], cfg.legal_onsets):
                onset_len = take
                break
        cuts.append(next_start - onset_len)
    pieces = []
    prev = 0
    for cut in cuts:
        pieces.append(word[prev:cut])
        prev = cut
    pieces.append(word[prev:])
    return pieces


def stem_prefixes(word: str, cfg: SegmenterConfig = DEFAULT_CONFIG) -> tuple[list[str], str]:
    """Greedily strip up to two known prefixes off ``word``.

    A prefix comes off only when the remaining core keeps at least
    ``min_core_vowels`` nuclei, so short stems like "niebo" stay intact.
    """
    prefixes: list[str] = []
    core = word
    for _ in range(2):
        for pref in cfg.prefix_list:
            if core.startswith(pref) and len(core) > len(pref):
                rest = core[len(pref):]
                if count_vowel_nuclei(rest) >= cfg.min_core_vowels:
                    prefixes.append(pref)
                    core = rest
                    break
        else:
            break
    return prefixes, core


def _word_pieces(lowered: str, cfg: SegmenterConfig) -> list[str]:
    if cfg.mode == "char":
        return list(lowered)
    if lowered.isalpha():
        prefixes, core = stem_prefixes(lowered, cfg)
        return prefixes + syllabify(core, cfg)
    # Words with digits (years, numerals) are kept whole: they have no
    # syllable structure and must survive the roundtrip.
    return [lowered]


def _case_marker(word: str) -> Token | None:
    letters = sum(ch.isalpha() for ch in word)
    if letters == 0:
        return None
    if word.isupper() and letters >= 2:
        return T_UP
    if word != word.lower():
        # Single capitals and mixed-case words both restore as capitalized.
        return T_CAP
    return None


def _emit_word(tokens: list[Token], word: str, cfg: SegmenterConfig) -> None:
    marker = _case_marker(word)
    if marker is not None:
        tokens.append(marker)
    pieces = _word_pieces(word.lower(), cfg)
    last = len(pieces) - 1
    for k, piece in enumerate(pieces):
        tokens.append(Token.piece(piece, joins_prev=k > 0, joins_next=k < last))


def tokenize(text: str, cfg: SegmenterConfig = DEFAULT_CONFIG) -> list[Token]:
    """Convert normalized text into the annotated token stream."""
    tokens: list[Token] = []
    lines = text.split("\n")
    for li, line in enumerate(lines):
        pos = 0
        for m in _ALNUM_OR_PUNCT.finditer(line):
            if cfg.mode == "char":
                tokens.extend([T_SP] * (m.start() - pos))
            chunk = m.group()
            if chunk[0].isalnum():
                _emit_word(tokens, chunk, cfg)
            else:
                tokens.append(Token.punct(chunk))
            pos = m.end()
        if cfg.mode == "char":
            tokens.extend([T_SP] * (len(line) - pos))
        if li < len(lines) - 1:
            tokens.append(T_EOL)
    return tokens


def detokenize(tokens: list[Token]) -> str:
    """Render any token sequence back to text.  Total: garbage never raises.

    Connector pairs glue pieces into words, ``_cap_``/``_up_`` restore case
    of the next word, ``_eol_`` becomes a newline and dangling connectors are
    silently dropped with a space inserted.
    """
    out: list[str] = []
    glue_next = True  # suppress the leading space for the next atom
    pending_case: str | None = None
    run: list[Token] = []

    def append(atom: str, spaced: bool) -> None:
        nonlocal glue_next
        if spaced and not glue_next:
            out.append(" ")
        out.append(atom)
        glue_next = False

    def flush_run() -> None:
        nonlocal pending_case
        if not run:
            return
        word = "".join(t.surface for t in run)
        if pending_case == "up":
            word = word.upper()
        elif pending_case == "cap" and word:
            word = word[0].upper() + word[1:]
        pending_case = None
        run.clear()
        append(word, spaced=True)

    for tok in tokens:
        if tok.kind is TokenKind.PIECE:
            if run and run[-1].joins_next and tok.joins_prev:
                run.append(tok)
            else:
                flush_run()
                run.append(tok)
            continue
        flush_run()
        if tok.kind is TokenKind.PUNCT:
            ch = tok.surface
            if ch in ATTACH_LEFT:
                out.append(ch)
                glue_next = False
            elif ch in ATTACH_RIGHT:
                append(ch, spaced=True)
                glue_next = True
            elif ch in ATTACH_BOTH:
                out.append(ch)
                glue_next = True
            else:
                append(ch, spaced=True)
        elif tok.surface == EOL:
            out.append("\n")
            glue_next = True
        elif tok.surface == SP:
            out.append(" ")
            glue_next = True
        elif tok.surface == UNK:
            append(UNK_GLYPH, spaced=True)
        elif tok.surface == CAP:
            pending_case = "cap"
        elif tok.surface == UP:
            pending_case = "up"
    flush_run()
    return "".join(out)


def count_line_syllables(line: str) -> int:
    """Total vowel nuclei of the words in one line; punctuation counts 0."""
    if "\n" in line:
        raise ValueError("count_line_syllables expects a single line")
    total = 0
    for m in _ALNUM_OR_PUNCT.finditer(line):
        chunk = m.group()
        if chunk[0].isalnum():
            total += count_vowel_nuclei(chunk.lower())
    return total


# ---------------------------------------------------------------------------
# Token-stream text format: tokens separated by whitespace, specials spelled
# literally, connectors inline ("li++", "--two").  The writer puts a newline
# after each _eol_ for readability; the parser accepts any whitespace.
# ---------------------------------------------------------------------------

def serialize_token(tok: Token) -> str:
    if tok.kind is TokenKind.PIECE:
        return ("--" if tok.joins_prev else "") + tok.surface + ("++" if tok.joins_next else "")
    return tok.surface


def parse_token(text: str) -> Token:
    """Parse one serialized token.  Malformed spellings fold to ``_unk_``."""
    if text in SPECIAL_SURFACES:
        return Token.special(text)
    joins_prev = text.startswith("--")
    joins_next = text.endswith("++")
    core = text[2 if joins_prev else 0: len(text) - 2 if joins_next else len(text)]
    if not core:
        return T_UNK
    if len(core) == 1 and not core.isalnum():
        if joins_prev or joins_next:
            return T_UNK
        return Token.punct(core)
    if "+" in core or "-" in core or any(ch.isspace() for ch in core):
        return T_UNK
    return Token.piece(core, joins_prev, joins_next)


def serialize_stream(tokens: list[Token]) -> str:
    parts: list[str] = []
    for tok in tokens:
        parts.append(serialize_token(tok))
        parts.append("\n" if tok.surface == EOL and tok.kind is TokenKind.SPECIAL else " ")
    return "".join(parts[:-1]) if parts else ""


def parse_stream(text: str) -> list[Token]:
    return [parse_token(part) for part in text.split()]
