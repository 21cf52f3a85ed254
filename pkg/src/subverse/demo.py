"""Deterministic demo corpus: 13-syllable Polish verse from a fixed word bank.

The original training text is not bundled, so tests and CLI examples build a
stand-in corpus of genuine Polish words arranged into alexandrine lines
(every verse line sums to exactly 13 vowel nuclei under the segmenter's
counting rule).  Occasional all-caps heading lines mimic book headers.

    python -m subverse.demo --lines 2600 --out corpus.txt
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .segmenter import count_vowel_nuclei

WORD_BANK = (
    # function words and short forms
    "i a w z o u na do od po za ze we bez dla nad pod przed przez przy się "
    "nie tak jak już tu tam ten ta to te gdy gdzie kto co czy lecz ale oraz "
    "albo ani niż więc bo by niech oto wśród obok między także tylko znów "
    "dziś jutro zawsze nigdy często razem prawie ty my wy on ona oni "
    # nouns
    "ojczyzna zdrowie piękność ozdoba pole las bór dąb brzoza lipa wierzba "
    "trawa łąka rzeka struga woda rosa chmura niebo słońce księżyc gwiazda "
    "zorza świt zmierzch wieczór ranek noc dzień wiosna lato jesień zima "
    "śnieg deszcz wiatr burza grzmot cisza głos echo pieśń piosenka muzyka "
    "dźwięk słowo mowa język serce dusza myśl pamięć marzenie sen oko oczy "
    "ręka dłoń ramię głowa włosy twarz uśmiech łza żal radość smutek "
    "tęsknota miłość przyjaźń nadzieja wiara prawda honor sława chwała "
    "zwycięstwo wojna pokój szabla strzelba tarcza zbroja rycerz żołnierz "
    "hetman wojsko szlachta zamek dwór dworek ganek komnata izba stół ława "
    "okno drzwi próg dach ściana ogród sad pszczoła ptak skowronek słowik "
    "bocian żuraw sokół orzeł jastrząb sarna jeleń niedźwiedź wilk lis "
    "zając koń rumak pies chart kot krowa owca gęś kaczka kura ryba szczupak "
    "okoń komar mucha motyl kwiat róża fiołek mak chaber kłos zboże żyto "
    "pszenica owies jęczmień grzyb rydz borowik malina jagoda poziomka "
    "orzech jabłko grusza wiśnia czereśnia miód chleb mleko ser masło bigos "
    "żur krupnik wino piwo herbata droga ścieżka most brama wieża kościół "
    "dzwon ołtarz krzyż cmentarz mogiła pan pani panna panicz sędzia rejent "
    "wojski podkomorzy stolnik cześnik klucznik gospodarz gość sąsiad brat "
    "siostra ojciec matka syn córka dziad wnuk stryj wuj ciotka rodzina "
    "naród kraj ziemia granica świat strona okolica powiat wieś miasto "
    "stolica ulica rynek ratusz karczma młyn kuźnia stodoła spichlerz obora "
    # verbs
    "być mieć widzieć patrzeć słuchać mówić rzec śpiewać grać tańczyć biegać "
    "chodzić jechać lecieć płynąć stać siedzieć leżeć spać śnić budzić "
    "wstawać padać rosnąć kwitnąć szumieć szeptać wołać krzyczeć milczeć "
    "myśleć wierzyć kochać tęsknić płakać cieszyć czekać szukać znaleźć "
    "zgubić dawać brać nieść wieźć prowadzić wracać witać żegnać prosić "
    "dziękować pisać czytać uczyć pamiętać zapomnieć strzelać polować łowić "
    "orać siać kosić zbierać gotować piec jeść pić pachnieć błyszczeć "
    "świecić gasnąć płonąć ogrzewać wiać huczeć dzwonić bić walczyć bronić "
    # adjectives and adverbs
    "dobry zły piękny brzydki wielki mały stary młody nowy dawny długi "
    "krótki wysoki niski szeroki wąski jasny ciemny biały czarny czerwony "
    "zielony niebieski złoty srebrny szary modry cichy głośny szybki wolny "
    "mocny słaby twardy miękki ciepły zimny gorący chłodny suchy mokry "
    "świeży słodki gorzki smaczny zdrowy chory wesoły smutny dumny skromny "
    "mądry głupi odważny wierny bogaty biedny hojny pełny pusty bliski "
    "daleki rodzinny ojczysty polski litewski leśny polny wodny nocny "
    "dzienny wiosenny letni jesienny zimowy poranny wieczorny święty boży "
    "ludzki pański wiejski miejski "
    # consonant-heavy monosyllables keep the char/sub-word ratio realistic
    "zmierzch chrzest wstrząs chrząszcz barszcz błysk zgiełk kształt pierś "
    "wiatr świst gwizd wrzask trzask blask brzeg brzask krzyk wierzch czas czyn"
).split()

PROPER_NOUNS = (
    "litwa warszawa wilno soplicowo tadeusz zosia telimena gerwazy protazy "
    "jacek maciej wojciech mickiewicz niemen wisła"
).split()

HEADING_ORDINALS = (
    "pierwsza druga trzecia czwarta piąta szósta siódma ósma dziewiąta "
    "dziesiąta jedenasta dwunasta"
).split()

LINE_SYLLABLES = 13
_END_PUNCT = (".", ",", ";", "!", "?", ":")
_END_WEIGHTS = (0.28, 0.30, 0.18, 0.10, 0.08, 0.06)


def _by_syllables(words) -> dict[int, tuple[list[str], np.ndarray]]:
    buckets: dict[int, list[str]] = {}
    for w in words:
        buckets.setdefault(count_vowel_nuclei(w), []).append(w)
    weighted = {}
    for n, bucket in buckets.items():
        # Favor longer spellings so the char/sub-word ratio of the corpus
        # lands near the ~3x seen for literary Polish.
        weights = np.array([len(w) ** 3 for w in bucket], dtype=np.float64)
        weighted[n] = (bucket, weights / weights.sum())
    return weighted


def _build_line(rng: np.random.Generator, buckets: dict[int, tuple[list[str], np.ndarray]],
                proper: list[str]) -> str:
    remaining = LINE_SYLLABLES
    words: list[str] = []
    while remaining > 0:
        choices = np.array([n for n in buckets if 0 < n <= remaining])
        weights = choices.astype(np.float64) ** -0.3
        n = int(rng.choice(choices, p=weights / weights.sum()))
        bucket, p = buckets[n]
        word = bucket[int(rng.choice(len(bucket), p=p))]
        if rng.random() < 0.05:
            cand = [w for w in proper if count_vowel_nuclei(w) == n]
            if cand:
                word = cand[int(rng.integers(len(cand)))].capitalize()
        words.append(word)
        remaining -= n

    parts = [words[0][0].upper() + words[0][1:]]
    for word in words[1:]:
        if rng.random() < 0.10:
            parts[-1] = parts[-1] + ","
        elif rng.random() < 0.03:
            parts.append("—")
        if rng.random() < 0.02:
            word = "„" + word + "”"
        parts.append(word)
    end = _END_PUNCT[int(rng.choice(len(_END_PUNCT), p=_END_WEIGHTS))]
    return " ".join(parts) + end


def _heading(rng: np.random.Generator) -> str:
    ordinal = HEADING_ORDINALS[int(rng.integers(len(HEADING_ORDINALS)))]
    return f"KSIĘGA {ordinal.upper()}."


def build_corpus(n_lines: int = 2600, seed: int = 0, headings: bool = True) -> str:
    """Deterministic verse corpus; roughly 45-50 bytes per line."""
    rng = np.random.default_rng(seed)
    buckets = _by_syllables(WORD_BANK)
    lines = []
    for i in range(n_lines):
        if headings and i % 45 == 0:
            lines.append(_heading(rng))
        lines.append(_build_line(rng, buckets, list(PROPER_NOUNS)))
    return "\n".join(lines) + "\n"


def build_overfit_corpus(block_lines: int = 30, repeats: int = 5, seed: int = 7) -> str:
    """Small, repetitive corpus for the memorization run.

    A block of verse built from a reduced word bank is repeated verbatim, so
    a small model can drive the loss near zero.
    """
    rng = np.random.default_rng(seed)
    buckets = _by_syllables(WORD_BANK[:90])
    block = [_build_line(rng, buckets, list(PROPER_NOUNS[:4])) for _ in range(block_lines)]
    return "\n".join(block * repeats) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--lines", type=int, default=2600)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--no-headings", action="store_true")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    args = parser.parse_args(argv)
    text = build_corpus(args.lines, args.seed, headings=not args.no_headings)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
