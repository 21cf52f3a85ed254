"""Command-line surface: tokenize, detokenize, train, generate, eval,
compare, inspect-checkpoint.

Exit codes: 0 success, 1 internal error, 2 usage or input error.  Every
command is deterministic given its flags, seed and input files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import checkpoint as ckpt
from . import metrics as met
from . import sampler as smp
from . import segmenter as seg
from . import training as trn
from .corpus import build_vocab, chunk, encode
from .errors import CheckpointError, SubverseError
from .nnet import ModelConfig

SWEEP_TEMPERATURES = (0.2, 0.8, 1.4)

#: Paper-style defaults per segmentation mode: (epochs, hidden, layers).
MODE_DEFAULTS = {"subword": (15, 500, 3), "char": (50, 400, 2)}


class UsageError(SubverseError):
    """Bad input reported with exit code 2."""


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_tokenize(args) -> int:
    text = seg.normalize(_read_text(args.input))
    tokens = seg.tokenize(text, seg.config_for_mode(args.mode))
    stream = seg.serialize_stream(tokens)
    _emit(args, stream + ("\n" if stream and not stream.endswith("\n") else ""))
    return 0


def cmd_detokenize(args) -> int:
    tokens = seg.parse_stream(_read_text(args.input))
    _emit(args, seg.detokenize(tokens))
    return 0


def _scaled(value: int, scale: float, floor: int) -> int:
    return max(floor, round(value * scale))


def _resolve_model_config(args, vocab_size: int) -> ModelConfig:
    epochs, hidden, layers = MODE_DEFAULTS[args.mode]
    epochs = args.epochs if args.epochs is not None else _scaled(epochs, args.scale, 1)
    hidden = args.hidden_size if args.hidden_size is not None else _scaled(hidden, args.scale, 16)
    layers = args.layers if args.layers is not None else layers
    return ModelConfig(
        vocab_size=vocab_size, hidden_size=hidden, n_layers=layers,
        seed=args.seed, learning_rate=args.lr, grad_clip=args.grad_clip,
        epochs=epochs)


def _prepare_corpus(args, mode: str):
    text = seg.normalize(_read_text(args.corpus))
    tokens = seg.tokenize(text, seg.config_for_mode(mode))
    if not tokens:
        raise UsageError(f"corpus {args.corpus} contains no tokens")
    vocab = build_vocab(tokens)
    indices = encode(tokens, vocab)
    chunks = chunk(indices, args.chunk_len)
    if not chunks:
        raise UsageError(
            f"corpus yields 0 chunks of length {args.chunk_len} "
            f"({len(indices)} tokens); use a smaller --chunk-len")
    return text, vocab, indices, chunks


def _train_one(args, mode: str, out_path: Path, label: str):
    text, vocab, indices, chunks = _prepare_corpus(args, mode)
    cfg = _resolve_model_config(args, len(vocab))
    _log(f"[{label}] {len(indices)} tokens, {len(chunks)} chunks, "
         f"vocab {len(vocab)}, hidden {cfg.hidden_size}, "
         f"layers {cfg.n_layers}, epochs {cfg.epochs}")
    evaluator = None
    if args.eval_tokens > 0:
        evaluator = trn.make_bad_words_evaluator(
            vocab, met.build_lexicon(text), indices[:20],
            n_tokens=args.eval_tokens)
    params, report = trn.train(chunks, cfg, evaluator=evaluator,
                               progress=lambda m: _log(f"[{label}] {m}"))
    ckpt.save_checkpoint(params, vocab, cfg, out_path, mode=mode)

    from . import plots
    stem = out_path.parent / out_path.stem
    met.write_series(f"{stem}.loss.tsv", report.loss_series)
    plots.save_series_figure(report.loss_series, f"{stem}.loss.png",
                             "mean loss", f"{label}: training loss")
    if report.bad_words_series:
        met.write_series(f"{stem}.badwords.tsv", report.bad_words_series)
        plots.save_series_figure(report.bad_words_series, f"{stem}.badwords.png",
                                 "bad-words ratio", f"{label}: bad-words ratio")
    return text, vocab, params, cfg, report


def cmd_train(args) -> int:
    out_path = Path(args.out)
    _train_one(args, args.mode, out_path, args.mode)
    print(f"checkpoint written to {out_path}")
    return 0


def cmd_generate(args) -> int:
    params, vocab, _, mode = ckpt.load_checkpoint(args.checkpoint)
    gen_cfg = smp.GenerationConfig(
        prime_text=args.prime, length=args.length,
        temperature=args.temperature, rng_seed=args.seed,
        mode="argmax" if args.argmax else "sample")
    result = smp.generate(params, vocab, gen_cfg, seg.config_for_mode(mode))
    if args.tokens_out:
        _write_text(args.tokens_out, seg.serialize_stream(result.tokens) + "\n")
    _emit(args, result.text + "\n")
    return 0


def _sample_sweep(params, vocab, mode: str, prime: str, length: int, seed: int):
    """Generate one sample per sweep temperature; returns {T: result}."""
    results = {}
    for t in SWEEP_TEMPERATURES:
        gen_cfg = smp.GenerationConfig(prime_text=prime, length=length,
                                       temperature=t, rng_seed=seed)
        results[t] = smp.generate(params, vocab, gen_cfg, seg.config_for_mode(mode))
    return results


def _report_for(label, corpus_text, samples, report=None) -> met.MetricsReport:
    lexicon = met.build_lexicon(corpus_text)
    mid = samples[0.8]
    histogram, rate = met.metre_stats(mid.text)
    return met.MetricsReport(
        label=label,
        loss_series=list(report.loss_series) if report else [],
        bad_words_series=(list(report.bad_words_series) if report else
                          [met.bad_words_ratio(mid.tokens, lexicon)]),
        metre_histogram=histogram,
        alexandrine_rate=rate,
        compression_ratio=met.compression_ratio(corpus_text),
        entropy_by_temperature={t: r.mean_step_entropy() for t, r in samples.items()},
    )


def cmd_eval(args) -> int:
    params, vocab, _, mode = ckpt.load_checkpoint(args.checkpoint)
    corpus_text = seg.normalize(_read_text(args.corpus))
    samples = _sample_sweep(params, vocab, mode, args.prime, args.length, args.seed)
    report = _report_for(f"{mode} model", corpus_text, samples)

    from . import plots
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    met.write_report(f"{prefix}.report.txt", [report])
    plots.save_metre_figure(report.metre_histogram, f"{prefix}.metre.png",
                            "generated sample metre")
    plots.save_entropy_figure(report.entropy_by_temperature,
                              f"{prefix}.entropy.png", "entropy vs temperature")
    for t, result in samples.items():
        _write_text(f"{prefix}.sample_T{t:g}.txt", result.text + "\n")
    print(f"report written to {prefix}.report.txt")
    return 0


def cmd_compare(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports = []
    rates = {}
    for mode in ("subword", "char"):
        args.mode = mode
        text, vocab, params, cfg, train_report = _train_one(
            args, mode, out_dir / f"{mode}.ckpt", mode)
        samples = _sample_sweep(params, vocab, mode, args.prime,
                                args.sample_length, args.seed)
        report = _report_for(mode, text, samples, train_report)
        reports.append(report)
        rates[mode] = report.alexandrine_rate
        from . import plots
        plots.save_metre_figure(report.metre_histogram,
                                out_dir / f"{mode}.metre.png",
                                f"{mode}: generated metre")
        for t, result in samples.items():
            _write_text(out_dir / f"{mode}.sample_T{t:g}.txt", result.text + "\n")
    notes = [
        "13-syllable rate of the T=0.8 sample: "
        f"subword {rates['subword']:.4f} vs char {rates['char']:.4f}",
        "relative sample quality is reported for inspection, not asserted",
    ]
    met.write_report(out_dir / "report.txt", reports, notes)
    print(f"comparison written to {out_dir / 'report.txt'}")
    return 0


def cmd_inspect(args) -> int:
    params, vocab, cfg, mode = ckpt.load_checkpoint(args.checkpoint)
    n_params = sum(a.size for a in params.arrays())
    print(f"format version: {ckpt.VERSION}")
    print(f"mode: {mode}")
    print(f"vocab size: {len(vocab)}")
    print(f"hidden size: {cfg.hidden_size}")
    print(f"layers: {cfg.n_layers}")
    print(f"seed: {cfg.seed}")
    print(f"learning rate: {cfg.learning_rate:g}")
    print(f"grad clip: {cfg.grad_clip:g}")
    print(f"epochs: {cfg.epochs}")
    print(f"parameters: {n_params}")
    print("crc: ok")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_train_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--hidden-size", type=int, default=None)
    p.add_argument("--layers", type=int, default=None)
    p.add_argument("--chunk-len", type=int, default=400)
    p.add_argument("--lr", type=float, default=2e-3)
    p.add_argument("--grad-clip", type=float, default=5.0)
    p.add_argument("--scale", type=float, default=1.0,
                   help="shrink epochs/hidden size for desk-scale runs")
    p.add_argument("--eval-tokens", type=int, default=2000,
                   help="per-epoch bad-words sample size (0 disables)")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="subverse",
        description="Sub-word GRU language model for Polish verse.")
    subs = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    def sub(name, func, **kwargs):
        p = subs.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--config", default=None,
                       help="key=value file; command-line flags override")
        p.add_argument("--seed", type=int, default=0)
        registry[name] = p
        return p

    p = sub("tokenize", cmd_tokenize, help="text file -> token stream")
    p.add_argument("input")
    p.add_argument("--mode", choices=("subword", "char"), default="subword")
    p.add_argument("--out", default=None)

    p = sub("detokenize", cmd_detokenize, help="token stream -> text")
    p.add_argument("input")
    p.add_argument("--out", default=None)

    p = sub("train", cmd_train, help="train a model on a corpus")
    p.add_argument("corpus")
    p.add_argument("--mode", choices=("subword", "char"), default="subword")
    p.add_argument("--out", default="model.ckpt")
    _add_train_flags(p)

    p = sub("generate", cmd_generate, help="sample text from a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--prime", default=smp.DEFAULT_PRIME)
    p.add_argument("--length", type=int, default=200)
    p.add_argument("--temperature", type=float, default=0.8)
    p.add_argument("--argmax", action="store_true")
    p.add_argument("--tokens-out", default=None,
                   help="also write the raw token stream here")
    p.add_argument("--out", default=None)

    p = sub("eval", cmd_eval, help="metrics report for a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--prime", default=smp.DEFAULT_PRIME)
    p.add_argument("--length", type=int, default=1000,
                   help="tokens per temperature sample")
    p.add_argument("--out", default="eval")

    p = sub("compare", cmd_compare, help="train sub-word and char models side by side")
    p.add_argument("corpus")
    p.add_argument("--out", default="compare")
    p.add_argument("--prime", default=smp.DEFAULT_PRIME)
    p.add_argument("--sample-length", type=int, default=400)
    _add_train_flags(p)

    p = sub("inspect-checkpoint", cmd_inspect, help="print checkpoint header")
    p.add_argument("checkpoint")

    return parser, registry


def _coerce(action: argparse.Action, raw: str):
    if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if action.type is not None:
        return action.type(raw)
    return raw


def load_config_file(path) -> dict[str, str]:
    """Flat key=value UTF-8 file; blank lines and # comments ignored."""
    values = {}
    for ln, line in enumerate(_read_text(path).splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(argv, registry) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return
    values = load_config_file(known.config)
    command = next((a for a in rest if not a.startswith("-")), None)
    target = registry.get(command)
    if target is None:
        return
    actions = {a.dest: a for a in target._actions}
    unknown = [k for k in values if k not in actions]
    if unknown:
        raise UsageError(f"unknown config keys for '{command}': {', '.join(unknown)}")
    target.set_defaults(**{k: _coerce(actions[k], v) for k, v in values.items()})


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()
    try:
        _apply_config(argv, registry)
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
        return code if isinstance(code, int) else 2
    except (UsageError, CheckpointError) as exc:
        print(f"subverse: error: {exc}", file=sys.stderr)
        return 2
    except SubverseError as exc:
        print(f"subverse: internal error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - last resort
        print(f"subverse: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
