"""Command-line entry point.

Subcommands cover one-shot disambiguation, the evaluation harness
(cross-validation, learning curves), the sampling loop with a gold-label
oracle, branch-length fitting and evaluation, co-occurrence extraction,
synthetic corpus generation, and the HTTP service.  Report commands write
tab-separated series files and, unless ``--no-plot`` is given, PNG figures
next to them.

Exit status: 0 success, 1 usage error, 2 data/configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import build_config, load_config_file
from .corpus import (build_database, dump_cooc, dump_examples, dump_lexicon,
                     extract_cooc, load_cooc, load_examples, load_lexicon)
from .engine import Disambiguator, EngineConfig, propagate_context
from .errors import ConfigError, FormatError, SensekitError
from .evaluate import (coverage_accuracy_curve, cross_validate, learning_curve,
                       load_sense_distances, train_test_split)
from .sampler import STRATEGIES, SamplerState, gold_oracle, run_loop
from .sblfit import (build_equations, dump_model, eval_inequality, load_model,
                     solve_partitioned)
from .similarity import IcMeasure, SblMeasure, TableMeasure, VsmMeasure
from .synth import SynthSpec, generate_synthetic
from .thesaurus import dump_thesaurus, load_thesaurus

STRATEGY_FLAGS = {"tu": "tu", "us": "uncertainty", "cbs": "committee",
                  "random": "random", "bootstrap": "bootstrap"}


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage problems; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Shared loading helpers
# ---------------------------------------------------------------------------


def _read_text(path) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_word_counts(path) -> dict[str, int]:
    counts: dict[str, int] = {}
    for number, line in enumerate(_read_text(path).splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split("\t")
        if len(parts) != 2:
            raise FormatError("expected word<TAB>count", str(path), number)
        try:
            counts[parts[0]] = int(parts[1])
        except ValueError:
            raise FormatError(f"bad count {parts[1]!r}", str(path), number) from None
    return counts


def _load_thesaurus_arg(args):
    if getattr(args, "thesaurus", None) is None:
        return None
    return load_thesaurus(_read_text(args.thesaurus), path=str(args.thesaurus))


def _build_measure(args, thesaurus):
    name = args.measure
    if name == "table":
        if thesaurus is None:
            raise ConfigError("the table measure requires --thesaurus")
        return TableMeasure(thesaurus)
    if name == "vsm":
        if getattr(args, "cooc", None) is None:
            raise ConfigError("the vsm measure requires --cooc")
        return VsmMeasure(load_cooc(_read_text(args.cooc), path=str(args.cooc)))
    if name == "ic":
        if thesaurus is None:
            raise ConfigError("the ic measure requires --thesaurus")
        counts = _load_word_counts(args.word_counts) if getattr(args, "word_counts", None) else {}
        return IcMeasure(thesaurus, counts)
    if name == "sbl":
        if thesaurus is None or getattr(args, "sbl_model", None) is None:
            raise ConfigError("the sbl measure requires --thesaurus and --sbl-model")
        model = load_model(_read_text(args.sbl_model), path=str(args.sbl_model))
        return SblMeasure(model, thesaurus)
    raise ConfigError(f"unknown measure {name!r}")


def _engine_config(args) -> EngineConfig:
    return EngineConfig(mode=args.mode, alpha=args.alpha, lam=args.lam,
                        smoothing_level=args.smoothing_level)


def _add_measure_flags(p):
    p.add_argument("--measure", default="table",
                   choices=("table", "vsm", "ic", "sbl"),
                   help="word-similarity measure")
    p.add_argument("--cooc", help="co-occurrence file for the vsm measure")
    p.add_argument("--sbl-model", help="branch-length model file for the sbl measure")
    p.add_argument("--word-counts", help="word<TAB>count file for the ic measure")


def _add_engine_flags(p):
    p.add_argument("--mode", default="weighted",
                   choices=("weighted", "lexicographic", "unweighted"),
                   help="sense scoring mode")
    p.add_argument("--alpha", type=float, default=1.0,
                   help="case-weight sharpening exponent")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5,
                   help="certainty blend between top score and margin")
    p.add_argument("--smoothing-level", type=int, default=5,
                   help="class level for case-weight generalization")


def _add_sampler_flags(p):
    p.add_argument("--strategy", default="tu", choices=sorted(STRATEGY_FLAGS),
                   help="sampling strategy")
    p.add_argument("--k", type=int, default=1, help="k-best senses for utility")
    p.add_argument("--committee-size", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return str(value)
    return str(value)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_disambiguate(args) -> int:
    lexicon = load_lexicon(_read_text(args.lexicon), path=str(args.lexicon))
    thesaurus = _load_thesaurus_arg(args)
    labeled = (load_examples(_read_text(args.labeled), path=str(args.labeled))
               if args.labeled else [])
    db = build_database(lexicon, labeled)
    measure = _build_measure(args, thesaurus)
    engine = Disambiguator(db, measure, _engine_config(args), thesaurus)
    inputs = load_examples(_read_text(args.input), path=str(args.input))
    results = [(x, engine.interpret(x)) for x in inputs]
    if args.propagate_context:
        results = propagate_context(results)
    for x, interp in results:
        score = interp.scores.get(interp.chosen, 0.0)
        print(f"{x.verb}\t{interp.chosen}\t{_fmt(score)}\t{_fmt(interp.certainty)}")
    return 0


def _metrics_row(label: str, m) -> str:
    cells = [label, str(m.inputs), str(m.decisions), str(m.correct),
             _fmt(m.coverage), _fmt(m.accuracy), _fmt(m.recall), _fmt(m.f())]
    cells.append(_fmt(m.acceptability_mean))
    return "\t".join(cells)


def _cmd_eval_cv(args) -> int:
    lexicon = load_lexicon(_read_text(args.lexicon), path=str(args.lexicon))
    thesaurus = _load_thesaurus_arg(args)
    examples = load_examples(_read_text(args.examples), path=str(args.examples))
    measure = (_build_measure(args, thesaurus)
               if args.classifier == "similarity" else None)
    distances = (load_sense_distances(_read_text(args.distances), path=str(args.distances))
                 if args.distances else None)
    result = cross_validate(
        lexicon, examples, measure, k=args.folds, seed=args.seed,
        classifier=args.classifier, config=_engine_config(args),
        thesaurus=thesaurus, certainty_threshold=args.certainty_threshold,
        rb_threshold=args.rb_threshold, nb_level=args.nb_level,
        distances=distances, acceptability_alpha=args.acceptability_alpha)

    header = "\t".join(("fold", "inputs", "decisions", "correct", "coverage",
                        "accuracy", "recall", "f1", "acceptability"))
    rows = [header]
    for i, report in enumerate(result.fold_reports):
        rows.append(_metrics_row(str(i), report.overall))
    rows.append(_metrics_row("all", result.aggregate.overall))
    table = "\n".join(rows)
    print(table)
    macro = result.aggregate.macro_accuracy
    print(f"macro_accuracy\t{_fmt(macro)}")

    if args.out_dir:
        out = Path(args.out_dir)
        _write(out / "metrics.tsv", table + f"\nmacro_accuracy\t{_fmt(macro)}\n")
        verb_rows = [header.replace("fold", "verb")]
        for verb, m in result.aggregate.per_verb.items():
            verb_rows.append(_metrics_row(verb, m))
        _write(out / "per_verb.tsv", "\n".join(verb_rows) + "\n")
        points = None
        if args.thresholds:
            thresholds = [float(v) for v in args.thresholds.split(",") if v]
            pairs = [(cert, predicted == gold)
                     for _, gold, predicted, cert in result.records
                     if cert is not None and predicted is not None]
            points = coverage_accuracy_curve(pairs, thresholds)
            curve_rows = ["threshold\tcoverage\taccuracy"]
            for p in points:
                curve_rows.append(f"{_fmt(p.threshold)}\t{_fmt(p.coverage)}\t{_fmt(p.accuracy)}")
            _write(out / "coverage_accuracy.tsv", "\n".join(curve_rows) + "\n")
        if not args.no_plot:
            from . import plotting

            plotting.save_accuracy_bars(result.aggregate.per_verb, out / "per_verb.png")
            if points is not None:
                plotting.save_coverage_accuracy(points, out / "coverage_accuracy.png")
    return 0


def _cmd_curve(args) -> int:
    lexicon = load_lexicon(_read_text(args.lexicon), path=str(args.lexicon))
    thesaurus = _load_thesaurus_arg(args)
    examples = load_examples(_read_text(args.examples), path=str(args.examples))
    measure = _build_measure(args, thesaurus)
    if args.test:
        pool = examples
        test = load_examples(_read_text(args.test), path=str(args.test))
    else:
        pool, test = train_test_split(examples, args.test_fraction, args.split_seed)
    strategy = STRATEGY_FLAGS[args.strategy]
    series: dict[str, list[tuple[int, float]]] = {}
    rows = ["strategy\tseed\tn\taccuracy"]
    for offset in range(args.seeds):
        seed = args.seed + offset
        points = learning_curve(
            lexicon, [x for x in pool], test, measure, strategy=strategy,
            config=_engine_config(args), k=args.k,
            committee_size=args.committee_size, seed=seed,
            eval_every=args.eval_every, thesaurus=thesaurus)
        series[f"{args.strategy} seed {seed}"] = points
        for n, accuracy in points:
            rows.append(f"{args.strategy}\t{seed}\t{n}\t{_fmt(accuracy)}")
        print(f"{args.strategy}\tseed {seed}\tfinal accuracy {_fmt(points[-1][1])}")
    if args.out_dir:
        out = Path(args.out_dir)
        _write(out / "curve.tsv", "\n".join(rows) + "\n")
        if not args.no_plot:
            from . import plotting

            plotting.save_learning_curves(series, out / "curve.png")
    return 0


def _cmd_sample(args) -> int:
    if args.oracle == "interactive":
        raise ConfigError("the interactive oracle is served over HTTP; "
                          "run `sensekit serve` and use the annotation UI")
    lexicon = load_lexicon(_read_text(args.lexicon), path=str(args.lexicon))
    thesaurus = _load_thesaurus_arg(args)
    pool = load_examples(_read_text(args.examples), path=str(args.examples))
    measure = _build_measure(args, thesaurus)
    state = SamplerState(lexicon, [], pool, measure,
                         config=_engine_config(args),
                         strategy=STRATEGY_FLAGS[args.strategy], k=args.k,
                         committee_size=args.committee_size, seed=args.seed,
                         thesaurus=thesaurus)
    adoptions = run_loop(state, gold_oracle, steps=args.steps)
    lines = ["step\texample_id\tsense_id"]
    for step, (xid, sid) in enumerate(adoptions):
        lines.append(f"{step}\t{xid}\t{sid}")
    if args.out_dir:
        out = Path(args.out_dir)
        _write(out / "adoptions.tsv", "\n".join(lines) + "\n")
        _write(out / "db.txt", state.db.serialize())
    else:
        print("\n".join(lines))
    print(f"adopted\t{len(adoptions)}\tremaining\t{len(state.pool)}")
    return 0


def _sbl_reference(args, thesaurus):
    reference = argparse.Namespace(
        measure=args.reference, cooc=getattr(args, "cooc", None),
        sbl_model=None, word_counts=getattr(args, "word_counts", None))
    return _build_measure(reference, thesaurus)


def _cmd_fit_sbl(args) -> int:
    thesaurus = load_thesaurus(_read_text(args.thesaurus), path=str(args.thesaurus))
    words = (sorted({w.strip() for w in _read_text(args.words).splitlines() if w.strip()})
             if args.words else thesaurus.words())
    measure = _sbl_reference(args, thesaurus)
    equations = build_equations(thesaurus, words, measure.sim)
    model = solve_partitioned(equations, n=args.subsets, seed=args.seed,
                              all_branches=thesaurus.branch_ids(),
                              nonnegative=args.nonnegative)
    _write(Path(args.out), dump_model(model))
    residual = sum(model.residuals) / len(model.residuals) if model.residuals else 0.0
    print(f"branches\t{len(model.lengths)}\tunresolved\t{len(model.unresolved)}"
          f"\tmean_residual\t{_fmt(residual)}")
    return 0


def _cmd_eval_sbl(args) -> int:
    thesaurus = load_thesaurus(_read_text(args.thesaurus), path=str(args.thesaurus))
    model = load_model(_read_text(args.model), path=str(args.model))
    measure = _sbl_reference(args, thesaurus)
    words = (sorted({w.strip() for w in _read_text(args.words).splitlines() if w.strip()})
             if args.words else None)
    report = eval_inequality(model, thesaurus, measure.sim, args.quadruples,
                             seed=args.seed, words=words, min_gap=args.min_gap)
    print(f"sbl_ratio\t{_fmt(report.sbl_ratio)}")
    print(f"baseline_ratio\t{_fmt(report.baseline_ratio)}")
    print(f"quadruples\t{report.quadruples}")
    return 0


def _cmd_extract_cooc(args) -> int:
    table = extract_cooc(_read_text(args.tagged), genitive=args.genitive,
                         path=str(args.tagged))
    text = dump_cooc(table)
    if args.out:
        _write(Path(args.out), text)
    else:
        print(text, end="")
    return 0


def _cmd_gen_synth(args) -> int:
    cases = {}
    for item in args.cases.split(","):
        marker, sep, share = item.partition("=")
        if not sep or not marker:
            raise ConfigError(f"bad case spec {item!r}; expected marker=overlap")
        try:
            cases[marker.strip()] = float(share)
        except ValueError:
            raise ConfigError(f"bad overlap {share!r} for case {marker!r}") from None
    sizes = tuple(int(v) for v in args.clusters.split(",") if v)
    spec = SynthSpec(cases=cases, cluster_sizes=sizes, senses=args.senses,
                     depth=args.depth, noise=args.noise, test_size=args.test_size,
                     verb=args.verb, seed=args.seed)
    corpus = generate_synthetic(spec)
    out = Path(args.out_dir)
    _write(out / "thesaurus.tsv", dump_thesaurus(corpus.thesaurus))
    _write(out / "lexicon.tsv", dump_lexicon(corpus.lexicon))
    _write(out / "pool.tsv", dump_examples(corpus.pool))
    if corpus.test:
        _write(out / "test.tsv", dump_examples(corpus.test))
    cluster_rows = ["cluster\tsense\tsize\texample_ids"]
    for i, members in enumerate(corpus.clusters):
        ids = ",".join(str(x) for x in members)
        cluster_rows.append(f"{i}\t{corpus.cluster_sense[i]}\t{len(members)}\t{ids}")
    _write(out / "clusters.tsv", "\n".join(cluster_rows) + "\n")
    print(f"pool\t{len(corpus.pool)}\ttest\t{len(corpus.test)}"
          f"\twords\t{len(corpus.thesaurus)}")
    return 0


def _cmd_serve(args) -> int:
    file_values = (load_config_file(_read_text(args.config), path=str(args.config))
                   if args.config else None)
    flag_values = {
        "host": args.host, "port": args.port, "lexicon": args.lexicon,
        "thesaurus": args.thesaurus, "examples": args.examples, "test": args.test,
        "annotation_log": args.annotation_log, "static_dir": args.static_dir,
        "measure": args.measure, "cooc": args.cooc, "sbl_model": args.sbl_model,
        "mode": args.mode, "alpha": args.alpha, "lambda": args.lam,
        "smoothing_level": args.smoothing_level, "strategy": args.strategy,
        "k": args.k, "committee_size": args.committee_size, "seed": args.seed,
    }
    cfg = build_config(file_values, None, flag_values)
    for key in ("lexicon", "examples"):
        if not cfg[key]:
            raise ConfigError(f"serve requires {key!r} (flag, config file, or env)")
    session = build_session(cfg)
    from .service import build_app

    static_dir = cfg["static_dir"]
    if static_dir and not Path(static_dir).is_dir():
        raise ConfigError(f"static_dir {static_dir!r} is not a directory")
    app = build_app(session, static_dir)
    import uvicorn

    uvicorn.run(app, host=cfg["host"], port=int(cfg["port"]))
    return 0


def build_session(cfg: dict):
    """Construct an ApiSession from a merged config mapping."""
    from .service import ApiSession

    lexicon = load_lexicon(_read_text(cfg["lexicon"]), path=str(cfg["lexicon"]))
    thesaurus = None
    if cfg["thesaurus"]:
        thesaurus = load_thesaurus(_read_text(cfg["thesaurus"]), path=str(cfg["thesaurus"]))
    pool = load_examples(_read_text(cfg["examples"]), path=str(cfg["examples"]))
    measure_args = argparse.Namespace(
        measure=cfg["measure"], cooc=cfg["cooc"], sbl_model=cfg["sbl_model"],
        word_counts=None)
    measure = _build_measure(measure_args, thesaurus)
    config = EngineConfig(mode=cfg["mode"], alpha=float(cfg["alpha"]),
                          lam=float(cfg["lambda"]),
                          smoothing_level=int(cfg["smoothing_level"]))
    strategy = STRATEGY_FLAGS.get(cfg["strategy"], cfg["strategy"])
    state = SamplerState(lexicon, [], pool, measure, config=config,
                         strategy=strategy, k=int(cfg["k"]),
                         committee_size=int(cfg["committee_size"]),
                         seed=int(cfg["seed"]), thesaurus=thesaurus)
    test = None
    if cfg["test"]:
        test = load_examples(_read_text(cfg["test"]), path=str(cfg["test"]))
    return ApiSession(state, test=test, log_path=cfg["annotation_log"])


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="sensekit",
                             description="Example-based verb sense disambiguation toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)

    p = sub.add_parser("disambiguate", help="classify case-frame inputs")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--thesaurus")
    p.add_argument("--input", required=True, help="examples file to classify")
    p.add_argument("--labeled", help="additional labeled training examples")
    p.add_argument("--propagate-context", action="store_true",
                   help="share the most certain answer within context groups")
    _add_measure_flags(p)
    _add_engine_flags(p)
    p.set_defaults(func=_cmd_disambiguate)

    p = sub.add_parser("eval-cv", help="k-fold cross-validation report")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--thesaurus")
    p.add_argument("--examples", required=True)
    p.add_argument("--folds", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--classifier", default="similarity",
                   choices=("similarity", "mfs", "rb", "nb", "gold"))
    p.add_argument("--certainty-threshold", type=float)
    p.add_argument("--rb-threshold", type=float, default=0.0)
    p.add_argument("--nb-level", type=int, default=5)
    p.add_argument("--distances", help="sense-distance file for acceptability")
    p.add_argument("--acceptability-alpha", type=float, default=1.0)
    p.add_argument("--thresholds", help="comma-separated certainty thresholds")
    p.add_argument("--out-dir", help="write tsv/png reports here")
    p.add_argument("--no-plot", action="store_true")
    _add_measure_flags(p)
    _add_engine_flags(p)
    p.set_defaults(func=_cmd_eval_cv)

    p = sub.add_parser("curve", help="learning curves under a sampling strategy")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--thesaurus")
    p.add_argument("--examples", required=True, help="labeled pool corpus")
    p.add_argument("--test", help="held-out labeled examples")
    p.add_argument("--test-fraction", type=float, default=0.25)
    p.add_argument("--split-seed", type=int, default=0)
    p.add_argument("--eval-every", type=int, default=1)
    p.add_argument("--seeds", type=int, default=1, help="number of runs")
    p.add_argument("--out-dir")
    p.add_argument("--no-plot", action="store_true")
    _add_sampler_flags(p)
    _add_measure_flags(p)
    _add_engine_flags(p)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("sample", help="run the annotation loop with an oracle")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--thesaurus")
    p.add_argument("--examples", required=True, help="unlabeled pool (gold labels simulate)")
    p.add_argument("--oracle", default="gold", choices=("gold", "interactive"))
    p.add_argument("--steps", type=int, help="stop after this many adoptions")
    p.add_argument("--out-dir", help="write adoptions.tsv and db.txt here")
    _add_sampler_flags(p)
    _add_measure_flags(p)
    _add_engine_flags(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("fit-sbl", help="fit per-branch lengths to a similarity")
    p.add_argument("--thesaurus", required=True)
    p.add_argument("--words", help="restrict fitting to these words (one per line)")
    p.add_argument("--reference", default="vsm", choices=("table", "vsm", "ic"))
    p.add_argument("--cooc")
    p.add_argument("--word-counts")
    p.add_argument("--subsets", type=int, default=15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nonnegative", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fit_sbl)

    p = sub.add_parser("eval-sbl", help="inequality preservation of a fitted model")
    p.add_argument("--thesaurus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--words")
    p.add_argument("--reference", default="vsm", choices=("table", "vsm", "ic"))
    p.add_argument("--cooc")
    p.add_argument("--word-counts")
    p.add_argument("--quadruples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-gap", type=float, default=0.0)
    p.set_defaults(func=_cmd_eval_sbl)

    p = sub.add_parser("extract-cooc", help="tuples from a POS-tagged corpus")
    p.add_argument("--tagged", required=True)
    p.add_argument("--genitive", default="no",
                   help="genitive particle surface to skip")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_extract_cooc)

    p = sub.add_parser("gen-synth", help="generate a synthetic corpus")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--senses", type=int, default=2)
    p.add_argument("--clusters", default="40,25,20,15")
    p.add_argument("--cases", default="wo=0.0",
                   help="comma-separated marker=overlap pairs")
    p.add_argument("--depth", type=int, default=7)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--test-size", type=int, default=100)
    p.add_argument("--verb", default="v")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen_synth)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--lexicon")
    p.add_argument("--thesaurus")
    p.add_argument("--examples")
    p.add_argument("--test")
    p.add_argument("--annotation-log")
    p.add_argument("--static-dir")
    p.add_argument("--measure", choices=("table", "vsm", "ic", "sbl"))
    p.add_argument("--cooc")
    p.add_argument("--sbl-model")
    p.add_argument("--mode", choices=("weighted", "lexicographic", "unweighted"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--smoothing-level", type=int)
    p.add_argument("--strategy", choices=sorted(STRATEGY_FLAGS))
    p.add_argument("--k", type=int)
    p.add_argument("--committee-size", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except SensekitError as err:
        print(f"sensekit: error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"sensekit: error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"sensekit: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
