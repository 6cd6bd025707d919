"""Example-based verb sense disambiguation with selective sampling."""

from .baselines import (NbModel, RestrictionRule, mfs_ranking,
                        most_frequent_sense, naive_bayes_classify,
                        rule_based_classify, train_nb, train_rules)
from .corpus import (CoocTable, Example, SenseDatabase, SenseEntry, Slot,
                     build_database, dump_cooc, dump_examples, dump_lexicon,
                     extract_cooc, load_cooc, load_examples, load_lexicon)
from .engine import (DEFAULT_OBLIGATORY_MARKERS, CcdProfile, Disambiguator,
                     EngineConfig, ScoredInterpretation, certainty,
                     compute_ccd, disambiguate, filter_senses,
                     propagate_context, score_sense, sim_case)
from .errors import (ConfigError, ConflictError, CoverageError, FormatError,
                     MissingEntryError, PoolExhaustedError, SensekitError,
                     UnknownWordError)
from .evaluate import (CoveragePoint, CrossValidation, FoldPlan, MetricReport,
                       Metrics, acceptability, coverage_accuracy_curve,
                       cross_validate, f_measure, held_out_accuracy,
                       learning_curve, load_sense_distances, make_folds,
                       train_test_split)
from .sampler import STRATEGIES, SamplerState, gold_oracle, run_loop
from .sblfit import (BranchLengthModel, InequalityReport, PathEquation,
                     build_equations, class_level_view, dump_model,
                     eval_inequality, load_model, sbl_similarity,
                     solve_partitioned)
from .similarity import IcMeasure, SblMeasure, TableMeasure, VsmMeasure, word_sim
from .synth import (SynthCorpus, SynthSpec, ccd_contrast_corpus,
                    generate_synthetic, region_prefix)
from .thesaurus import (DEFAULT_TABLE, SimilarityTable, Thesaurus,
                        common_prefix_len, dump_table, dump_thesaurus,
                        load_table, load_thesaurus, table_similarity)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
