"""proofbench: programmable generation and formal grading of deductive
reasoning problems rendered in controlled English."""

from .forms import (
    Atom,
    Conjunction,
    Disjunction,
    FormError,
    Negation,
    ProofTree,
    RuleTag,
    UniversalImplication,
    canonical,
    equivalent,
    from_sexpr,
    negate,
    substitute,
    to_sexpr,
    tree_metrics,
)
from .vocab import DEFAULT_VOCABULARY, FIXTURE_VOCABULARY, Vocabulary
from .render import render_form, render_proof
from .parsing import ParseFailure, parse_sentence, split_sentences
from .oracle import consistent, forward_chain, provable
from .rulegen import GenParams, expected_metrics, generate_proof
from .compgen import Constraint, generate_compositional
from .distractors import compositional_distractors, distractor_axioms
from .dataset import (
    Example,
    make_compositional_example,
    make_single_rule_example,
    read_jsonl,
    write_jsonl,
)
from .evaluator import EvalReport, StepVerdict, evaluate_cot, score_example
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    build_prompt,
    load_config,
    run_experiment,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "Conjunction",
    "Disjunction",
    "FormError",
    "Negation",
    "ProofTree",
    "RuleTag",
    "UniversalImplication",
    "canonical",
    "equivalent",
    "from_sexpr",
    "negate",
    "substitute",
    "to_sexpr",
    "tree_metrics",
    "DEFAULT_VOCABULARY",
    "FIXTURE_VOCABULARY",
    "Vocabulary",
    "render_form",
    "render_proof",
    "ParseFailure",
    "parse_sentence",
    "split_sentences",
    "consistent",
    "forward_chain",
    "provable",
    "GenParams",
    "expected_metrics",
    "generate_proof",
    "Constraint",
    "generate_compositional",
    "compositional_distractors",
    "distractor_axioms",
    "Example",
    "make_compositional_example",
    "make_single_rule_example",
    "read_jsonl",
    "write_jsonl",
    "EvalReport",
    "StepVerdict",
    "evaluate_cot",
    "score_example",
    "ExperimentConfig",
    "ExperimentResult",
    "build_prompt",
    "load_config",
    "run_experiment",
    "wilson_interval",
]
