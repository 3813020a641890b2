"""Command-line entry points.

Subcommands: generate (emit a JSONL dataset), evaluate (grade chains of
thought for a dataset), run (execute a configured experiment), and
score (summarize a finished run's JSONL records).
"""
from __future__ import annotations

import argparse
import json
import sys

from .dataset import (
    COMPOSITIONAL,
    SINGLE_RULE,
    make_compositional_example,
    make_single_rule_example,
    read_jsonl,
    write_jsonl,
)
from .evaluator import evaluate_cot
from .experiment import (
    load_config,
    run_experiment,
    wilson_interval,
)
from .forms import RuleTag
from .parsing import split_sentences
from .rulegen import GenParams
from .vocab import DEFAULT_VOCABULARY


def _add_generate(sub):
    p = sub.add_parser("generate", help="generate a JSONL dataset")
    p.add_argument("--kind", choices=(SINGLE_RULE, COMPOSITIONAL), default=SINGLE_RULE)
    p.add_argument(
        "--rule",
        choices=[t.value for t in RuleTag if t.value not in ("axiom", "assumption", "broad_transitivity", "broad_modus_tollens")],
        default="implication_elim",
    )
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--width", type=int, default=1)
    p.add_argument("--min-depth", type=int, default=1)
    p.add_argument("--num-rule-types", type=int, default=1)
    p.add_argument("--distractors", type=int, default=0)
    p.add_argument("--ordering", choices=("postorder", "shuffle"), default="postorder")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_generate)


def _cmd_generate(args):
    examples = []
    for i in range(args.count):
        if args.kind == COMPOSITIONAL:
            examples.append(
                make_compositional_example(
                    args.min_depth,
                    args.num_rule_types,
                    args.seed,
                    i,
                    distractors=args.distractors,
                    ordering=args.ordering,
                )
            )
        else:
            params = GenParams(
                rule=RuleTag(args.rule),
                depth=args.depth,
                width=args.width,
                distractors=args.distractors,
            )
            examples.append(
                make_single_rule_example(
                    params, args.seed, i, ordering=args.ordering
                )
            )
    write_jsonl(args.output, examples)
    print(f"wrote {len(examples)} examples to {args.output}")
    return 0


def _add_evaluate(sub):
    p = sub.add_parser("evaluate", help="grade chains of thought against a dataset")
    p.add_argument("--dataset", required=True, help="JSONL dataset path")
    p.add_argument(
        "--responses",
        help="JSON file mapping example id to predicted text; "
        "defaults to grading each example's own gold chain",
    )
    p.add_argument("--strict", action="store_true", help="disable broad grading")
    p.add_argument("--output", help="write per-example reports as JSONL")
    p.set_defaults(func=_cmd_evaluate)


def _cmd_evaluate(args):
    examples = read_jsonl(args.dataset)
    responses = {}
    if args.responses:
        with open(args.responses, "r", encoding="utf-8") as fh:
            responses = json.load(fh)
    reports = []
    correct = 0
    for ex in examples:
        text = responses.get(ex.id, " ".join(ex.chain_of_thought))
        report = evaluate_cot(
            ex.question_sentences,
            split_sentences(text),
            ex.query_sentence,
            DEFAULT_VOCABULARY,
            broad_grading=not args.strict,
        )
        correct += report.overall_correct
        reports.append({"id": ex.id, **report.to_record()})
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            for rec in reports:
                fh.write(json.dumps(rec) + "\n")
    print(f"correct: {correct}/{len(examples)}")
    return 0


def _add_run(sub):
    p = sub.add_parser("run", help="run an experiment from a TOML config")
    p.add_argument("--config", required=True)
    p.add_argument("--no-resume", action="store_true")
    p.set_defaults(func=_cmd_run)


def _cmd_run(args):
    config = load_config(args.config)
    result = run_experiment(config, resume=not args.no_resume)
    print(json.dumps(result.summary(), indent=2))
    return 0


def _add_score(sub):
    p = sub.add_parser("score", help="summarize a finished run's records")
    p.add_argument("--results", required=True, help="JSONL written by `run`")
    p.set_defaults(func=_cmd_score)


def _cmd_score(args):
    trials = correct = strict = errors = 0
    with open(args.results, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("error"):
                errors += 1
                continue
            trials += 1
            correct += bool(rec.get("correct"))
            strict += bool(rec.get("strict_correct"))
    lo, hi = wilson_interval(correct, trials)
    print(
        json.dumps(
            {
                "trials": trials,
                "correct": correct,
                "strict_correct": strict,
                "errors": errors,
                "accuracy": correct / trials if trials else 0.0,
                "ci_low": lo,
                "ci_high": hi,
            },
            indent=2,
        )
    )
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="proofbench",
        description="Generate and grade synthetic deductive reasoning problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_generate(sub)
    _add_evaluate(sub)
    _add_run(sub)
    _add_score(sub)
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
