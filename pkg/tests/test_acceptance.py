"""End-to-end acceptance gate.

Each test here covers one release criterion and reports a PASS/FAIL
line in the terminal summary. The criteria exercise the whole pipeline
at scale: language round trips, generator/evaluator closure over the
full parameter grid, mutation kills, oracle agreement, reference
fixtures, broad grading, distractor soundness, determinism, the
experiment loop, and the step-adjacency guardrail.
"""
import functools
import subprocess
import sys
from time import perf_counter

import test_fixtures
from conftest import (
    ACCEPTANCE_RESULTS,
    make_rng,
    random_form,
    random_ground_form,
)
from proofbench import cli
from proofbench.dataset import make_compositional_example, make_single_rule_example
from proofbench.distractors import distractor_axioms
from proofbench.evaluator import BROAD, INVALID, evaluate_cot, score_example
from proofbench.experiment import (
    EchoGoldClient,
    ExperimentConfig,
    TruncateGoldClient,
    run_experiment,
)
from proofbench.forms import (
    Atom,
    Negation,
    RuleTag,
    UniversalImplication,
    canonical,
)
from proofbench.oracle import provable
from proofbench.parsing import parse_sentence
from proofbench.render import render_form
from proofbench.rulegen import GenParams, generate_proof
from proofbench.vocab import DEFAULT_VOCABULARY as V


def criterion(number, name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_RESULTS.append(f"criterion {number} ({name}): FAIL")
                raise
            ACCEPTANCE_RESULTS.append(f"criterion {number} ({name}): PASS")

        return wrapper

    return decorate


@criterion(1, "language round trip")
def test_round_trip_fidelity():
    start = perf_counter()
    for i in range(10_000):
        rng = make_rng(10_000 + i)
        form = random_form(rng)
        sentence = render_form(form, V, rng)
        parsed = parse_sentence(sentence, V)
        assert canonical(parsed) == canonical(form), sentence
    assert perf_counter() - start < 5.0


SINGLE_RULE_CELLS = [
    (RuleTag.IMPLICATION_ELIM, 2, 1),
    (RuleTag.CONJ_INTRO, 2, 3),
    (RuleTag.CONJ_ELIM, 2, 3),
    (RuleTag.DISJ_INTRO, 2, 3),
    (RuleTag.DISJ_ELIM, 1, 3),
    (RuleTag.PROOF_BY_CONTRADICTION, 1, 2),
]


@criterion(2, "generator-evaluator closure")
def test_generator_evaluator_closure():
    start = perf_counter()
    per_cell = 200
    for rule_tag, depth, width in SINGLE_RULE_CELLS:
        for distractors in (0, 5):
            params = GenParams(
                rule=rule_tag, depth=depth, width=width, distractors=distractors
            )
            for ordering in ("postorder", "shuffle"):
                for i in range(per_cell):
                    ex = make_single_rule_example(
                        params, seed=20_000, index=i, ordering=ordering
                    )
                    report = score_example(ex, " ".join(ex.chain_of_thought))
                    assert report.overall_correct, ex.id
    for min_depth in (1, 2, 3):
        for num_types in (1, 2, 3, 4):
            for distractors in (0, 5):
                for ordering in ("postorder", "shuffle"):
                    for i in range(per_cell):
                        ex = make_compositional_example(
                            min_depth,
                            num_types,
                            seed=21_000,
                            index=i,
                            distractors=distractors,
                            ordering=ordering,
                        )
                        report = score_example(ex, " ".join(ex.chain_of_thought))
                        assert report.overall_correct, ex.id
    assert perf_counter() - start < 60.0


def _predicates(form):
    if isinstance(form, Atom):
        return {form.predicate}
    if isinstance(form, Negation):
        return _predicates(form.inner)
    if isinstance(form, UniversalImplication):
        return _predicates(form.antecedent) | _predicates(form.consequent)
    out = set()
    for op in form.operands:
        out |= _predicates(op)
    return out


def _chain_example(i):
    params = GenParams(rule=RuleTag.IMPLICATION_ELIM, depth=3, width=1)
    ex = make_single_rule_example(params, seed=30_000, index=i)
    used = set()
    for s in ex.question_sentences:
        used |= _predicates(parse_sentence(s, V))
    unused = next(n for n in V.nouns if n not in used)
    goal = parse_sentence(ex.query_sentence, V)
    entity = goal.entity
    return ex, render_form(Atom(unused, entity), V)


@criterion(3, "mutation kill rate")
def test_mutation_kill_rate():
    per_operator = 334
    for i in range(per_operator):
        # replace the final conclusion with an atom foreign to the problem
        ex, foreign = _chain_example(i)
        cot = list(ex.chain_of_thought)
        cot[-1] = foreign
        report = evaluate_cot(ex.question_sentences, cot, ex.query_sentence, V)
        assert not report.overall_correct, i
    for i in range(per_operator):
        # delete a rule that premises a derivation step from the theory
        ex, _ = _chain_example(per_operator + i)
        cot = list(ex.chain_of_thought)
        rule_keys = [
            canonical(f)
            for f in (parse_sentence(s, V) for s in cot[1:])
            if isinstance(f, UniversalImplication)
        ]
        doomed = rule_keys[i % len(rule_keys)]
        context = [
            s
            for s in ex.question_sentences
            if canonical(parse_sentence(s, V)) != doomed
        ]
        assert len(context) == len(ex.question_sentences) - 1
        report = evaluate_cot(context, cot, ex.query_sentence, V)
        assert not report.overall_correct, i
    for i in range(per_operator):
        # swap the concluding sentence for an underivable atom and ask
        # the evaluator to credit that atom as the goal
        ex, foreign = _chain_example(2 * per_operator + i)
        cot = list(ex.chain_of_thought)
        cot[-1] = foreign
        report = evaluate_cot(ex.question_sentences, cot, foreign, V)
        assert not report.overall_correct, i


@criterion(4, "evaluator-oracle agreement")
def test_oracle_differential():
    start = perf_counter()
    accepted = 0
    names = list(V.names)
    nouns = list(V.nouns)
    for i in range(5_000):
        rng = make_rng(40_000 + i)
        entity = V.entity_symbol(names[rng.integers(len(names))])
        if rng.random() < 0.4:
            picks = rng.choice(len(nouns), size=3, replace=False)
            p0, p1, p2 = (nouns[int(j)] for j in picks)
            axioms = [
                Atom(p0, entity),
                UniversalImplication("x", Atom(p0, "x"), Atom(p1, "x")),
                UniversalImplication("x", Atom(p1, "x"), Atom(p2, "x")),
            ]
            axioms += [random_form(rng) for _ in range(int(rng.integers(0, 6)))]
            goal = Atom(p2, entity)
            chain = [axioms[0], axioms[1], Atom(p1, entity), axioms[2], goal]
            cot = [render_form(f, V) for f in chain]
        else:
            axioms = [random_form(rng) for _ in range(int(rng.integers(2, 9)))]
            goal = random_ground_form(rng)
            cot = [render_form(a, V) for a in axioms if rng.random() < 0.5]
            if rng.random() < 0.5:
                cot.append(render_form(goal, V))
        context = [render_form(a, V) for a in axioms]
        report = evaluate_cot(context, cot, render_form(goal, V), V)
        if report.overall_correct:
            accepted += 1
            assert provable(axioms, goal), (context, cot)
    assert accepted > 0
    assert perf_counter() - start < 30.0


@criterion(5, "reference fixture reproduction")
def test_fixture_reproduction():
    test_fixtures.test_implication_elimination_reference()
    test_fixtures.test_conjunction_introduction_reference()
    test_fixtures.test_conjunction_elimination_reference()
    test_fixtures.test_disjunction_introduction_reference()
    test_fixtures.test_disjunction_elimination_reference()
    test_fixtures.test_proof_by_contradiction_reference()
    test_fixtures.test_compositional_proof_with_contradiction_subproof()
    test_fixtures.test_multi_hop_question_answer_pair()


@criterion(6, "broadly-valid grading")
def test_broad_grading_toggle():
    context = ["Max is not dull.", "Every wumpus is dull."]
    cot = ["Max is not dull.", "Max is not a wumpus."]
    goal = "Max is not a wumpus."
    broad = evaluate_cot(context, cot, goal, V)
    assert broad.steps[1].classification == BROAD
    assert broad.overall_correct and not broad.strict_correct
    strict = evaluate_cot(context, cot, goal, V, broad_grading=False)
    assert strict.steps[1].classification == INVALID
    assert not strict.overall_correct


@criterion(7, "distractor soundness")
def test_distractor_soundness():
    per_rule = 500
    for rule_tag, depth, width in SINGLE_RULE_CELLS:
        base = GenParams(rule=rule_tag, depth=depth, width=width)
        noisy = GenParams(
            rule=rule_tag, depth=depth, width=width, distractors=5
        )
        for i in range(per_rule):
            rng = make_rng(50_000 + i)
            proof = generate_proof(base, rng)
            extras = distractor_axioms(proof, rule_tag, 5, rng, V)
            assert not provable(extras, proof.conclusion), (rule_tag, i)
            ex = make_single_rule_example(noisy, seed=51_000, index=i)
            report = score_example(ex, " ".join(ex.chain_of_thought))
            assert report.overall_correct, ex.id


@criterion(8, "seeded generation is byte-identical")
def test_determinism(tmp_path):
    for kind_args in (
        ["--rule", "disjunction_elim", "--width", "3", "--distractors", "3"],
        ["--kind", "compositional", "--min-depth", "2", "--num-rule-types", "3"],
    ):
        outputs = []
        for run in ("a", "b"):
            path = tmp_path / f"{kind_args[1]}-{run}.jsonl"
            rc = cli.main(
                ["generate", "--count", "25", "--seed", "7", "--output", str(path)]
                + kind_args
            )
            assert rc == 0
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]


@criterion(9, "experiment loop closes")
def test_harness_closed_loop(tmp_path):
    config = ExperimentConfig(
        rule="implication_elim",
        depth=2,
        trials=100,
        output=str(tmp_path / "echo.jsonl"),
    )
    result = run_experiment(config, client=EchoGoldClient())
    assert result.accuracy == 1.0
    lo, hi = result.ci
    assert round(lo, 3) == 0.963
    assert hi == 1.0
    truncated = ExperimentConfig(
        rule="implication_elim",
        depth=2,
        trials=100,
        output=str(tmp_path / "trunc.jsonl"),
    )
    assert run_experiment(truncated, client=TruncateGoldClient()).accuracy == 0.0


@criterion(10, "step adjacency guardrail")
def test_rule_restatement_must_immediately_precede_its_use():
    from proofbench.vocab import Vocabulary

    vocab = Vocabulary(nouns=("cat", "carnivore", "mammal"), adjectives=("herbivorous",))
    context = [
        "Fae is a cat.",
        "All cats are carnivores.",
        "All mammals are not herbivorous.",
    ]
    cot = [
        "Fae is a cat.",
        "All cats are carnivores.",
        "Fae is a carnivore.",
        "All carnivores are mammals.",
        "Fae is a mammal.",
        "All mammals are not herbivorous.",
        "Fae is not herbivorous.",
    ]
    report = evaluate_cot(context, cot, "Fae is not herbivorous.", vocab)
    assert report.steps[3].classification == INVALID
    assert not report.overall_correct
