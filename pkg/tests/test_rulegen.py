"""Single-rule generators: shape, solvability, and gold-chain validity."""
import pytest

from conftest import make_rng
from proofbench.evaluator import evaluate_cot
from proofbench.forms import RuleTag, check_well_formed, tree_metrics
from proofbench.oracle import consistent, provable
from proofbench.render import render_proof
from proofbench.rulegen import GenParams, GenerationError, expected_metrics, generate_proof
from proofbench.render import render_form
from proofbench.vocab import DEFAULT_VOCABULARY

SETTINGS = [
    (RuleTag.IMPLICATION_ELIM, 1, 1),
    (RuleTag.IMPLICATION_ELIM, 3, 1),
    (RuleTag.CONJ_INTRO, 1, 2),
    (RuleTag.CONJ_INTRO, 2, 3),
    (RuleTag.CONJ_ELIM, 1, 3),
    (RuleTag.CONJ_ELIM, 2, 2),
    (RuleTag.DISJ_INTRO, 1, 3),
    (RuleTag.DISJ_INTRO, 2, 2),
    (RuleTag.DISJ_ELIM, 1, 2),
    (RuleTag.DISJ_ELIM, 1, 3),
    (RuleTag.PROOF_BY_CONTRADICTION, 1, 1),
    (RuleTag.PROOF_BY_CONTRADICTION, 1, 2),
]


@pytest.mark.parametrize("rule,depth,width", SETTINGS)
def test_generated_tree_matches_requested_shape(rule, depth, width):
    params = GenParams(rule=rule, depth=depth, width=width)
    for seed in range(5):
        proof = generate_proof(params, make_rng(seed))
        check_well_formed(proof)
        assert tree_metrics(proof) == expected_metrics(params)


@pytest.mark.parametrize("rule,depth,width", SETTINGS)
def test_goal_is_provable_and_axioms_consistent(rule, depth, width):
    params = GenParams(rule=rule, depth=depth, width=width)
    for seed in range(5):
        proof = generate_proof(params, make_rng(seed))
        axioms = proof.axioms()
        assert consistent(axioms)
        assert provable(axioms, proof.conclusion)


@pytest.mark.parametrize("rule,depth,width", SETTINGS)
def test_gold_chain_grades_strictly_correct(rule, depth, width):
    params = GenParams(rule=rule, depth=depth, width=width)
    for seed in range(5):
        rng = make_rng(seed)
        proof = generate_proof(params, rng)
        context = [render_form(a, DEFAULT_VOCABULARY, rng) for a in proof.axioms()]
        cot = render_proof(proof, DEFAULT_VOCABULARY, rng)
        goal = render_form(proof.conclusion, DEFAULT_VOCABULARY, rng)
        report = evaluate_cot(context, cot, goal, DEFAULT_VOCABULARY)
        assert report.overall_correct, cot
        assert report.strict_correct, cot


def test_parameter_validation():
    with pytest.raises(GenerationError):
        GenParams(rule=RuleTag.DISJ_ELIM, depth=2, width=2)
    with pytest.raises(GenerationError):
        GenParams(rule=RuleTag.PROOF_BY_CONTRADICTION, depth=3, width=2)
    with pytest.raises(GenerationError):
        GenParams(rule=RuleTag.IMPLICATION_ELIM, depth=1, width=2)
    with pytest.raises(GenerationError):
        GenParams(rule=RuleTag.CONJ_INTRO, depth=0, width=2)
    with pytest.raises(GenerationError):
        GenParams(rule=RuleTag.AXIOM, depth=1, width=1)


def test_same_seed_same_tree():
    params = GenParams(rule=RuleTag.DISJ_ELIM, depth=1, width=3)
    assert generate_proof(params, make_rng(42)) == generate_proof(params, make_rng(42))
