"""Generate a few problems and look at what comes out.

Shows both generator families: single-rule problems that isolate one
deduction rule, and compositional problems that chain several rules
into one proof. Every example carries its fictional-ontology question,
the query to prove, and the gold chain of thought.
"""
from proofbench.dataset import make_compositional_example, make_single_rule_example
from proofbench.forms import RuleTag
from proofbench.rulegen import GenParams


def show(example):
    print(f"--- {example.id}")
    print("Q:", example.question)
    print("Prove:", example.query_sentence)
    print("A:", " ".join(example.chain_of_thought))
    print()


def main():
    print("== one example per deduction rule ==\n")
    for rule in (
        RuleTag.IMPLICATION_ELIM,
        RuleTag.CONJ_INTRO,
        RuleTag.CONJ_ELIM,
        RuleTag.DISJ_INTRO,
        RuleTag.DISJ_ELIM,
        RuleTag.PROOF_BY_CONTRADICTION,
    ):
        width = 1 if rule is RuleTag.IMPLICATION_ELIM else 2
        params = GenParams(rule=rule, depth=1, width=width)
        show(make_single_rule_example(params, seed=0, index=0))

    print("== a deeper problem with distractors ==\n")
    params = GenParams(rule=RuleTag.IMPLICATION_ELIM, depth=3, width=1, distractors=4)
    show(make_single_rule_example(params, seed=1, index=0, ordering="shuffle"))

    print("== compositional proofs mixing rule families ==\n")
    for num_types in (2, 4):
        show(make_compositional_example(2, num_types, seed=2, index=num_types))


if __name__ == "__main__":
    main()
