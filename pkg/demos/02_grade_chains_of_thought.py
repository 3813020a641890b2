"""Grade free-text chains of thought against a theory.

The evaluator parses each sentence back into logical form and checks
it as a natural-deduction step: stated axioms, rule firings, case
splits, and proofs by contradiction. It distinguishes strictly valid
steps from broadly valid ones (sound conclusions that skip over an
intermediate step, like modus tollens in one stroke) and rejects
anything that does not follow.
"""
from proofbench.evaluator import evaluate_cot
from proofbench.vocab import DEFAULT_VOCABULARY


def grade(title, context, cot, goal, **kwargs):
    report = evaluate_cot(context, cot, goal, DEFAULT_VOCABULARY, **kwargs)
    print(f"--- {title}")
    for step in report.steps:
        print(f"  [{step.classification:>13}] {step.sentence}")
    print(
        f"  overall_correct={report.overall_correct} "
        f"strict_correct={report.strict_correct}\n"
    )


def main():
    context = [
        "Max is a wumpus.",
        "Every wumpus is a tumpus.",
        "Every tumpus is a rompus.",
    ]
    goal = "Max is a rompus."

    grade(
        "a complete two-hop derivation",
        context,
        [
            "Max is a wumpus.",
            "Every wumpus is a tumpus.",
            "Max is a tumpus.",
            "Every tumpus is a rompus.",
            "Max is a rompus.",
        ],
        goal,
    )

    grade(
        "the same chain with the middle hop skipped",
        context,
        ["Max is a wumpus.", "Max is a rompus."],
        goal,
    )

    mt_context = ["Max is not dull.", "Every wumpus is dull."]
    mt_cot = ["Max is not dull.", "Max is not a wumpus."]
    grade("modus tollens, graded broadly", mt_context, mt_cot, "Max is not a wumpus.")
    grade(
        "modus tollens, broad grading disabled",
        mt_context,
        mt_cot,
        "Max is not a wumpus.",
        broad_grading=False,
    )

    grade(
        "reasoning by cases",
        [
            "Max is a wumpus or a tumpus.",
            "Every wumpus is dull.",
            "Every tumpus is dull.",
        ],
        [
            "Suppose Max is a wumpus.",
            "Every wumpus is dull.",
            "Max is dull.",
            "Suppose Max is a tumpus.",
            "Every tumpus is dull.",
            "Max is dull.",
            "Since Max is a wumpus or a tumpus, Max is dull.",
        ],
        "Max is dull.",
    )


if __name__ == "__main__":
    main()
