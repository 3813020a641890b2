"""Hand-built reference proofs with exact surface renderings.

Each fixture pins a full pipeline path: a proof tree built directly from
the data model must render to an exact English text, every sentence of
that text must re-parse, and the chain must grade as a correct proof of
its goal.
"""
from proofbench.evaluator import evaluate_cot
from proofbench.forms import (
    Atom,
    Conjunction,
    Disjunction,
    Negation,
    ProofTree,
    RuleTag,
    UniversalImplication,
    assumption,
    axiom,
    canonical,
)
from proofbench.parsing import ParseFailure, parse_sentence, split_sentences
from proofbench.render import RenderStyle, render_form, render_proof
from proofbench.vocab import DEFAULT_VOCABULARY, FIXTURE_VOCABULARY


def rule(ante, cons):
    return UniversalImplication("x", ante, cons)


def V(p):
    return Atom(p, "x")


def G(p, e):
    return Atom(p, e)


def check(text, context, goal, vocab, strict=True):
    sentences = split_sentences(text)
    for s in sentences:
        assert not isinstance(parse_sentence(s, vocab), ParseFailure), s
    report = evaluate_cot(context, sentences, goal, vocab)
    assert report.overall_correct, [
        (s.classification, s.sentence) for s in report.steps
    ]
    if strict:
        assert report.strict_correct


def test_compositional_proof_with_contradiction_subproof():
    dog_rule = rule(V("dog"), V("mammal"))
    mean_rule = rule(V("mean"), Negation(V("blue")))
    mammal = ProofTree(
        RuleTag.IMPLICATION_ELIM,
        G("mammal", "alex"),
        (axiom(G("dog", "alex")), axiom(dog_rule)),
    )
    hypo = ProofTree(
        RuleTag.IMPLICATION_ELIM,
        Negation(G("blue", "alex")),
        (assumption(G("mean", "alex")), axiom(mean_rule)),
        hypothetical=True,
    )
    not_mean = ProofTree(
        RuleTag.PROOF_BY_CONTRADICTION,
        Negation(G("mean", "alex")),
        (axiom(G("blue", "alex")), hypo),
        discharged=frozenset({G("mean", "alex")}),
    )
    proof = ProofTree(
        RuleTag.CONJ_INTRO,
        Conjunction((G("mammal", "alex"), Negation(G("mean", "alex")))),
        (mammal, not_mean),
    )
    style = RenderStyle(
        hoist_rules=True,
        contradiction_referent="derived",
        assume_word="Suppose",
        therefore=True,
        templates={canonical(dog_rule): "all", canonical(mean_rule): "all_things"},
    )
    text = " ".join(render_proof(proof, FIXTURE_VOCABULARY, style=style))
    assert text == (
        "Alex is a dog. All dogs are mammals. Alex is a mammal. Alex is blue. "
        "All mean things are not blue. Suppose Alex is mean. Alex is not blue. "
        "This contradicts with Alex is not blue. Therefore, Alex is not mean. "
        "Alex is a mammal and not mean."
    )
    context = [
        "Alex is a dog.",
        "All dogs are mammals.",
        "Alex is blue.",
        "All mean things are not blue.",
    ]
    check(text, context, "Alex is a mammal and not mean.", FIXTURE_VOCABULARY)


def test_multi_hop_question_answer_pair():
    r1 = rule(Disjunction((V("lorpus"), V("brimpus"), V("jompus"))), V("shumpus"))
    r2 = rule(V("wumpus"), Conjunction((V("vumpus"), V("sterpus"), V("brimpus"))))
    r3 = rule(Disjunction((V("vumpus"), V("grimpus"), V("brimpus"))), V("lempus"))
    r4 = rule(Disjunction((V("lempus"), V("jompus"), V("lorpus"))), V("dumpus"))
    r5 = rule(V("vumpus"), V("rompus"))
    r6 = rule(V("sterpus"), V("gorpus"))
    r7 = rule(Disjunction((V("vumpus"), V("grimpus"), V("brimpus"))), V("dumpus"))
    r8 = rule(V("wumpus"), V("shumpus"))
    question_forms = [
        r1, r2, r3, r4, r5, r6, r7, r8,
        G("rompus", "polly"), G("wumpus", "polly"),
    ]
    question_templates = [
        "everything_comma", "every", "everything_comma", "everything_repeat",
        "bare", "every", "everything_comma", "bare", "literal", "literal",
    ]
    context = [
        render_form(f, DEFAULT_VOCABULARY, template=t)
        for f, t in zip(question_forms, question_templates)
    ]
    assert " ".join(context) == (
        "Everything that is a lorpus, a brimpus, or a jompus is a shumpus. "
        "Every wumpus is a vumpus and a sterpus and a brimpus. "
        "Everything that is a vumpus, a grimpus, or a brimpus is a lempus. "
        "Everything that is a lempus or a jompus or a lorpus is a dumpus. "
        "Vumpuses are rompuses. Every sterpus is a gorpus. "
        "Everything that is a vumpus, a grimpus, or a brimpus is a dumpus. "
        "Wumpuses are shumpuses. Polly is a rompus. Polly is a wumpus."
    )

    conj = Conjunction(
        (G("vumpus", "polly"), G("sterpus", "polly"), G("brimpus", "polly"))
    )
    disj1 = Disjunction(
        (G("vumpus", "polly"), G("grimpus", "polly"), G("brimpus", "polly"))
    )
    disj2 = Disjunction(
        (G("lempus", "polly"), G("impus", "polly"), G("yumpus", "polly"))
    )
    got_conj = ProofTree(
        RuleTag.IMPLICATION_ELIM, conj, (axiom(G("wumpus", "polly")), axiom(r2))
    )
    brimpus = ProofTree(RuleTag.CONJ_ELIM, G("brimpus", "polly"), (got_conj,))
    widened = ProofTree(RuleTag.DISJ_INTRO, disj1, (brimpus,))
    lempus = ProofTree(RuleTag.IMPLICATION_ELIM, G("lempus", "polly"), (widened, axiom(r3)))
    proof = ProofTree(RuleTag.DISJ_INTRO, disj2, (lempus,))
    style = RenderStyle(
        templates={
            canonical(r2): "every",
            canonical(r3): "everything_comma",
            canonical(disj1): "comma",
            canonical(disj2): "comma",
        }
    )
    answer = " ".join(render_proof(proof, DEFAULT_VOCABULARY, style=style))
    assert answer == (
        "Polly is a wumpus. Every wumpus is a vumpus and a sterpus and a brimpus. "
        "Polly is a vumpus and a sterpus and a brimpus. Polly is a brimpus. "
        "Polly is a vumpus, a grimpus, or a brimpus. "
        "Everything that is a vumpus, a grimpus, or a brimpus is a lempus. "
        "Polly is a lempus. Polly is a lempus, an impus, or a yumpus."
    )
    query = render_form(disj2, DEFAULT_VOCABULARY, template="repeat")
    assert query == "Polly is a lempus or an impus or a yumpus."
    check(answer, context, query, DEFAULT_VOCABULARY)


def test_implication_elimination_reference():
    cat_rule = rule(V("cat"), V("carnivore"))
    proof = ProofTree(
        RuleTag.IMPLICATION_ELIM,
        G("carnivore", "alex"),
        (axiom(G("cat", "alex")), axiom(cat_rule)),
    )
    style = RenderStyle(templates={canonical(cat_rule): "all"})
    text = " ".join(render_proof(proof, FIXTURE_VOCABULARY, style=style))
    assert text == "Alex is a cat. All cats are carnivores. Alex is a carnivore."
    check(
        text,
        ["Alex is a cat.", "All cats are carnivores."],
        "Alex is a carnivore.",
        FIXTURE_VOCABULARY,
    )


def test_conjunction_introduction_reference():
    proof = ProofTree(
        RuleTag.CONJ_INTRO,
        Conjunction((G("cat", "alex"), G("orange", "alex"))),
        (axiom(G("cat", "alex")), axiom(G("orange", "alex"))),
    )
    text = " ".join(render_proof(proof, FIXTURE_VOCABULARY))
    assert text == "Alex is a cat. Alex is orange. Alex is a cat and orange."
    check(
        text,
        ["Alex is a cat.", "Alex is orange."],
        "Alex is a cat and orange.",
        FIXTURE_VOCABULARY,
    )


def test_conjunction_elimination_reference():
    proof = ProofTree(
        RuleTag.CONJ_ELIM,
        G("orange", "alex"),
        (axiom(Conjunction((G("cat", "alex"), G("orange", "alex")))),),
    )
    text = " ".join(render_proof(proof, FIXTURE_VOCABULARY))
    assert text == "Alex is a cat and orange. Alex is orange."
    check(text, ["Alex is a cat and orange."], "Alex is orange.", FIXTURE_VOCABULARY)


def test_disjunction_introduction_reference():
    proof = ProofTree(
        RuleTag.DISJ_INTRO,
        Disjunction((G("cat", "alex"), G("orange", "alex"))),
        (axiom(G("cat", "alex")),),
    )
    text = " ".join(render_proof(proof, FIXTURE_VOCABULARY))
    assert text == "Alex is a cat. Alex is a cat or orange."
    check(text, ["Alex is a cat."], "Alex is a cat or orange.", FIXTURE_VOCABULARY)


def test_disjunction_elimination_reference():
    cat_rule = rule(V("cat"), V("warm-blooded"))
    dog_rule = rule(V("dog"), V("warm-blooded"))
    disj = Disjunction((G("cat", "alex"), G("dog", "alex")))
    cases = tuple(
        ProofTree(
            RuleTag.IMPLICATION_ELIM,
            G("warm-blooded", "alex"),
            (assumption(G(p, "alex")), axiom(r)),
            hypothetical=True,
        )
        for p, r in (("cat", cat_rule), ("dog", dog_rule))
    )
    proof = ProofTree(
        RuleTag.DISJ_ELIM,
        G("warm-blooded", "alex"),
        (axiom(disj), *cases),
        discharged=frozenset({G("cat", "alex"), G("dog", "alex")}),
    )
    style = RenderStyle(
        assume_word="Suppose",
        templates={canonical(cat_rule): "all", canonical(dog_rule): "all"},
    )
    text = " ".join(render_proof(proof, FIXTURE_VOCABULARY, style=style))
    assert text == (
        "Suppose Alex is a cat. All cats are warm-blooded. Alex is warm-blooded. "
        "Suppose Alex is a dog. All dogs are warm-blooded. Alex is warm-blooded. "
        "Since Alex is a cat or a dog, Alex is warm-blooded."
    )
    context = [
        "Alex is a cat or a dog.",
        "All cats are warm-blooded.",
        "All dogs are warm-blooded.",
    ]
    check(text, context, "Alex is warm-blooded.", FIXTURE_VOCABULARY)


def test_proof_by_contradiction_reference():
    mammal_rule = rule(V("mammal"), Negation(V("cold-blooded")))
    hypo = ProofTree(
        RuleTag.IMPLICATION_ELIM,
        Negation(G("cold-blooded", "alex")),
        (assumption(G("mammal", "alex")), axiom(mammal_rule)),
        hypothetical=True,
    )
    proof = ProofTree(
        RuleTag.PROOF_BY_CONTRADICTION,
        Negation(G("mammal", "alex")),
        (axiom(G("cold-blooded", "alex")), hypo),
        discharged=frozenset({G("mammal", "alex")}),
    )
    style = RenderStyle(
        hoist_rules=True,
        assume_word="Suppose",
        therefore=False,
        templates={canonical(mammal_rule): "conditional:alex"},
    )
    text = " ".join(render_proof(proof, FIXTURE_VOCABULARY, style=style))
    assert text == (
        "Alex is cold-blooded. If Alex is a mammal, Alex is not cold-blooded. "
        "Suppose Alex is a mammal. Alex is not cold-blooded. "
        "This contradicts with Alex is cold-blooded. Alex is not a mammal."
    )
    context = [
        "Alex is cold-blooded.",
        "If Alex is a mammal, Alex is not cold-blooded.",
    ]
    check(text, context, "Alex is not a mammal.", FIXTURE_VOCABULARY)


def test_three_way_case_split_reference():
    rules = {
        p: rule(V(p), V("gorpus")) for p in ("tumpus", "rompus", "lempus")
    }
    disj = Disjunction(
        (G("tumpus", "max"), G("rompus", "max"), G("lempus", "max"))
    )
    cases = tuple(
        ProofTree(
            RuleTag.IMPLICATION_ELIM,
            G("gorpus", "max"),
            (assumption(G(p, "max")), axiom(r)),
            hypothetical=True,
        )
        for p, r in rules.items()
    )
    proof = ProofTree(
        RuleTag.DISJ_ELIM,
        G("gorpus", "max"),
        (axiom(disj), *cases),
        discharged=frozenset(
            {G("tumpus", "max"), G("rompus", "max"), G("lempus", "max")}
        ),
    )
    style = RenderStyle(
        assume_word="Assume",
        templates={canonical(r): "bare" for r in rules.values()},
    )
    text = " ".join(render_proof(proof, DEFAULT_VOCABULARY, style=style))
    assert text == (
        "Assume Max is a tumpus. Tumpuses are gorpuses. Max is a gorpus. "
        "Assume Max is a rompus. Rompuses are gorpuses. Max is a gorpus. "
        "Assume Max is a lempus. Lempuses are gorpuses. Max is a gorpus. "
        "Since Max is a tumpus or a rompus or a lempus, Max is a gorpus."
    )
    context = [
        "Max is a tumpus or a rompus or a lempus.",
        "Tumpuses are gorpuses.",
        "Rompuses are gorpuses.",
        "Lempuses are gorpuses.",
    ]
    check(text, context, "Max is a gorpus.", DEFAULT_VOCABULARY)
