"""Distractor axioms: irrelevant but on-topic context sentences.

Each deduction rule family gets a matching distractor scheme that reuses
a predicate from the real proof so the distractors look relevant, while
never changing what is provable: the goal stays derivable, the axiom set
stays consistent, and the gold chain of thought still grades correct.
"""
from __future__ import annotations

import numpy as np

from .forms import (
    Atom,
    Conjunction,
    Disjunction,
    Negation,
    ProofTree,
    RuleTag,
    UniversalImplication,
    predicates_of,
)
from .rulegen import RULE_VARIABLE, GenerationError
from .vocab import DEFAULT_VOCABULARY, Vocabulary


def _var(pred):
    return Atom(pred, RULE_VARIABLE)


def _rule(ante, cons):
    return UniversalImplication(RULE_VARIABLE, ante, cons)


class _Fresh:
    """Predicates unused by the proof, sampled without replacement."""

    def __init__(self, proof: ProofTree, rng, vocab: Vocabulary):
        used = set()
        for node in proof.walk():
            used |= predicates_of(node.conclusion)
        pool = [
            p for p in list(vocab.nouns) + list(vocab.adjectives) if p not in used
        ]
        order = rng.permutation(len(pool))
        self.pool = [pool[i] for i in order]

    def __call__(self) -> str:
        if not self.pool:
            raise GenerationError("vocabulary exhausted while adding distractors")
        return self.pool.pop()


def _proof_entity(proof: ProofTree):
    from .forms import atoms_of, is_variable

    for node in proof.walk():
        for a in atoms_of(node.conclusion):
            if not is_variable(a.entity):
                return a.entity
    raise GenerationError("proof mentions no ground entity")


def _proof_rules(proof: ProofTree):
    return [a for a in proof.axioms() if isinstance(a, UniversalImplication)]


def _proof_grounds(proof: ProofTree):
    return [a for a in proof.axioms() if not isinstance(a, UniversalImplication)]


def distractor_axioms(
    proof: ProofTree,
    rule: RuleTag,
    count: int,
    rng: np.random.Generator,
    vocab: Vocabulary = DEFAULT_VOCABULARY,
) -> list:
    """`count` distractor axioms matched to a single-rule problem."""
    if count <= 0:
        return []
    fresh = _Fresh(proof, rng, vocab)
    entity = _proof_entity(proof)
    out = []
    while len(out) < count:
        batch = _SCHEMES[rule](proof, fresh, entity)
        if not batch:
            raise GenerationError(f"empty distractor scheme for {rule}")
        out.extend(batch)
    return out[:count]


def _scheme_implication_elim(proof, fresh, entity):
    out = []
    for r in _proof_rules(proof):
        if isinstance(r.antecedent, Atom):
            out.append(_rule(r.antecedent, _var(fresh())))
    for g in _proof_grounds(proof):
        if isinstance(g, Atom):
            side = fresh()
            out.append(Atom(side, entity))
            out.append(_rule(_var(side), _var(fresh())))
    return out


def _scheme_conj_intro(proof, fresh, entity):
    out = []
    for r in _proof_rules(proof):
        if not isinstance(r.antecedent, Conjunction):
            continue
        shared = r.antecedent.operands[-1]
        decoys = [fresh() for _ in r.antecedent.operands[:-1]]
        ante = Conjunction(tuple(_var(p) for p in decoys) + (shared,))
        out.append(_rule(ante, r.consequent))
        out.extend(Atom(p, entity) for p in decoys)
    return out or _scheme_implication_elim(proof, fresh, entity)


def _scheme_conj_elim(proof, fresh, entity):
    out = []
    for r in _proof_rules(proof):
        if not isinstance(r.consequent, Conjunction):
            continue
        cons = Conjunction(
            tuple(_var(fresh()) for _ in r.consequent.operands)
        )
        out.append(_rule(r.antecedent, cons))
    return out or _scheme_implication_elim(proof, fresh, entity)


def _scheme_disj_intro(proof, fresh, entity):
    out = []
    for r in _proof_rules(proof):
        if not isinstance(r.antecedent, Disjunction):
            continue
        shared = r.antecedent.operands[-1]
        decoys = tuple(_var(fresh()) for _ in r.antecedent.operands[:-1])
        # the decoy disjuncts are deliberately never grounded: the only
        # way to fire either rule is through the shared disjunct
        out.append(_rule(Disjunction(decoys + (shared,)), r.consequent))
    return out or _scheme_implication_elim(proof, fresh, entity)


def _scheme_disj_elim(proof, fresh, entity):
    out = []
    decoy_cases = []
    for r in _proof_rules(proof):
        if isinstance(r.antecedent, Atom):
            out.append(_rule(r.antecedent, _var(fresh())))
            decoy = fresh()
            decoy_cases.append(decoy)
            out.append(_rule(_var(decoy), r.consequent))
    if decoy_cases:
        ops = (Atom(fresh(), entity),) + tuple(
            Atom(p, entity) for p in decoy_cases[:-1]
        )
        if len(ops) >= 2:
            out.append(Disjunction(ops))
    return out or _scheme_implication_elim(proof, fresh, entity)


def _scheme_proof_by_contradiction(proof, fresh, entity):
    out = []
    for r in _proof_rules(proof):
        if not isinstance(r.antecedent, Disjunction):
            continue
        out.append(_rule(r.antecedent, _var(fresh())))
        decoys = tuple(_var(fresh()) for _ in r.antecedent.operands)
        out.append(_rule(Disjunction(decoys), r.consequent))
    out.append(Negation(Atom(fresh(), entity)))
    return out


_SCHEMES = {
    RuleTag.IMPLICATION_ELIM: _scheme_implication_elim,
    RuleTag.CONJ_INTRO: _scheme_conj_intro,
    RuleTag.CONJ_ELIM: _scheme_conj_elim,
    RuleTag.DISJ_INTRO: _scheme_disj_intro,
    RuleTag.DISJ_ELIM: _scheme_disj_elim,
    RuleTag.PROOF_BY_CONTRADICTION: _scheme_proof_by_contradiction,
}


def compositional_distractors(
    proof: ProofTree,
    count: int,
    rng: np.random.Generator,
    vocab: Vocabulary = DEFAULT_VOCABULARY,
) -> list:
    """`count` distractors matched step by step to a compositional proof."""
    if count <= 0:
        return []
    fresh = _Fresh(proof, rng, vocab)
    entity = _proof_entity(proof)
    out = []
    steps = [
        n for n in proof.walk()
        if n.rule not in (RuleTag.AXIOM, RuleTag.ASSUMPTION)
    ]
    i = 0
    while len(out) < count and steps:
        node = steps[i % len(steps)]
        i += 1
        out.extend(_step_distractors(node, proof, fresh, entity))
        if i > 4 * len(steps) + count:
            raise GenerationError("distractor generation stalled")
    return out[:count]


def _step_distractors(node, proof, fresh, entity):
    if node.rule is RuleTag.IMPLICATION_ELIM:
        rule = next(
            (
                p.conclusion
                for p in node.premises
                if p.rule is RuleTag.AXIOM
                and isinstance(p.conclusion, UniversalImplication)
            ),
            None,
        )
        if rule is not None:
            return [_rule(rule.antecedent, _var(fresh()))]
        return [Atom(fresh(), entity)]
    if node.rule is RuleTag.CONJ_INTRO:
        return [Atom(fresh(), entity), Atom(fresh(), entity)]
    if node.rule is RuleTag.CONJ_ELIM:
        return [Conjunction((Atom(fresh(), entity), Atom(fresh(), entity)))]
    if node.rule in (RuleTag.DISJ_INTRO, RuleTag.DISJ_ELIM):
        return [Disjunction((Atom(fresh(), entity), Atom(fresh(), entity)))]
    if node.rule is RuleTag.PROOF_BY_CONTRADICTION:
        return [Negation(Atom(fresh(), entity))]
    return [Atom(fresh(), entity)]
