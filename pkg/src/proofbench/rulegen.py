"""Single-rule problem generators.

Each generator builds a gold proof tree exercising exactly one deduction
rule family at a requested depth (number of rule applications chained
end to end) and width (operand count of the conjunctions/disjunctions
involved). The theory axioms are exactly the Axiom leaves of the tree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forms import (
    Atom,
    Conjunction,
    Disjunction,
    Negation,
    ProofTree,
    RuleTag,
    UniversalImplication,
    axiom,
    assumption,
)
from .vocab import DEFAULT_VOCABULARY, Vocabulary

RULE_VARIABLE = "x"


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenParams:
    """Knobs for one single-rule problem."""

    rule: RuleTag
    depth: int = 1
    width: int = 1
    distractors: int = 0

    def __post_init__(self):
        if self.rule not in _GENERATORS:
            raise GenerationError(f"no generator for {self.rule}")
        if self.depth < 1 or self.width < 1:
            raise GenerationError("depth and width must be >= 1")
        if self.rule in (RuleTag.DISJ_ELIM, RuleTag.PROOF_BY_CONTRADICTION):
            if self.depth != 1:
                raise GenerationError(
                    f"{self.rule.value} problems are depth-1 only"
                )
        if self.rule is RuleTag.IMPLICATION_ELIM and self.width != 1:
            raise GenerationError("implication_elim problems are width-1 only")
        if self.width < 2 and self.rule in (
            RuleTag.DISJ_ELIM,
        ):
            # width 1 degenerates to a plain implication step; allowed
            pass


@dataclass
class _Symbols:
    """Fresh predicate supply, sampled without replacement."""

    pool: list

    @classmethod
    def sample(cls, rng: np.random.Generator, vocab: Vocabulary):
        pool = list(vocab.nouns) + list(vocab.adjectives)
        order = rng.permutation(len(pool))
        return cls([pool[i] for i in order])

    def fresh(self) -> str:
        if not self.pool:
            raise GenerationError("vocabulary exhausted")
        return self.pool.pop()

    def fresh_many(self, n: int) -> list:
        return [self.fresh() for _ in range(n)]


def _rule(ante, cons) -> UniversalImplication:
    return UniversalImplication(RULE_VARIABLE, ante, cons)


def _var_atom(pred: str) -> Atom:
    return Atom(pred, RULE_VARIABLE)


def _ground(pred: str, entity: str) -> Atom:
    return Atom(pred, entity)


def generate_proof(
    params: GenParams, rng: np.random.Generator, vocab: Vocabulary = DEFAULT_VOCABULARY
) -> ProofTree:
    """Build the gold proof tree for one single-rule problem."""
    symbols = _Symbols.sample(rng, vocab)
    entity = vocab.entity_symbol(vocab.names[rng.integers(len(vocab.names))])
    return _GENERATORS[params.rule](params, symbols, entity)


def _gen_implication_elim(params, symbols, entity) -> ProofTree:
    preds = symbols.fresh_many(params.depth + 1)
    node = axiom(_ground(preds[0], entity))
    for prev, nxt in zip(preds, preds[1:]):
        rule = _rule(_var_atom(prev), _var_atom(nxt))
        node = ProofTree(
            RuleTag.IMPLICATION_ELIM,
            _ground(nxt, entity),
            (node, axiom(rule)),
        )
    return node


def _gen_conj_intro(params, symbols, entity) -> ProofTree:
    n = params.width
    node = None
    for layer in range(params.depth):
        operand_preds = symbols.fresh_many(n)
        goal_pred = symbols.fresh()
        operand_nodes = []
        for j, p in enumerate(operand_preds):
            if layer > 0 and j == 0:
                # chain: the previous layer's conclusion fills one slot
                operand_preds[j] = node.conclusion.predicate
                operand_nodes.append(node)
            else:
                operand_nodes.append(axiom(_ground(p, entity)))
        if n == 1:
            ante = _var_atom(operand_preds[0])
            premise = operand_nodes[0]
        else:
            ante = Conjunction(tuple(_var_atom(p) for p in operand_preds))
            premise = ProofTree(
                RuleTag.CONJ_INTRO,
                Conjunction(tuple(_ground(p, entity) for p in operand_preds)),
                tuple(operand_nodes),
            )
        rule = _rule(ante, _var_atom(goal_pred))
        node = ProofTree(
            RuleTag.IMPLICATION_ELIM,
            _ground(goal_pred, entity),
            (premise, axiom(rule)),
        )
    return node


def _gen_conj_elim(params, symbols, entity) -> ProofTree:
    n = params.width
    start = symbols.fresh()
    node = axiom(_ground(start, entity))
    current = start
    for _ in range(params.depth):
        cons_preds = symbols.fresh_many(n)
        if n == 1:
            cons = _var_atom(cons_preds[0])
        else:
            cons = Conjunction(tuple(_var_atom(p) for p in cons_preds))
        rule = _rule(_var_atom(current), cons)
        impl = ProofTree(
            RuleTag.IMPLICATION_ELIM,
            Conjunction(tuple(_ground(p, entity) for p in cons_preds))
            if n > 1
            else _ground(cons_preds[0], entity),
            (node, axiom(rule)),
        )
        if n > 1:
            picked = cons_preds[0]
            node = ProofTree(
                RuleTag.CONJ_ELIM, _ground(picked, entity), (impl,)
            )
            current = picked
        else:
            node = impl
            current = cons_preds[0]
    return node


def _gen_disj_intro(params, symbols, entity) -> ProofTree:
    n = params.width
    node = None
    for layer in range(params.depth):
        operand_preds = symbols.fresh_many(n)
        goal_pred = symbols.fresh()
        if layer == 0:
            grounded_node = axiom(_ground(operand_preds[-1], entity))
        else:
            operand_preds[-1] = node.conclusion.predicate
            grounded_node = node
        if n == 1:
            ante = _var_atom(operand_preds[0])
            premise = grounded_node
        else:
            ante = Disjunction(tuple(_var_atom(p) for p in operand_preds))
            premise = ProofTree(
                RuleTag.DISJ_INTRO,
                Disjunction(tuple(_ground(p, entity) for p in operand_preds)),
                (grounded_node,),
            )
        rule = _rule(ante, _var_atom(goal_pred))
        node = ProofTree(
            RuleTag.IMPLICATION_ELIM,
            _ground(goal_pred, entity),
            (premise, axiom(rule)),
        )
    return node


def _gen_disj_elim(params, symbols, entity) -> ProofTree:
    n = params.width
    case_preds = symbols.fresh_many(n)
    goal_pred = symbols.fresh()
    goal = _ground(goal_pred, entity)
    rules = [_rule(_var_atom(p), _var_atom(goal_pred)) for p in case_preds]
    if n == 1:
        return ProofTree(
            RuleTag.IMPLICATION_ELIM,
            goal,
            (axiom(_ground(case_preds[0], entity)), axiom(rules[0])),
        )
    disj = Disjunction(tuple(_ground(p, entity) for p in case_preds))
    cases = []
    discharged = []
    for p, rule in zip(case_preds, rules):
        hyp = _ground(p, entity)
        discharged.append(hyp)
        cases.append(
            ProofTree(
                RuleTag.IMPLICATION_ELIM,
                goal,
                (assumption(hyp), axiom(rule)),
                hypothetical=True,
            )
        )
    return ProofTree(
        RuleTag.DISJ_ELIM,
        goal,
        (axiom(disj), *cases),
        discharged=frozenset(discharged),
    )


def _gen_proof_by_contradiction(params, symbols, entity) -> ProofTree:
    n = params.width
    case_preds = symbols.fresh_many(n)
    goal_pred = symbols.fresh()
    neg_goal_axiom = Negation(_ground(goal_pred, entity))
    if n == 1:
        ante = _var_atom(case_preds[0])
    else:
        ante = Disjunction(tuple(_var_atom(p) for p in case_preds))
    rule = _rule(ante, _var_atom(goal_pred))
    branches = []
    for p in case_preds:
        hyp = _ground(p, entity)
        hyp_node = assumption(hyp)
        if n == 1:
            derived = hyp_node
        else:
            derived = ProofTree(
                RuleTag.DISJ_INTRO,
                Disjunction(tuple(_ground(q, entity) for q in case_preds)),
                (hyp_node,),
                hypothetical=True,
            )
        impl = ProofTree(
            RuleTag.IMPLICATION_ELIM,
            _ground(goal_pred, entity),
            (derived, axiom(rule)),
            hypothetical=True,
        )
        branches.append(
            ProofTree(
                RuleTag.PROOF_BY_CONTRADICTION,
                Negation(hyp),
                (axiom(neg_goal_axiom), impl),
                discharged=frozenset({hyp}),
            )
        )
    if n == 1:
        return branches[0]
    return ProofTree(
        RuleTag.CONJ_INTRO,
        Conjunction(tuple(b.conclusion for b in branches)),
        tuple(branches),
    )


_GENERATORS = {
    RuleTag.IMPLICATION_ELIM: _gen_implication_elim,
    RuleTag.CONJ_INTRO: _gen_conj_intro,
    RuleTag.CONJ_ELIM: _gen_conj_elim,
    RuleTag.DISJ_INTRO: _gen_disj_intro,
    RuleTag.DISJ_ELIM: _gen_disj_elim,
    RuleTag.PROOF_BY_CONTRADICTION: _gen_proof_by_contradiction,
}


def expected_metrics(params: GenParams):
    """The (tree depth, tree width, rule tags) a gold tree should have.

    The requested depth counts chained rule applications; the realized
    tree depth differs per family because some layers take two tree
    steps (an introduction or elimination plus the implication firing).
    """
    d, n = params.depth, params.width
    rule = params.rule
    if rule is RuleTag.IMPLICATION_ELIM:
        return d, 2, {RuleTag.IMPLICATION_ELIM}
    if rule is RuleTag.CONJ_INTRO:
        if n == 1:
            return d, 2, {RuleTag.IMPLICATION_ELIM}
        return 2 * d, n, {RuleTag.CONJ_INTRO, RuleTag.IMPLICATION_ELIM}
    if rule is RuleTag.CONJ_ELIM:
        if n == 1:
            return d, 2, {RuleTag.IMPLICATION_ELIM}
        return 2 * d, 2, {RuleTag.CONJ_ELIM, RuleTag.IMPLICATION_ELIM}
    if rule is RuleTag.DISJ_INTRO:
        if n == 1:
            return d, 2, {RuleTag.IMPLICATION_ELIM}
        return 2 * d, 2, {RuleTag.DISJ_INTRO, RuleTag.IMPLICATION_ELIM}
    if rule is RuleTag.DISJ_ELIM:
        if n == 1:
            return 1, 2, {RuleTag.IMPLICATION_ELIM}
        return 2, n + 1, {RuleTag.DISJ_ELIM, RuleTag.IMPLICATION_ELIM}
    if rule is RuleTag.PROOF_BY_CONTRADICTION:
        if n == 1:
            return 2, 2, {
                RuleTag.PROOF_BY_CONTRADICTION,
                RuleTag.IMPLICATION_ELIM,
            }
        return 4, n, {
            RuleTag.PROOF_BY_CONTRADICTION,
            RuleTag.IMPLICATION_ELIM,
            RuleTag.DISJ_INTRO,
            RuleTag.CONJ_INTRO,
        }
    raise GenerationError(f"no metrics for {rule}")
