"""Shared test helpers: random in-fragment form sampling and reporting."""
import numpy as np

from proofbench.forms import (
    Atom,
    Conjunction,
    Disjunction,
    Negation,
    UniversalImplication,
)
from proofbench.vocab import DEFAULT_VOCABULARY

RULE_VARIABLE = "x"

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


def make_rng(seed):
    return np.random.default_rng(seed)


def _literal(rng, preds, entity, neg_p=0.3):
    atom = Atom(preds[rng.integers(len(preds))], entity)
    return Negation(atom) if rng.random() < neg_p else atom


def _compound(rng, preds, entity):
    n = int(rng.integers(2, 4))
    ops = tuple(_literal(rng, preds, entity) for _ in range(n))
    return Conjunction(ops) if rng.random() < 0.5 else Disjunction(ops)


def random_ground_form(rng, vocab=DEFAULT_VOCABULARY):
    """A random ground literal, conjunction, or disjunction."""
    preds = list(vocab.nouns) + list(vocab.adjectives)
    entity = vocab.entity_symbol(vocab.names[rng.integers(len(vocab.names))])
    if rng.random() < 0.5:
        return _literal(rng, preds, entity)
    return _compound(rng, preds, entity)


def random_rule(rng, vocab=DEFAULT_VOCABULARY):
    preds = list(vocab.nouns) + list(vocab.adjectives)
    if rng.random() < 0.6:
        ante = _literal(rng, preds, RULE_VARIABLE)
    else:
        ante = _compound(rng, preds, RULE_VARIABLE)
    if rng.random() < 0.6:
        cons = _literal(rng, preds, RULE_VARIABLE)
    else:
        cons = _compound(rng, preds, RULE_VARIABLE)
    return UniversalImplication(RULE_VARIABLE, ante, cons)


def random_form(rng, vocab=DEFAULT_VOCABULARY):
    """Any random form in the fragment, rules included."""
    if rng.random() < 0.35:
        return random_rule(rng, vocab)
    return random_ground_form(rng, vocab)
