"""Brute-force forward-chaining prover used as ground truth in tests.

Deliberately independent of the chain-of-thought evaluator: it knows
nothing about sentence order or proof structure, it just saturates the
axiom set under the deduction rules, with one level of case splitting
over derived disjunctions and a shallow proof-by-contradiction search
over candidate atoms.
"""
from __future__ import annotations

from .forms import (
    Atom,
    Conjunction,
    Disjunction,
    LogicalForm,
    Negation,
    UniversalImplication,
    canonical,
    instantiate,
    is_literal,
    negate,
)

DEFAULT_MAX_STEPS = 10_000


class BudgetExceeded(RuntimeError):
    """Saturation did not finish within the step budget."""


def _entities(axioms):
    out = set()
    for phi in axioms:
        if isinstance(phi, UniversalImplication):
            continue
        for a in _ground_literals(phi):
            out.add((a.inner if isinstance(a, Negation) else a).entity)
    return out


def _ground_literals(phi):
    if is_literal(phi):
        yield phi
    elif isinstance(phi, (Conjunction, Disjunction)):
        yield from phi.operands


def _holds(phi, facts):
    """Is phi satisfied by the saturated fact set (keys are canonical)?"""
    if is_literal(phi):
        return canonical(phi) in facts
    if isinstance(phi, Conjunction):
        return all(_holds(o, facts) for o in phi.operands)
    if isinstance(phi, Disjunction):
        return canonical(phi) in facts or any(_holds(o, facts) for o in phi.operands)
    return canonical(phi) in facts


def forward_chain(axioms, max_steps: int = DEFAULT_MAX_STEPS):
    """Saturate the axioms; returns {canonical: form} of derived facts.

    Derived facts are ground literals, disjunctions, and conjunctions;
    rules fire whenever their antecedent holds; case splitting over any
    present disjunction adds the intersection of the per-case closures.
    """
    rules = [a for a in axioms if isinstance(a, UniversalImplication)]
    facts = {}
    for a in axioms:
        if not isinstance(a, UniversalImplication):
            _add_fact(a, facts)
    steps = 0
    changed = True
    while changed:
        changed = False
        # implication elimination over every rule x entity
        for rule in rules:
            for entity in sorted(_entities(axioms) | _fact_entities(facts)):
                steps += 1
                if steps > max_steps:
                    raise BudgetExceeded(f"exceeded {max_steps} saturation steps")
                ante, cons = instantiate(rule, entity)
                if _holds(ante, facts) and not _holds(cons, facts):
                    _add_fact(cons, facts)
                    changed = True
        if changed:
            continue
        # one level of case splitting over present disjunctions
        for key, disj in list(facts.items()):
            if not isinstance(disj, Disjunction):
                continue
            if any(_holds(o, facts) for o in disj.operands):
                continue  # already settled by a disjunct
            branches = []
            for op in disj.operands:
                branch_axioms = list(axioms) + [op]
                branches.append(
                    _plain_closure(branch_axioms, rules, max_steps)
                )
            common = set(branches[0])
            for b in branches[1:]:
                common &= set(b)
            for k in sorted(common):
                if k not in facts:
                    facts[k] = branches[0][k]
                    changed = True
    return facts


def _plain_closure(axioms, rules, max_steps):
    """Rule saturation without nested case splitting."""
    facts = {}
    for a in axioms:
        if not isinstance(a, UniversalImplication):
            _add_fact(a, facts)
    steps = 0
    changed = True
    while changed:
        changed = False
        for rule in rules:
            for entity in sorted(_entities(axioms) | _fact_entities(facts)):
                steps += 1
                if steps > max_steps:
                    raise BudgetExceeded(f"exceeded {max_steps} saturation steps")
                ante, cons = instantiate(rule, entity)
                if _holds(ante, facts) and not _holds(cons, facts):
                    _add_fact(cons, facts)
                    changed = True
    return facts


def _add_fact(phi, facts):
    facts[canonical(phi)] = phi
    # conjunction facts also settle their conjuncts
    if isinstance(phi, Conjunction):
        for op in phi.operands:
            facts[canonical(op)] = op


def _fact_entities(facts):
    out = set()
    for phi in facts.values():
        for lit in _ground_literals(phi):
            out.add((lit.inner if isinstance(lit, Negation) else lit).entity)
    return out


def _candidate_atoms(axioms):
    preds = set()
    for phi in axioms:
        from .forms import atoms_of

        for a in atoms_of(phi):
            preds.add(a.predicate)
    return preds


def provable(axioms, goal: LogicalForm, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """Is the goal derivable from the axioms?

    Checks closure membership, decomposing conjunction/disjunction goals,
    and falls back to a one-assumption-deep proof-by-contradiction search
    for negated-literal goals.
    """
    facts = forward_chain(axioms, max_steps)
    if _goal_holds(goal, facts):
        return True
    # contradiction search: assume an atom, look for an inconsistency
    for lit in _contradiction_targets(goal):
        assumed = negate(lit)  # a positive atom when the target is negated
        if not isinstance(assumed, Atom):
            continue
        try:
            branch = forward_chain(list(axioms) + [assumed], max_steps)
        except BudgetExceeded:
            continue
        if not _facts_consistent(branch):
            facts[canonical(lit)] = lit
    return _goal_holds(goal, facts)


def _goal_holds(goal, facts):
    if isinstance(goal, Conjunction):
        return all(_goal_holds(o, facts) for o in goal.operands)
    if isinstance(goal, Disjunction):
        return canonical(goal) in facts or any(
            _goal_holds(o, facts) for o in goal.operands
        )
    return canonical(goal) in facts


def _contradiction_targets(goal):
    """Negated literals in the goal worth a contradiction attempt."""
    if isinstance(goal, Negation):
        return [goal]
    if isinstance(goal, (Conjunction, Disjunction)):
        return [o for o in goal.operands if isinstance(o, Negation)]
    return []


def _facts_consistent(facts) -> bool:
    for key, phi in facts.items():
        if is_literal(phi) and canonical(negate(phi)) in facts:
            return False
    return True


def consistent(axioms, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """No fact and its negation are both derivable."""
    return _facts_consistent(forward_chain(axioms, max_steps))
