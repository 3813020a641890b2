"""Forward-chaining ground truth: hand-checked closures and searches."""
import pytest

from proofbench.forms import (
    Atom,
    Conjunction,
    Disjunction,
    Negation,
    UniversalImplication,
    canonical,
)
from proofbench.oracle import (
    BudgetExceeded,
    consistent,
    forward_chain,
    provable,
)


def _rule(ante, cons):
    return UniversalImplication("x", ante, cons)


def V(p):
    return Atom(p, "x")


def G(p, e="alex"):
    return Atom(p, e)


class TestForwardChain:
    def test_modus_ponens_closure(self):
        facts = forward_chain([G("wumpus"), _rule(V("wumpus"), V("dull"))])
        assert canonical(G("dull")) in facts

    def test_chained_rules(self):
        axioms = [
            G("wumpus"),
            _rule(V("wumpus"), V("tumpus")),
            _rule(V("tumpus"), V("rompus")),
        ]
        facts = forward_chain(axioms)
        assert canonical(G("rompus")) in facts

    def test_conjunction_fact_settles_conjuncts(self):
        facts = forward_chain([Conjunction((G("wumpus"), G("dull")))])
        assert canonical(G("wumpus")) in facts
        assert canonical(G("dull")) in facts

    def test_conjunctive_antecedent_needs_all_conjuncts(self):
        rule = _rule(Conjunction((V("wumpus"), V("dull"))), V("rompus"))
        assert canonical(G("rompus")) not in forward_chain([G("wumpus"), rule])
        assert canonical(G("rompus")) in forward_chain([G("wumpus"), G("dull"), rule])

    def test_disjunctive_antecedent_needs_one_disjunct(self):
        rule = _rule(Disjunction((V("wumpus"), V("dull"))), V("rompus"))
        assert canonical(G("rompus")) in forward_chain([G("dull"), rule])

    def test_case_split_takes_branch_intersection(self):
        axioms = [
            Disjunction((G("wumpus"), G("tumpus"))),
            _rule(V("wumpus"), V("rompus")),
            _rule(V("tumpus"), V("rompus")),
            _rule(V("tumpus"), V("impus")),
        ]
        facts = forward_chain(axioms)
        assert canonical(G("rompus")) in facts  # holds in both branches
        assert canonical(G("impus")) not in facts  # only one branch

    def test_rules_are_entity_general(self):
        axioms = [G("wumpus", "alex"), G("wumpus", "max"), _rule(V("wumpus"), V("dull"))]
        facts = forward_chain(axioms)
        assert canonical(G("dull", "alex")) in facts
        assert canonical(G("dull", "max")) in facts

    def test_budget_is_enforced(self):
        axioms = [G("wumpus")] + [
            _rule(V(p), V(q))
            for p, q in zip("abcdefgh", "bcdefghi")
        ]
        with pytest.raises(BudgetExceeded):
            forward_chain(axioms, max_steps=3)


class TestProvable:
    def test_goal_decomposition(self):
        axioms = [G("wumpus"), _rule(V("wumpus"), V("dull"))]
        assert provable(axioms, Conjunction((G("wumpus"), G("dull"))))
        assert provable(axioms, Disjunction((G("dull"), G("rompus"))))
        assert not provable(axioms, Conjunction((G("wumpus"), G("rompus"))))

    def test_contradiction_search_on_negated_goals(self):
        # modus tollens shape: ¬dull plus wumpus→dull refutes wumpus
        axioms = [Negation(G("dull")), _rule(V("wumpus"), V("dull"))]
        assert provable(axioms, Negation(G("wumpus")))
        assert not provable(axioms, Negation(G("rompus")))

    def test_unprovable_goal(self):
        assert not provable([G("wumpus")], G("dull"))


class TestConsistent:
    def test_complementary_pair_is_inconsistent(self):
        assert not consistent([G("wumpus"), Negation(G("wumpus"))])

    def test_derived_contradiction_is_detected(self):
        axioms = [
            G("wumpus"),
            _rule(V("wumpus"), V("dull")),
            Negation(G("dull")),
        ]
        assert not consistent(axioms)

    def test_plain_theory_is_consistent(self):
        axioms = [G("wumpus"), _rule(V("wumpus"), V("dull")), Negation(G("rompus"))]
        assert consistent(axioms)
