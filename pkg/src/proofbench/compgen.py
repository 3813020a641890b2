"""Compositional proof generation.

Builds proof trees that mix several deduction rule families, by
recursive descent: each level picks an applicable rule for the current
conclusion constraint and recurses on the premises with a smaller depth
budget. Retry loops reject trees that miss the requested minimum depth
or rule-type count, or whose axioms are inconsistent.
"""
from __future__ import annotations

from dataclasses import dataclass, field

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
    canonical,
    is_literal,
    negate,
    tree_metrics,
)
from .oracle import BudgetExceeded, consistent, provable
from .rulegen import RULE_VARIABLE, GenerationError, _Symbols
from .vocab import DEFAULT_VOCABULARY, Vocabulary

UNIVERSE = "universe"
FORMS = "forms"
NEGATIONS = "negations"
CONJUNCTION = "conjunction"
DISJUNCTION = "disjunction"


@dataclass(frozen=True)
class Constraint:
    """What the conclusion of a subproof must look like.

    kind=FORMS pins the conclusion to one of `forms`; NEGATIONS requires
    a negated literal; CONJUNCTION/DISJUNCTION require that connective
    with `pinned` operands present; UNIVERSE allows anything.
    """

    kind: str = UNIVERSE
    forms: tuple = ()
    pinned: tuple = ()
    size: int = 2

    @staticmethod
    def exactly(*forms) -> "Constraint":
        return Constraint(FORMS, forms=tuple(forms))


def _admits_conjunction(c: Constraint) -> bool:
    if c.kind in (UNIVERSE, CONJUNCTION):
        return True
    return c.kind == FORMS and any(isinstance(f, Conjunction) for f in c.forms)


def _admits_disjunction(c: Constraint) -> bool:
    if c.kind in (UNIVERSE, DISJUNCTION):
        return True
    return c.kind == FORMS and any(isinstance(f, Disjunction) for f in c.forms)


def _admits_literal(c: Constraint) -> bool:
    if c.kind in (UNIVERSE, NEGATIONS):
        return True
    return c.kind == FORMS and any(is_literal(f) for f in c.forms)


def _admits_negation(c: Constraint) -> bool:
    if c.kind in (UNIVERSE, NEGATIONS):
        return True
    return c.kind == FORMS and any(isinstance(f, Negation) for f in c.forms)


def _sample_form(c: Constraint, symbols, entity, rng):
    if c.kind == UNIVERSE:
        return Atom(symbols.fresh(), entity)
    if c.kind == NEGATIONS:
        return Negation(Atom(symbols.fresh(), entity))
    if c.kind == FORMS:
        options = list(c.forms)
        return options[rng.integers(len(options))]
    ops = list(c.pinned)
    while len(ops) < max(c.size, 2):
        ops.append(Atom(symbols.fresh(), entity))
    order = rng.permutation(len(ops))
    ops = tuple(ops[i] for i in order)
    return Conjunction(ops) if c.kind == CONJUNCTION else Disjunction(ops)


@dataclass
class _Ctx:
    symbols: _Symbols
    entity: str
    rng: np.random.Generator
    width: int = 2
    used: set = field(default_factory=set)


def generate_compositional_proof(
    depth: int,
    constraint: Constraint,
    ctx: _Ctx,
    disallowed: frozenset = frozenset(),
    hypothetical: bool = False,
    must_step: bool = False,
    deep: bool = False,
) -> ProofTree:
    """One recursive descent; raises GenerationError on a dead end.

    With `deep`, the subtree must spend its whole depth budget along at
    least one premise chain rather than bottoming out early in axioms.
    """
    rng = ctx.rng
    if depth <= 0 and must_step:
        depth = 1
    if depth <= 0:
        return axiom(_sample_form(constraint, ctx.symbols, ctx.entity, rng))
    if not deep and not must_step and constraint.kind == FORMS:
        literals = [f for f in constraint.forms if is_literal(f)]
        if literals and rng.random() < 0.5:
            return axiom(literals[rng.integers(len(literals))])

    options = []
    if RuleTag.IMPLICATION_ELIM not in disallowed:
        options.append(RuleTag.IMPLICATION_ELIM)
    if RuleTag.CONJ_INTRO not in disallowed and _admits_conjunction(constraint):
        options.append(RuleTag.CONJ_INTRO)
    if RuleTag.DISJ_INTRO not in disallowed and _admits_disjunction(constraint):
        options.append(RuleTag.DISJ_INTRO)
    if RuleTag.CONJ_ELIM not in disallowed and _admits_literal(constraint):
        options.append(RuleTag.CONJ_ELIM)
    if (
        RuleTag.DISJ_ELIM not in disallowed
        and not hypothetical
        and depth >= 2
        and _admits_literal(constraint)
    ):
        options.append(RuleTag.DISJ_ELIM)
    if (
        RuleTag.PROOF_BY_CONTRADICTION not in disallowed
        and not hypothetical
        and depth >= 2
        and _admits_negation(constraint)
    ):
        options.append(RuleTag.PROOF_BY_CONTRADICTION)
    if not options:
        raise GenerationError("no applicable rule under the constraint")

    order = rng.permutation(len(options))
    ordered = [options[i] for i in order]
    # favor families this attempt has not used yet, so trees reach the
    # requested rule-type count without hundreds of rejected candidates
    ordered.sort(key=lambda r: r in ctx.used)
    last_err = None
    for rule in ordered:
        try:
            node = _STEPS[rule](depth, constraint, ctx, disallowed, hypothetical, deep)
        except GenerationError as err:
            last_err = err
            continue
        ctx.used.add(rule)
        return node
    raise GenerationError(f"all rules failed: {last_err}")


def _step_implication_elim(depth, constraint, ctx, disallowed, hypothetical, deep):
    conclusion = _sample_form(constraint, ctx.symbols, ctx.entity, ctx.rng)
    if isinstance(conclusion, UniversalImplication):
        raise GenerationError("cannot conclude a rule")
    # the rule antecedent is usually a fresh atom, but a compound
    # antecedent lets the premise subproof host an intro step the plain
    # literal chain could never reach
    shape = "atom"
    if depth > 1:
        wanted = []
        if RuleTag.CONJ_INTRO not in disallowed and RuleTag.CONJ_INTRO not in ctx.used:
            wanted.append("conj")
        if RuleTag.DISJ_INTRO not in disallowed and RuleTag.DISJ_INTRO not in ctx.used:
            wanted.append("disj")
        if wanted:
            shape = wanted[ctx.rng.integers(len(wanted))]
    taken = {a.predicate for a in _atoms(conclusion)}
    if shape == "atom":
        ante_pred = ctx.symbols.fresh()
        if ante_pred in taken:
            ante_pred = ctx.symbols.fresh()
        ante_var = Atom(ante_pred, RULE_VARIABLE)
        ante_ground = Atom(ante_pred, ctx.entity)
    else:
        preds = [p for p in ctx.symbols.fresh_many(ctx.width) if p not in taken]
        while len(preds) < 2:
            preds.append(ctx.symbols.fresh())
        cls = Conjunction if shape == "conj" else Disjunction
        ante_var = cls(tuple(Atom(p, RULE_VARIABLE) for p in preds))
        ante_ground = cls(tuple(Atom(p, ctx.entity) for p in preds))
    rule = UniversalImplication(
        RULE_VARIABLE,
        ante_var,
        _abstract(conclusion, ctx.entity),
    )
    go_deep = deep and depth > 1
    sub = generate_compositional_proof(
        depth - 1, Constraint.exactly(ante_ground), ctx, disallowed, hypothetical,
        must_step=go_deep or shape != "atom", deep=go_deep,
    )
    return ProofTree(
        RuleTag.IMPLICATION_ELIM,
        conclusion,
        (sub, axiom(rule)),
        hypothetical=hypothetical,
    )


def _step_conj_intro(depth, constraint, ctx, disallowed, hypothetical, deep):
    shape = constraint
    if constraint.kind == FORMS:
        conjs = [f for f in constraint.forms if isinstance(f, Conjunction)]
        if not conjs:
            raise GenerationError("constraint admits no conjunction")
        conclusion = conjs[ctx.rng.integers(len(conjs))]
    elif constraint.kind in (UNIVERSE, CONJUNCTION):
        shape = Constraint(CONJUNCTION, pinned=constraint.pinned, size=ctx.width)
        conclusion = _sample_form(shape, ctx.symbols, ctx.entity, ctx.rng)
    else:
        raise GenerationError("constraint admits no conjunction")
    ops = conclusion.operands
    derived_at = ctx.rng.integers(len(ops))
    premises = []
    for j, op in enumerate(ops):
        if j == derived_at:
            premises.append(
                generate_compositional_proof(
                    depth - 1,
                    Constraint.exactly(op),
                    ctx,
                    disallowed,
                    hypothetical,
                    must_step=True,
                    deep=deep and depth > 1,
                )
            )
        else:
            premises.append(axiom(op))
    return ProofTree(
        RuleTag.CONJ_INTRO, conclusion, tuple(premises), hypothetical=hypothetical
    )


def _step_disj_intro(depth, constraint, ctx, disallowed, hypothetical, deep):
    if constraint.kind == FORMS:
        disjs = [f for f in constraint.forms if isinstance(f, Disjunction)]
        if not disjs:
            raise GenerationError("constraint admits no disjunction")
        conclusion = disjs[ctx.rng.integers(len(disjs))]
    elif constraint.kind in (UNIVERSE, DISJUNCTION):
        shape = Constraint(DISJUNCTION, pinned=constraint.pinned, size=ctx.width)
        conclusion = _sample_form(shape, ctx.symbols, ctx.entity, ctx.rng)
    else:
        raise GenerationError("constraint admits no disjunction")
    ops = conclusion.operands
    derived_at = int(ctx.rng.integers(len(ops)))
    sub = generate_compositional_proof(
        depth - 1,
        Constraint.exactly(ops[derived_at]),
        ctx,
        disallowed,
        hypothetical,
        must_step=True,
        deep=deep and depth > 1,
    )
    return ProofTree(
        RuleTag.DISJ_INTRO, conclusion, (sub,), hypothetical=hypothetical
    )


def _step_conj_elim(depth, constraint, ctx, disallowed, hypothetical, deep):
    if not _admits_literal(constraint):
        raise GenerationError("constraint admits no literal")
    if constraint.kind == FORMS:
        lits = [f for f in constraint.forms if is_literal(f)]
        conclusion = lits[ctx.rng.integers(len(lits))]
    else:
        conclusion = _sample_form(
            Constraint(NEGATIONS) if constraint.kind == NEGATIONS else Constraint(),
            ctx.symbols,
            ctx.entity,
            ctx.rng,
        )
    premise_constraint = Constraint(
        CONJUNCTION, pinned=(conclusion,), size=ctx.width
    )
    go_deep = deep and depth > 1
    sub = generate_compositional_proof(
        depth - 1,
        premise_constraint,
        ctx,
        disallowed | {RuleTag.CONJ_INTRO},
        hypothetical,
        must_step=go_deep,
        deep=go_deep,
    )
    return ProofTree(
        RuleTag.CONJ_ELIM, conclusion, (sub,), hypothetical=hypothetical
    )


def _step_disj_elim(depth, constraint, ctx, disallowed, hypothetical, deep):
    rng = ctx.rng
    for _ in range(8):
        case1 = generate_compositional_proof(
            depth - 1, constraint, ctx, disallowed, True, must_step=True,
            deep=deep and depth > 1,
        )
        conclusion = case1.conclusion
        case2 = generate_compositional_proof(
            depth - 1,
            Constraint.exactly(conclusion),
            ctx,
            disallowed,
            True,
            must_step=True,
        )
        a1 = _pick_ground_leaf(case1, rng)
        a2 = _pick_ground_leaf(case2, rng)
        if a1 is None or a2 is None or canonical(a1) == canonical(a2):
            continue
        case1 = _leaf_to_assumption(case1, a1)
        case2 = _leaf_to_assumption(case2, a2)
        disj = Disjunction((a1, a2))
        disj_sub = generate_compositional_proof(
            depth - 1,
            Constraint.exactly(disj),
            ctx,
            disallowed | {RuleTag.DISJ_INTRO},
            hypothetical,
        )
        return ProofTree(
            RuleTag.DISJ_ELIM,
            conclusion,
            (disj_sub, case1, case2),
            hypothetical=hypothetical,
            discharged=frozenset({a1, a2}),
        )
    raise GenerationError("no usable case split found")


def _step_proof_by_contradiction(depth, constraint, ctx, disallowed, hypothetical, deep):
    rng = ctx.rng
    known = generate_compositional_proof(
        depth - 1, Constraint(NEGATIONS), ctx, disallowed, hypothetical
    )
    if constraint.kind == FORMS:
        # the conclusion is pinned: assume its positive atom and refute
        # the known fact through a bridging rule
        negs = [f for f in constraint.forms if isinstance(f, Negation)]
        if not negs:
            raise GenerationError("constraint admits no negation")
        conclusion = negs[rng.integers(len(negs))]
        assumed = conclusion.inner
        refuted = negate(known.conclusion)
        if canonical(refuted) == canonical(assumed):
            raise GenerationError("degenerate self-refuting assumption")
        bridge = UniversalImplication(
            RULE_VARIABLE,
            Atom(assumed.predicate, RULE_VARIABLE),
            _abstract(refuted, ctx.entity),
        )
        hypo = ProofTree(
            RuleTag.IMPLICATION_ELIM,
            refuted,
            (assumption(assumed), axiom(bridge)),
            hypothetical=True,
        )
        return ProofTree(
            RuleTag.PROOF_BY_CONTRADICTION,
            conclusion,
            (known, hypo),
            hypothetical=hypothetical,
            discharged=frozenset({assumed}),
        )
    target = negate(known.conclusion)
    for _ in range(8):
        hypo = generate_compositional_proof(
            depth - 1,
            Constraint.exactly(target),
            ctx,
            disallowed,
            True,
            must_step=True,
            deep=deep and depth > 1,
        )
        s = _pick_ground_leaf(hypo, rng, positive_only=True)
        if s is None:
            continue
        hypo = _leaf_to_assumption(hypo, s)
        return ProofTree(
            RuleTag.PROOF_BY_CONTRADICTION,
            Negation(s),
            (known, hypo),
            hypothetical=hypothetical,
            discharged=frozenset({s}),
        )
    raise GenerationError("no assumable axiom in the hypothetical branch")


_STEPS = {
    RuleTag.IMPLICATION_ELIM: _step_implication_elim,
    RuleTag.CONJ_INTRO: _step_conj_intro,
    RuleTag.DISJ_INTRO: _step_disj_intro,
    RuleTag.CONJ_ELIM: _step_conj_elim,
    RuleTag.DISJ_ELIM: _step_disj_elim,
    RuleTag.PROOF_BY_CONTRADICTION: _step_proof_by_contradiction,
}


def _atoms(phi):
    from .forms import atoms_of

    return list(atoms_of(phi))


def _abstract(phi, entity):
    from .forms import _subst

    return _subst(phi, entity, RULE_VARIABLE)


def _pick_ground_leaf(tree: ProofTree, rng, positive_only=False):
    """A random ground-literal Axiom leaf conclusion, or None."""
    leaves = [
        n.conclusion
        for n in tree.walk()
        if n.rule is RuleTag.AXIOM
        and (
            isinstance(n.conclusion, Atom)
            or (not positive_only and isinstance(n.conclusion, Negation))
        )
    ]
    if not leaves:
        return None
    return leaves[rng.integers(len(leaves))]


def _leaf_to_assumption(tree: ProofTree, target) -> ProofTree:
    """Rebuild the tree with one Axiom leaf replaced by an Assumption."""
    key = canonical(target)
    done = [False]

    def rebuild(node):
        if (
            not done[0]
            and node.rule is RuleTag.AXIOM
            and canonical(node.conclusion) == key
        ):
            done[0] = True
            return assumption(node.conclusion)
        if node.rule in (RuleTag.AXIOM, RuleTag.ASSUMPTION):
            return node
        return ProofTree(
            node.rule,
            node.conclusion,
            tuple(rebuild(p) for p in node.premises),
            hypothetical=node.hypothetical,
            discharged=node.discharged,
        )

    out = rebuild(tree)
    if not done[0]:
        raise GenerationError(f"leaf {target} not found")
    return out


INNER_BUDGET = 100
OUTER_BUDGET = 1000


def generate_compositional(
    min_depth: int,
    num_rule_types: int,
    rng: np.random.Generator,
    vocab: Vocabulary = DEFAULT_VOCABULARY,
    width: int = 2,
) -> ProofTree:
    """A proof of at least `min_depth` using exactly `num_rule_types`
    distinct deduction rule families, with consistent axioms."""
    from .rulegen import _Symbols

    families = list(_STEPS)
    if not 1 <= num_rule_types <= len(families):
        raise GenerationError(f"num_rule_types must be in 1..{len(families)}")
    for _ in range(OUTER_BUDGET):
        # implication elimination anchors every deep proof, so always
        # include it in the sampled family subset
        others = [f for f in families if f is not RuleTag.IMPLICATION_ELIM]
        picked_idx = rng.permutation(len(others))[: num_rule_types - 1]
        target = {RuleTag.IMPLICATION_ELIM} | {others[i] for i in picked_idx}
        disallowed = frozenset(set(families) - target)
        for _ in range(INNER_BUDGET):
            symbols = _Symbols.sample(rng, vocab)
            entity = vocab.entity_symbol(vocab.names[rng.integers(len(vocab.names))])
            ctx = _Ctx(symbols, entity, rng, width)
            depth_budget = max(min_depth, num_rule_types)
            try:
                proof = generate_compositional_proof(
                    depth_budget, Constraint(), ctx, disallowed,
                    must_step=True, deep=True,
                )
            except GenerationError:
                continue
            depth, _w, types = tree_metrics(proof)
            if depth < min_depth or len(types) != num_rule_types:
                continue
            axioms = proof.axioms()
            try:
                if not consistent(axioms) or not provable(axioms, proof.conclusion):
                    continue
            except BudgetExceeded:
                continue
            return proof
    raise GenerationError(
        f"could not generate a proof with min_depth={min_depth}, "
        f"num_rule_types={num_rule_types}"
    )
