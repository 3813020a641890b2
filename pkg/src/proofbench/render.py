"""Render logical forms and proof trees into the controlled English fragment.

Every sentence produced here is parseable by `proofbench.parsing`; the two
modules share one closed grammar. Template variants (Every/Each/All, comma
vs repeated connectives) are chosen by a seeded rng when one is supplied,
otherwise the first applicable variant is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .forms import (
    Atom,
    Conjunction,
    Disjunction,
    FormError,
    LogicalForm,
    Negation,
    ProofTree,
    RuleTag,
    UniversalImplication,
    canonical,
    instantiate,
    is_literal,
)
from .vocab import Vocabulary, article


class RenderError(ValueError):
    pass


def _check_known(phi, vocab: Vocabulary):
    from .forms import predicates_of

    for p in predicates_of(phi):
        if not vocab.knows(p):
            raise RenderError(f"predicate {p!r} is not in the vocabulary")


def _item(literal, vocab: Vocabulary) -> str:
    """Render a literal as a predicate phrase: 'a wumpus', 'not dull'."""
    neg = isinstance(literal, Negation)
    atom = literal.inner if neg else literal
    if vocab.is_noun(atom.predicate):
        phrase = f"{article(atom.predicate)} {atom.predicate}"
    elif vocab.is_adjective(atom.predicate):
        phrase = atom.predicate
    else:
        raise RenderError(f"unknown predicate {atom.predicate!r}")
    return f"not {phrase}" if neg else phrase


def _plural_item(literal, vocab: Vocabulary) -> str:
    """Plural predicate phrase: 'mammals', 'not herbivorous'."""
    neg = isinstance(literal, Negation)
    atom = literal.inner if neg else literal
    if vocab.is_noun(atom.predicate):
        phrase = vocab.plural(atom.predicate)
    elif vocab.is_adjective(atom.predicate):
        phrase = atom.predicate
    else:
        raise RenderError(f"unknown predicate {atom.predicate!r}")
    return f"not {phrase}" if neg else phrase


def _item_list(operands, vocab, connective, style) -> str:
    items = [_item(o, vocab) for o in operands]
    if style == "comma" and len(items) > 2:
        return ", ".join(items[:-1]) + f", {connective} " + items[-1]
    return f" {connective} ".join(items)


def _subject(entity: str, vocab: Vocabulary) -> str:
    return vocab.entity_name(entity)


# template ids applicable per form shape
GROUND_STYLES = ("repeat", "comma")
RULE_TEMPLATES_NOUN = ("every", "each", "all", "bare")
RULE_TEMPLATES_ADJ = ("all_things",)
RULE_TEMPLATES_COMPOUND = ("everything_repeat", "everything_comma")


def applicable_templates(phi: LogicalForm, vocab: Vocabulary):
    """Template ids usable for phi, most canonical first."""
    if is_literal(phi):
        return ("literal",)
    if isinstance(phi, (Conjunction, Disjunction)):
        return GROUND_STYLES
    if isinstance(phi, UniversalImplication):
        ante, cons = phi.antecedent, phi.consequent
        if isinstance(ante, Atom) and vocab.is_noun(ante.predicate):
            if is_literal(cons):
                # 'all'/'bare' need a plural consequent; adjectives and
                # negations read fine, so every literal qualifies
                return ("every", "each", "all", "bare")
            return ("every", "each")
        if isinstance(ante, Atom) and vocab.is_adjective(ante.predicate):
            if is_literal(cons):
                return ("all_things", "everything_repeat", "everything_comma")
            return ("everything_repeat", "everything_comma")
        return RULE_TEMPLATES_COMPOUND
    raise RenderError(f"unsupported form shape: {phi!r}")


def render_form(phi: LogicalForm, vocab: Vocabulary, rng=None, template=None) -> str:
    """Render one logical form as one sentence.

    `rng` (a numpy Generator) picks among applicable template variants;
    without it the first variant is used. `template` forces a variant.
    """
    _check_known(phi, vocab)
    if template is None:
        options = applicable_templates(phi, vocab)
        template = options[0] if rng is None else options[rng.integers(len(options))]
    return _render_with(phi, vocab, template)


def _render_with(phi, vocab, template) -> str:
    if is_literal(phi):
        atom = phi.inner if isinstance(phi, Negation) else phi
        subject = _subject(atom.entity, vocab)
        return f"{subject} is {_item(phi, vocab)}."
    if isinstance(phi, (Conjunction, Disjunction)):
        connective = "and" if isinstance(phi, Conjunction) else "or"
        entity = phi.operands[0].inner.entity if isinstance(phi.operands[0], Negation) else phi.operands[0].entity
        subject = _subject(entity, vocab)
        style = "comma" if template == "comma" else "repeat"
        return f"{subject} is {_item_list(phi.operands, vocab, connective, style)}."
    if isinstance(phi, UniversalImplication):
        return _render_rule(phi, vocab, template)
    raise RenderError(f"unsupported form shape: {phi!r}")


def _cons_phrase(cons, vocab, plural=False) -> str:
    if is_literal(cons):
        return _plural_item(cons, vocab) if plural else _item(cons, vocab)
    connective = "and" if isinstance(cons, Conjunction) else "or"
    style = "comma" if connective == "or" else "repeat"
    return _item_list(cons.operands, vocab, connective, style)


def _render_rule(phi: UniversalImplication, vocab, template) -> str:
    ante, cons = phi.antecedent, phi.consequent
    if template in ("every", "each"):
        word = "Every" if template == "every" else "Each"
        return f"{word} {ante.predicate} is {_cons_phrase(cons, vocab)}."
    if template == "all":
        return f"All {vocab.plural(ante.predicate)} are {_cons_phrase(cons, vocab, plural=True)}."
    if template == "bare":
        return (
            f"{vocab.plural(ante.predicate).capitalize()} are "
            f"{_cons_phrase(cons, vocab, plural=True)}."
        )
    if template == "all_things":
        return f"All {ante.predicate} things are {_cons_phrase(cons, vocab)}."
    if template in ("everything_repeat", "everything_comma"):
        if is_literal(ante):
            ante_text = _item(ante, vocab)
        else:
            connective = "and" if isinstance(ante, Conjunction) else "or"
            style = "comma" if template == "everything_comma" else "repeat"
            ante_text = _item_list(ante.operands, vocab, connective, style)
        return f"Everything that is {ante_text} is {_cons_phrase(cons, vocab)}."
    if template.startswith("conditional:"):
        # 'conditional:<entity>' renders an If-sentence grounded at entity
        return render_conditional(phi, template.split(":", 1)[1], vocab)
    raise RenderError(f"unknown template {template!r} for {phi}")


def render_conditional(phi: UniversalImplication, entity: str, vocab: Vocabulary) -> str:
    """'If Alex is a mammal, Alex is not cold-blooded.' style rule rendering."""
    ante, cons = instantiate(phi, entity)
    a = _render_with(ante, vocab, None)[:-1]
    c = _render_with(cons, vocab, None)[:-1]
    return f"If {a}, {c}."


def _clause(phi, vocab) -> str:
    """A sentence for phi without its trailing period."""
    return render_form(phi, vocab)[:-1]


@dataclass
class RenderStyle:
    """Stylistic knobs for proof linearization.

    Paper-style gold chains restate the rule sentence before applying it
    (include_rules). Fields left as None fall back to an rng pick (or
    the first option without an rng).
    """

    include_rules: bool = True
    hoist_rules: bool = False  # emit a hypothetical block's rules before it
    contradiction_referent: str = "known"  # or "derived"
    closing_since: bool = True  # end a case split with 'Since X, Y.'
    assume_word: str = None  # "Suppose" | "Assume"
    therefore: bool = None  # prefix a contradiction's conclusion
    templates: dict = field(default_factory=dict)  # canonical(phi) -> template


def render_proof(
    proof: ProofTree, vocab: Vocabulary, rng=None, style: RenderStyle = None
) -> list:
    """Linearize a proof tree into gold chain-of-thought sentences.

    Dependency (postorder) order: each step's premises are emitted before
    its conclusion. Suppose-blocks open with an assumption sentence;
    contradictions close with 'This contradicts with X.'; proofs by cases
    close with 'Since X, Y.'.
    """
    out = []
    _emit(proof, vocab, rng, out, style or RenderStyle())
    return out


def _pick(rng, options):
    if rng is None:
        return options[0]
    return options[rng.integers(len(options))]


def _styled_form(phi, vocab, rng, style) -> str:
    template = style.templates.get(canonical(phi))
    return render_form(phi, vocab, rng, template=template)


def _styled_clause(phi, vocab, rng, style) -> str:
    return _styled_form(phi, vocab, rng, style)[:-1]


def _emit(node: ProofTree, vocab, rng, out, style: RenderStyle):
    if node.rule is RuleTag.AXIOM:
        if isinstance(node.conclusion, UniversalImplication) and not style.include_rules:
            return
        out.append(_styled_form(node.conclusion, vocab, rng, style))
        return
    if node.rule is RuleTag.ASSUMPTION:
        word = style.assume_word or _pick(rng, ("Suppose", "Assume"))
        out.append(f"{word} {_styled_clause(node.conclusion, vocab, rng, style)}.")
        return
    if node.rule is RuleTag.PROOF_BY_CONTRADICTION:
        known, hypo = node.premises
        _emit(known, vocab, rng, out, style)
        _emit_hypothetical(hypo, vocab, rng, out, style)
        referent = (
            hypo.conclusion
            if style.contradiction_referent == "derived"
            else known.conclusion
        )
        out.append(
            f"This contradicts with {_styled_clause(referent, vocab, rng, style)}."
        )
        therefore = (
            style.therefore
            if style.therefore is not None
            else _pick(rng, (True, False))
        )
        prefix = "Therefore, " if therefore else ""
        out.append(f"{prefix}{_styled_clause(node.conclusion, vocab, rng, style)}.")
        return
    if node.rule is RuleTag.DISJ_ELIM:
        disj = node.premises[0]
        if disj.rule is not RuleTag.AXIOM:
            # an axiom disjunction is only cited in the closing sentence
            _emit(disj, vocab, rng, out, style)
        for case in node.premises[1:]:
            _emit_hypothetical(case, vocab, rng, out, style)
        if style.closing_since:
            out.append(
                f"Since {_styled_clause(disj.conclusion, vocab, rng, style)}, "
                f"{_styled_clause(node.conclusion, vocab, rng, style)}."
            )
        else:
            out.append(_styled_form(node.conclusion, vocab, rng, style))
        return
    # implication elim, conjunction intro/elim, disjunction intro
    for premise in node.premises:
        _emit(premise, vocab, rng, out, style)
    out.append(_styled_form(node.conclusion, vocab, rng, style))


def _emit_hypothetical(sub: ProofTree, vocab, rng, out, style: RenderStyle):
    """Emit a Suppose-block, optionally hoisting its rules above it."""
    if style.hoist_rules and style.include_rules:
        inner = RenderStyle(**{**style.__dict__, "include_rules": False})
        for leaf in sub.walk():
            if leaf.rule is RuleTag.AXIOM and isinstance(
                leaf.conclusion, UniversalImplication
            ):
                out.append(_styled_form(leaf.conclusion, vocab, rng, style))
        _emit(sub, vocab, rng, out, inner)
    else:
        _emit(sub, vocab, rng, out, style)
