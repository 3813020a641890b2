"""Semantic parser for the controlled English fragment.

Total over arbitrary strings: anything outside the grammar comes back as
a ParseFailure value, never an exception. The parser is the inverse of
`proofbench.render` over every template, and additionally recognizes the
proof-structure markers used in chains of thought: assumption prefixes,
contradiction claims, and 'Since X, Y' premise hints.
"""
from __future__ import annotations

from dataclasses import dataclass

from .forms import (
    Atom,
    Conjunction,
    Disjunction,
    FormError,
    LogicalForm,
    Negation,
    UniversalImplication,
)
from .vocab import Vocabulary

RULE_VARIABLE = "x"


@dataclass(frozen=True)
class AssumptionMarker:
    """'Suppose X.' / 'Assume X.'"""

    form: LogicalForm


@dataclass(frozen=True)
class ContradictionMarker:
    """'This contradicts with X.'"""

    form: LogicalForm


@dataclass(frozen=True)
class PremiseHint:
    """'Since X, Y.' — Y asserted with X as an explicit premise."""

    premise: LogicalForm
    form: LogicalForm


@dataclass(frozen=True)
class ParseFailure:
    text: str
    reason: str = "outside the grammar"


ParseResult = object  # LogicalForm | AssumptionMarker | ContradictionMarker | PremiseHint | ParseFailure


class _NoParse(Exception):
    pass


def parse_sentence(sentence: str, vocab: Vocabulary) -> ParseResult:
    """Parse one sentence; returns a ParseFailure on anything unparseable."""
    try:
        return _parse(sentence, vocab)
    except (_NoParse, FormError) as err:
        return ParseFailure(sentence, str(err) or "outside the grammar")


def split_sentences(text: str) -> list:
    """Split free text into period-terminated sentences."""
    out = []
    for raw in text.replace("\n", " ").split("."):
        raw = raw.strip()
        if raw:
            out.append(raw + ".")
    return out


def _parse(sentence: str, vocab: Vocabulary):
    text = sentence.strip()
    if not text.endswith("."):
        raise _NoParse("missing final period")
    text = text[:-1].strip()
    if not text:
        raise _NoParse("empty sentence")

    for prefix in ("Therefore, ", "Therefore ", "So, ", "So "):
        if text.startswith(prefix):
            text = text[len(prefix):]
            break

    for prefix in ("Suppose ", "Assume "):
        if text.startswith(prefix):
            return AssumptionMarker(_parse_body(text[len(prefix):], vocab))
    if text.startswith("This contradicts with "):
        return ContradictionMarker(
            _parse_body(text[len("This contradicts with "):], vocab)
        )
    if text.startswith("Since "):
        return _parse_since(text[len("Since "):], vocab)
    return _parse_body(text, vocab)


def _parse_since(text: str, vocab):
    # the premise clause may itself contain commas, so try split points
    # right to left
    idx = len(text)
    while True:
        idx = text.rfind(", ", 0, idx)
        if idx < 0:
            raise _NoParse("no valid 'Since X, Y' split")
        left, right = text[:idx], text[idx + 2:]
        try:
            return PremiseHint(_parse_body(left, vocab), _parse_body(right, vocab))
        except (_NoParse, FormError):
            continue


def _parse_body(text: str, vocab: Vocabulary):
    """A declarative clause (no trailing period)."""
    words = text.split()
    if len(words) < 3:
        raise _NoParse("too short")

    if words[0] == "Everything" and words[1] == "that" and words[2] == "is":
        return _parse_everything(text, vocab)
    if words[0] in ("Every", "Each"):
        return _parse_every(words, vocab)
    if words[0] == "All":
        return _parse_all(words, vocab)
    if words[0] == "If":
        return _parse_conditional(text, vocab)

    singular = vocab.singular(words[0].lower())
    if singular is not None and words[1] == "are":
        # bare-plural rule: 'Wumpuses are shumpuses'
        cons = _parse_plural_items(words[2:], vocab)
        return _rule(Atom(singular, RULE_VARIABLE), cons)

    # ground sentence: '<Name> is <items>'
    if words[1] != "is":
        raise _NoParse(f"expected 'is' after subject in {text!r}")
    entity = vocab.entity_symbol(words[0])
    if vocab.entity_name(entity) not in vocab.names:
        raise _NoParse(f"unknown entity {words[0]!r}")
    items, connective = _split_items(" ".join(words[2:]))
    literals = tuple(_parse_item(i, entity, vocab) for i in items)
    return _combine(literals, connective)


def _combine(literals, connective):
    if len(literals) == 1:
        return literals[0]
    if connective == "and":
        return Conjunction(literals)
    if connective == "or":
        return Disjunction(literals)
    raise _NoParse("list without a connective")


def _rule(ante, cons):
    return UniversalImplication(RULE_VARIABLE, ante, cons)


def _parse_everything(text, vocab):
    # Everything that is <items> is <cons-items>
    rest = text[len("Everything that is "):]
    cut = rest.rfind(" is ")
    if cut < 0:
        raise _NoParse("missing consequent in 'Everything that is' rule")
    ante_text, cons_text = rest[:cut], rest[cut + 4:]
    ante_items, ante_conn = _split_items(ante_text)
    ante = _combine(
        tuple(_parse_item(i, RULE_VARIABLE, vocab) for i in ante_items), ante_conn
    )
    cons_items, cons_conn = _split_items(cons_text)
    cons = _combine(
        tuple(_parse_item(i, RULE_VARIABLE, vocab) for i in cons_items), cons_conn
    )
    return _rule(ante, cons)


def _parse_every(words, vocab):
    # Every/Each <noun> is <cons-items>
    if len(words) < 4 or words[2] != "is":
        raise _NoParse("malformed Every/Each rule")
    noun = words[1]
    if not vocab.is_noun(noun):
        raise _NoParse(f"unknown noun {noun!r}")
    items, conn = _split_items(" ".join(words[3:]))
    cons = _combine(
        tuple(_parse_item(i, RULE_VARIABLE, vocab) for i in items), conn
    )
    return _rule(Atom(noun, RULE_VARIABLE), cons)


def _parse_all(words, vocab):
    # All <adj> things are <cons> | All <plural-noun> are <plural-cons>
    if len(words) >= 4 and words[2] == "things" and words[3] == "are":
        adj = words[1]
        if not vocab.is_adjective(adj):
            raise _NoParse(f"unknown adjective {adj!r}")
        items, conn = _split_items(" ".join(words[4:]))
        cons = _combine(
            tuple(_parse_item(i, RULE_VARIABLE, vocab) for i in items), conn
        )
        return _rule(Atom(adj, RULE_VARIABLE), cons)
    singular = vocab.singular(words[1])
    if singular is not None and len(words) >= 3 and words[2] == "are":
        cons = _parse_plural_items(words[3:], vocab)
        return _rule(Atom(singular, RULE_VARIABLE), cons)
    raise _NoParse("malformed All rule")


def _parse_conditional(text, vocab):
    # If <E> is <item>, <E> is <item>  (both clauses about the same entity)
    rest = text[len("If "):]
    idx = len(rest)
    while True:
        idx = rest.rfind(", ", 0, idx)
        if idx < 0:
            raise _NoParse("no valid 'If X, Y' split")
        try:
            left = _parse_body(rest[:idx], vocab)
            right = _parse_body(rest[idx + 2:], vocab)
        except (_NoParse, FormError):
            continue
        break
    entities = {a.entity for form in (left, right) for a in _ground_atoms(form)}
    if len(entities) != 1:
        raise _NoParse("conditional clauses must share one entity")
    entity = entities.pop()
    return _rule(_abstract(left, entity), _abstract(right, entity))


def _ground_atoms(form):
    from .forms import atoms_of

    return list(atoms_of(form))


def _abstract(form, entity):
    from .forms import _subst

    return _subst(form, entity, RULE_VARIABLE)


def _split_items(text: str):
    """Split 'a, b, and c' / 'a and b and c' / or-variants.

    Returns (items, connective) with connective in {'and', 'or', None}.
    """
    text = text.strip()
    if not text:
        raise _NoParse("empty item list")
    if ", " in text:
        parts = [p.strip() for p in text.split(", ") if p.strip()]
        connective = None
        for head in ("and ", "or "):
            if parts[-1].startswith(head):
                connective = head.strip()
                parts[-1] = parts[-1][len(head):]
        # allow 'a, b and c' (connective buried in the last chunk)
        if connective is None:
            for conn in ("and", "or"):
                sep = f" {conn} "
                if sep in parts[-1]:
                    last = parts[-1].split(sep)
                    parts = parts[:-1] + [p.strip() for p in last]
                    connective = conn
                    break
        if connective is None:
            raise _NoParse(f"comma list without connective: {text!r}")
        return parts, connective
    for conn in ("and", "or"):
        sep = f" {conn} "
        if sep in text:
            return [p.strip() for p in text.split(sep)], conn
    return [text], None


def _parse_item(item: str, entity: str, vocab: Vocabulary):
    """A singular predicate phrase: 'a wumpus', 'not dull', 'an impus'."""
    words = item.split()
    neg = False
    if words and words[0] == "not":
        neg = True
        words = words[1:]
    if words and words[0] in ("a", "an"):
        words = words[1:]
    if len(words) != 1 or not vocab.knows(words[0]):
        raise _NoParse(f"unknown predicate phrase {item!r}")
    atom = Atom(words[0], entity)
    return Negation(atom) if neg else atom


def _parse_plural_items(words, vocab: Vocabulary):
    """Consequent of a plural rule: 'mammals', 'not herbivorous'."""
    text = " ".join(words)
    items, conn = _split_items(text)
    literals = []
    for item in items:
        iw = item.split()
        neg = False
        if iw and iw[0] == "not":
            neg = True
            iw = iw[1:]
        if len(iw) != 1:
            raise _NoParse(f"unknown plural phrase {item!r}")
        word = iw[0]
        singular = vocab.singular(word)
        if singular is not None:
            atom = Atom(singular, RULE_VARIABLE)
        elif vocab.is_adjective(word):
            atom = Atom(word, RULE_VARIABLE)
        else:
            raise _NoParse(f"unknown plural predicate {word!r}")
        literals.append(Negation(atom) if neg else atom)
    return _combine(tuple(literals), conn)
