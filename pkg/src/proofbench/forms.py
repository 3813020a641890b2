"""Logical forms for the controlled first-order fragment, plus proof trees.

The fragment contains ground atoms, negated atoms, flat conjunctions and
disjunctions of literals, and universally quantified implications whose
bodies are flat. Nothing deeper is constructible: the constructors reject
nested quantifiers and nested connectives.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Union


class FormError(ValueError):
    """Raised when a logical form outside the fragment is constructed."""


@dataclass(frozen=True)
class Atom:
    predicate: str
    entity: str  # a constant, or the bound variable inside a rule body

    def __str__(self):
        return f"{self.predicate}({self.entity})"


@dataclass(frozen=True)
class Negation:
    inner: "Atom"

    def __post_init__(self):
        if not isinstance(self.inner, Atom):
            raise FormError(f"negation only wraps atoms, got {self.inner!r}")

    def __str__(self):
        return f"¬{self.inner}"


@dataclass(frozen=True)
class Conjunction:
    operands: tuple

    def __post_init__(self):
        _check_operands(self.operands, "conjunction")

    def __str__(self):
        return " ∧ ".join(str(o) for o in self.operands)


@dataclass(frozen=True)
class Disjunction:
    operands: tuple

    def __post_init__(self):
        _check_operands(self.operands, "disjunction")

    def __str__(self):
        return " ∨ ".join(str(o) for o in self.operands)


@dataclass(frozen=True)
class UniversalImplication:
    variable: str
    antecedent: "LogicalForm"
    consequent: "LogicalForm"

    def __post_init__(self):
        for side, name in ((self.antecedent, "antecedent"), (self.consequent, "consequent")):
            if isinstance(side, UniversalImplication):
                raise FormError("nested quantifiers are not in the fragment")
            mentioned = {a.entity for a in atoms_of(side)}
            if mentioned != {self.variable}:
                raise FormError(
                    f"rule {name} must mention exactly the bound variable "
                    f"{self.variable!r}, found {sorted(mentioned)}"
                )

    def __str__(self):
        return f"∀{self.variable}({self.antecedent} → {self.consequent})"


LogicalForm = Union[Atom, Negation, Conjunction, Disjunction, UniversalImplication]
Literal = Union[Atom, Negation]


def _check_operands(operands, kind):
    if not isinstance(operands, tuple):
        raise FormError(f"{kind} operands must be a tuple")
    if len(operands) < 2:
        raise FormError(f"{kind} needs at least 2 operands")
    for op in operands:
        if not isinstance(op, (Atom, Negation)):
            raise FormError(f"{kind} operands must be literals, got {op!r}")


def is_literal(phi) -> bool:
    return isinstance(phi, (Atom, Negation))


def atoms_of(phi) -> Iterator[Atom]:
    """Yield every atom occurring in phi."""
    if isinstance(phi, Atom):
        yield phi
    elif isinstance(phi, Negation):
        yield phi.inner
    elif isinstance(phi, (Conjunction, Disjunction)):
        for op in phi.operands:
            yield from atoms_of(op)
    elif isinstance(phi, UniversalImplication):
        yield from atoms_of(phi.antecedent)
        yield from atoms_of(phi.consequent)
    else:
        raise FormError(f"not a logical form: {phi!r}")


def predicates_of(phi) -> set:
    return {a.predicate for a in atoms_of(phi)}


def negate(phi: LogicalForm) -> LogicalForm:
    """Negate a form, pushing through connectives De Morgan style.

    In order of precedence: negate(not A) = A; negate(A or B) =
    negate(A) and negate(B); negate(A and B) = negate(A) or negate(B);
    otherwise not A.
    """
    if isinstance(phi, Negation):
        return phi.inner
    if isinstance(phi, Disjunction):
        return Conjunction(tuple(negate(o) for o in phi.operands))
    if isinstance(phi, Conjunction):
        return Disjunction(tuple(negate(o) for o in phi.operands))
    if isinstance(phi, Atom):
        return Negation(phi)
    raise FormError(f"cannot negate {phi!r}")


def is_variable(symbol: str) -> bool:
    """Single-letter symbols (and ?-prefixed ones) are bound variables."""
    return len(symbol) == 1 or symbol.startswith("?")


def substitute(phi: LogicalForm, variable: str, entity: str) -> LogicalForm:
    """Replace every occurrence of `variable` with `entity`."""
    for a in atoms_of(phi):
        if a.entity != variable and is_variable(a.entity):
            raise FormError(f"unexpected free variable {a.entity!r} in {phi}")
    return _subst(phi, variable, entity)


def _subst(phi, variable, entity):
    if isinstance(phi, Atom):
        if phi.entity == variable:
            return Atom(phi.predicate, entity)
        return phi
    if isinstance(phi, Negation):
        return Negation(_subst(phi.inner, variable, entity))
    if isinstance(phi, Conjunction):
        return Conjunction(tuple(_subst(o, variable, entity) for o in phi.operands))
    if isinstance(phi, Disjunction):
        return Disjunction(tuple(_subst(o, variable, entity) for o in phi.operands))
    raise FormError(f"cannot substitute in {phi!r}")


def instantiate(rule: UniversalImplication, entity: str):
    """Ground a rule's antecedent and consequent at an entity."""
    return (
        substitute(rule.antecedent, rule.variable, entity),
        substitute(rule.consequent, rule.variable, entity),
    )


def canonical(phi: LogicalForm) -> str:
    """Serialize phi as an s-expression, sorting conjunct/disjunct order.

    Two forms are `equivalent` iff their canonical strings are equal.
    """
    if isinstance(phi, Atom):
        return f"({phi.predicate} {phi.entity})"
    if isinstance(phi, Negation):
        return f"(not {canonical(phi.inner)})"
    if isinstance(phi, Conjunction):
        return "(and " + " ".join(sorted(canonical(o) for o in phi.operands)) + ")"
    if isinstance(phi, Disjunction):
        return "(or " + " ".join(sorted(canonical(o) for o in phi.operands)) + ")"
    if isinstance(phi, UniversalImplication):
        # normalize the bound variable name
        a = substitute(phi.antecedent, phi.variable, "?x")
        c = substitute(phi.consequent, phi.variable, "?x")
        return f"(forall ?x {canonical(a)} {canonical(c)})"
    raise FormError(f"not a logical form: {phi!r}")


def equivalent(phi, psi) -> bool:
    """Equality modulo conjunct/disjunct order at every level."""
    return canonical(phi) == canonical(psi)


def to_sexpr(phi: LogicalForm) -> str:
    """Serialize phi preserving operand order (bit-exact across runs)."""
    if isinstance(phi, Atom):
        return f"({phi.predicate} {phi.entity})"
    if isinstance(phi, Negation):
        return f"(not {to_sexpr(phi.inner)})"
    if isinstance(phi, Conjunction):
        return "(and " + " ".join(to_sexpr(o) for o in phi.operands) + ")"
    if isinstance(phi, Disjunction):
        return "(or " + " ".join(to_sexpr(o) for o in phi.operands) + ")"
    if isinstance(phi, UniversalImplication):
        return (
            f"(forall {phi.variable} {to_sexpr(phi.antecedent)} "
            f"{to_sexpr(phi.consequent)})"
        )
    raise FormError(f"not a logical form: {phi!r}")


def from_sexpr(text: str) -> LogicalForm:
    """Parse the serialization produced by `to_sexpr`."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    form, rest = _parse_sexpr(tokens)
    if rest:
        raise FormError(f"trailing tokens in s-expression: {rest}")
    return form


def _parse_sexpr(tokens):
    if not tokens or tokens[0] != "(":
        raise FormError(f"malformed s-expression at {tokens[:5]}")
    head = tokens[1]
    if head == "not":
        inner, rest = _parse_sexpr(tokens[2:])
        return Negation(inner), _expect_close(rest)
    if head in ("and", "or"):
        rest = tokens[2:]
        ops = []
        while rest and rest[0] != ")":
            op, rest = _parse_sexpr(rest)
            ops.append(op)
        cls = Conjunction if head == "and" else Disjunction
        return cls(tuple(ops)), _expect_close(rest)
    if head == "forall":
        var = tokens[2]
        ante, rest = _parse_sexpr(tokens[3:])
        cons, rest = _parse_sexpr(rest)
        return UniversalImplication(var, ante, cons), _expect_close(rest)
    # atom: (predicate entity)
    if len(tokens) < 4 or tokens[3] != ")":
        raise FormError(f"malformed atom at {tokens[:5]}")
    return Atom(head, tokens[2]), tokens[4:]


def _expect_close(tokens):
    if not tokens or tokens[0] != ")":
        raise FormError("expected ')'")
    return tokens[1:]


class RuleTag(enum.Enum):
    AXIOM = "axiom"
    ASSUMPTION = "assumption"
    IMPLICATION_ELIM = "implication_elim"
    CONJ_INTRO = "conjunction_intro"
    CONJ_ELIM = "conjunction_elim"
    DISJ_INTRO = "disjunction_intro"
    DISJ_ELIM = "disjunction_elim"
    PROOF_BY_CONTRADICTION = "proof_by_contradiction"
    # classifications used only when grading model output
    BROAD_TRANSITIVITY = "broad_transitivity"
    BROAD_MODUS_TOLLENS = "broad_modus_tollens"


LEAF_TAGS = frozenset({RuleTag.AXIOM, RuleTag.ASSUMPTION})
GENERATOR_TAGS = (
    RuleTag.IMPLICATION_ELIM,
    RuleTag.CONJ_INTRO,
    RuleTag.CONJ_ELIM,
    RuleTag.DISJ_INTRO,
    RuleTag.DISJ_ELIM,
    RuleTag.PROOF_BY_CONTRADICTION,
)


@dataclass(frozen=True)
class ProofTree:
    rule: RuleTag
    conclusion: LogicalForm
    premises: tuple = ()
    hypothetical: bool = False
    discharged: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.rule in LEAF_TAGS and self.premises:
            raise FormError(f"{self.rule.value} nodes take no premises")
        if self.rule not in LEAF_TAGS and not self.premises:
            raise FormError(f"{self.rule.value} nodes need premises")

    def walk(self) -> Iterator["ProofTree"]:
        """Postorder traversal (premises before conclusion)."""
        for p in self.premises:
            yield from p.walk()
        yield self

    def axioms(self) -> list:
        """Conclusions of Axiom leaves, in postorder, deduplicated."""
        seen, out = set(), []
        for node in self.walk():
            if node.rule is RuleTag.AXIOM:
                key = canonical(node.conclusion)
                if key not in seen:
                    seen.add(key)
                    out.append(node.conclusion)
        return out

    def assumptions(self) -> list:
        return [n.conclusion for n in self.walk() if n.rule is RuleTag.ASSUMPTION]


def axiom(phi) -> ProofTree:
    return ProofTree(RuleTag.AXIOM, phi)


def assumption(phi, hypothetical=True) -> ProofTree:
    return ProofTree(RuleTag.ASSUMPTION, phi, hypothetical=hypothetical)


def tree_metrics(proof: ProofTree):
    """(depth, width, rule_types) of a proof tree.

    depth: longest root-to-leaf chain of non-leaf steps.  width: max
    premise count over non-leaf steps.  rule_types excludes leaves.
    """
    if proof.rule in LEAF_TAGS:
        return 0, 0, set()
    depth = 0
    width = 0
    types = set()
    for node in proof.walk():
        if node.rule in LEAF_TAGS:
            continue
        types.add(node.rule)
        width = max(width, len(node.premises))
    depth = _chain_depth(proof)
    return depth, width, types


def _chain_depth(node: ProofTree) -> int:
    below = max((_chain_depth(p) for p in node.premises), default=0)
    return below + (0 if node.rule in LEAF_TAGS else 1)


def check_well_formed(proof: ProofTree) -> None:
    """Verify leaf/discharge invariants; raise FormError on violation."""
    undischarged = _collect_undischarged(proof)
    if undischarged:
        raise FormError(
            "assumptions never discharged: "
            + ", ".join(str(a) for a in undischarged)
        )


def _collect_undischarged(node: ProofTree) -> list:
    if node.rule is RuleTag.ASSUMPTION:
        return [node.conclusion]
    open_hyps = []
    for p in node.premises:
        open_hyps.extend(_collect_undischarged(p))
    if node.discharged:
        keys = {canonical(d) for d in node.discharged}
        open_hyps = [h for h in open_hyps if canonical(h) not in keys]
    return open_hyps
