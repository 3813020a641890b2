"""Formal grading of free-text chains of thought.

Pipeline: parse every sentence of the context, the goal, and the
predicted chain of thought; replay the chain step by step, classifying
each step as an axiom, a strictly valid deduction, a broadly valid
deduction (implication transitivity or modus tollens), or invalid; the
answer is correct when the goal ends up proved with no undischarged
hypotheses.

Two grading guardrails: comparisons between forms ignore conjunct and
disjunct order, and every derived step must immediately follow one of
its premises (the sentence right before the step's most recent
occurrence must be one of the premises used to justify it).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .forms import (
    Atom,
    Conjunction,
    Disjunction,
    LogicalForm,
    Negation,
    UniversalImplication,
    canonical,
    instantiate,
    negate,
    substitute,
)
from .parsing import (
    AssumptionMarker,
    ContradictionMarker,
    ParseFailure,
    PremiseHint,
    parse_sentence,
    split_sentences,
)
from .vocab import Vocabulary

AXIOM = "axiom"
STRICT = "strictly-valid"
BROAD = "broadly-valid"
INVALID = "invalid"
CONTRADICTION = "contradiction-marker"
ASSUMPTION = "assumption"


@dataclass
class StepVerdict:
    index: int
    sentence: str
    form: object  # LogicalForm | marker | ParseFailure
    classification: str
    rule: str = ""
    premises: tuple = ()
    axioms_consumed: int = -1
    hypotheses: frozenset = frozenset()

    def to_record(self) -> dict:
        from .forms import to_sexpr

        form = None
        if isinstance(self.form, (Atom, Negation, Conjunction, Disjunction, UniversalImplication)):
            form = to_sexpr(self.form)
        return {
            "index": self.index,
            "sentence": self.sentence,
            "form": form,
            "classification": self.classification,
            "rule": self.rule,
            "axioms_consumed": self.axioms_consumed,
        }


@dataclass
class EvalReport:
    steps: list
    overall_correct: bool
    strict_correct: bool

    def to_record(self) -> dict:
        return {
            "overall_correct": self.overall_correct,
            "strict_correct": self.strict_correct,
            "steps": [s.to_record() for s in self.steps],
        }


@dataclass
class _Derivation:
    premises: tuple = ()
    discharged: tuple = ()
    k: int = -1
    rule: str = ""
    broad: bool = False

    @property
    def provable(self):
        return self.k >= 0


_FAIL = _Derivation()


class _State:
    """Mutable evaluation state for one chain of thought."""

    def __init__(self, axioms, broad_grading=True):
        self.axioms = {canonical(a): a for a in axioms}
        self.assumptions = {}  # canonical -> form, active Suppose blocks
        self.proved = {}  # canonical -> form, insertion ordered
        self.hyps = {}  # canonical -> list of frozenset(canonical)
        self.step_forms = []  # canonical per grading-relevant CoT position
        self.broad_grading = broad_grading
        self.transitivity_graph = self._build_graph(axioms)

    @staticmethod
    def _build_graph(axioms):
        graph = {}
        for a in axioms:
            if isinstance(a, UniversalImplication):
                src = canonical(substitute(a.antecedent, a.variable, "?x"))
                dst = canonical(substitute(a.consequent, a.variable, "?x"))
                graph.setdefault(src, []).append((dst, a))
        return graph

    def in_axioms(self, phi):
        key = canonical(phi)
        return key in self.axioms or key in self.assumptions

    def axiom_like(self):
        """Theory axioms plus active assumptions, assumptions first."""
        return list(self.assumptions.values()) + list(self.axioms.values())

    def recent_proved(self):
        return list(self.proved.values())[::-1]

    def record(self, phi, hyp_set):
        key = canonical(phi)
        self.proved[key] = phi
        entries = self.hyps.setdefault(key, [])
        if hyp_set in entries:
            entries.remove(hyp_set)  # re-append so recency ordering holds
        entries.append(hyp_set)

    def hyp_of(self, phi):
        """Smallest recorded hypothesis set for phi (empty if an axiom)."""
        key = canonical(phi)
        if key in self.axioms:
            return frozenset()
        entries = self.hyps.get(key)
        if not entries:
            return frozenset({key}) if key in self.assumptions else frozenset()
        if any(len(h) == 0 for h in entries):
            return frozenset()
        # prefer the most recent derivation of phi
        return entries[-1]

    def last_occurrence_prev(self, phi):
        """Form preceding the most recent CoT occurrence of phi, or None."""
        key = canonical(phi)
        for idx in range(len(self.step_forms) - 1, -1, -1):
            if self.step_forms[idx] == key:
                return self.step_forms[idx - 1] if idx > 0 else None
        return None

    def immediately_follows(self, phi, premise_keys) -> bool:
        prev = self.last_occurrence_prev(phi)
        return prev is not None and prev in premise_keys


def _premise_keys(premises):
    return {canonical(p) for p in premises}


def is_provable(phi: LogicalForm, state: _State) -> _Derivation:
    """One-step derivability of phi from axioms and previous conclusions.

    Mirrors the grading rules in branch order: axiom, conjunction
    introduction / disjunction introduction (compositional), conjunction
    elimination, implication elimination, disjunction elimination, modus
    tollens (broad), previously proved, implication transitivity (broad).
    k counts axioms consumed; k = -1 means not provable.
    """
    key = canonical(phi)
    if key in state.axioms:
        return _Derivation((phi,), (), 1, AXIOM)
    # an active assumption also settles phi, but only as a fallback: a
    # sibling Suppose-block may restate the same literal as a genuine
    # derivation, and then the derivation's hypotheses are the right ones
    assumed = _Derivation((phi,), (), 1, AXIOM) if key in state.assumptions else None

    if isinstance(phi, (Conjunction, Disjunction)):
        if assumed is not None:
            return assumed
        result = _provable_compositional(phi, state)
        if result.provable:
            return result

    # the gated implication-elimination branch runs before conjunction
    # elimination: when both could justify a step, the immediate-follow
    # gate picks whichever matches the preceding sentence
    for a in state.recent_proved() + state.axiom_like():
        if not isinstance(a, UniversalImplication):
            continue
        entity = _target_entity(phi)
        if entity is None:
            continue
        ante, cons = instantiate(a, entity)
        if canonical(cons) == canonical(phi):
            sub = is_provable(ante, state)
            if sub.provable and state.immediately_follows(
                phi, {canonical(ante), canonical(a)}
            ):
                k = sub.k + (1 if state.in_axioms(a) else 0)
                return _Derivation((ante, a), (), k, "implication_elim")

    for a in state.recent_proved() + state.axiom_like():
        if isinstance(a, Conjunction):
            for op in a.operands:
                if canonical(op) == canonical(phi):
                    if assumed is not None and not state.immediately_follows(
                        phi, {canonical(a)}
                    ):
                        continue
                    k = 1 + (1 if state.in_axioms(a) else 0)
                    return _Derivation((a,), (), k, "conjunction_elim")

    if assumed is not None:
        return assumed

    result = _provable_by_cases(phi, state, hint=None)
    if result.provable:
        return result

    if state.broad_grading:
        for a in state.recent_proved() + state.axiom_like():
            if not isinstance(a, UniversalImplication):
                continue
            entity = _target_entity(phi)
            if entity is None:
                continue
            ante, cons = instantiate(a, entity)
            if canonical(negate(ante)) == canonical(phi):
                neg_cons = negate(cons)
                sub = is_provable(neg_cons, state)
                if sub.provable and state.immediately_follows(
                    phi, {canonical(neg_cons), canonical(a)}
                ):
                    k = sub.k + (1 if state.in_axioms(a) else 0)
                    return _Derivation(
                        (neg_cons, a), (), k, "modus_tollens", broad=True
                    )

    if canonical(phi) in state.proved:
        return _Derivation((phi,), (), 0, "previous_step")

    if state.broad_grading and isinstance(phi, UniversalImplication):
        result = _provable_by_transitivity(phi, state)
        if result.provable:
            return result

    return _FAIL


def _target_entity(phi):
    """The single ground entity phi talks about, if any."""
    from .forms import atoms_of, is_variable

    entities = {a.entity for a in atoms_of(phi) if not is_variable(a.entity)}
    return entities.pop() if len(entities) == 1 else None


def _provable_compositional(phi, state) -> _Derivation:
    collected = []
    total_k = 0
    for op in phi.operands:
        sub = is_provable(op, state)
        if isinstance(phi, Conjunction):
            if sub.provable:
                collected.append(sub)
                total_k += sub.k
            else:
                return _FAIL
        else:  # disjunction introduction needs a consumed axiom (k > 0)
            if sub.k > 0:
                return _Derivation((op,), (), sub.k + 1, "disjunction_intro")
    if isinstance(phi, Conjunction) and len(collected) == len(phi.operands):
        if state.immediately_follows(phi, _premise_keys(phi.operands)):
            return _Derivation(
                tuple(phi.operands), (), total_k, "conjunction_intro"
            )
    return _FAIL


def _provable_by_cases(phi, state, hint) -> _Derivation:
    candidates = []
    if hint is not None and isinstance(hint, Disjunction):
        if state.in_axioms(hint) or canonical(hint) in state.proved:
            candidates.append(hint)
    candidates += [d for d in state.recent_proved() if isinstance(d, Disjunction)]
    candidates += [d for d in state.axiom_like() if isinstance(d, Disjunction)]
    phi_key = canonical(phi)
    for disj in candidates:
        discharged = []
        for op in disj.operands:
            op_key = canonical(op)
            entries = state.hyps.get(phi_key, [])
            if phi_key in state.proved and any(op_key in h for h in entries):
                discharged.append(op)
            else:
                break
        if len(discharged) == len(disj.operands):
            return _Derivation(
                (disj, phi), tuple(discharged), 1, "disjunction_elim"
            )
    return _FAIL


def _provable_by_transitivity(phi: UniversalImplication, state) -> _Derivation:
    src = canonical(substitute(phi.antecedent, phi.variable, "?x"))
    dst = canonical(substitute(phi.consequent, phi.variable, "?x"))
    # BFS over the precomputed rule graph
    frontier = [(src, [])]
    seen = {src}
    while frontier:
        node, path = frontier.pop(0)
        for nxt, rule in state.transitivity_graph.get(node, []):
            if nxt == dst:
                axioms = tuple(path + [rule])
                return _Derivation(
                    axioms, (), len(axioms), "implication_transitivity", broad=True
                )
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, path + [rule]))
    return _FAIL


def evaluate_cot(
    context: list,
    cot: list,
    goal: str,
    vocab: Vocabulary,
    broad_grading: bool = True,
) -> EvalReport:
    """Grade a chain of thought given as sentences.

    Total: unparseable sentences and anomalies become invalid steps, never
    exceptions. strict_correct re-runs the grading with the broad rules
    (transitivity, modus tollens) disabled.
    """
    report = _evaluate(context, cot, goal, vocab, broad_grading)
    if broad_grading:
        strict = _evaluate(context, cot, goal, vocab, False)
        report.strict_correct = strict.overall_correct
    else:
        report.strict_correct = report.overall_correct
    return report


def _evaluate(context, cot, goal, vocab, broad_grading) -> EvalReport:
    goal_form = parse_sentence(goal, vocab)
    axioms = []
    for sentence in context:
        parsed = parse_sentence(sentence, vocab)
        if not isinstance(parsed, ParseFailure) and not isinstance(
            parsed, (AssumptionMarker, ContradictionMarker, PremiseHint)
        ):
            axioms.append(parsed)

    state = _State(axioms, broad_grading)
    parsed_steps = [parse_sentence(s, vocab) for s in cot]
    verdicts = []

    for i, (sentence, parsed) in enumerate(zip(cot, parsed_steps)):
        if isinstance(parsed, ParseFailure):
            verdicts.append(StepVerdict(i, sentence, parsed, INVALID, "unparseable"))
            continue

        if isinstance(parsed, AssumptionMarker):
            phi = parsed.form
            key = canonical(phi)
            state.assumptions[key] = phi
            hyp = frozenset({key})
            state.record(phi, hyp)
            state.step_forms.append(key)
            verdicts.append(
                StepVerdict(i, sentence, phi, ASSUMPTION, "assumption", (phi,), 1, hyp)
            )
            continue

        if isinstance(parsed, ContradictionMarker):
            verdicts.append(
                _grade_contradiction(i, sentence, parsed, parsed_steps, verdicts, state)
            )
            continue

        hint = None
        phi = parsed
        if isinstance(parsed, PremiseHint):
            hint, phi = parsed.premise, parsed.form

        state.step_forms.append(canonical(phi))
        result = _grade_form(phi, hint, state)
        if result.provable:
            hyp = _conclusion_hypotheses(result, state)
            _apply_discharge(result, state)
            state.record(phi, hyp)
            classification = (
                AXIOM
                if result.rule == AXIOM
                else (BROAD if result.broad else STRICT)
            )
            verdicts.append(
                StepVerdict(
                    i, sentence, phi, classification, result.rule,
                    result.premises, result.k, hyp,
                )
            )
        else:
            verdicts.append(StepVerdict(i, sentence, phi, INVALID, "not-provable"))

    overall = _goal_proved(goal_form, state)
    return EvalReport(verdicts, overall, overall)


def _grade_form(phi, hint, state) -> _Derivation:
    if hint is not None:
        result = _provable_by_cases(phi, state, hint)
        if result.provable:
            return result
    return is_provable(phi, state)


def _conclusion_hypotheses(result: _Derivation, state: _State) -> frozenset:
    discharged = {canonical(d) for d in result.discharged}
    if result.rule == "disjunction_elim":
        # union over all case subproof hypothesis sets
        phi_key = canonical(result.premises[1])
        union = set()
        for entry in state.hyps.get(phi_key, []):
            union |= entry
        return frozenset(union - discharged)
    union = set()
    for p in result.premises:
        union |= state.hyp_of(p)
    return frozenset(union - discharged)


def _apply_discharge(result, state):
    for d in result.discharged:
        state.assumptions.pop(canonical(d), None)


def _grade_contradiction(i, sentence, marker, parsed_steps, verdicts, state):
    """The special branch for 'This contradicts with X.' sentences.

    Checks that the hypothesis refuted by the upcoming conclusion is
    among the hypotheses of the preceding step; on success the upcoming
    conclusion is registered as proved with that hypothesis discharged.
    """
    prev_form = _nearest_form(parsed_steps, i, -1)
    next_form = _nearest_form(parsed_steps, i, +1)
    if prev_form is None or next_form is None:
        return StepVerdict(i, sentence, marker, INVALID, "dangling-contradiction")
    refuted = negate(next_form)
    refuted_key = canonical(refuted)
    prev_key = canonical(prev_form)
    prev_hyps = state.hyps.get(prev_key, [])
    matching = [h for h in prev_hyps if refuted_key in h]
    if not matching:
        return StepVerdict(i, sentence, marker, INVALID, "no-matching-hypothesis")
    hyp_prev = min(matching, key=len)
    hyp_refuted = state.hyp_of(refuted)
    new_hyp = frozenset((hyp_prev | hyp_refuted) - {refuted_key})
    state.assumptions.pop(refuted_key, None)
    state.record(next_form, new_hyp)
    state.step_forms.append(canonical(next_form))
    return StepVerdict(
        i, sentence, marker, CONTRADICTION, "proof_by_contradiction",
        (prev_form, refuted), 1, new_hyp,
    )


def _nearest_form(parsed_steps, i, direction):
    j = i + direction
    while 0 <= j < len(parsed_steps):
        parsed = parsed_steps[j]
        if isinstance(parsed, ParseFailure):
            j += direction
            continue
        if isinstance(parsed, (AssumptionMarker, PremiseHint)):
            return parsed.form
        if isinstance(parsed, ContradictionMarker):
            j += direction
            continue
        return parsed
    return None


def _goal_proved(goal_form, state) -> bool:
    if isinstance(goal_form, ParseFailure):
        return False
    if isinstance(goal_form, (AssumptionMarker, ContradictionMarker, PremiseHint)):
        return False
    key = canonical(goal_form)
    if key in state.axioms:
        return True
    entries = state.hyps.get(key)
    return entries is not None and any(len(h) == 0 for h in entries)


def score_example(example, predicted_cot: str, vocab=None, broad_grading=True) -> EvalReport:
    """Grade raw predicted text against an assembled example."""
    from .vocab import DEFAULT_VOCABULARY

    vocab = vocab or getattr(example, "vocab", None) or DEFAULT_VOCABULARY
    sentences = split_sentences(predicted_cot)
    return evaluate_cot(
        example.question_sentences,
        sentences,
        example.query_sentence,
        vocab,
        broad_grading=broad_grading,
    )
