"""Example assembly and JSONL dataset I/O.

An Example bundles one generated problem: the rendered question
sentences, the query, the gold chain of thought, and the underlying
logical forms (axioms, goal, and full proof tree) for structural
round-tripping. Serialization is line-oriented JSON, one example per
line, stable across runs for a fixed seed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .compgen import generate_compositional
from .distractors import compositional_distractors, distractor_axioms
from .forms import (
    LogicalForm,
    ProofTree,
    RuleTag,
    from_sexpr,
    to_sexpr,
    tree_metrics,
)
from .render import render_form, render_proof
from .rulegen import GenParams, generate_proof
from .vocab import DEFAULT_VOCABULARY, Vocabulary

SINGLE_RULE = "single_rule"
COMPOSITIONAL = "compositional"
ORDERINGS = ("postorder", "shuffle")


@dataclass
class Example:
    id: str
    kind: str
    seed: int
    question_sentences: list
    query_sentence: str
    chain_of_thought: list
    axioms: list
    goal: LogicalForm
    proof: ProofTree
    rule: str = ""
    depth: int = 0
    width: int = 0
    min_depth: int = 0
    num_rule_types: int = 0
    distractors: int = 0
    ordering: str = "postorder"

    @property
    def question(self) -> str:
        return " ".join(self.question_sentences)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "rule": self.rule,
            "depth": self.depth,
            "width": self.width,
            "min_depth": self.min_depth,
            "num_rule_types": self.num_rule_types,
            "distractors": self.distractors,
            "ordering": self.ordering,
            "seed": self.seed,
            "question": self.question_sentences,
            "query": self.query_sentence,
            "chain_of_thought": self.chain_of_thought,
            "logical_forms": {
                "axioms": [to_sexpr(a) for a in self.axioms],
                "query": to_sexpr(self.goal),
                "proof_steps": proof_to_record(self.proof),
            },
        }

    @classmethod
    def from_record(cls, record: dict) -> "Example":
        forms = record["logical_forms"]
        return cls(
            id=record["id"],
            kind=record["kind"],
            seed=record["seed"],
            question_sentences=list(record["question"]),
            query_sentence=record["query"],
            chain_of_thought=list(record["chain_of_thought"]),
            axioms=[from_sexpr(s) for s in forms["axioms"]],
            goal=from_sexpr(forms["query"]),
            proof=proof_from_record(forms["proof_steps"]),
            rule=record.get("rule", ""),
            depth=record.get("depth", 0),
            width=record.get("width", 0),
            min_depth=record.get("min_depth", 0),
            num_rule_types=record.get("num_rule_types", 0),
            distractors=record.get("distractors", 0),
            ordering=record.get("ordering", "postorder"),
        )


def proof_to_record(node: ProofTree) -> dict:
    return {
        "rule": node.rule.value,
        "conclusion": to_sexpr(node.conclusion),
        "premises": [proof_to_record(p) for p in node.premises],
        "hypothetical": node.hypothetical,
        "discharged": sorted(to_sexpr(d) for d in node.discharged),
    }


def proof_from_record(record: dict) -> ProofTree:
    return ProofTree(
        RuleTag(record["rule"]),
        from_sexpr(record["conclusion"]),
        tuple(proof_from_record(p) for p in record["premises"]),
        hypothetical=record.get("hypothetical", False),
        discharged=frozenset(
            from_sexpr(s) for s in record.get("discharged", ())
        ),
    )


def _example_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,)))
    )


def _assemble_question(proof, extra_axioms, ordering, rng, vocab):
    """Render and order the axiom sentences of a question."""
    core = proof.axioms()
    if ordering == "shuffle":
        axioms = core + list(extra_axioms)
        order = rng.permutation(len(axioms))
        axioms = [axioms[i] for i in order]
    elif ordering == "postorder":
        axioms = list(core)
        for d in extra_axioms:
            pos = int(rng.integers(len(axioms) + 1))
            axioms.insert(pos, d)
    else:
        raise ValueError(f"unknown ordering {ordering!r}")
    sentences = [render_form(a, vocab, rng) for a in axioms]
    return axioms, sentences


def make_single_rule_example(
    params: GenParams,
    seed: int,
    index: int = 0,
    ordering: str = "postorder",
    vocab: Vocabulary = DEFAULT_VOCABULARY,
) -> Example:
    rng = _example_rng(seed, index)
    proof = generate_proof(params, rng, vocab)
    extra = distractor_axioms(proof, params.rule, params.distractors, rng, vocab)
    axioms, question = _assemble_question(proof, extra, ordering, rng, vocab)
    cot = render_proof(proof, vocab, rng)
    depth, width, _types = tree_metrics(proof)
    return Example(
        id=f"{params.rule.value}-d{params.depth}-w{params.width}-{seed}-{index}",
        kind=SINGLE_RULE,
        seed=seed,
        question_sentences=question,
        query_sentence=render_form(proof.conclusion, vocab, rng),
        chain_of_thought=cot,
        axioms=axioms,
        goal=proof.conclusion,
        proof=proof,
        rule=params.rule.value,
        depth=depth,
        width=width,
        distractors=params.distractors,
        ordering=ordering,
    )


def make_compositional_example(
    min_depth: int,
    num_rule_types: int,
    seed: int,
    index: int = 0,
    distractors: int = 0,
    ordering: str = "postorder",
    vocab: Vocabulary = DEFAULT_VOCABULARY,
) -> Example:
    rng = _example_rng(seed, index)
    proof = generate_compositional(min_depth, num_rule_types, rng, vocab)
    extra = compositional_distractors(proof, distractors, rng, vocab)
    axioms, question = _assemble_question(proof, extra, ordering, rng, vocab)
    cot = render_proof(proof, vocab, rng)
    depth, width, _types = tree_metrics(proof)
    return Example(
        id=f"comp-d{min_depth}-t{num_rule_types}-{seed}-{index}",
        kind=COMPOSITIONAL,
        seed=seed,
        question_sentences=question,
        query_sentence=render_form(proof.conclusion, vocab, rng),
        chain_of_thought=cot,
        axioms=axioms,
        goal=proof.conclusion,
        proof=proof,
        depth=depth,
        width=width,
        min_depth=min_depth,
        num_rule_types=num_rule_types,
        distractors=distractors,
        ordering=ordering,
    )


def write_jsonl(path, examples) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(json.dumps(ex.to_record()) + "\n")


def read_jsonl(path) -> list:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(Example.from_record(json.loads(line)))
    return out
