"""Experiment harness: prompts, model clients, trial loop, scoring.

An experiment generates fresh problems trial by trial, prompts a model
with a few in-context demonstrations, grades the sampled chain of
thought, and persists every trial incrementally as JSONL so an
interrupted run can resume where it stopped.
"""
from __future__ import annotations

import json
import logging
import math
import os
import time
from dataclasses import dataclass, field, fields

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .dataset import (
    COMPOSITIONAL,
    SINGLE_RULE,
    Example,
    make_compositional_example,
    make_single_rule_example,
)
from .evaluator import evaluate_cot
from .forms import RuleTag
from .parsing import split_sentences
from .rulegen import GenParams
from .vocab import DEFAULT_VOCABULARY

log = logging.getLogger(__name__)


@dataclass
class ModelConfig:
    backend: str = "echo"
    url: str = ""
    model: str = ""
    api_key_env: str = "MODEL_API_KEY"
    max_retries: int = 5
    backoff: float = 1.0
    timeout: float = 60.0
    max_tokens: int = 512
    temperature: float = 0.0


@dataclass
class ExperimentConfig:
    name: str = "experiment"
    kind: str = SINGLE_RULE
    rule: str = "implication_elim"
    depth: int = 1
    width: int = 1
    min_depth: int = 1
    num_rule_types: int = 1
    distractors: int = 0
    ordering: str = "postorder"
    trials: int = 100
    seed: int = 0
    num_demos: int = 8
    ood_demos: bool = True
    broad_grading: bool = True
    output: str = "results.jsonl"
    model: ModelConfig = field(default_factory=ModelConfig)


def load_config(path) -> ExperimentConfig:
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    exp = raw.get("experiment", {})
    model_raw = raw.get("model", {})
    known = {f.name for f in fields(ExperimentConfig)} - {"model"}
    unknown = set(exp) - known
    if unknown:
        raise ValueError(f"unknown experiment keys: {sorted(unknown)}")
    model_known = {f.name for f in fields(ModelConfig)}
    bad = set(model_raw) - model_known
    if bad:
        raise ValueError(f"unknown model keys: {sorted(bad)}")
    return ExperimentConfig(**exp, model=ModelConfig(**model_raw))


# ---------------------------------------------------------------------------
# prompts


def format_block(example: Example, with_answer: bool) -> str:
    lines = [
        f"Q: {example.question} Prove: {example.query_sentence}",
        "A:" + (" " + " ".join(example.chain_of_thought) if with_answer else ""),
    ]
    return "\n".join(lines)


def build_prompt(demos, test: Example) -> str:
    blocks = [format_block(d, True) for d in demos]
    blocks.append(format_block(test, False))
    return "\n\n".join(blocks)


def sample_demos(config: ExperimentConfig, trial: int):
    """In-context demonstrations for one trial.

    With ood_demos, demonstrations never use the tested rule family:
    single-rule trials get demos drawn from the other families at depth
    1, and compositional trials get one single-rule demo per family.
    Without it, demos come from the tested distribution itself.
    """
    demo_seed = config.seed + 986_527
    rng = np.random.default_rng([config.seed, trial])
    demos = []
    if config.kind == COMPOSITIONAL:
        families = list(_DEMO_FAMILIES)
        for i in range(config.num_demos):
            fam = families[i % len(families)]
            demos.append(_demo_example(fam, demo_seed, trial * 1000 + i))
        return demos
    if config.ood_demos:
        families = [f for f in _DEMO_FAMILIES if f.value != config.rule]
    else:
        families = [RuleTag(config.rule)]
    order = rng.permutation(len(families))
    for i in range(config.num_demos):
        fam = families[order[i % len(families)]]
        demos.append(_demo_example(fam, demo_seed, trial * 1000 + i))
    return demos


_DEMO_FAMILIES = (
    RuleTag.IMPLICATION_ELIM,
    RuleTag.CONJ_INTRO,
    RuleTag.CONJ_ELIM,
    RuleTag.DISJ_INTRO,
    RuleTag.DISJ_ELIM,
    RuleTag.PROOF_BY_CONTRADICTION,
)


def _demo_example(family: RuleTag, seed: int, index: int) -> Example:
    width = 1 if family is RuleTag.IMPLICATION_ELIM else 2
    params = GenParams(rule=family, depth=1, width=width)
    return make_single_rule_example(params, seed, index)


def make_trial_example(config: ExperimentConfig, trial: int) -> Example:
    if config.kind == COMPOSITIONAL:
        return make_compositional_example(
            config.min_depth,
            config.num_rule_types,
            config.seed,
            trial,
            distractors=config.distractors,
            ordering=config.ordering,
        )
    params = GenParams(
        rule=RuleTag(config.rule),
        depth=config.depth,
        width=config.width,
        distractors=config.distractors,
    )
    return make_single_rule_example(
        params, config.seed, trial, ordering=config.ordering
    )


# ---------------------------------------------------------------------------
# model clients


class ModelError(RuntimeError):
    pass


class HttpClient:
    """POSTs prompts to a completion endpoint, with retry and backoff."""

    RETRY_STATUSES = (429, 500, 502, 503, 504)

    def __init__(self, config: ModelConfig, session=None):
        import requests

        if not config.url:
            raise ModelError("model.url is required for the http backend")
        self.config = config
        self.session = session or requests.Session()

    def complete(self, prompt: str, example: Example = None) -> str:
        cfg = self.config
        headers = {}
        key = os.environ.get(cfg.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        payload = {
            "model": cfg.model,
            "prompt": prompt,
            "max_tokens": cfg.max_tokens,
            "temperature": cfg.temperature,
        }
        delay = cfg.backoff
        last = None
        for _ in range(cfg.max_retries):
            try:
                resp = self.session.post(
                    cfg.url, json=payload, headers=headers, timeout=cfg.timeout
                )
            except OSError as err:
                last = err
                time.sleep(delay)
                delay *= 2
                continue
            if resp.status_code in self.RETRY_STATUSES:
                last = ModelError(f"HTTP {resp.status_code}")
                time.sleep(delay)
                delay *= 2
                continue
            if resp.status_code != 200:
                raise ModelError(f"HTTP {resp.status_code}: {resp.text[:200]}")
            return _extract_completion(resp.json())
        raise ModelError(f"gave up after {self.config.max_retries} attempts: {last}")


def _extract_completion(data) -> str:
    if isinstance(data, dict):
        if isinstance(data.get("completion"), str):
            return data["completion"]
        choices = data.get("choices")
        if isinstance(choices, list) and choices:
            first = choices[0]
            if isinstance(first.get("text"), str):
                return first["text"]
            message = first.get("message", {})
            if isinstance(message.get("content"), str):
                return message["content"]
    raise ModelError(f"unrecognized completion payload: {str(data)[:200]}")


class EchoGoldClient:
    """Returns the gold chain of thought; an always-correct reference."""

    def complete(self, prompt: str, example: Example = None) -> str:
        return " ".join(example.chain_of_thought)


class TruncateGoldClient:
    """Drops the final gold step; correct steps but an unproved goal."""

    def complete(self, prompt: str, example: Example = None) -> str:
        return " ".join(example.chain_of_thought[:-1])


class MutateGoldClient:
    """Corrupts one gold sentence, producing an invalid step."""

    def __init__(self, seed: int = 0):
        self.rng = np.random.default_rng(seed)

    def complete(self, prompt: str, example: Example = None) -> str:
        sentences = list(example.chain_of_thought)
        idx = int(self.rng.integers(len(sentences)))
        words = sentences[idx][:-1].split()
        words[-1] = "wumpus" if words[-1] != "wumpus" else "jompus"
        sentences[idx] = " ".join(words) + "."
        return " ".join(sentences)


class ReplayClient:
    """Replays responses recorded in a previous run's JSONL output."""

    def __init__(self, path):
        self.responses = {}
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rec = json.loads(line)
                    self.responses[rec["trial"]] = rec["response"]
        self._cursor = sorted(self.responses)
        self._next = 0

    def complete(self, prompt: str, example: Example = None) -> str:
        if self._next >= len(self._cursor):
            raise ModelError("replay exhausted")
        trial = self._cursor[self._next]
        self._next += 1
        return self.responses[trial]


BACKENDS = {
    "http": lambda cfg: HttpClient(cfg),
    "echo": lambda cfg: EchoGoldClient(),
    "truncate": lambda cfg: TruncateGoldClient(),
    "mutate": lambda cfg: MutateGoldClient(),
}


def make_client(config: ModelConfig):
    if config.backend not in BACKENDS:
        raise ModelError(f"unknown backend {config.backend!r}")
    return BACKENDS[config.backend](config)


# ---------------------------------------------------------------------------
# trial loop


def wilson_interval(successes: int, trials: int, z: float = 1.96):
    """95% score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (
        z
        * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials))
        / denom
    )
    # the bound touching an exact score is exactly 0 or 1; avoid FP drift
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return (lo, hi)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    trials: int = 0
    correct: int = 0
    strict_correct: int = 0
    errors: int = 0
    records: list = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return self.correct / self.trials if self.trials else 0.0

    @property
    def ci(self):
        return wilson_interval(self.correct, self.trials)

    def summary(self) -> dict:
        lo, hi = self.ci
        return {
            "name": self.config.name,
            "trials": self.trials,
            "correct": self.correct,
            "strict_correct": self.strict_correct,
            "errors": self.errors,
            "accuracy": self.accuracy,
            "ci_low": lo,
            "ci_high": hi,
        }


def grade_response(example: Example, response: str, broad_grading=True):
    return evaluate_cot(
        example.question_sentences,
        split_sentences(response),
        example.query_sentence,
        DEFAULT_VOCABULARY,
        broad_grading=broad_grading,
    )


def _load_completed(path):
    done = {}
    if not os.path.exists(path):
        return done
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            done[rec["trial"]] = rec
    return done


def run_experiment(
    config: ExperimentConfig, client=None, resume: bool = True
) -> ExperimentResult:
    """Run all trials, persisting each to config.output as it finishes."""
    client = client or make_client(config.model)
    result = ExperimentResult(config)
    done = _load_completed(config.output) if resume else {}
    mode = "a" if done else "w"
    with open(config.output, mode, encoding="utf-8") as sink:
        for trial in range(config.trials):
            if trial in done:
                record = done[trial]
            else:
                record = _run_trial(config, client, trial)
                sink.write(json.dumps(record) + "\n")
                sink.flush()
            result.records.append(record)
            if record.get("error"):
                result.errors += 1
                continue
            result.trials += 1
            result.correct += bool(record["correct"])
            result.strict_correct += bool(record["strict_correct"])
    if result.errors:
        log.warning(
            "%d/%d trials errored and were excluded from accuracy",
            result.errors,
            config.trials,
        )
    return result


def _run_trial(config, client, trial) -> dict:
    example = make_trial_example(config, trial)
    demos = sample_demos(config, trial)
    prompt = build_prompt(demos, example)
    record = {
        "trial": trial,
        "example_id": example.id,
        "prompt": prompt,
        "response": "",
        "correct": False,
        "strict_correct": False,
        "error": "",
    }
    try:
        response = client.complete(prompt, example)
    except ModelError as err:
        record["error"] = str(err)
        return record
    report = grade_response(example, response, config.broad_grading)
    record["response"] = response
    record["correct"] = report.overall_correct
    record["strict_correct"] = report.strict_correct
    record["steps"] = [s.to_record() for s in report.steps]
    return record
