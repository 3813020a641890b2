"""Run the experiment loop end to end with built-in test backends.

Each backend stands in for a model: echo returns the gold chain of
thought (accuracy 1.0), truncate drops the final step (accuracy 0.0),
and mutate corrupts one sentence. Results stream to JSONL so an
interrupted run resumes where it stopped; accuracies come with 95%
Wilson intervals.
"""
import json
import tempfile
from pathlib import Path

from proofbench.experiment import (
    ExperimentConfig,
    ModelConfig,
    run_experiment,
)


def main():
    workdir = Path(tempfile.mkdtemp(prefix="proofbench-demo-"))
    for backend in ("echo", "truncate", "mutate"):
        config = ExperimentConfig(
            name=f"demo-{backend}",
            kind="compositional",
            min_depth=2,
            num_rule_types=2,
            trials=50,
            seed=0,
            output=str(workdir / f"{backend}.jsonl"),
            model=ModelConfig(backend=backend),
        )
        result = run_experiment(config)
        print(json.dumps(result.summary(), indent=2))
    print(f"\nper-trial records written under {workdir}")


if __name__ == "__main__":
    main()
