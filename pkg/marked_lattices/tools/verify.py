"""Seeded property-suite harness.

Each (suite, property, trial) runs on its own generator derived from the
master seed, and the report is assembled in sorted order, so report bytes
depend only on the seed, the trial count and the tolerance.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Any

from marked_lattices.constants import ExitCode, Suite
from marked_lattices.core import error_report, trial_rng
from marked_lattices.models import VerifyInput
from marked_lattices.tools.suites import Counterexample, Property, resolve

logger = logging.getLogger(__name__)

Task = tuple[Suite, Property, int]


def _run_trial(task: Task, seed: int, tolerance: float) -> Counterexample:
    suite, prop, trial = task
    rng = trial_rng(seed, suite.value, prop.name, trial)
    try:
        counterexample = prop.check(rng, tolerance)
    except Exception as e:
        logger.debug("%s/%s trial %d raised %s", suite.value, prop.name, trial, e)
        counterexample = {"error": type(e).__name__, "message": str(e)}
    if counterexample is not None:
        counterexample = {**counterexample, "trial": trial}
    return counterexample


def _tasks(suite: Suite, trials: int) -> list[Task]:
    return [
        (name, prop, trial)
        for name, prop in resolve(suite)
        for trial in range(trials if prop.sampled else 1)
    ]


def _summarize(tasks: list[Task], outcomes: list[Counterexample]) -> list[dict[str, Any]]:
    by_property: dict[tuple[str, str], dict[str, Any]] = {}
    for (suite, prop, trial), outcome in sorted(
        zip(tasks, outcomes, strict=True), key=lambda item: (item[0][0].value, item[0][1].name, item[0][2])
    ):
        entry = by_property.setdefault(
            (suite.value, prop.name),
            {
                "suite": suite.value,
                "property": prop.name,
                "sampled": prop.sampled,
                "trials": 0,
                "failures": 0,
                "counterexample": None,
            },
        )
        entry["trials"] += 1
        if outcome is not None:
            entry["failures"] += 1
            if entry["counterexample"] is None:
                entry["counterexample"] = outcome
    results = [by_property[key] for key in sorted(by_property)]
    for entry in results:
        entry["passed"] = entry["failures"] == 0
    return results


def verify(params: VerifyInput) -> dict[str, Any]:
    """Run a property suite.

    Args:
        params: VerifyInput with the suite name, seed, trials and workers

    Returns:
        dict with one entry per property, the first counterexample of each
        failing property, and exit code 1 when any property fails
    """
    try:
        tasks = _tasks(params.suite, params.trials)
        logger.info(
            "running %d trials of suite %s on %d workers", len(tasks), params.suite.value, params.workers
        )
        run = partial(_run_trial, seed=params.seed, tolerance=params.tolerance)
        if params.workers == 1:
            outcomes = [run(task) for task in tasks]
        else:
            with ThreadPoolExecutor(max_workers=params.workers) as executor:
                outcomes = list(executor.map(run, tasks))

        properties = _summarize(tasks, outcomes)
        failed = [p for p in properties if not p["passed"]]
        for entry in failed:
            logger.warning(
                "%s/%s failed %d of %d trials",
                entry["suite"], entry["property"], entry["failures"], entry["trials"],
            )
        return {
            "status": "success",
            "suite": params.suite.value,
            "seed": params.seed,
            "trials": params.trials,
            "tolerance": params.tolerance,
            "passed": not failed,
            "summary": {"properties": len(properties), "failed": len(failed)},
            "properties": properties,
            "exit_code": int(ExitCode.OK if not failed else ExitCode.FAILURE),
        }
    except Exception as e:
        return error_report(e, "verify")
