"""Each registered property holds on a handful of seeded trials."""

import pytest

from marked_lattices.constants import Suite
from marked_lattices.core import trial_rng
from marked_lattices.tools.suites import SUITES, resolve

CASES = [(suite, prop) for suite, props in SUITES.items() for prop in props]


@pytest.mark.parametrize(
    ("suite", "prop"), CASES, ids=[f"{suite.value}:{prop.name}" for suite, prop in CASES]
)
def test_property_holds(suite, prop):
    trials = 3 if prop.sampled else 1
    for trial in range(trials):
        rng = trial_rng(11, suite.value, prop.name, trial)
        assert prop.check(rng, 1e-9) is None, f"trial {trial} failed"


def test_all_expands_in_registry_order():
    resolved = resolve(Suite.ALL)
    assert len(resolved) == len(CASES)
    assert [suite for suite, _ in resolved][0] is Suite.SCALARS
    assert [suite for suite, _ in resolved][-1] is Suite.STRATA


def test_property_names_are_unique_per_suite():
    for suite, props in SUITES.items():
        names = [p.name for p in props]
        assert len(names) == len(set(names)), suite


def test_exhaustive_properties():
    unsampled = {(s.value, p.name) for s, p in CASES if not p.sampled}
    assert ("octo", "octonion table") in unsampled
    assert ("octo", "det_h2 signature") in unsampled
