"""Property suites run by the verify command, keyed by suite name."""

from marked_lattices.constants import Suite

from . import bridge, lattices, matk, octo, scalars, strata, symplectic
from ._base import Check, Counterexample, Property

SUITES: dict[Suite, tuple[Property, ...]] = {
    Suite.SCALARS: scalars.PROPERTIES,
    Suite.MATK: matk.PROPERTIES,
    Suite.LATTICES: lattices.PROPERTIES,
    Suite.BRIDGE: bridge.PROPERTIES,
    Suite.SYMPLECTIC: symplectic.PROPERTIES,
    Suite.OCTO: octo.PROPERTIES,
    Suite.STRATA: strata.PROPERTIES,
}


def resolve(suite: Suite) -> list[tuple[Suite, Property]]:
    """Properties of one suite, or of every suite for ``all``, in registry order."""
    names = list(SUITES) if suite is Suite.ALL else [suite]
    return [(name, prop) for name in names for prop in SUITES[name]]


__all__ = ["SUITES", "Check", "Counterexample", "Property", "resolve"]
