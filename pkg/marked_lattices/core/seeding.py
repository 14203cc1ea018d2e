"""Splittable seeding for the verification harness.

Every (seed, suite, property, trial) tuple maps to its own generator through a
SHA-256 digest, so results never depend on the order or thread in which trials
run.
"""

import hashlib

import numpy as np


def derive_seed(seed: int, suite: str, prop: str, trial: int) -> int:
    """Derive a 64-bit sub-seed from the run coordinates."""
    key = f"{seed}:{suite}:{prop}:{trial}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def trial_rng(seed: int, suite: str, prop: str, trial: int) -> np.random.Generator:
    """PCG64 generator for one trial of one property."""
    return np.random.Generator(np.random.PCG64(derive_seed(seed, suite, prop, trial)))
