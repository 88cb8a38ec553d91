from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qcrewrite.hardware import generate_rules, load_spec
from qcrewrite.rewrite import knuth_bendix

CHIPS = resources.files("qcrewrite") / "chips"


def chip(name: str) -> Path:
    return Path(str(CHIPS / f"{name}.json"))


@pytest.fixture(scope="session")
def fragment():
    return load_spec(chip("rigetti_fragment"))


@pytest.fixture(scope="session")
def parallel():
    return load_spec(chip("rigetti_parallel"))


@pytest.fixture(scope="session")
def swaps():
    return load_spec(chip("rigetti_swaps"))


@pytest.fixture(scope="session")
def cnot():
    return load_spec(chip("cnot_placement"))


def complete(spec):
    return knuth_bendix(generate_rules(spec), spec.order, alphabet=spec.alphabet)


@pytest.fixture(scope="session")
def fragment_system(fragment):
    return complete(fragment)


@pytest.fixture(scope="session")
def parallel_system(parallel):
    return complete(parallel)


@pytest.fixture(scope="session")
def swaps_system(swaps):
    return complete(swaps)


@pytest.fixture(scope="session")
def cnot_system(cnot):
    return complete(cnot)
