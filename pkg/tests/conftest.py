from pathlib import Path

import pytest

from deflog import Theory, ground, parse

GOLDEN = Path(__file__).parent / "golden"


def load(name: str, allow_generated: bool = False) -> Theory:
    return parse(GOLDEN.joinpath(name).read_text(), allow_generated=allow_generated)


@pytest.fixture(scope="session")
def example1() -> Theory:
    return load("example1.dfl")


@pytest.fixture(scope="session")
def example1_ground(example1) -> Theory:
    return ground(example1)


@pytest.fixture(scope="session")
def example2() -> Theory:
    return load("example2.dfl")


@pytest.fixture(scope="session")
def example3() -> Theory:
    return load("example3.dfl")


# Cyclic witnesses for the pair combinations reachable only with cyclic
# superiority.  The third one needs the extra pair r1 > r3 shielding the
# strict loop; without it the strict rule is an unanswered attacker and the
# positive literal drops from E to F (see test_analysis for the contrast).
DD_SOURCE = "r1: => p. r2: => ~p. r1 > r2. r2 > r1."
DE_SOURCE = "r1: p => p. r2: => ~p. r1 > r2. r2 > r1."
BE_SOURCE = "r1: p => p. r2: => ~p. r3: ~p -> ~p. r1 > r2. r2 > r1. r1 > r3."
