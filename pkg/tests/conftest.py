import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stochgame import GameFile, load_fixture

ALL_FIXTURES = [
    "absorbing_mix",
    "big_match",
    "cycle_mdp",
    "mdp_two_state",
    "single_1x1",
    "single_2x2",
    "single_const",
    "single_mp",
    "switcher",
    "three_state_2x2",
    "two_state_2x2",
    "two_state_3x3",
]


@pytest.fixture(scope="session")
def fixture_docs() -> dict[str, GameFile]:
    return {name: load_fixture(name) for name in ALL_FIXTURES}
