import json
from pathlib import Path
from random import Random

import pytest

from covred.bench import SyntheticSpec, generate_family
from covred.ingestion import parse_cover_file

FIXTURE_DIR = Path(__file__).parent / "fixtures"
HOUSE_PATH = FIXTURE_DIR / "house_evaluation.json"


@pytest.fixture(scope="session")
def house_text() -> str:
    return HOUSE_PATH.read_text()


@pytest.fixture(scope="session")
def house(house_text):
    return parse_cover_file(house_text)


@pytest.fixture(scope="session")
def house_doc(house_text):
    return json.loads(house_text)


def sample_family(rng: Random, n_max: int = 8, m_max: int = 5, styles=None):
    """One random family drawn like the cross-check sampler."""
    styles = styles or ("bernoulli", "bernoulli", "nested", "partition")
    spec = SyntheticSpec(
        n=rng.randint(1, n_max),
        m=rng.randint(1, m_max),
        blocks_range=(1, 4),
        density=rng.uniform(0.2, 0.8),
        seed=rng.getrandbits(48),
        style=rng.choice(styles),
    )
    return generate_family(spec)


def sample_families(seed, count, n_max=8, m_max=5, styles=None):
    rng = Random(f"tests:{seed}")
    return [sample_family(rng, n_max, m_max, styles) for _ in range(count)]
