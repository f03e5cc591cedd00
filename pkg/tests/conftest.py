import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from electre_score.hotel import (
    hotel_criteria,
    hotel_reference_structure,
    hotel_table,
    hotel_target_relations,
)


@pytest.fixture(scope="session")
def hotel():
    criteria = hotel_criteria()
    return {
        "criteria": criteria,
        "table": hotel_table(),
        "refs": hotel_reference_structure(),
        "target": hotel_target_relations(),
    }


@pytest.fixture(scope="session")
def hotel_vectors(hotel):
    vectors = {a: hotel["table"].vector(a) for a in hotel["table"].actions}
    for name, _, _, vec in hotel["refs"].flat_profiles():
        vectors[name] = vec
    return vectors


@pytest.fixture(scope="session")
def data_dir():
    return Path(__file__).resolve().parent.parent / "data"
