import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from agt.autostruct import derive_shortlex_structure
from agt.rewrite import Presentation
from agt.words import inverse_closed_alphabet


@pytest.fixture(scope="session")
def ab_alphabet():
    """a < a^-1 < b < b^-1, written a, A, b, B."""
    return inverse_closed_alphabet(["a", "b"], {"a": "A", "b": "B"})


@pytest.fixture(scope="session")
def coxeter_ab_alphabet():
    return inverse_closed_alphabet(["a", "b"], involutions=["a", "b"])


def _derive(alphabet, relator_texts):
    pres = Presentation(alphabet, [alphabet.parse_word(r) for r in relator_texts])
    outcome = derive_shortlex_structure(pres)
    assert outcome.verified, outcome.transcript
    return outcome.structure


@pytest.fixture(scope="session")
def free_structure(ab_alphabet):
    return _derive(ab_alphabet, [])


@pytest.fixture(scope="session")
def z2_structure(ab_alphabet):
    return _derive(ab_alphabet, ["abAB"])


@pytest.fixture(scope="session")
def s3_structure(coxeter_ab_alphabet):
    return _derive(coxeter_ab_alphabet, ["ababab"])


@pytest.fixture(scope="session")
def b3_structure(ab_alphabet):
    return _derive(ab_alphabet, ["abaBAB"])


@pytest.fixture(scope="session")
def dinf_structure(coxeter_ab_alphabet):
    return _derive(coxeter_ab_alphabet, [])
