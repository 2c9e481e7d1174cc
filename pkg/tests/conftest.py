import pytest
from helpers import TABLE1, corpus_instances

from interdep import parse_network


@pytest.fixture(scope="session")
def table1():
    return parse_network(TABLE1)


@pytest.fixture(scope="session")
def corpus500():
    """The 500 seeded instances used by the acceptance suite."""
    return corpus_instances(500)
