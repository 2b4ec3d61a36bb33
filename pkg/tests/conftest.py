import pytest

from corpus import build_corpus


@pytest.fixture(scope="session")
def corpus_manifest(tmp_path_factory):
    """Path to the manifest of a fully built fixture corpus."""
    root = tmp_path_factory.mktemp("corpus")
    return build_corpus(root)
