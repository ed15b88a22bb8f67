import pytest
from fastapi.testclient import TestClient

from masksub_server.app import create_app
from masksub_server.config import ServerConfig
from masksub_server.testing import build_tiny_model_dirs


@pytest.fixture(scope="session")
def model_dirs(tmp_path_factory):
    return build_tiny_model_dirs(tmp_path_factory.mktemp("tiny-models"))


@pytest.fixture(scope="session")
def config(model_dirs):
    return ServerConfig(
        mlm_model=model_dirs["mlm"],
        encoder_model=model_dirs["encoder"],
        classifier_models={
            "classification": model_dirs["classifier"],
            "entailment": model_dirs["classifier"],
        },
    )


@pytest.fixture(scope="session")
def app(config):
    return create_app(config)


@pytest.fixture(scope="session")
def client(app):
    return TestClient(app, raise_server_exceptions=False)
