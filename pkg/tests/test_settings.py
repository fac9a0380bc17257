import importlib

import pytest
from opentelemetry.sdk.trace import TracerProvider

import config.settings as settings
import telemetry
from forcing.budgets import Budgets


@pytest.fixture
def reload_settings(monkeypatch):
    yield lambda: importlib.reload(settings)
    monkeypatch.undo()
    importlib.reload(settings)


def test_environment_overrides(monkeypatch, reload_settings):
    monkeypatch.setenv("WORKBENCH_DEPTH", "5")
    monkeypatch.setenv("WORKBENCH_HORIZON", "")
    reloaded = reload_settings()
    assert reloaded.DEPTH == 5
    assert reloaded.HORIZON == 64


def test_budgets_payload_lists_every_field():
    payload = Budgets(depth=3).payload()
    assert payload["depth"] == 3
    assert set(payload) == {
        "depth", "horizon", "window", "stages", "seed", "dp",
        "bound", "probes", "extension", "values", "threshold",
    }


def test_tracing_without_an_endpoint_stays_in_process(monkeypatch):
    installed = []
    monkeypatch.setattr(telemetry, "_configured", False)
    monkeypatch.setattr(telemetry.trace, "set_tracer_provider", installed.append)
    telemetry.setup_tracing(endpoint="")
    telemetry.setup_tracing(endpoint="")
    assert len(installed) == 1
    provider = installed[0]
    assert isinstance(provider, TracerProvider)
    assert provider.resource.attributes["service.name"] == settings.SERVICE_NAME
