"""
Shared fixtures.

Spans from every tracer go to an in-memory exporter so tests can look at the
attributes the library sets. Budgets are kept small: the subset dynamic
programs are exponential in the set size.
"""

import pytest
from hypothesis import settings
from opentelemetry import trace
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import SimpleSpanProcessor
from opentelemetry.sdk.trace.export.in_memory_span_exporter import InMemorySpanExporter

from forcing.budgets import Budgets

settings.register_profile("workbench", deadline=None, max_examples=60)
settings.load_profile("workbench")

_EXPORTER = InMemorySpanExporter()


def pytest_configure(config):
    provider = TracerProvider()
    provider.add_span_processor(SimpleSpanProcessor(_EXPORTER))
    trace.set_tracer_provider(provider)


@pytest.fixture
def spans():
    _EXPORTER.clear()
    return _EXPORTER


@pytest.fixture
def small():
    return Budgets(
        depth=4,
        horizon=8,
        window=3,
        stages=4,
        seed=0,
        dp=8,
        bound=3,
        probes=4,
        extension=1,
        values=2,
        threshold=3,
    )
