"""
This module configures OpenTelemetry tracing for the forcing workbench.

Functions:
    setup_tracing():
        Sets up the OpenTelemetry tracer provider with a resource name and, when an
        OTLP endpoint is configured, attaches a batch span processor exporting to it.

Details:
- Uses OpenTelemetry SDK for Python.
- Exports traces to an OTLP-compatible backend via gRPC.
- The service is identified by `config.settings.SERVICE_NAME`.
- With no endpoint configured spans are still created (and carry attributes for
  tests and debugging) but nothing leaves the process.

Usage:
    Call setup_tracing() at the start of the CLI to enable distributed tracing.
    Library code only ever calls trace.get_tracer(...), so importing the
    packages never requires a collector.
"""

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

from config.settings import OTLP_ENDPOINT, SERVICE_NAME

_configured = False


def setup_tracing(endpoint=None):
    global _configured
    if _configured:
        return

    resource = Resource.create({
        "service.name": SERVICE_NAME
    })

    provider = TracerProvider(resource=resource)

    endpoint = endpoint if endpoint is not None else OTLP_ENDPOINT
    if endpoint:
        from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

        exporter = OTLPSpanExporter(
            endpoint=endpoint,
            insecure=True,
        )
        provider.add_span_processor(BatchSpanProcessor(exporter))

    trace.set_tracer_provider(provider)
    _configured = True
