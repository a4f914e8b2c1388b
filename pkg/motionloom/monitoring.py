import logging

import logfire

from motionloom.observability.settings import ObservabilitySettings

logger = logging.getLogger(__name__)


def instrument_logging(settings: ObservabilitySettings):
    class AttributedLogfireLoggingHandler(logfire.LogfireLoggingHandler):
        def fill_attributes(self, record: logging.LogRecord):
            record.SERVICE_NAME = settings.PROJECT_NAME
            record.HOST_NAME = settings.ENVIRONMENT
            return super().fill_attributes(record)

    root = logging.getLogger()
    handler = AttributedLogfireLoggingHandler()
    handler.setFormatter(
        logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
    )
    root.addHandler(handler)


class InitMonitoring:
    """Configures logfire once per process. Spans opened by training,
    evaluation and gradient checks are exported only when OTEL is enabled
    and a token or OTLP endpoint is present."""

    _configured: bool = False

    def __init__(self, settings: ObservabilitySettings):
        self.settings = settings

    def __enter__(self):
        if type(self)._configured:
            return self
        logfire.configure(
            send_to_logfire=(
                "if-token-present" if int(self.settings.OTEL_ENABLED) else False
            ),
            service_name=self.settings.PROJECT_NAME,
            environment=self.settings.ENVIRONMENT,
            console=(
                logfire.ConsoleOptions() if self.settings.OTEL_CONSOLE else False
            ),
        )
        if int(self.settings.OTEL_ENABLED):
            instrument_logging(self.settings)
        type(self)._configured = True
        logger.debug("monitoring configured")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if int(self.settings.OTEL_ENABLED):
            logfire.force_flush()
