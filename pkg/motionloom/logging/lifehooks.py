import logging

from motionloom.logging.settings import LoggingSettings
from motionloom.logging.utils import ColoredFormatter, BatchFilter


def setup_logging(settings: LoggingSettings):
    logger = logging.getLogger()
    handlers = list(
        filter(lambda h: isinstance(h, logging.StreamHandler), logger.handlers)
    )
    if not handlers:
        stream_handler = logging.StreamHandler()
        logger.addHandler(stream_handler)
        handlers.append(stream_handler)
    for handler in handlers:
        handler.setFormatter(ColoredFormatter())
        # handler level: logger filters do not see child-logger records
        for existing in list(handler.filters):
            if isinstance(existing, BatchFilter):
                handler.removeFilter(existing)
        handler.addFilter(BatchFilter(settings.LOG_EVERY_N_BATCHES))

    app_logger = logging.getLogger(settings.PROJECT_NAME)
    app_logger.setLevel(settings.LOG_LEVEL)

    for name in settings.LOGGING_QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
