from __future__ import annotations

import logging
import os

THREADS = max(1, int(os.getenv("SPIKED_OSC_THREADS", str(os.cpu_count() or 1))))
LOG_LEVEL = os.getenv("LOG_LEVEL", "info")
PORT = int(os.getenv("PORT", "10000"))
WEB_CONCURRENCY = int(os.getenv("WEB_CONCURRENCY", "1"))
# largest truncation size the HTTP API accepts
MAX_DIM = int(os.getenv("SPIKED_OSC_MAX_DIM", "100"))


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(
        level=(level or LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
