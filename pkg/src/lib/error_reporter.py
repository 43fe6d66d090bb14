"""
Crash reporting to a collector endpoint

Posts a JSON payload describing an uncaught error when CRASH_REPORT_URL is
configured. Reporting never raises.
"""
import logging
import platform
import traceback
from datetime import datetime, timezone
from typing import Optional, Dict, Any

import requests

from .. import __version__
from ..config import config

logger = logging.getLogger(__name__)


def build_payload(
    error: BaseException,
    error_type: str = "exception",
    context: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    """Build the crash payload sent to the collector"""
    payload = {
        "project_name": "hapticstroke",
        "version": __version__,
        "host": platform.node(),
        "python": platform.python_version(),
        "error_type": error_type,
        "exception": type(error).__name__,
        "message": str(error) or type(error).__name__,
        "stack_trace": "".join(traceback.format_exception(type(error), error, error.__traceback__)),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    if context:
        payload["context"] = context
    return payload


def report_error_sync(
    error: BaseException,
    error_type: str = "exception",
    context: Optional[Dict[str, Any]] = None
) -> bool:
    """
    Report an error to the crash collector.

    Args:
        error: The exception that occurred
        error_type: "exception", "crash" or "instability"
        context: Optional extra fields (command name, config hash, ...)

    Returns:
        True if the collector accepted the report
    """
    url = config.CRASH_REPORT_URL
    if not url:
        return False

    headers = {"Content-Type": "application/json"}
    if config.CRASH_REPORT_SECRET:
        headers["X-Report-Secret"] = config.CRASH_REPORT_SECRET

    try:
        resp = requests.post(
            f"{url.rstrip('/')}/ingest/error",
            json=build_payload(error, error_type, context),
            headers=headers,
            timeout=5.0
        )
        return resp.ok
    except Exception as e:
        logger.debug(f"Failed to send crash report: {e}")
        return False
