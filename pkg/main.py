"""
hapticstroke - Main Entry Point
Stroke rendering, motor simulation and rating studies for a skin-slip tactor array

    python main.py speeds
    python main.py schedule --omega pi --delay 10%
    python main.py simulate
    python main.py plan --study 1 --participant 0
    python main.py run --plan data/plan_s1_p0.jsonl
    python main.py analyze data/ratings_s1.jsonl --study 1
"""
import logging
import sys
from typing import List, Optional

from src.cli import build_parser
from src.config import config
from src.lib.error_reporter import report_error_sync
from src.lib.errors import HapticStrokeError

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False):
    """Log to stderr (stdout carries command reports) and optionally to LOG_FILE"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        handlers.append(logging.FileHandler(config.LOG_FILE))
    logging.basicConfig(
        level=logging.DEBUG if verbose else config.LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def validate_config() -> bool:
    """Validate environment settings"""
    errors = config.validate()
    if errors:
        logger.error("Configuration errors:")
        for error in errors:
            logger.error(f"  - {error}")
        logger.error("Please check your .env file. See .env.example for reference.")
        return False
    return True


def setup_global_error_handlers():
    """Log and report uncaught exceptions"""

    def handle_uncaught_exception(exc_type, exc_value, exc_traceback):
        if issubclass(exc_type, KeyboardInterrupt):
            sys.__excepthook__(exc_type, exc_value, exc_traceback)
            return

        logger.error(f"Uncaught exception: {exc_value}", exc_info=(exc_type, exc_value, exc_traceback))
        report_error_sync(exc_value, "crash")
        sys.__excepthook__(exc_type, exc_value, exc_traceback)

    sys.excepthook = handle_uncaught_exception


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit status"""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    setup_global_error_handlers()

    if not validate_config():
        return 2

    try:
        return args.func(args)
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return 130
    except HapticStrokeError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        if e.exit_code == 4:
            report_error_sync(e, "instability", {"command": args.command})
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
