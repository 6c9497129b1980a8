"""Exit-code translation for command handlers"""

import functools
import logging
from typing import Callable

from optical_hqc.utils.exceptions import HQCException

logger = logging.getLogger(__name__)

EXIT_UNEXPECTED = 1


def exit_code_on_error(job: str) -> Callable:
    """
    Turn exceptions raised by a command handler into process exit codes

    HQCException subclasses map to their exit_code (2 validation,
    3 tolerance, 4 resource budget); anything else is logged with a
    traceback and maps to 1.
    """

    def decorator(handler: Callable[..., int]) -> Callable[..., int]:
        @functools.wraps(handler)
        def wrapper(*args, **kwargs) -> int:
            try:
                return handler(*args, **kwargs)
            except HQCException as e:
                logger.error(f"{job} failed ({type(e).__name__}): {e}")
                return e.exit_code
            except Exception as e:
                logger.error(f"Unexpected error in {job}: {e}", exc_info=True)
                return EXIT_UNEXPECTED

        return wrapper

    return decorator
