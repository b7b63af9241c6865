"""Version information for stratkit."""

from typing import Any, Dict

__version__ = "0.3.0"
__version_info__ = tuple(int(part) for part in __version__.split("."))

# Bumped when the JSON-lines record layout changes
REPORT_FORMAT_VERSION = "1"

PROJECT_NAME = "stratkit"
PROJECT_DESCRIPTION = (
    "Stratification checking, reflection transforms and finite-category "
    "verification for set-theoretic foundations"
)


def get_version() -> str:
    return __version__


def get_version_info() -> Dict[str, Any]:
    """Version, report format and project metadata as a flat dict."""
    major, minor, patch = __version_info__
    return {
        "version": __version__,
        "major": major,
        "minor": minor,
        "patch": patch,
        "report_format": REPORT_FORMAT_VERSION,
        "project_name": PROJECT_NAME,
        "project_description": PROJECT_DESCRIPTION,
    }
