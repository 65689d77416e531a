"""
Utility functions: console logging, project configuration and report validation.
"""

import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import jsonschema
from rich.console import Console
from rich.markup import escape

from .core import PROJECT_TABLE, CheckResult

# Console for rich output - automatically detects color support
console = Console()
# Decorations go here when stdout carries machine-readable output
err_console = Console(stderr=True)

FIXTURES_DIR = Path(__file__).parent / "fixtures"
REPORT_SCHEMA = Path(__file__).parent / "report_schema.json"
CONFIG_KEYS = ("maxdim", "letters", "seed", "trials", "dense-threshold", "fixtures")


def log_success(message: str) -> None:
    """Log a success message"""
    console.print(f"[bold green]✓[/] {escape(message)}")


def log_error(message: str) -> None:
    """Log an error message"""
    err_console.print(f"[bold red]×[/] {escape(message)}")


def log_info(message: str) -> None:
    """Log an info message"""
    console.print(f"[bold blue]-[/] {escape(message)}")


def log_warning(message: str) -> None:
    """Log a warning message"""
    err_console.print(f"[bold yellow]![/] {escape(message)}")


def find_project_file(start_path: str, filename: str) -> Optional[str]:
    """The nearest ``filename`` in start_path's directory or one of its ancestors, or None"""
    here = Path(os.path.abspath(start_path))
    if here.is_file():
        here = here.parent
    for directory in (here, *here.parents):
        if (directory / filename).exists():
            return str(directory / filename)
    return None


def load_project_config(start_path: str = ".") -> Dict[str, Any]:
    """
    Read ``[tool.homotopy-monoids]`` from the nearest pyproject.toml.

    Unknown keys are dropped with a warning; a missing file or table gives
    an empty dict.

    Args:
        start_path: Path to start searching from

    Returns:
        The recognised settings, keys as written in the table
    """
    project_file = find_project_file(start_path, "pyproject.toml")
    if project_file is None:
        return {}
    try:
        if sys.version_info >= (3, 11):
            import tomllib
        else:
            import tomli as tomllib

        with open(project_file, "rb") as f:
            data = tomllib.load(f)
    except Exception as e:
        log_warning(f"Error reading {project_file}: {e}")
        return {}

    table = data.get("tool", {}).get(PROJECT_TABLE, {})
    settings = {}
    for key, value in table.items():
        if key in CONFIG_KEYS:
            settings[key] = value
        else:
            log_warning(f"Ignoring unknown setting {key!r} in [tool.{PROJECT_TABLE}]")
    return settings


def fixture_paths(extra: Optional[str] = None) -> List[Path]:
    """The shipped fixture files, followed by those of an extra directory"""
    paths = sorted(FIXTURES_DIR.glob("*.txt"))
    if extra:
        paths += sorted(Path(extra).glob("*.txt"))
    return paths


def report_document(seed: int, suite: str, results: Sequence[CheckResult]) -> Dict[str, Any]:
    return {
        "seed": seed,
        "suite": suite,
        "passed": all(r.passed for r in results),
        "checks": [r.model_dump() for r in results],
    }


def validate_report(report: Dict[str, Any]) -> Tuple[bool, List[str]]:
    """
    Check a ``verify --format json`` document against the bundled report schema.

    Returns:
        (True, []) for a conforming report, otherwise (False, [reason])
    """
    try:
        schema = json.loads(REPORT_SCHEMA.read_text())
        jsonschema.validate(report, schema)
    except jsonschema.exceptions.ValidationError as e:
        return False, [f"report does not match the schema at {e.json_path}: {e.message}"]
    except (OSError, ValueError, jsonschema.exceptions.SchemaError) as e:
        return False, [f"cannot load the report schema: {e}"]
    return True, []
