"""Progress display for the long-running CLI commands (scan, werner)."""

from __future__ import annotations

import sys
from typing import Any

from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn

console = Console(stderr=True)
_progress: Progress | None = None
_task_id: Any = None
_enabled: bool = False


def start_progress(description: str, total: int | None = None, enabled: bool = True) -> None:
    """Start the progress display on stderr if enabled and attached to a terminal."""
    global _progress, _task_id, _enabled
    _enabled = enabled and sys.stderr.isatty()
    if not _enabled:
        return
    if _progress is None:
        _progress = Progress(
            SpinnerColumn(spinner_name="dots", style="cyan"),
            TextColumn("[bold]{task.description}[/bold]"),
            BarColumn(),
            MofNCompleteColumn(),
            TextColumn("[cyan]{task.fields[status]}[/cyan]"),
            TimeElapsedColumn(),
            console=console,
            transient=True,
        )
        _progress.start()
    _task_id = _progress.add_task(description, total=total, status="")


def update_progress(advance: float = 1, status: str | None = None, total: int | None = None) -> None:
    """Advance the current task, optionally replacing its status text or total."""
    if not _enabled or _progress is None or _task_id is None:
        return
    fields: dict[str, Any] = {}
    if status is not None:
        fields["status"] = status
    if total is not None:
        fields["total"] = total
    _progress.update(_task_id, advance=advance, **fields)


def stop_progress() -> None:
    """Stop the progress display and clean up."""
    global _progress, _task_id, _enabled
    if _progress is not None:
        _progress.stop()
        _progress = None
        _task_id = None
    _enabled = False
