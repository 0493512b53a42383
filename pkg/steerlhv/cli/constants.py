"""Shared top-level constants for the CLI."""

EXIT_FEASIBLE = 0
"""Exit code of a run whose verdict is feasible (or that produced its report)."""
EXIT_INFEASIBLE = 2
"""Exit code of an infeasible verdict, or of a steering request that is impossible."""
EXIT_AMBIGUOUS = 3
"""Exit code when the solver could not decide, or an internal check failed."""
EXIT_MALFORMED = 4
"""Exit code for malformed input: bad flags, files, or parameter values."""

DEFAULT_SCAN_STEP = 0.05
"""Grid spacing used by ``scan`` when --step is omitted."""

DEFAULT_WERNER_TOL = 1e-3
"""Bisection tolerance used by ``werner`` when --tol is omitted."""

JSON_INDENT = 2
"""Indentation of every JSON report written to stdout."""

COMMANDS = ("check", "scan", "werner", "gpr", "steer")
"""Subcommand names; config-file sections with these keys apply to that subcommand only."""
