"""
Merge JSON config files into synthetic CLI argv.

A config file is a JSON object. Top-level keys are global options
(``verbose``, ``log-file``, ...) and are placed before the subcommand; a key
naming a subcommand holds an object of options for that subcommand only,
placed after it. Options given on the command line come last and win.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from steerlhv.cli.constants import COMMANDS


def strip_config_argv(argv: list[str]) -> list[str]:
    """Remove --config PATH and --config=PATH tokens from argv."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg == "--config" and i + 1 < len(argv):
            i += 2
            continue
        if arg.startswith("--config="):
            i += 1
            continue
        out.append(arg)
        i += 1
    return out


def _merge_into(target: dict[str, Any], data: dict[str, Any]) -> None:
    for key, value in data.items():
        if value is None:
            target.pop(key, None)
        elif key in COMMANDS:
            if not isinstance(value, dict):
                raise ValueError(f"Config section '{key}' must be a JSON object")
            section = target.setdefault(key, {})
            _merge_into(section, value)
        else:
            target[key] = value


def merge_config_json_files(paths: list[str]) -> dict[str, Any]:
    """
    Load JSON config files in order. Later files override earlier keys,
    per key inside subcommand sections too. JSON null removes a key.
    """
    merged: dict[str, Any] = {}
    for path in paths:
        with Path(path).open(encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError(f"Config must be a JSON object: {path}")
        _merge_into(merged, data)
    return merged


def config_dict_to_cli_args(config_data: dict[str, Any]) -> list[str]:
    """Turn a flat option mapping into argv tokens; true booleans become bare flags."""
    config_cli_args: list[str] = []
    for key, value in config_data.items():
        if isinstance(value, bool):
            if value:
                config_cli_args.append(f"--{key}")
        elif isinstance(value, list):
            for item in value:
                config_cli_args.extend((f"--{key}", str(item)))
        else:
            config_cli_args.extend((f"--{key}", str(value)))
    return config_cli_args


def find_command(argv: list[str]) -> int | None:
    """Index of the subcommand token in argv, if any."""
    return next((i for i, arg in enumerate(argv) if arg in COMMANDS), None)


def apply_config(argv: list[str], config_data: dict[str, Any]) -> list[str]:
    """
    Insert config-derived options into argv: globals before the subcommand,
    the subcommand's own section right after it.
    """
    argv = strip_config_argv(argv)
    globals_ = {k: v for k, v in config_data.items() if k not in COMMANDS}
    index = find_command(argv)
    if index is None:
        return config_dict_to_cli_args(globals_) + argv
    command = argv[index]
    section = config_data.get(command, {})
    return (
        config_dict_to_cli_args(globals_)
        + argv[:index]
        + [command]
        + config_dict_to_cli_args(section)
        + argv[index + 1 :]
    )


__all__ = ["apply_config", "config_dict_to_cli_args", "find_command", "merge_config_json_files", "strip_config_argv"]
