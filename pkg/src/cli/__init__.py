"""Командная строка wsan-sched: разбор аргументов и исполнение команд."""

from src.cli.commands import (
    AnalyticCommand,
    CheckCommand,
    Command,
    DumpNetworkCommand,
    OutputFormat,
    ReplayCommand,
    SweepCommand,
    TraceCommand,
)
from src.cli.exceptions import CliError, UsageError
from src.cli.parser import build_parser, parse_args
from src.cli.runner import EXIT_LIMIT, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, CommandRunner

__all__ = [
    "AnalyticCommand",
    "CheckCommand",
    "CliError",
    "Command",
    "CommandRunner",
    "DumpNetworkCommand",
    "EXIT_LIMIT",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_VIOLATION",
    "OutputFormat",
    "ReplayCommand",
    "SweepCommand",
    "TraceCommand",
    "UsageError",
    "build_parser",
    "parse_args",
]
