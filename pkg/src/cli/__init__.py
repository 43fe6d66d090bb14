"""Command-line front end"""
from .commands import cmd_speeds, cmd_schedule, cmd_simulate, cmd_plan, cmd_run, cmd_analyze
from .parser import build_parser

__all__ = ['cmd_speeds', 'cmd_schedule', 'cmd_simulate', 'cmd_plan', 'cmd_run', 'cmd_analyze', 'build_parser']
