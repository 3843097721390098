"""
Command-line Package

Scene and report I/O, SVG rendering and the subcommand handlers. The
handlers live in src.cli.commands and are imported by src.app only.
"""
