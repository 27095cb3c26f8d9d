"""
Command handlers for IsoKin.

This module contains the command-line subcommands, organized into point-set
design commands and manipulator analysis commands.
"""


def register_all_commands(subparsers, common, settings):
    """
    Register all subcommands with the parser.

    Args:
        subparsers: The subparsers action of the main parser
        common: Parent parser carrying the global flags
        settings: Loaded Settings, for defaults
    """
    # Import inline to avoid circular imports
    from .design_commands import setup_design_commands
    from .analysis_commands import setup_analysis_commands

    setup_design_commands(subparsers, common)
    setup_analysis_commands(subparsers, common, settings)
