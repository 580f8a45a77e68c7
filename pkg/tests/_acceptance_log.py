"""Shared record of acceptance criterion outcomes, printed by conftest."""

LINES = {}
