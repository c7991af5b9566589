"""Suites, reports and the command line interface."""
