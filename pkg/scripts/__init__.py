"""Command-line entry point and brute-force oracle suites."""
