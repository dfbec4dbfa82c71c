"""Core building blocks: errors, random streams, configuration, runner and metrics."""
