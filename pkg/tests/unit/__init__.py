"""Unit tests for the model, the feasibility engine, the analyses and the CLI."""
