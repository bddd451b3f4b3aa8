"""Command line and acceptance tests."""
