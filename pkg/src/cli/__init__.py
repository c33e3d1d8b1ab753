"""Command-line surface of omfp."""
