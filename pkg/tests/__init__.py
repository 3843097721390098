"""Test package for the trihomology toolkit."""
