"""The test suite. Important."""
