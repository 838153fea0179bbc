"""End-to-end tests over the packaged scenarios."""
