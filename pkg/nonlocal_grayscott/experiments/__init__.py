"""Experiment orchestration, artifacts and the invariant suite."""
