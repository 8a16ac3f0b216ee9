"""Unit tests for the invariant suite."""

from nonlocal_grayscott.experiments.checks import run_seed_checks


class TestSeedChecks:
    """Test run_seed_checks."""

    def test_all_pass(self):
        """Test that every shipped invariant holds."""
        results = run_seed_checks()
        failed = {r.name: r.detail for r in results if not r.passed}

        assert results
        assert not failed

    def test_names_unique(self):
        """Test that each check reports under its own name."""
        names = [r.name for r in run_seed_checks()]
        assert len(names) == len(set(names))
