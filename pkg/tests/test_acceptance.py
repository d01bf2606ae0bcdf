"""Acceptance gate: every published-result check must pass within budget.

The checks live in the package's own registry so the identical battery is
runnable from the command line; this suite pins them into CI one by one.
"""

import pytest

from lvcoex.acceptance import all_checks, run_check, run_checks, sections

CHECKS = all_checks()


@pytest.mark.parametrize(
    "check", CHECKS, ids=[f"{c.section}:{c.name}" for c in CHECKS]
)
def test_acceptance_check(check):
    result = run_check(check)
    assert result.ok, (
        f"{check.section}:{check.name} -> {result.detail} "
        f"({result.seconds:.2f}s, budget {check.budget_s:.0f}s)"
    )


def test_sections_cover_the_battery():
    assert sections() == (
        "n2", "n2-classes", "n3", "n4", "n4-counts",
        "samples", "properties", "scope",
    )


def test_section_filter_matches_exactly():
    picked = run_checks("n4")
    assert [r.section for r in picked] == ["n4"] * 3
    assert all(r.ok for r in picked)


def test_unknown_section_is_rejected():
    with pytest.raises(ValueError):
        run_checks("n5")
