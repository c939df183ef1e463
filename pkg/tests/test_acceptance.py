"""Acceptance gate: every numbered claim, at its stated tolerance.

Each criterion from the verification suite runs as its own test and
prints its one-line verdict, so `pytest -v tests/test_acceptance.py`
reads as the full scorecard. A failure message carries the measured
values next to their bounds.
"""

import pytest

from qberry.verify import _NAMES, run_criterion

_IDS = [f"{cid:02d}-{_NAMES[cid].replace(' ', '-')}" for cid in _NAMES]


@pytest.mark.parametrize("cid", list(_NAMES), ids=_IDS)
def test_criterion(cid):
    result = run_criterion(cid, seed=0)
    print(result.line())
    if not result.passed:
        detail = "; ".join(
            f"{key}: measured {measured:.3e} vs bound {bound:.3e}"
            for key, (measured, bound) in sorted(result.checks.items())
            if measured > bound)
        pytest.fail(f"criterion {cid} ({result.name}) failed: {detail}"
                    + (f" [{result.note}]" if result.note else ""))
