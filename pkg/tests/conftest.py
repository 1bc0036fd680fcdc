import pytest

from tagtrace import TagAssignment, Trace


@pytest.fixture
def make_trace():
    """Build a Trace from (user, tag, item, timestamp) tuples in input order."""

    def _make(rows):
        return Trace.from_assignments(
            TagAssignment(u, t, i, ts, seq) for seq, (u, t, i, ts) in enumerate(rows)
        )

    return _make
