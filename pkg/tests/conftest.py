import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from suitable.model import PermTable, is_core  # noqa: E402

# every verified core seen by any test, as (N, v, t, rows)
VERIFIED_CORES: list[tuple[int, int, int, tuple]] = []
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def record_core(table: PermTable, t: int) -> bool:
    """Verify ``table`` as a core and, if it passes, log it for the bounds cross-check."""
    ok = is_core(table, t)
    if ok:
        VERIFIED_CORES.append((table.n_rows, table.v, t, table.rows))
    return ok


@pytest.fixture
def witness_log():
    return record_core


def pytest_collection_modifyitems(session, config, items):
    # acceptance runs last so it can audit every core recorded by other tests
    items.sort(key=lambda item: "test_acceptance" in item.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda n: int(n.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}  {detail}")
