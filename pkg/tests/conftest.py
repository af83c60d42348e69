import pytest
from hypothesis import settings

from extpg.density import KungAudit
from extpg.matroid import audit_constructions

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# Every RepMatroid built anywhere in the session goes through this sink.
KUNG = KungAudit()
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session", autouse=True)
def kung_audit():
    with audit_constructions(KUNG):
        yield KUNG


def pytest_collection_modifyitems(config, items):
    # the Kung criterion summarizes the whole run, so it goes last
    last = [it for it in items if "kung" in it.name.lower() and "acceptance" in it.nodeid]
    rest = [it for it in items if it not in last]
    items[:] = rest + last


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
