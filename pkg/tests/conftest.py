import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-long",
        action="store_true",
        default=False,
        help="run long-tagged tests (full n=6 sweeps, large samples)",
    )


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "long: long-running checks, enabled with --run-long"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip_long = pytest.mark.skip(reason="needs --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion test."""
    lines = []
    for status in ("passed", "failed", "skipped"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if status != "skipped" and getattr(report, "when", "") != "call":
                continue
            name = nodeid.split("::")[-1]
            lines.append((name, status.upper()))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    seen = set()
    for name, status in lines:
        if name in seen:
            continue
        seen.add(name)
        terminalreporter.write_line(f"{status:<7} {name}")
