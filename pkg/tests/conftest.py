import pytest

from grpcompress.catalog import build_catalog, catalog_classes


@pytest.fixture(scope="session")
def classes_by_order():
    """Every isomorphism class of the order <= 60 catalog, realized once per session."""
    return catalog_classes(build_catalog(60))


@pytest.fixture(scope="session")
def all_classes(classes_by_order):
    return [c for n in sorted(classes_by_order) for c in classes_by_order[n]]


@pytest.fixture(scope="session")
def verification(classes_by_order):
    from grpcompress.verify import verify_symmetric_groups, verify_catalog

    report = verify_catalog(classes_by_order)
    report.symmetric_groups = verify_symmetric_groups()
    return report


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
