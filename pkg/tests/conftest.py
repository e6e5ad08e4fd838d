import pytest

from equibundle.rootdata import CartanType, build_root_datum


def datum(text, lattice="adjoint", torus=0):
    return build_root_datum(CartanType.parse(text, torus), lattice)


@pytest.fixture(scope="session")
def A1():
    return datum("A1")


@pytest.fixture(scope="session")
def A2():
    return datum("A2")


def pytest_configure(config):
    config._criterion_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record and print one pass/fail line for an acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        request.config._criterion_lines.append(line)
        print(line)
        return ok

    return record
