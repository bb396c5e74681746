import pytest

from exactrec._backend import available_backends


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split("]")[0].split()[-1])):
            terminalreporter.write_line(line)
