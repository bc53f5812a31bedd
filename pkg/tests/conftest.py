import pytest

import stallings.graph

stallings.graph.VALIDATE = True

from stallings.constructions import theorem_pair  # noqa: E402
from stallings.graph import Alphabet  # noqa: E402
from stallings.subgroup import cyclic_images, kernel_of_finite_quotient  # noqa: E402

_CRITERIA: dict[str, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def abcde():
    return Alphabet("abcde")


@pytest.fixture(scope="session")
def ab():
    return Alphabet("ab")


@pytest.fixture(scope="session")
def deltas():
    return theorem_pair()


@pytest.fixture(scope="session")
def z2_z3_kernels(ab):
    return (
        kernel_of_finite_quotient(ab, cyclic_images(2, "ab")),
        kernel_of_finite_quotient(ab, cyclic_images(3, "ab")),
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    name = marker.args[0]
    detail = dict(item.user_properties).get("detail", "")
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[name] = ("PASS" if rep.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split()[0])):
        status, detail = _CRITERIA[name]
        terminalreporter.write_line(f"[{status}] criterion {name}" + (f" -- {detail}" if detail else ""))
