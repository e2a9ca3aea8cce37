import pytest

from parafuzz.membership import CurveKind, MembershipCurve

ALL_KINDS = list(CurveKind)


@pytest.fixture(params=ALL_KINDS, ids=lambda k: k.value)
def kind(request):
    return request.param


@pytest.fixture
def unit_curve(kind):
    """Curve with a=-1, b=0, c=1 (D=1)."""
    return MembershipCurve(kind, -1.0, 0.0, 1.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
