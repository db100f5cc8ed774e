import math

import pytest
from hypothesis import settings

from biphoton.geometry import ExperimentConfig

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")


def fig2(**kw):
    base = dict(R=400.0, L=2000.0, w0=100.0, w1=100.0, wg=500.0, phi=0.0)
    base.update(kw)
    return ExperimentConfig(**base)


def fig4(**kw):
    base = dict(R=1000.0, L=200.0, w0=500.0, w1=100.0, wg=500.0, phi=0.0)
    base.update(kw)
    return ExperimentConfig(**base)


@pytest.fixture
def fig2_config():
    return fig2()


@pytest.fixture
def fig2_transverse():
    return fig2(phi=math.pi / 2)


@pytest.fixture
def fig4_config():
    return fig4()


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in criterion order."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                status = "PASS" if outcome == "passed" else "FAIL"
                lines.append((props["criterion"], status, props.get("summary", rep.nodeid)))
    if lines:
        terminalreporter.section("acceptance criteria")
        for number, status, summary in sorted(lines):
            terminalreporter.write_line(f"[{status}] {number:>2}. {summary}")
