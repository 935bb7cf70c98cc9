import os
import sys
import warnings

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))
warnings.filterwarnings("ignore", module="numba")

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one line per acceptance criterion, shown after the run even under capture
CRITERIA: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for num in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[num])
