import hypothesis
import pytest

hypothesis.settings.register_profile(
    "mseg", max_examples=60, deadline=None, derandomize=True
)
hypothesis.settings.load_profile("mseg")

# criterion number -> verdict, echoed after the run so the lines survive
# pytest's output capture
_ACCEPTANCE: dict[int, tuple[bool, float]] = {}


@pytest.fixture
def acceptance():
    def record(n: int, ok: bool, elapsed: float = 0.0) -> None:
        _ACCEPTANCE[n] = (ok, elapsed)
        print(f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s)")
        assert ok, f"acceptance criterion {n} failed"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, elapsed = _ACCEPTANCE[n]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {n} {verdict} ({elapsed:.2f}s)")
