import os

import hypothesis

hypothesis.settings.register_profile("default", deadline=None, max_examples=40)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=300)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance criteria report their verdicts here; printed after the run
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  criterion {name}")
