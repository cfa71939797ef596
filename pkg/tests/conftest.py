from hypothesis import settings

# numba compiles on first call, so wall-clock deadlines are meaningless
settings.register_profile("vaccorr", deadline=None, max_examples=60)
settings.load_profile("vaccorr")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
