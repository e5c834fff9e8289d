ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, ok in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"  {'PASS' if ok else 'FAIL'}  {name}")
