import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
    missing = [n for n in range(1, 12) if n not in module.RESULTS]
    for n in missing:
        terminalreporter.write_line(f"FAIL criterion {n}: did not complete")
