import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from helpers import ACCEPTANCE  # noqa: E402


def acceptance_lines() -> list[str]:
    lines = []
    for num in sorted({k[0] for k in ACCEPTANCE}):
        parts = [(part, *ACCEPTANCE[(n, part)]) for (n, part) in ACCEPTANCE if n == num]
        ok = all(p[1] for p in parts)
        failed = [f"{p[0]}: {p[2]}" for p in parts if not p[1]]
        detail = f"{len(parts)} part(s) passed" if ok else "; ".join(failed)
        lines.append(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    return lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
