"""One status line per acceptance criterion, shared between tests and the summary hook."""

LINES: list[str] = []


def record(tag: str, ok: bool | None, detail: str) -> None:
    status = {True: "PASS", False: "FAIL", None: "REPORT"}[ok]
    line = f"[{status}] {tag}: {detail}"
    LINES.append(line)
    print(line)
