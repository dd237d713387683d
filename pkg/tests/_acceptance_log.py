"""Shared record of acceptance outcomes, printed at the end of the run."""
RESULTS = {}


def record(num: int, ok: bool, detail: str) -> bool:
    RESULTS[num] = (ok, detail)
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok
