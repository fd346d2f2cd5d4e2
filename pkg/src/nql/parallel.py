import os
from concurrent.futures import ProcessPoolExecutor

ENV_VAR = "NQL_THREADS"


def thread_cap() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
    return n


def ordered_map(fn, items) -> list:
    """``[fn(x) for x in items]``, possibly across processes; output order is fixed.

    ``fn`` must be a picklable top-level function.
    """
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
