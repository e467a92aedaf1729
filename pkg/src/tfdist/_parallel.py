import os


def workers():
    """Worker count for scipy.fft, read from ``TF_THREADS`` (0 or unset = auto).

    Batched FFTs split whole rows across threads, so results do not depend on
    the worker count.
    """
    raw = os.environ.get("TF_THREADS", "0").strip()
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        return os.cpu_count() or 1
    return n
