"""Sweep workers: run independent seeded jobs on threads.

Every job owns its own world; results come back in job order.
"""

import queue
import threading

import env
import state


class SweepWorker(threading.Thread):
    """Pulls (index, arg) jobs until the queue is empty or stop() is called."""

    def __init__(self, jobs, results, lock, fn):
        super().__init__(daemon=True)
        self.jobs = jobs
        self.results = results
        self.lock = lock
        self.fn = fn
        self._stop_event = threading.Event()

    def stop(self):
        self._stop_event.set()

    def run(self):
        while not self._stop_event.is_set():
            try:
                index, arg = self.jobs.get_nowait()
            except queue.Empty:
                return
            try:
                out = self.fn(arg)
            except Exception as e:
                state.log("worker_error", f"job {index}: {e}")
                out = e
            with self.lock:
                self.results[index] = out


def run_sweep(fn, args, workers=None):
    """Apply fn to every arg on up to `workers` threads; re-raise the first failure."""
    args = list(args)
    workers = max(1, min(workers or env.WORKERS, len(args) or 1))
    if workers == 1:
        return [fn(a) for a in args]
    jobs = queue.Queue()
    for i, a in enumerate(args):
        jobs.put((i, a))
    results = {}
    lock = threading.Lock()
    pool = [SweepWorker(jobs, results, lock, fn) for _ in range(workers)]
    for w in pool:
        w.start()
    for w in pool:
        w.join()
    ordered = [results[i] for i in range(len(args))]
    for out in ordered:
        if isinstance(out, Exception):
            raise out
    return ordered
