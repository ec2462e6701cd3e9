"""The stroke manager: snapshot-isolated brush jobs over a live canvas.

Submitting strokes freezes a snapshot of the canvas and queues a job; running
the job executes the brush against that snapshot on a worker pool and stores a
pixel diff. The artist can re-run a job (same snapshot, optionally a new seed)
as often as they like and paste the diff onto the live canvas when satisfied.
The live canvas has a single writer (paste); snapshots are immutable and
shared freely across concurrent jobs.
"""

from __future__ import annotations

import itertools
import os
import threading
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .backends import BackendSession, BackendSpec
from .brushes import run_brush
from .canvas import CanvasImage, PixelDiff, Snapshot, Stroke, apply_updates, paste
from .errors import ArgumentError, JobNotFoundError, JobStateError

DEFAULT_WORKERS = min(4, os.cpu_count() or 1)


class JobStatus(str, Enum):
    QUEUED = "queued"
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"
    PASTED = "pasted"


@dataclass
class BrushJob:
    job_id: str
    snapshot: Snapshot
    brush_kind: str
    strokes: list[Stroke]
    params: object
    backend: BackendSpec
    seed: int
    status: JobStatus = JobStatus.QUEUED
    result: PixelDiff | None = None
    error: str | None = None
    future: Future | None = field(default=None, repr=False)

    @property
    def snapshot_id(self) -> str:
        return self.snapshot.snapshot_id


def execute_job(job: BrushJob) -> PixelDiff:
    """Run the brush pipeline for one job against its snapshot."""
    session = BackendSession(job.backend, job.seed)
    outcome = run_brush(job.brush_kind, job.snapshot, job.strokes, job.params,
                        session)
    return apply_updates(job.snapshot, outcome.updates, outcome.masks)


class Engine:
    """Job table plus live canvas; the one shared-state object in the system."""

    def __init__(self, canvas: CanvasImage | None = None,
                 workers: int = DEFAULT_WORKERS, runner=execute_job,
                 seed_source=None):
        self._lock = threading.RLock()
        self._canvas = canvas
        self._jobs: dict[str, BrushJob] = {}
        self._order: list[str] = []
        self._pool = ThreadPoolExecutor(max_workers=max(1, workers))
        self._runner = runner
        self._ids = itertools.count(1)
        self._seed_rng = (np.random.default_rng(seed_source)
                          if seed_source is not None else np.random.default_rng())

    # -- canvas ---------------------------------------------------------------

    def load_canvas(self, canvas: CanvasImage):
        with self._lock:
            self._canvas = canvas.copy()

    @property
    def canvas(self) -> CanvasImage:
        with self._lock:
            if self._canvas is None:
                raise ArgumentError("no canvas loaded")
            return self._canvas.copy()

    def has_canvas(self) -> bool:
        with self._lock:
            return self._canvas is not None

    # -- job lifecycle --------------------------------------------------------

    def submit(self, brush_kind: str, strokes: list[Stroke], params,
               backend: BackendSpec | None = None,
               seed: int | None = None) -> str:
        """Snapshot the canvas atomically and queue a new job."""
        backend = backend or BackendSpec()
        backend.validate()
        if hasattr(params, "validate"):
            params.validate()
        with self._lock:
            if self._canvas is None:
                raise ArgumentError("no canvas loaded")
            job_id = f"job-{next(self._ids)}"
            snapshot = Snapshot(snapshot_id=f"snap-{job_id}",
                                image=self._canvas.copy())
            if seed is None:
                seed = int(self._seed_rng.integers(0, 2**63 - 1))
            job = BrushJob(job_id=job_id, snapshot=snapshot,
                           brush_kind=brush_kind, strokes=list(strokes),
                           params=params, backend=backend, seed=int(seed))
            self._jobs[job_id] = job
            self._order.append(job_id)
            return job_id

    def get(self, job_id: str) -> BrushJob:
        with self._lock:
            if job_id not in self._jobs:
                raise JobNotFoundError(job_id)
            return self._jobs[job_id]

    def list_jobs(self) -> list[BrushJob]:
        with self._lock:
            return [self._jobs[j] for j in self._order]

    def run(self, job_id: str) -> None:
        """Schedule a queued job on the worker pool (FIFO)."""
        with self._lock:
            job = self.get(job_id)
            if job.status is not JobStatus.QUEUED:
                raise JobStateError(
                    f"job {job_id} is {job.status.value}, expected queued"
                )
            job.status = JobStatus.RUNNING
            job.future = self._pool.submit(self._execute, job_id)

    def rerun(self, job_id: str, seed: int | None = None) -> None:
        """Discard a finished job's result and re-execute on the same snapshot."""
        with self._lock:
            job = self.get(job_id)
            if job.status not in (JobStatus.DONE, JobStatus.FAILED):
                raise JobStateError(
                    f"job {job_id} is {job.status.value}, cannot rerun"
                )
            job.result = None
            job.error = None
            if seed is not None:
                job.seed = int(seed)
            job.status = JobStatus.QUEUED
        self.run(job_id)

    def _execute(self, job_id: str) -> None:
        job = self.get(job_id)
        try:
            diff = self._runner(job)
        except Exception as exc:  # failure lands in the job record
            with self._lock:
                job.status = JobStatus.FAILED
                job.error = f"{type(exc).__name__}: {exc}"
            return
        with self._lock:
            job.result = diff
            job.status = JobStatus.DONE

    def wait(self, job_id: str, timeout: float | None = None) -> BrushJob:
        job = self.get(job_id)
        future = job.future
        if future is not None:
            future.result(timeout=timeout)
        return self.get(job_id)

    def paste(self, job_id: str) -> PixelDiff:
        """Apply a done job's diff to the live canvas (single writer)."""
        with self._lock:
            job = self.get(job_id)
            if job.status is not JobStatus.DONE:
                raise JobStateError(
                    f"job {job_id} is {job.status.value}, paste needs done"
                )
            self._canvas = paste(self._canvas, job.result)
            job.status = JobStatus.PASTED
            return job.result

    def delete(self, job_id: str) -> None:
        with self._lock:
            job = self.get(job_id)
            if job.status is JobStatus.RUNNING:
                raise JobStateError(f"job {job_id} is running, cannot delete")
            del self._jobs[job_id]
            self._order.remove(job_id)

    def preview(self, job_id: str) -> CanvasImage:
        """The job's snapshot with its diff applied."""
        with self._lock:
            job = self.get(job_id)
            if job.result is None:
                raise JobStateError(f"job {job_id} has no result to preview")
            return paste(job.snapshot.image, job.result)

    def shutdown(self):
        self._pool.shutdown(wait=True)
