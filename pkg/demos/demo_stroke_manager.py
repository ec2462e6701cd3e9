"""Stroke-manager walkthrough: snapshots, re-runs, and selective pasting.

Submits two overlapping jobs, re-rolls one of them on the sampling backend
until a preferred outcome appears, and shows that a job's snapshot never
observes pastes made after submission.
"""

from pathlib import Path

import numpy as np

from qbrush import CanvasImage, HslColor, Stroke, save_png
from qbrush.backends import BackendSpec
from qbrush.brushes import AquarelaParams
from qbrush.service import Engine

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def main():
    rng = np.random.default_rng(0)
    px = rng.integers(90, 200, size=(120, 160, 4), dtype=np.uint8)
    px[:, :, 3] = 255
    engine = Engine(canvas=CanvasImage(px), workers=2)
    try:
        stroke = Stroke(points=[(15, 20), (140, 100)], radius=5.0,
                        brush_kind="aquarela")
        params = AquarelaParams(brush_color=HslColor(0.95, 0.9, 0.55),
                                gamma=0.9, n_segments=4)

        job_a = engine.submit("aquarela", [stroke], params,
                              backend=BackendSpec(kind="sampling", shots=64),
                              seed=1)
        job_b = engine.submit("aquarela", [stroke], params,
                              backend=BackendSpec(kind="exact"), seed=2)
        print(f"submitted {job_a} (sampling, 64 shots) and {job_b} (exact); "
              "both snapshots are frozen now")

        engine.run(job_b)
        engine.wait(job_b)
        engine.paste(job_b)
        print(f"{job_b} ran and pasted first; the live canvas changed")

        engine.run(job_a)
        first = engine.wait(job_a).result
        print(f"{job_a} still renders against ITS snapshot: "
              f"{len(first)} diff pixels")

        for reroll, seed in enumerate((11, 12, 13), start=1):
            engine.rerun(job_a, seed=seed)
            result = engine.wait(job_a).result
            print(f"  re-roll {reroll} (seed {seed}): {len(result)} diff pixels")

        engine.paste(job_a)
        print(f"pasted the last re-roll of {job_a}")
        (OUT / "stroke_manager_final.png").write_bytes(
            save_png(engine.canvas))
        print("final canvas -> stroke_manager_final.png")
        print("\nJobs: " + ", ".join(
            f"{j.job_id}={j.status.value}" for j in engine.list_jobs()))
    finally:
        engine.shutdown()


if __name__ == "__main__":
    main()
