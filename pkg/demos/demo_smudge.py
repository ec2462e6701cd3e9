"""Smudge walkthrough: an uneven quantum cascade of information erasure.

Lays four strokes on differently colored stripes and applies the shared
damping ancilla at several strengths. Only the first stroke is truly
damped; later strokes entangle with the ancilla and pick up mixed colors.
"""

import math
from pathlib import Path

import numpy as np

from qbrush import (CanvasImage, Snapshot, Stroke, apply_updates, paste,
                    region_mean_hsl, save_png)
from qbrush.backends import BackendSession, BackendSpec
from qbrush.brushes import SmudgeParams, run_smudge
from qbrush.color import hsl_array_to_rgb

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def striped(width=200, height=160):
    canvas = CanvasImage.blank(width, height)
    hues = (0.02, 0.33, 0.55, 0.78)
    for i, h in enumerate(hues):
        rgb = hsl_array_to_rgb(np.array([[h, 0.8, 0.5]]))[0]
        canvas.pixels[i * height // 4:(i + 1) * height // 4, :, :3] = \
            np.rint(rgb * 255).astype(np.uint8)
    return canvas


def main():
    canvas = striped()
    (OUT / "smudge_before.png").write_bytes(save_png(canvas))
    strokes = [
        Stroke(points=[(20.0, 20.0 + 40 * i), (180.0, 20.0 + 40 * i)],
               radius=7.0, brush_kind="smudge")
        for i in range(4)
    ]
    for gamma in (0.0, math.pi / 2, math.pi):
        params = SmudgeParams(control=0, gamma=gamma, n_strokes=4)
        snap = Snapshot(snapshot_id=f"g{gamma:.2f}", image=canvas)
        backend = BackendSession(BackendSpec(kind="exact"), seed=5)
        outcome = run_smudge(snap, strokes, params, backend)
        print(f"\ngamma = {gamma:.3f} (damping toward dark):")
        for upd, mask in zip(outcome.updates, outcome.masks):
            old = region_mean_hsl(canvas, mask)
            print(f"  stroke {upd.segment_index}: "
                  f"h {old.h:.3f} -> {upd.new_h:.3f}, "
                  f"l {old.l:.3f} -> {upd.new_l:.3f}")
        diff = apply_updates(snap, outcome.updates, outcome.masks)
        name = f"smudge_gamma_{gamma:.2f}.png"
        (OUT / name).write_bytes(save_png(paste(canvas, diff)))
        print(f"  -> {name}")
    print("\nAt full strength the first stroke lands exactly on black "
          "(complete collapse); the rest stop short, carrying entangled "
          "leftovers of the colors before them.")


if __name__ == "__main__":
    main()
