"""Collage walkthrough: no-cloning as a painting effect.

Copies a patterned region through the asymmetric cloning circuit at several
balance settings. High s0 keeps the original faithful and degrades the
paste; the symmetric point splits the damage evenly.
"""

from pathlib import Path

import numpy as np

from qbrush import (CanvasImage, Snapshot, apply_updates, paste, polygon_mask,
                    save_png)
from qbrush.backends import BackendSession, BackendSpec
from qbrush.brushes import CollageParams, run_collage, solve_s1

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def patterned(width=200, height=150):
    canvas = CanvasImage.blank(width, height, fill=(235, 235, 235, 255))
    yy, xx = np.mgrid[0:height, 0:width]
    rings = ((np.hypot(xx - 50, yy - 40) // 8) % 3).astype(np.uint8)
    palette = np.array([[200, 60, 60], [60, 120, 200], [240, 200, 80]],
                       dtype=np.uint8)
    canvas.pixels[:80, :100, :3] = palette[rings[:80, :100]]
    return canvas


def main():
    canvas = patterned()
    (OUT / "collage_before.png").write_bytes(save_png(canvas))
    region = polygon_mask([(8, 6), (92, 6), (92, 72), (8, 72)], 200, 150)
    xs, ys = region.coords()
    original = canvas.pixels[ys, xs, :3].astype(float) / 255.0

    for s0 in (2.0 / 3.0, 0.85, 1.0):
        s1 = solve_s1(s0)
        params = CollageParams(s0=s0, copy_region=region,
                               paste_origin=(100, 76))
        snap = Snapshot(snapshot_id=f"s{s0:.2f}", image=canvas)
        backend = BackendSession(BackendSpec(kind="exact"), seed=8)
        outcome = run_collage(snap, params, backend)
        copy_rw, paste_rw = outcome.updates
        err_copy = float(np.abs(copy_rw.values - original).mean())
        err_paste = float(np.abs(paste_rw.values - original).mean())
        print(f"s0={s0:.3f} s1={s1:.3f}  mean channel error: "
              f"copy {err_copy:.4f}  paste {err_paste:.4f}")
        diff = apply_updates(snap, outcome.updates, outcome.masks)
        name = f"collage_s0_{s0:.2f}.png"
        (OUT / name).write_bytes(save_png(paste(canvas, diff)))
        print(f"  -> {name}")
    print("\nRaising s0 protects the copy region and washes out the paste; "
          "s0 = 1 reproduces the original exactly while the paste collapses "
          "to the flat mean color. Structure survives because only singular "
          "values change, never the singular vectors.")


if __name__ == "__main__":
    main()
