"""Aquarela walkthrough: steering stroke colors toward the brush color.

Paints one diagonal stroke over a two-tone canvas at increasing strengths
and shows how each segment's hue and luminosity drift toward the brush.
"""

from pathlib import Path

import numpy as np

from qbrush import (CanvasImage, HslColor, Snapshot, Stroke, apply_updates,
                    paste, region_mean_hsl, save_png)
from qbrush.backends import BackendSession, BackendSpec
from qbrush.brushes import AquarelaParams, run_aquarela
from qbrush.color import hsl_array_to_rgb

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def two_tone(width=160, height=120):
    canvas = CanvasImage.blank(width, height)
    warm = hsl_array_to_rgb(np.array([[0.07, 0.85, 0.55]]))[0]
    cool = hsl_array_to_rgb(np.array([[0.58, 0.70, 0.45]]))[0]
    canvas.pixels[:, : width // 2, :3] = np.rint(warm * 255).astype(np.uint8)
    canvas.pixels[:, width // 2:, :3] = np.rint(cool * 255).astype(np.uint8)
    return canvas


def main():
    canvas = two_tone()
    (OUT / "aquarela_before.png").write_bytes(save_png(canvas))
    stroke = Stroke(points=[(15, 20), (80, 60), (145, 100)], radius=6.0,
                    brush_kind="aquarela")
    brush_color = HslColor(h=0.83, s=0.9, l=0.5)  # violet
    print(f"brush color: h={brush_color.h} l={brush_color.l}")

    for gamma in (0.0, 0.4, 1.0):
        params = AquarelaParams(brush_color=brush_color, gamma=gamma,
                                n_segments=5)
        snap = Snapshot(snapshot_id=f"g{gamma}", image=canvas)
        backend = BackendSession(BackendSpec(kind="exact"), seed=1)
        outcome = run_aquarela(snap, stroke, params, backend)
        print(f"\ngamma = {gamma}:")
        for upd, mask in zip(outcome.updates, outcome.masks):
            old = region_mean_hsl(canvas, mask)
            print(f"  segment {upd.segment_index}: "
                  f"h {old.h:.3f} -> {upd.new_h:.3f}, "
                  f"l {old.l:.3f} -> {upd.new_l:.3f}")
        diff = apply_updates(snap, outcome.updates, outcome.masks)
        result = paste(canvas, diff)
        name = f"aquarela_gamma_{gamma:.1f}.png"
        (OUT / name).write_bytes(save_png(result))
        print(f"  changed {len(diff)} pixels -> {name}")
    print("\nAt gamma = 0 the stroke changes nothing; at 1.0 every segment "
          "leans toward the brush, less so further along the stroke where "
          "the canvas has weakened the brush qubit.")


if __name__ == "__main__":
    main()
