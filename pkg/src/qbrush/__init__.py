"""qbrush: a quantum digital painting engine.

Brush strokes become small quantum circuits (at most 12 qubits) simulated on
a dense statevector backend; measured expectations map back onto image colors.
Four brushes are provided (aquarela, heisenbrush, smudge, collage) together
with a snapshot-based stroke manager, an HTTP API, and a batch CLI.
"""

from .backends import BackendSession, BackendSpec
from .brushes import (AquarelaParams, BrushOutcome, CollageParams,
                      HeisenParams, RegionRewrite, SegmentColorUpdate,
                      SingularTriple, SmudgeParams, aquarela_circuit,
                      heisen_color, run_aquarela, run_brush, run_collage,
                      run_heisenbrush, run_smudge, smudge_circuit, solve_s1,
                      svd_encode, trotter_step_circuit, uaqc_circuit)
from .canvas import (CanvasImage, PixelDiff, PixelMask, Snapshot, Stroke,
                     apply_updates, load_png, paste, polygon_mask, rasterize,
                     region_mean_hsl, save_png, segment_stroke)
from .color import (BlochAngles, HslColor, RgbColor, circular_mean_hue,
                    decode_bloch, encode_hl, hsl_to_rgb, rgb_to_hsl,
                    shift_region)
from .errors import (ArgumentError, BackendNotConfiguredError,
                     DegenerateHueMeanError, EmptyStrokeError, JobNotFoundError,
                     JobStateError, PlacementError, PngDecodeError, QBrushError,
                     RegionTooSmallError, ScriptError, TooManySegmentsError,
                     ValidationError)
from .service import BrushJob, Engine, JobStatus
from .sim import (Circuit, Gate, GateKind, NoiseSpec, PauliVector, StateVector,
                  apply_gate, bloch_vector, magnetization, run_circuit,
                  sampled_bloch_vector, sampled_magnetization)

__version__ = "0.1.0"
