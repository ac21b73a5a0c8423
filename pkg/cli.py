"""
Command-line entry point

    python cli.py [--seed N] [--width W] [--height H] [--c C] <command> ...

Commands: encode, stretch, reconstruct, evaluate, synth, bench, serve.
Exit status is 0 on success, 1 on a toolkit error and 2 on bad arguments.
"""
import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from config import Config, configure_logging
from exceptions import IncomparableLayoutsError, LayoutToolkitError, ReconstructionError
from geometry.models import ImageGrid
from layout.encoding import annotation_to_signals, layout_to_annotation, render_signals
from metrics.evaluation import corner_error, iou_3d, pixel_error
from postprocess.pipeline import MODES, reconstruct, reconstruct_detailed
from storage.file_store import (AnnotationFile, LayoutFile, SignalsFile, read_image, write_image)
from storage.visualize import save_report_images
from stretch.augment import (adjust_luminance, flip_image, flip_layout, rotate_image,
                             rotate_layout)
from stretch.models import StretchParams
from stretch.warp import sample_stretch, stretch_image, stretch_layout
from synthetic.generator import generate_noisy_signals, generate_room
from synthetic.models import CORNER_COUNTS, RoomSpec

logger = logging.getLogger(__name__)

SIGNAL_SUFFIXES = ('.json', '.npy')


def _grid(args):
    return ImageGrid(args.width, args.height if args.height is not None else args.width // 2)


def _decay(value):
    c = float(value)
    if not 0 < c < 1:
        raise argparse.ArgumentTypeError(f"decay constant must lie in (0, 1), got {value}")
    return c


def cmd_encode(args):
    annotation = AnnotationFile.read(args.annotation, grid=_grid(args))
    signals = annotation_to_signals(annotation, args.c)
    output = args.output or Path(args.annotation).with_suffix('.signals.json')
    SignalsFile.write(output, signals, c=args.c, provenance=f'annotation:{Path(args.annotation).name}',
                      raw=args.raw)
    print(f'Encoded {annotation.corner_count} corners into {output}')
    return 0


def cmd_stretch(args):
    img = read_image(args.image)
    ImageGrid(img.shape[1], img.shape[0])

    if args.random:
        params = sample_stretch(np.random.default_rng(args.seed))
    else:
        params = StretchParams(args.kx, args.kz)
    logger.info("Stretching by k_x=%.4f, k_z=%.4f", params.k_x, params.k_z)

    warped = stretch_image(img, params)
    if args.flip:
        warped = flip_image(warped)
    if args.rotate:
        warped = rotate_image(warped, args.rotate)
    if args.gamma != 1.0:
        warped = adjust_luminance(warped, args.gamma)
    write_image(args.output, warped)

    if args.layout:
        layout = stretch_layout(LayoutFile.read(args.layout), params)
        if args.flip:
            layout = flip_layout(layout)
        if args.rotate:
            layout = rotate_layout(layout, args.rotate, img.shape[1])
        LayoutFile.write(args.layout_output or Path(args.output).with_suffix('.layout.txt'), layout)

    print(f'k_x {params.k_x!r}')
    print(f'k_z {params.k_z!r}')
    return 0


def cmd_reconstruct(args):
    record = SignalsFile.read(args.signals)
    signals = record.signals
    result = reconstruct_detailed(signals, args.mode, camera_height=args.camera_height)
    output = args.output or Path(args.signals).with_suffix('.layout.txt')
    LayoutFile.write(output, result.layout)

    if args.viz:
        grid = ImageGrid.from_width(signals.width)
        if args.image:
            img = read_image(args.image)
        else:
            img = np.full((grid.height, grid.width, 3), 96, dtype=np.uint8)
        save_report_images(args.viz, img, signals, result.layout, grid, peaks=result.peaks)

    print(f'Reconstructed {result.layout.corner_count} corners '
          f'(rotation {np.degrees(result.rotation):.3f} deg) into {output}')
    return 0


def _load_side(path, grid, c):
    """(layout, signals) from a layout file or a signals file"""
    if Path(path).suffix in SIGNAL_SUFFIXES:
        signals = SignalsFile.read(path, c=c).signals
        return reconstruct(signals), signals
    layout = LayoutFile.read(path)
    return layout, render_signals(layout, grid, c)


def cmd_evaluate(args):
    grid = _grid(args)
    pred, pred_sig = _load_side(args.pred, grid, args.c)
    gt, gt_sig = _load_side(args.gt, grid, args.c)

    print(f'iou_3d {iou_3d(pred, gt):.9f}')
    try:
        print(f'corner_error {corner_error(pred, gt, grid):.9f}')
    except IncomparableLayoutsError as e:
        logger.info("%s", e)
        print('corner_error n/a')
    if pred_sig.width == gt_sig.width == grid.width:
        print(f'pixel_error {pixel_error(pred_sig, gt_sig, grid):.9f}')
    else:
        print('pixel_error n/a')
    return 0


def cmd_synth(args):
    grid = _grid(args)
    spec = RoomSpec(corner_count=args.corners, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    out = Path(args.out)

    for index in range(args.count):
        layout = generate_room(spec, rng)
        signals = generate_noisy_signals(layout, grid, args.noise, rng, c=args.c)
        stem = out / f'room_{index:04d}'
        LayoutFile.write(f'{stem}.layout.txt', layout)
        SignalsFile.write(f'{stem}.signals.json', signals, c=args.c,
                          provenance=f'synthetic seed={args.seed} index={index} noise={args.noise!r}')
        AnnotationFile.write(f'{stem}.annotation.txt', layout_to_annotation(layout, grid))
    print(f'Wrote {args.count} rooms to {out}')
    return 0


def cmd_bench(args):
    grid = _grid(args)
    rng = np.random.default_rng(args.seed)
    layout = generate_room(RoomSpec(corner_count=args.corners), rng)
    signals = render_signals(layout, grid, args.c)

    timings = []
    for _ in range(args.runs):
        start = time.perf_counter()
        reconstruct(signals)
        timings.append(time.perf_counter() - start)
    print(f'reconstruct median {1000 * np.median(timings):.3f} ms over {args.runs} runs')

    img = rng.integers(0, 256, size=(grid.height, grid.width, 3), dtype=np.uint8)
    start = time.perf_counter()
    stretch_image(img, StretchParams(2.0, 1.0))
    print(f'stretch_image {1000 * (time.perf_counter() - start):.3f} ms')
    return 0


def cmd_serve(args):
    from app import app
    app.run(host=args.host, port=args.port)
    return 0


def _add_global_flags(target, suppress):
    def default(value):
        return argparse.SUPPRESS if suppress else value

    target.add_argument('--seed', type=int, default=default(0))
    target.add_argument('--width', type=int, default=default(Config.IMAGE_WIDTH))
    target.add_argument('--height', type=int, default=default(None), help='defaults to width / 2')
    target.add_argument('--c', type=_decay, default=default(Config.CORNER_DECAY), help='corner decay constant')
    target.add_argument('--log-level', default=default(Config.LOG_LEVEL))


def build_parser():
    parser = argparse.ArgumentParser(prog='layout-toolkit',
                                     description='Panorama room layout toolkit')
    # global flags are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(parser, suppress=False)
    _add_global_flags(common, suppress=True)

    commands = parser.add_subparsers(dest='command', required=True)

    encode = commands.add_parser('encode', parents=[common], help='annotation -> signals')
    encode.add_argument('annotation')
    encode.add_argument('-o', '--output')
    encode.add_argument('--raw', action='store_true', help='write a raw (3, W) .npy array')
    encode.set_defaults(handler=cmd_encode)

    stretch = commands.add_parser('stretch', parents=[common], help='Pano Stretch an image (and layout)')
    stretch.add_argument('image')
    stretch.add_argument('-o', '--output', required=True)
    stretch.add_argument('--layout')
    stretch.add_argument('--layout-output')
    stretch.add_argument('--kx', type=float, default=1.0)
    stretch.add_argument('--kz', type=float, default=1.0)
    stretch.add_argument('--random', action='store_true', help='sample k_x, k_z from --seed')
    stretch.add_argument('--flip', action='store_true')
    stretch.add_argument('--rotate', type=int, default=0, help='roll by this many columns')
    stretch.add_argument('--gamma', type=float, default=1.0)
    stretch.set_defaults(handler=cmd_stretch)

    rebuild = commands.add_parser('reconstruct', parents=[common], help='signals -> layout')
    rebuild.add_argument('signals')
    rebuild.add_argument('-o', '--output')
    rebuild.add_argument('--mode', choices=MODES, default='general')
    rebuild.add_argument('--camera-height', type=float, default=Config.CAMERA_HEIGHT)
    rebuild.add_argument('--viz', metavar='PREFIX', help='write PREFIX_overlay.png and PREFIX_floorplan.png')
    rebuild.add_argument('--image', help='panorama to draw the overlay on')
    rebuild.set_defaults(handler=cmd_reconstruct)

    evaluate = commands.add_parser('evaluate', parents=[common], help='compare prediction to ground truth')
    evaluate.add_argument('pred', help='layout file or signals file (.json/.npy)')
    evaluate.add_argument('gt', help='layout file or signals file (.json/.npy)')
    evaluate.set_defaults(handler=cmd_evaluate)

    synth = commands.add_parser('synth', parents=[common], help='random rooms with signals and annotations')
    synth.add_argument('--corners', type=int, choices=CORNER_COUNTS, default=4)
    synth.add_argument('--count', type=int, default=10)
    synth.add_argument('--noise', type=float, default=0.0, help='boundary noise sigma in radians')
    synth.add_argument('--out', required=True)
    synth.set_defaults(handler=cmd_synth)

    bench = commands.add_parser('bench', parents=[common], help='reconstruction and stretch latency')
    bench.add_argument('--runs', type=int, default=100)
    bench.add_argument('--corners', type=int, choices=CORNER_COUNTS, default=8)
    bench.set_defaults(handler=cmd_bench)

    serve = commands.add_parser('serve', parents=[common], help='run the HTTP API')
    serve.add_argument('--host', default='127.0.0.1')
    serve.add_argument('--port', type=int, default=5000)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except ReconstructionError as e:
        print(f'error: reconstruction failed at stage {e.stage}: {e.message}', file=sys.stderr)
        return 1
    except LayoutToolkitError as e:
        print(f'error: {e}', file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
