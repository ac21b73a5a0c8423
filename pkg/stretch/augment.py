"""
Standard panorama augmentations used next to Pano Stretch during training:
horizontal rotation, left-right flip and luminance change.
"""
import numpy as np

from layout.models import BoundarySignals, ManhattanLayout


def rotate_image(img, shift):
    """Roll the panorama by `shift` columns (content moves toward higher columns)"""
    return np.roll(np.asarray(img), int(shift), axis=1)


def rotate_signals(sig, shift):
    shift = int(shift)
    return BoundarySignals(np.roll(sig.y_c, shift), np.roll(sig.y_f, shift), np.roll(sig.y_w, shift))


def rotate_layout(layout, shift, width):
    """Yaw matching a roll of `shift` columns on a panorama `width` columns wide"""
    return ManhattanLayout(layout.floor_polygon, camera_height=layout.camera_height,
                           ceiling_height=layout.ceiling_height,
                           yaw=layout.yaw + 2 * np.pi * int(shift) / width)


def flip_image(img):
    return np.asarray(img)[:, ::-1].copy()


def flip_signals(sig):
    return BoundarySignals(sig.y_c[::-1], sig.y_f[::-1], sig.y_w[::-1])


def flip_layout(layout):
    """Mirror z -> -z; vertex order is reversed to stay counter-clockwise"""
    mirrored = layout.floor_polygon * np.array([1.0, -1.0])
    return ManhattanLayout(mirrored[::-1], camera_height=layout.camera_height,
                           ceiling_height=layout.ceiling_height, yaw=-layout.yaw)


def adjust_luminance(img, gamma):
    """Gamma change on an 8-bit image; gamma < 1 brightens"""
    img = np.asarray(img)
    scaled = (img.astype(np.float64) / 255.0) ** gamma
    return np.clip(np.round(scaled * 255.0), 0, 255).astype(np.uint8)
