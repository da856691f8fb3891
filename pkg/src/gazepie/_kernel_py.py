"""Pure-Python region-classification kernel.

Fallback for the compiled kernel in ``_kernel.pyx``.  The two files must
perform the same floating-point operations in the same order so that both
backends classify every point identically, bit for bit.  Keep any change
mirrored in the .pyx file.
"""

from math import atan2, fmod, sqrt

# region kind codes shared with the compiled kernel
PIE_SLICE = 0
CHAR_CELL = 1
SAFE = 2
SELECTION = 3
BACKGROUND = 4


def classify(
    x,
    y,
    cx,
    cy,
    pie_r,
    char_w,
    safe_w,
    sel_w,
    num_slices,
    expand_deg,
    focused,
    n_items_focused,
):
    """Classify one gaze point.

    ``focused`` is -1 when no slice has focus.  Returns
    ``(kind, index, r_px, theta_deg)`` where ``index`` is the slice index
    for PIE_SLICE, the item index for CHAR_CELL and -1 otherwise.  Angles
    are degrees in [0, 360), clockwise from 12 o'clock; every radial
    boundary belongs to the inner region (``r <= bound``).
    """
    dx = x - cx
    dy = y - cy
    r = sqrt(dx * dx + dy * dy)
    if dx == 0.0 and dy == 0.0:
        theta = 0.0
    else:
        # screen y grows downward; clockwise-from-12-o'clock is atan2(dx, -dy)
        theta = atan2(dx, -dy) * (180.0 / 3.141592653589793)
        theta = fmod(theta, 360.0)
        if theta < 0.0:
            theta += 360.0
        if theta >= 360.0:  # adding 360 to a tiny negative rounds back up
            theta = 0.0

    slice_span = 360.0 / num_slices
    in_span = False
    rel = 0.0
    focus_span = 0.0
    if focused >= 0:
        focus_span = slice_span + 2.0 * expand_deg
        start = (focused + 0.5) * slice_span - 0.5 * focus_span
        rel = fmod(theta - start, 360.0)
        if rel < 0.0:
            rel += 360.0
        if rel >= 360.0:
            rel = 0.0
        in_span = rel < focus_span

    if r <= pie_r:
        if in_span:
            return (PIE_SLICE, focused, r, theta)
        idx = int(theta / slice_span)
        if idx >= num_slices:
            idx = num_slices - 1
        return (PIE_SLICE, idx, r, theta)

    if in_span:
        if r <= pie_r + char_w:
            cell_span = focus_span / n_items_focused
            idx = int(rel / cell_span)
            if idx >= n_items_focused:
                idx = n_items_focused - 1
            return (CHAR_CELL, idx, r, theta)
        if r <= pie_r + char_w + safe_w:
            return (SAFE, -1, r, theta)
        if r <= pie_r + char_w + safe_w + sel_w:
            return (SELECTION, -1, r, theta)
    return (BACKGROUND, -1, r, theta)
