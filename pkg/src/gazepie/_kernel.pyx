# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled region-classification kernel.

Hot path of the interaction engine: called once per gaze sample.  The math
must stay operation-for-operation identical to ``_kernel_py.py`` so both
backends classify every point identically, bit for bit.
"""

from libc.math cimport atan2, fmod, sqrt


cpdef tuple classify(
    double x,
    double y,
    double cx,
    double cy,
    double pie_r,
    double char_w,
    double safe_w,
    double sel_w,
    int num_slices,
    double expand_deg,
    int focused,
    int n_items_focused,
):
    """See gazepie._kernel_py.classify; this is the compiled twin."""
    cdef double dx = x - cx
    cdef double dy = y - cy
    cdef double r = sqrt(dx * dx + dy * dy)
    cdef double theta
    cdef double slice_span, focus_span, start, rel, cell_span
    cdef int idx
    cdef bint in_span = False

    if dx == 0.0 and dy == 0.0:
        theta = 0.0
    else:
        theta = atan2(dx, -dy) * (180.0 / 3.141592653589793)
        theta = fmod(theta, 360.0)
        if theta < 0.0:
            theta += 360.0
        if theta >= 360.0:  # adding 360 to a tiny negative rounds back up
            theta = 0.0

    slice_span = 360.0 / num_slices
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
            return (0, focused, r, theta)
        idx = <int>(theta / slice_span)
        if idx >= num_slices:
            idx = num_slices - 1
        return (0, idx, r, theta)

    if in_span:
        if r <= pie_r + char_w:
            cell_span = focus_span / n_items_focused
            idx = <int>(rel / cell_span)
            if idx >= n_items_focused:
                idx = n_items_focused - 1
            return (1, idx, r, theta)
        if r <= pie_r + char_w + safe_w:
            return (2, -1, r, theta)
        if r <= pie_r + char_w + safe_w + sel_w:
            return (3, -1, r, theta)
    return (4, -1, r, theta)
