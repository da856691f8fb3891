"""Assignment of the 28-item alphabet (a-z, SPACE, CLEAR) to pie slices.

Items run clockwise from slice 0 in alphabetical order with the two
specials last, so SPACE and CLEAR always land in the final slice.  Slices
are filled front-to-back with ``ceil(28 / num_slices)`` items each; when
that would starve the final slice below its two specials, trailing
non-final slices give back one item apiece.  For six slices this yields
the canonical arrangement [ABCDE][FGHIJ][KLMNO][PQRST][UVWXY][Z SPACE CLEAR].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union


class LayoutError(ValueError):
    """Raised for unsupported slice counts or unknown items."""


@dataclass(frozen=True)
class AppendChar:
    char: str


@dataclass(frozen=True)
class AppendSpace:
    pass


@dataclass(frozen=True)
class ClearLast:
    pass


Action = Union[AppendChar, AppendSpace, ClearLast]


@dataclass(frozen=True)
class Item:
    """One selectable entry: display label, edit action, shade position.

    ``shade_rank`` is the item's clockwise position within its slice and
    drives the darkness gradient of the character ring.
    """

    label: str
    action: Action
    shade_rank: int


@dataclass(frozen=True)
class Layout:
    slices: tuple[tuple[Item, ...], ...]
    num_slices: int

    def n_items(self, slice_index: int) -> int:
        return len(self.slices[slice_index])

    def item(self, slice_index: int, item_index: int) -> Item:
        return self.slices[slice_index][item_index]

    def iter_items(self) -> Iterator[tuple[int, int, Item]]:
        for s, items in enumerate(self.slices):
            for i, it in enumerate(items):
                yield s, i, it


ALPHABET = "abcdefghijklmnopqrstuvwxyz"

MIN_SLICES = 2
MAX_SLICES = 14  # 28 items, at least 2 per slice


def _all_items() -> list[Item]:
    items = [Item(c.upper(), AppendChar(c), 0) for c in ALPHABET]
    items.append(Item("SPACE", AppendSpace(), 0))
    items.append(Item("CLEAR", ClearLast(), 0))
    return items


def _slice_sizes(num_slices: int) -> list[int]:
    total = 28
    c = math.ceil(total / num_slices)
    lead = [c] * (num_slices - 1)
    # the final slice must keep at least the two specials
    excess = sum(lead) - (total - 2)
    i = num_slices - 2
    while excess > 0 and i >= 0:
        lead[i] -= 1
        excess -= 1
        i -= 1
    return lead + [total - sum(lead)]


def build_layout(num_slices: int) -> Layout:
    """Distribute all 28 items into ``num_slices`` contiguous slices."""
    if not MIN_SLICES <= num_slices <= MAX_SLICES:
        raise LayoutError(
            f"num_slices must be in [{MIN_SLICES}, {MAX_SLICES}], got {num_slices}"
        )
    flat = _all_items()
    slices = []
    pos = 0
    for size in _slice_sizes(num_slices):
        chunk = tuple(
            Item(it.label, it.action, rank)
            for rank, it in enumerate(flat[pos : pos + size])
        )
        slices.append(chunk)
        pos += size
    return Layout(slices=tuple(slices), num_slices=num_slices)


def locate(layout: Layout, key: Union[str, Action]) -> tuple[int, int]:
    """Position of an item as (slice_index, item_index).

    ``key`` may be a single character ('a'-'z' or ' '), an Action, or one
    of the labels 'SPACE' / 'CLEAR'.
    """
    action = _key_to_action(key)
    for s, i, item in layout.iter_items():
        if item.action == action:
            return s, i
    raise LayoutError(f"item {key!r} not present in layout")


def _key_to_action(key: Union[str, Action]) -> Action:
    if isinstance(key, (AppendChar, AppendSpace, ClearLast)):
        return key
    if key == " ":
        return AppendSpace()
    if key == "SPACE":
        return AppendSpace()
    if key == "CLEAR":
        return ClearLast()
    if isinstance(key, str) and len(key) == 1 and key.lower() in ALPHABET:
        return AppendChar(key.lower())
    raise LayoutError(f"unknown item {key!r}")
