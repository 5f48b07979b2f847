"""Hot-loop kernels with backend selection.

Subset closure under operation tables and exhaustive cut enumeration sit in
the inner loops of subreduct enumeration and of the cut checks.  A compiled
extension handles carriers of up to 64 elements; the pure-Python fallback
(arbitrary carrier size) is used when the extension is absent or the carrier
is too large.  Set ``MVLAT_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("MVLAT_PURE") == "1":
    _compiled = None
else:
    try:
        from . import _ckernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

COMPILED_LIMIT = 64


def backend(n: int = 0) -> str:
    """Name of the backend that will serve a carrier of size ``n``."""
    if _compiled is not None and n <= COMPILED_LIMIT:
        return _compiled.BACKEND
    return _pykernels.BACKEND


def have_compiled() -> bool:
    return _compiled is not None


def close_mask(n, binary_tables, unary_tables, seed_mask):
    if _compiled is not None and n <= COMPILED_LIMIT:
        return _compiled.close_mask(n, binary_tables, unary_tables, seed_mask)
    return _pykernels.close_mask(n, binary_tables, unary_tables, seed_mask)


def all_cuts_exhaustive(n, up_masks, down_masks):
    if _compiled is not None and n <= COMPILED_LIMIT:
        return _compiled.all_cuts_exhaustive(n, up_masks, down_masks)
    return _pykernels.all_cuts_exhaustive(n, up_masks, down_masks)


def closed_supersets(n, binary_tables, unary_tables, base_mask, universe_mask,
                     admit=None, limit=None):
    """All closed subsets between ``base_mask`` and ``universe_mask``.

    ``base_mask`` and ``universe_mask`` must both be closed under the tables.
    When ``admit`` is given, only supersets with ``admit(mask)`` true are
    expanded or reported; the pruning is sound whenever ``admit`` is antitone
    (false stays false as the set grows).  Results come back sorted by
    (popcount, mask).
    """
    seen = {base_mask}
    frontier = [base_mask]
    while frontier:
        current = frontier.pop()
        rest = universe_mask & ~current
        i = 0
        m = rest
        while m:
            if m & 1:
                grown = close_mask(n, binary_tables, unary_tables, current | (1 << i))
                if grown & ~universe_mask:
                    raise ValueError("universe is not closed under the tables")
                if grown not in seen:
                    if admit is None or admit(grown):
                        seen.add(grown)
                        frontier.append(grown)
                        if limit is not None and len(seen) > limit:
                            raise OverflowError("closed-superset enumeration exceeded limit")
            m >>= 1
            i += 1
    return sorted(seen, key=lambda mask: (bin(mask).count("1"), mask))
