"""Pure-Python closure and cut kernels.

Subsets of a carrier with up to ``n`` elements are bitmasks; Python integers
make the masks unbounded, so this backend works for any carrier size.  The
compiled twin in ``_ckernels`` is limited to 64 elements and is selected
automatically by :mod:`mvlat.kernels` when available.
"""

from __future__ import annotations

BACKEND = "python"


def close_mask(n, binary_tables, unary_tables, seed_mask):
    """Smallest superset of ``seed_mask`` closed under the given tables.

    ``binary_tables`` are flat row-major n*n index tables; ``unary_tables``
    are length-n index tables.
    """
    mask = seed_mask
    worklist = [i for i in range(n) if (mask >> i) & 1]
    while worklist:
        a = worklist.pop()
        for table in unary_tables:
            r = table[a]
            bit = 1 << r
            if not mask & bit:
                mask |= bit
                worklist.append(r)
        for table in binary_tables:
            row = a * n
            m = mask
            b = 0
            while m:
                if m & 1:
                    for r in (table[row + b], table[b * n + a]):
                        bit = 1 << r
                        if not mask & bit:
                            mask |= bit
                            worklist.append(r)
                m >>= 1
                b += 1
    return mask


def all_cuts_exhaustive(n, up_masks, down_masks):
    """Masks X (over the full 2^n subsets) with X == lower(upper(X)).

    ``up_masks[i]`` / ``down_masks[i]`` are the principal up/down sets of
    element i in the carrier's order.
    """
    full = (1 << n) - 1
    cuts = []
    for x in range(1 << n):
        ub = full
        m = x
        i = 0
        while m:
            if m & 1:
                ub &= up_masks[i]
            m >>= 1
            i += 1
        lub = full
        m = ub
        i = 0
        while m:
            if m & 1:
                lub &= down_masks[i]
            m >>= 1
            i += 1
        if lub == x:
            cuts.append(x)
    return cuts
