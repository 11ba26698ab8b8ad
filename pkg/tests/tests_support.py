"""Shared helpers for the test modules."""


def random_admissible_v(vt, rng):
    """A random integer pole-order vector with the forced block sums."""
    out = [0] * vt.n
    for blk in vt.blocks:
        idx = sorted(blk)
        entries = [rng.randrange(-3, 4) for _ in idx[:-1]]
        entries.append(len(blk) - 1 - sum(entries))
        for i, val in zip(idx, entries):
            out[i] = val
    return tuple(out)
