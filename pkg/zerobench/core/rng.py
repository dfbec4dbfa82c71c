"""Counter-based random streams keyed by integer tuples.

Every random draw in zerobench goes through `stream`, so a realization depends only on its key
and never on scheduling order.
"""

import numpy as np

SEED_MASK = (1 << 64) - 1


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return an independent Philox generator for ``(seed, *key)``.

    Args:
        seed: Base 64-bit seed.
        key: Stream coordinates (realization index, cell indices, ...).

    Returns:
        A numpy Generator backed by the counter-based Philox bit generator.
    """
    sequence = np.random.SeedSequence(entropy=seed & SEED_MASK, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(seed: int, *key: int) -> int:
    """Hash ``(seed, *key)`` into a fresh 64-bit seed."""
    sequence = np.random.SeedSequence(entropy=seed & SEED_MASK, spawn_key=tuple(key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
