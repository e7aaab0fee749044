"""
Replication streams.

Replications are grouped into fixed-size blocks; block ``k`` draws from its
own generator keyed by ``(seed, k)``. Which worker runs a block, and in
what order, never changes the numbers it sees.
"""
import numpy as np

from bequiv.exceptions import DomainError

DEFAULT_BLOCK_SIZE = 4096
_SEED_BOUND = 2 ** 64


def check_seed(seed):
    if int(seed) != seed or not (0 <= seed < _SEED_BOUND):
        raise DomainError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def block_generator(seed, block):
    """Independent PCG64 generator for replication block ``block``."""
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=(int(block),))
    return np.random.Generator(np.random.PCG64(sequence))


def blocks(replications, block_size=DEFAULT_BLOCK_SIZE):
    """
    Split ``replications`` into (block_index, count) pairs.

    Every block holds ``block_size`` replications except possibly the last.
    """
    if int(replications) != replications or replications < 1:
        raise DomainError(f"replications must be a positive integer, got {replications!r}")
    if int(block_size) != block_size or block_size < 1:
        raise DomainError(f"block size must be a positive integer, got {block_size!r}")
    full, rest = divmod(int(replications), int(block_size))
    plan = [(index, int(block_size)) for index in range(full)]
    if rest:
        plan.append((full, rest))
    return plan
