"""Closed-form retransmission counts for both transfer variants.

With N blocks and round-failure probability p, plain stop-and-wait expects
N / (1 - p) transmissions, so N / (1 - p) - N additional blocks.  With coding,
only forward losses (rate alpha * p) cost a transmission, giving
N / (1 - alpha * p) - N.
"""


def blocks_count(resource_bytes: int, block_bytes: int) -> int:
    """N = ceil(R / B)."""
    if resource_bytes < 1 or block_bytes < 1:
        raise ValueError("resource and block sizes must be positive")
    return -(-resource_bytes // block_bytes)


def additional_wonc(n: int, p: float) -> float:
    """Expected additional blocks for the uncoded transfer."""
    if not 0.0 <= p < 1.0:
        raise ValueError("p must be in [0, 1), got %r" % (p,))
    return n / (1.0 - p) - n


def additional_wnc(n: int, p: float, alpha: float) -> float:
    """Expected additional blocks for the coded transfer."""
    if not 0.0 <= alpha * p < 1.0:
        raise ValueError("alpha * p must be in [0, 1)")
    return n / (1.0 - alpha * p) - n
