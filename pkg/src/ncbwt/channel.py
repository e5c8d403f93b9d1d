"""Lossy link models between client and server.

`p` is the total probability that a transmission round fails, i.e. that either
the block or its acknowledgment is lost.  `alpha` is the share of that loss on
the forward (block-carrying) direction, so a block is lost with probability
f = alpha * p, and -- given the block arrived -- its ack is lost with the
conditional probability q = ((1 - alpha) * p) / (1 - alpha * p).  Those two
together make the unconditional round-failure rate exactly p.
"""

from dataclasses import dataclass
import random


class TraceExhausted(RuntimeError):
    """A scripted trace ran out of outcomes before the transfer finished."""


@dataclass(frozen=True)
class ChannelParams:
    p: float
    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 0.9:
            raise ValueError("p must be in [0, 0.9], got %r" % (self.p,))
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must be in (0, 1], got %r" % (self.alpha,))

    @property
    def forward_loss(self) -> float:
        return self.alpha * self.p

    @property
    def reverse_loss(self) -> float:
        f = self.forward_loss
        return ((1.0 - self.alpha) * self.p) / (1.0 - f)


class StochasticChannel:
    """Independent Bernoulli losses driven by a seeded RNG."""

    def __init__(self, params: ChannelParams, rng=None, seed=0):
        self.params = params
        self.rng = rng if rng is not None else random.Random(seed)

    def forward_delivered(self) -> bool:
        return self.rng.random() >= self.params.forward_loss

    def reverse_delivered(self) -> bool:
        return self.rng.random() >= self.params.reverse_loss


class ScriptedChannel:
    """Replays an explicit outcome list, one token per transmission.

    Tokens are consumed in transmission order: every forward transmission takes
    one token, and its ack takes the next token only if the block was
    delivered.
    """

    def __init__(self, outcomes):
        self.outcomes = list(outcomes)
        self.pos = 0

    def _next(self) -> bool:
        if self.pos >= len(self.outcomes):
            raise TraceExhausted(
                "scripted trace exhausted after %d outcomes" % self.pos)
        out = self.outcomes[self.pos]
        self.pos += 1
        return out

    def forward_delivered(self) -> bool:
        return self._next()

    def reverse_delivered(self) -> bool:
        return self._next()

    @property
    def remaining(self) -> int:
        return len(self.outcomes) - self.pos


def parse_trace(text: str):
    """Parse a trace file body: D/L tokens, '#' starts a comment."""
    outcomes = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for token in line.split():
            if token == "D":
                outcomes.append(True)
            elif token == "L":
                outcomes.append(False)
            else:
                raise ValueError("bad trace token: %r" % (token,))
    return outcomes


def load_trace(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_trace(fh.read())
