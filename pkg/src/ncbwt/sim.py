"""Lockstep round driver, Monte-Carlo sweeps, and CSV emission.

A round is: the client's next queued frame crosses the forward channel, the
server acks, the ack crosses the reverse channel.  A round that ends without
an ack while nothing else is queued counts as a timeout.  Repair bursts are
queued and serialized over consecutive rounds.

The sweep's Monte-Carlo trials transfer a synthetic resource with the real
block count N = ceil(R / B) but small (16-byte) payloads: transmission counts
do not depend on payload width, and the per-trial byte-equality check stays
cheap.
"""

from collections import deque
from dataclasses import dataclass
import random
import statistics

from .channel import ChannelParams, StochasticChannel
from .coding import CodedBlock, split_resource, szx_for
from .model import additional_wnc, additional_wonc, blocks_count
from .protocol import ActionKind, BaselineClient, BaselineServer, NcClient, \
    NcServer
from .wire import AckOption, CodingKind

PROTO_BWT = "BWT"
PROTO_NC = "NC_BWT"

SIM_PAYLOAD_BYTES = 16

CSV_HEADER = ("protocol,block_bytes,p,alpha,n_blocks,analytic_additional,"
              "sim_mean_additional,sim_std_additional,trials,seed")


class SimError(RuntimeError):
    pass


@dataclass
class SimResult:
    tx_total: int
    additional: int
    rounds: int
    delivered: bool
    seed: str = ""
    intro_violations: int = 0


@dataclass(frozen=True)
class ExperimentConfig:
    resource_bytes: int = 512_000
    block_bytes: tuple = (256, 512, 1024)
    p_values: tuple = ()
    alphas: tuple = (0.3, 0.7, 1.0)
    trials: int = 0
    seed: int = 0
    protocol: str = "both"

    def __post_init__(self):
        if not self.block_bytes or not self.p_values or not self.alphas:
            raise ValueError("block size, p, and alpha grids must be nonempty")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if self.protocol not in ("bwt", "nc", "both"):
            raise ValueError("protocol must be bwt, nc, or both")

    @property
    def protocols(self):
        if self.protocol == "bwt":
            return (PROTO_BWT,)
        if self.protocol == "nc":
            return (PROTO_NC,)
        return (PROTO_BWT, PROTO_NC)


def default_p_grid(lo=0.0, hi=0.9, step=0.05):
    values = []
    p = lo
    i = 0
    while p <= hi + 1e-12:
        values.append(round(p, 10))
        i += 1
        p = lo + i * step
    return tuple(values)


def _normalize_protocol(protocol: str) -> str:
    key = protocol.lower()
    if key in ("bwt", "baseline"):
        return PROTO_BWT
    if key in ("nc", "nc_bwt"):
        return PROTO_NC
    raise ValueError("unknown protocol: %r" % (protocol,))


def describe_frame(frame) -> str:
    if isinstance(frame, CodedBlock):
        opt = frame.option
        if opt.kind is CodingKind.EXPLICIT_RLNC:
            coeffs = ",".join("%02x" % c for c in opt.coeffs)
            return "RLNC[%d..%d] coeffs=%s (c_c=%d, m=%d)" % (
                opt.no_t, opt.no_e, coeffs, opt.c_c, opt.m)
        if opt.no_t == opt.no_e:
            return "native block %d (c_c=%d, m=%d)" % (opt.no_t, opt.c_c, opt.m)
        return "XOR[%d..%d] (c_c=%d, m=%d)" % (opt.no_t, opt.no_e, opt.c_c, opt.m)
    return "block %d" % frame.index


def _describe_ack(ack) -> str:
    if isinstance(ack, AckOption):
        return "report (sn,htp,rdt_s)=(%d,%d,%d) c_s=%d" % (
            ack.sn, ack.htp, ack.rdt_s, ack.c_s)
    return "acks block %d" % ack


def run_transfer(protocol, resource, block_bytes, channel, rng=None,
                 transcript=None, seed_label="") -> SimResult:
    """Drive one complete transfer; returns its counters.

    `rng` feeds the client's random coding coefficients (coded protocol only).
    `transcript`, when given, collects human-readable per-round log lines.
    """
    proto = _normalize_protocol(protocol)
    blocks = split_resource(resource, block_bytes)
    n = len(blocks)
    if proto == PROTO_NC:
        client = NcClient(blocks, szx_for(block_bytes), rng or random.Random(0))
        server = NcServer(n, len(resource))
    else:
        client = BaselineClient(blocks)
        server = BaselineServer(n, len(resource))

    def log(msg):
        if transcript is not None:
            transcript.append(msg)

    pending = deque()
    violations = 0
    delivered_combos = set()

    def handle(action):
        if action.kind in (ActionKind.SEND, ActionKind.SEND_BURST):
            pending.extend(action.frames)
            for f in action.frames:
                log("  client queues %s" % describe_frame(f))
        elif action.kind is ActionKind.WAIT:
            log("  client: no transmission")
        else:
            log("  client: transfer complete")

    handle(client.start())
    rounds = 0
    max_rounds = 1000 * n + 10_000
    while not client.done:
        rounds += 1
        if rounds > max_rounds:
            raise SimError("transfer did not terminate within %d rounds" % max_rounds)
        acked = False
        if pending:
            frame = pending.popleft()
            log("round %d: client sends %s" % (rounds, describe_frame(frame)))
            if channel.forward_delivered():
                if proto == PROTO_NC:
                    rank_before = server.decoder.rank
                ack = server.on_block(frame)
                log("  server %s" % _describe_ack(ack))
                if proto == PROTO_NC:
                    opt = frame.option
                    combo = (opt.kind, opt.no_t, opt.no_e, opt.coeffs)
                    innovative = server.decoder.rank > rank_before
                    if opt.c_c == 0 and not innovative \
                            and combo not in delivered_combos:
                        violations += 1
                    delivered_combos.add(combo)
                if channel.reverse_delivered():
                    log("  ack delivered")
                    handle(client.on_ack(ack))
                    acked = True
                else:
                    log("  ack lost")
            else:
                log("  block lost")
        if not acked and not pending and not client.done:
            log("round %d: timeout" % rounds)
            handle(client.on_timeout())

    if pending:
        raise SimError("client finished with frames still queued")
    got = server.resource()
    if got != resource:
        raise SimError("delivered resource differs from the original")
    return SimResult(
        tx_total=client.tx_count,
        additional=client.additional_count,
        rounds=rounds,
        delivered=server.delivered,
        seed=seed_label,
        intro_violations=violations,
    )


def run_random_transfer(protocol, n_blocks, channel, rng,
                        payload_bytes=SIM_PAYLOAD_BYTES,
                        transcript=None, seed_label="") -> SimResult:
    """Transfer a random resource of `n_blocks` blocks over `channel`."""
    length = (n_blocks - 1) * payload_bytes + 1 + rng.randrange(payload_bytes)
    resource = rng.randbytes(length)
    return run_transfer(protocol, resource, payload_bytes, channel, rng,
                        transcript, seed_label)


def _trial_seed(config, proto, block_bytes, p, alpha, trial) -> str:
    return "%s|%s|%d|%g|%g|%d" % (config.seed, proto, block_bytes, p, alpha, trial)


def sweep(config: ExperimentConfig):
    """One row per (protocol, B, p, alpha); rows ordered by that key."""
    rows = []
    for proto in config.protocols:
        for block_bytes in sorted(config.block_bytes):
            n = blocks_count(config.resource_bytes, block_bytes)
            for p in sorted(config.p_values):
                for alpha in sorted(config.alphas):
                    if proto == PROTO_BWT:
                        analytic = additional_wonc(n, p)
                    else:
                        analytic = additional_wnc(n, p, alpha)
                    row = {
                        "protocol": proto,
                        "block_bytes": block_bytes,
                        "p": p,
                        "alpha": alpha,
                        "n_blocks": n,
                        "analytic_additional": analytic,
                        "sim_mean_additional": None,
                        "sim_std_additional": None,
                        "trials": config.trials,
                        "seed": config.seed,
                    }
                    if config.trials > 0:
                        samples = []
                        for trial in range(config.trials):
                            label = _trial_seed(config, proto, block_bytes,
                                                p, alpha, trial)
                            rng = random.Random(label)
                            channel = StochasticChannel(
                                ChannelParams(p, alpha), rng)
                            result = run_random_transfer(
                                proto, n, channel, rng, seed_label=label)
                            samples.append(result.additional)
                        row["sim_mean_additional"] = statistics.fmean(samples)
                        row["sim_std_additional"] = (
                            statistics.stdev(samples) if len(samples) > 1 else 0.0)
                    rows.append(row)
    return rows


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        mean = "" if r["sim_mean_additional"] is None \
            else "%.6f" % r["sim_mean_additional"]
        std = "" if r["sim_std_additional"] is None \
            else "%.6f" % r["sim_std_additional"]
        lines.append("%s,%d,%g,%g,%d,%.6f,%s,%s,%d,%s" % (
            r["protocol"], r["block_bytes"], r["p"], r["alpha"], r["n_blocks"],
            r["analytic_additional"], mean, std, r["trials"], r["seed"]))
    return "\n".join(lines) + "\n"
