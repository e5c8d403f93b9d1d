"""Client and server state machines for coded block-wise transfer, plus the
uncoded stop-and-wait baseline.

The machines are transition-style: the driver (see `sim`) feeds acks and
timeouts and receives actions back.  A timeout is abstract -- one driver round
with no ack.  Repair bursts may carry several blocks; the driver serializes
them over consecutive rounds.

Coded-transfer transmission policy:

* introduction: send native block w, and on every timeout grow the XOR window
  by one block, so each coded block presents exactly one new block and stays
  linearly independent of everything sent before;
* once an ack reports rdt_s missing blocks, switch to repair: a burst of
  rdt_s random-linear combinations over the unseen window [sn+1, htp], each
  tagged with a fresh c_c so its ack can be told apart;
* the degenerate repair (rdt_s = 1, u = 1) sends the single unseen block
  natively to avoid pointless coding work.
"""

import enum
from dataclasses import dataclass

from .coding import Block, CodedBlock, DecoderState, decoder_insert, make_rlnc, \
    make_xor, reassemble, seen_report, try_decode
from .wire import AckOption


class ProtocolError(RuntimeError):
    pass


class Phase(enum.Enum):
    INTRODUCE = "introduce"
    REPAIR = "repair"
    DONE = "done"


class ActionKind(enum.Enum):
    SEND = "send"
    SEND_BURST = "send_burst"
    WAIT = "wait"
    FINISH = "finish"


@dataclass(frozen=True)
class ClientAction:
    kind: ActionKind
    frames: tuple = ()


WAIT = ClientAction(ActionKind.WAIT)
FINISH = ClientAction(ActionKind.FINISH)


def _send(frame):
    return ClientAction(ActionKind.SEND, (frame,))


def _burst(frames):
    if len(frames) == 1:
        return ClientAction(ActionKind.SEND, tuple(frames))
    return ClientAction(ActionKind.SEND_BURST, tuple(frames))


class NcClient:
    """Sender side of the coded transfer."""

    def __init__(self, blocks, szx: int, rng):
        if not blocks:
            raise ValueError("no blocks to send")
        self.blocks = list(blocks)
        self.n = len(self.blocks)
        self.szx = szx
        self.rng = rng
        self.phase = Phase.INTRODUCE
        self.w_lo = 1
        self.w_hi = 1
        self.tx_count = 0
        self.last_ack = None
        self.latest_no_e = 0
        self.max_no_e = 0
        self.repair_window = None
        self.outstanding = {}    # wire c_c -> monotone repair sequence number
        self._repair_seq = 0

    @property
    def done(self) -> bool:
        return self.phase is Phase.DONE

    @property
    def additional_count(self) -> int:
        return self.tx_count - self.n

    # frame constructors -----------------------------------------------------

    def _m(self, hi: int) -> int:
        return 0 if hi == self.n else 1

    def _window(self, lo, hi):
        return self.blocks[lo - 1:hi]

    def _emit(self, frame: CodedBlock) -> CodedBlock:
        self.tx_count += 1
        self.latest_no_e = frame.option.no_e
        self.max_no_e = max(self.max_no_e, frame.option.no_e)
        return frame

    def _xor(self, lo, hi, c_c=0):
        return self._emit(make_xor(self._window(lo, hi), c_c, self._m(hi), self.szx))

    def _rlnc(self, lo, hi, c_c):
        return self._emit(
            make_rlnc(self._window(lo, hi), c_c, self._m(hi), self.szx, self.rng))

    def _fresh_cc(self) -> int:
        if len(self.outstanding) >= 255:
            raise ProtocolError("too many repairs in flight")
        while True:
            self._repair_seq += 1
            wire = (self._repair_seq - 1) % 255 + 1
            if wire not in self.outstanding:
                break
        self.outstanding[wire] = self._repair_seq
        return wire

    # transitions ------------------------------------------------------------

    def start(self) -> ClientAction:
        return _send(self._xor(1, 1))

    def on_timeout(self) -> ClientAction:
        if self.phase is Phase.DONE:
            raise ProtocolError("timeout after transfer finished")
        if self.phase is Phase.INTRODUCE:
            if self.w_hi < self.n:
                self.w_hi += 1
            # window exhausted: resend the XOR over the unseen window
            return _send(self._xor(self.w_lo, self.w_hi))
        # repair phase: reissue the burst for everything still outstanding.
        # Each reissued combination stretches its window one further block
        # into not-yet-introduced territory, so it stays innovative even when
        # the original repairs arrived and only their acks were lost.
        count = max(1, len(self.outstanding))
        self.outstanding.clear()
        lo, hi = self.repair_window
        frames = []
        for i in range(count):
            nhi = min(hi + i + 1, self.n)
            if nhi == lo:
                frames.append(self._xor(lo, nhi, self._fresh_cc()))
            else:
                frames.append(self._rlnc(lo, nhi, self._fresh_cc()))
        self.repair_window = (lo, min(hi + count, self.n))
        return _burst(frames)

    def on_ack(self, ack: AckOption) -> ClientAction:
        if self.phase is Phase.DONE:
            raise ProtocolError("ack after transfer finished")
        self.last_ack = ack
        if ack.c_s == 0:
            return self._on_normal_ack(ack)
        return self._on_repair_ack(ack)

    def _on_normal_ack(self, ack) -> ClientAction:
        if ack.htp < self.latest_no_e:
            # ack of a previous normal block: nothing to do
            return WAIT
        if ack.rdt_s == 0:
            return self._advance(ack.htp)
        return self._enter_repair(ack)

    def _on_repair_ack(self, ack) -> ClientAction:
        seq = self.outstanding.get(ack.c_s)
        if seq is None:
            return WAIT
        for wire in [w for w, s in self.outstanding.items() if s <= seq]:
            del self.outstanding[wire]
        if self.outstanding:
            # ack of a previous additional block; top up with XOR-coded
            # repairs if the server reports more losses than are in flight
            shortfall = ack.rdt_s - len(self.outstanding)
            if shortfall > 0:
                # each top-up stretches past everything already in flight so
                # it cannot duplicate a combination the server may yet receive;
                # XOR is safe only while the window can actually stretch, so
                # fall back to a random combination once it is pinned at N
                lo, hi = self.repair_window
                hi = max(hi, ack.htp)
                frames = []
                for i in range(shortfall):
                    nhi = min(hi + i + 1, self.n)
                    if nhi > self.max_no_e:
                        frames.append(self._xor(lo, nhi, self._fresh_cc()))
                    else:
                        frames.append(self._rlnc(lo, nhi, self._fresh_cc()))
                self.repair_window = (lo, min(hi + shortfall, self.n))
                return _burst(frames)
            return WAIT
        if ack.rdt_s == 0:
            return self._advance(ack.htp)
        return self._enter_repair(ack)

    def _advance(self, htp) -> ClientAction:
        if htp >= self.n:
            self.phase = Phase.DONE
            return FINISH
        self.phase = Phase.INTRODUCE
        self.w_lo = self.w_hi = htp + 1
        return _send(self._xor(self.w_lo, self.w_hi))

    def _unseen_window(self, ack):
        """Window guaranteed to cover every block the server still misses.

        The server's seen set is gap-free exactly when its rank (htp - rdt_s)
        equals sn; then the unseen blocks are (sn, htp].  Otherwise some
        unseen block sits below sn and the window must stretch back to the
        first block never confirmed by an all-repaired ack.
        """
        if ack.htp - ack.rdt_s == ack.sn:
            return ack.sn + 1, ack.htp
        return min(self.w_lo, ack.htp), ack.htp

    def _enter_repair(self, ack) -> ClientAction:
        self.phase = Phase.REPAIR
        self.repair_window = self._unseen_window(ack)
        return self._repair_burst(ack.rdt_s)

    def _repair_burst(self, count) -> ClientAction:
        lo, hi = self.repair_window
        if count == 1 and hi - lo == 0:
            # single unseen block: send it natively
            return _send(self._xor(lo, hi, self._fresh_cc()))
        return _burst([self._rlnc(lo, hi, self._fresh_cc())
                       for _ in range(count)])


class NcServer:
    """Receiver side: GJE decoder plus ack generation."""

    def __init__(self, n_total: int, original_length: int):
        self.decoder = DecoderState(n_total)
        self.original_length = original_length
        self.delivered = False

    def on_block(self, cb: CodedBlock) -> AckOption:
        decoder_insert(self.decoder, cb)
        sn, htp, rdt_s = seen_report(self.decoder)
        if self.decoder.rank == self.decoder.n_total:
            self.delivered = True
        return AckOption(c_s=cb.option.c_c, sn=sn, u=htp - sn, rdt_s=rdt_s)

    def resource(self) -> bytes:
        blocks = try_decode(self.decoder)
        if blocks is None:
            raise ProtocolError("resource not yet decodable")
        return reassemble(blocks, self.original_length)


class BaselineClient:
    """Classic stop-and-wait: resend the current block on every timeout."""

    def __init__(self, blocks):
        if not blocks:
            raise ValueError("no blocks to send")
        self.blocks = list(blocks)
        self.n = len(self.blocks)
        self.next_index = 1
        self.tx_count = 0
        self.phase = Phase.INTRODUCE

    @property
    def done(self) -> bool:
        return self.phase is Phase.DONE

    @property
    def additional_count(self) -> int:
        return self.tx_count - self.n

    def _send_current(self) -> ClientAction:
        self.tx_count += 1
        return _send(self.blocks[self.next_index - 1])

    def start(self) -> ClientAction:
        return self._send_current()

    def on_timeout(self) -> ClientAction:
        if self.phase is Phase.DONE:
            raise ProtocolError("timeout after transfer finished")
        return self._send_current()

    def on_ack(self, acked_index: int) -> ClientAction:
        if self.phase is Phase.DONE:
            raise ProtocolError("ack after transfer finished")
        if acked_index != self.next_index:
            return WAIT
        if self.next_index == self.n:
            self.phase = Phase.DONE
            return FINISH
        self.next_index += 1
        return self._send_current()


class BaselineServer:
    """Stores blocks by index and acks whatever arrives."""

    def __init__(self, n_total: int, original_length: int):
        self.n_total = n_total
        self.original_length = original_length
        self.received = {}

    @property
    def delivered(self) -> bool:
        return len(self.received) == self.n_total

    def on_block(self, block: Block) -> int:
        self.received[block.index] = block.payload
        return block.index

    def resource(self) -> bytes:
        if not self.delivered:
            raise ProtocolError("resource not yet complete")
        blocks = [Block(i, p) for i, p in self.received.items()]
        return reassemble(blocks, self.original_length)
