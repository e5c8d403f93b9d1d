"""Bit-exact codecs for the request-block and acknowledgment option values.

Request option layout (big-endian):

    byte 0      c_c
    bytes 1-2   no_t
    bytes 3-4   no_e
    byte 5      flags: bit7 = m, bit6 = kind (1 = explicit RLNC),
                bits 5-3 reserved (0), bits 2-0 = szx
    bytes 6..   one coefficient byte per window position, only for
                explicit-RLNC combinations

Acknowledgment option layout:

    byte 0      c_s
    bytes 1-2   sn
    byte 3      u        (htp = sn + u)
    byte 4      rdt_s

XOR-coded combinations carry no coefficient bytes at all: the coding vector
is implicitly all-ones over the contiguous window [no_t, no_e].
"""

import enum
from dataclasses import dataclass, field


class WireError(ValueError):
    """Malformed option value or invariant violation."""


class CodingKind(enum.Enum):
    IMPLICIT_XOR = "xor"
    EXPLICIT_RLNC = "rlnc"


@dataclass(frozen=True)
class RequestOption:
    c_c: int
    no_t: int
    no_e: int
    m: int
    szx: int
    kind: CodingKind
    coeffs: tuple = field(default=())

    def __post_init__(self):
        if not 0 <= self.c_c <= 255:
            raise WireError("c_c out of range: %r" % (self.c_c,))
        if not 1 <= self.no_t <= 0xFFFF or not 1 <= self.no_e <= 0xFFFF:
            raise WireError("block index out of range")
        if self.no_t > self.no_e:
            raise WireError("no_t > no_e (%d > %d)" % (self.no_t, self.no_e))
        if self.m not in (0, 1):
            raise WireError("m must be 0 or 1")
        if not 0 <= self.szx <= 6:
            raise WireError("szx out of range: %r" % (self.szx,))
        if self.kind is CodingKind.IMPLICIT_XOR:
            if self.coeffs:
                raise WireError("implicit-XOR option must not carry coefficients")
        else:
            span = self.no_e - self.no_t + 1
            if len(self.coeffs) != span:
                raise WireError(
                    "expected %d coefficients, got %d" % (span, len(self.coeffs))
                )
            if any(not 0 <= c <= 255 for c in self.coeffs):
                raise WireError("coefficient out of range")
            if self.coeffs[0] == 0 or self.coeffs[-1] == 0:
                raise WireError("first and last coefficients must be nonzero")

    @property
    def span(self) -> int:
        return self.no_e - self.no_t + 1


@dataclass(frozen=True)
class AckOption:
    c_s: int
    sn: int
    u: int
    rdt_s: int

    def __post_init__(self):
        if not 0 <= self.c_s <= 255:
            raise WireError("c_s out of range")
        if not 0 <= self.sn <= 0xFFFF:
            raise WireError("sn out of range")
        if not 0 <= self.u <= 255:
            raise WireError("u out of range")
        if not 0 <= self.rdt_s <= 255:
            raise WireError("rdt_s out of range")
        if self.rdt_s > self.sn + self.u:
            raise WireError("rdt_s exceeds known blocks (rdt_s > sn + u)")

    @property
    def htp(self) -> int:
        return self.sn + self.u


_FLAG_M = 0x80
_FLAG_KIND = 0x40
_RESERVED = 0x38
_SZX_MASK = 0x07


def encode_request(opt: RequestOption) -> bytes:
    flags = (opt.m << 7) | (opt.szx & _SZX_MASK)
    if opt.kind is CodingKind.EXPLICIT_RLNC:
        flags |= _FLAG_KIND
    out = bytes([opt.c_c]) + opt.no_t.to_bytes(2, "big") + opt.no_e.to_bytes(2, "big")
    out += bytes([flags])
    if opt.kind is CodingKind.EXPLICIT_RLNC:
        out += bytes(opt.coeffs)
    return out


def decode_request(data: bytes) -> RequestOption:
    if len(data) < 6:
        raise WireError("request option truncated: %d bytes" % len(data))
    c_c = data[0]
    no_t = int.from_bytes(data[1:3], "big")
    no_e = int.from_bytes(data[3:5], "big")
    flags = data[5]
    if flags & _RESERVED:
        raise WireError("reserved flag bits set: 0x%02x" % flags)
    m = (flags & _FLAG_M) >> 7
    szx = flags & _SZX_MASK
    if no_t > no_e:
        raise WireError("no_t > no_e (%d > %d)" % (no_t, no_e))
    if flags & _FLAG_KIND:
        span = no_e - no_t + 1
        if len(data) != 6 + span:
            raise WireError(
                "expected %d coefficient bytes, got %d" % (span, len(data) - 6)
            )
        return RequestOption(c_c, no_t, no_e, m, szx,
                             CodingKind.EXPLICIT_RLNC, tuple(data[6:]))
    if len(data) != 6:
        raise WireError("trailing bytes on implicit-XOR option")
    return RequestOption(c_c, no_t, no_e, m, szx, CodingKind.IMPLICIT_XOR)


def encode_ack(opt: AckOption) -> bytes:
    return bytes([opt.c_s]) + opt.sn.to_bytes(2, "big") + bytes([opt.u, opt.rdt_s])


def decode_ack(data: bytes) -> AckOption:
    if len(data) != 5:
        raise WireError("ack option must be 5 bytes, got %d" % len(data))
    return AckOption(data[0], int.from_bytes(data[1:3], "big"), data[3], data[4])
