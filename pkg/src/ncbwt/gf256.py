"""GF(2^8) arithmetic with log/antilog tables, plus coefficient-row operations.

The field is GF(2^8) with reducing polynomial x^8 + x^4 + x^3 + x^2 + 1
(0x11D).  Addition is bitwise XOR.  Multiplication and inversion go through
precomputed exp/log tables; tables are built once at import time, after which
every function here is pure and safe to share across threads.
"""

from dataclasses import dataclass

REDUCING_POLY = 0x11D

_EXP = [0] * 510
_LOG = [0] * 256


def _build_tables():
    x = 1
    for i in range(255):
        _EXP[i] = x
        _LOG[x] = i
        x <<= 1
        if x & 0x100:
            x ^= REDUCING_POLY
    # duplicate so gf_mul can skip the mod-255 on the exponent sum
    for i in range(255, 510):
        _EXP[i] = _EXP[i - 255]


_build_tables()


def gf_add(a: int, b: int) -> int:
    """Field addition (and subtraction): bitwise XOR."""
    return a ^ b


def gf_mul(a: int, b: int) -> int:
    """Field multiplication via log/antilog tables."""
    if a == 0 or b == 0:
        return 0
    return _EXP[_LOG[a] + _LOG[b]]


def gf_inv(a: int) -> int:
    """Multiplicative inverse; raises ZeroDivisionError for a = 0."""
    if a == 0:
        raise ZeroDivisionError("0 has no multiplicative inverse in GF(256)")
    return _EXP[255 - _LOG[a]]


def scale_bytes(scale: int, data: bytes) -> bytes:
    """Multiply every byte of `data` by `scale` in the field."""
    if scale == 0:
        return bytes(len(data))
    if scale == 1:
        return bytes(data)
    lg = _LOG[scale]
    return bytes(_EXP[lg + _LOG[b]] if b else 0 for b in data)


def xor_bytes(a: bytes, b: bytes) -> bytes:
    """Elementwise XOR of two equal-length byte strings."""
    if len(a) != len(b):
        raise ValueError("length mismatch: %d != %d" % (len(a), len(b)))
    n = len(a)
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(n, "big")


@dataclass(frozen=True)
class CoeffRow:
    """One row of a coding system: a coefficient per block, plus the payload."""

    coefficients: tuple
    payload: bytes


def row_axpy(target: CoeffRow, scale: int, source: CoeffRow) -> CoeffRow:
    """Return target + scale * source, elementwise over coefficients and payload."""
    if len(target.coefficients) != len(source.coefficients):
        raise ValueError("coefficient length mismatch")
    if len(target.payload) != len(source.payload):
        raise ValueError("payload length mismatch")
    coeffs = tuple(
        t ^ gf_mul(scale, s)
        for t, s in zip(target.coefficients, source.coefficients)
    )
    payload = xor_bytes(target.payload, scale_bytes(scale, source.payload))
    return CoeffRow(coeffs, payload)
