"""Coded-block construction and the server-side Gauss-Jordan decoder.

The decoder keeps the received combinations in reduced row echelon form over
GF(2^8).  A block index is "seen" once the decoder holds a pivot there; the
triple (sn, htp, rdt_s) reported to the client is derived directly from the
pivot set, the tracked highest window bound, and the rank.

Rows are stored sparsely (index -> coefficient) because the protocol's coding
windows are short; `DecoderState.rows()` exports dense `CoeffRow`s for
inspection and validation.
"""

from dataclasses import dataclass

from .gf256 import gf_inv, gf_mul, scale_bytes, xor_bytes, CoeffRow
from .wire import CodingKind, RequestOption, WireError

BLOCK_SIZES = (16, 32, 64, 128, 256, 512, 1024)


def szx_for(block_bytes: int) -> int:
    """CoAP-style size exponent: block size = 2 ** (szx + 4)."""
    if block_bytes not in BLOCK_SIZES:
        raise ValueError("unsupported block size: %r" % (block_bytes,))
    return block_bytes.bit_length() - 5


def block_bytes_for(szx: int) -> int:
    if not 0 <= szx <= 6:
        raise ValueError("szx out of range: %r" % (szx,))
    return 1 << (szx + 4)


@dataclass(frozen=True)
class Block:
    index: int
    payload: bytes


@dataclass(frozen=True)
class CodedBlock:
    option: RequestOption
    payload: bytes


@dataclass(frozen=True)
class InsertOutcome:
    innovative: bool
    new_seen: frozenset


def split_resource(resource: bytes, block_size: int) -> list:
    """Split into ceil(len/B) blocks of exactly B bytes; the last is zero-padded.

    The caller keeps the original length for reassembly.
    """
    if not resource:
        raise ValueError("resource is empty")
    if block_size not in BLOCK_SIZES:
        raise ValueError("unsupported block size: %r" % (block_size,))
    blocks = []
    n = -(-len(resource) // block_size)
    for i in range(n):
        chunk = resource[i * block_size:(i + 1) * block_size]
        if len(chunk) < block_size:
            chunk = chunk + bytes(block_size - len(chunk))
        blocks.append(Block(i + 1, chunk))
    return blocks


def reassemble(blocks, original_length: int) -> bytes:
    """Concatenate decoded blocks and strip the final block's padding."""
    data = b"".join(b.payload for b in sorted(blocks, key=lambda b: b.index))
    return data[:original_length]


def _check_window(blocks):
    if not blocks:
        raise ValueError("empty coding window")
    for prev, cur in zip(blocks, blocks[1:]):
        if cur.index != prev.index + 1:
            raise ValueError("coding window must be contiguous")


def make_xor(blocks, c_c: int, m: int, szx: int) -> CodedBlock:
    """XOR all window payloads; the option carries no coefficients."""
    _check_window(blocks)
    payload = blocks[0].payload
    for b in blocks[1:]:
        payload = xor_bytes(payload, b.payload)
    opt = RequestOption(c_c, blocks[0].index, blocks[-1].index, m, szx,
                        CodingKind.IMPLICIT_XOR)
    return CodedBlock(opt, payload)


def make_rlnc(blocks, c_c: int, m: int, szx: int, rng) -> CodedBlock:
    """Random linear combination with coefficients drawn uniformly from 1..255."""
    _check_window(blocks)
    coeffs = tuple(rng.randrange(1, 256) for _ in blocks)
    payload = bytes(len(blocks[0].payload))
    for c, b in zip(coeffs, blocks):
        payload = xor_bytes(payload, scale_bytes(c, b.payload))
    opt = RequestOption(c_c, blocks[0].index, blocks[-1].index, m, szx,
                        CodingKind.EXPLICIT_RLNC, coeffs)
    return CodedBlock(opt, payload)


def coding_vector(option: RequestOption) -> dict:
    """Reconstruct the coding vector declared by an option: index -> coefficient."""
    if option.kind is CodingKind.IMPLICIT_XOR:
        return {i: 1 for i in range(option.no_t, option.no_e + 1)}
    return {option.no_t + k: c
            for k, c in enumerate(option.coeffs) if c}


class DecoderState:
    """Incremental GJE decoder with seen-pivot bookkeeping."""

    def __init__(self, n_total: int):
        if n_total < 1:
            raise ValueError("n_total must be >= 1")
        self.n_total = n_total
        self.htp = 0
        self._coeffs = {}    # pivot index -> {block index: coefficient}
        self._payloads = {}  # pivot index -> payload bytes
        self._cols = {}      # block index -> set of pivot rows nonzero there

    @property
    def seen(self):
        return set(self._coeffs)

    @property
    def rank(self) -> int:
        return len(self._coeffs)

    def rows(self) -> dict:
        """Dense view of the coding matrix, for inspection and tests."""
        out = {}
        for pivot, row in self._coeffs.items():
            coeffs = tuple(row.get(i, 0) for i in range(1, self.n_total + 1))
            out[pivot] = CoeffRow(coeffs, self._payloads[pivot])
        return out

    # internal sparse helpers ------------------------------------------------

    def _unregister(self, pivot, col):
        s = self._cols.get(col)
        if s is not None:
            s.discard(pivot)
            if not s:
                del self._cols[col]

    def _axpy_into_row(self, pivot: int, scale: int, vec: dict, payload: bytes):
        row = self._coeffs[pivot]
        for k, v in vec.items():
            nv = row.get(k, 0) ^ gf_mul(scale, v)
            if nv:
                row[k] = nv
                self._cols.setdefault(k, set()).add(pivot)
            elif k in row:
                del row[k]
                self._unregister(pivot, k)
        self._payloads[pivot] = xor_bytes(
            self._payloads[pivot], scale_bytes(scale, payload))


def decoder_insert(state: DecoderState, cb: CodedBlock) -> InsertOutcome:
    """Eliminate `cb` against the current pivots and insert it if innovative.

    htp is advanced to the combination's upper window bound whether or not the
    combination is innovative: the server has "touched" those blocks either way.
    """
    vec = coding_vector(cb.option)
    if not vec:
        raise WireError("combination has an empty coding vector")
    if cb.option.no_e > state.n_total:
        raise WireError("window exceeds resource block count")
    payload = cb.payload
    state.htp = max(state.htp, cb.option.no_e)

    # forward elimination against existing pivots
    while vec:
        j = min(vec)
        row = state._coeffs.get(j)
        if row is None:
            break
        scale = vec[j]
        for k, v in row.items():
            nv = vec.get(k, 0) ^ gf_mul(scale, v)
            if nv:
                vec[k] = nv
            elif k in vec:
                del vec[k]
        payload = xor_bytes(payload, scale_bytes(scale, state._payloads[j]))
    else:
        return InsertOutcome(False, frozenset())

    # clear the remaining covered columns behind the new pivot; pivot rows are
    # zero at every other pivot column, so this introduces no new work
    for k in [c for c in vec if c != j and c in state._coeffs]:
        scale = vec[k]
        for c, v in state._coeffs[k].items():
            nv = vec.get(c, 0) ^ gf_mul(scale, v)
            if nv:
                vec[c] = nv
            elif c in vec:
                del vec[c]
        payload = xor_bytes(payload, scale_bytes(scale, state._payloads[k]))

    # normalize the new pivot row
    inv = gf_inv(vec[j])
    if inv != 1:
        vec = {k: gf_mul(inv, v) for k, v in vec.items()}
        payload = scale_bytes(inv, payload)

    # back-substitute into every row with a nonzero entry in the new column
    for q in list(state._cols.get(j, ())):
        state._axpy_into_row(q, state._coeffs[q][j], vec, payload)

    state._coeffs[j] = vec
    state._payloads[j] = payload
    for k in vec:
        state._cols.setdefault(k, set()).add(j)
    return InsertOutcome(True, frozenset([j]))


def seen_report(state: DecoderState):
    """The ack triple (sn, htp, rdt_s) derived from decoder state."""
    sn = max(state._coeffs) if state._coeffs else 0
    return sn, state.htp, state.htp - state.rank


def try_decode(state: DecoderState):
    """Return all original blocks once the matrix reaches full rank, else None."""
    if state.rank < state.n_total:
        return None
    blocks = []
    for pivot, row in state._coeffs.items():
        if row != {pivot: 1}:
            raise AssertionError("full-rank decoder row is not a unit vector")
        blocks.append(Block(pivot, state._payloads[pivot]))
    blocks.sort(key=lambda b: b.index)
    return blocks
