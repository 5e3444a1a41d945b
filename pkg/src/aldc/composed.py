"""Composition of a whole-message code with a keyed local code.

The composed codeword is ``Y* || Y_P``: the right half is a one-time
private LDC encoding of the message, and the left half carries the key
material the decoder needs — packed inside a time-lock puzzle, encoded
by a repetition code (the "star" code) that tolerates heavy corruption.

Decoding first reads ``sample_count`` of the ``r`` puzzle copies in
full, majority-votes the survivors, solves the puzzle by sequential
squaring to recover the seed ``s``, regenerates the one-time key from
``s``, and finally runs the local decoder on the right half.  The total
query count is exactly ``ell_star + span * A_P``: a fixed toll for the
key plus the local cost of the interval.

A channel that knows this layout still has to choose where to spend its
budget: killing the key requires overwhelming a majority of sampled
copies, and killing the message requires overflowing a hidden block.
The design budget is ``min(delta_star * n_star, delta_p * n_p)`` flips
total, whichever half they land in.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .bitvec import as_bits, bits_from_bytes, bits_to_bytes
from .blockcode import DEFAULT_SPEC, BlockCodeSpec, decode_block, encode_block
from .crypto import SEED_BYTES, Puzzle, RandomStream, puzzle_gen, puzzle_solve_counted
from .errors import ConfigError, DecodeFailure, UsageError
from .oracle import CountingOracle
from .paldc import Interval, ot_decode, ot_encode, ot_keygen

PUZZLE_MODULUS_BYTES = 16
PUZZLE_PAYLOAD_BYTES = SEED_BYTES
PUZZLE_WIRE_BYTES = 2 + 2 * PUZZLE_MODULUS_BYTES + 8 + PUZZLE_PAYLOAD_BYTES
_KEY_DERIVATION_LABEL = "composed-onetime-key"


def serialize_puzzle(z: Puzzle) -> np.ndarray:
    """Fixed-width big-endian wire image: (len-N, N, x, t, payload) bits."""
    if z.modulus.bit_length() > 8 * PUZZLE_MODULUS_BYTES:
        raise UsageError(
            f"modulus of {z.modulus.bit_length()} bits exceeds the "
            f"{8 * PUZZLE_MODULUS_BYTES}-bit wire format"
        )
    if z.payload_bits != 8 * PUZZLE_PAYLOAD_BYTES:
        raise UsageError(
            f"wire format carries exactly {8 * PUZZLE_PAYLOAD_BYTES} payload bits"
        )
    buf = struct.pack(">H", z.modulus.bit_length())
    buf += z.modulus.to_bytes(PUZZLE_MODULUS_BYTES, "big")
    buf += z.base.to_bytes(PUZZLE_MODULUS_BYTES, "big")
    buf += struct.pack(">Q", z.t)
    buf += z.blinded_payload
    return bits_from_bytes(buf)


def deserialize_puzzle(bits: np.ndarray) -> Puzzle:
    """Inverse of serialize_puzzle; verifies the length tag."""
    bits = as_bits(bits)
    if bits.shape[0] < 8 * PUZZLE_WIRE_BYTES:
        raise DecodeFailure("puzzle wire image truncated")
    raw = bits_to_bytes(bits[: 8 * PUZZLE_WIRE_BYTES])
    (len_n,) = struct.unpack(">H", raw[:2])
    off = 2
    modulus = int.from_bytes(raw[off : off + PUZZLE_MODULUS_BYTES], "big")
    off += PUZZLE_MODULUS_BYTES
    base = int.from_bytes(raw[off : off + PUZZLE_MODULUS_BYTES], "big")
    off += PUZZLE_MODULUS_BYTES
    (t,) = struct.unpack(">Q", raw[off : off + 8])
    off += 8
    payload = raw[off : off + PUZZLE_PAYLOAD_BYTES]
    if modulus.bit_length() != len_n:
        raise DecodeFailure("puzzle wire image corrupt: modulus length tag mismatch")
    return Puzzle(
        modulus=modulus,
        base=base,
        t=t,
        blinded_payload=payload,
        payload_bits=8 * PUZZLE_PAYLOAD_BYTES,
    )


# ---------------- the star (whole-message) code ----------------


@dataclass(frozen=True)
class LdcStarSpec:
    """r copies of one inner block codeword, majority-decoded from a sample."""

    inner: BlockCodeSpec
    copies: int
    sample_count: int
    delta_star: float

    def __post_init__(self):
        if self.copies < 1:
            raise ConfigError(f"copies >= 1 violated: copies={self.copies}")
        if not 1 <= self.sample_count <= self.copies:
            raise ConfigError(
                f"1 <= sample_count <= copies violated: "
                f"sample_count={self.sample_count}, copies={self.copies}"
            )

    @property
    def k_star(self) -> int:
        return self.inner.a

    @property
    def n_star(self) -> int:
        return self.copies * self.inner.A

    @property
    def ell_star(self) -> int:
        return self.sample_count * self.inner.A


def majority_sample_count(eps_star: float, p_est: float, copies: int) -> int:
    """Chernoff sizing: smallest odd sample defeating per-copy failure p_est.

    ceil(ln(2/eps)/(2 (1/2 - p)^2)) rounded up to odd, capped at the
    number of copies that exist (stepping down to odd under the cap).
    """
    if not 0 < eps_star < 1:
        raise ConfigError(f"0 < eps_star < 1 violated: eps_star={eps_star}")
    if not 0 < p_est < 0.5:
        raise ConfigError(f"0 < p_est < 1/2 violated: p_est={p_est}")
    s = math.ceil(math.log(2 / eps_star) / (2 * (0.5 - p_est) ** 2))
    if s % 2 == 0:
        s += 1
    if s > copies:
        s = copies if copies % 2 == 1 else copies - 1
    return max(s, 1)


def ldcstar_encode(spec: LdcStarSpec, z_bits) -> np.ndarray:
    z_bits = as_bits(z_bits, spec.inner.a)
    return np.tile(encode_block(spec.inner, z_bits), spec.copies)


def ldcstar_decode(spec: LdcStarSpec, oracle: CountingOracle, rng: RandomStream) -> np.ndarray:
    """Majority over sample_count distinct fully-read copies."""
    if oracle.n != spec.n_star:
        raise UsageError(f"oracle length {oracle.n} does not match n* = {spec.n_star}")
    A = spec.inner.A
    chosen = rng.choice_without_replacement(spec.copies, spec.sample_count)
    votes: dict[bytes, int] = {}
    decoded: dict[bytes, np.ndarray] = {}
    successes = 0
    for c in chosen:
        word = oracle.query(np.arange(int(c) * A, (int(c) + 1) * A, dtype=np.int64))
        try:
            msg = decode_block(spec.inner, word)
        except DecodeFailure:
            continue
        successes += 1
        tag = msg.tobytes()
        votes[tag] = votes.get(tag, 0) + 1
        decoded[tag] = msg
    if successes == 0:
        raise DecodeFailure("every sampled copy failed to decode")
    tag, count = max(votes.items(), key=lambda kv: kv[1])
    if 2 * count <= successes:
        raise DecodeFailure("no majority among the sampled copies")
    return decoded[tag]


# ---------------- the composition ----------------


@dataclass(frozen=True)
class ComposedSpec:
    """Public layout parameters shared by encoder and decoder."""

    k: int
    puzzle_t: int
    paldc_spec: BlockCodeSpec
    star: LdcStarSpec
    delta_p: float

    @property
    def B(self) -> int:
        return -(-self.k // self.paldc_spec.a)

    @property
    def n_p(self) -> int:
        return self.B * self.paldc_spec.A

    @property
    def n_star(self) -> int:
        return self.star.n_star

    @property
    def n(self) -> int:
        return self.n_star + self.n_p

    @property
    def budget(self) -> int:
        """Design corruption budget min(delta*·n*, delta_P·n_P) in bits."""
        return min(
            int(self.star.delta_star * self.n_star),
            int(self.delta_p * self.n_p),
        )

    @property
    def delta(self) -> float:
        return self.budget / self.n

    @property
    def alpha_p(self) -> float:
        return 2.0 / self.paldc_spec.rate

    @property
    def kappa_p(self) -> int:
        return self.paldc_spec.a


def build_composed_spec(
    k: int,
    puzzle_t: int,
    *,
    paldc_spec: BlockCodeSpec = DEFAULT_SPEC,
    eps_star: float = 0.2,
    p_est: float = 1 / 3,
    delta_p: float | None = None,
) -> ComposedSpec:
    """Size the star code for the paLDC half (the smallest-r rule).

    delta_star is chosen so that a budget of delta_star*n* flips can
    overwhelm at most a p_est fraction of copies (each kill costs at
    least t_sym+1 flips); delta_p defaults to the same load rule per
    paLDC block.
    """
    if k < 1:
        raise ConfigError(f"k >= 1 violated: k={k}")
    if puzzle_t < 1:
        raise ConfigError(f"puzzle_t >= 1 violated: puzzle_t={puzzle_t}")
    sb = paldc_spec.symbol_bits
    k_star = 8 * PUZZLE_WIRE_BYTES
    a_star = -(-k_star // sb) * sb
    inner = BlockCodeSpec(a=a_star, A=2 * a_star, symbol_bits=sb)
    n_p = (-(-k // paldc_spec.a)) * paldc_spec.A
    copies = -(-n_p // inner.A)
    sample = majority_sample_count(eps_star, p_est, copies)
    star = LdcStarSpec(
        inner=inner,
        copies=copies,
        sample_count=sample,
        delta_star=p_est * (inner.t_sym + 1) / inner.A,
    )
    if delta_p is None:
        delta_p = p_est * (paldc_spec.t_sym + 1) / paldc_spec.A
    return ComposedSpec(
        k=k, puzzle_t=puzzle_t, paldc_spec=paldc_spec, star=star, delta_p=delta_p
    )


@dataclass(frozen=True)
class ComposedCodeword:
    y_star: np.ndarray
    y_p: np.ndarray

    @property
    def bits(self) -> np.ndarray:
        return np.concatenate([self.y_star, self.y_p])

    @property
    def n(self) -> int:
        return int(self.y_star.shape[0] + self.y_p.shape[0])


def _derive_onetime_key(spec: ComposedSpec, seed_bytes: bytes):
    stream = RandomStream(seed_bytes).substream(_KEY_DERIVATION_LABEL)
    return ot_keygen(spec.k, stream, spec=spec.paldc_spec)


def rb_encode(x, spec: ComposedSpec, rng: RandomStream) -> ComposedCodeword:
    """Seed -> puzzle -> star half; seed-derived one-time key -> message half."""
    x = as_bits(x, spec.k)
    seed = rng.tobytes(SEED_BYTES)
    puzzle = puzzle_gen(bits_from_bytes(seed), spec.puzzle_t, rng)
    wire = serialize_puzzle(puzzle)
    padded = np.zeros(spec.star.inner.a, dtype=np.uint8)
    padded[: wire.shape[0]] = wire
    y_star = ldcstar_encode(spec.star, padded)
    sk = _derive_onetime_key(spec, seed)
    y_p = ot_encode(sk, x)
    return ComposedCodeword(y_star=y_star, y_p=y_p)


def rb_decode(
    oracle: CountingOracle, iv: Interval, spec: ComposedSpec, rng: RandomStream
) -> np.ndarray:
    """Recover [L, R]: star-decode the puzzle, solve it, then decode locally."""
    if oracle.n != spec.n:
        raise UsageError(f"oracle length {oracle.n} does not match layout n = {spec.n}")
    star_view = oracle.view(0, spec.n_star)
    wire = ldcstar_decode(spec.star, star_view, rng)
    puzzle = deserialize_puzzle(wire)
    payload, _ = puzzle_solve_counted(puzzle)
    sk = _derive_onetime_key(spec, bits_to_bytes(payload))
    p_view = oracle.view(spec.n_star, spec.n_p)
    return ot_decode(sk, p_view, iv)
