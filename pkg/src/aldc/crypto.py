"""Seeded randomness, the PRF, permutation sampling, and the timed puzzle.

Everything random in the library flows through RandomStream so that a
single integer seed reproduces every downstream artifact bit for bit:
keys, codewords, corruption patterns, game coins. Substreams are derived
by labels through a keyed hash, so sibling streams never share state and
trial i of a sweep is independent of whether trial i-1 ran.

The PRF is blake2s in keyed mode with a counter for output expansion;
the puzzle is the classic sequential-squaring construction: the
generator knows the factorization of N and shortcuts 2^t mod phi(N),
the solver has no trapdoor and performs t literal modular squarings
(instrumented, which is the only sequentiality claim a desk test can
check).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .bitvec import as_bits, bits_from_bytes, bits_to_bytes
from .errors import DecodeFailure, UsageError

LAMBDA_BITS = 128
SEED_BYTES = LAMBDA_BITS // 8


def _encode_label(label) -> bytes:
    if isinstance(label, bytes):
        body, tag = label, b"b"
    elif isinstance(label, str):
        body, tag = label.encode(), b"s"
    elif isinstance(label, (int, np.integer)):
        body, tag = str(int(label)).encode(), b"i"
    else:
        raise UsageError(f"stream labels must be bytes, str, or int, got {type(label)!r}")
    return tag + len(body).to_bytes(4, "big") + body


class RandomStream:
    """Deterministic random source with labeled substreams.

    Parameters
    ----------
    seed : int | bytes
        Root entropy. Ints are encoded big-endian; byte strings of any
        length are accepted and folded to the internal 128-bit seed.
    """

    def __init__(self, seed):
        if isinstance(seed, (int, np.integer)):
            if seed < 0:
                raise UsageError("seed must be nonnegative")
            raw = int(seed).to_bytes(max((int(seed).bit_length() + 7) // 8, 1), "big")
        elif isinstance(seed, bytes):
            raw = seed
        else:
            raise UsageError(f"seed must be int or bytes, got {type(seed)!r}")
        self.seed_bytes = (
            raw if len(raw) == SEED_BYTES
            else hashlib.blake2s(raw, digest_size=SEED_BYTES).digest())
        key = hashlib.blake2s(b"philox-key", key=self.seed_bytes, digest_size=16).digest()
        self._gen = np.random.Generator(np.random.Philox(key=int.from_bytes(key, "big")))

    def substream(self, *labels) -> "RandomStream":
        """An independent child stream; same labels, same child, always."""
        h = hashlib.blake2s(key=self.seed_bytes, digest_size=SEED_BYTES)
        h.update(b"substream")
        for lab in labels:
            h.update(_encode_label(lab))
        return RandomStream(h.digest())

    def bits(self, n: int) -> np.ndarray:
        return self._gen.integers(0, 2, n, dtype=np.uint8)

    def tobytes(self, n: int) -> bytes:
        return self._gen.bytes(n)

    def randint_below(self, n: int) -> int:
        return int(self._gen.integers(n))

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def choice_without_replacement(self, n: int, k: int) -> np.ndarray:
        return self._gen.choice(n, size=k, replace=False)

    def getrandbits(self, n: int) -> int:
        nbytes = (n + 7) // 8
        v = int.from_bytes(self._gen.bytes(nbytes), "big")
        return v >> (8 * nbytes - n)


# ---------------- permutations ----------------


@dataclass(frozen=True)
class Permutation:
    """A permutation of [0, n) with O(n) inversion.

    scatter places entry j of the input at slot forward[j]; gather is its
    inverse read-out, so gather(scatter(x)) = x.
    """

    forward: np.ndarray

    @property
    def n(self) -> int:
        return len(self.forward)

    def inverse(self) -> np.ndarray:
        inv = np.empty(self.n, dtype=np.int64)
        inv[self.forward] = np.arange(self.n)
        return inv

    def scatter(self, x: np.ndarray) -> np.ndarray:
        out = np.empty_like(x)
        out[self.forward] = x
        return out

    def gather(self, y: np.ndarray) -> np.ndarray:
        return y[self.forward]


def sample_permutation(n: int, rng: RandomStream) -> Permutation:
    """Uniform permutation of [0, n) (Fisher-Yates shuffle of the range)."""
    if n < 1:
        raise UsageError(f"permutation size must be >= 1, got {n}")
    return Permutation(rng.permutation(n).astype(np.int64))


# ---------------- PRF ----------------


@dataclass(frozen=True)
class PrfKey:
    """A keyed function {0,1}^in_bits -> {0,1}^out_bits."""

    key: bytes
    in_bits: int
    out_bits: int

    def __post_init__(self):
        if len(self.key) != SEED_BYTES:
            raise UsageError(f"PRF key must be {SEED_BYTES} bytes, got {len(self.key)}")
        if self.in_bits < 1 or self.out_bits < 1:
            raise UsageError("PRF widths must be positive")


def prf_gen(rng: RandomStream, in_bits: int, out_bits: int) -> PrfKey:
    return PrfKey(rng.tobytes(SEED_BYTES), in_bits, out_bits)


def prf_eval(key: PrfKey, input_bits: np.ndarray) -> np.ndarray:
    """blake2s keyed mode, counter expansion, truncated to out_bits."""
    input_bits = as_bits(input_bits, key.in_bits)
    packed = bits_to_bytes(input_bits)  # fixed width: in_bits known to both sides
    out = bytearray()
    for block in range((key.out_bits + 255) // 256):
        h = hashlib.blake2s(key=key.key)
        h.update(block.to_bytes(4, "big"))
        h.update(packed)
        out.extend(h.digest())
    return bits_from_bytes(bytes(out), key.out_bits)


# ---------------- sequential-squaring puzzle ----------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _is_prime(n: int, rng: RandomStream) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d, r = d // 2, r + 1
    # the fixed bases are a proven deterministic test below 2^64; the
    # extra stream-derived bases cover larger toy moduli
    bases = list(_SMALL_PRIMES)
    if n >= 1 << 64:
        bases += [2 + rng.getrandbits(n.bit_length() + 16) % (n - 3) for _ in range(16)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _random_prime(bits: int, rng: RandomStream) -> int:
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if _is_prime(cand, rng):
            return cand


@dataclass(frozen=True)
class Puzzle:
    """A timed envelope around a payload: opening takes t squarings."""

    modulus: int
    base: int
    t: int
    blinded_payload: bytes
    payload_bits: int


def _blind_key(y: int, modulus: int, nbytes: int) -> bytes:
    out = bytearray()
    ybytes = y.to_bytes((modulus.bit_length() + 7) // 8, "big")
    for block in range((nbytes + 63) // 64):
        h = hashlib.blake2b(ybytes)
        h.update(block.to_bytes(4, "big"))
        out.extend(h.digest())
    return bytes(out[:nbytes])


def puzzle_gen(s: np.ndarray, t: int, rng: RandomStream) -> Puzzle:
    """Blind s under a key only reachable through x^(2^t) mod N.

    The generator holds the factorization, so it computes the exponent
    2^t mod phi(N) directly and never squares t times.
    """
    s = as_bits(s)
    if len(s) < 16:
        raise UsageError(f"payload must be at least 16 bits, got {len(s)}")
    if t < 1:
        raise UsageError(f"puzzle hardness t must be >= 1, got {t}")
    half = max(len(s) // 2, 16)
    p = _random_prime(half, rng)
    q = _random_prime(half, rng)
    while q == p:
        q = _random_prime(half, rng)
    n = p * q
    phi = (p - 1) * (q - 1)
    while True:
        x = 2 + rng.getrandbits(n.bit_length() + 64) % (n - 3)
        if math.gcd(x, n) == 1:
            break
    y = pow(x, pow(2, t, phi), n)
    payload = bits_to_bytes(s)
    key = _blind_key(y, n, len(payload))
    blinded = bytes(a ^ b for a, b in zip(payload, key))
    return Puzzle(modulus=n, base=x, t=t, blinded_payload=blinded, payload_bits=len(s))


def puzzle_solve_counted(z: Puzzle) -> tuple[np.ndarray, int]:
    """Open the envelope; returns (payload, number of squarings performed)."""
    if z.modulus < 4 or not (1 < z.base < z.modulus) or math.gcd(z.base, z.modulus) != 1:
        raise DecodeFailure("malformed puzzle: base/modulus constraints violated")
    if z.t < 1:
        raise DecodeFailure("malformed puzzle: nonpositive hardness")
    y = z.base
    squarings = 0
    for _ in range(z.t):
        y = y * y % z.modulus
        squarings += 1
    key = _blind_key(y, z.modulus, len(z.blinded_payload))
    payload = bytes(a ^ b for a, b in zip(z.blinded_payload, key))
    return bits_from_bytes(payload, z.payload_bits), squarings


def puzzle_solve(z: Puzzle) -> np.ndarray:
    return puzzle_solve_counted(z)[0]
