"""The inner (A, a) block code: systematic Reed-Solomon with a bit wrapper.

The private codecs and the replicated outer code both consume an
abstract binary code with constant rate and constant error tolerance.
This module fixes it as a Reed-Solomon code over GF(2^symbol_bits),
wrapped so that callers see plain bit vectors:

* bits are packed big-endian into symbols (symbol_bits consecutive bits
  per symbol), so one flipped bit corrupts exactly one symbol;
* encoding is systematic, message bits first;
* decoding is bounded-distance: syndromes, an extended-Euclidean key
  equation solve, Chien root search, and Forney magnitudes. Anything
  outside the radius raises DecodeFailure or returns a wrong message,
  never crashes.

delta_c below is the worst-case *bit-level* tolerance t_sym*symbol_bits/A
implied by the symbol radius; it is the quantity the private-codec
bounds are stated against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bitvec import as_bits, bits_to_symbols, symbols_to_bits
from .errors import ConfigError, DecodeFailure, UsageError
from .gf2m import GF2m, Poly, poly_eea


@dataclass(frozen=True)
class BlockCodeSpec:
    """Shape of one inner code block.

    Parameters
    ----------
    a : int
        Message length in bits.
    A : int
        Codeword length in bits.
    symbol_bits : int
        Bits per Reed-Solomon symbol (the alphabet is GF(2^symbol_bits)).
    """

    a: int
    A: int
    symbol_bits: int = 8

    def __post_init__(self):
        sb = self.symbol_bits
        from .gf2m import REDUCTION_POLY
        if sb not in REDUCTION_POLY:
            raise ConfigError(f"symbol_bits must be one of {sorted(REDUCTION_POLY)}, got {sb}")
        if self.a % sb or self.A % sb:
            raise ConfigError(f"a and A must be divisible by symbol_bits: a={self.a}, A={self.A}, symbol_bits={sb}")
        if self.a <= 0 or self.A <= self.a:
            raise ConfigError(f"need 0 < a < A, got a={self.a}, A={self.A}")
        if self.n_sym > (1 << sb) - 1:
            raise ConfigError(
                f"A/symbol_bits must be <= 2^symbol_bits - 1: {self.n_sym} > {(1 << sb) - 1}")

    @property
    def n_sym(self) -> int:
        return self.A // self.symbol_bits

    @property
    def k_sym(self) -> int:
        return self.a // self.symbol_bits

    @property
    def t_sym(self) -> int:
        """Symbol-error correction radius floor((A - a) / (2 symbol_bits))."""
        return (self.A - self.a) // (2 * self.symbol_bits)

    @property
    def rate(self) -> float:
        return self.a / self.A

    @property
    def delta_c(self) -> float:
        """Worst-case guaranteed bit-error tolerance as a fraction of A."""
        return self.t_sym * self.symbol_bits / self.A


DEFAULT_SPEC = BlockCodeSpec(a=256, A=512, symbol_bits=8)  # rate 1/2, t_sym = 16


@lru_cache(maxsize=None)
def _rs_tables(symbol_bits: int, n_parity: int):
    """Field and generator polynomial for a given redundancy."""
    field = GF2m(symbol_bits)
    gen = Poly.one(field)
    for j in range(1, n_parity + 1):
        gen = gen * Poly(field, [field.alpha_pow(j), 1])
    return field, gen


def encode_block(spec: BlockCodeSpec, w: np.ndarray) -> np.ndarray:
    """Systematic encoding of an a-bit message to an A-bit codeword."""
    w = as_bits(w, spec.a)
    field, gen = _rs_tables(spec.symbol_bits, spec.n_sym - spec.k_sym)
    msg = bits_to_symbols(w, spec.symbol_bits)
    # message polynomial with msg[0] on the highest power, shifted past
    # the parity positions
    shifted = Poly(field, np.concatenate(
        [np.zeros(spec.n_sym - spec.k_sym, dtype=np.int32), msg[::-1]]))
    rem = shifted % gen
    parity = np.zeros(spec.n_sym - spec.k_sym, dtype=np.int32)
    parity[: len(rem.coeffs)] = rem.coeffs
    cw_syms = np.concatenate([msg, parity[::-1]])
    return symbols_to_bits(cw_syms, spec.symbol_bits)


def decode_block(spec: BlockCodeSpec, w_corrupt: np.ndarray) -> np.ndarray:
    """Bounded-distance decoding; raises DecodeFailure outside the radius."""
    bits = as_bits(w_corrupt, spec.A)
    field, _ = _rs_tables(spec.symbol_bits, spec.n_sym - spec.k_sym)
    r_syms = bits_to_symbols(bits, spec.symbol_bits)
    n, k, t = spec.n_sym, spec.k_sym, spec.t_sym
    if t == 0:
        return symbols_to_bits(r_syms[:k], spec.symbol_bits)

    # syndromes S_j = r(alpha^j), j = 1..2t, with r_syms[i] the
    # coefficient of z^(n-1-i)
    r_poly = Poly(field, r_syms[::-1])
    synd_pts = np.array([field.alpha_pow(j) for j in range(1, 2 * t + 1)], dtype=np.int32)
    synd = r_poly.eval_many(synd_pts)
    if not np.any(synd):
        return symbols_to_bits(r_syms[:k], spec.symbol_bits)

    # key equation: sigma * S = omega mod z^(2t), solved by stopping the
    # extended Euclidean chain at remainder degree t-1
    s_poly = Poly(field, synd)
    z2t = Poly(field, np.concatenate([np.zeros(2 * t, dtype=np.int32), [1]]))
    try:
        _, v, rem = poly_eea(z2t, s_poly, t - 1)
    except ZeroDivisionError as e:
        raise DecodeFailure("key equation has no solution at radius") from e
    if v.is_zero() or v.coeffs[0] == 0 or v.degree > t:
        raise DecodeFailure("error locator is not invertible at zero")
    c0 = field.inv(int(v.coeffs[0]))
    sigma, omega = v.scale(c0), rem.scale(c0)

    # Chien search over codeword positions: position i holds the
    # coefficient of z^(n-1-i), so its locator root is alpha^-(n-1-i)
    pts = np.array([field.alpha_pow(-(n - 1 - i)) for i in range(n)], dtype=np.int32)
    evals = sigma.eval_many(pts)
    err_pos = np.nonzero(evals == 0)[0]
    if len(err_pos) != sigma.degree:
        raise DecodeFailure(
            f"locator degree {sigma.degree} but {len(err_pos)} roots in range")

    if len(err_pos):
        x_inv = pts[err_pos]
        # formal derivative in characteristic 2: only odd terms survive
        dcoeffs = np.zeros(max(len(sigma.coeffs) - 1, 1), dtype=np.int32)
        dcoeffs[0::2] = sigma.coeffs[1::2]
        dsigma = Poly(field, dcoeffs)
        mags = field.mul_vec(omega.eval_many(x_inv), field.inv_vec(dsigma.eval_many(x_inv)))
        if np.any(mags == 0):
            raise DecodeFailure("zero error magnitude from evaluator")
        r_syms = r_syms.copy()
        r_syms[err_pos] ^= mags

    # verify: corrected word must have all used syndromes zero
    if np.any(Poly(field, r_syms[::-1]).eval_many(synd_pts)):
        raise DecodeFailure("corrected word fails syndrome check")
    return symbols_to_bits(r_syms[:k], spec.symbol_bits)
