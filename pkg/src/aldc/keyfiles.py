"""Binary persistence for keys, codewords, and the composed layout.

One container format for everything: an 8-byte header (magic "ALDC",
little-endian u16 version, u16 file type) followed by u32-length-prefixed
sections. Secret keys store only their irreducible parts; every derived
table (parity checks, inverse tables, square-root precomputation) is
rebuilt on load, so a reloaded key is bit-compatible with the saved one.
Exact byte layouts are documented in docs/formats.md and pinned by the
format tests.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .bitvec import bits_from_bytes, bits_to_bytes
from .blockcode import BlockCodeSpec
from .composed import ComposedSpec, LdcStarSpec
from .crypto import SEED_BYTES, Permutation, PrfKey
from .errors import UsageError
from .goppa import RseKey, code_from_parts
from .paldc import MultiRoundKey, OneTimeKey

MAGIC = b"ALDC"
VERSION = 1

TYPE_ONETIME_KEY = 1
TYPE_MULTIROUND_KEY = 2
TYPE_CODEWORD = 3
TYPE_COMPOSED_LAYOUT = 4

CODEC_TAGS = {"onetime": 1, "multiround": 2, "composed": 3}
_TAG_NAMES = {v: k for k, v in CODEC_TAGS.items()}


def _write_container(path, ftype: int, sections: list[bytes]) -> None:
    blob = bytearray(MAGIC)
    blob += struct.pack("<HH", VERSION, ftype)
    for sec in sections:
        blob += struct.pack("<I", len(sec))
        blob += sec
    Path(path).write_bytes(bytes(blob))


def _read_container(path, expect_type: int | None = None) -> tuple[int, list[bytes]]:
    data = Path(path).read_bytes()
    if len(data) < 8 or data[:4] != MAGIC:
        raise UsageError(f"{path}: not an aldc container (bad magic)")
    version, ftype = struct.unpack_from("<HH", data, 4)
    if version != VERSION:
        raise UsageError(f"{path}: unsupported container version {version}")
    sections = []
    off = 8
    while off < len(data):
        if off + 4 > len(data):
            raise UsageError(f"{path}: truncated section header")
        (length,) = struct.unpack_from("<I", data, off)
        off += 4
        if off + length > len(data):
            raise UsageError(f"{path}: truncated section body")
        sections.append(data[off : off + length])
        off += length
    if expect_type is not None and ftype != expect_type:
        raise UsageError(f"{path}: file type {ftype}, expected {expect_type}")
    return ftype, sections


def _perm_bytes(perm: Permutation) -> bytes:
    return perm.forward.astype("<u4").tobytes()


def _perm_load(sec: bytes, n: int) -> Permutation:
    forward = np.frombuffer(sec, dtype="<u4").astype(np.int64)
    if forward.shape[0] != n:
        raise UsageError(f"stored permutation length {forward.shape[0]}, expected {n}")
    if not np.array_equal(np.sort(forward), np.arange(n)):
        raise UsageError("stored permutation is not a permutation")
    return Permutation(forward)


# ---------------- one-time key ----------------


def _save_onetime(key: OneTimeKey) -> list[bytes]:
    params = struct.pack(
        "<IIIIB", key.k, key.spec.a, key.spec.A, key.spec.symbol_bits, int(key.used)
    )
    return [params, bits_to_bytes(key.pad), _perm_bytes(key.perm)]


def _load_onetime(sections: list[bytes]) -> OneTimeKey:
    if len(sections) != 3:
        raise UsageError(f"one-time key needs 3 sections, found {len(sections)}")
    k, a, A, symbol_bits, used = struct.unpack("<IIIIB", sections[0])
    spec = BlockCodeSpec(a=a, A=A, symbol_bits=symbol_bits)
    B = -(-k // a)
    n = B * A
    pad = bits_from_bytes(sections[1], n)
    perm = _perm_load(sections[2], n)
    return OneTimeKey(spec=spec, k=k, B=B, pad=pad, perm=perm, used=bool(used))


# ---------------- multi-round key ----------------


def _save_multiround(key: MultiRoundKey) -> list[bytes]:
    params = struct.pack(
        "<9I", key.k, key.a, key.b, key.B, key.q, key.idx_bits,
        key.rounds_used, key.rse.noise_weight, key.rse.channel_budget,
    )
    prf = struct.pack("<II", key.prf.in_bits, key.prf.out_bits) + key.prf.key
    code = key.rse.code
    goppa = (
        struct.pack("<III", code.m, code.t, code.n)
        + code.g.coeffs.astype("<u2").tobytes()
        + code.support.astype("<u2").tobytes()
    )
    return [params, prf, goppa, _perm_bytes(key.perm)]


def _load_multiround(sections: list[bytes]) -> MultiRoundKey:
    if len(sections) != 4:
        raise UsageError(f"multi-round key needs 4 sections, found {len(sections)}")
    (k, a, b, B, q, idx_bits, rounds_used, noise_weight, channel_budget,
     ) = struct.unpack("<9I", sections[0])
    if B != -(-k // a):
        raise UsageError(f"stored B={B} inconsistent with k={k}, a={a}")
    in_bits, out_bits = struct.unpack_from("<II", sections[1])
    prf_key = sections[1][8:]
    if len(prf_key) != SEED_BYTES:
        raise UsageError(f"stored PRF key has {len(prf_key)} bytes, expected {SEED_BYTES}")
    prf = PrfKey(key=prf_key, in_bits=in_bits, out_bits=out_bits)
    m, t, n_rse = struct.unpack_from("<III", sections[2])
    body = sections[2][12:]
    g_len = 2 * (t + 1)
    if len(body) != g_len + 2 * n_rse:
        raise UsageError("stored Goppa section has the wrong length")
    g_coeffs = np.frombuffer(body[:g_len], dtype="<u2").astype(np.int32)
    support = np.frombuffer(body[g_len:], dtype="<u2").astype(np.int32)
    code = code_from_parts(m, g_coeffs, support)
    if code.t != t:
        raise UsageError(f"stored degree {t} does not match polynomial degree {code.t}")
    rse = RseKey(code=code, noise_weight=noise_weight, channel_budget=channel_budget)
    perm = _perm_load(sections[3], B * code.n)
    return MultiRoundKey(
        k=k, a=a, b=b, B=B, q=q, idx_bits=idx_bits,
        rse=rse, prf=prf, perm=perm, rounds_used=rounds_used,
    )


# ---------------- public key api ----------------


def save_key(path, key) -> None:
    """Persist a codec key; the file type encodes which codec it is."""
    if isinstance(key, OneTimeKey):
        _write_container(path, TYPE_ONETIME_KEY, _save_onetime(key))
    elif isinstance(key, MultiRoundKey):
        _write_container(path, TYPE_MULTIROUND_KEY, _save_multiround(key))
    else:
        raise UsageError(f"cannot persist a {type(key).__name__}")


def load_key(path):
    ftype, sections = _read_container(path)
    if ftype == TYPE_ONETIME_KEY:
        return _load_onetime(sections)
    if ftype == TYPE_MULTIROUND_KEY:
        return _load_multiround(sections)
    raise UsageError(f"{path}: file type {ftype} is not a key")


# ---------------- codewords ----------------


def save_codeword(path, codec: str, k: int, bits) -> None:
    if codec not in CODEC_TAGS:
        raise UsageError(f"unknown codec {codec!r}; choose from {sorted(CODEC_TAGS)}")
    bits = np.asarray(bits, dtype=np.uint8)
    head = struct.pack("<BII", CODEC_TAGS[codec], k, bits.shape[0])
    _write_container(path, TYPE_CODEWORD, [head, bits_to_bytes(bits)])


def load_codeword(path) -> tuple[str, int, np.ndarray]:
    _, sections = _read_container(path, expect_type=TYPE_CODEWORD)
    if len(sections) != 2:
        raise UsageError(f"codeword file needs 2 sections, found {len(sections)}")
    tag, k, n = struct.unpack("<BII", sections[0])
    if tag not in _TAG_NAMES:
        raise UsageError(f"unknown codec tag {tag}")
    return _TAG_NAMES[tag], k, bits_from_bytes(sections[1], n)


# ---------------- composed layout ----------------


def save_composed_layout(path, spec: ComposedSpec) -> None:
    body = (
        struct.pack("<IQ", spec.k, spec.puzzle_t)
        + struct.pack("<III", spec.paldc_spec.a, spec.paldc_spec.A, spec.paldc_spec.symbol_bits)
        + struct.pack("<III", spec.star.inner.a, spec.star.inner.A, spec.star.inner.symbol_bits)
        + struct.pack("<II", spec.star.copies, spec.star.sample_count)
        + struct.pack("<dd", spec.star.delta_star, spec.delta_p)
    )
    _write_container(path, TYPE_COMPOSED_LAYOUT, [body])


def load_composed_layout(path) -> ComposedSpec:
    _, sections = _read_container(path, expect_type=TYPE_COMPOSED_LAYOUT)
    if len(sections) != 1:
        raise UsageError(f"composed layout needs 1 section, found {len(sections)}")
    body = sections[0]
    k, puzzle_t = struct.unpack_from("<IQ", body, 0)
    pa, pA, psym = struct.unpack_from("<III", body, 12)
    ia, iA, isym = struct.unpack_from("<III", body, 24)
    copies, sample_count = struct.unpack_from("<II", body, 36)
    delta_star, delta_p = struct.unpack_from("<dd", body, 44)
    star = LdcStarSpec(
        inner=BlockCodeSpec(a=ia, A=iA, symbol_bits=isym),
        copies=copies, sample_count=sample_count, delta_star=delta_star,
    )
    return ComposedSpec(
        k=k, puzzle_t=puzzle_t,
        paldc_spec=BlockCodeSpec(a=pa, A=pA, symbol_bits=psym),
        star=star, delta_p=delta_p,
    )
