"""Command-line entry point: demos, codecs, games, sweeps, and reports.

Every subcommand honors --seed end to end: the same invocation writes
byte-identical CSV/JSON artifacts, independent of --jobs. Exit codes are
0 on success, 1 when a measured assertion fails (or a decode fails), and
2 on configuration or usage errors; rejected configs name the violated
inequality on stderr.

Flag values may also come from a flat key=value file via --config;
explicit flags always win over the file, the file wins over built-in
defaults. Units: lengths are bits, delta is a fraction of the codeword,
trials/rounds are counts.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .blockcode import DEFAULT_SPEC, BlockCodeSpec
from .bounds import hypergeometric_bound
from .channels import CHANNEL_KINDS, ChannelModel, corrupt
from .composed import build_composed_spec, rb_decode, rb_encode
from .crypto import RandomStream
from .errors import ConfigError, DecodeFailure, UsageError
from .gf2m import gf2_matmul
from .games import (
    adp_sample,
    gd_sample,
    paldc_trial,
    run_paldc_sec_game,
    run_rse_game,
)
from .goppa import rse_encode, rse_decode, rse_gen, rows_in_code
from .hadamard import had_decode, had_encode, had_length
from .keyfiles import (
    load_codeword,
    load_composed_layout,
    load_key,
    save_codeword,
    save_composed_layout,
    save_key,
)
from .oracle import CountingOracle
from .paldc import Interval, MultiRoundKey, OneTimeKey, mr_decode, mr_encode, mr_keygen, ot_decode, ot_encode, ot_keygen
from .records import ExperimentRecord, summarize, write_csv, write_summary

# ---------------- shared helpers ----------------


def _parse_config_file(path) -> dict[str, str]:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def _coerce(raw: str, like):
    if isinstance(like, bool):
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"expected a boolean, got {raw!r}")
    if isinstance(like, int):
        return int(raw)
    if isinstance(like, float):
        return float(raw)
    if like is None:
        for cast in (int, float):
            try:
                return cast(raw)
            except ValueError:
                pass
    return raw


def _merge_config(ns: argparse.Namespace, argv: list[str]) -> None:
    """Fill namespace values from the --config file; explicit flags win."""
    path = getattr(ns, "config", None)
    if not path:
        return
    explicit = {tok.split("=", 1)[0] for tok in argv if tok.startswith("--")}
    for key, raw in _parse_config_file(path).items():
        dest = key.replace("-", "_")
        if not hasattr(ns, dest):
            raise ConfigError(f"unknown config key {key!r}")
        if "--" + key.replace("_", "-") in explicit:
            continue
        setattr(ns, dest, _coerce(raw, getattr(ns, dest)))


def _stream(ns, *labels) -> RandomStream:
    return RandomStream(int(ns.seed)).substream(*labels)


def _read_message(path, k: int) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        text = "".join(fh.read().split())
    if len(text) != k or set(text) - {"0", "1"}:
        raise UsageError(f"{path}: need exactly {k} ASCII 0/1 characters, got {len(text)}")
    return np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")


def _write_message(path, bits: np.ndarray) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("".join("1" if b else "0" for b in bits))
        fh.write("\n")


def _bits_str(bits: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in bits)


def _message_for(ns, k: int, rng: RandomStream) -> np.ndarray:
    if ns.message is not None:
        return _read_message(ns.message, k)
    if not ns.random:
        raise UsageError("provide --message FILE or --random")
    msg = rng.bits(k)
    if ns.message_out:
        _write_message(ns.message_out, msg)
    return msg


def _channel_from(ns, kind: str | None = None) -> ChannelModel:
    return ChannelModel(
        kind=kind or ns.channel,
        delta=ns.delta,
        block_len=getattr(ns, "block_len", None),
        target_block=getattr(ns, "target_block", None),
        split=getattr(ns, "split", None),
    )


def _maybe_write(records, ns) -> None:
    if getattr(ns, "out", None):
        write_csv(records, ns.out)
        print(f"wrote {len(records)} records to {ns.out}")


# ---------------- hadamard demo ----------------


def _cmd_hadamard_demo(ns) -> int:
    if not 1 <= ns.kappa <= ns.k:
        raise ConfigError(f"1 <= kappa <= k violated: kappa={ns.kappa}, k={ns.k}")
    n = had_length(ns.k)
    channel = _channel_from(ns)
    root = _stream(ns, "hadamard-demo")
    records = []
    failures = 0
    max_queries = 0
    total_queries = 0
    for trial in range(ns.trials):
        sub = root.substream("trial", trial)
        x = sub.substream("msg").bits(ns.k)
        corrupted = corrupt(channel, had_encode(x), sub.substream("channel"))
        base = sub.substream("window").randint_below(ns.k - ns.kappa + 1)
        positions = np.arange(base, base + ns.kappa)
        oracle = CountingOracle(corrupted)
        got = had_decode(oracle, ns.k, positions, sub.substream("decode"))
        ok = bool(np.array_equal(got, x[positions]))
        failures += not ok
        max_queries = max(max_queries, oracle.tally)
        total_queries += oracle.tally
        records.append(ExperimentRecord(
            codec="hadamard", k=ns.k, n=n, delta=ns.delta, kappa=ns.kappa,
            trial=trial, L=base + 1, R=base + ns.kappa,
            queries=oracle.tally, success=ok, seed=int(ns.seed),
        ))
    rate = failures / ns.trials
    bound = (ns.kappa + 1) * ns.delta
    sigma = math.sqrt(max(bound * (1 - bound), 1e-12) / ns.trials)
    amortized = total_queries / (ns.kappa * ns.trials)
    print(f"hadamard k={ns.k} n={n} kappa={ns.kappa} delta={ns.delta} "
          f"channel={channel.kind} trials={ns.trials} seed={ns.seed}")
    print(f"queries: max={max_queries} hard bound kappa+1={ns.kappa + 1}")
    print(f"amortized locality: {amortized:.4f} (bound {(ns.kappa + 1) / ns.kappa:.4f})")
    print(f"failure rate: {rate:.4f} (bound (kappa+1)*delta = {bound:.4f}, "
          f"tolerance +3sigma = {bound + 3 * sigma:.4f})")
    _maybe_write(records, ns)
    if getattr(ns, "summary", None):
        write_summary(summarize(records), ns.summary)
        print(f"wrote summary to {ns.summary}")
    if max_queries > ns.kappa + 1:
        print("ASSERTION FAILED: query count exceeded kappa + 1", file=sys.stderr)
        return 1
    if rate > bound + 3 * sigma:
        print("ASSERTION FAILED: failure rate above bound + 3 sigma", file=sys.stderr)
        return 1
    return 0


# ---------------- private codecs ----------------


def _cmd_paldc_keygen(ns) -> int:
    rng = _stream(ns, "paldc-keygen")
    if ns.codec == "onetime":
        spec = BlockCodeSpec(a=ns.block_a, A=ns.block_A, symbol_bits=ns.symbol_bits)
        key = ot_keygen(ns.k, rng, spec=spec)
        shape = f"B={key.B} n={key.n} rate={key.spec.rate:.4f}"
    else:
        key = mr_keygen(ns.k, ns.q, rng, **_mr_params(ns))
        shape = (f"B={key.B} n={key.n} a={key.a} b={key.b} A={key.A} "
                 f"rate_rse={key.rate_rse:.4f} locality_bound={key.locality_bound:.4f}")
    save_key(ns.out, key)
    print(f"wrote {ns.codec} key to {ns.out} (k={ns.k} {shape})")
    return 0


def _cmd_paldc_encode(ns) -> int:
    key = load_key(ns.key)
    root = _stream(ns, "paldc-encode")
    msg = _message_for(ns, key.k, root.substream("msg"))
    if isinstance(key, OneTimeKey):
        word = ot_encode(key, msg)
        codec = "onetime"
    else:
        word = mr_encode(key, msg, root.substream("enc", key.rounds_used))
        codec = "multiround"
    save_key(ns.key, key)  # persists the burned use / round counter
    save_codeword(ns.out, codec, key.k, word)
    used = "used=True" if codec == "onetime" else f"rounds_used={key.rounds_used}"
    print(f"wrote {codec} codeword to {ns.out} (n={word.shape[0]}); key updated ({used})")
    return 0


def _cmd_paldc_decode(ns) -> int:
    key = load_key(ns.key)
    codec, k, bits = load_codeword(ns.word)
    expect = "onetime" if isinstance(key, OneTimeKey) else "multiround"
    if codec != expect or k != key.k:
        raise UsageError(f"codeword ({codec}, k={k}) does not match key ({expect}, k={key.k})")
    iv = Interval.parse(ns.interval)
    oracle = CountingOracle(bits)
    decode = ot_decode if isinstance(key, OneTimeKey) else mr_decode
    got = decode(key, oracle, iv)
    bound = key.locality_bound * iv.length
    print(f"interval {iv.L}:{iv.R} queries={oracle.tally} (bound {bound:.1f})")
    if ns.out:
        _write_message(ns.out, got)
        print(f"wrote {iv.length} bits to {ns.out}")
    else:
        print(_bits_str(got))
    return 0


# ---------------- rse self-test ----------------


def _cmd_rse_test(ns) -> int:
    root = _stream(ns, "rse-test")
    key = rse_gen(ns.noise_weight, ns.delta, rng=root.substream("key"),
                  m=ns.m, n=ns.n, t=ns.t)
    failures = 0
    for trial in range(ns.trials):
        sub = root.substream("trial", trial)
        msg = sub.bits(key.k_dim)
        word = rse_encode(key, msg, sub)
        flips = sub.choice_without_replacement(key.n, key.channel_budget)
        word[flips] ^= 1
        try:
            ok = bool(np.array_equal(rse_decode(key, word), msg))
        except DecodeFailure:
            ok = False
        failures += not ok
    print(f"rse m={key.code.m} n={key.n} t={key.code.t} k_dim={key.k_dim} "
          f"noise_weight={key.noise_weight} channel_budget={key.channel_budget}")
    print(f"trials={ns.trials} failures={failures}")
    if failures:
        print("ASSERTION FAILED: decode failures inside the design radius", file=sys.stderr)
        return 1
    return 0


# ---------------- resource-bounded codec ----------------


def _cmd_rbldc_encode(ns) -> int:
    spec = build_composed_spec(
        ns.k, ns.puzzle_t, eps_star=ns.eps_star, p_est=ns.p_est, delta_p=ns.delta_p,
    )
    root = _stream(ns, "rbldc-encode")
    msg = _message_for(ns, ns.k, root.substream("msg"))
    word = rb_encode(msg, spec, root.substream("enc"))
    save_composed_layout(ns.layout, spec)
    save_codeword(ns.out, "composed", ns.k, word.bits)
    star = spec.star
    print(f"composed layout: n={spec.n} (star {spec.n_star} + message {spec.n_p}) "
          f"copies={star.copies} sample_count={star.sample_count} "
          f"ell_star={star.ell_star} budget={spec.budget} delta={spec.delta:.5f}")
    print(f"wrote layout to {ns.layout} and codeword to {ns.out}")
    return 0


def _cmd_rbldc_decode(ns) -> int:
    spec = load_composed_layout(ns.layout)
    codec, k, bits = load_codeword(ns.word)
    if codec != "composed" or k != spec.k:
        raise UsageError(f"codeword ({codec}, k={k}) does not match layout (composed, k={spec.k})")
    iv = Interval.parse(ns.interval)
    oracle = CountingOracle(bits)
    got = rb_decode(oracle, iv, spec, _stream(ns, "rbldc-decode"))
    a_p, A_p = spec.paldc_spec.a, spec.paldc_spec.A
    span = (iv.R - 1) // a_p - (iv.L - 1) // a_p + 1
    print(f"interval {iv.L}:{iv.R} queries={oracle.tally} "
          f"(= ell_star {spec.star.ell_star} + {span} blocks * {A_p}; "
          f"bound ell_star + length*alpha_P = {spec.star.ell_star + iv.length * spec.alpha_p:.0f})")
    if ns.out:
        _write_message(ns.out, got)
        print(f"wrote {iv.length} bits to {ns.out}")
    else:
        print(_bits_str(got))
    return 0


# ---------------- games ----------------


def _cmd_game_paldc(ns) -> int:
    kinds = [kind.strip() for kind in ns.channel.split(",") if kind.strip()]
    channels = [_channel_from(ns, kind) for kind in kinds]
    mr_params = _mr_params(ns) if ns.codec == "multiround" else None
    result = run_paldc_sec_game(
        ns.codec, ns.k, channels, ns.q, ns.trials, ns.seed,
        epsilon=ns.epsilon, mr_params=mr_params,
        unaligned_per_round=ns.unaligned, force_key_reuse=ns.force_key_reuse,
    )
    worst = result.worst
    print(f"codec game: codec={ns.codec} k={ns.k} q={ns.q} trials={ns.trials} "
          f"delta={ns.delta} channels={','.join(kinds)} epsilon={ns.epsilon}")
    print(f"decodes={len(result.records)} worst interval failure={worst[0]:.4f} "
          f"(channel={worst[1]}, interval {worst[2]}:{worst[3]})")
    print(f"game output = {result.output}")
    _maybe_write(result.records, ns)
    if getattr(ns, "summary", None):
        write_summary(result.summary(), ns.summary)
        print(f"wrote summary to {ns.summary}")
    return 1 if result.output else 0


def _cmd_game_rse(ns) -> int:
    key = rse_gen(ns.noise_weight, ns.delta, rng=_stream(ns, "rse-game-key"),
                  m=ns.m, n=ns.n, t=ns.t)
    report = run_rse_game(key, ns.q, ns.reps, ns.seed, null=ns.null)
    mode = "null experiment (uniform both arms)" if ns.null else "real-vs-uniform"
    print(f"rse game ({mode}): n={report['n']} k_dim={report['k_dim']} "
          f"q={report['q']} reps={report['reps']} 3sigma={3 * report['sigma']:.4f}")
    bad = 0
    for name, row in report["distinguishers"].items():
        marker = "ok" if row["within_3_sigma"] else "ADVANTAGE"
        print(f"  {name:18s} p_hat={row['p_hat']:.4f} advantage={row['advantage']:.4f} [{marker}]")
        bad += ns.null and not row["within_3_sigma"]
    if getattr(ns, "summary", None):
        write_summary(report, ns.summary)
        print(f"wrote summary to {ns.summary}")
    if bad:
        print("ASSERTION FAILED: null-experiment advantage outside 3 sigma", file=sys.stderr)
        return 1
    return 0


def _cmd_game_adp(ns) -> int:
    root = _stream(ns, "adp-game")
    for i in range(ns.samples):
        sub = root.substream("sample", i)
        b = int(sub.bits(1)[0])
        R, c, witness = adp_sample(ns.k_dim, ns.n, ns.noise_weight, b, sub, with_witness=True)
        if R.shape != (ns.k_dim, ns.n) or c.shape != (ns.n,):
            print("ASSERTION FAILED: instance dimensions", file=sys.stderr)
            return 1
        if b == 0:
            x, e = witness
            if int(e.sum()) != ns.noise_weight or not np.array_equal(
                    (gf2_matmul(x[None, :], R)[0] ^ e), c):
                print("ASSERTION FAILED: structured-arm witness", file=sys.stderr)
                return 1
    print(f"adp sampler: {ns.samples} samples, k_dim={ns.k_dim} n={ns.n} "
          f"noise_weight={ns.noise_weight}; invariants ok on 100% of samples")
    return 0


def _cmd_game_gd(ns) -> int:
    root = _stream(ns, "gd-game")
    n = 1 << ns.m
    k_dim = n - ns.m * ns.t
    for i in range(ns.samples):
        sub = root.substream("sample", i)
        b = int(sub.bits(1)[0])
        mat, code = gd_sample(ns.m, ns.t, b, sub, with_witness=True)
        if mat.shape != (k_dim, n):
            print("ASSERTION FAILED: generator dimensions", file=sys.stderr)
            return 1
        if b == 1 and not rows_in_code(code, mat):
            print("ASSERTION FAILED: Goppa parity identity", file=sys.stderr)
            return 1
    print(f"gd sampler: {ns.samples} samples, m={ns.m} t={ns.t} "
          f"(k_dim={k_dim}, n={n}); invariants ok on 100% of samples")
    return 0


# ---------------- bench ----------------


def _bench_worker(payload):
    codec, k, channel, q, trial, seed, mr_params, unaligned = payload
    return paldc_trial(
        codec, k, channel, q, trial, seed,
        mr_params=mr_params, unaligned_per_round=unaligned,
    )


def _mr_params(ns) -> dict:
    out = {}
    for name in ("a", "noise_weight", "b", "m", "n", "t"):
        value = getattr(ns, name, None)
        if value is not None:
            out[name] = value
    if getattr(ns, "delta_rse", None) is not None:
        out["delta"] = ns.delta_rse
    return out


def _cmd_bench(ns) -> int:
    channel = _channel_from(ns)
    mr_params = _mr_params(ns) if ns.codec == "multiround" else None
    payloads = [
        (ns.codec, ns.k, channel, ns.q, trial, int(ns.seed), mr_params, ns.unaligned)
        for trial in range(ns.trials)
    ]
    if ns.jobs > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            chunks = list(pool.map(_bench_worker, payloads))
    else:
        chunks = [_bench_worker(p) for p in payloads]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: r.trial)  # canonical order, independent of --jobs
    write_csv(records, ns.out)
    summary = summarize(records)
    print(f"bench: codec={ns.codec} k={ns.k} delta={ns.delta} channel={channel.kind} "
          f"trials={ns.trials} q={ns.q} jobs={ns.jobs} seed={ns.seed}")
    print(f"wrote {len(records)} records to {ns.out}")
    for label, row in summary.items():
        print(f"  {label}: failure_rate={row['failure_rate']:.5f} "
              f"mean_locality={row['mean_amortized_locality']:.4f} "
              f"max_locality={row['max_amortized_locality']:.4f}")
    if ns.summary:
        write_summary(summary, ns.summary)
        print(f"wrote summary to {ns.summary}")
    return 0


# ---------------- bound table ----------------


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _cmd_bound_table(ns) -> int:
    print("A,delta_code,delta_channel,printed,standard")
    for A in _ints(ns.A):
        for dc in _floats(ns.delta_code):
            for d in _floats(ns.delta):
                pair = hypergeometric_bound(dc, d, A)
                print(f"{A},{dc},{d},{pair.printed:.3e},{pair.standard:.3e}")
    return 0


# ---------------- report ----------------


def _cmd_report(ns) -> int:
    from .report import render_report  # matplotlib import deferred until needed

    result = render_report(ns.csv, ns.out)
    for fig in result["figures"]:
        print(f"wrote {fig}")
    print(f"wrote {result['summary_path']}")
    return 0


# ---------------- parser ----------------


def _add_common(sub, *, seed=True):
    sub.add_argument("--config", default=None,
                     help="flat key=value file; explicit flags win over it")
    if seed:
        sub.add_argument("--seed", type=int, default=0,
                         help="root seed (int); drives every random draw")


def _add_channel_flags(sub, *, default_delta):
    sub.add_argument("--delta", type=float, default=default_delta,
                     help="channel budget as a fraction of the codeword (flips = floor(delta*n))")
    sub.add_argument("--channel", default="uniform_random",
                     help=f"channel kind(s): one of {', '.join(CHANNEL_KINDS)}")
    sub.add_argument("--block-len", type=int, default=None,
                     help="block size in bits (block_targeting channels)")
    sub.add_argument("--target-block", type=int, default=None,
                     help="pin the victim block index (block_targeting)")
    sub.add_argument("--split", type=int, default=None,
                     help="boundary index for left/right dump channels")


def _add_mr_flags(sub):
    sub.add_argument("--a", type=int, default=None, help="plaintext bits per block")
    sub.add_argument("--b", type=int, default=None, help="nonce bits per block (auto if omitted)")
    sub.add_argument("--noise-weight", type=int, default=None,
                     help="embedded noise weight lambda per block")
    sub.add_argument("--delta-rse", type=float, default=None,
                     help="per-block channel tolerance of the inner code")
    sub.add_argument("--m", type=int, default=None, help="field degree of the inner code")
    sub.add_argument("--n", type=int, default=None, help="inner code length in bits")
    sub.add_argument("--t", type=int, default=None, help="inner code correction radius (deg g)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aldc",
        description="Amortized locally decodable codes: demos, private codecs, "
                    "security games, sweeps, and reports.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("hadamard-demo", help="amortized Hadamard decoding under a channel")
    p.add_argument("--k", type=int, default=12, help="message length in bits (codeword 2^k - 1)")
    p.add_argument("--kappa", type=int, default=3, help="batch size: positions decoded per call")
    p.add_argument("--trials", type=int, default=1000, help="number of decode trials")
    _add_channel_flags(p, default_delta=0.02)
    p.add_argument("--out", default=None, help="write per-trial records CSV here")
    p.add_argument("--summary", default=None, help="write JSON summary here")
    _add_common(p)
    p.set_defaults(handler=_cmd_hadamard_demo)

    p = subs.add_parser("paldc", help="private codec key/encode/decode")
    psubs = p.add_subparsers(dest="paldc_command", required=True)

    pk = psubs.add_parser("keygen", help="sample a key and write it to a file")
    pk.add_argument("--codec", choices=("onetime", "multiround"), required=True)
    pk.add_argument("--k", type=int, required=True, help="message length in bits")
    pk.add_argument("--out", required=True, help="key file path")
    pk.add_argument("--q", type=int, default=1, help="round budget (multiround)")
    pk.add_argument("--block-a", type=int, default=DEFAULT_SPEC.a,
                    help="one-time block plaintext bits")
    pk.add_argument("--block-A", type=int, default=DEFAULT_SPEC.A,
                    help="one-time block codeword bits")
    pk.add_argument("--symbol-bits", type=int, default=DEFAULT_SPEC.symbol_bits,
                    help="one-time block code symbol width")
    _add_mr_flags(pk)
    _add_common(pk)
    pk.set_defaults(handler=_cmd_paldc_keygen)

    pe = psubs.add_parser("encode", help="encode one message; burns a use/round on the key file")
    pe.add_argument("--key", required=True)
    pe.add_argument("--out", required=True, help="codeword file path")
    pe.add_argument("--message", default=None, help="ASCII 0/1 file with exactly k bits")
    pe.add_argument("--random", action="store_true", help="draw the message from --seed")
    pe.add_argument("--message-out", default=None, help="save the random message here")
    _add_common(pe)
    pe.set_defaults(handler=_cmd_paldc_encode)

    pd = psubs.add_parser("decode", help="decode an interval, counting oracle queries")
    pd.add_argument("--key", required=True)
    pd.add_argument("--word", required=True, help="codeword file path")
    pd.add_argument("--interval", required=True, help="1-based inclusive L:R")
    pd.add_argument("--out", default=None, help="write recovered bits here instead of stdout")
    _add_common(pd, seed=False)
    pd.set_defaults(handler=_cmd_paldc_decode)

    p = subs.add_parser("rse", help="robust secret encryption self-test")
    rsubs = p.add_subparsers(dest="rse_command", required=True)
    rt = rsubs.add_parser("test", help="roundtrip at the full design radius")
    rt.add_argument("--m", type=int, default=5, help="field degree")
    rt.add_argument("--n", type=int, default=32, help="code length in bits")
    rt.add_argument("--t", type=int, default=4, help="correction radius (deg g)")
    rt.add_argument("--noise-weight", type=int, default=2, help="embedded noise weight lambda")
    rt.add_argument("--delta", type=float, default=1 / 16, help="channel fraction tolerated")
    rt.add_argument("--trials", type=int, default=1000)
    _add_common(rt)
    rt.set_defaults(handler=_cmd_rse_test)

    p = subs.add_parser("rbldc", help="resource-bounded composed codec")
    rbsubs = p.add_subparsers(dest="rbldc_command", required=True)
    re_ = rbsubs.add_parser("encode", help="encode: puzzle half + keyed message half")
    re_.add_argument("--k", type=int, required=True, help="message length in bits")
    re_.add_argument("--puzzle-t", type=int, default=10000,
                     help="sequential squarings required of the decoder")
    re_.add_argument("--eps-star", type=float, default=0.2,
                     help="target failure of the majority vote")
    re_.add_argument("--p-est", type=float, default=1 / 3,
                     help="per-copy kill fraction the budget is sized against")
    re_.add_argument("--delta-p", type=float, default=None,
                     help="message-half tolerance (defaults to the p-est load rule)")
    re_.add_argument("--layout", required=True, help="public layout file path")
    re_.add_argument("--out", required=True, help="codeword file path")
    re_.add_argument("--message", default=None)
    re_.add_argument("--random", action="store_true")
    re_.add_argument("--message-out", default=None)
    _add_common(re_)
    re_.set_defaults(handler=_cmd_rbldc_encode)

    rd = rbsubs.add_parser("decode", help="solve the puzzle, then decode an interval")
    rd.add_argument("--layout", required=True)
    rd.add_argument("--word", required=True)
    rd.add_argument("--interval", required=True, help="1-based inclusive L:R")
    rd.add_argument("--out", default=None)
    _add_common(rd)
    rd.set_defaults(handler=_cmd_rbldc_decode)

    p = subs.add_parser("game", help="run a security game as an experiment")
    gsubs = p.add_subparsers(dest="game_command", required=True)

    gp = gsubs.add_parser("paldc", help="channel adversaries vs a private codec")
    gp.add_argument("--codec", choices=("onetime", "multiround"), default="onetime")
    gp.add_argument("--k", type=int, default=1024)
    gp.add_argument("--q", type=int, default=1, help="rounds per trial")
    gp.add_argument("--trials", type=int, default=10)
    gp.add_argument("--epsilon", type=float, default=0.05,
                    help="per-interval failure the game tests against")
    gp.add_argument("--unaligned", type=int, default=16,
                    help="random unaligned grid intervals per round")
    gp.add_argument("--force-key-reuse", action="store_true",
                    help="reuse the one-time key across rounds (demonstrates the q=1 guard)")
    _add_channel_flags(gp, default_delta=0.02)
    _add_mr_flags(gp)
    gp.add_argument("--out", default=None, help="records CSV path")
    gp.add_argument("--summary", default=None, help="JSON summary path")
    _add_common(gp)
    gp.set_defaults(handler=_cmd_game_paldc)

    gr = gsubs.add_parser("rse", help="real-vs-uniform distinguisher advantages")
    gr.add_argument("--m", type=int, default=5)
    gr.add_argument("--n", type=int, default=32)
    gr.add_argument("--t", type=int, default=4)
    gr.add_argument("--noise-weight", type=int, default=2)
    gr.add_argument("--delta", type=float, default=1 / 16)
    gr.add_argument("--q", type=int, default=8, help="samples per repetition (one hidden bit)")
    gr.add_argument("--reps", type=int, default=2000)
    gr.add_argument("--null", action="store_true",
                    help="uniform both arms: every advantage must vanish")
    gr.add_argument("--summary", default=None)
    _add_common(gr)
    gr.set_defaults(handler=_cmd_game_rse)

    ga = gsubs.add_parser("adp", help="noisy-product challenge sampler check")
    ga.add_argument("--k-dim", type=int, default=64)
    ga.add_argument("--n", type=int, default=128)
    ga.add_argument("--noise-weight", type=int, default=4)
    ga.add_argument("--samples", type=int, default=200)
    _add_common(ga)
    ga.set_defaults(handler=_cmd_game_adp)

    gg = gsubs.add_parser("gd", help="Goppa-vs-random generator sampler check")
    gg.add_argument("--m", type=int, default=5)
    gg.add_argument("--t", type=int, default=4)
    gg.add_argument("--samples", type=int, default=20)
    _add_common(gg)
    gg.set_defaults(handler=_cmd_game_gd)

    p = subs.add_parser("bench", help="record a decode sweep to CSV (+ JSON summary)")
    p.add_argument("--codec", choices=("onetime", "multiround"), default="onetime")
    p.add_argument("--k", type=int, default=1024)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--q", type=int, default=1, help="rounds per trial")
    p.add_argument("--unaligned", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel trial workers; output is canonical regardless")
    _add_channel_flags(p, default_delta=0.02)
    _add_mr_flags(p)
    p.add_argument("--out", default="bench.csv", help="records CSV path")
    p.add_argument("--summary", default=None, help="JSON summary path")
    _add_common(p)
    p.set_defaults(handler=_cmd_bench)

    p = subs.add_parser("bound-table", help="hypergeometric overflow bounds")
    p.add_argument("--A", required=True, help="block size(s) in bits, comma separated")
    p.add_argument("--delta-code", required=True,
                   help="per-block tolerated fraction(s), comma separated")
    p.add_argument("--delta", required=True,
                   help="channel fraction(s), comma separated")
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_bound_table)

    p = subs.add_parser("report", help="render figures + JSON digest from a records CSV")
    p.add_argument("--csv", required=True, help="records CSV produced by bench/game")
    p.add_argument("--out", default=None, help="output directory (default: beside the CSV)")
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        _merge_config(ns, list(sys.argv[1:] if argv is None else argv))
        return ns.handler(ns)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DecodeFailure as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
