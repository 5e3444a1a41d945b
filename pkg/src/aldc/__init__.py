"""Amortized locally decodable codes with private and resource-bounded layers.

The public surface groups into:

- Hadamard batch decoding (``had_encode`` / ``had_decode``) — the
  information-theoretic baseline whose query count per batch is at most
  one above the batch size.
- Private block codecs (``ot_keygen`` / ``mr_keygen`` families) hitting
  constant amortized locality against shift-then-corrupt channels.
- Robust secret encryption on binary Goppa codes (``rse_gen`` /
  ``rse_encode`` / ``rse_decode``) that absorbs embedded noise plus
  channel noise inside one correction radius.
- The resource-bounded composition (``build_composed_spec`` /
  ``rb_encode`` / ``rb_decode``) that stores a timed puzzle beside the
  keyed half so patient decoders need no shared key.
- Channels, counting oracles, security games, concentration bounds, and
  the CSV/JSON record layer used by the CLI (``aldc``).

Rendering (``aldc.report``) imports matplotlib and is deliberately not
re-exported here so library use stays headless-cheap.
"""

from .bitvec import (
    as_bits,
    bits_from_bytes,
    bits_from_int,
    bits_to_bytes,
    bits_to_int,
    bits_to_symbols,
    symbols_to_bits,
)
from .blockcode import DEFAULT_SPEC, BlockCodeSpec, decode_block, encode_block
from .bounds import (
    BoundPair,
    OverflowResult,
    block_overflow_experiment,
    hypergeometric_bound,
)
from .channels import CHANNEL_KINDS, ChannelModel, corrupt, corrupted_oracle
from .composed import (
    ComposedCodeword,
    ComposedSpec,
    LdcStarSpec,
    build_composed_spec,
    deserialize_puzzle,
    ldcstar_decode,
    ldcstar_encode,
    majority_sample_count,
    rb_decode,
    rb_encode,
    serialize_puzzle,
)
from .crypto import (
    SEED_BYTES,
    Permutation,
    PrfKey,
    Puzzle,
    RandomStream,
    prf_eval,
    prf_gen,
    puzzle_gen,
    puzzle_solve,
    puzzle_solve_counted,
    sample_permutation,
)
from .errors import ConfigError, DecodeFailure, UsageError
from .games import (
    MESSAGE_FIXTURES,
    RSE_DISTINGUISHERS,
    GameResult,
    adp_sample,
    fixture_message,
    gd_sample,
    interval_grid,
    paldc_trial,
    run_paldc_sec_game,
    run_rse_game,
)
from .goppa import (
    GoppaCode,
    RseKey,
    code_from_parts,
    rows_in_code,
    rse_decode,
    rse_encode,
    rse_game_sample,
    rse_gen,
)
from .hadamard import MAX_K, had_decode, had_encode, had_length
from .keyfiles import (
    load_codeword,
    load_composed_layout,
    load_key,
    save_codeword,
    save_composed_layout,
    save_key,
)
from .oracle import CountingOracle
from .paldc import (
    Interval,
    MultiRoundKey,
    OneTimeKey,
    mr_decode,
    mr_encode,
    mr_keygen,
    ot_decode,
    ot_encode,
    ot_keygen,
)
from .records import (
    CSV_HEADER,
    ExperimentRecord,
    format_csv,
    load_csv,
    summarize,
    write_csv,
    write_summary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
