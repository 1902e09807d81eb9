"""Counter-based randomness with a stable tree structure.

Determinism contract: every rand() draw is a pure function of

    (variation tag, path of child ordinals from the root frame, draw index)

so results never depend on evaluation order, chunking or worker count.  The
mixer is splitmix64; the root seed is the first 8 bytes (big-endian) of
SHA-256 of the variation tag, so tags behave like named universes: same tag,
same artwork, forever.

Python's built-in hash() is banned here: it is salted per process.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15  # splitmix64 increment
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_DRAW_SALT = 0xD6E8FEB86659FD93  # distinguishes draw-counter mixing from child mixing

_INV_2_53 = 2.0 ** -53


def splitmix64(x: int) -> int:
    """One splitmix64 finalization round (no internal state)."""
    x = (x + _GAMMA) & MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


def seed_from_tag(tag: str) -> int:
    """Root seed for a variation tag; '' is the default universe."""
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def child_hash(parent: int, ordinal: int) -> int:
    """Hash for the ordinal-th child frame spawned under parent."""
    if ordinal < 0:
        raise ValueError(f"child ordinal must be >= 0, got {ordinal}")
    return splitmix64(parent ^ (((ordinal + 1) * _GAMMA) & MASK64))


def draw_bits(frame_hash: int, index: int) -> int:
    """Raw 64-bit output for the index-th draw inside one frame."""
    if index < 0:
        raise ValueError(f"draw index must be >= 0, got {index}")
    return splitmix64(frame_hash ^ (((index + 1) * _DRAW_SALT) & MASK64))


def draw_unit(frame_hash: int, index: int) -> float:
    """Uniform float in [0, 1) with full 53-bit mantissa resolution."""
    return (draw_bits(frame_hash, index) >> 11) * _INV_2_53


def draw_uniform(frame_hash: int, index: int, lo: float, hi: float) -> float:
    """Uniform in [lo, hi); lo == hi collapses to the point lo."""
    return lo + draw_unit(frame_hash, index) * (hi - lo)


# --- vector twins ----------------------------------------------------------
#
# Same arithmetic on uint64 arrays.  numpy wraps unsigned overflow silently
# for array operands, which is exactly two's-complement mod 2^64, but we
# still ride under errstate to silence overflow chatter on some builds.

_U_GAMMA = np.uint64(_GAMMA)
_U_MIX1 = np.uint64(_MIX1)
_U_MIX2 = np.uint64(_MIX2)
_U_DRAW_SALT = np.uint64(_DRAW_SALT)


def _splitmix64_array(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = x + _U_GAMMA
        x = (x ^ (x >> np.uint64(30))) * _U_MIX1
        x = (x ^ (x >> np.uint64(27))) * _U_MIX2
        return x ^ (x >> np.uint64(31))


def child_hash_array(parent, ordinals: np.ndarray) -> np.ndarray:
    """Vector child_hash: parent may be a scalar or a matching uint64 array."""
    ordinals = np.asarray(ordinals, dtype=np.uint64)
    parent = np.asarray(parent, dtype=np.uint64)
    with np.errstate(over="ignore"):
        mixed = parent ^ ((ordinals + np.uint64(1)) * _U_GAMMA)
    return _splitmix64_array(mixed)


def draw_unit_array(frame_hashes: np.ndarray, indexes) -> np.ndarray:
    """Vector draw_unit: per-lane frame hashes and per-lane draw indexes."""
    frame_hashes = np.asarray(frame_hashes, dtype=np.uint64)
    indexes = np.asarray(indexes, dtype=np.uint64)
    with np.errstate(over="ignore"):
        mixed = frame_hashes ^ ((indexes + np.uint64(1)) * _U_DRAW_SALT)
    bits = _splitmix64_array(mixed)
    return (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53
