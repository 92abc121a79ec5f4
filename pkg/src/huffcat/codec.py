"""Self-describing compressed container.

Layout (all integers big-endian)::

    magic        4 bytes   b"HFC1"
    entries      uint16    number of distinct byte values
    table        entries x (uint8 byte value, uint64 count), ascending by byte
    bit_length   uint64    payload length in bits
    payload      ceil(bit_length / 8) bytes, MSB first, zero padded

The decoder rebuilds the Huffman tree from the count table with the same
deterministic tie-break the encoder used.
"""
from __future__ import annotations

import struct

from .errors import ContainerError, TruncatedStream
from .huffman import byte_multiset, code_table, decode, encode, huffman_tree
from .multiset import Multiset

MAGIC = b"HFC1"
_ENTRY = struct.Struct(">BQ")
_U16 = struct.Struct(">H")
_U64 = struct.Struct(">Q")


def pack_bits(bits: str) -> bytes:
    if not bits:
        return b""
    nbytes = (len(bits) + 7) // 8
    return int(bits.ljust(nbytes * 8, "0"), 2).to_bytes(nbytes, "big")


def unpack_bits(payload: bytes, bit_length: int) -> str:
    if not payload:
        return ""
    return format(int.from_bytes(payload, "big"), f"0{8 * len(payload)}b")[:bit_length]


def compress(data: bytes) -> bytes:
    header = bytearray(MAGIC)
    if not data:
        header += _U16.pack(0) + _U64.pack(0)
        return bytes(header)
    counts = byte_multiset(data)
    bits = encode(data, code_table(huffman_tree(counts)))
    header += _U16.pack(len(counts))
    for b in range(256):
        n = counts.get(f"b{b:02x}")
        if n:
            header += _ENTRY.pack(b, n)
    header += _U64.pack(len(bits))
    return bytes(header) + pack_bits(bits)


def read_header(blob: bytes):
    """Parse the header; returns ``(counts, bit_length, payload)``."""
    if blob[:4] != MAGIC:
        raise ContainerError("missing HFC1 magic")
    pos = 4
    try:
        (entries,) = _U16.unpack_from(blob, pos)
        pos += _U16.size
        if entries > 256:
            raise ContainerError(f"table claims {entries} entries; at most 256 byte values exist")
        counts = {}
        last = -1
        for _ in range(entries):
            b, n = _ENTRY.unpack_from(blob, pos)
            pos += _ENTRY.size
            if b <= last or n == 0:
                raise ContainerError("count table must be strictly ascending with non-zero counts")
            counts[f"b{b:02x}"] = n
            last = b
        (bit_length,) = _U64.unpack_from(blob, pos)
        pos += _U64.size
    except struct.error as exc:
        raise TruncatedStream(f"header is truncated: {exc}") from None
    payload = blob[pos:]
    if len(payload) != (bit_length + 7) // 8:
        raise TruncatedStream(f"payload has {len(payload)} bytes, header promises {bit_length} bits")
    return Multiset._trusted(counts), bit_length, payload


def decompress(blob: bytes) -> bytes:
    counts, bit_length, payload = read_header(blob)
    if not counts:
        if bit_length:
            raise ContainerError("empty table with a non-empty payload")
        return b""
    bits = unpack_bits(payload, bit_length)
    if payload and int.from_bytes(payload, "big") & ((1 << (8 * len(payload) - bit_length)) - 1):
        raise ContainerError("non-zero padding bits")
    return decode(bits, huffman_tree(counts), length=counts.norm)
