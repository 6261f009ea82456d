#!/usr/bin/env python3
"""Writes the golden StateFrame fixtures from the closed-form ciphertext.

Amplitude x of encrypt(m) under (k, d) is

    (-1)^popcount(m & x) * (-1)^[x == k] * (-1)^[x in mask] / sqrt(N)

with x in mask iff floor(((x - k) mod N) / d) is even. The imaginary part is
a zero whose sign bit records the two negations applied to it (the key flip
and the mask flip), matching how the encoder negates whole amplitudes.
"""
import struct
import sys
from pathlib import Path

CASES = [
    # name, n, m, k, r
    ("frame_n4", 4, 11, 0x5, 2),
    ("frame_n8", 8, 0xA7, 0x3C, 8),
]


def frame(n, m, k, r):
    size = 1 << n
    d = size // r
    amp = 2.0 ** (-n / 2)
    out = bytearray(b"QPC1")
    out += struct.pack("<BBH", 1, n, 1)
    for x in range(size):
        in_mask = ((x - k) % size) // d % 2 == 0
        flips = (x == k) + in_mask
        sign = (-1) ** (bin(m & x).count("1") + flips)
        imag = -0.0 if flips % 2 else 0.0
        out += struct.pack("<dd", sign * amp, imag)
    return bytes(out)


def main(dest):
    dest = Path(dest)
    for name, n, m, k, r in CASES:
        (dest / f"{name}.bin").write_bytes(frame(n, m, k, r))
        (dest / f"{name}.key").write_text(f"n={n}\nk={k:x}\nr={r}\n")
        (dest / f"{name}.msg").write_text(f"{m}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent)
