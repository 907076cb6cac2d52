#!/usr/bin/env python3
# Copyright 2026 The Mosaic Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent re-derivation of the mock backend formulas.

Prints the frozen values used by tests/unit/backends_test.cpp and
tests/unit/evaluator_test.cpp. Run with: python3 mock_oracle.py [--search]
"""
import math
import struct
import sys

M64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = 0xcbf29ce484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001b3) & M64
    return h


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & M64

    def next(self):
        self.state = (self.state + 0x9e3779b97f4a7c15) & M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xbf58476d1ce4e5b9) & M64
        z = ((z ^ (z >> 27)) * 0x94d049bb133111eb) & M64
        return z ^ (z >> 31)

    def bounded(self, n):
        threshold = ((1 << 64) - n) % n
        while True:
            r = self.next()
            if r >= threshold:
                return r % n


def unit_vector(seed):
    rng = SplitMix64(seed)
    raw = [((rng.next() >> 11) / 2.0**53) * 2.0 - 1.0 for _ in range(512)]
    norm = math.sqrt(sum(v * v for v in raw))
    return [v / norm for v in raw]


def encode_text(text):
    return unit_vector(fnv1a64(text.encode()))


def image_key(w, h, data):
    return fnv1a64(struct.pack("<II", w, h) + bytes(data))


def encoding_id(w, h, data):
    return "%016x" % image_key(w, h, data)


def mock_mask(enc_id, w, h, obj):
    rng = SplitMix64(fnv1a64(obj.encode()) ^ fnv1a64(enc_id.encode()))
    x0 = rng.next() % w
    y0 = rng.next() % h
    rw = 1 + rng.next() % (w - x0)
    rh = 1 + rng.next() % (h - y0)
    return x0, y0, rw, rh


def deltas(style):
    h = fnv1a64(style.encode())
    return tuple(((h >> (8 * c)) % 128) - 64 for c in range(3))


def crop_side(bw, bh):
    m = min(bw, bh)
    if m < 16:
        return m
    side = math.floor(0.5 * m + 0.5)
    return max(16, min(side, m))


def sample_crops(x0, y0, x1, y1, n, seed, ordinal):
    bw, bh = x1 - x0 + 1, y1 - y0 + 1
    side = crop_side(bw, bh)
    rng = SplitMix64(seed ^ ((0x9e3779b97f4a7c15 * (ordinal + 1)) & M64))
    out = []
    for _ in range(n):
        x = x0 + rng.bounded(bw - side + 1)
        y = y0 + rng.bounded(bh - side + 1)
        out.append((x, y, side))
    return out


def main():
    print("fnv('') =", hex(fnv1a64(b"")))
    print("fnv('watercolor') =", hex(fnv1a64(b"watercolor")))
    a, b = encode_text("a"), encode_text("b")
    print("encode_text('a')[0:3] = %.17g %.17g %.17g" % tuple(a[:3]))
    print("cos(a,b) = %.17g" % sum(x * y for x, y in zip(a, b)))
    img = list(range(1, 7))
    print("encoding_id(2x1, 1..6) =", encoding_id(2, 1, img))
    img[4] ^= 1
    print("encoding_id(2x1, flipped) =", encoding_id(2, 1, img))
    zeros = [0] * (16 * 16 * 3)
    eid = encoding_id(16, 16, zeros)
    print("encoding_id(16x16 zeros) =", eid)
    print("mask(tree) x0,y0,w,h =", mock_mask(eid, 16, 16, "tree"))
    print("mask(sky)  x0,y0,w,h =", mock_mask(eid, 16, 16, "sky"))
    print("deltas('watercolor') =", deltas("watercolor"))
    print("crops(bbox 10,20..109,79; seed 42; ord 0) =",
          sample_crops(10, 20, 109, 79, 8, 42, 0))
    print("crops(bbox 0,0..9,9; seed 42; ord 1) =",
          sample_crops(0, 0, 9, 9, 8, 42, 1))
    if "--search" in sys.argv:
        want = {(0, 0, 0): None, (10, -5, 0): None}
        i = 0
        while any(v is None for v in want.values()):
            p = "style-%d" % i
            d = deltas(p)
            if d in want and want[d] is None:
                want[d] = p
                print("deltas", d, "<-", repr(p))
            i += 1


if __name__ == "__main__":
    main()
