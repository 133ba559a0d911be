"""Reference MT19937 outputs from numpy's legacy seeding and CPython's
init_by_array, written as one decimal u32 per line."""
import random
import sys
from pathlib import Path

import numpy as np

out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures")
for seed in (5489, 12345678):
    bits = np.random.MT19937()
    bits._legacy_seeding(seed)
    vals = bits.random_raw(1024)
    (out / f"mt19937_seed{seed}.u32").write_text("".join(f"{int(v)}\n" for v in vals))

# random.seed(int) feeds the 32-bit words of the integer, low word first,
# to init_by_array.
key = [0x123, 0x234, 0x345, 0x456]
r = random.Random(sum(k << (32 * i) for i, k in enumerate(key)))
(out / "mt19937_array_123_234_345_456.u32").write_text("".join(f"{r.getrandbits(32)}\n" for _ in range(1024)))
