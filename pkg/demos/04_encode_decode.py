"""Round trips between circle points and digit words.

Decoding walks a point backwards through inverse letter maps, picking a
cover arc at each step; encoding composes the word and reports the
expansion-disc center together with a hard error radius.
"""

import math
import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moebius_systems import builtin, circle_distance, decode, encode, from_real, stereographic

bi = builtin("binary")

print("the real number 0.3 in the signed binary system:")
point = from_real(0.3)
theta = math.atan2(point.value.imag, point.value.real) % (2 * math.pi)
word = decode(bi, theta, 40)
print("  digits:", bi.alphabet.format(word, unicode_bars=True))
back = encode(bi, word, tol=1e-12)
print(f"  back to a real: {stereographic(back.point).value.real:.12f}"
      f"  (error radius {back.error_radius:.2e})")

print("\none hundred random circle points, 60 digits each:")
rng = random.Random(0)
worst = 0.0
for _ in range(100):
    theta = rng.uniform(0, 2 * math.pi)
    w = decode(bi, theta, 60)
    r = encode(bi, w, tol=1e-10)
    worst = max(worst, circle_distance(r.angle, theta))
print(f"  worst round-trip distance: {worst:.3g}")

print("\nthe representation is redundant: across a cover-arc boundary the")
print("decoder switches digits while the encoded values stay adjacent:")
for x in (0.499, 0.501):
    p = from_real(x)
    theta = math.atan2(p.value.imag, p.value.real) % (2 * math.pi)
    w = decode(bi, theta, 12)
    print(f"  real {x} -> {bi.alphabet.format(w, unicode_bars=True)}")

print("\nthe continued-fraction system expands rationals classically:")
cf = builtin("cf")
from moebius_systems.systems import cf_digit_stream, classical_cf_terms

p, q = 7, 17
print(f"  7/17 has classical terms {classical_cf_terms(p, q)}")
# rationals sit at parabolic fixed points of their expansions, so the
# certificate shrinks only linearly: modest tolerances are the sane ask
res = encode(cf, cf_digit_stream(p, q), tol=1e-6)
print(f"  stream encodes to real {stereographic(res.point).value.real:.9f}"
      f"  after {res.digits_consumed} digits")
