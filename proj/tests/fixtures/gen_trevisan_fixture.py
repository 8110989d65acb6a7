"""Recomputes expected_hex of trevisan_n32_k4.json from the stored design.

GF(16) with x^4 + x + 1; bits are LSB-first within bytes; codeword bit at
index alpha | z << 4 is <p(alpha), z> mod 2.
"""
import json
import pathlib

here = pathlib.Path(__file__).parent
fx = json.loads((here / "trevisan_n32_k4.json").read_text())
spec = json.loads((here / "trevisan_n32_k4_spec.json").read_text())


def bits(data, n):
    return [(data[i // 8] >> (i % 8)) & 1 for i in range(n)]


def mul(a, b):
    r = 0
    for i in range(4):
        if (b >> i) & 1:
            r ^= a << i
    for i in range(7, 3, -1):
        if (r >> i) & 1:
            r ^= 0x13 << (i - 4)
    return r


x = bits(bytes.fromhex(fx["input_hex"]), fx["n"])
seed = bits(bytes.fromhex(fx["seed_hex"]), spec["design"]["d"])
coef = [sum(x[4 * j + i] << i for i in range(4)) for j in range(fx["n"] // 4)]
out = []
for s in spec["design"]["sets"]:
    idx = sum(seed[e] << j for j, e in enumerate(s))
    alpha, z = idx & 15, idx >> 4
    v, power = 0, 1
    for c in coef:
        v ^= mul(c, power)
        power = mul(power, alpha)
    out.append(bin(v & z).count("1") & 1)
print(bytes(sum(out[8 * k + i] << i for i in range(8)) for k in range(len(out) // 8)).hex())
