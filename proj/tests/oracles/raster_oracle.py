#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Independent evaluation of the NR global frequency raster and GSCN mapping.

Uses exact rationals; the outputs are frozen into tests/unit/raster_test.cpp and
the acceptance suite. Constants: F_REF = F_REF-Offs + dF_Global * (N_REF - N_REF-Offs)
with (3000 MHz, 15 kHz, 600000) for 3000-24250 MHz; SS_REF = 3000 MHz + N * 1.44 MHz,
GSCN = 7499 + N.
"""
from fractions import Fraction as F


def arfcn_mhz(n):
    assert 600000 <= n < 2016667
    return F(3000) + F(15, 1000) * (n - 600000)


def gscn_mhz(g):
    assert 7499 <= g <= 22255
    return F(3000) + F(144, 100) * (g - 7499)


def fmt(x):
    return f"{float(x):.3f}"


for n in (600000, 743333, 750000, 795000, 750001):
    print("arfcn", n, fmt(arfcn_mhz(n)), "kHz", arfcn_mhz(n) * 1000)
for g in (7499, 8993, 9530, 9061, 9062):
    print("gscn", g, fmt(gscn_mhz(g)), "kHz", gscn_mhz(g) * 1000)

freqs = [arfcn_mhz(n) for n in range(743333, 795001)]
print("n46 arfcn count", len(freqs), "min", fmt(min(freqs)), "max", fmt(max(freqs)))
ss = [gscn_mhz(g) for g in range(8993, 9531)]
print("n46 gscn count", len(ss), "first", fmt(ss[0]), "last", fmt(ss[-1]))
print("ss strictly inside arfcn span:", all(min(freqs) < f < max(freqs) for f in ss))
# off-grid 5250.007 MHz
off = (F(5250007, 1000) - 3000) / F(15, 1000) + 600000
print("5250.007 ->", float(off), "neighbours", int(off), int(off) + 1)
