#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Reference GTP-U byte vectors produced with scapy's GTP dissector.

Run once; the printed hex strings are frozen into tests/unit/gtpu_codec_test.cpp.
"""
from scapy.all import IP, ICMP, Raw
from scapy.contrib.gtp import GTP_U_Header


def hexs(b):
    return " ".join(f"{x:02X}" for x in b)


# 84-byte ICMP echo request, as in `ping -s 56`.
inner = bytes(IP(src="12.1.1.2", dst="172.217.167.78", id=1, ttl=64) /
              ICMP(type=8, id=0x1234, seq=1) / Raw(bytes(range(56))))
assert len(inner) == 84
vectors = [
    (1, inner),
    (0, b""),
    (0xDEADBEEF, b"\x45"),
]
for teid, payload in vectors:
    pkt = GTP_U_Header(teid=teid, gtp_type=255, length=len(payload), E=0, S=0, PN=0) / Raw(payload) \
        if payload else GTP_U_Header(teid=teid, gtp_type=255, length=0, E=0, S=0, PN=0)
    raw = bytes(pkt)
    parsed = GTP_U_Header(raw)
    assert parsed.version == 1 and parsed.PT == 1 and parsed.gtp_type == 255
    assert parsed.teid == teid and parsed.length == len(payload)
    print(f"teid={teid:#x} len={len(raw)} header={hexs(raw[:8])}")
print("inner84=" + inner.hex())

# Version field occupies the top three bits of octet 0.
bad = GTP_U_Header(bytes([0x50, 0xFF, 0, 0, 0, 0, 0, 0]))
print(f"0x50 -> version={bad.version} PT={bad.PT}")
