# Minimal-weight primitive polynomials over GF(2), smallest by integer packing.
# Bit i holds the coefficient of x^i.
GF2_MODULI = {
    1: 0x3,
    2: 0x7,
    3: 0xb,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11d,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201b,
    14: 0x402b,
    15: 0x8003,
    16: 0x1002d,
    17: 0x20009,
    18: 0x40081,
    19: 0x80027,
    20: 0x100009,
    21: 0x200005,
    22: 0x400003,
    23: 0x800021,
    24: 0x100001b,
    25: 0x2000009,
    26: 0x4000047,
    27: 0x8000027,
    28: 0x10000009,
    29: 0x20000005,
    30: 0x40000053,
    31: 0x80000009,
    32: 0x1000000c5,
    33: 0x200002001,
    34: 0x400000119,
    35: 0x800000005,
    36: 0x1000000801,
    37: 0x2000000053,
    38: 0x4000000063,
    39: 0x8000000011,
    40: 0x10000000039,
    41: 0x20000000009,
    42: 0x40000000099,
    43: 0x80000000059,
    44: 0x100000000065,
    45: 0x20000000001b,
    46: 0x4000000001c1,
    47: 0x800000000021,
    48: 0x1000000000291,
    49: 0x2000000000201,
    50: 0x400000000001d,
    51: 0x800000000004b,
    52: 0x10000000000009,
    53: 0x20000000000047,
    54: 0x40000000000149,
    55: 0x80000001000001,
    56: 0x100000000000095,
    57: 0x200000000000081,
    58: 0x400000000080001,
    59: 0x800000000000095,
    60: 0x1000000000000003,
    61: 0x2000000000000027,
    62: 0x4000000000000069,
    63: 0x8000000000000003,
    64: 0x1000000000000001b,
}
