"""Plain-text file formats.

Every file starts with a field header ``q=<int> m=<int> modulus=<hex>``,
possibly followed by more key=value pairs on the same line. Extension
field elements are written as fixed-width hex numbers concatenated on a
line; rows over the base field are packed into one hex number (entry j
is the base-q digit j).
"""

import numpy as np

from .finite_field import GF, digits, undigits
from .gabidulin import ErasureSideInfo


class FormatError(ValueError):
    def __init__(self, msg, line=None, path=None):
        where = ""
        if path is not None:
            where += str(path)
        if line is not None:
            where += ":%d" % line
        super().__init__("%s: %s" % (where, msg) if where else msg)
        self.msg, self.line, self.path = msg, line, path

    def at(self, path):
        """Same error tagged with the file it came from."""
        return FormatError(self.msg, self.line, path)


def parse_pairs(text, lineno=None):
    out = {}
    for tok in text.split():
        if "=" not in tok:
            raise FormatError("expected key=value, got %r" % tok, lineno)
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _int(d, key, lineno, base=10):
    if key not in d:
        raise FormatError("missing %s=" % key, lineno)
    try:
        return int(d[key], base)
    except ValueError:
        raise FormatError("bad value for %s: %r" % (key, d[key]), lineno) from None


def field_header(F):
    return F.header()


def field_from_pairs(d, lineno=1):
    q, m = _int(d, "q", lineno), _int(d, "m", lineno)
    mod = _int(d, "modulus", lineno, 16)
    try:
        return GF(q, m, mod)
    except ValueError as e:
        raise FormatError(str(e), lineno) from None


def elem_width(F):
    return len("%x" % (F.order - 1))


def format_elems(F, row):
    w = elem_width(F)
    return "".join("%0*x" % (w, x) for x in row)


def parse_elems(F, text, lineno, count=None):
    w = elem_width(F)
    text = text.strip()
    if len(text) % w:
        raise FormatError("row length %d is not a multiple of %d" % (len(text), w), lineno)
    try:
        row = [int(text[i:i + w], 16) for i in range(0, len(text), w)]
    except ValueError:
        raise FormatError("row is not hexadecimal", lineno) from None
    if any(x >= F.order for x in row):
        raise FormatError("element out of range", lineno)
    if count is not None and len(row) != count:
        raise FormatError("row has %d elements, expected %d" % (len(row), count), lineno)
    return row


def row_width(q, length):
    return len("%x" % (q ** length - 1)) if length else 1


def format_base_row(q, row):
    return "%0*x" % (row_width(q, len(row)), undigits(row, q))


def parse_base_row(q, text, length, lineno):
    try:
        x = int(text.strip(), 16)
    except ValueError:
        raise FormatError("row is not hexadecimal", lineno) from None
    if x >= q ** length:
        raise FormatError("row value out of range", lineno)
    return digits(x, q, length)


def _lines(path):
    with open(path) as f:
        return [(i + 1, ln.rstrip("\n")) for i, ln in enumerate(f) if ln.strip() and not ln.startswith("#")]


# --- words (info or code sequences)

def write_words(path, F, rows, n, k):
    with open(path, "w") as f:
        f.write("%s n=%d k=%d\n" % (F.header(), n, k))
        for r in rows:
            f.write(format_elems(F, r) + "\n")


def read_words(path):
    """Returns (field, n, k, rows)."""
    lines = _lines(path)
    if not lines:
        raise FormatError("empty file", path=path)
    ln, head = lines[0]
    try:
        d = parse_pairs(head, ln)
        F = field_from_pairs(d, ln)
        n, k = _int(d, "n", ln), _int(d, "k", ln)
        rows = [parse_elems(F, t, i) for i, t in lines[1:]]
    except FormatError as e:
        raise e.at(path) from None
    return F, n, k, rows


# --- code descriptor

def write_code(path, code, N):
    with open(path, "w") as f:
        f.write(code.field.header() + "\n")
        f.write("%d %d %d %d %d\n" % (code.n, code.k, code.k1, code.phi, N))
        f.write(format_elems(code.field, code.g) + "\n")


def read_code(path):
    """Returns (PumCode, N)."""
    from .pum import PumCode

    lines = _lines(path)
    if len(lines) < 3:
        raise FormatError("code descriptor needs three lines", path=path)
    try:
        F = field_from_pairs(parse_pairs(lines[0][1], lines[0][0]), lines[0][0])
        ln, t = lines[1]
        try:
            n, k, k1, phi, N = (int(x) for x in t.split())
        except ValueError:
            raise FormatError("expected 'n k k1 phi N'", ln) from None
        g = parse_elems(F, lines[2][1], lines[2][0], n)
        try:
            code = PumCode(F, n, k, k1, phi, g)
        except ValueError as e:
            raise FormatError(str(e), ln) from None
    except FormatError as e:
        raise e.at(path) from None
    return code, N


# --- erasure side information

def write_side(path, F, n, sides):
    with open(path, "w") as f:
        f.write("%s n=%d blocks=%d\n" % (F.header(), n, len(sides)))
        for i, s in enumerate(sides):
            f.write("block=%d rho=%d gamma=%d\n" % (i, s.rho, s.gamma))
            for col in s.A_R.T:
                f.write(format_base_row(F.q, col) + "\n")
            for row in s.B_C:
                f.write(format_base_row(F.q, row) + "\n")


def read_side(path):
    lines = _lines(path)
    try:
        ln, head = lines[0]
        d = parse_pairs(head, ln)
        F = field_from_pairs(d, ln)
        n = _int(d, "n", ln)
        sides, pos = [], 1
        while pos < len(lines):
            ln, t = lines[pos]
            b = parse_pairs(t, ln)
            rho, gamma = _int(b, "rho", ln), _int(b, "gamma", ln)
            body = lines[pos + 1:pos + 1 + rho + gamma]
            if len(body) != rho + gamma:
                raise FormatError("block is truncated", ln)
            A = [parse_base_row(F.q, x, F.m, i) for i, x in body[:rho]]
            B = [parse_base_row(F.q, x, n, i) for i, x in body[rho:]]
            sides.append(ErasureSideInfo(np.array(A, dtype=np.int64).reshape(rho, F.m).T,
                                         np.array(B, dtype=np.int64).reshape(gamma, n)))
            pos += 1 + rho + gamma
    except FormatError as e:
        raise e.at(path) from None
    except IndexError:
        raise FormatError("empty file", path=path) from None
    return F, n, sides


# --- captured shots

def write_shots(path, F, n, shots, affine=False):
    width = n + F.m - (1 if affine else 0)
    with open(path, "w") as f:
        f.write("%s n=%d shots=%d affine=%d\n" % (F.header(), n, len(shots), int(affine)))
        for i, s in enumerate(shots):
            f.write("shot=%d n_i=%d\n" % (i, s.n_i))
            for row in s.Y:
                f.write(format_base_row(F.q, row[:width]) + "\n")


def read_shots(path):
    from .network import ReceiverShot

    lines = _lines(path)
    try:
        ln, head = lines[0]
        d = parse_pairs(head, ln)
        F = field_from_pairs(d, ln)
        n = _int(d, "n", ln)
        affine = bool(int(d.get("affine", "0")))
        width = n + F.m - (1 if affine else 0)
        shots, pos = [], 1
        while pos < len(lines):
            ln, t = lines[pos]
            b = parse_pairs(t, ln)
            if "shot" not in b:
                raise FormatError("expected a shot=<i> header", ln)
            r = _int(b, "n_i", ln)
            body = lines[pos + 1:pos + 1 + r]
            if len(body) != r:
                raise FormatError("shot is truncated", ln)
            Y = np.array([parse_base_row(F.q, x, width, i) for i, x in body],
                         dtype=np.int64).reshape(r, width)
            shots.append(ReceiverShot(Y, n, F.q, affine))
            pos += 1 + r
    except FormatError as e:
        raise e.at(path) from None
    except IndexError:
        raise FormatError("empty file", path=path) from None
    return F, n, shots, affine
