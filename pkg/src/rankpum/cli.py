"""Command-line entry point: python -m rankpum <command> ...

Exit status: 0 on success, 1 on a decoding failure, 2 on bad input.
"""

import argparse
import sys

import numpy as np

from . import fileio
from .brd import ReceivedBlock, brd_decode
from .finite_field import GF
from .gabidulin import ErasureSideInfo
from .network import affine_lifted_matrix, lifted_matrix, network_decode, operator_channel
from .pum import PumCode
from .simulate import ConfigError, InvariantViolation, SimulationConfig, cmd_simulate, cmd_table3


class DecodeError(Exception):
    pass


def _config(path):
    return SimulationConfig.from_file(path) if path else SimulationConfig()


def do_construct(a):
    cfg = _config(a.config)
    for key in ("q", "m", "n", "k", "k1", "phi", "N"):
        v = getattr(a, key)
        if v is not None:
            setattr(cfg, key, v)
    if a.modulus is not None:
        cfg.modulus = int(a.modulus, 16)
    _, code = cfg.build()
    fileio.write_code(a.output, code, cfg.N)
    print("%r d_sigma=%d d_free=%s" % (code, code.profile.d_sigma, code.profile.d_free))


def do_encode(a):
    code, N = fileio.read_code(a.code)
    F = code.field
    if a.info:
        _, _, _, info = fileio.read_words(a.info)
    elif a.random_info:
        rng = np.random.default_rng(a.seed)
        info = [F.random_vector(rng, code.k) for _ in range(N)]
        fileio.write_words(a.random_info, F, info, code.n, code.k)
    else:
        raise ConfigError("need --info or --random-info")
    if len(info) != N or any(len(u) != code.k for u in info):
        raise fileio.FormatError("info file must hold %d rows of %d elements" % (N, code.k))
    fileio.write_words(a.output, F, code.encode(info), code.n, code.k)


def do_channel(a):
    code, N = fileio.read_code(a.code)
    F = code.field
    _, _, _, cs = fileio.read_words(a.codeword)
    if len(cs) != N + 1:
        raise fileio.FormatError("codeword file must hold %d blocks" % (N + 1))
    cfg = _config(a.config)
    z = a.error_packets if a.error_packets is not None else cfg.error_packets_max
    e = a.erased_packets if a.erased_packets is not None else cfg.erased_packets_max
    affine = a.affine or cfg.affine
    rng = np.random.default_rng(a.seed)
    shots = []
    for c in cs:
        M = F.to_matrix(c)
        X = affine_lifted_matrix(M) if affine else lifted_matrix(M)
        shots.append(operator_channel(X, rng, error_packets=z, erased_packets=e,
                                      q=F.q, affine=affine, n=code.n))
    fileio.write_shots(a.output, F, code.n, shots, affine)


def do_decode(a):
    code, N = fileio.read_code(a.code)
    F = code.field
    if a.shots:
        _, n, shots, affine = fileio.read_shots(a.shots)
        if a.affine:
            for s in shots:
                s.affine = True
        res = network_decode(code, shots, a.trace)
    elif a.received:
        _, _, _, rows = fileio.read_words(a.received)
        if a.side:
            _, _, sides = fileio.read_side(a.side)
        else:
            sides = [ErasureSideInfo.empty(F.m, code.n) for _ in rows]
        if len(sides) != len(rows):
            raise fileio.FormatError("side information has %d blocks, received file %d"
                                     % (len(sides), len(rows)))
        res = brd_decode(code, [ReceivedBlock(tuple(r), s) for r, s in zip(rows, sides)], a.trace)
    else:
        raise ConfigError("need --received or --shots")
    if a.trace:
        sys.stderr.write("\n".join(res.trace) + "\n")
    if not res.success:
        raise DecodeError("decoding failed; block status: %s" % " ".join(res.status))
    fileio.write_words(a.output, F, res.info_sequence, code.n, code.k)


def do_simulate(a):
    cfg = _config(a.config)
    if a.seed is not None:
        cfg.seed = a.seed
    if a.trials is not None:
        cfg.trials = a.trials
    if a.baseline:
        cfg.baseline = True
    if a.affine:
        cfg.affine = True
    text = cmd_simulate(cfg)
    if a.output:
        with open(a.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def do_table3(a):
    sys.stdout.write(cmd_table3(a.seed if a.seed is not None else 2012, a.trace))


def build_parser():
    p = argparse.ArgumentParser(prog="rankpum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write a code descriptor")
    for key in ("q", "m", "n", "k", "k1", "phi", "N"):
        c.add_argument("--" + key, type=int)
    c.add_argument("--modulus", help="hex modulus, default from the built-in table")
    c.add_argument("--config")
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=do_construct)

    e = sub.add_parser("encode", help="encode an info file")
    e.add_argument("--code", required=True)
    e.add_argument("--info")
    e.add_argument("--random-info", help="write random info to this path and encode it")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("-o", "--output", required=True)
    e.set_defaults(func=do_encode)

    ch = sub.add_parser("channel", help="send a code sequence through the operator channel")
    ch.add_argument("--code", required=True)
    ch.add_argument("--codeword", required=True)
    ch.add_argument("--seed", type=int, default=0)
    ch.add_argument("--config")
    ch.add_argument("--error-packets", type=int)
    ch.add_argument("--erased-packets", type=int)
    ch.add_argument("--affine", action="store_true")
    ch.add_argument("-o", "--output", required=True)
    ch.set_defaults(func=do_channel)

    d = sub.add_parser("decode", help="decode received words or captured shots")
    d.add_argument("--code", required=True)
    d.add_argument("--received")
    d.add_argument("--side")
    d.add_argument("--shots")
    d.add_argument("--affine", action="store_true")
    d.add_argument("--trace", action="store_true")
    d.add_argument("-o", "--output", required=True)
    d.set_defaults(func=do_decode)

    s = sub.add_parser("simulate", help="run a Monte Carlo campaign, CSV out")
    s.add_argument("--config")
    s.add_argument("--seed", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--baseline", action="store_true")
    s.add_argument("--affine", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=do_simulate)

    t = sub.add_parser("table3", help="reproduce the worked decoding example")
    t.add_argument("--seed", type=int)
    t.add_argument("--trace", action="store_true")
    t.set_defaults(func=do_table3)
    return p


def main(argv=None):
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        a.func(a)
    except DecodeError as e:
        sys.stderr.write("error: %s\n" % e)
        return 1
    except (ConfigError, fileio.FormatError, ValueError, OSError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except InvariantViolation as e:
        sys.stderr.write("error: %s\n" % e)
        return 1
    return 0
