"""Monte Carlo harness and the worked decoding example.

Trials are seeded from numpy's SeedSequence with the trial index as spawn
key, so any single trial can be replayed from the root seed alone.
"""

import io
from dataclasses import dataclass, field, fields

import numpy as np

from .brd import brd_condition, brd_decode
from .finite_field import GF
from .gabidulin import GabidulinCode, error_vector, failed, gab_random_error
from .network import (affine_lifted_matrix, effective_errors, lifted_matrix,
                      operator_channel, received_blocks)
from .pum import PumCode

CSV_SCHEMA = 1
MAX_RESAMPLE = 10000


class ConfigError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    pass


@dataclass
class SimulationConfig:
    q: int = 2
    m: int = 8
    n: int = 8
    k: int = 4
    k1: int = 2
    phi: int = 0
    N: int = 6
    trials: int = 100
    seed: int = 0
    level: str = "direct"          # direct | packet
    t_max: int = 1
    rho_max: int = 1
    gamma_max: int = 1
    error_packets_max: int = 1
    erased_packets_max: int = 1
    condition: str = "none"        # none | brd
    baseline: bool = False
    affine: bool = False
    modulus: int = None

    @classmethod
    def from_text(cls, text):
        cfg = cls()
        types = {f.name: f.type for f in fields(cls)}
        for i, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("line %d: expected key=value" % i)
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in types:
                raise ConfigError("line %d: unknown key %r" % (i, key))
            try:
                if key == "modulus":
                    v = int(val, 16)
                elif types[key] == "bool" or types[key] is bool:
                    if val.lower() not in ("0", "1", "true", "false", "yes", "no"):
                        raise ValueError(val)
                    v = val.lower() in ("1", "true", "yes")
                elif types[key] == "int" or types[key] is int:
                    v = int(val)
                else:
                    v = val
            except ValueError:
                raise ConfigError("line %d: bad value for %s: %r" % (i, key, val)) from None
            setattr(cfg, key, v)
        return cfg

    @classmethod
    def from_file(cls, path):
        with open(path) as f:
            return cls.from_text(f.read())

    def build(self):
        """Field and code, validating every parameter first."""
        if self.level not in ("direct", "packet"):
            raise ConfigError("level must be 'direct' or 'packet'")
        if self.condition not in ("none", "brd"):
            raise ConfigError("condition must be 'none' or 'brd'")
        if self.trials < 0 or self.N < 1:
            raise ConfigError("need trials >= 0 and N >= 1")
        if min(self.t_max, self.rho_max, self.gamma_max,
               self.error_packets_max, self.erased_packets_max) < 0:
            raise ConfigError("channel maxima must be nonnegative")
        if self.affine and self.level != "packet":
            raise ConfigError("affine lifting needs level=packet")
        try:
            F = GF(self.q, self.m, self.modulus)
            code = PumCode(F, self.n, self.k, self.k1, self.phi)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        return F, code


@dataclass
class TrialRecord:
    trial: int
    seed: str
    counts: list
    steps: list
    brd: bool
    recovered: bool
    baseline_recovered: object = None
    bmd_calls: list = field(default_factory=list)


def trial_rng(seed, trial):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def step_marks(result, code_sequence):
    """Per step and depth: 'v' correct block found, 'x' not found, '-' found earlier."""
    rows, done = [], set()
    for st in (1, 2, 3):
        row = ""
        for d, c in enumerate(code_sequence):
            if d in done:
                row += "-"
                continue
            hit = any(list(x.c) == list(c) for x in result.by_step[st].get(d, []))
            row += "v" if hit else "x"
            if hit:
                done.add(d)
        rows.append(row)
    return rows


def _draw_counts(cfg, rng, F):
    lim = min(F.m, cfg.n)
    out = []
    for _ in range(cfg.N + 1):
        while True:
            t = int(rng.integers(0, cfg.t_max + 1))
            r = int(rng.integers(0, cfg.rho_max + 1))
            g = int(rng.integers(0, cfg.gamma_max + 1))
            if t + r + g <= lim:
                break
        out.append((t, r, g))
    return out


def _baseline(cfg, F, rng, errors):
    """Per-shot block decoding with Gab[n, k] and Gab[n, k1] for the tail."""
    ok = True
    for i, (e, side) in enumerate(errors):
        k = cfg.k1 if i == cfg.N else cfg.k
        B = GabidulinCode(F, F.basis[:cfg.n], k)
        c = B.encode(F.random_vector(rng, k))
        out = B.decode(F.vadd(c, e), side)
        if failed(out) or out != c:
            ok = False
    return ok


def run_trial(cfg, F, code, trial):
    rng = trial_rng(cfg.seed, trial)
    info = [F.random_vector(rng, cfg.k) for _ in range(cfg.N)]
    cs = code.encode(info)
    if cfg.level == "direct":
        for _ in range(MAX_RESAMPLE):
            counts = _draw_counts(cfg, rng, F)
            if cfg.condition == "none" or brd_condition(code.profile, counts):
                break
        else:
            raise ConfigError("could not sample a channel meeting the decoding condition")
        errors, blocks = [], []
        for c, (t, r, g) in zip(cs, counts):
            err = gab_random_error(F, cfg.n, t, r, g, rng)
            e = error_vector(F, err)
            errors.append((e, err.side()))
            blocks.append((F.vadd(c, e), err.side()))
    else:
        for _ in range(MAX_RESAMPLE):
            shots = []
            for c in cs:
                M = F.to_matrix(c)
                X = affine_lifted_matrix(M) if cfg.affine else lifted_matrix(M)
                z = int(rng.integers(0, cfg.error_packets_max + 1))
                e = int(rng.integers(0, min(cfg.erased_packets_max, cfg.n) + 1))
                shots.append(operator_channel(X, rng, error_packets=z, erased_packets=e,
                                              q=cfg.q, affine=cfg.affine, n=cfg.n))
            blocks, dec = received_blocks(F, shots)
            counts, errors = [], []
            for c, b, d in zip(cs, blocks, dec):
                E = F.base.vsub(d.R, F.to_matrix(c))
                counts.append((effective_errors(cfg.q, E, d.side), d.side.rho, d.side.gamma))
                errors.append((F.vsub(list(b.r), c), d.side))
            if cfg.condition == "none" or brd_condition(code.profile, counts):
                break
        else:
            raise ConfigError("could not sample a channel meeting the decoding condition")
    res = brd_decode(code, blocks)
    recovered = bool(res.success and res.info_sequence == info)
    brd = brd_condition(code.profile, counts)
    base = _baseline(cfg, F, rng, errors) if cfg.baseline else None
    rec = TrialRecord(trial, "%d:%d" % (cfg.seed, trial), counts, step_marks(res, cs),
                      brd, recovered, base, list(res.bmd_calls))
    if rec.brd and not rec.recovered:
        raise InvariantViolation("trial %s met the decoding condition but was not recovered" % rec.seed)
    return rec


def simulate(cfg):
    F, code = cfg.build()
    return [run_trial(cfg, F, code, i) for i in range(cfg.trials)]


def _join(xs):
    return "/".join(str(x) for x in xs)


def records_csv(cfg, records):
    out = io.StringIO()
    out.write("# rankpum-simulation schema=%d q=%d m=%d n=%d k=%d k1=%d phi=%d N=%d level=%s "
              "condition=%s seed=%d trials=%d\n"
              % (CSV_SCHEMA, cfg.q, cfg.m, cfg.n, cfg.k, cfg.k1, cfg.phi, cfg.N, cfg.level,
                 cfg.condition, cfg.seed, cfg.trials))
    out.write("trial,seed,t,rho,gamma,brd,recovered,baseline_recovered,step1,step2,step3,bmd_calls\n")
    for r in records:
        t, rho, g = zip(*r.counts)
        base = "" if r.baseline_recovered is None else int(r.baseline_recovered)
        out.write("%d,%s,%s,%s,%s,%d,%d,%s,%s,%s,%s,%s\n"
                  % (r.trial, r.seed, _join(t), _join(rho), _join(g), r.brd, r.recovered, base,
                     r.steps[0], r.steps[1], r.steps[2], _join(r.bmd_calls)))
    n = len(records)
    fail = sum(not r.recovered for r in records)
    bfail = sum(r.baseline_recovered is False for r in records)
    brd = sum(r.brd for r in records)
    out.write("# trials=%d pum_failures=%d pum_fer=%s baseline_failures=%s baseline_fer=%s "
              "brd_satisfied=%d\n"
              % (n, fail, "%.6f" % (fail / n) if n else "nan",
                 bfail if cfg.baseline else "na",
                 ("%.6f" % (bfail / n) if n else "nan") if cfg.baseline else "na", brd))
    return out.getvalue()


def cmd_simulate(cfg):
    return records_csv(cfg, simulate(cfg))


# --- worked example -------------------------------------------------------

TABLE3_SHOTS = [  # (rho, gamma, t) per shot
    (0, 0, 2), (0, 1, 2), (1, 2, 0), (1, 0, 1), (0, 1, 0), (0, 0, 3), (1, 1, 2),
]

TABLE3_EXPECTED = {
    "step1": "vxxxvxv",
    "step2": "-xvv-x-",
    "step3": "-v---v-",
    "baseline": "vxvvvxv",
}


def table3_run(seed=2012, trace=False):
    """Decode one realization of the worked example; returns a dict of results."""
    F = GF(2, 8)
    code = PumCode(F, 8, 4, 2)
    N = len(TABLE3_SHOTS) - 1
    rng = trial_rng(seed, 0)
    info = [F.random_vector(rng, code.k) for _ in range(N)]
    cs = code.encode(info)
    blocks, base = [], ""
    for i, (c, (r, g, t)) in enumerate(zip(cs, TABLE3_SHOTS)):
        err = gab_random_error(F, code.n, t, r, g, rng)
        e = error_vector(F, err)
        blocks.append((F.vadd(c, e), err.side()))
        B = GabidulinCode(F, F.basis[:code.n], code.k1 if i == N else code.k)
        bc = B.encode(F.random_vector(rng, B.k))
        out = B.decode(F.vadd(bc, e), err.side())
        base += "v" if not failed(out) and out == bc else "x"
    res = brd_decode(code, blocks, trace)
    marks = step_marks(res, cs)
    counts = [(t, r, g) for r, g, t in TABLE3_SHOTS]
    return {
        "marks": {"step1": marks[0], "step2": marks[1], "step3": marks[2], "baseline": base},
        "recovered": bool(res.success and res.info_sequence == info),
        "brd": brd_condition(code.profile, counts),
        "result": res,
        "code": code,
    }


def render_table3(run):
    sym = {"v": "ok", "x": "X", "-": ""}
    shots = TABLE3_SHOTS
    lines = []
    head = "%-34s" % "shot" + "".join("%5d" % i for i in range(len(shots)))
    lines.append(head)
    lines.append("%-34s" % "row+column erasures" + "".join("%5d" % (r + g) for r, g, _ in shots))
    lines.append("%-34s" % "errors t" + "".join("%5d" % t for _, _, t in shots))
    rows = [("PUM step 1 (C_sigma, C_0, C_10)", "step1"), ("PUM step 2 (C_0 fwd, C_1 bwd)", "step2"),
            ("PUM step 3 (C_01)", "step3"), ("block Gab[8,4] (Gab[8,2] last)", "baseline")]
    for label, key in rows:
        lines.append("%-34s" % label + "".join("%5s" % sym[c] for c in run["marks"][key]))
    lines.append("sequence recovered: %s" % ("yes" if run["recovered"] else "no"))
    return "\n".join(lines) + "\n"


def cmd_table3(seed=2012, trace=False):
    run = table3_run(seed, trace)
    text = render_table3(run)
    if trace:
        text += "\n".join(run["result"].trace) + "\n"
    return text
