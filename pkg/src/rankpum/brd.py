"""Bounded row distance decoding of (P)UM codes.

The decoder runs block decoders of the Gabidulin subcodes to collect a
handful of candidate code blocks per depth, connects them through their
states into a reduced trellis and picks the cheapest path with Viterbi.

Step 1 decodes every block on its own (C_0 for the first, C_sigma inside,
C_10 for the tail). Step 2 walks forward with C_0 and backward with C_1
from every Step-1 candidate, since a known state lets us strip the
neighbour's contribution. Step 3 closes single-block gaps whose two
neighbouring states are known, with C_01. Step 4 is min-sum Viterbi over
rank distances.

For the arbitrary-rate construction (phi > 0) a Step-1 block only gives
part of the information, so candidates come from solving windows of up
to ell + 1 consecutive decoded blocks, and the forward extent is longer.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

from .gabidulin import ErasureSideInfo, failed
from .rank_metric import rank_weight

ANY = None


@dataclass(frozen=True)
class ReceivedBlock:
    r: tuple
    side: ErasureSideInfo

    @property
    def erasures(self):
        return self.side.rho + self.side.gamma


@dataclass(frozen=True)
class TrellisCandidate:
    depth: int
    c: tuple
    in_state: tuple
    out_state: tuple
    u: tuple
    metric: int
    origin: int
    decoder: str
    wildcard: bool = False


@dataclass
class ReducedTrellis:
    N: int
    depths: list
    zero: tuple


@dataclass
class BrdResult:
    success: bool
    code_sequence: list
    info_sequence: list
    status: list
    metric: object
    trellis: ReducedTrellis
    step1_metrics: list
    bmd_calls: list
    by_step: dict
    after_step2: list
    trace: list = field(default_factory=list)


def window_extent(metrics, erasures, profile, direction="forward"):
    """Number of blocks to extend a path from a node.

    metrics and erasures hold the values of the following (forward) or
    preceding (backward) blocks, nearest first. The result is the smallest
    j whose accumulated margin reaches half of the designed distance,
    capped at the number of blocks available. Directions "forward_row"
    and "backward_row" use the active row distance instead.
    """
    ds, ell = profile.d_sigma, profile.ell
    for j in range(1, len(metrics) + 1):
        er = sum(erasures[:j])
        if direction in ("forward", "forward_row"):
            lhs = sum((Fraction(ds - x, ell + 1) for x in metrics[:max(j - ell, 0)]), Fraction(0))
        else:
            lhs = Fraction(sum(ds - x for x in metrics[:j]))
        if direction == "forward":
            dist = profile.column(j)
        elif direction == "backward":
            dist = profile.reverse_column(j)
        else:
            dist = profile.row(j)
        if dist != math.inf and lhs >= Fraction(dist - er) / 2:
            return j
    return len(metrics)


class _Session:
    def __init__(self, code, received, trace=False):
        self.code = code
        self.F = code.field
        self.rx = [b if isinstance(b, ReceivedBlock) else ReceivedBlock(tuple(b[0]), b[1])
                   for b in received]
        if len(self.rx) < 2:
            raise ValueError("need at least two received blocks")
        for b in self.rx:
            if len(b.r) != code.n:
                raise ValueError("received block has length %d, expected %d" % (len(b.r), code.n))
        self.N = len(self.rx) - 1
        self.zero = (0,) * code.k1
        self.cands = [[] for _ in range(self.N + 1)]
        self.calls = [0] * (self.N + 1)
        self.tracing = trace
        self.trace = []
        self.by_step = {1: {}, 2: {}, 3: {}}
        self._memo = {}
        self.fwd, self.bwd = set(), set()

    # --- helpers
    def log(self, depth, step, decoder, outcome, metric):
        if self.tracing:
            self.trace.append("depth=%d step=%d decoder=%s outcome=%s metric=%s"
                              % (depth, step, decoder, outcome, metric))

    def bmd(self, depth, sub, word):
        self.calls[depth] += 1
        return sub.code.decode(word, self.rx[depth].side)

    def dist(self, depth, c):
        return rank_weight(self.F, self.F.vsub(list(self.rx[depth].r), list(c)))

    def add(self, depth, c, s_in, u, origin, decoder):
        k1 = self.code.k1
        cand = TrellisCandidate(depth, tuple(c), tuple(s_in), tuple(u[:k1]), tuple(u),
                                self.dist(depth, c), origin, decoder)
        for old in self.cands[depth]:
            if (old.c, old.in_state, old.out_state) == (cand.c, cand.in_state, cand.out_state):
                return old
        self.cands[depth].append(cand)
        self.by_step[origin].setdefault(depth, []).append(cand)
        return cand

    # --- step 1
    def step1(self):
        code, N = self.code, self.N
        decoded = {}
        for i in range(N + 1):
            sub = code.c0 if i == 0 else code.c10 if i == N else code.sigma
            out = self.bmd(i, sub, list(self.rx[i].r))
            if failed(out):
                self.log(i, 1, sub.name, "failure", "-")
            else:
                decoded[i] = out
        self.decoded = decoded
        for a in range(N + 1):
            for b in range(a, min(N, a + code.ell) + 1):
                if any(j not in decoded for j in range(a, b + 1)):
                    break
                try:
                    info, states = code.reconstruct_info({j: decoded[j] for j in range(a, b + 1)}, N)
                except ValueError:
                    continue
                for j in range(a, b + 1):
                    u = info.get(j)
                    s = states.get(j - 1)
                    if u is None or s is None:
                        continue
                    c = code.encode_block(list(u), list(s))
                    if c != list(decoded[j]):
                        continue
                    self.add(j, c, s, u, 1, code.sigma.name if 0 < j < N else
                             code.c0.name if j == 0 else code.c10.name)
        ds = code.profile.d_sigma
        self.m = []
        for i in range(N + 1):
            if self.cands[i]:
                m = min(x.metric for x in self.cands[i])
                self.log(i, 1, "-", "success", m)
            else:
                m = (ds + 1 + self.rx[i].erasures) // 2
                if i in decoded:
                    self.log(i, 1, "-", "unreconstructed", m)
            self.m.append(m)

    # --- step 2
    def forward_decode(self, d, s):
        key = ("f", d, s)
        if key in self._memo:
            return self._memo[key]
        code = self.code
        word = self.F.vsub(list(self.rx[d].r), code.state_part(s))
        out = self.bmd(d, code.c0, word)
        cand = None
        if not failed(out):
            u = code.c0.code.unencode(out)
            if d < self.N or not any(u):
                cand = self.add(d, code.encode_block(u, list(s)), s, u, 2, code.c0.name)
        self.log(d, 2, code.c0.name, "failure" if cand is None else "success",
                 "-" if cand is None else cand.metric)
        self._memo[key] = cand
        return cand

    def backward_decode(self, d, s):
        key = ("b", d, s)
        if key in self._memo:
            return self._memo[key]
        code = self.code
        k, p, phi = code.k, code.p, code.phi
        word = self.F.vsub(list(self.rx[d].r), code.head_part(s))
        out = self.bmd(d, code.c1, word)
        cand = None
        if not failed(out):
            v = code.c1.code.unencode(out)
            prev = list(v[:phi]) + list(v[k - p:])
            u = list(s) + list(v[phi:k - p])
            if d > 0 or not any(prev):
                cand = self.add(d, code.encode_block(u, prev), prev, u, 2, code.c1.name)
        self.log(d, 2, code.c1.name, "failure" if cand is None else "success",
                 "-" if cand is None else cand.metric)
        self._memo[key] = cand
        return cand

    def step2(self):
        code, N = self.code, self.N
        er = [b.erasures for b in self.rx]
        for start in [c for i in range(N + 1) for c in self.cands[i] if c.origin == 1]:
            self.fwd.add(id(start))
            self.bwd.add(id(start))
            i = start.depth
            lf = window_extent(self.m[i + 1:], er[i + 1:], code.profile, "forward")
            frontier = [start]
            for d in range(i + 1, i + lf + 1):
                nxt = []
                for c in frontier:
                    hit = [x for x in self.cands[d] if x.in_state == c.out_state]
                    if not hit:
                        got = self.forward_decode(d, c.out_state)
                        hit = [got] if got else []
                    nxt += [x for x in hit if x not in nxt]
                frontier = nxt
                self.fwd.update(id(x) for x in nxt)
                if not frontier:
                    break
            lb = window_extent(self.m[:i][::-1], er[:i][::-1], code.profile, "backward")
            frontier = [start]
            for d in range(i - 1, i - lb - 1, -1):
                nxt = []
                for c in frontier:
                    hit = [x for x in self.cands[d] if x.out_state == c.in_state]
                    if not hit:
                        got = self.backward_decode(d, c.in_state)
                        hit = [got] if got else []
                    nxt += [x for x in hit if x not in nxt]
                frontier = nxt
                self.bwd.update(id(x) for x in nxt)
                if not frontier:
                    break
        self.link_decoded()

    def link_decoded(self):
        # With phi > 0 a Step-1 block only fixes its states through its
        # neighbours. Given one state from a forward or backward path, the
        # decoded block determines its info and the other state directly.
        code, N = self.code, self.N
        if code.phi == 0:
            return
        changed = True
        while changed:
            changed = False
            for d, c in sorted(self.decoded.items()):
                if d == 0:
                    continue
                for x in list(self.cands[d - 1]):
                    if id(x) in self.fwd:
                        got = self.link_left(d, c, x.out_state)
                        if got is not None and id(got) not in self.fwd:
                            self.fwd.add(id(got))
                            changed = True
                if d == N:
                    continue
                for x in list(self.cands[d + 1]):
                    if id(x) in self.bwd:
                        got = self.link_right(d, c, x.in_state)
                        if got is not None and id(got) not in self.bwd:
                            self.bwd.add(id(got))
                            changed = True

    def link_left(self, d, c, s):
        code, F = self.code, self.F
        k, k1, p, phi = code.k, code.k1, code.p, code.phi
        if d == self.N:
            u = [0] * k
        else:
            uh = code.sigma.code.unencode(c)
            u = list(uh[:p]) + [F.sub(a, b) for a, b in zip(uh[p:k1], s[:phi])] + list(uh[k1:k])
        if code.encode_block(u, list(s)) != list(c):
            return None
        return self.add(d, c, s, u, 2, code.sigma.name if d < self.N else code.c10.name)

    def link_right(self, d, c, s_next):
        code, F = self.code, self.F
        k, k1, p, phi = code.k, code.k1, code.p, code.phi
        uh = code.sigma.code.unencode(c)
        u = list(s_next) + list(uh[k1:k])
        s = [F.sub(a, b) for a, b in zip(uh[p:k1], s_next[p:k1])] + list(uh[k:k + p])
        if code.encode_block(u, s) != list(c):
            return None
        return self.add(d, c, s, u, 2, code.sigma.name)

    # --- step 3
    def step3(self):
        # A gap sits between a forward path (anchor plus forward extension)
        # and a backward path, so only their end states are paired.
        code, N = self.code, self.N
        for d in range(N + 1):
            lefts = [self.zero] if d == 0 else _unique(
                x.out_state for x in self.cands[d - 1] if id(x) in self.fwd)
            rights = [self.zero] if d == N else _unique(
                x.in_state for x in self.cands[d + 1] if id(x) in self.bwd)
            for sl in lefts:
                for sr in rights:
                    if any(x.in_state == sl and x.out_state == sr for x in self.cands[d]):
                        continue
                    self.gap_decode(d, sl, sr)

    def gap_decode(self, d, sl, sr):
        code = self.code
        if d == self.N:
            if any(sr):
                return None
            u = [0] * code.k
        elif code.c01 is None:
            u = list(sr)
        else:
            word = self.F.vsub(list(self.rx[d].r),
                               self.F.vadd(code.head_part(sr), code.state_part(sl)))
            out = self.bmd(d, code.c01, word)
            if failed(out):
                self.log(d, 3, code.c01.name, "failure", "-")
                return None
            u = list(sr) + list(code.c01.code.unencode(out))
        direct = d == self.N or code.c01 is None
        cand = self.add(d, code.encode_block(u, list(sl)), sl, u, 3,
                        "direct" if direct else code.c01.name)
        self.log(d, 3, cand.decoder, "success", cand.metric)
        return cand

    # --- step 4
    def wildcard_metric(self, d):
        pr = self.code.profile
        base = pr.d01 if pr.d01 != math.inf else pr.d0 + pr.d1
        return (base + 1 + self.rx[d].erasures) // 2

    def build_trellis(self):
        N = self.N
        bounds = [set() for _ in range(N + 2)]
        bounds[0].add(self.zero)
        bounds[N + 1].add(self.zero)
        for d in range(N + 1):
            for c in self.cands[d]:
                if d > 0:
                    bounds[d].add(c.in_state)
                if d < N:
                    bounds[d + 1].add(c.out_state)
        for b in range(1, N + 1):
            if not bounds[b]:
                bounds[b].add(ANY)
        depths = []
        for d in range(N + 1):
            edges = list(self.cands[d])
            if not edges:
                m = self.wildcard_metric(d)
                for si in sorted(bounds[d], key=_skey):
                    for so in sorted(bounds[d + 1], key=_skey):
                        edges.append(TrellisCandidate(d, (), si, so, (), m, 4, "wildcard", True))
                        self.log(d, 4, "wildcard", "added", m)
            depths.append(edges)
        return ReducedTrellis(N, depths, self.zero)

    def finish(self, trellis, after2):
        code, N, F = self.code, self.N, self.F
        path = viterbi_min_sum(trellis)
        if path is None:
            return BrdResult(False, None, None, ["failed"] * (N + 1), None, trellis, self.m,
                             self.calls, self.by_step, after2, self.trace)
        seq, info, status = [], [], []
        for d, e in enumerate(path):
            if not e.wildcard:
                seq.append(list(e.c))
                info.append(list(e.u))
                status.append("ok")
                continue
            known_in = e.in_state is not ANY
            u = None
            if known_in and d == N:
                u = [0] * code.k
            elif known_in and e.out_state is not ANY and code.k == code.k1:
                u = list(e.out_state)
            if u is None:
                seq.append(None)
                info.append(None)
                status.append("failed")
            else:
                seq.append(code.encode_block(u, list(e.in_state)))
                info.append(u)
                status.append("rederived")
        total = sum(e.metric for e in path)
        ok = all(s != "failed" for s in status)
        return BrdResult(ok, seq, info[:N], status, total, trellis, self.m, self.calls,
                         self.by_step, after2, self.trace)


def _unique(it):
    out = []
    for x in it:
        if x not in out:
            out.append(x)
    return out


def _skey(s):
    return (0, ()) if s is ANY else (1, s)


def viterbi_min_sum(trellis):
    """Cheapest state-consistent path through the trellis, or None.

    Ties are broken by the step that produced each edge (earlier first),
    then by the code blocks in lexicographic order.
    """
    best = {trellis.zero: ((0, (), ()), [])}
    for edges in trellis.depths:
        nxt = {}
        for e in edges:
            srcs = list(best) if e.in_state is ANY else [e.in_state] if e.in_state in best else []
            for s in srcs:
                key, path = best[s]
                nk = (key[0] + e.metric, key[1] + (e.origin,), key[2] + (e.c,))
                if e.out_state not in nxt or nk < nxt[e.out_state][0]:
                    nxt[e.out_state] = (nk, path + [e])
        best = nxt
        if not best:
            return None
    if trellis.zero in best:
        return best[trellis.zero][1]
    return None


def step1_blockwise(code, received, trace=False):
    s = _Session(code, received, trace)
    s.step1()
    return s


def step2_extend(session):
    session.step2()
    return session


def step3_gap_close(session):
    session.step3()
    return session


def brd_decode(code, received, trace=False):
    """Decode N + 1 received blocks; see module docs."""
    s = _Session(code, received, trace)
    s.step1()
    s.step2()
    after2 = [list(c) for c in s.cands]
    s.step3()
    return s.finish(s.build_trellis(), after2)


def brd_decode_arbitrary_rate(code, received, trace=False):
    """Same contract as brd_decode.

    The window reconstruction and the prolonged forward extent are driven
    by the code's ell, so for phi = 0 this is exactly brd_decode.
    """
    return brd_decode(code, received, trace)


def brd_condition(profile, counts):
    """True if every window of blocks satisfies the bounded row distance bound.

    counts is a list of (t, rho, gamma) per block.
    """
    w = [2 * t + r + g for t, r, g in counts]
    L = len(w)
    for i in range(L):
        acc = 0
        for j in range(1, L - i + 1):
            acc += w[i + j - 1]
            if not acc < profile.row(j):
                return False
    return True
