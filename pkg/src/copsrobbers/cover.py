"""Cover sets, Hall-escalation pursuit, guard pairs and the diameter-3 endgame.

The pursuit works in stages around the robber's position ``r``:

* stage 0 matches the vertices of ``B(r, 1)`` to cover-team cops within
  distance 2. A complete matching guards the whole neighbourhood in one
  move and the robber is caught on the next. Otherwise the maximal Hall
  violator ``S_1`` is the only safe part of the neighbourhood and the
  matched cops guard the rest.
* stage ``k >= 1`` matches ``B(S, 2^k)`` (``S`` the previous violator) to
  a fresh team within distance ``2^k`` of it, which can occupy every
  matched vertex within ``2^k`` moves; a failed matching yields the next
  violator.

Later stages use "imaginary" teams: a sampled vertex set of which only a
sparser sampled subset holds real cops. Matchings are computed against
the imaginary set; only real cops move. When an imaginary occupation does
not end in capture the strategy densifies, switching to the next group of
teams in the schedule.

On graphs of girth ``g >= 7`` each cover vertex ``u`` can instead hold a
pair of cops that keeps the robber out of ``B(u, rho)``,
``rho = floor((g + 1) / 4)``: one cop stays at ``u``, the other shadows
the robber along the unique geodesic from ``u``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .bounds import densification_gamma, polylog_slack, thm7_exponent, thm9_exponent
from .engine import GameState, StrategyFailure, Transcript, play
from .graph import INFINITE, Graph, ball, diameter, girth, rho as rho_of, shortest_path_step
from .matching import build_reach_graph, max_matching

MAX_RESAMPLES = 32


class PreconditionError(ValueError):
    pass


class ScheduleExhausted(RuntimeError):
    pass


# Cover sets -----------------------------------------------------------------


@dataclass
class CoverSet:
    vertices: frozenset[int]
    p: float
    population: int
    attempts: int = 1
    trimmed: bool = False
    verified: bool = False
    trials: int = 0
    qualifying: int = 0
    failures: int = 0

    def __len__(self) -> int:
        return len(self.vertices)


def sample_cover_set(
    g: Graph, p: float, seed: int, within: Iterable[int] | None = None, max_resamples: int = MAX_RESAMPLES
) -> CoverSet:
    """Keep each vertex (of ``within``, default all) independently with probability ``p``.

    Draws exceeding ``2 * |population| * p`` vertices are resampled from a
    fresh seed stream; if every attempt is too large the last draw is cut
    back to the bound, keeping the smallest uniform draws.
    """
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    pop = sorted(set(within)) if within is not None else list(range(g.n))
    limit = 2 * len(pop) * p
    for attempt in range(max_resamples):
        draws = np.random.default_rng([seed, attempt]).random(len(pop))
        chosen = frozenset(v for v, x in zip(pop, draws) if x < p)
        if len(chosen) <= limit:
            return CoverSet(chosen, p, len(pop), attempt + 1)
    keep = sorted(range(len(pop)), key=lambda j: draws[j])[: math.floor(limit)]
    return CoverSet(frozenset(pop[j] for j in keep if draws[j] < p), p, len(pop), max_resamples, trimmed=True)


def ball_threshold(n: int, a: int, p: float, slack: float = 1.0) -> float:
    """``slack * a * log^2(n) / p``: ball size at which ``a`` cover vertices are expected."""
    return slack * a * math.log2(n) ** 2 / p if n > 1 else 0.0


def check_cover_pair(
    g: Graph, C: frozenset[int], A: Iterable[int], i: int, p: float, slack: float = 1.0,
    within: frozenset[int] | None = None,
) -> bool | None:
    """``None`` when ``(A, i)`` does not qualify, else whether ``|B(A,i) & C| >= |A|``."""
    A = list(A)
    B = ball(g, A, i)
    size = len(B & within) if within is not None else len(B)
    if size < ball_threshold(g.n, len(A), p, slack):
        return None
    return len(B & C) >= len(A)


@dataclass
class CoverReport:
    trials: int
    qualifying: int
    failures: int
    exhaustive: bool
    counterexamples: list[tuple[list[int], int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def verify_cover_property(
    g: Graph, c: CoverSet, trials: int, seed: int, slack: float = 1.0,
    within: frozenset[int] | None = None,
) -> CoverReport:
    """Statistical check of the covering property; not a proof.

    For sampled ``(A, i)`` with ``|B(A, i)| >= |A| log^2 n / p`` (scaled by
    ``slack``) it checks ``|B(A, i) & C| >= |A|``. The random construction
    guarantees this for all pairs simultaneously with probability 0.9 only
    once ``n >= 333``; below that failures are possible and are reported as
    data. Small graphs (``n <= 12``) are checked exhaustively for
    ``|A| <= 3``. With ``within`` given, ball sizes are measured inside that
    set (the nested real-inside-imaginary variant).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    n = g.n
    C = c.vertices
    p = c.p
    rep = CoverReport(0, 0, 0, exhaustive=n <= 12)
    diam = diameter(g) if g.is_connected() else n

    def record(A, i):
        rep.trials += 1
        res = check_cover_pair(g, C, A, i, p, slack, within)
        if res is None:
            return
        rep.qualifying += 1
        if not res:
            rep.failures += 1
            if len(rep.counterexamples) < 5:
                rep.counterexamples.append((sorted(A), i))

    if rep.exhaustive:
        for a in range(1, min(3, n) + 1):
            for A in itertools.combinations(range(n), a):
                for i in range(diam + 1):
                    record(A, i)
    else:
        rng = np.random.default_rng([seed, 7])
        for t in range(trials):
            thr1 = ball_threshold(n, 1, p, slack)
            a_max = max(1, int(n // max(thr1, 1e-12))) if thr1 > 0 else n
            a = int(rng.integers(1, min(a_max, n) + 1))
            if t % 2:
                A = sorted(int(x) for x in rng.choice(n, size=a, replace=False))
            else:
                # Clustered sets: the ``a`` vertices nearest a random centre.
                centre = int(rng.integers(n))
                order = np.argsort(g.oracle.row(centre), kind="stable")
                A = sorted(int(x) for x in order[:a])
            # The smallest qualifying radius is the hardest one to pass.
            target = ball_threshold(n, a, p, slack)
            radius = None
            for i in range(diam + 1):
                B = ball(g, A, i)
                if (len(B & within) if within is not None else len(B)) >= target:
                    radius = i
                    break
            record(A, radius if radius is not None else diam)
    c.trials += rep.trials
    c.qualifying += rep.qualifying
    c.failures += rep.failures
    c.verified = c.failures == 0
    return rep


def sample_verified_cover_set(
    g: Graph, p: float, seed: int, trials: int = 200, slack: float = 1.0, attempts: int = MAX_RESAMPLES
) -> CoverSet:
    """Resample until the sampled verifier passes (up to ``attempts`` draws)."""
    best = None
    for a in range(attempts):
        c = sample_cover_set(g, p, seed * 1_000_003 + a)
        verify_cover_property(g, c, trials, seed + a, slack)
        if c.verified:
            return c
        if best is None or c.failures < best.failures:
            best = c
    return best


# Escalation -----------------------------------------------------------------


@dataclass
class Team:
    name: str
    members: list[int]
    imaginary: frozenset[int] = frozenset()
    gamma: Fraction | None = None

    @property
    def is_imaginary(self) -> bool:
        return bool(self.imaginary)


@dataclass
class StageRecord:
    stage: int
    radius: int
    source: frozenset[int]
    left: int
    right: int
    matched: int
    perfect: bool
    real: bool
    violator: frozenset[int] | None = None
    violator_neighborhood: int = 0
    ball: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "stage": self.stage,
            "radius": self.radius,
            "source": sorted(self.source),
            "left": self.left,
            "right": self.right,
            "matched": self.matched,
            "perfect": self.perfect,
            "real": self.real,
            "violator": None if self.violator is None else sorted(self.violator),
            "violator_neighborhood": self.violator_neighborhood,
            "ball": self.ball,
        }


@dataclass
class Plan:
    round: int
    robber: int
    assignments: dict[int, tuple[int, str]]
    records: list[StageRecord]
    horizon: int = 1
    pin: bool = False
    pin_radius: int = 0
    perfect_stage: int | None = None
    imaginary_perfect: bool = False
    densification: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "round": self.round,
            "robber": self.robber,
            "horizon": self.horizon,
            "pin": self.pin,
            "pin_radius": self.pin_radius,
            "perfect_stage": self.perfect_stage,
            "densification": self.densification,
            "stages": [r.to_dict() for r in self.records],
        }


@dataclass
class EscalationState:
    alpha: Fraction
    stages: int = 1
    radius_scale: int = 1
    densification: int = 0
    gamma: Fraction = Fraction(0)
    schedule: int = 2
    confinement: list[frozenset[int]] = field(default_factory=list)
    ball_sizes: list[int] = field(default_factory=list)
    assignments: dict[int, tuple[int, str]] = field(default_factory=dict)

    def stage_radius(self, k: int) -> int:
        return 2 if k == 0 else 2**k * self.radius_scale


def _cops_at(positions: Sequence[int], members: Iterable[int]) -> dict[int, list[int]]:
    at: dict[int, list[int]] = {}
    for i in members:
        at.setdefault(positions[i], []).append(i)
    return at


def escalation_round(
    g: Graph, state: EscalationState, r: int, teams: Sequence[Team], positions: Sequence[int]
) -> Plan:
    """Plan one escalation from robber position ``r``.

    ``teams[0]`` is the stage-0 (guarding) team and ``teams[k]`` the team
    for stage ``k``. Returns the assignments cop -> (target, mode) with mode
    ``"guard"`` (end within distance 1 of target) or ``"occupy"``; updates
    ``state.confinement`` with the violator chain.
    """
    assignments: dict[int, tuple[int, str]] = {}
    records: list[StageRecord] = []
    state.confinement = []
    state.ball_sizes = []
    plan = Plan(0, r, assignments, records, densification=state.densification)

    # Stage 0: guard B(r, 1).
    team = teams[0]
    left = ball(g, [r], 1)
    at = _cops_at(positions, team.members)
    right = {v for v in at if any(0 <= g.dist(v, x) <= 2 for x in left)}
    H = build_reach_graph(g, left, right, 2)
    m = max_matching(H)
    for target, v in m.pairs:
        assignments[at[v][0]] = (target, "guard")
    for v in set(left) & right:
        # A cop already inside B(r, 1): handled by the capture rule, hold it here.
        assignments.setdefault(at[v][0], (v, "guard"))
    rec = StageRecord(0, 2, frozenset([r]), len(H.left), len(H.right), m.size, m.left_perfect, True)
    records.append(rec)
    if m.left_perfect:
        plan.pin, plan.pin_radius, plan.perfect_stage, plan.horizon = True, 2, 0, 2
        return plan
    S = m.violator
    rec.violator, rec.violator_neighborhood = S, len(m.violator_neighborhood)
    state.confinement.append(S)

    for k in range(1, min(state.stages, len(teams) - 1) + 1):
        team = teams[k]
        ell = state.stage_radius(k)
        rec.ball = len(ball(g, S, ell))
        state.ball_sizes.append(rec.ball)
        left = ball(g, S, ell)
        outer = ball(g, S, 2 * ell)
        at = _cops_at(positions, [i for i in team.members if i not in assignments])
        real_right = set(at) & outer
        right = real_right | (set(team.imaginary) & outer)
        H = build_reach_graph(g, left, right, ell)
        m = max_matching(H)
        real_matched = 0
        for target, v in m.pairs:
            if v in at:
                assignments[at[v][0]] = (target, "occupy")
                real_matched += 1
        for v in set(left) & real_right:
            assignments.setdefault(at[v][0], (v, "occupy"))
        all_real = real_matched == m.size
        rec = StageRecord(k, ell, S, len(H.left), len(H.right), m.size, m.left_perfect, all_real)
        records.append(rec)
        if m.left_perfect:
            plan.perfect_stage = k
            plan.horizon = ell + 1
            if all_real and not (set(left) & (right - real_right)):
                plan.pin, plan.pin_radius = True, ell
            else:
                plan.imaginary_perfect = True
            break
        S = m.violator
        rec.violator, rec.violator_neighborhood = S, len(m.violator_neighborhood)
        state.confinement.append(S)
    state.assignments = assignments
    return plan


def densify(state: EscalationState) -> EscalationState:
    """Advance to the next imaginary-team group; ``gamma`` follows the halving schedule."""
    if state.densification >= state.schedule:
        raise ScheduleExhausted(f"densification schedule of {state.schedule} groups used up")
    state.densification += 1
    state.gamma = densification_gamma(state.alpha, state.densification)
    return state


# Diameter-3 endgame ---------------------------------------------------------


@dataclass
class EndgamePlan:
    robber: int
    targets: tuple[int, ...]
    assignment: dict[int, int]


def diam3_endgame(
    g: Graph, r: int, budget: int, cops: Sequence[int] | None = None, members: Sequence[int] | None = None
) -> EndgamePlan:
    """Guard every ``B(r', 1)``, ``r'`` in ``B(r, 1)``, within two cop moves.

    That is every vertex of ``B(r, 2)``; on a diameter-3 graph any cop can
    get within distance 1 of any vertex in two moves, so one cop per
    target suffices. ``cops`` gives current positions and ``members`` the
    cop indices that may be used.
    """
    targets = tuple(sorted(ball(g, [r], 2)))
    if len(targets) > budget:
        raise ValueError(f"endgame needs {len(targets)} cops, budget is {budget}")
    assignment: dict[int, int] = {}
    if cops is not None:
        idx = list(range(len(cops))) if members is None else list(members)
        if len(idx) < len(targets):
            raise ValueError(f"endgame needs {len(targets)} cops, {len(idx)} available")
        from .matching import hopcroft_karp

        adj = [[j for j, c in enumerate(idx) if 0 <= g.dist(cops[c], t) <= 3] for t in targets]
        ml, _ = hopcroft_karp(adj, len(idx))
        if any(x < 0 for x in ml):
            raise PreconditionError("some endgame target is farther than 3 from every cop")
        assignment = {idx[j]: t for t, j in zip(targets, ml)}
    return EndgamePlan(r, targets, assignment)


# Guard pairs ----------------------------------------------------------------


@dataclass
class GuardAssignment:
    u: int
    rho: int
    home: int
    runner: int
    entry: int | None = None
    chaser: int | None = None

    @property
    def positions(self) -> tuple[int, int]:
        return self.home, self.runner


def geodesic_vertex(g: Graph, u: int, target: int, depth: int) -> int:
    """Vertex at distance ``depth`` from ``u`` on a shortest ``u``-``target`` path."""
    x = u
    for _ in range(depth):
        x = shortest_path_step(g, x, target)
    return x


def entry_vertices(g: Graph, u: int, rho: int, robber: int) -> set[int]:
    """Vertices of the sphere ``B'(u, rho)`` the robber can reach in ``rho - 1`` moves."""
    row_u = g.oracle.row(u)
    row_r = g.oracle.row(robber)
    return {int(x) for x in np.flatnonzero((row_u == rho) & (row_r >= 0) & (row_r <= rho - 1))}


def guard_invariant_holds(g: Graph, ga: GuardAssignment, robber: int) -> bool:
    """After a cops' move: robber at distance ``2 rho - k`` means one cop at distance ``k``, one at ``u``."""
    dr = g.dist(ga.u, robber)
    if robber in ga.positions:
        return True
    if dr <= ga.rho:
        return False
    k = max(0, 2 * ga.rho - dr)
    dists = sorted((g.dist(ga.u, ga.home), g.dist(ga.u, ga.runner)))
    return dists == [0, k]


def guard_move(g: Graph, ga: GuardAssignment, robber: int) -> tuple[GuardAssignment, tuple[int, int]]:
    """One cops' turn of the two-cop guard for ``B(u, rho)``.

    The runner stands on the ``u``-robber geodesic at depth
    ``2 rho - d(u, robber)`` (at ``u`` when that is not positive); the
    other cop stays at ``u``. When the robber changes branch while at
    distance ``2 rho - 1`` the two cops swap roles.
    """
    u, p = ga.u, ga.rho
    dr = g.dist(u, robber)
    if robber in ga.positions or robber in g.neighbors(ga.home) or robber in g.neighbors(ga.runner):
        # Capture beats the protocol.
        if robber in ga.positions:
            return ga, ga.positions
        if robber in g.closed_out(ga.runner):
            new = GuardAssignment(u, p, ga.home, robber, ga.entry, ga.chaser)
        else:
            new = GuardAssignment(u, p, robber, ga.runner, ga.entry, ga.chaser)
        return new, new.positions
    if p <= 1:
        return ga, ga.positions
    if ga.home != u:
        raise StrategyFailure("guard pair lost its anchor at u")
    if dr <= 2 * p - 2 and ga.runner == u:
        raise PreconditionError(f"robber at distance {dr} <= 2*rho-2 from u; flush it out first")
    if dr < p:
        raise StrategyFailure("robber got inside the guarded ball")
    depth = max(0, 2 * p - dr)
    target = geodesic_vertex(g, u, robber, depth) if depth > 0 else u
    entry = geodesic_vertex(g, u, robber, p) if dr <= 2 * p - 1 else None
    if target in g.closed_out(ga.runner):
        new = GuardAssignment(u, p, u, target, entry, ga.chaser)
    elif depth <= 1 and target in g.closed_out(u):
        # Branch switch: the cop at u heads out, the runner falls back to u.
        back = shortest_path_step(g, ga.runner, u)
        if back != u:
            raise StrategyFailure("runner too far from u to swap roles")
        new = GuardAssignment(u, p, back, target, entry, ga.chaser)
    else:
        raise StrategyFailure("guard pair cannot keep the positional invariant")
    return new, new.positions


@dataclass
class FlushResult:
    trajectory: list[tuple[int, int]]
    captured: bool
    steps: int


def flush_step(g: Graph, chaser: int, robber: int) -> int:
    return shortest_path_step(g, chaser, robber)


def _evasive(g: Graph, cops: Sequence[int], robber: int) -> int:
    best = None
    for v in g.closed_out(robber):
        hit = any(v == c or v in g.neighbors(c) for c in cops)
        score = (not hit, min(g.dist(c, v) for c in cops), -v)
        if best is None or score > best[0]:
            best = (score, v)
    return best[1]


def flush(
    g: Graph,
    u: int,
    rho: int,
    chaser: int,
    robber: int,
    robber_policy: Callable[[Graph, Sequence[int], int], int] | None = None,
    max_steps: int | None = None,
) -> FlushResult:
    """Chase the robber out of ``B(u, 2 rho - 2)`` while the guard pair waits at ``u``.

    Returns once the robber is farther than ``2 rho - 2`` from ``u`` (zero
    steps if it already is) or caught, by the chaser or by the pair.
    """
    policy = robber_policy or _evasive
    limit = max_steps if max_steps is not None else 2 * rho * g.n
    traj = [(chaser, robber)]
    for step in range(limit + 1):
        if g.dist(u, robber) > 2 * rho - 2:
            return FlushResult(traj, False, step)
        if robber in g.closed_out(chaser) or robber in g.closed_out(u):
            traj.append((robber, robber))
            return FlushResult(traj, True, step + 1)
        chaser = flush_step(g, chaser, robber)
        robber = policy(g, (chaser, u), robber)
        traj.append((chaser, robber))
        if robber in (chaser, u):
            return FlushResult(traj, True, step + 1)
    return FlushResult(traj, False, limit)


# Full strategy --------------------------------------------------------------


def _center(g: Graph) -> int:
    ecc = [int(g.oracle.row(v).max()) for v in range(g.n)]
    return min(range(g.n), key=lambda v: (ecc[v], v))


class CoverStrategy:
    """Cover team + escalation teams + endgame team + one chaser.

    ``pairs=True`` replaces the cover team by guard pairs (girth mode).
    """

    def __init__(
        self,
        g: Graph,
        alpha: Fraction | float = Fraction(2, 5),
        seed: int = 0,
        pairs: bool | None = None,
        schedule: int = 2,
        stages: int | None = None,
        imaginary: bool = True,
    ):
        if not g.is_connected():
            raise PreconditionError("cover strategy needs a connected graph")
        self.g = g
        self.alpha = Fraction(alpha).limit_denominator(1000)
        self.seed = seed
        self.diam = diameter(g) if g.n > 1 else 0
        self.girth = girth(g)
        r = rho_of(self.girth)
        self.rho = self.diam + 1 if r == INFINITE else int(r)
        self.pairs = self.rho >= 2 if pairs is None else pairs
        if stages is None:
            stages = max(1, math.ceil(math.log2(max(self.diam, 1))) - 1) if self.diam > 1 else 1
        self.state = EscalationState(
            self.alpha, stages=stages, radius_scale=max(1, min(self.rho, self.diam)) if self.pairs else 1,
            schedule=schedule,
        )
        self.imaginary = imaginary
        self.positions: list[int] = []
        self.teams: dict[str, Team] = {}
        self.groups: list[list[Team]] = []
        self.guards: list[tuple[GuardAssignment, int, int]] = []
        self.chasers: list[int] = []
        self.endgame: list[int] = []
        self.plan: Plan | None = None
        self.plans: list[dict[str, Any]] = []
        self.events: list[dict[str, Any]] = []
        self.trivial = False

    # placement ----------------------------------------------------------

    def _rng(self, *key: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, *key])

    def place(self, g, k, rng):
        n = g.n
        mult = 2 if self.pairs else 1
        pos: list[int] = []
        if k >= n:
            self.trivial = True
            # A cop on every vertex: capture at placement.
            pos = list(range(n)) + [0] * (k - n)
            self.positions = pos
            self.teams["cover"] = Team("cover", list(range(len(self.positions))))
            return list(self.positions)
        centre = _center(g)
        K = self.state.stages
        units = 1 + (1 if self.pairs else 0) + self.state.schedule * K + 1
        share = (k - 1) // units
        if share == 0:
            self.chasers = list(range(k))
            self.positions = [centre] * k
            return list(self.positions)

        def add(team: Team, vertices: Iterable[int], per: int = 1) -> None:
            for v in vertices:
                for _ in range(per):
                    team.members.append(len(pos))
                    pos.append(v)

        cover = Team("cover", [])
        c_size = max(1, share // mult)
        C = sample_cover_set(g, min(1.0, c_size / n), self.seed)
        chosen = sorted(C.vertices)[:c_size] if len(C.vertices) > c_size else sorted(C.vertices)
        add(cover, chosen, mult)
        if self.pairs:
            for v in chosen:
                i = cover.members[chosen.index(v) * 2]
                self.guards.append((GuardAssignment(v, self.rho, v, v), i, i + 1))
            stage0 = Team("stage0", [])
            S0 = sample_cover_set(g, min(1.0, share / n), self.seed + 1)
            add(stage0, sorted(S0.vertices)[:share])
            self.teams["stage0"] = stage0
        self.teams["cover"] = cover
        for i in range(1, self.state.schedule + 1):
            gamma = densification_gamma(self.alpha, i)
            group = []
            for kk in range(1, K + 1):
                team = Team(f"group{i}.stage{kk}", [], gamma=gamma)
                p_img = min(1.0, max(n ** -float(gamma) if self.imaginary else 1.0, share / n))
                Iset = sample_cover_set(g, p_img, self.seed + 101 * i + kk)
                if not Iset.vertices:
                    Iset = CoverSet(frozenset([centre]), p_img, n)
                p_real = min(1.0, share / len(Iset.vertices))
                Rset = sample_cover_set(g, p_real, self.seed + 211 * i + kk, within=Iset.vertices)
                real = sorted(Rset.vertices)[:share]
                add(team, real)
                if self.imaginary and p_real < 1.0:
                    team.imaginary = Iset.vertices
                self.teams[team.name] = team
                group.append(team)
            self.groups.append(group)
        rest = k - 1 - len(pos)
        eg = Team("endgame", [])
        add(eg, [centre] * max(0, rest))
        self.teams["endgame"] = eg
        self.endgame = eg.members
        self.chasers = [len(pos)]
        pos.append(centre)
        if len(pos) != k:
            raise StrategyFailure(f"team layout produced {len(pos)} cops for budget {k}")
        self.positions = pos
        return list(pos)

    # moves --------------------------------------------------------------

    def _stage_teams(self) -> list[Team]:
        first = self.teams["stage0"] if self.pairs else self.teams["cover"]
        gi = min(self.state.densification, len(self.groups) - 1) if self.groups else 0
        return [first] + (self.groups[gi] if self.groups else [])

    def _new_plan(self, r: int, t: int) -> Plan:
        plan = escalation_round(self.g, self.state, r, self._stage_teams(), self.positions)
        plan.round = t
        if plan.perfect_stage is None and self.endgame:
            free = [i for i in self.endgame if i not in plan.assignments]
            if self.diam <= 3 and len(free) >= len(ball(self.g, [r], 2)):
                eg = diam3_endgame(self.g, r, len(free), self.positions, free)
                for i, v in eg.assignment.items():
                    plan.assignments[i] = (v, "guard2")
                plan.records.append(StageRecord(-1, 3, frozenset([r]), len(eg.targets), len(free),
                                                len(eg.assignment), True, True))
                plan.pin, plan.pin_radius, plan.perfect_stage, plan.horizon = True, 3, -1, 3
            elif self.state.confinement:
                # Occupy as much of B(S_1, 2) as the endgame team allows.
                S1 = self.state.confinement[0]
                at = _cops_at(self.positions, free)
                H = build_reach_graph(self.g, ball(self.g, S1, 2), set(at), max(self.diam, 1))
                m = max_matching(H)
                for target, v in m.pairs:
                    plan.assignments[at[v][0]] = (target, "occupy")
        return plan

    def move(self, g, state: GameState):
        if sorted(self.positions) != list(state.cops):
            raise StrategyFailure("cop positions out of sync with the referee")
        r, t = state.robber, state.round
        pos = list(self.positions)
        for i, c in enumerate(pos):
            if r == c or r in g.neighbors(c):
                pos[i] = r
                self.positions = pos
                return pos
        if self.trivial:
            return pos
        if not self.teams:
            # Budget too small for any team: everyone chases.
            for i in self.chasers:
                pos[i] = shortest_path_step(g, pos[i], r)
            self.positions = pos
            return pos
        if self.plan is None or t >= self.plan.round + self.plan.horizon:
            if self.plan is not None and self.plan.imaginary_perfect:
                try:
                    densify(self.state)
                    self.events.append({"round": t, "densify": self.state.densification,
                                        "gamma": str(self.state.gamma)})
                except ScheduleExhausted:
                    self.events.append({"round": t, "schedule_exhausted": True})
            self.plan = self._new_plan(r, t)
            self.plans.append(self.plan.to_dict())
        assigned = self.plan.assignments
        pair_cops = set()
        for j, (ga, a, b) in enumerate(self.guards):
            pair_cops |= {a, b}
            if ga.rho >= 2 and ga.runner == ga.u and g.dist(ga.u, r) <= 2 * ga.rho - 2:
                continue
            ga2, _ = guard_move(g, ga, r)
            self.guards[j] = (ga2, a, b)
            pos[a], pos[b] = ga2.home, ga2.runner
        for i, (target, mode) in assigned.items():
            if i in pair_cops:
                continue
            c = pos[i]
            need = 1 if mode in ("guard", "guard2") else 0
            if g.dist(c, target) > need:
                pos[i] = shortest_path_step(g, c, target)
        for i in self.chasers:
            pos[i] = shortest_path_step(g, pos[i], r)
        self.positions = pos
        return pos

    def diagnostics(self) -> dict[str, Any]:
        return {
            "strategy": "cover",
            "alpha": str(self.alpha),
            "pairs": self.pairs,
            "rho": self.rho,
            "diameter": self.diam,
            "teams": {name: len(t.members) for name, t in self.teams.items()},
            "imaginary_sizes": {name: len(t.imaginary) for name, t in self.teams.items() if t.imaginary},
            "chasers": len(self.chasers),
            "plans": self.plans,
            "events": self.events,
        }


def bound_exponent(g: Graph, diam: int, rho: int) -> tuple[str, Fraction]:
    if rho >= 2 and diam > rho:
        return "thm9", thm9_exponent(diam, rho)
    if diam <= 3:
        return "thm6", Fraction(4, 7)
    if diam <= 4:
        return "thm5", Fraction(3, 5)
    return "thm7", thm7_exponent(diam)


def cover_budget(g: Graph, alpha: Fraction | float, slack: float | None = None) -> int:
    """``ceil(slack * n^(1 - alpha))`` capped at one cop per vertex (which always wins)."""
    n = g.n
    s = polylog_slack(n) if slack is None else slack
    return max(1, min(n, math.ceil(s * n ** (1 - float(alpha)))))


def run_full_strategy(
    g: Graph,
    alpha: Fraction | float = Fraction(2, 5),
    seeds: int | Sequence[int] = 0,
    max_rounds: int | None = None,
    robber=None,
    slack: float | None = None,
    k: int | None = None,
    pairs: bool | None = None,
    imaginary: bool = True,
) -> Transcript:
    """Play the composed strategy against ``robber`` (optimal by default, when solvable)."""
    if not isinstance(g, Graph) or not g.is_connected():
        raise PreconditionError("run_full_strategy needs a connected undirected graph")
    if not 0 < float(alpha) < 1:
        raise PreconditionError("alpha must lie in (0, 1)")
    seed = seeds if isinstance(seeds, int) else seeds[0]
    strat = CoverStrategy(g, alpha, seed=seed, pairs=pairs, imaginary=imaginary)
    if k is None:
        k = cover_budget(g, alpha, slack)
    if robber is None:
        from .solver import SolverBudgetError, optimal_robber
        from .strategies import GreedyDistanceRobber

        try:
            robber = optimal_robber(g, k)
        except SolverBudgetError:
            robber = GreedyDistanceRobber()
    tr = play(g, strat, robber, k, max_rounds, seed)
    name, t = bound_exponent(g, strat.diam, strat.rho)
    tr.stages["bound"] = {"name": name, "exponent": str(t), "budget": k}
    return tr
