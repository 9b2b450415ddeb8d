"""Turn-based referee for Cops and Robbers.

Order of play: the cops place, the robber places, then every round the
cops move (all at once, as one multiset update) and the robber moves.
Moving means staying put or stepping to an out-neighbour. The robber is
caught as soon as it shares a vertex with a cop, whichever side moved.
"""

from __future__ import annotations

import json
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Protocol

from .formats import decode, encode
from .graph import Digraph, Graph
from .matching import hopcroft_karp

COPS = "cops"
ROBBER = "robber"


class StrategyFailure(RuntimeError):
    """A strategy cannot continue (e.g. it ran out of cops for a stage)."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True)
class GameState:
    cops: tuple[int, ...]
    robber: int | None
    to_move: str
    round: int

    def __post_init__(self) -> None:
        if list(self.cops) != sorted(self.cops):
            raise ValueError("cop multiset must be sorted")

    @property
    def captured(self) -> bool:
        return self.robber is not None and self.robber in self.cops


class CopStrategy(Protocol):
    def place(self, g: Graph | Digraph, k: int, rng: random.Random) -> Sequence[int]: ...

    def move(self, g: Graph | Digraph, state: GameState) -> Sequence[int]: ...


class RobberStrategy(Protocol):
    def place(self, g: Graph | Digraph, cops: tuple[int, ...]) -> int: ...

    def move(self, g: Graph | Digraph, state: GameState) -> int: ...


@dataclass(frozen=True)
class Outcome:
    kind: str  # "captured" | "survived" | "fault"
    round: int
    side: str | None = None
    detail: str | None = None

    @property
    def captured(self) -> bool:
        return self.kind == "captured"

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"kind": self.kind, "round": self.round}
        if self.side is not None:
            d["side"] = self.side
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class Transcript:
    graph: Graph | Digraph
    k: int
    seed: int
    max_rounds: int
    placement: dict[str, Any]
    rounds: list[dict[str, Any]]
    outcome: Outcome
    stages: dict[str, Any] = field(default_factory=dict)

    def cop_history(self) -> list[tuple[int, ...]]:
        hist = [tuple(self.placement["cops"])]
        hist += [tuple(r["cops"]) for r in self.rounds]
        return hist

    def robber_history(self) -> list[int | None]:
        return [self.placement.get("robber")] + [r["robber"] for r in self.rounds]

    def to_dict(self) -> dict[str, Any]:
        d = {
            "graph": encode(self.graph),
            "directed": self.graph.directed,
            "k": self.k,
            "seed": self.seed,
            "max_rounds": self.max_rounds,
            "placement": self.placement,
            "rounds": self.rounds,
            "outcome": self.outcome.to_dict(),
        }
        if self.stages:
            d["stages"] = self.stages
        return d

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=_json_default)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Transcript:
        o = d["outcome"]
        return cls(
            graph=decode(d["graph"]),
            k=d["k"],
            seed=d["seed"],
            max_rounds=d["max_rounds"],
            placement=d["placement"],
            rounds=d["rounds"],
            outcome=Outcome(o["kind"], o["round"], o.get("side"), o.get("detail")),
            stages=d.get("stages", {}),
        )


def _json_default(obj: Any) -> Any:
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def validate_move(old: Sequence[int], new: Sequence[int], g: Graph | Digraph) -> bool:
    """True iff every old position can be paired with a new one at most one move away."""
    if len(old) != len(new):
        return False
    if any(not 0 <= v < g.n for v in new):
        return False
    adj = [[j for j, b in enumerate(new) if b == a or b in g.out_neighbors(a)] for a in old]
    match_l, _ = hopcroft_karp(adj, len(new))
    return all(m >= 0 for m in match_l)


def default_max_rounds(n: int, k: int) -> int:
    return 4 * n * n * (k + 1)


def play(
    g: Graph | Digraph,
    cs: CopStrategy,
    rs: RobberStrategy,
    k: int,
    max_rounds: int | None = None,
    seed: int = 0,
    arena: frozenset[int] | None = None,
) -> Transcript:
    """Referee one game and return its transcript.

    ``arena`` restricts the robber to a vertex subset (it moves along arcs
    of the induced sub-digraph); cops always use all of ``g``.
    """
    if k < 1:
        raise ValueError("need at least one cop")
    if max_rounds is None:
        max_rounds = default_max_rounds(g.n, k)
    if max_rounds < 1:
        raise ValueError("max_rounds must be positive")
    rng = random.Random(seed)
    rounds: list[dict[str, Any]] = []
    placement: dict[str, Any] = {"cops": [], "robber": None}

    def finish(outcome: Outcome) -> Transcript:
        stages = {}
        diag = getattr(cs, "diagnostics", None)
        if callable(diag):
            stages = diag()
        return Transcript(g, k, seed, max_rounds, placement, rounds, outcome, stages)

    def fault(side: str, rnd: int, detail: str) -> Transcript:
        return finish(Outcome("fault", rnd, side, detail))

    try:
        cops = tuple(sorted(int(c) for c in cs.place(g, k, rng)))
    except Exception as exc:
        return fault(COPS, 0, f"{type(exc).__name__}: {exc}")
    if len(cops) != k or any(not 0 <= c < g.n for c in cops):
        return fault(COPS, 0, f"illegal placement {list(cops)}")
    placement["cops"] = list(cops)
    try:
        robber = int(rs.place(g, cops))
    except Exception as exc:
        return fault(ROBBER, 0, f"{type(exc).__name__}: {exc}")
    if not 0 <= robber < g.n or (arena is not None and robber not in arena):
        return fault(ROBBER, 0, f"illegal placement {robber}")
    placement["robber"] = robber
    if robber in cops:
        return finish(Outcome("captured", 0))

    for t in range(1, max_rounds + 1):
        state = GameState(cops, robber, COPS, t)
        try:
            new = tuple(sorted(int(c) for c in cs.move(g, state)))
        except Exception as exc:
            return fault(COPS, t, f"{type(exc).__name__}: {exc}")
        if not validate_move(cops, new, g):
            return fault(COPS, t, f"illegal move {list(cops)} -> {list(new)}")
        cops = new
        if robber in cops:
            rounds.append({"cops": list(cops), "robber": None})
            return finish(Outcome("captured", t))
        state = GameState(cops, robber, ROBBER, t)
        try:
            nxt = int(rs.move(g, state))
        except Exception as exc:
            rounds.append({"cops": list(cops), "robber": None})
            return fault(ROBBER, t, f"{type(exc).__name__}: {exc}")
        legal = nxt == robber or (0 <= nxt < g.n and nxt in g.out_neighbors(robber))
        if not legal or (arena is not None and nxt not in arena):
            rounds.append({"cops": list(cops), "robber": None})
            return fault(ROBBER, t, f"illegal move {robber} -> {nxt}")
        robber = nxt
        rounds.append({"cops": list(cops), "robber": robber})
        if robber in cops:
            return finish(Outcome("captured", t))
    return finish(Outcome("survived", max_rounds))


class ScriptedCops:
    """Replays recorded cop multisets."""

    def __init__(self, history: Sequence[Sequence[int]]):
        self.history = [list(h) for h in history]

    def place(self, g, k, rng):
        return self.history[0]

    def move(self, g, state):
        return self.history[state.round]


class ScriptedRobber:
    def __init__(self, history: Sequence[int | None]):
        self.history = list(history)

    def place(self, g, cops):
        return self.history[0]

    def move(self, g, state):
        return self.history[state.round]


def replay(t: Transcript, arena: frozenset[int] | None = None) -> Transcript:
    """Run the recorded moves through the referee again."""
    return play(
        t.graph,
        ScriptedCops(t.cop_history()),
        ScriptedRobber(t.robber_history()),
        t.k,
        t.max_rounds,
        t.seed,
        arena,
    )


def check_transcript(t: Transcript, arena: frozenset[int] | None = None) -> list[str]:
    """Legality and capture-soundness problems found in a transcript (empty if none)."""
    g = t.graph
    problems = []
    cops_hist = t.cop_history()
    robs = t.robber_history()
    for i in range(1, len(cops_hist)):
        if not validate_move(cops_hist[i - 1], cops_hist[i], g):
            problems.append(f"round {i}: illegal cop move")
    prev = robs[0]
    for i in range(1, len(robs)):
        r = robs[i]
        if r is None:
            continue
        if prev is not None and r != prev and r not in g.out_neighbors(prev):
            problems.append(f"round {i}: illegal robber move {prev}->{r}")
        prev = r
    if t.outcome.kind == "captured":
        rnd = t.outcome.round
        if rnd == 0:
            ok = robs[0] in cops_hist[0]
        else:
            row = t.rounds[rnd - 1]
            r = row["robber"] if row["robber"] is not None else robs[rnd - 1]
            ok = r in row["cops"]
        if not ok:
            problems.append("captured outcome without co-location")
    elif t.outcome.kind == "survived":
        for i, r in enumerate(robs):
            if r is not None and r in cops_hist[i]:
                problems.append(f"co-location at round {i} in a survived game")
    return problems
