"""Line-oriented text format for describing pairs and blow-up scripts.

Grammar (one directive per line, '#' starts a comment):

    surface P2
    surface F <n>
    component <label> <d>              # plane: a degree-d curve
    component <label> <a> <b>          # F_n: a curve in |aZ + bF|
    node <id> <label1> <label2> [fiber=<tag>]
    blowup smooth <component-label> <fresh-name> [fiber=<tag>]
    blowup node <node-id> <fresh-name>

Node lines are optional: omitted entirely, one node per intersection
point is generated with ids "<label_i>.<label_j>.<k>".  Blow-up steps
apply in order; a node blow-up adds the boundary component and basis
label <fresh-name>, and fresh nodes "<label>.<fresh-name>.1" that later
steps may reference (infinitely-near chains).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .geometry import hirzebruch, projective_plane
from .pairs import LogPair, NodeRecord, blow_up_node, blow_up_smooth_point, make_pair


class SpecParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        prefix = f"line {line_no}: " if line_no else ""
        super().__init__(prefix + message)
        self.line_no = line_no


@dataclass(frozen=True)
class BlowUpStep:
    op: str  # "smooth" | "node"
    target: str
    id: str
    fiber: Optional[str] = None  # shared-ruling tag for smooth centers

    def __post_init__(self):
        if self.fiber is not None and self.op != "smooth":
            raise ValueError("fiber tags on blow-up steps apply to smooth centers only")


@dataclass(frozen=True)
class PairScript:
    base: LogPair
    steps: tuple[BlowUpStep, ...]

    def apply(self) -> list[LogPair]:
        """The pair after each step (index 0 is the base)."""
        out = [self.base]
        for step in self.steps:
            current = out[-1]
            if step.op == "smooth":
                out.append(
                    blow_up_smooth_point(current, step.target, step.id, fiber_tag=step.fiber)
                )
            else:
                out.append(blow_up_node(current, step.target, step.id))
        return out

    @property
    def final(self) -> LogPair:
        return self.apply()[-1]


def parse_pair_spec(text: str) -> PairScript:
    surface = None
    is_plane = False
    components: list[tuple[str, tuple[int, ...]]] = []
    node_lines: list[tuple[int, str, str, str, Optional[str]]] = []
    steps: list[BlowUpStep] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind == "surface":
            if surface is not None:
                raise SpecParseError(line_no, "duplicate surface line")
            if toks[1:] == ["P2"]:
                surface = projective_plane()
                is_plane = True
            elif len(toks) == 3 and toks[1] == "F":
                try:
                    n = int(toks[2])
                except ValueError:
                    raise SpecParseError(line_no, f"bad Hirzebruch index {toks[2]!r}") from None
                if n < 0:
                    raise SpecParseError(line_no, "Hirzebruch index must be nonnegative")
                surface = hirzebruch(n)
            else:
                raise SpecParseError(line_no, f"bad surface line {line!r}")
        elif kind == "component":
            if surface is None:
                raise SpecParseError(line_no, "component before surface")
            want = 2 if is_plane else 3
            if len(toks) != want + 1:
                raise SpecParseError(
                    line_no,
                    f"component takes {want - 1} integer coordinate(s) on this surface",
                )
            label = toks[1]
            try:
                coords = tuple(int(t) for t in toks[2:])
            except ValueError:
                raise SpecParseError(line_no, "component coordinates must be integers") from None
            if any(label == lab for lab, _ in components):
                raise SpecParseError(line_no, f"duplicate component label {label!r}")
            components.append((label, coords))
        elif kind == "node":
            if len(toks) not in (4, 5):
                raise SpecParseError(line_no, "node takes an id and two component labels")
            fiber = None
            if len(toks) == 5:
                if not toks[4].startswith("fiber="):
                    raise SpecParseError(line_no, f"bad node attribute {toks[4]!r}")
                fiber = toks[4][len("fiber="):]
            node_lines.append((line_no, toks[1], toks[2], toks[3], fiber))
        elif kind == "blowup":
            if len(toks) not in (4, 5) or toks[1] not in ("smooth", "node"):
                raise SpecParseError(line_no, "blowup takes: smooth|node, target, fresh-name")
            fiber = None
            if len(toks) == 5:
                if toks[1] != "smooth" or not toks[4].startswith("fiber="):
                    raise SpecParseError(line_no, f"bad blowup attribute {toks[4]!r}")
                fiber = toks[4][len("fiber="):]
            steps.append(BlowUpStep(toks[1], toks[2], toks[3], fiber=fiber))
        else:
            raise SpecParseError(line_no, f"unknown directive {kind!r}")

    if surface is None:
        raise SpecParseError(0, "missing surface line")
    if not components:
        raise SpecParseError(0, "boundary must have at least one component")

    labels = [lab for lab, _ in components]
    nodes = None
    if node_lines:
        nodes = []
        for line_no, node_id, l1, l2, fiber in node_lines:
            missing = next((l for l in (l1, l2) if l not in labels), None)
            if missing is not None:
                raise SpecParseError(line_no, f"node references unknown component {missing!r}")
            nodes.append(NodeRecord(node_id, (labels.index(l1), labels.index(l2)), on_fiber_of=fiber))
    try:
        base = make_pair(surface, components, nodes=nodes)
    except ValueError as exc:
        raise SpecParseError(0, str(exc)) from None
    return PairScript(base, tuple(steps))


def load_pair_spec(path: str) -> PairScript:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pair_spec(fh.read())
