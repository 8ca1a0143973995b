"""Combinatorial maps on the sphere and the real dessin validity conditions.

A ``DessinMap`` is a rotation system: vertices carry a color and a cyclic
(counterclockwise) list of darts, every edge owns exactly two darts (tail
and head, giving the edge its orientation) and one of three kinds.  The
kinds are the three arcs of the target circle: kind ``a`` runs from a
cross into a bullet, ``b`` from a bullet into a circ, ``c`` from a circ
into a cross.  An equatorial edge cycle and a dart involution describe the
real symmetry.

``validate_dessin`` reports one boolean per condition:

1. the symmetry is a color/kind/orientation preserving, rotation reversing
   involution whose fixed darts are exactly the equator, and the equator
   is a single closed circle in the graph;
2. bullet valencies are divisible by 6 and alternate incoming-a/outgoing-b;
3. circ valencies are divisible by 4 and alternate incoming-b/outgoing-c;
4. cross valencies are 2 with one incoming-c and one outgoing-a;
5. plain valencies are even with all incident edges of one kind;
6. the map is a connected genus-0 map whose faces each cover the colored
   circle coherently, neighboring faces with opposite orientations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class MalformedMapError(ValueError):
    """The rotation system / edge data is structurally inconsistent."""


class VertexColor(Enum):
    BULLET = "bullet"
    CIRC = "circ"
    CROSS = "cross"
    PLAIN = "plain"


class EdgeKind(Enum):
    A = "a"  # cross -> bullet arc
    B = "b"  # bullet -> circ arc
    C = "c"  # circ -> cross arc


_NEXT_KIND = {EdgeKind.A: EdgeKind.B, EdgeKind.B: EdgeKind.C, EdgeKind.C: EdgeKind.A}

# what each colored vertex expects around it: (incoming kind, outgoing kind)
_VERTEX_RULE = {
    VertexColor.BULLET: (EdgeKind.A, EdgeKind.B, 6),
    VertexColor.CIRC: (EdgeKind.B, EdgeKind.C, 4),
    VertexColor.CROSS: (EdgeKind.C, EdgeKind.A, 2),
}


@dataclass(frozen=True)
class DessinMap:
    """Rotation-system map with colors, kinds, equator and symmetry.

    ``vertices`` is a sequence of (color, darts-in-ccw-order); ``edges`` a
    sequence of (kind, tail dart, head dart).  Darts are arbitrary integers
    but each must occur exactly once in the rotations and exactly once as
    an edge end.  ``equator`` lists edge indices; ``symmetry`` maps darts
    to darts.
    """

    vertices: tuple[tuple[VertexColor, tuple[int, ...]], ...]
    edges: tuple[tuple[EdgeKind, int, int], ...]
    equator: tuple[int, ...] = ()
    symmetry: Optional[dict[int, int]] = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "vertices",
            tuple((c, tuple(darts)) for c, darts in self.vertices),
        )
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "equator", tuple(self.equator))
        if self.symmetry is not None:
            object.__setattr__(self, "symmetry", dict(self.symmetry))

    # -- structural tables -------------------------------------------------

    def tables(self) -> "_Tables":
        rotation_darts = [d for _, darts in self.vertices for d in darts]
        if len(set(rotation_darts)) != len(rotation_darts):
            raise MalformedMapError("a dart occurs twice in the rotation system")
        edge_darts = [d for _, t, h in self.edges for d in (t, h)]
        if len(set(edge_darts)) != len(edge_darts):
            raise MalformedMapError("a dart occurs twice among edge ends")
        if set(rotation_darts) != set(edge_darts):
            raise MalformedMapError("rotation darts and edge darts disagree")
        if not rotation_darts:
            raise MalformedMapError("empty map")
        for _, darts in self.vertices:
            if not darts:
                raise MalformedMapError("vertex with empty rotation")
        dart_vertex = {}
        for v, (_, darts) in enumerate(self.vertices):
            for d in darts:
                dart_vertex[d] = v
        partner = {}
        dart_edge = {}
        is_tail = {}
        for e, (_, tail, head) in enumerate(self.edges):
            partner[tail], partner[head] = head, tail
            dart_edge[tail] = dart_edge[head] = e
            is_tail[tail], is_tail[head] = True, False
        sigma = {}
        for _, darts in self.vertices:
            for i, d in enumerate(darts):
                sigma[d] = darts[(i + 1) % len(darts)]
        for e in self.equator:
            if not 0 <= e < len(self.edges):
                raise MalformedMapError(f"equator references unknown edge {e}")
        if self.symmetry is not None:
            if set(self.symmetry) != set(rotation_darts) or \
                    set(self.symmetry.values()) != set(rotation_darts):
                raise MalformedMapError("symmetry is not a permutation of the darts")
        return _Tables(dart_vertex, partner, dart_edge, is_tail, sigma)


@dataclass
class _Tables:
    dart_vertex: dict[int, int]
    partner: dict[int, int]
    dart_edge: dict[int, int]
    is_tail: dict[int, bool]
    sigma: dict[int, int]


@dataclass
class DessinReport:
    conditions: dict[int, bool]
    notes: list[str] = field(default_factory=list)
    face_count: int = 0
    euler: int = 0

    @property
    def all_pass(self) -> bool:
        return all(self.conditions.values())

    def render(self) -> str:
        lines = []
        for k in range(1, 7):
            lines.append(f"condition {k}: {'pass' if self.conditions[k] else 'FAIL'}")
        for note in self.notes:
            lines.append(f"  {note}")
        return "\n".join(lines)


def _check_vertex_rules(g: DessinMap, t: _Tables, report: DessinReport) -> None:
    ok = {2: True, 3: True, 4: True, 5: True}
    cond_of = {VertexColor.BULLET: 2, VertexColor.CIRC: 3, VertexColor.CROSS: 4}
    for v, (color, darts) in enumerate(g.vertices):
        valency = len(darts)
        if color is VertexColor.PLAIN:
            kinds = {g.edges[t.dart_edge[d]][0] for d in darts}
            if valency % 2 or len(kinds) != 1:
                ok[5] = False
                report.notes.append(f"vertex {v}: plain vertex breaks condition 5")
            continue
        in_kind, out_kind, modulus = _VERTEX_RULE[color]
        cond = cond_of[color]
        if color is VertexColor.CROSS:
            if valency != 2:
                ok[4] = False
                report.notes.append(f"vertex {v}: cross valency {valency} != 2")
        elif valency % modulus:
            ok[cond] = False
            report.notes.append(
                f"vertex {v}: {color.value} valency {valency} not divisible by {modulus}"
            )
        # alternation: incoming in_kind and outgoing out_kind, interleaved
        def dart_class(d: int) -> Optional[bool]:
            kind = g.edges[t.dart_edge[d]][0]
            incoming = not t.is_tail[d]
            if incoming and kind is in_kind:
                return True
            if not incoming and kind is out_kind:
                return False
            return None
        classes = [dart_class(d) for d in darts]
        alternates = (
            all(c is not None for c in classes)
            and valency % 2 == 0
            and all(classes[i] != classes[(i + 1) % valency] for i in range(valency))
        )
        if not alternates:
            ok[cond] = False
            report.notes.append(f"vertex {v}: {color.value} edges do not alternate")
    for cond, value in ok.items():
        report.conditions[cond] = value


def _check_symmetry(g: DessinMap, t: _Tables, report: DessinReport) -> None:
    report.conditions[1] = False
    if g.symmetry is None:
        report.notes.append("no symmetry declared")
        return
    tau = g.symmetry
    darts = set(t.dart_vertex)
    if any(tau[tau[d]] != d for d in darts):
        report.notes.append("symmetry is not an involution")
        return
    for d in darts:
        if tau[t.partner[d]] != t.partner[tau[d]]:
            report.notes.append("symmetry does not map edges to edges")
            return
        if t.is_tail[d] != t.is_tail[tau[d]]:
            report.notes.append("symmetry reverses an edge orientation")
            return
        if g.edges[t.dart_edge[d]][0] is not g.edges[t.dart_edge[tau[d]]][0]:
            report.notes.append("symmetry changes an edge kind")
            return
        if g.vertices[t.dart_vertex[d]][0] is not g.vertices[t.dart_vertex[tau[d]]][0]:
            report.notes.append("symmetry changes a vertex color")
            return
    sigma_inv = {nd: d for d, nd in t.sigma.items()}
    if any(t.sigma[tau[d]] != tau[sigma_inv[d]] for d in darts):
        report.notes.append("symmetry does not reverse the rotations")
        return
    fixed = {d for d in darts if tau[d] == d}
    equator_darts = {d for e in g.equator for d in g.edges[e][1:]}
    if fixed != equator_darts:
        report.notes.append("fixed darts differ from the equator darts")
        return
    if not g.equator:
        report.notes.append("empty equator")
        return
    # the equator must be one closed circle: 2-regular and connected
    incidence: dict[int, list[int]] = {}
    for e in g.equator:
        _, tail, head = g.edges[e]
        for d in (tail, head):
            incidence.setdefault(t.dart_vertex[d], []).append(e)
    if any(len(es) != 2 for es in incidence.values()):
        report.notes.append("equator is not 2-regular")
        return
    seen_edges = set()
    vertex = next(iter(incidence))
    edge = incidence[vertex][0]
    while edge not in seen_edges:
        seen_edges.add(edge)
        _, tail, head = g.edges[edge]
        ends = {t.dart_vertex[tail], t.dart_vertex[head]}
        vertex = (ends - {vertex}).pop() if len(ends) == 2 else vertex
        nxt = [e for e in incidence[vertex] if e != edge]
        edge = nxt[0] if nxt else edge
    if len(seen_edges) != len(set(g.equator)):
        report.notes.append("equator is not a single circle")
        return
    report.conditions[1] = True


def _faces(t: _Tables) -> list[list[int]]:
    # next dart along a face boundary: cross the edge, then rotate once
    remaining = set(t.dart_vertex)
    faces = []
    while remaining:
        start = min(remaining)
        face = []
        d = start
        while True:
            face.append(d)
            remaining.discard(d)
            d = t.sigma[t.partner[d]]
            if d == start:
                break
        faces.append(face)
    return faces


def _face_pattern_ok(g: DessinMap, t: _Tables, face: list[int]) -> Optional[bool]:
    """None if the boundary is not a coherent covering, else its direction.

    A face traverses each boundary edge tail-to-head (a 'forward' face,
    covering the circle along its orientation) or head-to-tail (a
    'backward' face); mixed faces are invalid.  Consecutive edges of equal
    kind come from plain vertices splitting one arc, so runs collapse
    before the check; along a forward face the collapsed kinds must
    advance a -> b -> c -> a, along a backward face they regress.
    """
    directions = {t.is_tail[d] for d in face}
    if len(directions) != 1:
        return None
    forward = directions.pop()
    kinds = [g.edges[t.dart_edge[d]][0] for d in face]
    collapsed = [k for i, k in enumerate(kinds) if k is not kinds[i - 1]]
    if not collapsed:
        return None  # a single uniform run never covers the circle
    if len(collapsed) % 3:
        return None
    step = _NEXT_KIND if forward else {v: k for k, v in _NEXT_KIND.items()}
    if all(step[collapsed[i]] is collapsed[(i + 1) % len(collapsed)]
           for i in range(len(collapsed))):
        return forward
    return None


def _check_faces(g: DessinMap, t: _Tables, report: DessinReport) -> None:
    faces = _faces(t)
    report.face_count = len(faces)
    vertices = len(g.vertices)
    edges = len(g.edges)
    report.euler = vertices - edges + len(faces)
    report.conditions[6] = False
    # connectivity under "same edge or same vertex"
    parent = list(range(vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, tail, head in g.edges:
        a, b = find(t.dart_vertex[tail]), find(t.dart_vertex[head])
        if a != b:
            parent[a] = b
    if len({find(v) for v in range(vertices)}) != 1:
        report.notes.append("map is not connected")
        return
    if report.euler != 2:
        report.notes.append(f"V - E + F = {report.euler}, map is not of genus 0")
        return
    face_dir = {}
    for i, face in enumerate(faces):
        direction = _face_pattern_ok(g, t, face)
        if direction is None:
            report.notes.append("a face boundary does not cover the colored circle")
            return
        face_dir[i] = direction
    side = {}
    for i, face in enumerate(faces):
        for d in face:
            side[d] = i
    if any(face_dir[side[d]] == face_dir[side[t.partner[d]]] for d in side):
        report.notes.append("two neighboring faces have the same orientation")
        return
    report.conditions[6] = True


def validate_dessin(g: DessinMap) -> DessinReport:
    """Check the six real-dessin conditions; structural errors raise."""
    t = g.tables()
    report = DessinReport(conditions={k: False for k in range(1, 7)})
    _check_symmetry(g, t, report)
    _check_vertex_rules(g, t, report)
    _check_faces(g, t, report)
    return report


# ---------------------------------------------------------------------------
# text format

def parse_dessin(text: str) -> DessinMap:
    """Parse the plain-text map description.

    Lines (``#`` comments allowed)::

        vertex COLOR DART DART ...   # darts counterclockwise
        edge KIND TAIL HEAD
        equator EDGE EDGE ...        # indices into edge lines, in order
        symmetry D:D D:D ...         # dart involution
    """
    vertices = []
    edges = []
    equator: tuple[int, ...] = ()
    symmetry: Optional[dict[int, int]] = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "vertex":
                vertices.append((VertexColor(parts[1]), tuple(int(x) for x in parts[2:])))
            elif parts[0] == "edge":
                edges.append((EdgeKind(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0] == "equator":
                equator = tuple(int(x) for x in parts[1:])
            elif parts[0] == "symmetry":
                symmetry = {}
                for pair in parts[1:]:
                    a, b = pair.split(":")
                    symmetry[int(a)] = int(b)
            else:
                raise ValueError(f"unknown directive {parts[0]!r}")
        except (ValueError, IndexError) as exc:
            raise MalformedMapError(f"line {ln}: {exc}") from None
    return DessinMap(tuple(vertices), tuple(edges), equator, symmetry)


def dessin_to_text(g: DessinMap) -> str:
    lines = []
    for color, darts in g.vertices:
        lines.append("vertex " + color.value + " " + " ".join(map(str, darts)))
    for kind, tail, head in g.edges:
        lines.append(f"edge {kind.value} {tail} {head}")
    if g.equator:
        lines.append("equator " + " ".join(map(str, g.equator)))
    if g.symmetry is not None:
        lines.append("symmetry " + " ".join(f"{a}:{b}" for a, b in sorted(g.symmetry.items())))
    return "\n".join(lines) + "\n"
