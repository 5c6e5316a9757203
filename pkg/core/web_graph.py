"""Mutable trivalent graphs embedded in the upper half-plane.

Vertices 0..m-1 sit on the boundary line from left to right; every other
vertex is a source or a sink of degree three. Edge e owns two darts: 2e at its
tail and 2e+1 at its head. ``rotation[v]`` lists the darts at v in
counterclockwise order.

The boundary line adds virtual darts so that faces can be traced with one
rule: R_k = -1-2k leaves b_k to the right and L_k = -2-2k leaves b_k to the
left. R_{m-1} and L_0 are twins and close the line under the picture, which
makes the region below the line one more face.
"""
from collections import deque
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from core.errors import WebStructureError

FaceDarts = Tuple[int, ...]
CanonicalForm = Tuple[int, Tuple[str, ...], Tuple[Tuple[int, int], ...],
                      Tuple[Tuple[int, ...], ...], int]


class VertexKind(str, Enum):
    BOUNDARY = "boundary"
    SOURCE = "source"
    SINK = "sink"


def right_dart(k: int) -> int:
    return -1 - 2 * k


def left_dart(k: int) -> int:
    return -2 - 2 * k


def line_vertex(dart: int) -> int:
    """Boundary vertex carrying a virtual dart."""
    return (-1 - dart) // 2


def is_right_dart(dart: int) -> bool:
    return dart < 0 and dart % 2 == 1


class WebGraph:
    """Rotation system of a web under surgery.

    Ids are never reused, so vertex and edge ids may have gaps after
    reductions. :meth:`canonical_form` produces dense labels.
    """

    def __init__(self, boundary_count: int) -> None:
        self.boundary_count = boundary_count
        self.kinds: Dict[int, VertexKind] = {k: VertexKind.BOUNDARY for k in range(boundary_count)}
        self.tails: Dict[int, int] = {}
        self.heads: Dict[int, int] = {}
        self.rotation: Dict[int, List[int]] = {k: [] for k in range(boundary_count)}
        self.loops = 0
        self.__next_vertex = boundary_count
        self.__next_edge = 0

    @classmethod
    def from_canonical(cls, form: CanonicalForm) -> "WebGraph":
        boundary_count, kinds, edges, rotations, loops = form
        graph = cls(boundary_count)
        for kind in kinds:
            graph.add_vertex(VertexKind(kind))
        for tail, head in edges:
            graph.add_edge(tail, head)
        for e, (tail, _) in enumerate(edges):
            if tail < boundary_count:
                graph.rotation[tail] = [2 * e]
        for offset, edge_ids in enumerate(rotations):
            v = boundary_count + offset
            graph.rotation[v] = [graph.dart_at(e, v) for e in edge_ids]
        graph.loops = loops
        return graph

    def copy(self) -> "WebGraph":
        clone = WebGraph(0)
        clone.boundary_count = self.boundary_count
        clone.kinds = dict(self.kinds)
        clone.tails = dict(self.tails)
        clone.heads = dict(self.heads)
        clone.rotation = {v: list(darts) for v, darts in self.rotation.items()}
        clone.loops = self.loops
        clone.__next_vertex = self.__next_vertex
        clone.__next_edge = self.__next_edge
        return clone

    def add_vertex(self, kind: VertexKind) -> int:
        v = self.__next_vertex
        self.__next_vertex += 1
        self.kinds[v] = kind
        self.rotation[v] = []
        return v

    def add_edge(self, tail: int, head: int) -> int:
        """Add an edge; rotations are left for the caller to place."""
        e = self.__next_edge
        self.__next_edge += 1
        self.tails[e] = tail
        self.heads[e] = head
        return e

    def remove_edge(self, e: int) -> None:
        for dart in (2 * e, 2 * e + 1):
            v = self.vertex_of(dart)
            darts = self.rotation.get(v)
            if darts is not None and dart in darts:
                darts.remove(dart)
        del self.tails[e]
        del self.heads[e]

    def remove_vertex(self, v: int) -> None:
        del self.kinds[v]
        del self.rotation[v]

    def vertex_of(self, dart: int) -> int:
        if dart < 0:
            return line_vertex(dart)
        return self.heads[dart >> 1] if dart & 1 else self.tails[dart >> 1]

    def other_end(self, dart: int) -> int:
        return self.vertex_of(dart ^ 1)

    def dart_at(self, e: int, v: int) -> int:
        if self.tails[e] == v:
            return 2 * e
        if self.heads[e] == v:
            return 2 * e + 1
        raise WebStructureError(f"edge {e} does not meet vertex {v}")

    def boundary_dart(self, k: int) -> int:
        return self.rotation[k][0]

    def internal_vertices(self) -> List[int]:
        return sorted(v for v in self.kinds if v >= self.boundary_count)

    def edge_ids(self) -> List[int]:
        return sorted(self.tails)

    def third_dart(self, v: int, excluded: Iterable[int]) -> int:
        excluded = set(excluded)
        remaining = [d for d in self.rotation[v] if d not in excluded]
        if len(remaining) != 1:
            raise WebStructureError(f"vertex {v} has no unique third dart")
        return remaining[0]

    def reattach(self, e: int, at_head: bool, vertex: int, slot: int) -> None:
        """Move one end of ``e`` to ``vertex`` into the rotation slot of ``slot``."""
        dart = 2 * e + 1 if at_head else 2 * e
        previous = self.vertex_of(dart)
        darts = self.rotation.get(previous)
        if darts is not None and dart in darts:
            darts.remove(dart)
        if at_head:
            self.heads[e] = vertex
        else:
            self.tails[e] = vertex
        target = self.rotation[vertex]
        target[target.index(slot)] = dart

    def insert_h(self, i: int) -> None:
        """Join the strands at boundary positions i and i+1 (1-based) by an H.

        A new sink u takes both boundary edges; a new source w above it sends
        the old strands on to their former endpoints, with the link w -> u.
        """
        left, right = i - 1, i
        e_left = self.boundary_dart(left) >> 1
        e_right = self.boundary_dart(right) >> 1
        u = self.add_vertex(VertexKind.SINK)
        w = self.add_vertex(VertexKind.SOURCE)
        self.tails[e_left] = w
        self.tails[e_right] = w
        a = self.add_edge(left, u)
        b = self.add_edge(right, u)
        link = self.add_edge(w, u)
        self.rotation[left] = [2 * a]
        self.rotation[right] = [2 * b]
        self.rotation[u] = [2 * a + 1, 2 * b + 1, 2 * link + 1]
        self.rotation[w] = [2 * e_right, 2 * e_left, 2 * link]

    def collapse_bigon(self, face: FaceDarts) -> None:
        """Replace a bigon by a single strand; a theta becomes a loop."""
        e1, e2 = face[0] >> 1, face[1] >> 1
        x, y = self.tails[e1], self.heads[e1]
        ex = self.third_dart(x, (2 * e1, 2 * e2)) >> 1
        ey = self.third_dart(y, (2 * e1 + 1, 2 * e2 + 1)) >> 1
        if ex == ey:
            for e in (e1, e2, ex):
                self.remove_edge(e)
            self.loops += 1
        else:
            self.reattach(ey, at_head=True, vertex=self.heads[ex], slot=2 * ex + 1)
            for e in (ex, e1, e2):
                self.remove_edge(e)
        self.remove_vertex(x)
        self.remove_vertex(y)

    def square_legs(self, face: FaceDarts) -> Optional[List[int]]:
        """Leg edges of a square face in face order, or None if degenerate."""
        corners = [self.vertex_of(d) for d in face]
        sides = {d >> 1 for d in face}
        if len(set(corners)) != 4 or len(sides) != 4:
            return None
        legs = []
        for corner in corners:
            at_corner = [self.dart_at(e, corner) for e in sides
                         if corner in (self.tails[e], self.heads[e])]
            leg = self.third_dart(corner, at_corner) >> 1
            if self.vertex_of(self.dart_at(leg, corner) ^ 1) in corners:
                return None
            legs.append(leg)
        return legs

    def smooth_square(self, face: FaceDarts, pairing: int) -> None:
        """Remove a square, joining legs of corners (0,1),(2,3) or (1,2),(3,0)."""
        corners = [self.vertex_of(d) for d in face]
        legs = self.square_legs(face)
        if legs is None:
            raise WebStructureError("square face is degenerate")
        sides = {d >> 1 for d in face}
        pairs = ((0, 1), (2, 3)) if pairing == 0 else ((1, 2), (3, 0))
        for a, b in pairs:
            if self.kinds[corners[a]] == VertexKind.SOURCE:
                source_leg, sink_leg = legs[a], legs[b]
            else:
                source_leg, sink_leg = legs[b], legs[a]
            self.reattach(sink_leg, at_head=True, vertex=self.heads[source_leg],
                          slot=2 * source_leg + 1)
            self.remove_edge(source_leg)
        for e in sides:
            self.remove_edge(e)
        for corner in corners:
            self.remove_vertex(corner)

    def extended_rotation(self, v: int) -> List[int]:
        if v < self.boundary_count:
            return [right_dart(v)] + self.rotation[v] + [left_dart(v)]
        return self.rotation[v]

    def twin(self, dart: int) -> int:
        if dart >= 0:
            return dart ^ 1
        m = self.boundary_count
        k = line_vertex(dart)
        if is_right_dart(dart):
            return left_dart((k + 1) % m)
        return right_dart((k - 1) % m)

    def faces(self) -> List[FaceDarts]:
        """Trace every face, keeping it on the left of each dart.

        The successor of d is the dart preceding twin(d) in the rotation at
        the vertex twin(d) starts from.
        """
        rotations = {v: self.extended_rotation(v) for v in sorted(self.kinds)}
        position: Dict[int, Tuple[int, int]] = {}
        for v, darts in rotations.items():
            for index, dart in enumerate(darts):
                position[dart] = (v, index)
        seen: Set[int] = set()
        faces: List[FaceDarts] = []
        for darts in rotations.values():
            for start in darts:
                if start in seen:
                    continue
                walk = []
                dart = start
                while dart not in seen:
                    seen.add(dart)
                    walk.append(dart)
                    v, index = position[self.twin(dart)]
                    dart = rotations[v][index - 1]
                if dart != start:
                    raise WebStructureError("face traversal did not close; the rotation is inconsistent")
                faces.append(tuple(walk))
        return faces

    def outer_face_index(self, faces: Sequence[FaceDarts]) -> Optional[int]:
        if not self.boundary_count:
            return None
        marker = right_dart(self.boundary_count - 1)
        return next(k for k, face in enumerate(faces) if marker in face)

    def face_depths(self, faces: Sequence[FaceDarts]) -> List[Optional[int]]:
        """Edge-crossing distance of each face from the outer face.

        Faces that cannot be reached across real edges (the region below the
        line) get None. Without a boundary the first face is the root.
        """
        face_of: Dict[int, int] = {}
        for k, face in enumerate(faces):
            for dart in face:
                face_of[dart] = k
        root = self.outer_face_index(faces)
        if root is None:
            root = 0
        depths: List[Optional[int]] = [None] * len(faces)
        if not faces:
            return depths
        depths[root] = 0
        queue = deque([root])
        while queue:
            k = queue.popleft()
            for dart in faces[k]:
                if dart < 0:
                    continue
                neighbour = face_of[dart ^ 1]
                if depths[neighbour] is None:
                    depths[neighbour] = depths[k] + 1
                    queue.append(neighbour)
        return depths

    def is_internal_face(self, face: FaceDarts) -> bool:
        return all(dart >= 0 for dart in face)

    def components_off_boundary(self) -> List[Set[int]]:
        """Vertex sets of connected components that touch no boundary vertex."""
        reached = self.__reach(range(self.boundary_count))
        components = []
        for v in sorted(self.kinds):
            if v in reached:
                continue
            component = self.__reach([v])
            reached |= component
            components.append(component)
        return components

    def split_off(self, vertices: Set[int]) -> "WebGraph":
        """Move a closed component into a graph of its own."""
        piece = WebGraph(0)
        edges = sorted(e for e, tail in self.tails.items() if tail in vertices)
        for v in sorted(vertices):
            piece.kinds[v] = self.kinds[v]
            piece.rotation[v] = list(self.rotation[v])
        for e in edges:
            piece.tails[e] = self.tails[e]
            piece.heads[e] = self.heads[e]
        piece.__next_vertex = self.__next_vertex
        piece.__next_edge = self.__next_edge
        for e in edges:
            del self.tails[e]
            del self.heads[e]
        for v in vertices:
            self.remove_vertex(v)
        return piece

    def validate(self) -> None:
        """Check degrees, orientation and the Euler relation of each component.

        Raises:
            WebStructureError: On any violation.
        """
        m = self.boundary_count
        for e in self.tails:
            tail, head = self.tails[e], self.heads[e]
            if tail not in self.kinds or head not in self.kinds:
                raise WebStructureError(f"edge {e} has a missing endpoint")
            if self.kinds[tail] == VertexKind.SINK or self.kinds[head] != VertexKind.SINK:
                raise WebStructureError(f"edge {e} must run from a source to a sink")
        incidence: Dict[int, List[int]] = {v: [] for v in self.kinds}
        for e in self.tails:
            incidence[self.tails[e]].append(2 * e)
            incidence[self.heads[e]].append(2 * e + 1)
        for v, kind in self.kinds.items():
            expected = sorted(incidence[v])
            if sorted(self.rotation.get(v, [])) != expected:
                raise WebStructureError(f"rotation at vertex {v} does not list its edges")
            degree = 1 if kind == VertexKind.BOUNDARY else 3
            if len(expected) != degree:
                raise WebStructureError(f"vertex {v} has degree {len(expected)}, expected {degree}")
        faces = self.faces()
        for component in [self.__reach(range(m))] if m else []:
            self.__check_euler(component, faces, line_edges=m)
        for component in self.components_off_boundary():
            self.__check_euler(component, faces, line_edges=0)

    def canonical_form(self) -> CanonicalForm:
        """Dense relabelling by breadth-first traversal along the rotation.

        The anchored part is traversed from b_0..b_{m-1}; closed components
        start from whichever dart gives the smallest encoding and are sorted.
        """
        m = self.boundary_count
        starts = [(k, self.rotation[k][0]) for k in range(m)]
        order, entries, edge_order = self.__traverse(starts)
        pieces = []
        for component in self.components_off_boundary():
            best = None
            for v in sorted(component):
                for dart in self.rotation[v]:
                    candidate = self.__traverse([(v, dart)])
                    encoded = self.__encode(0, *candidate)
                    if best is None or encoded < best[0]:
                        best = (encoded, candidate)
            pieces.append(best)
        pieces.sort(key=lambda piece: piece[0])
        for _, (piece_order, piece_entries, piece_edges) in pieces:
            order += piece_order
            entries.update(piece_entries)
            edge_order += piece_edges
        return self.__encode(m, order, entries, edge_order)

    def __encode(self, m: int, order: List[int], entries: Dict[int, int],
                 edge_order: List[int]) -> CanonicalForm:
        vertex_label = {v: k for k, v in enumerate(order)}
        edge_label = {e: k for k, e in enumerate(edge_order)}
        kinds = tuple(self.kinds[v].value for v in order[m:])
        edges = tuple((vertex_label[self.tails[e]], vertex_label[self.heads[e]]) for e in edge_order)
        rotations = []
        for v in order[m:]:
            darts = self.rotation[v]
            k = darts.index(entries[v])
            rotations.append(tuple(edge_label[d >> 1] for d in darts[k:] + darts[:k]))
        return m, kinds, edges, tuple(rotations), self.loops

    def __traverse(self, starts: Sequence[Tuple[int, int]]
                   ) -> Tuple[List[int], Dict[int, int], List[int]]:
        order: List[int] = []
        entries: Dict[int, int] = {}
        for v, dart in starts:
            order.append(v)
            entries[v] = dart
        labelled = set(order)
        edge_order: List[int] = []
        edge_seen: Set[int] = set()
        queue = deque(order)
        while queue:
            v = queue.popleft()
            darts = self.rotation[v]
            k = darts.index(entries[v])
            for dart in darts[k:] + darts[:k]:
                e = dart >> 1
                if e not in edge_seen:
                    edge_seen.add(e)
                    edge_order.append(e)
                u = self.vertex_of(dart ^ 1)
                if u not in labelled:
                    labelled.add(u)
                    entries[u] = dart ^ 1
                    order.append(u)
                    queue.append(u)
        return order, entries, edge_order

    def __reach(self, starts: Iterable[int]) -> Set[int]:
        reached = set(starts)
        queue = deque(reached)
        while queue:
            v = queue.popleft()
            for dart in self.rotation[v]:
                u = self.vertex_of(dart ^ 1)
                if u not in reached:
                    reached.add(u)
                    queue.append(u)
        return reached

    def __check_euler(self, component: Set[int], faces: Sequence[FaceDarts],
                      line_edges: int) -> None:
        edges = sum(1 for e, tail in self.tails.items() if tail in component) + line_edges
        face_count = sum(1 for face in faces if self.vertex_of(face[0]) in component)
        if len(component) - edges + face_count != 2:
            raise WebStructureError(
                f"embedding is not planar: V={len(component)} E={edges} F={face_count}")
