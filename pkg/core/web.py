"""Immutable sl3 webs, formal sums of webs and the versioned web text format.

A :class:`Web` stores the canonical form of its rotation system, so two webs
compare equal exactly when they are isomorphic as embedded graphs with the
boundary vertices fixed.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import ParseError, WebStructureError
from core.laurent import LaurentPoly, Scalar
from core.web_graph import CanonicalForm, VertexKind, WebGraph, left_dart, right_dart

WEB_FORMAT_HEADER = "sl3web 1"


@dataclass(frozen=True)
class Face:
    """A region of the upper half-plane cut out by the web.

    ``darts`` walk the face with the region on their left; negative darts run
    along the boundary line. ``vertices`` are canonical vertex ids.
    """
    index: int
    darts: Tuple[int, ...]
    vertices: Tuple[int, ...]
    is_outer: bool
    is_internal: bool

    @property
    def size(self) -> int:
        return sum(1 for dart in self.darts if dart >= 0)


class Web:
    """A directed trivalent graph in the upper half-plane with boundary sources."""

    __slots__ = ("_form", "__dict__")

    def __init__(self, boundary_count: int, kinds: Sequence[Union[str, VertexKind]],
                 edges: Sequence[Tuple[int, int]], rotation: Mapping[int, Sequence[int]],
                 loops: int = 0) -> None:
        """Build and canonicalise a web.

        Args:
            boundary_count: Number m of boundary vertices, ids 0..m-1.
            kinds: ``source``/``sink`` for the internal vertices m, m+1, ...
            edges: (tail, head) pairs; edge ids are list positions.
            rotation: Counterclockwise edge ids around each internal vertex.
            loops: Number of closed circles without vertices.

        Raises:
            WebStructureError: If the data is not a valid web.
        """
        graph = WebGraph(boundary_count)
        for kind in kinds:
            kind = VertexKind(kind)
            if kind == VertexKind.BOUNDARY:
                raise WebStructureError("internal vertices must be sources or sinks")
            graph.add_vertex(kind)
        vertex_count = boundary_count + len(kinds)
        for tail, head in edges:
            if not (0 <= tail < vertex_count and 0 <= head < vertex_count):
                raise WebStructureError(f"edge ({tail},{head}) leaves the vertex range")
            graph.add_edge(tail, head)
        for e, (tail, head) in enumerate(edges):
            if tail < boundary_count:
                graph.rotation[tail].append(2 * e)
            if head < boundary_count:
                graph.rotation[head].append(2 * e + 1)
        for v in range(boundary_count, vertex_count):
            edge_ids = list(rotation.get(v, ()))
            if any(not 0 <= e < len(edges) for e in edge_ids):
                raise WebStructureError(f"rotation at {v} names an unknown edge")
            graph.rotation[v] = [graph.dart_at(e, v) for e in edge_ids]
        if loops < 0:
            raise WebStructureError("loop count must be nonnegative")
        graph.loops = loops
        graph.validate()
        self._form: CanonicalForm = graph.canonical_form()

    @classmethod
    def from_graph(cls, graph: WebGraph) -> "Web":
        """Freeze a graph produced by trusted surgery (no validation)."""
        web = cls.__new__(cls)
        web._form = graph.canonical_form()
        return web

    @classmethod
    def empty(cls, loops: int = 0) -> "Web":
        return cls(0, [], [], {}, loops)

    def to_graph(self) -> WebGraph:
        return WebGraph.from_canonical(self._form)

    @property
    def boundary_count(self) -> int:
        return self._form[0]

    @property
    def kinds(self) -> Tuple[str, ...]:
        return self._form[1]

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return self._form[2]

    @property
    def rotations(self) -> Tuple[Tuple[int, ...], ...]:
        return self._form[3]

    @property
    def loops(self) -> int:
        return self._form[4]

    @property
    def internal_count(self) -> int:
        return len(self.kinds)

    @cached_property
    def key(self) -> bytes:
        return self.to_text().encode("ascii")

    @cached_property
    def boundary_neighbours(self) -> Tuple[int, ...]:
        """Vertex at the other end of each boundary edge."""
        neighbours = [0] * self.boundary_count
        for tail, head in self.edges:
            if tail < self.boundary_count:
                neighbours[tail] = head
        return tuple(neighbours)

    @cached_property
    def has_closed_components(self) -> bool:
        return self.loops > 0 or bool(self.to_graph().components_off_boundary())

    @cached_property
    def tau(self) -> FrozenSet[int]:
        """Indices i whose boundary vertices i and i+1 meet the same internal vertex."""
        neighbours = self.boundary_neighbours
        return frozenset(i for i in range(1, self.boundary_count)
                         if neighbours[i - 1] == neighbours[i])

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        """Faces above the boundary line, outer face included.

        Raises:
            WebStructureError: If a closed component has no determined position.
        """
        if self.has_closed_components:
            raise WebStructureError("faces of floating closed components are not anchored")
        if not self.boundary_count:
            return (Face(0, (), (), True, False),)
        graph = self.to_graph()
        raw = graph.faces()
        outer = graph.outer_face_index(raw)
        below = left_dart(0)
        faces = []
        for k, darts in enumerate(raw):
            if below in darts:
                continue
            vertices = tuple(graph.vertex_of(dart) for dart in darts)
            faces.append(Face(len(faces), darts, vertices, k == outer,
                              graph.is_internal_face(darts)))
        return tuple(faces)

    @cached_property
    def depths(self) -> Dict[Face, int]:
        """Number of edges a path from the outer face must cross to reach each face."""
        faces = self.faces
        if not self.boundary_count:
            return {faces[0]: 0}
        graph = self.to_graph()
        raw = graph.faces()
        depth_of = dict(zip(raw, graph.face_depths(raw)))
        return {face: depth_of[face.darts] for face in faces}

    def boundary_depths(self) -> List[int]:
        """Depths of the m+1 faces touching the line, read left to right."""
        if not self.boundary_count:
            return [0]
        by_dart = {}
        for face, depth in self.depths.items():
            for dart in face.darts:
                by_dart[dart] = depth
        m = self.boundary_count
        return [by_dart[right_dart(m - 1)]] + [by_dart[right_dart(k)] for k in range(m)]

    @cached_property
    def is_reduced(self) -> bool:
        """No loops, no closed components and no internal bigon or square."""
        if self.has_closed_components:
            return False
        return not any(face.is_internal and face.size in (2, 4) for face in self.faces)

    def to_text(self) -> str:
        lines = [WEB_FORMAT_HEADER, f"boundary {self.boundary_count}"]
        m = self.boundary_count
        for offset, kind in enumerate(self.kinds):
            lines.append(f"vertex {m + offset} {kind}")
        for e, (tail, head) in enumerate(self.edges):
            lines.append(f"edge {e} {tail} {head}")
        for offset, edge_ids in enumerate(self.rotations):
            lines.append(f"rotation {m + offset} " + " ".join(str(e) for e in edge_ids))
        lines.append(f"loops {self.loops}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Web":
        """Read the text format; vertex and edge ids may be any distinct integers.

        Raises:
            ParseError: On a wrong header or malformed lines.
            WebStructureError: If the described graph is not a web.
        """
        lines = [line.strip() for line in text.splitlines() if line.strip() and
                 not line.strip().startswith("#")]
        if not lines or lines[0] != WEB_FORMAT_HEADER:
            raise ParseError(f"expected header {WEB_FORMAT_HEADER!r}")
        boundary: Optional[int] = None
        kinds: Dict[int, str] = {}
        edges: Dict[int, Tuple[int, int]] = {}
        rotation: Dict[int, List[int]] = {}
        loops = 0
        try:
            for line in lines[1:]:
                keyword, *fields = line.split()
                if keyword == "boundary":
                    boundary = int(fields[0])
                elif keyword == "vertex":
                    kinds[int(fields[0])] = fields[1]
                elif keyword == "edge":
                    edges[int(fields[0])] = (int(fields[1]), int(fields[2]))
                elif keyword == "rotation":
                    rotation[int(fields[0])] = [int(field) for field in fields[1:]]
                elif keyword == "loops":
                    loops = int(fields[0])
                else:
                    raise ParseError(f"unknown line {line!r}")
        except (IndexError, ValueError) as exception:
            raise ParseError(f"malformed web line: {exception}") from exception
        if boundary is None:
            raise ParseError("missing boundary line")
        vertex_ids = {v: boundary + k for k, v in enumerate(sorted(kinds))}
        vertex_ids.update({k: k for k in range(boundary)})
        edge_ids = {e: k for k, e in enumerate(sorted(edges))}
        try:
            return cls(
                boundary,
                [kinds[v] for v in sorted(kinds)],
                [(vertex_ids[tail], vertex_ids[head]) for _, (tail, head) in sorted(edges.items())],
                {vertex_ids[v]: [edge_ids[e] for e in ids] for v, ids in rotation.items()},
                loops,
            )
        except KeyError as exception:
            raise ParseError(f"unknown vertex or edge id {exception}") from exception
        except ValueError as exception:
            if isinstance(exception, WebStructureError):
                raise
            raise ParseError(str(exception)) from exception

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Web):
            return NotImplemented
        return self._form == other._form

    def __lt__(self, other: "Web") -> bool:
        return self._form < other._form

    def __hash__(self) -> int:
        return hash(self._form)

    def __repr__(self) -> str:
        return (f"Web(m={self.boundary_count}, internal={self.internal_count}, "
                f"edges={len(self.edges)}, loops={self.loops})")


class WebSum:
    """Finite linear combination of webs with Laurent polynomial coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Web, Scalar]] = None) -> None:
        cleaned: Dict[Web, LaurentPoly] = {}
        for web, coefficient in (terms or {}).items():
            value = LaurentPoly.coerce(coefficient)
            if value:
                cleaned[web] = value
        self._terms = cleaned

    @classmethod
    def single(cls, web: Web, coefficient: Scalar = 1) -> "WebSum":
        return cls({web: coefficient})

    def items(self) -> Iterator[Tuple[Web, LaurentPoly]]:
        return iter(sorted(self._terms.items(), key=lambda item: item[0]))

    def webs(self) -> List[Web]:
        return sorted(self._terms)

    def coefficient(self, web: Web) -> LaurentPoly:
        return self._terms.get(web, LaurentPoly())

    def integer_coefficients(self) -> Dict[Web, int]:
        """Coefficients as ints; valid for sums specialised at q = -1.

        Raises:
            ValueError: If a coefficient is not a constant.
        """
        result = {}
        for web, coefficient in self._terms.items():
            if any(code for code, _ in coefficient.items()):
                raise ValueError(f"coefficient {coefficient} is not an integer")
            result[web] = coefficient.coefficient(0)
        return result

    def scale(self, factor: Scalar) -> "WebSum":
        factor = LaurentPoly.coerce(factor)
        return WebSum({web: c * factor for web, c in self._terms.items()})

    def __add__(self, other: "WebSum") -> "WebSum":
        merged = dict(self._terms)
        for web, coefficient in other._terms.items():
            merged[web] = merged.get(web, LaurentPoly()) + coefficient
        return WebSum(merged)

    def __sub__(self, other: "WebSum") -> "WebSum":
        return self + other.scale(-1)

    def __neg__(self) -> "WebSum":
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WebSum):
            return NotImplemented
        return self._terms == other._terms

    def __contains__(self, web: object) -> bool:
        return web in self._terms

    def __iter__(self) -> Iterator[Web]:
        return iter(self.webs())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})·{w!r}" for w, c in self.items()) or "0"
        return f"WebSum({body})"
