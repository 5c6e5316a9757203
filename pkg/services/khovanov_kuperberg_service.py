"""The Khovanov-Kuperberg bijection between [n,n,n] tableaux and reduced webs.

Webs to words: label each face above the boundary line by its depth and read,
at every boundary vertex, whether the depth rises (+), stays (0) or falls (-).
Tableaux to webs: draw the M-diagram, resolve every crossing of a left arc
with a right arc into a sink/source pair, and turn each middle point into a
sink.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from core.errors import ShapeError, UnreducedWebError, WebStructureError
from core.tableau import StandardTableau, YamanouchiWord
from core.web import Face, Web
from core.web_graph import VertexKind, WebGraph

Arc = Tuple[int, int]


@dataclass(frozen=True)
class MDiagram:
    """Arcs over the points 1..3n: top -> middle (left arcs) and middle -> bottom (right arcs)."""
    n: int
    left_arcs: Tuple[Arc, ...]
    right_arcs: Tuple[Arc, ...]

    def crossings(self) -> List[Tuple[Arc, Arc, Fraction]]:
        """Crossing left/right arc pairs with the x-coordinate of the crossing.

        Arcs are semicircles over their endpoints; arcs sharing their middle
        point do not cross.
        """
        found = []
        for left in self.left_arcs:
            i, j = left
            for right in self.right_arcs:
                a, k = right
                if i < a < j < k or a < i < k < j:
                    found.append((left, right, _crossing_x(left, right)))
        return found


class KhovanovKuperbergService:
    """Service converting between [n,n,n] tableaux, Yamanouchi words and webs."""

    def __init__(self) -> None:
        """Initialize the Khovanov-Kuperberg service."""
        self.__logger = logging.getLogger(self.__class__.__name__)
        self.__reduced_webs: Dict[int, List[Web]] = {}

    def m_diagram(self, tableau: StandardTableau) -> MDiagram:
        """Greedy nearest-free-neighbour matching.

        Each middle entry, in increasing order, takes the nearest unused top
        entry to its left; then each bottom entry takes the nearest unused
        middle entry to its left.

        Raises:
            ShapeError: If the shape is not [n,n,n].
        """
        n = self.__rectangle_size(tableau)
        top, middle, bottom = tableau.rows
        left_arcs = _match_left(top, middle)
        right_arcs = _match_left(middle, bottom)
        return MDiagram(n, tuple(sorted(left_arcs, key=lambda arc: arc[1])),
                        tuple(sorted(right_arcs, key=lambda arc: arc[0])))

    def tableau_to_web(self, tableau: StandardTableau) -> Web:
        """Resolve the M-diagram of T into a reduced web.

        Raises:
            ShapeError: If the shape is not [n,n,n].
        """
        diagram = self.m_diagram(tableau)
        graph = WebGraph(3 * diagram.n)
        crossings = diagram.crossings()

        links: Dict[Tuple[Arc, Arc], Tuple[int, int, int]] = {}
        for left, right, _ in crossings:
            u = graph.add_vertex(VertexKind.SINK)
            w = graph.add_vertex(VertexKind.SOURCE)
            links[(left, right)] = (u, w, graph.add_edge(w, u))

        sinks: Dict[int, int] = {}
        middle_edges: Dict[int, int] = {}
        for _, j in diagram.left_arcs:
            sinks[j] = graph.add_vertex(VertexKind.SINK)
            middle_edges[j] = graph.add_edge(j - 1, sinks[j])
            graph.rotation[j - 1] = [2 * middle_edges[j]]

        incoming: Dict[Tuple[Arc, Arc, str], int] = {}
        outgoing: Dict[Tuple[Arc, Arc, str], int] = {}
        last_edge: Dict[Tuple[int, str], int] = {}
        for side, arcs in (("L", diagram.left_arcs), ("R", diagram.right_arcs)):
            for arc in arcs:
                start = arc[0] if side == "L" else arc[1]
                middle = arc[1] if side == "L" else arc[0]
                along = sorted(((c_left, c_right, x) for c_left, c_right, x in crossings
                                if (c_left if side == "L" else c_right) == arc),
                               key=lambda item: item[2], reverse=side == "R")
                tail = start - 1
                previous = None
                for c_left, c_right, _ in along:
                    u, w, _ = links[(c_left, c_right)]
                    e = graph.add_edge(tail, u)
                    if previous is None:
                        graph.rotation[start - 1] = [2 * e]
                    else:
                        outgoing[previous] = e
                    incoming[(c_left, c_right, side)] = e
                    previous = (c_left, c_right, side)
                    tail = w
                e = graph.add_edge(tail, sinks[middle])
                if previous is None:
                    graph.rotation[start - 1] = [2 * e]
                else:
                    outgoing[previous] = e
                last_edge[(middle, side)] = e

        for (left, right), (u, w, link) in links.items():
            lin, rin = incoming[(left, right, "L")], incoming[(left, right, "R")]
            lout, rout = outgoing[(left, right, "L")], outgoing[(left, right, "R")]
            if _centre(left) > _centre(right):
                graph.rotation[u] = [2 * lin + 1, 2 * rin + 1, 2 * link + 1]
                graph.rotation[w] = [2 * lout, 2 * rout, 2 * link]
            else:
                graph.rotation[u] = [2 * rin + 1, 2 * lin + 1, 2 * link + 1]
                graph.rotation[w] = [2 * rout, 2 * lout, 2 * link]
        for j, sink in sinks.items():
            graph.rotation[sink] = [2 * middle_edges[j] + 1, 2 * last_edge[(j, "R")] + 1,
                                    2 * last_edge[(j, "L")] + 1]

        graph.validate()
        web = Web.from_graph(graph)
        self.__logger.debug(
            f"web of {tableau}: {web.internal_count} internal vertices, "
            f"{len(crossings)} crossings")
        return web

    def faces(self, web: Web) -> Tuple[Face, ...]:
        return web.faces

    def depths(self, web: Web) -> Dict[Face, int]:
        return web.depths

    def boundary_depths(self, web: Web) -> List[int]:
        return web.boundary_depths()

    def web_to_yamanouchi(self, web: Web) -> YamanouchiWord:
        """Read +, 0, - from the depth change across each boundary vertex.

        Raises:
            UnreducedWebError: If the web is not reduced.
            WebStructureError: If two neighbouring depths differ by more than one.
        """
        if not web.is_reduced:
            self.__logger.error(f"Yamanouchi word requested for unreduced {web!r}")
            raise UnreducedWebError("Khovanov-Kuperberg words are defined for reduced webs")
        depths = web.boundary_depths()
        symbols = []
        for before, after in zip(depths, depths[1:]):
            change = after - before
            if abs(change) > 1:
                raise WebStructureError(f"depth jumps from {before} to {after} at the boundary")
            symbols.append({1: "+", 0: "0", -1: "-"}[change])
        return YamanouchiWord("".join(symbols))

    def web_to_tableau(self, web: Web) -> StandardTableau:
        return self.web_to_yamanouchi(web).to_tableau()

    def web_from_yamanouchi(self, word: YamanouchiWord) -> Web:
        return self.tableau_to_web(word.to_tableau())

    def reduced_webs(self, n: int) -> List[Web]:
        """Webs of all [n,n,n] tableaux, in lexicographic tableau order."""
        if n not in self.__reduced_webs:
            self.__reduced_webs[n] = [
                self.tableau_to_web(tableau) for tableau in StandardTableau.all((n, n, n))
            ]
            self.__logger.info(f"🕸️ {len(self.__reduced_webs[n])} reduced webs on {3 * n} points")
        return self.__reduced_webs[n]

    @staticmethod
    def __rectangle_size(tableau: StandardTableau) -> int:
        shape = tableau.shape
        if len(shape) != 3 or len(set(shape)) != 1:
            raise ShapeError(f"M-diagrams need shape [n,n,n], got {list(shape)}")
        return shape[0]


def _match_left(targets: Tuple[int, ...], sources: Tuple[int, ...]) -> List[Arc]:
    """Pair each source, in increasing order, with the nearest unused smaller target."""
    free: List[int] = []
    arcs = []
    merged = sorted([(value, 0) for value in targets] + [(value, 1) for value in sources])
    for value, is_source in merged:
        if not is_source:
            free.append(value)
            continue
        if not free:
            raise ShapeError(f"no free partner left of {value}")
        arcs.append((free.pop(), value))
    return arcs


def _centre(arc: Arc) -> Fraction:
    return Fraction(arc[0] + arc[1], 2)


def _crossing_x(left: Arc, right: Arc) -> Fraction:
    """x-coordinate where two semicircles meet: equal heights above the line."""
    c1, c2 = _centre(left), _centre(right)
    r1, r2 = Fraction(left[1] - left[0], 2), Fraction(right[1] - right[0], 2)
    return (c1 + c2) / 2 + (r1 * r1 - r2 * r2) / (2 * (c2 - c1))
