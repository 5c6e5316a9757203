"""Skein reduction of sl3 webs and the action of simple transpositions on them.

Terms are rewritten with three local rules until no internal bigon or square
face remains: a circle is a scalar, a bigon collapses to a strand times a
scalar, and a square becomes the sum of its two smoothings. Components that
lose contact with the boundary are evaluated on their own.
"""
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import PreconditionError, WebStructureError
from core.laurent import ONE, LaurentPoly
from core.web import Web, WebSum
from core.web_graph import FaceDarts, WebGraph
from services.khovanov_kuperberg_service import KhovanovKuperbergService

Trace = Callable[[Web, LaurentPoly], None]
Site = Tuple[str, FaceDarts]

ORDERS = ("depth", "reverse", "random")
CLOSED_CACHE_SIZE = 4096


@dataclass(frozen=True)
class SkeinParameters:
    """Coefficients of the two smoothings of a crossing and of the local rules."""
    name: str
    identity: LaurentPoly
    crossing: LaurentPoly
    circle: LaurentPoly
    bigon: LaurentPoly
    symbol: str


SYMMETRIC = SkeinParameters("symmetric", ONE, ONE, LaurentPoly.constant(3),
                            LaurentPoly.constant(-2), "q")
BRAID = SkeinParameters("braid", LaurentPoly.monomial(4), LaurentPoly.monomial(6, -1),
                        LaurentPoly.q_integer(3), LaurentPoly.q_integer(2), "q")
HECKE = SkeinParameters("hecke", LaurentPoly.v(), LaurentPoly.half(),
                        LaurentPoly({2: 1, 0: 1, -2: 1}), LaurentPoly({1: -1, -1: -1}), "v")

PARAMETERS: Dict[str, SkeinParameters] = {p.name: p for p in (SYMMETRIC, BRAID, HECKE)}


class SkeinReductionService:
    """Service reducing web sums and applying generators."""

    def __init__(self, parameters: SkeinParameters = BRAID,
                 closed_cache_size: int = CLOSED_CACHE_SIZE) -> None:
        """Initialize the skein reduction service.

        Args:
            parameters: Default coefficients when a call does not pass its own.
            closed_cache_size: Most closed components whose values are kept.
        """
        self.__logger = logging.getLogger(self.__class__.__name__)
        self.__parameters = parameters
        self.__closed_value = lru_cache(maxsize=closed_cache_size)(self.__evaluate_closed_web)
        self.__kk = KhovanovKuperbergService()

    def reduce(self, web_sum: WebSum, parameters: Optional[SkeinParameters] = None,
               order: str = "depth", seed: Optional[int] = None,
               trace: Optional[Trace] = None) -> WebSum:
        """Rewrite every term into reduced webs.

        Args:
            web_sum: Terms to reduce.
            parameters: Circle and bigon values.
            order: ``depth`` rewrites the deepest face first, ``reverse`` the
                shallowest, ``random`` a seeded random choice.
            seed: Seed for ``random``.
            trace: Called with every intermediate term and its coefficient.

        Raises:
            PreconditionError: On an unknown order.
        """
        parameters = parameters or self.__parameters
        if order not in ORDERS:
            raise PreconditionError(f"unknown reduction order {order!r}; use one of {ORDERS}")
        rng = random.Random(seed)
        totals: Dict[Web, LaurentPoly] = {}
        for web, coefficient in web_sum.items():
            self.__reduce_into(totals, web.to_graph(), coefficient, parameters, order, rng, trace)
        return WebSum(totals)

    def evaluate_closed(self, web: Web, parameters: Optional[SkeinParameters] = None) -> LaurentPoly:
        """Scalar value of a web without boundary.

        Raises:
            PreconditionError: If the web has boundary vertices.
        """
        if web.boundary_count:
            raise PreconditionError("only closed webs evaluate to scalars")
        graph = web.to_graph()
        return self.__detach_closed(graph, parameters or self.__parameters)

    def apply_generator(self, i: int, web_sum: WebSum,
                        parameters: Optional[SkeinParameters] = None,
                        trace: Optional[Trace] = None) -> WebSum:
        """s_i (or T_{s_i}) acting on a sum: identity smoothing plus the H smoothing, reduced.

        Raises:
            PreconditionError: If i is not in 1..m-1.
        """
        parameters = parameters or self.__parameters
        rng = random.Random(0)
        totals: Dict[Web, LaurentPoly] = {}
        for web, coefficient in web_sum.items():
            self.__check_index(i, web)
            self.__reduce_into(totals, web.to_graph(), coefficient * parameters.identity,
                               parameters, "depth", rng, trace)
            graph = web.to_graph()
            graph.insert_h(i)
            self.__reduce_into(totals, graph, coefficient * parameters.crossing,
                               parameters, "depth", rng, trace)
        return WebSum(totals)

    def apply_h(self, i: int, web: Web, parameters: Optional[SkeinParameters] = None) -> WebSum:
        """The reduced H smoothing at strands i, i+1 alone, with coefficient 1."""
        parameters = parameters or self.__parameters
        self.__check_index(i, web)
        graph = web.to_graph()
        graph.insert_h(i)
        totals: Dict[Web, LaurentPoly] = {}
        self.__reduce_into(totals, graph, ONE, parameters, "depth", random.Random(0), None)
        return WebSum(totals)

    def act_word(self, word: Sequence[int], web_sum: WebSum,
                 parameters: Optional[SkeinParameters] = None) -> WebSum:
        """Apply s_{i_1} ... s_{i_k}: the rightmost generator acts first."""
        result = web_sum
        for i in reversed(list(word)):
            result = self.apply_generator(i, result, parameters)
        return result

    def action_matrix(self, i: int, n: int,
                      parameters: Optional[SkeinParameters] = None) -> np.ndarray:
        """Matrix of s_i on the reduced webs of [n,n,n] tableaux; column k is the image of web k.

        Integer dtype for the symmetric specialisation, object dtype holding
        LaurentPoly entries otherwise.

        Raises:
            WebStructureError: If an image leaves the span of reduced webs.
        """
        parameters = parameters or self.__parameters
        basis = self.__kk.reduced_webs(n)
        position = {web: k for k, web in enumerate(basis)}
        symmetric = parameters is SYMMETRIC
        if symmetric:
            matrix = np.zeros((len(basis), len(basis)), dtype=np.int64)
        else:
            matrix = np.full((len(basis), len(basis)), LaurentPoly(), dtype=object)
        for column, web in enumerate(basis):
            image = self.apply_generator(i, WebSum.single(web), parameters)
            for term, coefficient in image.items():
                if term not in position:
                    raise WebStructureError(f"s_{i} image of a basis web is not reduced: {term!r}")
                matrix[position[term], column] = coefficient.coefficient(0) if symmetric else coefficient
        self.__logger.debug(f"s_{i} on {len(basis)} webs ({parameters.name})")
        return matrix

    def closed_cache_info(self):
        """Hits, misses and size of the closed-component value cache."""
        return self.__closed_value.cache_info()

    def __reduce_into(self, totals: Dict[Web, LaurentPoly], graph: WebGraph,
                      coefficient: LaurentPoly, parameters: SkeinParameters, order: str,
                      rng: random.Random, trace: Optional[Trace]) -> None:
        work: List[Tuple[LaurentPoly, WebGraph]] = [(coefficient, graph)]
        steps = 0
        while work:
            coefficient, graph = work.pop()
            coefficient = coefficient * self.__detach_closed(graph, parameters)
            if not coefficient:
                continue
            if trace is not None:
                trace(Web.from_graph(graph), coefficient)
            site = self.__choose_site(graph, order, rng)
            if site is None:
                web = Web.from_graph(graph)
                totals[web] = totals.get(web, LaurentPoly()) + coefficient
                continue
            steps += 1
            for factor, successor in self.__apply_site(graph, site, parameters):
                work.append((coefficient * factor, successor))
        self.__logger.debug(f"reduction finished after {steps} rewrites")

    def __detach_closed(self, graph: WebGraph, parameters: SkeinParameters) -> LaurentPoly:
        """Remove loops and closed components, returning the product of their values."""
        factor = parameters.circle ** graph.loops if graph.loops else ONE
        graph.loops = 0
        for component in graph.components_off_boundary():
            piece = graph.split_off(component)
            factor = factor * self.__evaluate_connected(piece, parameters)
        return factor

    def __evaluate_connected(self, piece: WebGraph, parameters: SkeinParameters) -> LaurentPoly:
        return self.__closed_value(Web.from_graph(piece), parameters)

    def __evaluate_closed_web(self, web: Web, parameters: SkeinParameters) -> LaurentPoly:
        piece = web.to_graph()
        site = self.__choose_site(piece, "depth", None)
        if site is None:
            raise WebStructureError("closed web without a bigon or square face")
        value = LaurentPoly()
        for factor, successor in self.__apply_site(piece, site, parameters):
            value = value + factor * self.__detach_closed(successor, parameters)
        return value

    @staticmethod
    def __choose_site(graph: WebGraph, order: str, rng: Optional[random.Random]) -> Optional[Site]:
        faces = graph.faces()
        bigons = [k for k, face in enumerate(faces)
                  if len(face) == 2 and graph.is_internal_face(face)]
        kind = "bigon"
        candidates = bigons
        if not bigons:
            kind = "square"
            candidates = [k for k, face in enumerate(faces)
                          if len(face) == 4 and graph.is_internal_face(face) and
                          graph.square_legs(face) is not None]
        if not candidates:
            return None
        if order == "random" and rng is not None:
            return kind, faces[rng.choice(candidates)]
        depths = graph.face_depths(faces)
        if order == "reverse":
            chosen = min(candidates, key=lambda k: (depths[k], -min(faces[k])))
        else:
            chosen = max(candidates, key=lambda k: (depths[k], -min(faces[k])))
        return kind, faces[chosen]

    @staticmethod
    def __apply_site(graph: WebGraph, site: Site,
                     parameters: SkeinParameters) -> List[Tuple[LaurentPoly, WebGraph]]:
        kind, face = site
        if kind == "bigon":
            graph.collapse_bigon(face)
            return [(parameters.bigon, graph)]
        other = graph.copy()
        graph.smooth_square(face, 0)
        other.smooth_square(face, 1)
        return [(ONE, graph), (ONE, other)]

    def __check_index(self, i: int, web: Web) -> None:
        if not 1 <= i <= web.boundary_count - 1:
            self.__logger.error(f"generator s_{i} does not act on {web.boundary_count} strands")
            raise PreconditionError(f"s_{i} needs 1 <= i <= {web.boundary_count - 1}")
