"""Generalized tau-invariants by iterated partition refinement.

Objects of one or several systems start out grouped by tau. A refinement
round splits a block whenever two members are sent, by some f(i,j) defined on
both, into different blocks of the previous round. The stable partition
groups objects with equal generalized tau-invariant.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from core.errors import PreconditionError

Member = Tuple[int, Any]


class TauSystem:
    """A finite set with tau and partial maps f(i,j) defined on D_{i,j}.

    ``tau`` and ``f`` results are memoised; objects are enumerated lazily on
    first use.
    """

    def __init__(
        self,
        name: str,
        rank: int,
        enumerate_objects: Callable[[], Iterable[Hashable]],
        tau: Callable[[Hashable], FrozenSet[int]],
        f: Callable[[int, int, Hashable], Hashable],
        label: Callable[[Hashable], str] = str,
    ) -> None:
        self.name = name
        self.rank = rank
        self.label = label
        self.__enumerate = enumerate_objects
        self.__tau = tau
        self.__f = f
        self.__objects: Optional[List[Hashable]] = None
        self.__tau_cache: Dict[Hashable, FrozenSet[int]] = {}
        self.__f_cache: Dict[Tuple[int, int, Hashable], Hashable] = {}

    @property
    def objects(self) -> List[Hashable]:
        if self.__objects is None:
            self.__objects = list(self.__enumerate())
        return self.__objects

    def tau_of(self, x: Hashable) -> FrozenSet[int]:
        if x not in self.__tau_cache:
            self.__tau_cache[x] = frozenset(self.__tau(x))
        return self.__tau_cache[x]

    def in_domain(self, i: int, j: int, x: Hashable) -> bool:
        tau = self.tau_of(x)
        return i in tau and j not in tau

    def apply(self, i: int, j: int, x: Hashable) -> Hashable:
        key = (i, j, x)
        if key not in self.__f_cache:
            self.__f_cache[key] = self.__f(i, j, x)
        return self.__f_cache[key]

    def __repr__(self) -> str:
        return f"TauSystem({self.name!r}, rank={self.rank})"


@dataclass(frozen=True)
class PartitionResult:
    """Blocks of (system index, object) pairs after refinement."""
    blocks: Tuple[Tuple[Member, ...], ...]
    order: int
    block_counts: Tuple[int, ...]

    def block_of(self, system_index: int, x: Hashable) -> Tuple[Member, ...]:
        for block in self.blocks:
            if (system_index, x) in block:
                return block
        raise KeyError(x)


@dataclass(frozen=True)
class MatchResult:
    matched: bool
    mapping: Dict[Any, Any] = field(hash=False)
    problems: Tuple[str, ...]
    order: int


class MatchReport(BaseModel):
    """Summary of a cross-system matching, printed by the CLI."""
    system_a: str
    system_b: str
    rank: int
    matched: bool
    pairs: int
    order: int
    problems: List[str]


class GeneralizedTauService:
    """Service computing order-k and stable partitions across tau systems."""

    def __init__(self) -> None:
        """Initialize the generalized tau service."""
        self.__logger = logging.getLogger(self.__class__.__name__)

    def order_k_partition(self, systems: Sequence[TauSystem], k: int) -> PartitionResult:
        """The partition by equivalence of order k on the disjoint union.

        Raises:
            PreconditionError: If the systems have different ranks or k < 0.
        """
        if k < 0:
            raise PreconditionError(f"order must be nonnegative, got {k}")
        return self.__refine(systems, max_rounds=k)

    def fixpoint_partition(self, systems: Sequence[TauSystem]) -> PartitionResult:
        """Refine until stable; ``order`` is the first k with the order-k partition stable."""
        return self.__refine(systems, max_rounds=None)

    def match_across(self, a: TauSystem, b: TauSystem, bijective: bool = True) -> MatchResult:
        """Pair objects of A and B with equal generalized tau-invariant.

        With ``bijective`` every block must hold one object of each system;
        otherwise every block holds exactly one B object and at least one A
        object, giving a map A -> B.
        """
        partition = self.fixpoint_partition([a, b])
        mapping: Dict[Any, Any] = {}
        problems: List[str] = []
        for block in partition.blocks:
            side_a = [x for index, x in block if index == 0]
            side_b = [x for index, x in block if index == 1]
            ok = len(side_b) == 1 and (len(side_a) == 1 if bijective else len(side_a) >= 1)
            if not ok:
                labels = [a.label(x) for x in side_a] + [b.label(x) for x in side_b]
                problems.append(f"{len(side_a)}:{len(side_b)} block {labels[:6]}")
                continue
            for x in side_a:
                mapping[x] = side_b[0]
        matched = not problems
        if matched:
            self.__logger.info(f"✅ {a.name} ↔ {b.name}: {len(mapping)} pairs, order {partition.order}")
        else:
            self.__logger.warning(f"⚠️ {a.name} ↔ {b.name}: {len(problems)} unmatched blocks")
        return MatchResult(matched, mapping, tuple(problems), partition.order)

    def __refine(self, systems: Sequence[TauSystem], max_rounds: Optional[int]) -> PartitionResult:
        if not systems:
            return PartitionResult((), 0, (0,))
        rank = systems[0].rank
        if any(system.rank != rank for system in systems):
            self.__logger.error(f"rank mismatch: {[s.rank for s in systems]}")
            raise PreconditionError("all tau systems must share the same rank")

        members: List[Member] = [(index, x) for index, system in enumerate(systems)
                                 for x in system.objects]
        position = {member: k for k, member in enumerate(members)}
        pairs = [(i, j) for i in range(1, rank) for j in (i - 1, i + 1) if 1 <= j <= rank - 1]

        blocks = _relabel([tuple(sorted(systems[index].tau_of(x))) for index, x in members])
        counts = [max(blocks, default=-1) + 1]
        order = 0
        while max_rounds is None or order < max_rounds:
            signatures = []
            for index, x in members:
                system = systems[index]
                images = []
                for i, j in pairs:
                    if system.in_domain(i, j, x):
                        image = position.get((index, system.apply(i, j, x)))
                        if image is None:
                            raise PreconditionError(
                                f"{system.name}: f({i},{j}) leaves the system at {system.label(x)}")
                        images.append((i, j, blocks[image]))
                signatures.append((blocks[position[(index, x)]], tuple(images)))
            refined = _relabel(signatures)
            refined_count = max(refined, default=-1) + 1
            if refined_count == counts[-1]:
                break
            blocks = refined
            counts.append(refined_count)
            order += 1
            self.__logger.debug(f"round {order}: {refined_count} blocks")

        grouped: Dict[int, List[Member]] = {}
        for member, block in zip(members, blocks):
            grouped.setdefault(block, []).append(member)
        result_blocks = tuple(tuple(grouped[k]) for k in sorted(grouped))
        self.__logger.info(
            f"Partition of {len(members)} objects: {len(result_blocks)} blocks, order {order}")
        return PartitionResult(result_blocks, order, tuple(counts))


def _relabel(signatures: Sequence[Any]) -> List[int]:
    """Replace signatures by their rank among the distinct sorted signatures."""
    ids = {signature: k for k, signature in enumerate(sorted(set(signatures)))}
    return [ids[signature] for signature in signatures]
