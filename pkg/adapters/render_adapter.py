"""Render adapter drawing webs and tableaux as DOT text or SVG files."""
import logging
from collections import deque
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  pylint: disable=wrong-import-position
import numpy as np  # noqa: E402  pylint: disable=wrong-import-position
from matplotlib.patches import Circle, Rectangle  # noqa: E402  pylint: disable=wrong-import-position

from core.errors import PreconditionError  # noqa: E402  pylint: disable=wrong-import-position
from core.tableau import StandardTableau  # noqa: E402  pylint: disable=wrong-import-position
from core.web import Web  # noqa: E402  pylint: disable=wrong-import-position

Point = Tuple[float, float]
Renderable = Union[Web, StandardTableau]

RENDER_FORMATS = ("dot", "svg")
_CENTRE_PULL = 1e-3


class RenderAdapter:
    """Adapter writing diagrams of webs and tableaux to disk."""

    def __init__(self) -> None:
        """Initialize the render adapter."""
        self._logger = logging.getLogger(self.__class__.__name__)

    def render(self, item: Renderable, fmt: str, path: Path, depths: bool = False) -> Path:
        """Write ``item`` in the chosen format.

        Raises:
            PreconditionError: On an unknown format.
        """
        if fmt not in RENDER_FORMATS:
            raise PreconditionError(f"unknown render format {fmt!r}")
        is_web = isinstance(item, Web)
        if fmt == "dot":
            text = self.web_to_dot(item, depths) if is_web else self.tableau_to_dot(item)
            path.write_text(text, encoding="utf-8")
        elif is_web:
            self.web_to_svg(item, path, depths)
        else:
            self.tableau_to_svg(item, path)
        self._logger.info(f"🖼️ Rendered {'web' if is_web else 'tableau'} to {path}")
        return path

    def web_layout(self, web: Web) -> Dict[int, Point]:
        """Boundary vertices on the x-axis; internal heights from face depths.

        x-coordinates of internal vertices are barycentric in their neighbours.
        """
        m = web.boundary_count
        internal = list(range(m, m + web.internal_count))
        heights = self.__heights(web)
        positions: Dict[int, Point] = {v: (float(v + 1), 0.0) for v in range(m)}
        if not internal:
            return positions
        column = {v: k for k, v in enumerate(internal)}
        rows: List[np.ndarray] = []
        rhs: List[float] = []
        for v in internal:
            row = np.zeros(len(internal))
            total = 0.0
            for tail, head in web.edges:
                if v not in (tail, head) or tail == head:
                    continue
                u = head if tail == v else tail
                row[column[v]] += 1.0
                if u in column:
                    row[column[u]] -= 1.0
                else:
                    total += positions[u][0]
            rows.append(row)
            rhs.append(total)
        centre = (m + 1) / 2 if m else 0.0
        for v in internal:
            row = np.zeros(len(internal))
            row[column[v]] = _CENTRE_PULL
            rows.append(row)
            rhs.append(_CENTRE_PULL * centre)
        xs = np.linalg.lstsq(np.vstack(rows), np.array(rhs), rcond=None)[0]
        for v in internal:
            positions[v] = (float(xs[column[v]]), heights[v])
        return positions

    def web_to_dot(self, web: Web, depths: bool = False) -> str:
        positions = self.web_layout(web)
        m = web.boundary_count
        lines = ["digraph web {", "  node [shape=circle, label=\"\", width=0.15];"]
        for v, (x, y) in sorted(positions.items()):
            if v < m:
                style = f"shape=plaintext, label=\"{v + 1}\""
            else:
                fill = "white" if web.kinds[v - m] == "source" else "black"
                style = f"style=filled, fillcolor={fill}"
            lines.append(f"  v{v} [{style}, pos=\"{x:.3f},{y:.3f}!\"];")
        for e, (tail, head) in enumerate(web.edges):
            lines.append(f"  v{tail} -> v{head} [id=e{e}];")
        if depths and not web.has_closed_components:
            for face, depth in sorted(web.depths.items(), key=lambda item: item[0].index):
                x, y = self.__face_anchor(face.vertices, positions, m)
                lines.append(f"  f{face.index} [shape=plaintext, label=\"{depth}\", "
                             f"pos=\"{x:.3f},{y:.3f}!\"];")
        if web.loops:
            lines.append(f"  // loops {web.loops}")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def tableau_to_dot(self, tableau: StandardTableau) -> str:
        cells = " | ".join(
            "{" + " | ".join(str(value) for value in row) + "}" for row in tableau.rows)
        return ("digraph tableau {\n  node [shape=record];\n"
                f"  t [label=\"{{{cells}}}\"];\n}}\n")

    def web_to_svg(self, web: Web, path: Path, depths: bool = False) -> Path:
        positions = self.web_layout(web)
        m = web.boundary_count
        fig, ax = plt.subplots(figsize=(max(3.0, 0.8 * m + 1.0), 3.5))
        ax.set_axis_off()
        ax.set_aspect("equal")
        if m:
            ax.axhline(0.0, color="#888888", linewidth=1.0)
        for tail, head in web.edges:
            ax.annotate("", xy=positions[head], xytext=positions[tail],
                        arrowprops={"arrowstyle": "-|>", "color": "#333333",
                                    "shrinkA": 4, "shrinkB": 4})
        for v, (x, y) in positions.items():
            if v < m:
                ax.plot([x], [y], "o", color="black", markersize=4)
                ax.text(x, -0.25, str(v + 1), ha="center", va="top", fontsize=8)
            else:
                source = web.kinds[v - m] == "source"
                ax.plot([x], [y], "o", markersize=6, markeredgecolor="black",
                        color="white" if source else "black")
        if depths and not web.has_closed_components:
            for face, depth in web.depths.items():
                x, y = self.__face_anchor(face.vertices, positions, m)
                ax.text(x, y, str(depth), ha="center", va="center", fontsize=7, color="#1f77b4")
        for k in range(web.loops):
            ax.add_patch(Circle((m + 1.5 + k, 1.0), 0.35, fill=False, color="#333333"))
        empty = not positions and not web.loops
        if empty:
            ax.set_xlim(0.0, 1.0)
            ax.set_ylim(0.0, 1.0)
        fig.savefig(path, format="svg", bbox_inches=None if empty else "tight")
        plt.close(fig)
        return path

    def tableau_to_svg(self, tableau: StandardTableau, path: Path) -> Path:
        shape = tableau.shape
        fig, ax = plt.subplots(figsize=(0.5 * max(shape, default=1) + 0.5,
                                        0.5 * len(shape) + 0.5))
        ax.set_axis_off()
        ax.set_aspect("equal")
        for r, row in enumerate(tableau.rows):
            for c, value in enumerate(row):
                ax.add_patch(Rectangle((c, -r - 1), 1, 1, fill=False, edgecolor="black"))
                ax.text(c + 0.5, -r - 0.5, str(value), ha="center", va="center", fontsize=10)
        ax.set_xlim(-0.1, max(shape, default=1) + 0.1)
        ax.set_ylim(-len(shape) - 0.1, 0.1)
        fig.savefig(path, format="svg", bbox_inches="tight")
        plt.close(fig)
        return path

    @staticmethod
    def __heights(web: Web) -> Dict[int, float]:
        m = web.boundary_count
        internal = range(m, m + web.internal_count)
        if not web.has_closed_components and m:
            incident: Dict[int, List[int]] = {v: [] for v in internal}
            for face, depth in web.depths.items():
                for v in set(face.vertices):
                    if v >= m:
                        incident[v].append(depth)
            deepest = max(web.depths.values(), default=0)
            return {v: 1.0 + deepest - float(np.mean(found)) if found else 1.0
                    for v, found in incident.items()}
        neighbours: Dict[int, List[int]] = {}
        for tail, head in web.edges:
            neighbours.setdefault(tail, []).append(head)
            neighbours.setdefault(head, []).append(tail)
        distance = {v: 0 for v in range(m)}
        queue = deque(range(m))
        while queue:
            v = queue.popleft()
            for u in neighbours.get(v, []):
                if u not in distance:
                    distance[u] = distance[v] + 1
                    queue.append(u)
        farthest = max(distance.values(), default=0) + 1
        return {v: float(distance.get(v, farthest)) for v in internal}

    @staticmethod
    def __face_anchor(vertices: Tuple[int, ...], positions: Dict[int, Point],
                      m: int) -> Point:
        points = [positions[v] for v in set(vertices)]
        if not points:
            return ((m + 1) / 2, 1.0)
        x = sum(p[0] for p in points) / len(points)
        y = sum(p[1] for p in points) / len(points)
        return x, y + (0.2 if all(p[1] == 0.0 for p in points) else 0.0)
