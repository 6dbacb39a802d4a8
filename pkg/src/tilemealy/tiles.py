"""Wang tile sets, tiling validity, and exact rectangle / torus search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from tilemealy import _kernels
from tilemealy.mealy import ParseError

DEFAULT_NODE_BUDGET = 1_000_000


@dataclass(frozen=True)
class Tile:
    name: str
    north: str
    south: str
    east: str
    west: str

    @property
    def edges(self) -> tuple[str, str, str, str]:
        return (self.north, self.south, self.east, self.west)


class TileSet:
    """Ordered set of named tiles over a declared palette."""

    def __init__(self, palette, tiles):
        self.palette = tuple(palette)
        self.tiles = tuple(tiles)
        if not self.tiles:
            raise ValueError("tile set must be nonempty")
        if len(set(self.palette)) != len(self.palette):
            raise ValueError("duplicate color in palette")
        self._by_name = {t.name: i for i, t in enumerate(self.tiles)}
        if len(self._by_name) != len(self.tiles):
            raise ValueError("duplicate tile name")
        colors = set(self.palette)
        for t in self.tiles:
            for c in t.edges:
                if c not in colors:
                    raise ValueError(f"tile {t.name!r} uses undeclared color {c!r}")
        cid = {c: i for i, c in enumerate(self.palette)}
        self._edge_ids = tuple([cid[getattr(t, side)] for t in self.tiles]
                               for side in ("north", "south", "east", "west"))

    @classmethod
    def from_edges(cls, edges: dict) -> "TileSet":
        """``{name: (N, S, E, W)}``; the palette is the sorted set of colors used."""
        tiles = [Tile(name, *map(str, e)) for name, e in edges.items()]
        palette = sorted({c for t in tiles for c in t.edges})
        return cls(palette, tiles)

    def __len__(self):
        return len(self.tiles)

    def __iter__(self) -> Iterator[Tile]:
        return iter(self.tiles)

    def __getitem__(self, name: str) -> Tile:
        return self.tiles[self._by_name[name]]

    def __contains__(self, name):
        return name in self._by_name

    def __eq__(self, other):
        return isinstance(other, TileSet) and (self.palette, self.tiles) == (other.palette, other.tiles)

    def __repr__(self):
        return f"TileSet({[t.name for t in self.tiles]})"

    @property
    def names(self) -> list[str]:
        return [t.name for t in self.tiles]

    def index(self, name: str) -> int:
        return self._by_name[name]


@dataclass(frozen=True)
class RectTiling:
    """Tiles of a width x height rectangle; ``cells[y * width + x]``, y grows north."""

    width: int
    height: int
    cells: tuple

    def at(self, x: int, y: int) -> str:
        return self.cells[y * self.width + x]

    def rows(self) -> list[list[str]]:
        """Rows listed north to south, as printed."""
        return [list(self.cells[y * self.width:(y + 1) * self.width])
                for y in reversed(range(self.height))]

    def to_json(self) -> dict:
        return {"kind": "rect", "width": self.width, "height": self.height, "rows": self.rows()}


@dataclass(frozen=True)
class TorusTiling:
    """Periodic tiling of the plane with periods (px, py)."""

    px: int
    py: int
    cells: tuple

    @property
    def width(self):
        return self.px

    @property
    def height(self):
        return self.py

    def at(self, x: int, y: int) -> str:
        return self.cells[(y % self.py) * self.px + (x % self.px)]

    def window(self, x0: int, y0: int, w: int, h: int) -> RectTiling:
        return RectTiling(w, h, tuple(self.at(x0 + x, y0 + y) for y in range(h) for x in range(w)))

    def rows(self) -> list[list[str]]:
        return [list(self.cells[y * self.px:(y + 1) * self.px]) for y in reversed(range(self.py))]

    def to_json(self) -> dict:
        return {"kind": "torus", "px": self.px, "py": self.py, "rows": self.rows()}


def tiling_from_json(data: dict):
    rows = [list(r) for r in reversed(data["rows"])]
    cells = tuple(name for row in rows for name in row)
    if data.get("kind") == "torus":
        return TorusTiling(data["px"], data["py"], cells)
    return RectTiling(data["width"], data["height"], cells)


@dataclass(frozen=True)
class Violation:
    kind: str  # "vertical" or "horizontal"
    first: tuple
    second: tuple
    colors: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind, "first": list(self.first), "second": list(self.second),
                "colors": list(self.colors)}

    def __str__(self):
        side = "N/S" if self.kind == "vertical" else "E/W"
        return f"{side} mismatch {self.first}-{self.second}: {self.colors[0]} != {self.colors[1]}"


def validate_tiling(tileset: TileSet, tiling) -> list[Violation]:
    """All violated adjacencies; wraparound pairs are included for a torus."""
    torus = isinstance(tiling, TorusTiling)
    w, h = tiling.width, tiling.height
    for name in tiling.cells:
        if name not in tileset:
            raise ValueError(f"unknown tile {name!r}")
    found = []
    for y in range(h):
        for x in range(w):
            t = tileset[tiling.at(x, y)]
            if y + 1 < h or torus:
                above = tileset[tiling.at(x, (y + 1) % h)]
                if t.north != above.south:
                    found.append(Violation("vertical", (x, y), (x, (y + 1) % h if torus else y + 1),
                                           (t.north, above.south)))
            if x + 1 < w or torus:
                right = tileset[tiling.at((x + 1) % w, y)]
                if t.east != right.west:
                    found.append(Violation("horizontal", (x, y), ((x + 1) % w if torus else x + 1, y),
                                           (t.east, right.west)))
    return found


def is_nw_deterministic(tileset: TileSet):
    """None when each tile is fixed by its (north, west) colors, else the first clashing pair."""
    seen = {}
    for t in tileset:
        key = (t.north, t.west)
        if key in seen:
            return (seen[key].name, t.name)
        seen[key] = t
    return None


@dataclass
class SearchResult:
    status: str  # "found", "none", "budget_exceeded"
    tiling: RectTiling | TorusTiling | None
    nodes: int

    def to_json(self) -> dict:
        return {"status": self.status, "nodes": self.nodes,
                "tiling": self.tiling.to_json() if self.tiling else None}


_STATUS = {_kernels.FOUND: "found", _kernels.NONE: "none", _kernels.BUDGET: "budget_exceeded"}


def _grid(tileset: TileSet, width: int, height: int, torus: bool, node_budget: int):
    tn, ts, te, tw = tileset._edge_ids
    status, grid, nodes = _kernels.grid_search(width, height, torus, tn, ts, te, tw,
                                               len(tileset.palette), node_budget)
    cells = tuple(tileset.tiles[i].name for i in grid) if grid is not None else None
    return _STATUS[status], cells, nodes


def tile_rectangle(tileset: TileSet, width: int, height: int,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    """Exact backtracking tiling of a width x height rectangle with free borders.

    "none" is an exhaustive proof that no valid tiling exists.
    """
    if width < 1 or height < 1:
        raise ValueError("rectangle dimensions must be >= 1")
    status, cells, nodes = _grid(tileset, width, height, False, node_budget)
    return SearchResult(status, RectTiling(width, height, cells) if cells else None, nodes)


def torus_attempt(tileset: TileSet, px: int, py: int,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    status, cells, nodes = _grid(tileset, px, py, True, node_budget)
    return SearchResult(status, TorusTiling(px, py, cells) if cells else None, nodes)


def torus_periods(max_px: int, max_py: int) -> list[tuple[int, int]]:
    return sorted(((px, py) for px in range(1, max_px + 1) for py in range(1, max_py + 1)),
                  key=lambda p: (p[0] * p[1], p[0]))


def find_torus_tiling(tileset: TileSet, max_px: int, max_py: int,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    """First periodic tiling in (px*py, px) order.

    Status is "none_up_to_max" when every period was refuted exhaustively and
    "budget_exceeded" when some period ran out of nodes and none succeeded.
    """
    if max_px < 1 or max_py < 1:
        raise ValueError("period bounds must be >= 1")
    total, starved = 0, False
    for px, py in torus_periods(max_px, max_py):
        res = torus_attempt(tileset, px, py, node_budget)
        total += res.nodes
        if res.status == "found":
            return SearchResult("found", res.tiling, total)
        starved |= res.status == "budget_exceeded"
    return SearchResult("budget_exceeded" if starved else "none_up_to_max", None, total)


@dataclass
class LeastNResult:
    status: str  # "found", "none_up_to_max", "budget_exceeded"
    n: int | None
    nodes: int

    def to_json(self) -> dict:
        return {"status": self.status, "n": self.n, "nodes": self.nodes}


def least_untileable_n(tileset: TileSet, max_n: int,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> LeastNResult:
    """Least n such that the (n+1) x (n+1) square has no valid tiling."""
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    total = 0
    for n in range(max_n + 1):
        res = tile_rectangle(tileset, n + 1, n + 1, node_budget)
        total += res.nodes
        if res.status == "none":
            return LeastNResult("found", n, total)
        if res.status == "budget_exceeded":
            return LeastNResult("budget_exceeded", None, total)
    return LeastNResult("none_up_to_max", None, total)


# -- text format ----------------------------------------------------------------

def parse_tileset(text: str) -> TileSet:
    palette = None
    tiles = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'palette: ...' or 'name: N S E W'", lineno)
        key = head.strip()
        if palette is None:
            if key != "palette":
                raise ParseError("first entry must be the palette", lineno)
            palette = rest.split()
            if not palette or len(set(palette)) != len(palette):
                raise ParseError("palette must be nonempty without duplicates", lineno)
            continue
        if not key or len(key.split()) != 1:
            raise ParseError("bad tile name", lineno)
        if key == "palette":
            raise ParseError("duplicate palette line", lineno)
        if key in names:
            raise ParseError(f"duplicate tile name {key!r}", lineno)
        colors = rest.split()
        col = len(head) + 2 + len(rest) - len(rest.lstrip())
        if len(colors) != 4:
            raise ParseError("tile needs exactly four colors: N S E W", lineno, col)
        for c in colors:
            col = line.index(c, col - 1) + 1
            if c not in palette:
                raise ParseError(f"unknown color {c!r}", lineno, col)
            col += len(c)
        names.add(key)
        tiles.append(Tile(key, *colors))
    if palette is None:
        raise ParseError("missing palette line", 1)
    if not tiles:
        raise ParseError("tile set is empty", len(text.splitlines()) or 1)
    return TileSet(palette, tiles)


def format_tileset(tileset: TileSet) -> str:
    lines = ["palette: " + " ".join(tileset.palette)]
    lines += [f"{t.name}: {t.north} {t.south} {t.east} {t.west}" for t in tileset]
    return "\n".join(lines) + "\n"
