"""
Block libraries for the composition search.

A library is a list of two-terminal building blocks, each with its
admittance triple evaluated (with derivatives) at the query momentum.
Blocks with a pole at the query y are quarantined.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.admittance.triple import AdmittancePoint, AdmittanceTriple, admittance, evaluate
from src.graphs.graph import WeightedGraph
from src.graphs.io import load_graph, save_graph
from src.graphs.momentum import Momentum
from src.graphs.operations import path_graph
from src.utils.config import DEFAULT_TOL, SCHEMA
from src.utils.errors import LibraryError, QwsError

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"

PathLike = Union[str, Path]


@dataclass(frozen=True)
class Block:
    """
    One building block: its graph (None for synthetic triples), triple,
    point at the library momentum and (mu1', mu2', nu') there.
    """

    name: str
    graph: Optional[WeightedGraph]
    triple: AdmittanceTriple
    point: AdmittancePoint
    derivatives: Optional[Tuple] = None

    @property
    def pole(self) -> bool:
        return not self.point.finite

    def symmetric(self, tol: float = DEFAULT_TOL) -> bool:
        """mu1 = mu2 at the library point (exactly when the point is exact)."""
        if self.pole:
            return False
        if self.point.exact:
            return self.point.mu1 == self.point.mu2
        return abs(float(self.point.mu1) - float(self.point.mu2)) <= tol

    @property
    def values(self) -> Tuple:
        return self.point.mu1, self.point.mu2, self.point.nu


@dataclass
class BlockLibrary:
    """
    Usable blocks plus the quarantined pole blocks and per-file failures.

    Example:
        >>> lib = BlockLibrary.from_graphs([path_graph(1), path_graph(3)], Momentum.from_literal('-pi/4'))
        >>> lib.names
        ['path_1', 'path_3']
    """

    k: Momentum
    blocks: List[Block] = field(default_factory=list)
    quarantined: List[Block] = field(default_factory=list)
    failures: Dict[str, str] = field(default_factory=dict)

    @property
    def partial(self) -> bool:
        """Some inputs failed to load."""
        return bool(self.failures)

    @property
    def names(self) -> List[str]:
        return [b.name for b in self.blocks]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def get(self, name: str) -> Block:
        for block in self.blocks + self.quarantined:
            if block.name == name:
                return block
        raise LibraryError(f"No block named {name!r} in library")

    def add(self, name: str, triple: AdmittanceTriple, graph: WeightedGraph = None) -> Block:
        """Evaluate a triple at the library momentum and file it."""
        name = self._unique(name)
        point = evaluate(triple, self.k.y)
        derivatives = None
        if point.finite:
            d = evaluate(triple.derivative(), point.y)
            derivatives = (d.mu1, d.mu2, d.nu)
        block = Block(name, graph, triple, point, derivatives)
        if block.pole:
            logger.warning("Block %s has a pole at y=%s (k=%s); quarantined", name, point.y, self.k)
            self.quarantined.append(block)
        else:
            self.blocks.append(block)
        return block

    def _unique(self, name: str) -> str:
        taken = {b.name for b in self.blocks + self.quarantined}
        if name not in taken:
            return name
        suffix = 2
        while f"{name}_{suffix}" in taken:
            suffix += 1
        logger.warning("Duplicate block name %s; renamed to %s_%d", name, name, suffix)
        return f"{name}_{suffix}"

    @classmethod
    def from_graphs(cls, graphs: Iterable[WeightedGraph], k: Momentum,
                    names: Sequence[str] = None) -> 'BlockLibrary':
        lib = cls(k)
        for i, g in enumerate(graphs):
            name = names[i] if names else (g.name or g.graph_hash)
            lib.add(name, admittance(g), g)
        return lib

    @classmethod
    def from_triples(cls, triples: Dict[str, AdmittanceTriple], k: Momentum) -> 'BlockLibrary':
        lib = cls(k)
        for name, t in triples.items():
            lib.add(name, t)
        return lib

    def to_json(self) -> dict:
        def describe(b: Block) -> dict:
            return {"name": b.name, "pole": b.pole, "point": b.point.to_json()}
        return {
            "schema": SCHEMA,
            "k": self.k.k,
            "blocks": [describe(b) for b in self.blocks],
            "quarantined": [describe(b) for b in self.quarantined],
            "failures": self.failures,
            "partial": self.partial,
        }


def _read_manifest(path: Path) -> List[Tuple[str, Path]]:
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise LibraryError(f"Cannot read manifest {path}: {e}") from e
    if not isinstance(doc, dict) or not isinstance(doc.get("blocks"), list):
        raise LibraryError(f"Manifest {path} needs a 'blocks' list")
    entries = []
    for item in doc["blocks"]:
        if not isinstance(item, dict) or "path" not in item:
            raise LibraryError(f"Manifest entry needs 'path': {item!r}")
        file = (path.parent / item["path"]).resolve()
        entries.append((item.get("name", file.stem), file))
    return entries


def _is_manifest(path: Path) -> bool:
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return False
    return isinstance(doc, dict) and "blocks" in doc


def _collect(paths: Union[PathLike, Sequence[PathLike]]) -> List[Tuple[str, Path]]:
    """Resolve directories, manifests and plain graph files to (name, file) pairs."""
    if isinstance(paths, (str, Path)):
        paths = [paths]
    entries: List[Tuple[str, Path]] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            manifest = path / MANIFEST_NAME
            if manifest.exists():
                entries.extend(_read_manifest(manifest))
            else:
                entries.extend((f.stem, f) for f in sorted(path.glob("*.json")))
        elif path.suffix == ".json" and path.exists() and _is_manifest(path):
            entries.extend(_read_manifest(path))
        else:
            entries.append((path.stem, path))
    return entries


def load_library(paths: Union[PathLike, Sequence[PathLike]], k: Momentum) -> BlockLibrary:
    """
    Load graph blocks and evaluate their triples at k.

    ``paths`` may be a directory (using its ``manifest.json`` when present,
    otherwise every ``*.json`` file), a manifest file
    ``{"blocks": [{"name": ..., "path": ...}]}`` or a list of graph files.
    Files that fail to parse are recorded in ``failures`` and the library
    is marked partial.

    Args:
        paths: Directory, manifest or graph files
        k: Query momentum

    Returns:
        BlockLibrary

    Raises:
        LibraryError: Nothing usable was loaded
    """
    lib = BlockLibrary(k)
    for name, file in _collect(paths):
        try:
            g = replace(load_graph(file), name=name)
            lib.add(name, admittance(g), g)
        except QwsError as e:
            logger.warning("Skipping block %s (%s): %s", name, file, e)
            lib.failures[str(file)] = str(e)
    if not lib.blocks:
        raise LibraryError(
            f"Library is empty after loading {len(lib.failures)} failure(s) and "
            f"{len(lib.quarantined)} quarantined pole block(s)")
    logger.info("Loaded %d block(s), %d quarantined, %d failed",
                len(lib.blocks), len(lib.quarantined), len(lib.failures))
    return lib


def write_path_library(directory: PathLike, lengths: Iterable[int]) -> Path:
    """
    Write unit-weight paths as graph files plus a manifest.

    Returns:
        Path of the manifest
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for length in lengths:
        g = path_graph(length)
        save_graph(g, directory / f"{g.name}.json")
        entries.append({"name": g.name, "path": f"{g.name}.json"})
    manifest = directory / MANIFEST_NAME
    manifest.write_text(json.dumps({"schema": SCHEMA, "blocks": entries}, indent=2) + "\n")
    return manifest
