"""Named polynomial constants shipped as text files, pinned by a sha256 manifest.

Layout under the corpus root::

    appendix/<name>.txt      long constants (h1, S1, T4, ...)
    displays/<name>.txt      displayed intermediate results (C0, E3, eq2_17, ...)
    multipliers/<name>.txt   frozen ideal-membership multipliers
    MANIFEST.sha256          "<hex digest>  <relative path>" per file

Each file holds a header line ``name: <id> vars: <v1,v2,...>`` followed by the
canonical serialization.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from ..mvpoly import MvPoly, PolyParseError, parse

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
MANIFEST = "MANIFEST.sha256"
KINDS = ("appendix", "displays", "multipliers")


class CatalogError(ValueError):
    pass


def file_digest(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def format_entry(name: str, poly: MvPoly) -> str:
    return f"name: {name} vars: {','.join(poly.variables)}\n{poly.serialize()}\n"


def parse_entry(text: str) -> tuple[str, MvPoly]:
    head, _, body = text.partition("\n")
    parts = head.split()
    if len(parts) < 3 or parts[0] != "name:" or parts[2] != "vars:":
        raise CatalogError(f"bad header line {head!r}")
    name = parts[1]
    declared = parts[3].split(",") if len(parts) > 3 else []
    try:
        poly = parse(body.strip(), allowed=declared or None) if body.strip() != "0" else MvPoly.zero()
    except PolyParseError as exc:
        raise CatalogError(f"{name}: {exc}") from exc
    if set(poly.variables) - set(declared):
        raise CatalogError(f"{name}: variables {poly.variables} not declared in header")
    return name, poly


def read_manifest(root: Path) -> dict:
    path = Path(root) / MANIFEST
    if not path.exists():
        return {}
    out = {}
    for line in path.read_text().splitlines():
        if line.strip():
            digest, rel = line.split(None, 1)
            out[rel.strip()] = digest
    return out


def write_manifest(root: Path = CORPUS_DIR) -> dict:
    root = Path(root)
    table = {}
    for kind in KINDS:
        d = root / kind
        if d.is_dir():
            for p in sorted(d.glob("*.txt")):
                table[f"{kind}/{p.name}"] = file_digest(p)
    (root / MANIFEST).write_text("".join(f"{h}  {rel}\n" for rel, h in sorted(table.items())))
    return table


def drift(root: Path = CORPUS_DIR) -> list[tuple[str, str, str]]:
    """Files whose digest differs from the manifest: (path, expected, actual).

    Missing files report actual '' and unlisted files report expected ''.
    """
    root = Path(root)
    want = read_manifest(root)
    have = {}
    for kind in KINDS:
        d = root / kind
        if d.is_dir():
            for p in d.glob("*.txt"):
                have[f"{kind}/{p.name}"] = file_digest(p)
    out = []
    for rel in sorted(set(want) | set(have)):
        if want.get(rel, "") != have.get(rel, ""):
            out.append((rel, want.get(rel, ""), have.get(rel, "")))
    return out


@dataclass
class Catalog:
    """Lazy, cached view of a corpus directory.

    With ``strict`` set, any digest drift raises on construction. The shipped
    corpus is strict by default; user-supplied directories are not, so that a
    deliberately edited copy can still be replayed.
    """

    root: Path = CORPUS_DIR
    strict: bool | None = None
    _cache: dict = field(default_factory=dict, repr=False)
    problems: list = field(default_factory=list)

    def __post_init__(self):
        self.root = Path(self.root)
        if not self.root.is_dir():
            raise CatalogError(f"corpus directory {self.root} does not exist")
        if self.strict is None:
            self.strict = self.root.resolve() == CORPUS_DIR
        self.problems = drift(self.root)
        if self.strict and self.problems:
            listed = ", ".join(p[0] for p in self.problems[:5])
            raise CatalogError(f"corpus files differ from the manifest: {listed}")

    def path(self, name: str) -> Path:
        if "/" in name:
            p = self.root / f"{name}.txt"
            if p.exists():
                return p
        else:
            for kind in KINDS:
                p = self.root / kind / f"{name}.txt"
                if p.exists():
                    return p
        raise KeyError(name)

    def __getitem__(self, name: str) -> MvPoly:
        if name not in self._cache:
            p = self.path(name)
            stored, poly = parse_entry(p.read_text())
            if stored != p.stem:
                raise CatalogError(f"{p}: header names {stored!r}")
            self._cache[name] = poly
        return self._cache[name]

    get = __getitem__

    def __contains__(self, name: str) -> bool:
        try:
            self.path(name)
        except KeyError:
            return False
        return True

    def names(self, kind: str = "appendix") -> list[str]:
        d = self.root / kind
        return sorted(p.stem for p in d.glob("*.txt")) if d.is_dir() else []


_default: Catalog | None = None


def default_catalog() -> Catalog:
    global _default
    if _default is None:
        _default = Catalog()
    return _default
