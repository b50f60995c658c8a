"""TSP instances: symmetric distance matrices with generation and file I/O.

An instance is a complete graph on ``n`` nodes given by a symmetric
``n x n`` weight matrix with zero diagonal. Instances are validated once at
construction and frozen afterwards, so everything downstream may assume the
invariants hold and share instances freely across workers.

Supported file formats:

* JSON: ``{"name": str, "n": int, "seed": int|null, "dist": [[float]]}``
* a TSPLIB subset: ``TYPE: TSP`` with ``EDGE_WEIGHT_TYPE`` either
  ``EXPLICIT`` (``FULL_MATRIX`` or ``UPPER_ROW``) or ``EUC_2D``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np


class ParseError(ValueError):
    """Malformed instance file (TSPLIB or JSON schema violation)."""


@dataclass(frozen=True)
class TspInstance:
    """Symmetric TSP instance.

    Attributes:
        n: number of nodes, at least 3.
        dist: read-only (n, n) float array; symmetric, zero diagonal,
            finite non-negative off-diagonal weights.
        name: identifier used in records and file names.
        seed: generation seed if the instance was generated, else None.
    """

    n: int
    dist: np.ndarray
    name: str = "unnamed"
    seed: int | None = None
    num_vars: int = field(init=False)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need at least 3 nodes, got n={self.n}")
        d = np.asarray(self.dist, dtype=float)
        if d.shape != (self.n, self.n):
            raise ValueError(f"dist has shape {d.shape}, expected {(self.n, self.n)}")
        if not np.all(np.isfinite(d)):
            raise ValueError("dist contains non-finite weights")
        if np.any(d < 0):
            raise ValueError("dist contains negative weights")
        if np.any(np.diagonal(d) != 0.0):
            raise ValueError("dist diagonal must be zero")
        if not np.array_equal(d, d.T):
            raise ValueError("dist must be symmetric")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "num_vars", self.n * self.n)

    def __eq__(self, other):
        if not isinstance(other, TspInstance):
            return NotImplemented
        return (
            self.n == other.n
            and self.name == other.name
            and self.seed == other.seed
            and np.array_equal(self.dist, other.dist)
        )

    def __hash__(self):
        return hash((self.n, self.name, self.seed, self.dist.tobytes()))


def generate_random(
    n: int,
    seed: int,
    weight_range: tuple[float, float] = (1.0, 100.0),
    name: str | None = None,
) -> TspInstance:
    """Generate a random symmetric instance with i.i.d. uniform weights.

    Off-diagonal weights are drawn uniformly from ``weight_range`` by a
    seeded generator; identical ``(n, seed, weight_range)`` always yields a
    bit-identical matrix. A degenerate range ``low == high`` produces a
    constant-weight instance.
    """
    low, high = float(weight_range[0]), float(weight_range[1])
    if n < 3:
        raise ValueError(f"need at least 3 nodes, got n={n}")
    if low < 0 or low > high:
        raise ValueError(f"invalid weight range [{low}, {high}]")
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, k=1)
    weights = rng.uniform(low, high, size=len(iu[0])) if low < high else np.full(len(iu[0]), low)
    d = np.zeros((n, n))
    d[iu] = weights
    d += d.T
    if name is None:
        name = f"rand-n{n:02d}-seed{seed}"
    return TspInstance(n=n, dist=d, name=name, seed=seed)


def to_json(instance: TspInstance) -> str:
    """Serialize to the instance JSON schema (lossless, full float precision)."""
    doc = {
        "name": instance.name,
        "n": instance.n,
        "seed": instance.seed,
        "dist": [[float(x) for x in row] for row in instance.dist],
    }
    return json.dumps(doc, sort_keys=True)


def from_json(text: str) -> TspInstance:
    """Parse the instance JSON schema; inverse of :func:`to_json`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    for key in ("name", "n", "dist"):
        if key not in doc:
            raise ParseError(f"instance document missing {key!r} field")
    try:
        return TspInstance(
            n=int(doc["n"]),
            dist=np.array(doc["dist"], dtype=float),
            name=str(doc["name"]),
            seed=None if doc.get("seed") is None else int(doc["seed"]),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# --- TSPLIB subset ---

_EUC2D = "EUC_2D"
_EXPLICIT = "EXPLICIT"
_KNOWN_KEYS = {
    "NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE",
    "EDGE_WEIGHT_FORMAT", "DISPLAY_DATA_TYPE", "NODE_COORD_TYPE",
}
_SECTIONS = {"NODE_COORD_SECTION", "EDGE_WEIGHT_SECTION", "DISPLAY_DATA_SECTION", "EOF"}


def _tsplib_nint(x: float) -> int:
    # TSPLIB rounds Euclidean distances to the nearest integer this way.
    return int(x + 0.5)


def parse_tsplib(text: str) -> TspInstance:
    """Parse a TSPLIB-style instance (EXPLICIT FULL_MATRIX/UPPER_ROW or EUC_2D).

    Raises ParseError naming the offending line for unknown keywords,
    unsupported weight types, or an asymmetric explicit matrix. A
    ``COMMENT: seed=<int>`` line restores the generation seed.
    """
    lines = text.splitlines()
    header: dict[str, str] = {}
    seed: int | None = None
    data_tokens: list[str] = []
    section = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if section is None and (":" in line or line.split()[0] in _SECTIONS):
            if ":" in line:
                key, _, value = line.partition(":")
                key, value = key.strip().upper(), value.strip()
                if key not in _KNOWN_KEYS:
                    raise ParseError(f"line {lineno}: unknown keyword {key!r}")
                header[key] = value
                if key == "COMMENT" and value.startswith("seed="):
                    try:
                        seed = int(value[len("seed="):])
                    except ValueError:
                        seed = None
                continue
            word = line.split()[0].upper()
            if word == "EOF":
                break
            if word not in _SECTIONS:
                raise ParseError(f"line {lineno}: unknown section {word!r}")
            section = word
            continue
        if line.upper() == "EOF":
            break
        if section is None:
            raise ParseError(f"line {lineno}: unexpected data outside any section: {line!r}")
        data_tokens.extend(line.split())

    if header.get("TYPE", "").upper() not in ("TSP", ""):
        raise ParseError(f"unsupported TYPE {header.get('TYPE')!r}, expected TSP")
    if "DIMENSION" not in header:
        raise ParseError("missing DIMENSION")
    n = int(header["DIMENSION"])
    ewt = header.get("EDGE_WEIGHT_TYPE", "").upper()
    name = header.get("NAME", "tsplib")

    if ewt == _EUC2D:
        if len(data_tokens) != 3 * n:
            raise ParseError(f"NODE_COORD_SECTION expects {3 * n} values, got {len(data_tokens)}")
        coords = {}
        for i in range(n):
            idx, x, y = data_tokens[3 * i: 3 * i + 3]
            coords[int(idx) - 1] = (float(x), float(y))
        if sorted(coords) != list(range(n)):
            raise ParseError("node indices must be 1..DIMENSION")
        d = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                dx = coords[i][0] - coords[j][0]
                dy = coords[i][1] - coords[j][1]
                d[i, j] = d[j, i] = _tsplib_nint(math.hypot(dx, dy))
        return TspInstance(n=n, dist=d, name=name, seed=seed)

    if ewt == _EXPLICIT:
        fmt = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        vals = [float(t) for t in data_tokens]
        if fmt == "FULL_MATRIX":
            if len(vals) != n * n:
                raise ParseError(f"FULL_MATRIX expects {n * n} values, got {len(vals)}")
            d = np.array(vals).reshape(n, n)
            if not np.array_equal(d, d.T):
                raise ParseError("explicit matrix is not symmetric")
        elif fmt == "UPPER_ROW":
            expect = n * (n - 1) // 2
            if len(vals) != expect:
                raise ParseError(f"UPPER_ROW expects {expect} values, got {len(vals)}")
            d = np.zeros((n, n))
            d[np.triu_indices(n, k=1)] = vals
            d += d.T
        else:
            raise ParseError(f"unsupported EDGE_WEIGHT_FORMAT {fmt!r}")
        try:
            return TspInstance(n=n, dist=d, name=name, seed=seed)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    raise ParseError(f"unsupported EDGE_WEIGHT_TYPE {ewt!r}")


def to_tsplib(instance: TspInstance) -> str:
    """Serialize as an EXPLICIT FULL_MATRIX TSPLIB file (round-trips with parse_tsplib)."""
    out = [
        f"NAME: {instance.name}",
        "TYPE: TSP",
    ]
    if instance.seed is not None:
        out.append(f"COMMENT: seed={instance.seed}")
    out += [
        f"DIMENSION: {instance.n}",
        "EDGE_WEIGHT_TYPE: EXPLICIT",
        "EDGE_WEIGHT_FORMAT: FULL_MATRIX",
        "EDGE_WEIGHT_SECTION",
    ]
    for row in instance.dist:
        out.append(" ".join(repr(float(x)) for x in row))
    out.append("EOF")
    return "\n".join(out) + "\n"
