"""Homology dimension tables and their JSON / text renderings."""

from __future__ import annotations

from dataclasses import dataclass, field


def _clean(entries) -> dict:
    return {k: int(v) for k, v in entries.items() if v}


@dataclass
class HomologyTable:
    """Dimensions of ``H^i`` in bidegree ``(a, d)`` (``a`` is 0 for the chromatic theory)."""

    D: int
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)
    chain: dict[tuple[int, int, int], int] = field(default_factory=dict)
    construction: str = "cube"

    index = "i"

    def __post_init__(self):
        self.entries = _clean(self.entries)
        self.chain = _clean(self.chain)
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("negative dimension in homology table")

    def dim(self, i: int, a: int, d: int) -> int:
        return self.entries.get((i, a, d), 0)

    def same_dims(self, other: "HomologyTable") -> bool:
        return self.D == other.D and self.entries == other.entries

    def degrees(self) -> list[int]:
        return sorted({k[0] for k in self.entries} | {k[0] for k in self.chain})

    def to_json(self) -> dict:
        return {
            "construction": self.construction,
            "D": self.D,
            "entries": [
                {"i": i, "a": a, "d": d, "dim": v} for (i, a, d), v in sorted(self.entries.items())
            ],
        }

    def render(self) -> str:
        head = f"homology ({self.construction}), degrees d = 0..{self.D}"
        return head + "\n" + _grid(self.entries, self.index, self.D)


@dataclass
class TriplyGradedTable(HomologyTable):
    """Dimensions of ``H^j`` in bidegree ``(a, d)``, ``-m <= j <= 0``."""

    construction: str = "dichromatic"
    index = "j"

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "entries": [
                {"j": j, "a": a, "d": d, "dim": v} for (j, a, d), v in sorted(self.entries.items())
            ],
        }


def _grid(entries: dict, index: str, D: int) -> str:
    width = max([3] + [len(str(v)) + 1 for v in entries.values()])
    header = f"{index:>4} {'a':>3} |" + "".join(f"{d:>{width}}" for d in range(D + 1))
    lines = [header, "-" * len(header)]
    rows = sorted({(k[0], k[1]) for k in entries})
    if not rows:
        lines.append("(all zero)")
    for i, a in rows:
        cells = "".join(f"{entries.get((i, a, d), 0):>{width}}" for d in range(D + 1))
        lines.append(f"{i:>4} {a:>3} |{cells}")
    return "\n".join(lines)
