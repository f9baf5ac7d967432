"""Tilting-character tables and greedy peeling of characters against them."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence

from src.blocks.groth import Basis, GVector, convert_basis, integral_coefficients
from src.blocks.levi_block import LeviDatum, OrbitLabel
from src.common.errors import CheckFailed, MissingEntry, ParseError, PeelFailed, UsageError
from src.common.storage import write_json_atomic
from src.common.time import now_utc
from src.geometry.alcoves import d_value, uparrow_leq

logger = logging.getLogger(__name__)


@dataclass
class TiltingTable:
    """Asserted indecomposable tilting characters, label -> ZBAR character."""
    block: OrbitLabel
    entries: Dict[OrbitLabel, GVector] = field(default_factory=dict)
    generated_at: Optional[str] = None

    def get(self, label: Sequence[int]) -> Optional[GVector]:
        return self.entries.get(tuple(label))

    def __contains__(self, label: Sequence[int]) -> bool:
        return tuple(label) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_raw(cls, block: Sequence[int], raw: Mapping[Sequence[int], Mapping[Sequence[int], int]]) -> "TiltingTable":
        """Build from {label: {label: multiplicity}} in the ZBAR basis."""
        entries = {
            tuple(label): GVector.build(Basis.ZBAR, block, terms.items())
            for label, terms in raw.items()
        }
        return cls(tuple(block), entries)

    def validate(self, L: LeviDatum) -> None:
        """Coefficient 1 at the label itself, support up-arrow below it."""
        for label, char in self.entries.items():
            nabla = convert_basis(char, Basis.NABLA, L)
            if nabla.coeff(label) != 1:
                raise CheckFailed(f"table entry {list(label)} has leading coefficient {nabla.coeff(label)}", label=label)
            for xi in nabla.support():
                if not uparrow_leq(L.rs, xi, label, L.p):
                    raise CheckFailed(f"table entry {list(label)} contains {list(xi)} not below it", label=xi)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "block": list(self.block),
            "generated_at": self.generated_at,
            "entries": [
                {"label": list(label), "character": self.entries[label].to_dict()}
                for label in sorted(self.entries)
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TiltingTable":
        try:
            entries = {tuple(e["label"]): GVector.from_dict(e["character"]) for e in data["entries"]}
            return cls(tuple(data["block"]), entries, data.get("generated_at"))
        except (KeyError, TypeError) as e:
            raise ParseError(f"malformed tilting table: {e}")

    @classmethod
    def load(cls, path: Path) -> "TiltingTable":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise UsageError(f"tilting table not found: {path}")
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid tilting table JSON in {path}: {e}")
        table = cls.from_dict(data)
        logger.info(f"Loaded {len(table)} tilting characters from {path}")
        return table

    def save(self, path: Path) -> None:
        if self.generated_at is None:
            self.generated_at = now_utc().isoformat()
        write_json_atomic(Path(path), self.to_dict(), ".table_")
        logger.info(f"Saved {len(self)} tilting characters to {path}")


def greedy_peel(char: GVector, table: TiltingTable, L: LeviDatum) -> Dict[OrbitLabel, int]:
    """Multiplicities m with char = sum m[nu] table[nu], peeling from the top d down."""
    rs, p = L.rs, L.p
    remaining = convert_basis(char, Basis.NABLA, L)
    integral_coefficients(remaining)
    result: Dict[OrbitLabel, int] = {}
    while not remaining.is_zero:
        top = max(remaining.support(), key=lambda k: (d_value(rs, k, p), k))
        c = remaining.coeff(top)
        entry = table.get(top)
        if entry is None:
            raise MissingEntry(f"no table entry for {list(top)}", label=top)
        entry = convert_basis(entry, Basis.NABLA, L)
        if entry.coeff(top) != 1:
            raise PeelFailed(f"table entry {list(top)} does not lead with 1", label=top)
        remaining = remaining - entry.scale(c)
        if not remaining.is_nonnegative() or not remaining.is_integral():
            raise PeelFailed(f"peeling {c} x T({list(top)}) leaves negative coefficients", label=top)
        result[top] = int(c)
    return result
