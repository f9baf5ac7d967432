"""Tilting-table job runner: builds the A1 table from the oracle rule and saves it."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from src.blocks.levi_block import make_levi
from src.common.errors import AlcalcError, exit_code_for
from src.geometry.rootdata import root_system
from src.oracle.brute import sl2_tilting_table
from src.tilting.table import TiltingTable

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

DEFAULT_OUT = Path("state/tables")


def default_path(p: int, d_min: int, d_max: int) -> Path:
    return DEFAULT_OUT / f"a1_p{p}_d{d_min}_{d_max}.json"


def run(p: int, d_min: int, d_max: int, out: Optional[Path] = None, save: bool = True) -> TiltingTable:
    """
    Build the A1 (I empty) tilting table for d_min <= d <= d_max.

    The table is validated against the block calculus before it is written.
    """
    logger.info(f"Building A1 tilting table at p={p} for d in [{d_min}, {d_max}]")
    L = make_levi(root_system("A1"), (), p)
    table = TiltingTable.from_raw(L.rs.zero, sl2_tilting_table(p, d_min, d_max))
    table.validate(L)

    if save:
        table.save(Path(out) if out else default_path(p, d_min, d_max))
    logger.info(f"Built {len(table)} tilting characters")
    return table


def main():
    parser = argparse.ArgumentParser(description="Build the A1 tilting-character table")
    parser.add_argument("--p", type=int, required=True, help="Characteristic")
    parser.add_argument("--d-min", type=int, default=-1, help="Smallest d of a label")
    parser.add_argument("--d-max", type=int, default=4, help="Largest d of a label")
    parser.add_argument("--out", type=Path, help="Where to write the table JSON")
    args = parser.parse_args()

    try:
        run(args.p, args.d_min, args.d_max, args.out)
    except AlcalcError as e:
        print(str(e), file=sys.stderr)
        sys.exit(exit_code_for(e))


if __name__ == "__main__":
    main()
