"""
Off-Axis Scan

Closed-form C over an off-axis grid (theta_d x r1 x r2) or a symmetric-pair
grid (x x y x z), with the momentum-quadrature oracle as an optional extra
column for the off-axis kind.
"""
import math
from itertools import product
from typing import List, Optional, Tuple

import pandas as pd

from src.core.errors import AntibunchError, ConfigError
from src.core.params import OffAxis, SymmetricPair
from src.core.parsed_data import ParsedConfig
from src.correlators.offaxis import appendixB_oracles, c_offaxis, c_symmetric_pair
from src.scans.runner import run_ordered

OFFAXIS_COLUMNS = ["theta_d", "r1", "r2", "c_bar", "oracle_c_bar", "oracle_abs_error"]
SYMMETRIC_COLUMNS = ["x", "y", "z", "rbar", "theta_d", "c_bar"]


def _offaxis_row(task: Tuple) -> dict:
    parsed, theta_d, r1, r2, oracle = task
    result = c_offaxis(theta_d, r1, r2, parsed.src, parsed.beam, parsed.det)
    row = {"theta_d": theta_d, "r1": r1, "r2": r2, "c_bar": result.value,
           "oracle_c_bar": math.nan, "oracle_abs_error": math.nan}
    if oracle:
        try:
            values = appendixB_oracles(theta_d, r1, r2, parsed.src, parsed.beam, parsed.det, spec=parsed.quad)
        except AntibunchError:
            return row
        row["oracle_c_bar"] = values.c_bar
        row["oracle_abs_error"] = values.abs_error
    return row


def _symmetric_row(task: Tuple) -> dict:
    parsed, x, y, z = task
    result = c_symmetric_pair(x, y, z, parsed.src, parsed.beam, parsed.det)
    return {"x": x, "y": y, "z": z, "rbar": result.meta["rbar"], "theta_d": result.meta["theta_d"],
            "c_bar": result.value}


def _grid_kind(parsed: ParsedConfig) -> str:
    if parsed.scan is not None:
        if parsed.scan.kind not in ("offaxis", "symmetric"):
            raise ConfigError(f"scan kind '{parsed.scan.kind}' is not an off-axis scan",
                              schema_hint='"kind": "offaxis" or "symmetric"')
        return parsed.scan.kind
    if isinstance(parsed.geometry, OffAxis):
        return "offaxis"
    if isinstance(parsed.geometry, SymmetricPair):
        return "symmetric"
    raise ConfigError("off-axis scan needs a 'scan' block or an offaxis/symmetric geometry")


def scan_offaxis(parsed: ParsedConfig, oracle: bool = False, threads: Optional[int] = None) -> pd.DataFrame:
    """
    Off-axis table.

    For the offaxis kind without any r2 (axis or geometry) every r1 is paired
    with r2 = r1. The oracle columns stay empty unless `oracle` is set, and
    where the quadrature fails.
    """
    kind = _grid_kind(parsed)
    scan, geom = parsed.scan, parsed.geometry

    if kind == "offaxis":
        defaults = {}
        if isinstance(geom, OffAxis):
            defaults = {"theta_d": (geom.theta_d,), "r1": (geom.r1,), "r2": (geom.r2,)}
        axis = (lambda name: scan.axis(name, defaults.get(name))) if scan else (lambda name: defaults[name])
        thetas, r1s = axis("theta_d"), axis("r1")
        has_r2 = "r2" in defaults or (scan is not None and "r2" in scan.axes)
        tasks: List[Tuple] = []
        for theta_d, r1 in product(thetas, r1s):
            for r2 in (axis("r2") if has_r2 else (r1,)):
                tasks.append((parsed, theta_d, r1, r2, oracle))
        return pd.DataFrame(run_ordered(_offaxis_row, tasks, threads), columns=OFFAXIS_COLUMNS)

    defaults = {}
    if isinstance(geom, SymmetricPair):
        defaults = {"x": (geom.x,), "y": (geom.y,), "z": (geom.z,)}
    axis = (lambda name: scan.axis(name, defaults.get(name))) if scan else (lambda name: defaults[name])
    tasks = [(parsed, x, y, z) for x, y, z in product(axis("x"), axis("y"), axis("z"))]
    return pd.DataFrame(run_ordered(_symmetric_row, tasks, threads), columns=SYMMETRIC_COLUMNS)
