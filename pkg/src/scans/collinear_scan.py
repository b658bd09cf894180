"""
Collinear Scan

Evaluates C(z1, z2) over the grid of a collinear scan file, optionally
sweeping one of d, a or beta. Rows come out in the order
sweep value -> method -> z1 -> z2.
"""
import math
from itertools import product
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from src.core.errors import ConfigError
from src.core.params import Collinear, CorrMethod
from src.core.parsed_data import SWEEP_NAMES, ParsedConfig
from src.correlators.collinear import CollinearSetup, c_normalized
from src.numerics.quadrature import QuadSpec
from src.scans.runner import run_ordered

COLUMNS = ["sweep", "sweep_value", "z1", "z2", "method", "c_bar", "abs_error"]

Task = Tuple[CollinearSetup, CorrMethod, QuadSpec, Optional[str], Optional[float]]


def apply_sweep(setup: CollinearSetup, name: Optional[str], value: Optional[float]) -> CollinearSetup:
    """Setup with the swept parameter replaced; d and a live on the detector, beta on the source."""
    if name is None:
        return setup
    if name in ("d", "a"):
        return setup.with_(det=setup.det.with_(**{name: value}))
    if name == "beta":
        return setup.with_(src=setup.src.with_(beta=value))
    raise ConfigError(f"unknown sweep '{name}'", schema_hint=f"one of {', '.join(SWEEP_NAMES)}")


def _current_value(setup: CollinearSetup, name: str) -> float:
    return setup.src.beta if name == "beta" else getattr(setup.det, name)


def _evaluate(task: Task) -> dict:
    setup, method, spec, sweep, sweep_value = task
    result = c_normalized(setup, method, spec)
    return {
        "sweep": sweep or "",
        "sweep_value": sweep_value if sweep_value is not None else math.nan,
        "z1": setup.z1,
        "z2": setup.z2,
        "method": method.value,
        "c_bar": result.value,
        "abs_error": result.abs_error,
    }


def collinear_tasks(parsed: ParsedConfig, sweep: Optional[str] = None,
                    methods: Optional[Sequence] = None) -> List[Task]:
    """
    Expand a parsed collinear config into evaluation tasks.

    Args:
        parsed: Parsed scan file; the scan grid provides z1 and z2, a
            collinear geometry block serves as fallback
        sweep: Sweep variable overriding the file's; without sweep values in
            the file the current value of the parameter is used
        methods: Evaluation methods overriding the file's

    Raises:
        ConfigError: If no z grid can be built
    """
    scan = parsed.scan
    if scan is not None and scan.kind != "collinear":
        raise ConfigError(f"scan kind '{scan.kind}' is not a collinear scan")
    geometry = parsed.geometry if isinstance(parsed.geometry, Collinear) else None
    z1_default = (geometry.z1,) if geometry else None
    z2_default = (geometry.z2,) if geometry else None
    if scan is None:
        if geometry is None:
            raise ConfigError("collinear scan needs a 'scan' block or a collinear geometry",
                              schema_hint='"scan": {"kind": "collinear", "z1": {...}, "z2": 160}')
        z1_values, z2_values = z1_default, z2_default
    else:
        z1_values = scan.axis("z1", z1_default)
        z2_values = scan.axis("z2", z2_default)

    sweep_name = sweep if sweep is not None else (scan.sweep_name if scan else None)
    if sweep_name is not None and sweep_name not in SWEEP_NAMES:
        raise ConfigError(f"unknown sweep '{sweep_name}'", schema_hint=f"one of {', '.join(SWEEP_NAMES)}")
    methods = [CorrMethod.parse(m) for m in (methods or [parsed.method])]
    spec = parsed.quad_spec()

    # any valid z pair builds the base setup; each task replaces z1 and z2
    base = CollinearSetup(parsed.src, parsed.beam, parsed.det, 1.0, 1.0)
    if sweep_name is None:
        sweep_values: Sequence[Optional[float]] = [None]
    elif scan is not None and scan.sweep_name == sweep_name and scan.sweep_values:
        sweep_values = scan.sweep_values
    elif scan is not None and scan.sweep_name == sweep_name:
        sweep_values = []
    else:
        sweep_values = [_current_value(base, sweep_name)]

    tasks: List[Task] = []
    for value, method, z1, z2 in product(sweep_values, methods, z1_values, z2_values):
        setup = apply_sweep(base, sweep_name, value).with_(z1=z1, z2=z2)
        tasks.append((setup, method, spec, sweep_name, value))
    return tasks


def scan_collinear(parsed: ParsedConfig, sweep: Optional[str] = None, methods: Optional[Sequence] = None,
                   threads: Optional[int] = None) -> pd.DataFrame:
    """
    Collinear scan as a table with columns sweep, sweep_value, z1, z2,
    method, c_bar, abs_error. An empty grid gives a table with the header
    only.
    """
    tasks = collinear_tasks(parsed, sweep, methods)
    rows = run_ordered(_evaluate, tasks, threads)
    return pd.DataFrame(rows, columns=COLUMNS)
