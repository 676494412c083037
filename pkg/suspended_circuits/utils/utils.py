# -*- encoding: utf-8 -*-
"""Utility functions used by the command line front end."""
import json
import math
import os
from collections.abc import Mapping
from typing import Any, Iterable, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel


def convert(obj: Any) -> Any:
    """Turn numpy values, models and containers into JSON-ready objects."""
    if isinstance(obj, BaseModel):
        return convert(obj.model_dump())
    if isinstance(obj, (np.ndarray, np.matrix)):
        return convert(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.complexfloating):
        obj = complex(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return None
        return value
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (set, tuple, list)):
        return [convert(x) for x in obj]
    if isinstance(obj, Mapping):
        return {str(k): convert(v) for k, v in obj.items()}
    return obj


def to_json(obj: Any) -> str:
    return json.dumps(convert(obj), indent=2)


def output_path(output_dir: str, file_name: str) -> str:
    os.makedirs(output_dir, exist_ok=True)
    return os.path.join(output_dir, file_name)


def write_json(obj: Any, output_dir: str, file_name: str) -> str:
    path = output_path(output_dir, file_name)
    with open(path, "w") as f:
        f.write(to_json(obj))
        f.write("\n")
    return path


def write_csv(
    rows: Iterable[Mapping],
    output_dir: str,
    file_name: str,
    columns: Optional[list] = None,
) -> str:
    """Write plot-ready rows as CSV."""
    path = output_path(output_dir, file_name)
    pd.DataFrame(list(rows), columns=columns).to_csv(path, index=False)
    return path
