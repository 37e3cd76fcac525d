"""
CSV and JSON reports of the experiments.

Every report has a fixed header; complex values are split in ``_re`` and ``_im`` columns and
floats are written with 17 significant digits so that parsing the CSV back reproduces them.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence, Union

import pandas as pd

from satellite_lab.exceptions import DomainError

L = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _split(name: str, value: Any) -> Dict[str, float]:
    value = complex(value) if value is not None else complex("nan+nanj")
    return {f"{name}_re": value.real, f"{name}_im": value.imag}


def _point(value: Any) -> complex:
    """Complex value of a HalfPlanePoint or of a plain number."""
    return complex(getattr(value, "value", value))


def _residue_row(report) -> Dict[str, Any]:
    return {
        "pq": str(report.pq),
        **_split("res_contour", report.res_contour),
        **_split("res_fit", report.res_fit),
        "fit_residual": report.fit_residual,
        **_split("linear_coefficient", report.linear_coefficient),
    }


def _dict_row(row) -> Dict[str, Any]:
    return dict(row)


def _divergence_row(record) -> Dict[str, Any]:
    return {
        "t": record.t,
        **_split("Lambda", _point(record.big_lambda)),
        **_split("M", _point(record.M)),
        "dist": record.dist,
        "bound": record.bound,
        "signed_bound": record.signed_bound,
    }


def _limb_row(record) -> Dict[str, Any]:
    return {
        "n": record.n,
        **_split("root_Lambda", _point(record.root_lambda)),
        "re_lower_bound": record.re_lower_bound,
        "hyp_diam": record.hyp_diam,
        "euclid_diam": record.euclid_diam,
    }


def _corollary_row(record) -> Dict[str, Any]:
    return {
        "n": record.n,
        "dist": record.dist,
        **_split("Lambda", _point(record.big_lambda)),
        **_split("M", _point(record.M)),
        **_split("witness", record.witness),
        "witness_offset": record.witness_offset,
    }


@dataclass(frozen=True)
class Schema:
    """Fixed columns of a report and the conversion of a record into a row."""

    name: str
    columns: List[str]
    row: Callable[[Any], Dict[str, Any]]


SCHEMAS: Dict[str, Schema] = {
    schema.name: schema
    for schema in (
        Schema(
            "residue",
            [
                "pq",
                "res_contour_re",
                "res_contour_im",
                "res_fit_re",
                "res_fit_im",
                "fit_residual",
                "linear_coefficient_re",
                "linear_coefficient_im",
            ],
            _residue_row,
        ),
        Schema(
            "expansion",
            ["t", "Lambda_re", "Lambda_im", "predicted_re", "predicted_im", "error"],
            _dict_row,
        ),
        Schema(
            "divergence",
            ["t", "Lambda_re", "Lambda_im", "M_re", "M_im", "dist", "bound", "signed_bound"],
            _divergence_row,
        ),
        Schema(
            "limbs",
            ["n", "root_Lambda_re", "root_Lambda_im", "re_lower_bound", "hyp_diam", "euclid_diam"],
            _limb_row,
        ),
        Schema(
            "corollary",
            [
                "n",
                "dist",
                "Lambda_re",
                "Lambda_im",
                "M_re",
                "M_im",
                "witness_re",
                "witness_im",
                "witness_offset",
            ],
            _corollary_row,
        ),
        Schema(
            "tori",
            [
                "Lambda1_re",
                "Lambda1_im",
                "Lambda2_re",
                "Lambda2_im",
                "dist",
                "log_K",
                "mu_re",
                "mu_im",
                "p",
                "q",
                "r",
                "s",
                "case",
                "log_ratio",
            ],
            _dict_row,
        ),
        Schema(
            "misiurewicz",
            ["pq", "m", "lambda_re", "lambda_im", "residual"],
            _dict_row,
        ),
    )
}


def to_frame(records: Sequence[Any], schema: str) -> pd.DataFrame:
    """Records as a DataFrame with the columns of ``schema``."""
    try:
        definition = SCHEMAS[schema]
    except KeyError as error:
        raise DomainError(f"Unknown report schema {schema!r}") from error
    rows = [definition.row(record) for record in records]
    for row in rows:
        if set(row) != set(definition.columns):
            raise DomainError(f"Record fields {sorted(row)} do not match the {schema} schema")
    return pd.DataFrame(rows, columns=definition.columns)


def _json_value(value: Any) -> Any:
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def emit_report(records: Sequence[Any], schema: str, path: Union[str, Path]) -> None:
    """Write the records as CSV, or as JSON when ``path`` ends with ``.json``.

    The JSON document is a list of objects with the CSV columns as keys; non finite floats are
    written as null.
    """
    frame = to_frame(records, schema)
    path = Path(path)
    if path.suffix == ".json":
        rows = [
            {column: _json_value(value) for column, value in zip(frame.columns, values)}
            for values in frame.itertuples(index=False, name=None)
        ]
        with open(path, "w", encoding="utf-8") as out:
            json.dump(rows, out, indent=1, separators=(",", ": "))
    else:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    L.info("Wrote %d %s records to %s", len(frame), schema, path)
