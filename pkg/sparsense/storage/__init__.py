"""File formats: SSP1 matrices, CSV, JSON sensor sets, basis directories and reports."""

from .matrixio import (
    dumps,
    load_basis,
    load_matrix,
    load_sensors,
    save_basis,
    save_matrix,
    save_sensors,
    table_text,
    write_report_json,
    write_table_csv,
)

__all__ = [
    "load_matrix",
    "save_matrix",
    "load_sensors",
    "save_sensors",
    "load_basis",
    "save_basis",
    "write_report_json",
    "write_table_csv",
    "table_text",
    "dumps",
]
