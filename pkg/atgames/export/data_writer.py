import json
import logging
import os
from typing import Iterable


def dumps_json(data) -> str:
    """Serialize plain data with a fixed layout, so equal data gives byte-identical text."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_json(data, export_path: str):
    """Write plain data, e.g. from :py:mod:`atgames.export.serialization`, to a JSON file.

    Args:
        data: Dicts, lists, strings, numbers and booleans.
        export_path (str): The path to the file where the data should be saved.
    """
    write_lines([dumps_json(data)], export_path)


def write_lines(lines: Iterable[str], export_path: str):
    """Write text produced line by line, e.g. by :py:func:`atgames.export.brg_to_dot`."""
    directory = os.path.dirname(export_path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(export_path, "w", encoding="utf-8") as file:
        file.writelines(lines)
    logging.info(f"Data saved to {export_path}")
