"""
Data File Module

Reads input-output tables from JSON or CSV and writes them back as JSON.

JSON layout:
    {"q": 4, "n": 3, "rows": [{"input": [0, 2, 1], "output": 0}, ...]}

CSV layout: a header x1,...,xn with an optional trailing y column.

Rows without outputs produce an InputSet, a file with no rows an empty
DataSet; a file mixing labelled and unlabelled rows is rejected.
"""
from pathlib import Path
from typing import List, Optional, Union
import json
import logging
import re

import pandas as pd
from pydantic import BaseModel, ValidationError

from ..datamodel import DataSet, FieldSpec, InputSet
from ..errors import DataValidationError, InputParseError

logger = logging.getLogger(__name__)


class RowRecord(BaseModel):
    input: List[int]
    output: Optional[int] = None


class DataFile(BaseModel):
    q: int
    n: int
    rows: List[RowRecord] = []


def _build(spec: FieldSpec, inputs: List[List[int]], outputs: List[Optional[int]]) -> Union[DataSet, InputSet]:
    labelled = [o is not None for o in outputs]
    if any(labelled) and not all(labelled):
        first = labelled.index(not labelled[0])
        raise DataValidationError(
            f"rows with and without outputs are mixed (row {first} differs from row 0)", kind="format", row=first
        )
    if all(labelled):
        return DataSet.from_rows(spec, zip(inputs, outputs))
    return InputSet.from_points(spec, inputs)


def parse_json(text: str) -> Union[DataSet, InputSet]:
    """Parse the JSON layout described in the module docstring."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputParseError(f"malformed JSON: {exc.msg}", line=exc.lineno)
    try:
        record = DataFile.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InputParseError(f"invalid data file at {location}: {first['msg']}", kind="format")
    try:
        spec = FieldSpec(q=record.q, n=record.n)
    except ValidationError as exc:
        raise DataValidationError(f"invalid q/n: {exc.errors()[0]['msg']}", kind="range")
    return _build(spec, [r.input for r in record.rows], [r.output for r in record.rows])


_LINE = re.compile(r"line (\d+)")


def parse_csv(path: Union[str, Path], q: Optional[int] = None) -> Union[DataSet, InputSet]:
    """
    Parse a CSV table with header x1..xn[,y].

    Args:
        path: CSV file
        q: number of states; inferred as (largest entry + 1), at least 2, when None
    """
    try:
        frame = pd.read_csv(path, skipinitialspace=True, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise InputParseError("empty CSV file", line=1)
    except pd.errors.ParserError as exc:
        match = _LINE.search(str(exc))
        raise InputParseError(f"malformed CSV: {exc}", line=int(match.group(1)) if match else None)

    columns = [c.strip() for c in frame.columns]
    has_output = bool(columns) and columns[-1] == "y"
    variables = columns[:-1] if has_output else columns
    expected = [f"x{i}" for i in range(1, len(variables) + 1)]
    if not variables or variables != expected:
        raise InputParseError(f"header must be x1..xn with an optional y, got {','.join(columns)}", line=1, kind="format")

    inputs, outputs = [], []
    for offset, values in enumerate(frame.itertuples(index=False)):
        line = offset + 2
        cells = [str(v).strip() for v in values]
        try:
            point = [int(c) for c in cells[:len(variables)]]
        except ValueError:
            raise InputParseError(f"non-integer entry in {cells}", line=line)
        output = None
        if has_output and cells[-1] != "":
            try:
                output = int(cells[-1])
            except ValueError:
                raise InputParseError(f"non-integer output {cells[-1]!r}", line=line)
        inputs.append(point)
        outputs.append(output)

    if q is None:
        entries = [c for p in inputs for c in p] + [o for o in outputs if o is not None]
        q = max(max(entries, default=0) + 1, 2)
        logger.debug("inferred q=%d from %s", q, path)
    return _build(FieldSpec(q=q, n=len(variables)), inputs, outputs)


def parse_input(path: Union[str, Path], q: Optional[int] = None) -> Union[DataSet, InputSet]:
    """
    Read a data file; the format is chosen by extension (.csv, anything else is JSON).

    Returns:
        DataSet when every row has an output, InputSet when none has

    Raises:
        InputParseError: malformed file, with the line number when known
        DataValidationError: mixed labelled/unlabelled rows or invalid data
    """
    path = Path(path)
    if not path.exists():
        raise InputParseError(f"no such file: {path}")
    if path.suffix.lower() == ".csv":
        return parse_csv(path, q=q)
    return parse_json(path.read_text(encoding="utf-8"))


def dump_json(data: Union[DataSet, InputSet]) -> str:
    """Serialize a data set or input set in the JSON layout parse_json reads."""
    if isinstance(data, DataSet):
        rows = [RowRecord(input=list(s), output=t) for s, t in data.rows]
    else:
        rows = [RowRecord(input=list(p)) for p in data.points]
    record = DataFile(q=data.spec.q, n=data.spec.n, rows=rows)
    return record.model_dump_json(indent=2, exclude_none=True)
