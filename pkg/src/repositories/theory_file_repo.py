"""
This module reads and writes theory files.

A theory file is JSON validated by `src.schemas.TheoryFile`. Loading builds a fully
validated `Theory`, so every V/H or measurement inconsistency surfaces here.

Functions:
    parse_theory_text(text: str) -> Theory
    load_theory(path: str) -> Theory
    theory_to_file(theory: Theory) -> TheoryFile
    dump_theory(theory: Theory) -> str
"""

import json
from pathlib import Path

from pydantic import ValidationError as SchemaError

from src.exceptions import ParseError
from src.models.layout import Block, MeasurementLayout
from src.models.state import Effect, Measurement, State
from src.models.theory import Facet, Theory
from src.models.transform import Transform
from src.schemas import (
    BlockModel,
    FacetModel,
    MeasurementModel,
    TheoryFile,
    TransformModel,
)
from src.utils.format_utils import parse_rational, rational_str


def _row(values):
    return tuple(parse_rational(x) for x in values)


def theory_from_file(doc: TheoryFile) -> Theory:
    layout = MeasurementLayout(tuple(Block(b.label, tuple(b.outcomes)) for b in doc.layout))
    return Theory(
        name=doc.name,
        layout=layout,
        extreme_points=tuple(State(_row(p), layout) for p in doc.extreme_points),
        facets=tuple(Facet(_row(f.normal), parse_rational(f.bound), f.label) for f in doc.facets),
        distinguishable_count=doc.distinguishable_count,
        transform_policy=doc.transform_policy,
        measurements=tuple(
            Measurement(
                m.label,
                tuple(Effect(_row(e), layout) for e in m.effects),
                tuple(m.outcomes),
                m.fiducial_block,
            )
            for m in doc.measurements
        ),
        explicit_transforms=tuple(
            Transform(tuple(_row(r) for r in t.matrix), True, t.label)
            for t in doc.explicit_transforms
        ),
    )


def parse_theory_text(text: str) -> Theory:
    """
    Parse and validate the JSON text of a theory file.

    Raises:
        ParseError: On JSON syntax errors (with line and column) or schema errors
            (with the offending field path).
        TheoryValidationError: If the parsed theory is inconsistent.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err.msg}", err.lineno, err.colno) from err
    try:
        doc = TheoryFile.parse_obj(raw)
    except SchemaError as err:
        first = err.errors()[0]
        path = ".".join(str(p) for p in first["loc"])
        raise ParseError(f"invalid theory file at {path}: {first['msg']}") from err
    return theory_from_file(doc)


def load_theory(path: str) -> Theory:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from err
    return parse_theory_text(text)


def _strings(values):
    return [rational_str(x) for x in values]


def theory_to_file(theory: Theory) -> TheoryFile:
    return TheoryFile(
        name=theory.name,
        layout=[BlockModel(label=b.label, outcomes=list(b.outcomes)) for b in theory.layout.blocks],
        extreme_points=[_strings(v) for v in theory.vectors],
        facets=[
            FacetModel(normal=_strings(f.normal), bound=rational_str(f.bound), label=f.label)
            for f in theory.facets
        ],
        distinguishable_count=theory.distinguishable_count,
        transform_policy=theory.transform_policy,
        measurements=[
            MeasurementModel(
                label=m.label,
                effects=[_strings(e.coords) for e in m.effects],
                outcomes=list(m.outcomes),
                fiducial_block=m.fiducial_block,
            )
            for m in theory.measurements
        ],
        explicit_transforms=[
            TransformModel(label=t.label, matrix=[_strings(r) for r in t.matrix])
            for t in theory.explicit_transforms
        ],
    )


def dump_theory(theory: Theory) -> str:
    return json.dumps(json.loads(theory_to_file(theory).json()), sort_keys=True, indent=2)
