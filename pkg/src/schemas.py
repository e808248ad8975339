"""
This script defines the Pydantic models that cross the process boundary.

Contents:
- TheoryFile and its parts: the on-disk description of a polytope theory. Rationals are
    canonical "p/q" strings and are checked against RATIONAL_REGEX.
- ReportFormat: text, csv or json.
- Report models returned by the controllers: TheoryReport, GroupReport, PhaseGroupReport,
    InterferenceReport, ConjugatesReport, TheoremReport, TheoremSuiteReport, MziReport, EffectsReport,
    TProbReport. Each knows how to render itself as text lines and, where it is
    tabular, as CSV rows.
"""

import re
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, validator

from src.constants import RATIONAL_REGEX, SCHEMA_VERSION
from src.models.theory import TransformPolicy

_RATIONAL = re.compile(RATIONAL_REGEX)


def _check_rational(value: str) -> str:
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise ValueError(f"expected an exact rational string like '1/2', got {value!r}")
    if "/" in value and int(value.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return value


class ReportFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


class BlockModel(BaseModel):
    label: str
    outcomes: List[str]


class FacetModel(BaseModel):
    normal: List[str]
    bound: str
    label: str = ""

    _normal = validator("normal", each_item=True, allow_reuse=True)(_check_rational)
    _bound = validator("bound", allow_reuse=True)(_check_rational)


class MeasurementModel(BaseModel):
    label: str
    effects: List[List[str]]
    outcomes: List[str] = []
    fiducial_block: Optional[int] = None

    @validator("effects", each_item=True)
    def _effects(cls, row):
        return [_check_rational(x) for x in row]


class TransformModel(BaseModel):
    label: str = ""
    matrix: List[List[str]]

    @validator("matrix", each_item=True)
    def _matrix(cls, row):
        return [_check_rational(x) for x in row]


class TheoryFile(BaseModel):
    schema_version: int = SCHEMA_VERSION
    name: str
    layout: List[BlockModel]
    extreme_points: List[List[str]]
    facets: List[FacetModel]
    distinguishable_count: int
    transform_policy: TransformPolicy = TransformPolicy.ALL_AUTOMORPHISMS
    measurements: List[MeasurementModel] = []
    explicit_transforms: List[TransformModel] = []

    @validator("schema_version")
    def _version(cls, value):
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {value}, expected {SCHEMA_VERSION}")
        return value

    @validator("extreme_points", each_item=True)
    def _points(cls, row):
        return [_check_rational(x) for x in row]


class TheoryReport(BaseModel):
    name: str
    blocks: List[str]
    total_dim: int
    vertex_count: int
    affine_dimension: int
    distinguishable_count: int
    facet_count: int
    transform_policy: str
    measurements: List[str]
    ontic_vertex_count: Optional[int] = None
    allowed_group_order: Optional[int] = None

    def text_lines(self) -> List[str]:
        lines = [
            f"theory: {self.name}",
            f"layout: {' | '.join(self.blocks)}",
            f"dimension: {self.total_dim}",
            f"vertices: {self.vertex_count}",
            f"affine dimension: {self.affine_dimension}",
            f"N: {self.distinguishable_count}",
            f"facets: {self.facet_count}",
            f"transform policy: {self.transform_policy}",
            f"measurements: {', '.join(self.measurements)}",
        ]
        if self.ontic_vertex_count is not None:
            lines.append(f"ontic vertices: {self.ontic_vertex_count}")
        if self.allowed_group_order is not None:
            lines.append(f"allowed group order: {self.allowed_group_order}")
        return lines


class DiscrepancyNote(BaseModel):
    kind: str
    claimed_structure: str
    claimed_order: int
    computed_order: int


class GroupReport(BaseModel):
    theory: str
    exclude_reflections: bool
    order: int
    is_abelian: bool
    identification: str
    element_orders: Dict[str, int]
    generators: List[List[List[str]]]
    note: Optional[DiscrepancyNote] = None

    def text_lines(self) -> List[str]:
        lines = [
            f"theory: {self.theory}",
            f"reflections excluded: {str(self.exclude_reflections).lower()}",
            f"order: {self.order}",
            f"abelian: {str(self.is_abelian).lower()}",
            f"identification: {self.identification}",
            "element orders: "
            + ", ".join(f"{k}x{v}" for k, v in sorted(self.element_orders.items(), key=lambda kv: int(kv[0]))),
            f"generators: {len(self.generators)}",
        ]
        for i, g in enumerate(self.generators, start=1):
            lines.append(f"  generator {i}: " + "; ".join(" ".join(row) for row in g))
        if self.note is not None:
            lines.append(
                f"note: {self.note.kind}: claimed {self.note.claimed_structure} "
                f"(order {self.note.claimed_order}), computed order {self.note.computed_order}"
            )
        return lines


class ExclusionWitness(BaseModel):
    element: int
    vertex: int
    effect: int


class PhaseGroupReport(BaseModel):
    theory: str
    measurement: str
    exclude_reflections: bool
    ambient_order: int
    order: int
    is_abelian: bool
    is_trivial: bool
    identification: str
    maximality_verified: bool

    def text_lines(self) -> List[str]:
        return [
            f"theory: {self.theory}",
            f"measurement: {self.measurement}",
            f"reflections excluded: {str(self.exclude_reflections).lower()}",
            f"ambient order: {self.ambient_order}",
            f"phase group order: {self.order}",
            f"abelian: {str(self.is_abelian).lower()}",
            f"trivial: {str(self.is_trivial).lower()}",
            f"identification: {self.identification}",
            f"maximality verified: {str(self.maximality_verified).lower()}",
        ]


class InterferenceRow(BaseModel):
    element: str
    outcomes: List[str]
    symbolic: bool


class InterferenceReport(BaseModel):
    theory: str
    measurement: str
    outcome_labels: List[str]
    rows: List[InterferenceRow]
    nontrivial: bool
    partition: Optional[List[List[str]]] = None

    def header(self) -> List[str]:
        return ["element"] + self.outcome_labels

    def csv_rows(self) -> List[List[str]]:
        return [[r.element] + r.outcomes for r in self.rows]

    def summary_lines(self) -> List[str]:
        if not self.nontrivial:
            return ["no non-trivial interference"]
        lines = ["non-trivial interference"]
        if self.partition is not None:
            lines.append(
                "indistinguishable: " + " ".join("{" + ",".join(b) + "}" for b in self.partition)
            )
        return lines


class ConjugatesReport(BaseModel):
    theory: str
    coordinate_labels: List[str]
    rows: List[InterferenceRow]

    def header(self) -> List[str]:
        return ["element"] + self.coordinate_labels

    def csv_rows(self) -> List[List[str]]:
        return [[r.element] + r.outcomes for r in self.rows]

    def summary_lines(self) -> List[str]:
        return []


class WitnessPair(BaseModel):
    first: List[str]
    second: List[str]
    image: List[str]


class TheoremReport(BaseModel):
    theory: str
    measurement: Optional[str]
    is_classical: bool
    maximal_phase_orders: Dict[str, int]
    canonical_acts_as_identity: bool
    obligations: Dict[str, bool]
    witness: Optional[WitnessPair] = None
    passed: bool
    detail: str = ""

    def text_lines(self) -> List[str]:
        status = "PASS" if self.passed else "FAIL"
        kind = "classical" if self.is_classical else "non-classical"
        lines = [f"{self.theory}: {status} ({kind})"]
        if self.measurement is not None:
            lines.append(f"  canonical map on measurement {self.measurement}")
        for label, order in self.maximal_phase_orders.items():
            lines.append(f"  phase group of {label}: order {order}")
        for key in sorted(self.obligations):
            lines.append(f"  obligation {key}: {str(self.obligations[key]).lower()}")
        if self.is_classical:
            lines.append(
                f"  canonical map acts as identity: {str(self.canonical_acts_as_identity).lower()}"
            )
        if self.witness is not None:
            lines.append(
                "  witness: (" + ",".join(self.witness.first) + ") and ("
                + ",".join(self.witness.second) + ") -> (" + ",".join(self.witness.image) + ")"
            )
        if self.detail:
            lines.append(f"  {self.detail}")
        return lines


class TheoremSuiteReport(BaseModel):
    results: List[TheoremReport]
    passed: bool

    def text_lines(self) -> List[str]:
        lines: List[str] = []
        for r in self.results:
            lines.extend(r.text_lines())
        lines.append("all passed" if self.passed else "some checks failed")
        return lines


class MziReport(BaseModel):
    phi: str
    lambdas: List[str]
    p_plus: str
    p_minus: str
    final_state: List[str]

    def text_lines(self) -> List[str]:
        return [
            f"phi: {self.phi}",
            f"lambda: {', '.join(self.lambdas)}",
            f"P(Z=+1): {self.p_plus}",
            f"P(Z=-1): {self.p_minus}",
            f"final state: ({', '.join(self.final_state)})",
        ]


class EffectsReport(BaseModel):
    alpha: str
    beta: str
    gauge: Tuple[str, str, str]
    effect: List[str]
    effect_perp: List[str]

    def text_lines(self) -> List[str]:
        return [
            f"alpha: {self.alpha}",
            f"beta: {self.beta}",
            f"gauge A,B,C: {', '.join(self.gauge)}",
            f"e: ({', '.join(self.effect)})",
            f"e_perp: ({', '.join(self.effect_perp)})",
        ]


class TProbReport(BaseModel):
    alpha: str
    beta: str
    gauge: Tuple[str, str, str]
    matrix: List[List[str]]
    rotation: List[List[str]]
    rotation_determinant: str
    orthogonality_error: str
    gauge_deviation: str
    seed: int

    def text_lines(self) -> List[str]:
        lines = [f"alpha: {self.alpha}", f"beta: {self.beta}", f"gauge A,B,C: {', '.join(self.gauge)}"]
        lines.append("T_prob:")
        lines.extend("  " + " ".join(row) for row in self.matrix)
        lines.append("induced rotation:")
        lines.extend("  " + " ".join(row) for row in self.rotation)
        lines.append(f"determinant: {self.rotation_determinant}")
        lines.append(f"orthogonality error: {self.orthogonality_error}")
        lines.append(f"gauge deviation (seed {self.seed}): {self.gauge_deviation}")
        return lines
