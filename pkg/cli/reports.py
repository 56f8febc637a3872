"""
Report models for every subcommand. data/schemas.py publishes their JSON
schema, generated from these classes.
"""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict


class ReportModel(BaseModel):
    # every field is always serialized, so the published schema requires all of them
    model_config = ConfigDict(extra="forbid", json_schema_serialization_defaults_required=True)


class Term(ReportModel):
    monomial: str
    coefficient: str


class EvalReport(ReportModel):
    kind: Literal["eval"] = "eval"
    target: str
    expression: str
    value: str
    terms: List[Term] = []
    point: Optional[Dict[str, str]] = None
    point_value: Optional[str] = None


class BracketReport(ReportModel):
    kind: Literal["bracket"] = "bracket"
    target: str
    left: str
    right: str
    value: str


class IdentityReport(ReportModel):
    kind: Literal["identity"] = "identity"
    expression: str
    rank: int
    method: Literal["exact", "randomized"]
    identity: Optional[bool]
    verdict: str
    witness: Optional[Dict[str, str]] = None
    value: Optional[str] = None
    trials: Optional[int] = None
    rng_seed: Optional[int] = None


class SeedModel(ReportModel):
    point: List[str]
    jets: Dict[str, str]


class SeriesReport(ReportModel):
    kind: Literal["series"] = "series"
    coords: List[str]
    alphas: List[str]
    seed: SeedModel
    f: str
    N: int
    coefficients: Dict[str, str]
    truncation: str
    residual_ok: bool


class FreiheitReport(ReportModel):
    kind: Literal["freiheit"] = "freiheit"
    f: str
    g: str
    rank: int
    phi: Dict[str, str]
    pde: str
    seed: Dict[str, str]
    series: str
    order: int
    certified_order: int
    residual_ok: bool
    theta_g: str


class MoveModel(ReportModel):
    kind: Literal["affine", "triangular"]
    matrix: Optional[List[str]] = None
    shift: Optional[List[str]] = None
    target: Optional[str] = None
    added: Optional[str] = None


class JungReport(ReportModel):
    kind: Literal["jung"] = "jung"
    map: Dict[str, str]
    jacobian: str
    automorphism: bool
    moves: List[MoveModel] = []
    reason: Optional[str] = None
    stalled: Optional[Dict[str, str]] = None


class ScalingModel(ReportModel):
    kind: Literal["scalar", "polynomial", "not_multiple"]
    alpha: Optional[str] = None
    multiplier: Optional[str] = None
    offending: Optional[str] = None
    degenerate: bool = False


class CommtestReport(ReportModel):
    kind: Literal["commtest"] = "commtest"
    map: Dict[str, str]
    poisson: bool
    scaling: ScalingModel
    jacobian: Optional[str] = None
    jacobian_matches: Optional[bool] = None
    decomposition_length: Optional[int] = None
    s: Optional[str] = None
    t: Optional[str] = None
    residual_trivial: Optional[bool] = None


class ErrorReport(ReportModel):
    kind: Literal["error"] = "error"
    error: str
    message: str
    stage: Optional[str] = None


REPORT_MODELS = {
    "eval": EvalReport,
    "bracket": BracketReport,
    "identity": IdentityReport,
    "series": SeriesReport,
    "freiheit": FreiheitReport,
    "jung": JungReport,
    "commtest": CommtestReport,
    "error": ErrorReport,
}
