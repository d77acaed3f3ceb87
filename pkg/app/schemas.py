from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class TheoremReport(BaseModel):
    theorem_id: str
    holds: bool
    n: int
    removable_count: Optional[int] = None
    lower_bound: Optional[float] = None
    equality: Optional[bool] = None
    triladder: Optional[bool] = None
    exceptional_vertices: List[int] = Field(default_factory=list)
    covering_triangles: List[List[int]] = Field(default_factory=list)
    stronger_form: Optional[bool] = None
    detail: str = ""


class WitnessReport(BaseModel):
    e1: int
    e2: int
    side_U: List[int]
    side_W: List[int]
    type_I: List[int]
    type_II: List[int]


class AnalysisReport(BaseModel):
    index: int
    n: int
    m: int
    connected: bool
    bipartite: bool
    matching_covered: bool
    brick: bool
    brace: Optional[bool] = None
    near_bipartite: bool
    removable: List[int] = Field(default_factory=list)
    nonremovable: List[int] = Field(default_factory=list)
    doubletons: List[List[int]] = Field(default_factory=list)
    witnesses: List[WitnessReport] = Field(default_factory=list)
    theorem1: Optional[TheoremReport] = None
    theorem2: Optional[TheoremReport] = None
    notes: List[str] = Field(default_factory=list)


class AnalysisDocument(BaseModel):
    graphs: List[AnalysisReport]


class CheckCounts(BaseModel):
    applicable: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0


class Counterexample(BaseModel):
    check: str
    graph_index: int
    predicate: str
    edge_list: str
    graph6: Optional[str] = None
    sidecar: Optional[str] = None


class InfrastructureFailure(BaseModel):
    graph_index: int
    check: Optional[str] = None
    error_type: str
    message: str


class CampaignReport(BaseModel):
    corpus: str
    checks: List[str]
    graph_count: int
    per_check: Dict[str, CheckCounts]
    counterexamples: List[Counterexample] = Field(default_factory=list)
    infrastructure_failures: List[InfrastructureFailure] = Field(default_factory=list)
    wall_time: float = 0.0


class DecompositionNodeModel(BaseModel):
    n: int
    m: int
    edges: List[List[int]]
    cut_inside: Optional[List[int]] = None
    cut_boundary: Optional[List[int]] = None
    is_k4: bool = False
    children: List["DecompositionNodeModel"] = Field(default_factory=list)


class DecompositionDocument(BaseModel):
    index: int = 0
    n: int
    k4_requested: bool
    k4_present: Optional[bool] = None
    leaf_sizes: List[int] = Field(default_factory=list)
    tree: Optional[DecompositionNodeModel] = None
    error: Optional[str] = None


DecompositionNodeModel.model_rebuild()

SCHEMA_MODELS = {
    "analysis": AnalysisDocument,
    "campaign": CampaignReport,
    "decomposition": DecompositionDocument,
    "theorem": TheoremReport,
}
