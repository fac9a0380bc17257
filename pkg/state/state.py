"""
This module defines the shared state carried through the staged constructions
(fusion sequences and finite-stage generics) by the LangGraph workflows.

Classes:
    StageRecord (TypedDict):
        One JSON-ready line of the event log: the stage number, the case the
        stage took, the scheduled item, the resulting condition and every
        certificate produced on the way.
    FusionState (TypedDict):
        The running fusion sequence: the handler and budgets that drive it, the
        condition history (a_s, A_s, μ_s), the per-stage scratch fields filled by
        the graph nodes, and the log.
    GenericState (TypedDict):
        The finite-stage generic: the requirement list, the condition history,
        the committed stem, the decided-requirements log.

Fields (FusionState):
- stage / stages: the current stage s and the number of stages S to run.
- history: conditions c_0, ..., c_s; history[-1] is the current condition.
- item: the scheduled item for stage s (handler specific, e.g. ⟨b_s, x̄_s⟩).
- stem: b_s, or None when the handler schedules no stem.
- lam: the per-stage submeasure λ_s.
- dichotomy: unbounded_check's verdict on (μ_s ∧ λ_s)(A_s).
- case: "fold", "shrink" or "skip".
- decision: JSON-ready details of the case taken (shrink evidence, ...).
- pending: the condition after the case node, before the stem grows.
- outcomes: per-stage domain objects parallel to `records`.
- records: the StageRecord log.
- aborted: the reason a stage could not be completed, or None.

Usage:
    Import these types to annotate and build the initial state handed to
    graph.invoke(...).
"""

from typing import Any, Dict, List, Literal, Optional, TypedDict


class StageRecord(TypedDict, total=False):
    stage: int
    case: Literal["fold", "shrink", "skip", "measure", "decide", "pi2", "dominate"]
    item: Dict[str, Any]
    condition: Dict[str, Any]
    dichotomy: Optional[Dict[str, Any]]
    decision: Optional[Dict[str, Any]]
    stem_certificate: Dict[str, Any]
    extension: Optional[str]
    timing_ms: float


class FusionState(TypedDict):
    handler: Any
    budgets: Any
    stage: int
    stages: int

    # Conditions
    history: List[Any]

    # Stage scratch
    item: Any
    stem: Optional[Any]
    lam: Optional[Any]
    dichotomy: Optional[Any]
    case: Optional[Literal["fold", "shrink", "skip"]]
    decision: Optional[Dict[str, Any]]
    pending: Optional[Any]
    started: float

    # Log
    outcomes: List[Any]
    records: List[StageRecord]
    aborted: Optional[str]
    timing: bool


class GenericState(TypedDict):
    requirements: List[Any]
    budgets: Any
    stage: int
    stages: int

    history: List[Any]
    requirement: Optional[Any]

    outcomes: List[Any]
    records: List[StageRecord]
    aborted: Optional[str]
    timing: bool
