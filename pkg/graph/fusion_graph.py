"""
This module defines the construction of the fusion graph that runs the stage
template of a fusion sequence using LangGraph.

Functions:
    build_fusion_graph():
        Builds and compiles a stateful graph that advances a FusionState one
        stage per loop until the requested number of stages is reached or a
        stage aborts.

Workflow Nodes:
- schedule: Asks the handler for the stage's item and stem.
- dichotomy: Skips, or decides between the unbounded and bounded case.
- fold: Unbounded case, the stage submeasure is folded into μ.
- shrink: Bounded case, the handler shrinks the envelope.
- skip: The stem precondition fails, the condition is unchanged.
- grow_stem: Extends the stem and logs the stage.

Graph Flow:
1. Entry point is the schedule node.
2. schedule → dichotomy.
3. Conditional: dichotomy routes to fold, shrink or skip, or ends on abort.
4. fold / shrink / skip → grow_stem.
5. Conditional: grow_stem loops back to schedule, or ends.

Usage:
    Call build_fusion_graph() and invoke it with an initial FusionState; pass
    recursion_limit(stages) in the config.
"""

from langgraph.graph import StateGraph, END

from state.state import FusionState
from forcing.stages import (
    fold_measure,
    grow_stem,
    is_finished,
    schedule_stage,
    shrink_envelope,
    skip_stage,
    stage_dichotomy,
)

NODES_PER_STAGE = 4


def recursion_limit(stages: int) -> int:
    return NODES_PER_STAGE * max(stages, 1) + 10


def build_fusion_graph():
    graph = StateGraph(FusionState)

    # ---- Register nodes ----
    graph.add_node("schedule", schedule_stage)
    graph.add_node("dichotomy", stage_dichotomy)
    graph.add_node("fold", fold_measure)
    graph.add_node("shrink", shrink_envelope)
    graph.add_node("skip", skip_stage)
    graph.add_node("grow_stem", grow_stem)

    # ---- Entry point: the first stage ----
    graph.set_entry_point("schedule")
    graph.add_edge("schedule", "dichotomy")

    # ---- Three cases ----
    graph.add_conditional_edges(
        "dichotomy",
        lambda state: END if state["aborted"] else state["case"],
        {
            "fold": "fold",
            "shrink": "shrink",
            "skip": "skip",
            END: END,
        },
    )

    graph.add_edge("fold", "grow_stem")
    graph.add_edge("skip", "grow_stem")
    graph.add_conditional_edges(
        "shrink",
        lambda state: END if state["aborted"] else "grow_stem",
        {
            "grow_stem": "grow_stem",
            END: END,
        },
    )

    # ---- Loop until the last stage ----
    graph.add_conditional_edges(
        "grow_stem",
        lambda state: END if is_finished(state) else "schedule",
        {
            "schedule": "schedule",
            END: END,
        },
    )

    return graph.compile()
