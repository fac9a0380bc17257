"""
This module defines the construction of the generic graph, which applies
dense requirements round-robin to build a finite-stage generic, using LangGraph.

Functions:
    build_generic_graph():
        Builds and compiles a stateful graph that applies one requirement per
        loop until the requested number of stages is reached or a requirement
        cannot be met within the budgets.

Workflow Nodes:
- select: Picks requirement stage mod len(requirements).
- apply: Applies it to the current condition and logs the extension.

Graph Flow:
1. Entry point is the select node.
2. select → apply.
3. Conditional: apply loops back to select, or ends.
"""

from langgraph.graph import StateGraph, END

from state.state import GenericState
from forcing.requirements import apply_requirement, select_requirement

NODES_PER_STAGE = 2


def recursion_limit(stages: int) -> int:
    return NODES_PER_STAGE * max(stages, 1) + 10


def build_generic_graph():
    graph = StateGraph(GenericState)

    # ---- Register nodes ----
    graph.add_node("select", select_requirement)
    graph.add_node("apply", apply_requirement)

    # ---- Entry point ----
    graph.set_entry_point("select")
    graph.add_edge("select", "apply")

    # ---- Loop until the last stage ----
    graph.add_conditional_edges(
        "apply",
        lambda state: END if state["aborted"] or state["stage"] >= state["stages"] else "select",
        {
            "select": "select",
            END: END,
        },
    )

    return graph.compile()
